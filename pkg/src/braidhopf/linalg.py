"""Exact fields (Q and F_p) and exact matrices.

A :class:`Morphism` is a ``cod x dom`` matrix. Entries are exposed densely
(row-major), but stored column-sparse: the string-diagram composites this
package evaluates reach 65536 wires-worth of dimension while staying very
sparse, so only nonzero entries are kept.

Tensor index convention: basis vector ``(i, j)`` of ``V (x) W`` has flat
index ``i * dim(W) + j`` (left factor major).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import DimensionMismatch, FieldMismatch, FormatError, NoSolution, NotInvertible

Scalar = Union[int, Fraction]

_RATIONAL_RE = re.compile(r"^(-?\d+)(?:/(\d+))?$")
_RESIDUE_RE = re.compile(r"^\d+$")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The ground field: ``FieldSpec("Q")`` or ``FieldSpec("Fp", p)``.

    Scalars are plain Python values: :class:`fractions.Fraction` over Q
    and ``int`` residues in ``[0, p)`` over F_p.
    """

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind == "Q":
            if self.p is not None:
                raise ValueError("the rational field takes no characteristic")
        elif self.kind == "Fp":
            if not isinstance(self.p, int) or not 2 <= self.p < 2**31 or not is_prime(self.p):
                raise ValueError(f"F_p needs a prime p < 2^31, got {self.p!r}")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @classmethod
    def rationals(cls) -> FieldSpec:
        return cls("Q")

    @classmethod
    def prime(cls, p: int) -> FieldSpec:
        return cls("Fp", p)

    def __str__(self):
        return "Q" if self.kind == "Q" else f"F{self.p}"

    @property
    def zero(self) -> Scalar:
        return Fraction(0) if self.p is None else 0

    @property
    def one(self) -> Scalar:
        return Fraction(1) if self.p is None else 1

    def reduce(self, x) -> Scalar:
        """Canonical form of an int (or, over Q, a Fraction)."""
        if self.p is None:
            return Fraction(x)
        return x % self.p

    def coerce(self, x) -> Scalar:
        """Like :meth:`reduce`, but also maps rationals into F_p."""
        if isinstance(x, float):
            raise TypeError("floating-point scalars are not allowed")
        if self.p is not None and isinstance(x, Fraction):
            return x.numerator * self.inv(x.denominator % self.p) % self.p
        return self.reduce(x)

    def inv(self, x: Scalar) -> Scalar:
        if x == 0:
            raise ZeroDivisionError(f"division by zero in {self}")
        if self.p is None:
            return 1 / Fraction(x)
        return pow(x, -1, self.p)

    def div(self, x: Scalar, y: Scalar) -> Scalar:
        return self.reduce(x * self.inv(y))

    def power(self, x: Scalar, e: int) -> Scalar:
        if e < 0:
            return self.power(self.inv(x), -e)
        if self.p is None:
            return Fraction(x) ** e
        return pow(x, e, self.p)

    def parse(self, text) -> Scalar:
        if isinstance(text, bool):
            raise FormatError(f"not a scalar: {text!r}")
        if isinstance(text, int):
            text = str(text)
        if not isinstance(text, str):
            raise FormatError(f"scalar must be a string, got {text!r}")
        if self.p is None:
            m = _RATIONAL_RE.match(text)
            if not m:
                raise FormatError(f"bad rational {text!r}")
            num, den = int(m.group(1)), int(m.group(2) or 1)
            if den == 0:
                raise FormatError(f"zero denominator in {text!r}")
            value = Fraction(num, den)
            if self.format(value) != text:
                raise FormatError(f"rational {text!r} is not in reduced form")
            return value
        if not _RESIDUE_RE.match(text) or int(text) >= self.p:
            raise FormatError(f"bad residue mod {self.p}: {text!r}")
        return int(text)

    def format(self, x: Scalar) -> str:
        return str(x)

    def to_json(self) -> dict:
        return {"kind": "Q"} if self.p is None else {"kind": "Fp", "p": self.p}

    @classmethod
    def from_json(cls, data) -> FieldSpec:
        try:
            if data["kind"] == "Q":
                return cls.rationals()
            if data["kind"] == "Fp":
                return cls.prime(data["p"])
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"bad field spec {data!r}: {exc}") from exc
        raise FormatError(f"bad field spec {data!r}")


Q = FieldSpec.rationals()

Column = tuple  # tuple[tuple[int, Scalar], ...], sorted by row, no zeros


def _finish(acc: dict, reduce) -> Column:
    out = []
    for i in sorted(acc):
        v = reduce(acc[i])
        if v:
            out.append((i, v))
    return tuple(out)


@dataclass(frozen=True)
class Morphism:
    """Exact ``cod x dom`` matrix over ``field``; ``cols[j]`` lists the
    nonzero ``(row, value)`` pairs of column ``j``."""

    field: FieldSpec
    dom: int
    cod: int
    cols: tuple

    def __post_init__(self):
        if self.dom < 0 or self.cod < 0:
            raise DimensionMismatch("dimensions must be nonnegative")
        if len(self.cols) != self.dom:
            raise DimensionMismatch(f"{len(self.cols)} columns for dom={self.dom}")
        for col in self.cols:
            if col and (col[0][0] < 0 or col[-1][0] >= self.cod):
                raise DimensionMismatch(f"row index out of range for cod={self.cod}")

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Sequence[Sequence], dom: int | None = None) -> Morphism:
        cod = len(rows)
        if dom is None:
            if cod == 0:
                raise DimensionMismatch("dom must be given for a matrix with no rows")
            dom = len(rows[0])
        acc: list[dict] = [{} for _ in range(dom)]
        for i, row in enumerate(rows):
            if len(row) != dom:
                raise DimensionMismatch(f"row {i} has {len(row)} entries, expected {dom}")
            for j, x in enumerate(row):
                v = field.coerce(x)
                if v:
                    acc[j][i] = v
        return cls(field, dom, cod, tuple(tuple(sorted(c.items())) for c in acc))

    @classmethod
    def from_columns(cls, field: FieldSpec, cod: int, columns: Iterable) -> Morphism:
        """Build from per-column ``{row: value}`` mappings (or pair lists)."""
        cols = tuple(_finish(dict(c), field.coerce) for c in columns)
        return cls(field, len(cols), cod, cols)

    @classmethod
    def from_entries(cls, field: FieldSpec, cod: int, dom: int, entries: Sequence) -> Morphism:
        if len(entries) != cod * dom:
            raise DimensionMismatch(f"{len(entries)} entries for a {cod}x{dom} matrix")
        return cls.from_rows(field, [entries[i * dom:(i + 1) * dom] for i in range(cod)], dom)

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> Morphism:
        one = field.one
        return cls(field, n, n, tuple(((j, one),) for j in range(n)))

    @classmethod
    def zero(cls, field: FieldSpec, cod: int, dom: int) -> Morphism:
        return cls(field, dom, cod, ((),) * dom)

    @classmethod
    def scalar(cls, field: FieldSpec, value) -> Morphism:
        return cls.from_rows(field, [[value]])

    def __getitem__(self, key) -> Scalar:
        i, j = key
        if not (0 <= i < self.cod and 0 <= j < self.dom):
            raise IndexError(key)
        for r, v in self.cols[j]:
            if r == i:
                return v
        return self.field.zero

    def rows(self) -> list[list[Scalar]]:
        out = [[self.field.zero] * self.dom for _ in range(self.cod)]
        for j, col in enumerate(self.cols):
            for i, v in col:
                out[i][j] = v
        return out

    @property
    def entries(self) -> tuple:
        """Dense row-major entries, ``cod * dom`` of them."""
        return tuple(x for row in self.rows() for x in row)

    @property
    def nnz(self) -> int:
        return sum(len(c) for c in self.cols)

    def column(self, j: int) -> dict:
        return dict(self.cols[j])

    def apply(self, vector: dict) -> dict:
        """Image of a sparse vector ``{index: scalar}``."""
        acc: dict = {}
        for k, a in vector.items():
            for i, b in self.cols[k]:
                acc[i] = acc.get(i, 0) + a * b
        return dict(_finish(acc, self.field.reduce))

    def scaled(self, c) -> Morphism:
        c = self.field.coerce(c)
        if not c:
            return Morphism.zero(self.field, self.cod, self.dom)
        red = self.field.reduce
        return Morphism(self.field, self.dom, self.cod,
                        tuple(tuple((i, red(v * c)) for i, v in col) for col in self.cols))

    def __matmul__(self, other: Morphism) -> Morphism:
        return compose(self, other)

    def __repr__(self):
        return f"Morphism({self.field}, {self.cod}x{self.dom}, nnz={self.nnz})"

    def to_json(self) -> list:
        fmt = self.field.format
        return [[fmt(x) for x in row] for row in self.rows()]

    @classmethod
    def from_json(cls, field: FieldSpec, data, cod: int, dom: int) -> Morphism:
        if not isinstance(data, list) or len(data) != cod:
            raise FormatError(f"expected a {cod}x{dom} matrix (list of {cod} rows)")
        rows = []
        for row in data:
            if not isinstance(row, list) or len(row) != dom:
                raise FormatError(f"expected rows of length {dom}")
            rows.append([field.parse(x) for x in row])
        return cls.from_rows(field, rows, dom)


def _check_field(f: Morphism, g: Morphism) -> None:
    if f.field != g.field:
        raise FieldMismatch(f"{f.field} vs {g.field}")


def compose(g: Morphism, f: Morphism) -> Morphism:
    """``g o f`` (apply ``f`` first)."""
    _check_field(f, g)
    if f.cod != g.dom:
        raise DimensionMismatch(f"cannot compose {g.cod}x{g.dom} after {f.cod}x{f.dom}")
    red = f.field.reduce
    gcols = g.cols
    out = []
    for col in f.cols:
        acc: dict = {}
        for k, a in col:
            for i, b in gcols[k]:
                acc[i] = acc.get(i, 0) + a * b
        out.append(_finish(acc, red))
    return Morphism(f.field, f.dom, g.cod, tuple(out))


def compose_all(*maps: Morphism) -> Morphism:
    """``m1 o m2 o ... o mk``, written in the usual right-to-left order."""
    if not maps:
        raise ValueError("compose_all needs at least one morphism")
    acc = maps[-1]
    for g in reversed(maps[:-1]):
        acc = compose(g, acc)
    return acc


def tensor(f: Morphism, g: Morphism) -> Morphism:
    """Kronecker product ``f (x) g``."""
    _check_field(f, g)
    red = f.field.reduce
    dg = g.cod
    cols = []
    for cf in f.cols:
        for cg in g.cols:
            cols.append(tuple((a * dg + b, red(x * y)) for a, x in cf for b, y in cg))
    return Morphism(f.field, f.dom * g.dom, f.cod * g.cod, tuple(cols))


def tensor_all(*maps: Morphism) -> Morphism:
    if not maps:
        raise ValueError("tensor_all needs at least one morphism")
    acc = maps[0]
    for g in maps[1:]:
        acc = tensor(acc, g)
    return acc


def flip(field: FieldSpec, m: int, n: int) -> Morphism:
    """The swap ``V (x) W -> W (x) V`` for ``dim V = m``, ``dim W = n``."""
    one = field.one
    return Morphism(field, m * n, m * n, tuple(((j * m + i, one),) for i in range(m) for j in range(n)))


def unflatten(index: int, dims: Sequence[int]) -> tuple:
    out = []
    for d in reversed(dims):
        index, r = divmod(index, d)
        out.append(r)
    return tuple(reversed(out))


def flatten(indices: Sequence[int], dims: Sequence[int]) -> int:
    flat = 0
    for i, d in zip(indices, dims):
        flat = flat * d + i
    return flat


def _rows_of(a: Morphism) -> list[dict]:
    rows: list[dict] = [{} for _ in range(a.cod)]
    for j, col in enumerate(a.cols):
        for i, v in col:
            rows[i][j] = v
    return rows


def _eliminate(field: FieldSpec, rows: list[dict], ncols: int) -> list[tuple[int, int]]:
    """Gauss-Jordan in place over sparse rows, pivoting on columns
    ``0..ncols-1`` only. For each column in order the pivot is the first
    unused row (in row order) with a nonzero entry there.

    Returns ``(column, row)`` pairs; pivot rows end up normalized to 1.
    """
    red = field.reduce
    holders: dict[int, set] = {}
    for r, row in enumerate(rows):
        for c in row:
            holders.setdefault(c, set()).add(r)
    used: set = set()
    pivots = []
    for col in range(ncols):
        candidates = holders.get(col, set()) - used
        if not candidates:
            continue
        pr = min(candidates)
        used.add(pr)
        s = field.inv(rows[pr][col])
        prow = {c: red(v * s) for c, v in rows[pr].items()}
        rows[pr] = prow
        for r in sorted(holders[col] - {pr}):
            row = rows[r]
            factor = row[col]
            for c, v in prow.items():
                nv = red(row.get(c, 0) - factor * v)
                if nv:
                    if c not in row:
                        holders.setdefault(c, set()).add(r)
                    row[c] = nv
                elif c in row:
                    del row[c]
                    holders[c].discard(r)
        pivots.append((col, pr))
    return pivots


def solve_linear(a: Morphism, b: Morphism) -> Morphism:
    """One exact solution ``x`` of ``a x = b`` (free variables set to 0).

    Raises :class:`NoSolution` for an inconsistent system.
    """
    _check_field(a, b)
    if b.dom != 1 or a.cod != b.cod:
        raise DimensionMismatch(f"rhs must be a {a.cod}x1 column, got {b.cod}x{b.dom}")
    n = a.dom
    rows = _rows_of(a)
    for i, v in b.cols[0]:
        rows[i][n] = v
    pivots = _eliminate(a.field, rows, n)
    pivot_rows = {r for _, r in pivots}
    for r, row in enumerate(rows):
        if r not in pivot_rows and row.get(n):
            raise NoSolution("inconsistent linear system")
    x = {col: rows[r][n] for col, r in pivots if rows[r].get(n)}
    return Morphism.from_columns(a.field, n, [x])


def invert(f: Morphism) -> Morphism:
    if f.dom != f.cod:
        raise DimensionMismatch(f"cannot invert a {f.cod}x{f.dom} matrix")
    n = f.dom
    rows = _rows_of(f)
    for i in range(n):
        rows[i][n + i] = f.field.one
    pivots = _eliminate(f.field, rows, n)
    if len(pivots) < n:
        raise NotInvertible(f"matrix has rank {len(pivots)} < {n}")
    inv_cols: list[dict] = [{} for _ in range(n)]
    for col, r in pivots:
        for c, v in rows[r].items():
            if c >= n:
                inv_cols[c - n][col] = v
    return Morphism.from_columns(f.field, n, inv_cols)


def rank(a: Morphism) -> int:
    return len(_eliminate(a.field, _rows_of(a), a.dom))


def nullspace(a: Morphism) -> list[Morphism]:
    """Basis of ``{x : a x = 0}`` as column morphisms."""
    rows = _rows_of(a)
    pivots = _eliminate(a.field, rows, a.dom)
    pivot_cols = {c for c, _ in pivots}
    basis = []
    for free in range(a.dom):
        if free in pivot_cols:
            continue
        x = {free: a.field.one}
        for col, r in pivots:
            v = rows[r].get(free)
            if v:
                x[col] = a.field.reduce(-v)
        basis.append(Morphism.from_columns(a.field, a.dom, [x]))
    return basis
