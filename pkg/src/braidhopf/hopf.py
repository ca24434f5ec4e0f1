"""Braided bialgebras and Hopf algebras as exact structure matrices.

Every axiom is checked as an equality of two composite morphisms. The two
sides are compared column by column in flat-index order, which is the
lexicographic order of basis tuples, so a failing check reports the first
offending basis tuple as its witness.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import Sequence

from .errors import BundleError, DimensionMismatch, FormatError, NoAntipode, NoSolution, NotInvertible
from .jsonio import read_json
from .linalg import FieldSpec, Morphism, compose_all, invert, solve_linear, tensor, unflatten


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    witness: tuple | None = None

    def __post_init__(self):
        if self.passed != (self.witness is None):
            raise ValueError("a witness is present exactly when the check failed")

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed,
                "witness": None if self.witness is None else list(self.witness)}


@dataclass(frozen=True)
class CheckReport:
    results: tuple = ()

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if not r.passed]

    def names(self) -> list[str]:
        return [r.name for r in self.results]

    def __getitem__(self, name: str) -> CheckResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def __iter__(self):
        return iter(self.results)

    def __len__(self):
        return len(self.results)

    def prefixed(self, prefix: str) -> CheckReport:
        return CheckReport(tuple(dataclasses.replace(r, name=f"{prefix}{r.name}") for r in self.results))

    @classmethod
    def combine(cls, *parts) -> CheckReport:
        """Concatenate reports; a ``(prefix, report)`` pair renames entries."""
        out = []
        for part in parts:
            if isinstance(part, tuple):
                part = part[1].prefixed(part[0])
            out.extend(part.results)
        return cls(tuple(out))

    def to_json(self) -> list:
        return [r.to_json() for r in self.results]

    def __str__(self):
        lines = []
        for r in self.results:
            if r.passed:
                lines.append(f"PASS {r.name}")
            else:
                lines.append(f"FAIL {r.name} witness={r.witness}")
        return "\n".join(lines)


def equation(name: str, lhs: Morphism, rhs: Morphism, wires: Sequence[int]) -> CheckResult:
    """Exact comparison of ``lhs`` and ``rhs`` whose domain is the tensor
    product of objects of dimensions ``wires``."""
    if (lhs.dom, lhs.cod) != (rhs.dom, rhs.cod):
        raise DimensionMismatch(f"{name}: sides are {lhs.cod}x{lhs.dom} and {rhs.cod}x{rhs.dom}")
    for j, (a, b) in enumerate(zip(lhs.cols, rhs.cols)):
        if a != b:
            return CheckResult(name, False, unflatten(j, wires))
    return CheckResult(name, True)


@dataclass(frozen=True)
class HopfBundle:
    """Structure maps of one object: multiplication ``mu`` (n^2 -> n), unit
    ``eta`` (1 -> n), comultiplication ``delta`` (n -> n^2), counit ``eps``
    (n -> 1), invertible ``braid`` (n^2 -> n^2) and an optional antipode."""

    field: FieldSpec
    dim: int
    basis: tuple
    mu: Morphism
    eta: Morphism
    delta: Morphism
    eps: Morphism
    braid: Morphism
    antipode: Morphism | None = None

    def __post_init__(self):
        n = self.dim
        object.__setattr__(self, "basis", tuple(self.basis))
        if len(self.basis) != n:
            raise BundleError(f"{len(self.basis)} basis labels for dim {n}")
        if len(set(self.basis)) != n:
            raise BundleError("basis labels must be distinct")
        shapes = {"mu": (n, n * n), "eta": (n, 1), "delta": (n * n, n), "eps": (1, n),
                  "braid": (n * n, n * n), "antipode": (n, n)}
        for name, shape in shapes.items():
            m = getattr(self, name)
            if m is None:
                continue
            if m.field != self.field:
                raise BundleError(f"{name} is over {m.field}, bundle is over {self.field}")
            if (m.cod, m.dom) != shape:
                raise BundleError(f"{name} is {m.cod}x{m.dom}, expected {shape[0]}x{shape[1]}")
        try:
            invert(self.braid)
        except NotInvertible as exc:
            raise BundleError("braid not invertible") from exc

    @property
    def identity(self) -> Morphism:
        return Morphism.identity(self.field, self.dim)

    def with_antipode(self, antipode: Morphism | None) -> HopfBundle:
        return dataclasses.replace(self, antipode=antipode)

    def to_json(self) -> dict:
        data = {
            "field": self.field.to_json(),
            "dim": self.dim,
            "basis": list(self.basis),
            "mu": self.mu.to_json(),
            "eta": self.eta.to_json(),
            "delta": self.delta.to_json(),
            "eps": self.eps.to_json(),
            "braid": self.braid.to_json(),
        }
        if self.antipode is not None:
            data["antipode"] = self.antipode.to_json()
        return data

    @classmethod
    def from_json(cls, data) -> HopfBundle:
        if not isinstance(data, dict):
            raise FormatError("bundle must be a JSON object")
        try:
            field = FieldSpec.from_json(data["field"])
            n = data["dim"]
            if not isinstance(n, int) or isinstance(n, bool) or n < 0:
                raise FormatError(f"bad dim {n!r}")
            basis = data["basis"]
            if not isinstance(basis, list) or not all(isinstance(x, str) for x in basis):
                raise FormatError("basis must be a list of strings")
            mats = {}
            shapes = {"mu": (n, n * n), "eta": (n, 1), "delta": (n * n, n), "eps": (1, n),
                      "braid": (n * n, n * n), "antipode": (n, n)}
            for name, (cod, dom) in shapes.items():
                if name == "antipode" and data.get(name) is None:
                    mats[name] = None
                    continue
                mats[name] = Morphism.from_json(field, data[name], cod, dom)
        except KeyError as exc:
            raise FormatError(f"missing bundle key {exc}") from exc
        return cls(field, n, tuple(basis), **mats)


def load_bundle(path) -> HopfBundle:
    data = read_json(path)
    return HopfBundle.from_json(data)


def check_algebra(b: HopfBundle) -> CheckReport:
    i = b.identity
    mu, eta = b.mu, b.eta
    n = b.dim
    return CheckReport((
        equation("associativity", mu @ tensor(mu, i), mu @ tensor(i, mu), (n, n, n)),
        equation("left_unit", mu @ tensor(eta, i), i, (n,)),
        equation("right_unit", mu @ tensor(i, eta), i, (n,)),
    ))


def check_coalgebra(b: HopfBundle) -> CheckReport:
    i = b.identity
    delta, eps = b.delta, b.eps
    n = b.dim
    return CheckReport((
        equation("coassociativity", tensor(delta, i) @ delta, tensor(i, delta) @ delta, (n,)),
        equation("left_counit", tensor(eps, i) @ delta, i, (n,)),
        equation("right_counit", tensor(i, eps) @ delta, i, (n,)),
    ))


def check_braid_equation(c: Morphism, n: int) -> CheckReport:
    """``(c x 1)(1 x c)(c x 1) = (1 x c)(c x 1)(1 x c)`` on ``V^{x3}``."""
    if c.dom != n * n or c.cod != n * n:
        raise DimensionMismatch(f"braid is {c.cod}x{c.dom}, expected {n * n}x{n * n}")
    i = Morphism.identity(c.field, n)
    c1, c2 = tensor(c, i), tensor(i, c)
    return CheckReport((equation("braid_equation", compose_all(c1, c2, c1), compose_all(c2, c1, c2), (n, n, n)),))


def _compat_shapes(c: Morphism, n: int, w: int) -> None:
    if c.dom != n * w or c.cod != n * w:
        raise DimensionMismatch(f"crossing is {c.cod}x{c.dom}, expected {n * w}x{n * w}")


def check_compat_algebra(c: Morphism, v: HopfBundle, w_dim: int, side: str = "VW") -> CheckReport:
    """Compatibility of a crossing with the algebra structure of ``v``.

    ``side="VW"``: ``c: V (x) W -> W (x) V`` (algebra on the left input);
    ``side="WV"``: ``c: W (x) V -> V (x) W`` (algebra on the right input).
    """
    n, w = v.dim, w_dim
    _compat_shapes(c, n, w)
    iv, iw = v.identity, Morphism.identity(v.field, w)
    mu, eta = v.mu, v.eta
    if side == "VW":
        return CheckReport((
            equation("unit", c @ tensor(eta, iw), tensor(iw, eta), (w,)),
            equation("multiplication", c @ tensor(mu, iw),
                     compose_all(tensor(iw, mu), tensor(c, iv), tensor(iv, c)), (n, n, w)),
        ))
    if side == "WV":
        return CheckReport((
            equation("unit", c @ tensor(iw, eta), tensor(eta, iw), (w,)),
            equation("multiplication", c @ tensor(iw, mu),
                     compose_all(tensor(mu, iw), tensor(iv, c), tensor(c, iv)), (w, n, n)),
        ))
    raise ValueError(f"side must be 'VW' or 'WV', got {side!r}")


def check_compat_coalgebra(c: Morphism, v: HopfBundle, w_dim: int, side: str = "VW") -> CheckReport:
    """Coalgebra counterpart of :func:`check_compat_algebra`."""
    n, w = v.dim, w_dim
    _compat_shapes(c, n, w)
    iv, iw = v.identity, Morphism.identity(v.field, w)
    delta, eps = v.delta, v.eps
    if side == "VW":
        return CheckReport((
            equation("counit", tensor(iw, eps) @ c, tensor(eps, iw), (n, w)),
            equation("comultiplication", tensor(iw, delta) @ c,
                     compose_all(tensor(c, iv), tensor(iv, c), tensor(delta, iw)), (n, w)),
        ))
    if side == "WV":
        return CheckReport((
            equation("counit", tensor(eps, iw) @ c, tensor(iw, eps), (w, n)),
            equation("comultiplication", tensor(delta, iw) @ c,
                     compose_all(tensor(iv, c), tensor(c, iv), tensor(iw, delta)), (w, n)),
        ))
    raise ValueError(f"side must be 'VW' or 'WV', got {side!r}")


def check_bialgebra_compat(b: HopfBundle) -> CheckReport:
    """The four equations tying the algebra and coalgebra together."""
    n = b.dim
    i = b.identity
    one = Morphism.identity(b.field, 1)
    mu, eta, delta, eps, c = b.mu, b.eta, b.delta, b.eps, b.braid
    twisted = compose_all(tensor(mu, mu), tensor(tensor(i, c), i), tensor(delta, delta))
    return CheckReport((
        equation("delta_mu", delta @ mu, twisted, (n, n)),
        equation("delta_eta", delta @ eta, tensor(eta, eta), ()),
        equation("eps_mu", eps @ mu, tensor(eps, eps), (n, n)),
        equation("eps_eta", eps @ eta, one, ()),
    ))


def check_braided_bialgebra(b: HopfBundle) -> CheckReport:
    n, c = b.dim, b.braid
    return CheckReport.combine(
        ("algebra.", check_algebra(b)),
        ("coalgebra.", check_coalgebra(b)),
        check_braid_equation(c, n),
        ("compat.algebra.VW.", check_compat_algebra(c, b, n, "VW")),
        ("compat.algebra.WV.", check_compat_algebra(c, b, n, "WV")),
        ("compat.coalgebra.VW.", check_compat_coalgebra(c, b, n, "VW")),
        ("compat.coalgebra.WV.", check_compat_coalgebra(c, b, n, "WV")),
        ("bialgebra.", check_bialgebra_compat(b)),
    )


def convolution_system(b: HopfBundle, side: str = "left") -> tuple[Morphism, Morphism]:
    """Linear system ``A x = r`` for the entries of an antipode ``S``.

    Unknown ``x[a * n + p]`` is ``S[a][p]``; equation ``k * n + j`` is entry
    ``(k, j)`` of ``mu o (S x id) o delta = eta o eps`` (``side="left"``) or of
    ``mu o (id x S) o delta = eta o eps`` (``side="right"``).
    """
    n = b.dim
    mu_cols = b.mu.cols
    cols: list[dict] = [{} for _ in range(n * n)]
    for j, dcol in enumerate(b.delta.cols):
        for pq, d in dcol:
            p, q = divmod(pq, n)
            for a in range(n):
                if side == "left":
                    var, mcol = a * n + p, mu_cols[a * n + q]
                elif side == "right":
                    var, mcol = a * n + q, mu_cols[p * n + a]
                else:
                    raise ValueError(f"side must be 'left' or 'right', got {side!r}")
                target = cols[var]
                for k, m in mcol:
                    eq = k * n + j
                    target[eq] = target.get(eq, 0) + d * m
    a_mat = Morphism.from_columns(b.field, n * n, cols)
    unit = b.eta @ b.eps
    rhs = Morphism.from_columns(b.field, n * n, [{k * n + j: v for j, col in enumerate(unit.cols) for k, v in col}])
    return a_mat, rhs


def check_antipode(b: HopfBundle, s: Morphism) -> CheckReport:
    n = b.dim
    if (s.cod, s.dom) != (n, n):
        raise DimensionMismatch(f"antipode is {s.cod}x{s.dom}, expected {n}x{n}")
    i = b.identity
    unit = b.eta @ b.eps
    return CheckReport((
        equation("antipode.left", compose_all(b.mu, tensor(s, i), b.delta), unit, (n,)),
        equation("antipode.right", compose_all(b.mu, tensor(i, s), b.delta), unit, (n,)),
    ))


def compute_antipode(b: HopfBundle) -> Morphism:
    """Solve the left convolution equation, then verify the right one.

    Raises :class:`NoAntipode` when the identity has no convolution inverse.
    """
    a_mat, rhs = convolution_system(b, "left")
    try:
        x = solve_linear(a_mat, rhs)
    except NoSolution as exc:
        raise NoAntipode("identity has no left convolution inverse") from exc
    n = b.dim
    xs = x.column(0)
    s = Morphism.from_columns(b.field, n, [{a: xs.get(a * n + p, 0) for a in range(n)} for p in range(n)])
    report = check_antipode(b, s)
    if not report.passed:
        raise NoAntipode(f"left convolution inverse is not a right inverse: {report.failures()[0]}")
    return s
