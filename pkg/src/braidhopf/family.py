"""Braided families of objects, string-extended braids, compatible maps and
half-braidings (lambda-families) of an auxiliary object against a family.

Index strings are tuples of object ids; the empty string is the unit
object and every braid against it is an identity.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import product
from typing import Mapping, Sequence

from .errors import DimensionMismatch, FormatError, NotInvertible, UnknownIndex, UnknownMap
from .hopf import CheckReport, HopfBundle, equation
from .jsonio import read_json
from .linalg import FieldSpec, Morphism, compose, compose_all, invert, tensor


@dataclass(frozen=True)
class FamilyMap:
    name: str
    source: tuple
    target: tuple
    matrix: Morphism


@dataclass(frozen=True, eq=False)
class BraidedFamilyData:
    """Objects ``V_i`` (``dims``), braids ``c_ij: V_i (x) V_j -> V_j (x) V_i``
    for every ordered pair, and named maps ``V_source -> V_target``."""

    field: FieldSpec
    ids: tuple
    dims: Mapping[str, int]
    braids: Mapping[tuple, Morphism]
    maps: tuple = ()
    _memo: dict = dc_field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "ids", tuple(self.ids))
        object.__setattr__(self, "maps", tuple(self.maps))
        if len(set(self.ids)) != len(self.ids):
            raise FormatError("object ids must be distinct")
        if set(self.dims) != set(self.ids):
            raise FormatError("dims must list exactly the family's ids")
        for i, j in product(self.ids, repeat=2):
            if (i, j) not in self.braids:
                raise FormatError(f"missing braid c_{i}{j}")
            c = self.braids[(i, j)]
            n = self.dims[i] * self.dims[j]
            if (c.cod, c.dom) != (n, n):
                raise DimensionMismatch(f"braid c_{i}{j} is {c.cod}x{c.dom}, expected {n}x{n}")
            invert(c)
        names = set()
        for f in self.maps:
            if f.name in names:
                raise FormatError(f"duplicate map name {f.name!r}")
            names.add(f.name)
            shape = (self.dim(f.target), self.dim(f.source))
            if (f.matrix.cod, f.matrix.dom) != shape:
                raise DimensionMismatch(f"map {f.name} is {f.matrix.cod}x{f.matrix.dom}, expected {shape[0]}x{shape[1]}")

    def dim(self, string: Sequence) -> int:
        d = 1
        for i in string:
            if i not in self.dims:
                raise UnknownIndex(i)
            d *= self.dims[i]
        return d

    def wires(self, string: Sequence) -> tuple:
        self.dim(string)
        return tuple(self.dims[i] for i in string)

    def identity(self, string: Sequence) -> Morphism:
        return Morphism.identity(self.field, self.dim(string))

    def get_map(self, name: str) -> FamilyMap:
        for f in self.maps:
            if f.name == name:
                return f
        raise UnknownMap(name)

    def to_json(self) -> dict:
        return {
            "field": self.field.to_json(),
            "objects": [{"id": i, "dim": self.dims[i]} for i in self.ids],
            "braids": [{"i": i, "j": j, "matrix": self.braids[(i, j)].to_json()}
                       for i, j in product(self.ids, repeat=2)],
            "maps": [{"name": f.name, "source": list(f.source), "target": list(f.target),
                      "matrix": f.matrix.to_json()} for f in self.maps],
        }

    @classmethod
    def from_json(cls, data) -> BraidedFamilyData:
        try:
            field = FieldSpec.from_json(data.get("field", {"kind": "Q"}))
            ids = [str(o["id"]) for o in data["objects"]]
            dims = {str(o["id"]): int(o["dim"]) for o in data["objects"]}
            braids = {}
            for b in data["braids"]:
                i, j = str(b["i"]), str(b["j"])
                if i not in dims or j not in dims:
                    raise FormatError(f"braid c_{i}{j} names an undeclared object")
                n = dims[i] * dims[j]
                braids[(i, j)] = Morphism.from_json(field, b["matrix"], n, n)
            maps = []
            for m in data.get("maps", []):
                src, tgt = tuple(str(x) for x in m["source"]), tuple(str(x) for x in m["target"])
                for x in src + tgt:
                    if x not in dims:
                        raise FormatError(f"map {m['name']} names an undeclared object {x!r}")
                cod = 1
                for x in tgt:
                    cod *= dims[x]
                dom = 1
                for x in src:
                    dom *= dims[x]
                maps.append(FamilyMap(str(m["name"]), src, tgt, Morphism.from_json(field, m["matrix"], cod, dom)))
        except (KeyError, TypeError, AttributeError, ValueError) as exc:
            if isinstance(exc, FormatError):
                raise
            raise FormatError(f"bad family: {exc}") from exc
        try:
            return cls(field, tuple(ids), dims, braids, tuple(maps))
        except NotInvertible as exc:
            raise FormatError(f"family braid not invertible: {exc}") from exc


def load_family(path) -> BraidedFamilyData:
    data = read_json(path)
    return BraidedFamilyData.from_json(data)


def extend_braid(fam: BraidedFamilyData, i: Sequence, j: Sequence) -> Morphism:
    """``c_ij`` lifted to strings: ``V_i (x) V_j -> V_j (x) V_i``.

    When ``i`` has length > 1 it is split first (peeling its last letter);
    otherwise ``j`` is split.
    """
    i, j = tuple(i), tuple(j)
    fam.dim(i)
    fam.dim(j)
    return _extend(fam, i, j)


def _extend(fam: BraidedFamilyData, i: tuple, j: tuple) -> Morphism:
    key = (i, j)
    memo = fam._memo
    if key in memo:
        return memo[key]
    if not i or not j:
        out = fam.identity(i + j)
    elif len(i) == 1 and len(j) == 1:
        out = fam.braids[(i[0], j[0])]
    elif len(i) == 1:
        out = compose(tensor(fam.identity(j[:-1]), fam.braids[(i[0], j[-1])]),
                      tensor(_extend(fam, i, j[:-1]), fam.identity(j[-1:])))
    else:
        out = compose(tensor(_extend(fam, i[:-1], j), fam.identity(i[-1:])),
                      tensor(fam.identity(i[:-1]), _extend(fam, i[-1:], j)))
    memo[key] = out
    return out


def _label(*parts) -> str:
    return ",".join("".join(p) if isinstance(p, tuple) else str(p) for p in parts)


def check_family_braided(fam: BraidedFamilyData) -> CheckReport:
    """Braid equation on ``V_i (x) V_j (x) V_k`` for every triple, in order."""
    out = []
    c = fam.braids
    for i, j, k in product(fam.ids, repeat=3):
        vi, vj, vk = fam.identity((i,)), fam.identity((j,)), fam.identity((k,))
        lhs = compose_all(tensor(vk, c[(i, j)]), tensor(c[(i, k)], vj), tensor(vi, c[(j, k)]))
        rhs = compose_all(tensor(c[(j, k)], vi), tensor(vj, c[(i, k)]), tensor(c[(i, j)], vk))
        out.append(equation(f"braid[{i},{j},{k}]", lhs, rhs, fam.wires((i, j, k))))
    return CheckReport(tuple(out))


def _naturality(fam: BraidedFamilyData, f: FamilyMap, strings) -> list:
    out = []
    m = f.matrix
    for s in strings:
        vs = fam.identity(s)
        tag = "".join(s)
        out.append(equation(
            f"{f.name}.right[{tag}]",
            compose(tensor(vs, m), extend_braid(fam, f.source, s)),
            compose(extend_braid(fam, f.target, s), tensor(m, vs)),
            fam.wires(f.source + s)))
        out.append(equation(
            f"{f.name}.left[{tag}]",
            compose(tensor(m, vs), extend_braid(fam, s, f.source)),
            compose(extend_braid(fam, s, f.target), tensor(vs, m)),
            fam.wires(s + f.source)))
    return out


def check_map_compatible(fam: BraidedFamilyData, name: str) -> CheckReport:
    """A map ``f: V_i -> V_j`` slides through every single object ``V_l``,
    on both sides."""
    f = fam.get_map(name)
    return CheckReport(tuple(_naturality(fam, f, [(l,) for l in fam.ids])))


def check_all_maps(fam: BraidedFamilyData) -> CheckReport:
    return CheckReport.combine(*(check_map_compatible(fam, f.name) for f in fam.maps))


def check_map_natural(fam: BraidedFamilyData, name: str, max_len: int = 3) -> CheckReport:
    """:func:`check_map_compatible` against every string of length
    ``1..max_len`` rather than single objects."""
    f = fam.get_map(name)
    strings = [s for n in range(1, max_len + 1) for s in product(fam.ids, repeat=n)]
    return CheckReport(tuple(_naturality(fam, f, strings)))


def check_extension_coherence(fam: BraidedFamilyData, max_total: int = 4) -> CheckReport:
    """Concatenation rules for string braids, over all ``(i, j, k)`` with
    total length ``<= max_total``:

    ``c_{i, jk} = (V_j (x) c_{i,k}) o (c_{i,j} (x) V_k)`` and
    ``c_{ij, k} = (c_{i,k} (x) V_j) o (V_i (x) c_{j,k})``.
    """
    strings = [s for n in range(max_total + 1) for s in product(fam.ids, repeat=n)]
    out = []
    for i in strings:
        for j in strings:
            if len(i) + len(j) > max_total:
                continue
            for k in strings:
                if len(i) + len(j) + len(k) > max_total:
                    continue
                vi, vj, vk = fam.identity(i), fam.identity(j), fam.identity(k)
                out.append(equation(
                    f"right[{_label(i, j, k)}]",
                    extend_braid(fam, i, j + k),
                    compose(tensor(vj, extend_braid(fam, i, k)), tensor(extend_braid(fam, i, j), vk)),
                    fam.wires(i + j + k)))
                out.append(equation(
                    f"left[{_label(i, j, k)}]",
                    extend_braid(fam, i + j, k),
                    compose(tensor(extend_braid(fam, i, k), vj), tensor(vi, extend_braid(fam, j, k))),
                    fam.wires(i + j + k)))
    return CheckReport(tuple(out))


def _check_lambdas(fam: BraidedFamilyData, w: int, lambdas: Mapping[str, Morphism]) -> None:
    for i in fam.ids:
        if i not in lambdas:
            raise UnknownIndex(i)
        lam = lambdas[i]
        n = fam.dims[i] * w
        if (lam.cod, lam.dom) != (n, n):
            raise DimensionMismatch(f"lambda_{i} is {lam.cod}x{lam.dom}, expected {n}x{n}")
        invert(lam)


def lambda_string(fam: BraidedFamilyData, w: int, lambdas: Mapping[str, Morphism], string: Sequence) -> Morphism:
    """``lambda^W`` extended to ``V_string (x) W -> W (x) V_string``."""
    s = tuple(string)
    fam.dim(s)
    iw = Morphism.identity(fam.field, w)
    if not s:
        return iw
    if len(s) == 1:
        return lambdas[s[0]]
    return compose(tensor(lambda_string(fam, w, lambdas, s[:-1]), fam.identity(s[-1:])),
                   tensor(fam.identity(s[:-1]), lambdas[s[-1]]))


def build_lambda_family(fam: BraidedFamilyData, w: int, lambdas: Mapping[str, Morphism]) -> CheckReport:
    """Check that isomorphisms ``lambda_i: V_i (x) W -> W (x) V_i`` form a
    half-braiding of ``W`` against the family: they commute with every
    ``c_ij`` and every registered map.

    Raises :class:`DimensionMismatch` or :class:`NotInvertible` for
    malformed input.
    """
    _check_lambdas(fam, w, lambdas)
    iw = Morphism.identity(fam.field, w)
    out = []
    for i, j in product(fam.ids, repeat=2):
        c = fam.braids[(i, j)]
        out.append(equation(
            f"lambda.braid[{i},{j}]",
            compose(tensor(iw, c), lambda_string(fam, w, lambdas, (i, j))),
            compose(lambda_string(fam, w, lambdas, (j, i)), tensor(c, iw)),
            fam.wires((i, j)) + (w,)))
    for f in fam.maps:
        out.append(equation(
            f"lambda.map[{f.name}]",
            compose(tensor(iw, f.matrix), lambda_string(fam, w, lambdas, f.source)),
            compose(lambda_string(fam, w, lambdas, f.target), tensor(f.matrix, iw)),
            fam.wires(f.source) + (w,)))
    return CheckReport(tuple(out))


def embedding_lambdas(fam: BraidedFamilyData, j: str) -> tuple[int, dict]:
    """``(dim V_j, {i: c_ij})``: the family member ``V_j`` as a half-braided object."""
    fam.dim((j,))
    return fam.dims[j], {i: fam.braids[(i, j)] for i in fam.ids}


def tensor_lambdas(fam: BraidedFamilyData, w: int, lw: Mapping[str, Morphism],
                   z: int, lz: Mapping[str, Morphism]) -> tuple[int, dict]:
    """Half-braiding of ``W (x) Z``: ``(W (x) lambda^Z_i) o (lambda^W_i (x) Z)``."""
    iw, iz = Morphism.identity(fam.field, w), Morphism.identity(fam.field, z)
    return w * z, {i: compose(tensor(iw, lz[i]), tensor(lw[i], iz)) for i in fam.ids}


def check_center_on_family(fam: BraidedFamilyData) -> CheckReport:
    """Defining equations of a central object, for ``V_j`` against the unit
    and against products ``V_k (x) V_m`` of family members."""
    out = []
    for j in fam.ids:
        out.append(equation(f"center.unit[{j}]", extend_braid(fam, (j,), ()), fam.identity((j,)), fam.wires((j,))))
    for j, k, m in product(fam.ids, repeat=3):
        _, lk = embedding_lambdas(fam, k)
        _, lm = embedding_lambdas(fam, m)
        _, lkm = tensor_lambdas(fam, fam.dims[k], lk, fam.dims[m], lm)
        out.append(equation(f"center.tensor[{j};{k},{m}]", extend_braid(fam, (j,), (k, m)), lkm[j],
                            fam.wires((j, k, m))))
    return CheckReport(tuple(out))


def disentangle(h: HopfBundle, l: HopfBundle, c_hl: Morphism) -> BraidedFamilyData:
    """Three-object family ``V_0 = I``, ``V_1 = H``, ``V_2 = L`` with
    ``c_11 = c_H``, ``c_22 = c_L``, ``c_12 = c_HL``, ``c_21 = c_HL^{-1}``,
    identities against ``V_0``, and the eight structure maps registered.

    Raises :class:`NotInvertible` if ``c_HL`` is singular.
    """
    if h.field != l.field:
        raise DimensionMismatch(f"H is over {h.field} but L is over {l.field}")
    field = h.field
    dims = {"0": 1, "1": h.dim, "2": l.dim}
    braids = {
        ("1", "1"): h.braid,
        ("2", "2"): l.braid,
        ("1", "2"): c_hl,
        ("2", "1"): invert(c_hl),
    }
    for i in ("0", "1", "2"):
        braids[("0", i)] = Morphism.identity(field, dims[i])
        braids[(i, "0")] = Morphism.identity(field, dims[i])
    maps = (
        FamilyMap("eps_H", ("1",), ("0",), h.eps),
        FamilyMap("eps_L", ("2",), ("0",), l.eps),
        FamilyMap("eta_H", ("0",), ("1",), h.eta),
        FamilyMap("eta_L", ("0",), ("2",), l.eta),
        FamilyMap("delta_H", ("1",), ("1", "1"), h.delta),
        FamilyMap("delta_L", ("2",), ("2", "2"), l.delta),
        FamilyMap("mu_H", ("1", "1"), ("1",), h.mu),
        FamilyMap("mu_L", ("2", "2"), ("2",), l.mu),
    )
    return BraidedFamilyData(field, ("0", "1", "2"), dims, braids, maps)
