"""Canonical example objects: trivial bundle, group algebras, braided lines,
a bialgebra without antipode, scalar cross-braids, and the string-diagram
environment used to replay the tensor-product compatibility computation."""

from __future__ import annotations

from typing import Callable, Sequence

from .diagram import Environment
from .hopf import HopfBundle
from .linalg import FieldSpec, Morphism, flip

F5 = FieldSpec.prime(5)
Q = FieldSpec.rationals()


def trivial_bundle(field: FieldSpec = Q) -> HopfBundle:
    one = Morphism.identity(field, 1)
    return HopfBundle(field, 1, ("1",), one, one, one, one, one, one)


def group_algebra(field: FieldSpec, labels: Sequence[str], op: Callable[[int, int], int],
                  inverse: Callable[[int], int] | None = None) -> HopfBundle:
    """``k[G]`` with grouplike basis, flip braid; ``labels[0]`` is the identity."""
    n = len(labels)
    mu = Morphism.from_columns(field, n, [{op(a, b): 1} for a in range(n) for b in range(n)])
    eta = Morphism.from_columns(field, n, [{0: 1}])
    delta = Morphism.from_columns(field, n * n, [{g * n + g: 1} for g in range(n)])
    eps = Morphism.from_columns(field, 1, [{0: 1}] * n)
    antipode = None
    if inverse is not None:
        antipode = Morphism.from_columns(field, n, [{inverse(g): 1} for g in range(n)])
    return HopfBundle(field, n, tuple(labels), mu, eta, delta, eps, flip(field, n, n), antipode)


def _power_label(symbol: str, k: int) -> str:
    if k == 0:
        return "1" if symbol != "g" else "e"
    return symbol if k == 1 else f"{symbol}^{k}"


def cyclic_group_algebra(field: FieldSpec, m: int, symbol: str = "g") -> HopfBundle:
    labels = [_power_label(symbol, k) for k in range(m)]
    return group_algebra(field, labels, lambda a, b: (a + b) % m, lambda a: (-a) % m)


def is_primitive_root(field: FieldSpec, q, order: int) -> bool:
    q = field.coerce(q)
    if field.power(q, order) != field.one:
        return False
    return all(field.power(q, k) != field.one for k in range(1, order))


def gauss_binomials(field: FieldSpec, n: int, q) -> list[list]:
    """Rows ``0..n`` of Gaussian binomials, via
    ``[m, k] = [m-1, k] + q^(m-k) [m-1, k-1]``."""
    q = field.coerce(q)
    rows = [[field.one]]
    for m in range(1, n + 1):
        prev = rows[-1]
        row = []
        for k in range(m + 1):
            left = prev[k] if k < m else 0
            right = prev[k - 1] * field.power(q, m - k) if k > 0 else 0
            row.append(field.reduce(left + right))
        rows.append(row)
    return rows


def braided_line(field: FieldSpec, order: int, q, symbol: str = "x", with_antipode: bool = True) -> HopfBundle:
    """``B(N, q) = k[x]/(x^N)`` with ``x`` primitive, braid
    ``x^i (x) x^j -> q^(ij) x^j (x) x^i``; ``q`` must be a primitive N-th root
    of unity in ``field``."""
    q = field.coerce(q)
    if not is_primitive_root(field, q, order):
        raise ValueError(f"{q} is not a primitive {order}-th root of unity in {field}")
    n = order
    binom = gauss_binomials(field, n - 1, q)
    mu = Morphism.from_columns(field, n, [{a + b: 1} if a + b < n else {}
                                          for a in range(n) for b in range(n)])
    eta = Morphism.from_columns(field, n, [{0: 1}])
    delta = Morphism.from_columns(field, n * n, [{k * n + (m - k): binom[m][k] for k in range(m + 1)}
                                                 for m in range(n)])
    eps = Morphism.from_columns(field, 1, [{0: 1}] + [{}] * (n - 1))
    braid = Morphism.from_columns(field, n * n, [{j * n + i: field.power(q, i * j)}
                                                 for i in range(n) for j in range(n)])
    antipode = None
    if with_antipode:
        antipode = Morphism.from_columns(field, n, [{m: (-1) ** m * field.power(q, m * (m - 1) // 2)}
                                                    for m in range(n)])
    labels = tuple(_power_label(symbol, k) for k in range(n))
    return HopfBundle(field, n, labels, mu, eta, delta, eps, braid, antipode)


def non_hopf_bialgebra(field: FieldSpec = Q) -> HopfBundle:
    """Span of ``1`` and a grouplike idempotent ``t`` (``t^2 = t``); ``t``
    has no convolution inverse."""
    mu = Morphism.from_columns(field, 2, [{0: 1}, {1: 1}, {1: 1}, {1: 1}])
    eta = Morphism.from_columns(field, 2, [{0: 1}])
    delta = Morphism.from_columns(field, 4, [{0: 1}, {3: 1}])
    eps = Morphism.from_columns(field, 1, [{0: 1}, {0: 1}])
    return HopfBundle(field, 2, ("1", "t"), mu, eta, delta, eps, flip(field, 2, 2))


def scalar_cross_braid(field: FieldSpec, dim_l: int, dim_h: int, r) -> Morphism:
    """``c_LH(y^i (x) x^j) = r^(ij) x^j (x) y^i`` as a map ``L (x) H -> H (x) L``."""
    r = field.coerce(r)
    return Morphism.from_columns(field, dim_h * dim_l, [{j * dim_l + i: field.power(r, i * j)}
                                                        for i in range(dim_l) for j in range(dim_h)])


# Four diagrams H,L,H,L -> H,L,H,L. The first is delta o mu of the tensor
# product, the last is the braided-bialgebra right-hand side; neighbours are
# equal by the axioms of H and L, then by naturality and hexagon moves.
PROOF_CHAIN = (
    "(id(H) * c_LH * id(L)) ; (mu_H * mu_L) ; (delta_H * delta_L) ; (id(H) * c_LH_inv * id(L))",

    "(id(H) * c_LH * id(L))"
    " ; (delta_H * delta_H * delta_L * delta_L)"
    " ; (id(H) * c_H * id(H) * id(L) * c_L * id(L))"
    " ; (mu_H * mu_H * mu_L * mu_L)"
    " ; (id(H) * c_LH_inv * id(L))",

    "(delta_H * delta_L * delta_H * delta_L)"
    " ; (id(H) * id(H) * id(L) * c_LH * id(H) * id(L) * id(L))"
    " ; (id(H) * id(H) * c_LH * c_LH * id(L) * id(L))"
    " ; (id(H) * c_H * id(L) * id(H) * c_L * id(L))"
    " ; (id(H) * id(H) * c_LH_inv * c_LH_inv * id(L) * id(L))"
    " ; (id(H) * id(H) * id(L) * c_LH_inv * id(H) * id(L) * id(L))"
    " ; (mu_H * mu_L * mu_H * mu_L)",

    "(delta_H * delta_L * delta_H * delta_L)"
    " ; (id(H) * c_LH_inv * id(L) * id(H) * c_LH_inv * id(L))"
    " ; (id(H) * id(L) * id(H) * c_LH * id(L) * id(H) * id(L))"
    " ; (id(H) * id(L) * c_H * c_L * id(H) * id(L))"
    " ; (id(H) * id(L) * id(H) * c_LH_inv * id(L) * id(H) * id(L))"
    " ; (id(H) * c_LH * id(L) * id(H) * c_LH * id(L))"
    " ; (mu_H * mu_L * mu_H * mu_L)",
)

# Third diagram with one crossing L,H -> H,L realized by the matrix of the
# inverse crossing (read with H and L identified).
MISBRAIDED_THIRD = PROOF_CHAIN[2].replace(
    "(id(H) * id(H) * c_LH * c_LH * id(L) * id(L))",
    "(id(H) * id(H) * c_LH_wrong * c_LH * id(L) * id(L))",
)


def proof_environment(h: HopfBundle, l: HopfBundle, c_lh: Morphism, c_lh_inv: Morphism):
    """Diagram environment over objects ``H`` and ``L`` with their structure
    maps, the self-braids and the cross-braid and its inverse. When
    ``dim H == dim L`` the generator ``c_LH_wrong: L,H -> H,L`` carries the
    matrix of ``c_LH_inv``."""
    env = Environment(h.field, {"H": h.dim, "L": l.dim})
    for tag, b in (("H", h), ("L", l)):
        env.add(f"mu_{tag}", [tag, tag], [tag], b.mu)
        env.add(f"eta_{tag}", [], [tag], b.eta)
        env.add(f"delta_{tag}", [tag], [tag, tag], b.delta)
        env.add(f"eps_{tag}", [tag], [], b.eps)
        env.add(f"c_{tag}", [tag, tag], [tag, tag], b.braid)
        if b.antipode is not None:
            env.add(f"S_{tag}", [tag], [tag], b.antipode)
    env.add("c_LH", ["L", "H"], ["H", "L"], c_lh)
    env.add("c_LH_inv", ["H", "L"], ["L", "H"], c_lh_inv)
    if h.dim == l.dim:
        env.add("c_LH_wrong", ["L", "H"], ["H", "L"], c_lh_inv)
    return env
