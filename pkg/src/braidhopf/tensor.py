"""Tensor product ``H (x) L`` of two braided bialgebras glued along an
invertible cross-braid ``c_LH: L (x) H -> H (x) L``.

Multiplication passes ``L`` over ``H`` with ``c_LH``; comultiplication uses
the inverse crossing ``c_LH^{-1}``, which is what makes the construction
work without assuming an involutive braid.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DimensionMismatch, FormatError, PreconditionFailed
from .hopf import (CheckReport, HopfBundle, check_antipode, check_braid_equation, check_braided_bialgebra,
                   check_compat_algebra, check_compat_coalgebra, equation)
from .jsonio import read_json
from .linalg import FieldSpec, Morphism, compose, compose_all, flip, invert, tensor, tensor_all


@dataclass(frozen=True)
class CrossBraid:
    c_lh: Morphism
    c_lh_inv: Morphism

    def __post_init__(self):
        n = self.c_lh.dom
        ident = Morphism.identity(self.c_lh.field, n)
        if compose(self.c_lh, self.c_lh_inv) != ident or compose(self.c_lh_inv, self.c_lh) != ident:
            raise ValueError("c_LH_inv is not the inverse of c_LH")

    @classmethod
    def of(cls, c_lh: Morphism) -> CrossBraid:
        """Raises :class:`~braidhopf.errors.NotInvertible` for a singular map."""
        return cls(c_lh, invert(c_lh))

    @classmethod
    def canonical(cls, field: FieldSpec, dim_l: int, dim_h: int) -> CrossBraid:
        return cls.of(flip(field, dim_l, dim_h))

    def to_json(self) -> dict:
        return {"c_LH": self.c_lh.to_json()}

    @classmethod
    def from_json(cls, data, field: FieldSpec, dim_h: int, dim_l: int) -> CrossBraid:
        if not isinstance(data, dict) or "c_LH" not in data:
            raise FormatError('cross-braid must be an object with key "c_LH"')
        n = dim_h * dim_l
        return cls.of(Morphism.from_json(field, data["c_LH"], n, n))


def load_cross_braid(path, h: HopfBundle, l: HopfBundle) -> CrossBraid:
    data = read_json(path)
    if h.field != l.field:
        raise FormatError(f"H is over {h.field} but L is over {l.field}")
    return CrossBraid.from_json(data, h.field, h.dim, l.dim)


def _check_shapes(h: HopfBundle, l: HopfBundle, x: CrossBraid) -> None:
    n = h.dim * l.dim
    for m in (x.c_lh, x.c_lh_inv):
        if (m.cod, m.dom) != (n, n):
            raise DimensionMismatch(f"cross-braid is {m.cod}x{m.dom}, expected {n}x{n}")


def check_hexagons(h: HopfBundle, l: HopfBundle, x: CrossBraid) -> CheckReport:
    """The two mixed braid equations on ``L (x) L (x) H`` and ``L (x) H (x) H``."""
    _check_shapes(h, l, x)
    ih, il = h.identity, l.identity
    c = x.c_lh
    return CheckReport((
        equation("hexagon.LLH",
                 compose_all(tensor(c, il), tensor(il, c), tensor(l.braid, ih)),
                 compose_all(tensor(ih, l.braid), tensor(c, il), tensor(il, c)),
                 (l.dim, l.dim, h.dim)),
        equation("hexagon.LHH",
                 compose_all(tensor(h.braid, il), tensor(ih, c), tensor(c, ih)),
                 compose_all(tensor(ih, c), tensor(c, ih), tensor(il, h.braid)),
                 (l.dim, h.dim, h.dim)),
    ))


def check_cross_compat(h: HopfBundle, l: HopfBundle, x: CrossBraid) -> CheckReport:
    """``c_LH`` against the algebra and coalgebra of ``L`` (left input) and
    of ``H`` (right input)."""
    _check_shapes(h, l, x)
    c = x.c_lh
    return CheckReport.combine(
        ("L.algebra.", check_compat_algebra(c, l, h.dim, "VW")),
        ("L.coalgebra.", check_compat_coalgebra(c, l, h.dim, "VW")),
        ("H.algebra.", check_compat_algebra(c, h, l.dim, "WV")),
        ("H.coalgebra.", check_compat_coalgebra(c, h, l.dim, "WV")),
    )


def check_hypotheses(h: HopfBundle, l: HopfBundle, x: CrossBraid) -> CheckReport:
    """Everything the construction assumes about its inputs."""
    return CheckReport.combine(
        ("H.", check_braided_bialgebra(h)),
        ("L.", check_braided_bialgebra(l)),
        check_hexagons(h, l, x),
        ("cross.", check_cross_compat(h, l, x)),
    )


def _product_labels(h: HopfBundle, l: HopfBundle) -> tuple:
    return tuple(f"{a}⊗{b}" for a in h.basis for b in l.basis)


def _assemble(h: HopfBundle, l: HopfBundle, x: CrossBraid, delta_crossing: Morphism) -> HopfBundle:
    if h.field != l.field:
        raise DimensionMismatch(f"H is over {h.field} but L is over {l.field}")
    _check_shapes(h, l, x)
    ih, il = h.identity, l.identity
    mu = compose(tensor(h.mu, l.mu), tensor_all(ih, x.c_lh, il))
    eta = tensor(h.eta, l.eta)
    delta = compose(tensor_all(ih, delta_crossing, il), tensor(h.delta, l.delta))
    eps = tensor(h.eps, l.eps)
    braid = compose_all(tensor_all(ih, x.c_lh_inv, il), tensor(h.braid, l.braid), tensor_all(ih, x.c_lh, il))
    antipode = None
    if h.antipode is not None and l.antipode is not None:
        antipode = tensor(h.antipode, l.antipode)
    return HopfBundle(h.field, h.dim * l.dim, _product_labels(h, l), mu, eta, delta, eps, braid, antipode)


def build_tensor_product(h: HopfBundle, l: HopfBundle, x: CrossBraid, force: bool = False) -> HopfBundle:
    """Braided bialgebra structure on ``H (x) L``.

    Unless ``force`` is set, the hypotheses are re-verified first and a
    failure raises :class:`PreconditionFailed` carrying the report. The
    output's antipode is ``S_H (x) S_L`` when both inputs carry one.
    """
    if not force:
        report = check_hypotheses(h, l, x)
        if not report.passed:
            raise PreconditionFailed(f"hypotheses fail: {report.failures()[0]}", report)
    return _assemble(h, l, x, x.c_lh_inv)


def build_square(h: HopfBundle, force: bool = False) -> HopfBundle:
    """``H (x) H`` glued along ``c_H`` itself."""
    return build_tensor_product(h, h, CrossBraid.of(h.braid), force=force)


def build_naive_coproduct_variant(h: HopfBundle, l: HopfBundle, x: CrossBraid) -> HopfBundle:
    """Same as the tensor product, except the comultiplication crosses the
    middle legs with the matrix of ``c_LH`` instead of ``c_LH^{-1}``
    (``H`` and ``L`` identified, so ``dim H == dim L`` is required).

    For negative experiments only; no hypotheses are checked.
    """
    if h.dim != l.dim:
        raise DimensionMismatch("the variant needs dim H == dim L")
    return _assemble(h, l, x, x.c_lh)


def check_tensor_braid_equation(hl: HopfBundle) -> CheckReport:
    return check_braid_equation(hl.braid, hl.dim)


def theorem_battery(hl: HopfBundle) -> CheckReport:
    """Post-construction checks: full braided-bialgebra battery, plus the
    antipode equations when the product carries one."""
    parts = [check_braided_bialgebra(hl)]
    if hl.antipode is not None:
        parts.append(check_antipode(hl, hl.antipode))
    return CheckReport.combine(*parts)


def cross_into_left_product(h: HopfBundle, l: HopfBundle, x_mh: CrossBraid, x_ml: CrossBraid) -> CrossBraid:
    """``c_{M, H (x) L} = (H (x) c_ML) o (c_MH (x) L)``: gluing ``M`` onto ``H (x) L``."""
    c = compose(tensor(h.identity, x_ml.c_lh), tensor(x_mh.c_lh, l.identity))
    return CrossBraid.of(c)


def cross_from_right_product(h: HopfBundle, l_dim: int, m_dim: int, x_lh: CrossBraid, x_mh: CrossBraid) -> CrossBraid:
    """``c_{L (x) M, H} = (c_LH (x) M) o (L (x) c_MH)``: gluing ``L (x) M`` onto ``H``."""
    il = Morphism.identity(h.field, l_dim)
    im = Morphism.identity(h.field, m_dim)
    c = compose(tensor(x_lh.c_lh, im), tensor(il, x_mh.c_lh))
    return CrossBraid.of(c)
