import dataclasses
from itertools import product

import pytest

from braidhopf.errors import DimensionMismatch, FormatError, NotInvertible, PreconditionFailed
from braidhopf.fixtures import F5, Q, braided_line, cyclic_group_algebra, group_algebra, scalar_cross_braid, trivial_bundle
from braidhopf.hopf import check_antipode, check_braided_bialgebra
from braidhopf.jsonio import write_json
from braidhopf.linalg import Morphism, compose, flip, tensor
from braidhopf.tensor import (CrossBraid, build_naive_coproduct_variant, build_square, build_tensor_product,
                              check_cross_compat, check_hexagons, check_hypotheses, check_tensor_braid_equation,
                              cross_from_right_product, cross_into_left_product, load_cross_braid, theorem_battery)

from oracles import braided_bialgebra_axioms, group_table

BLINE = braided_line(F5, 4, 2)
C2 = cyclic_group_algebra(Q, 2)


def cross(r):
    return CrossBraid.of(scalar_cross_braid(F5, 4, 4, r))


def bump(m, row, col, delta=1):
    rows = m.rows()
    rows[row][col] = m.field.reduce(rows[row][col] + delta)
    return Morphism.from_rows(m.field, rows, dom=m.dom)


def test_hexagons_flip_case():
    c3 = cyclic_group_algebra(Q, 3)
    assert check_hexagons(C2, c3, CrossBraid.canonical(Q, 3, 2)).passed
    assert check_cross_compat(C2, c3, CrossBraid.canonical(Q, 3, 2)).passed


@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_hexagons_and_compat_braided_lines(r):
    assert check_hexagons(BLINE, BLINE, cross(r)).passed
    assert check_cross_compat(BLINE, BLINE, cross(r)).passed


def test_rescaled_coefficient_breaks_compat_not_hexagons():
    # a scalar cross-braid f(i,j) * flip satisfies both hexagons for any f;
    # changing the (1,1) coefficient is caught by the compatibility checks
    x = CrossBraid.of(bump(scalar_cross_braid(F5, 4, 4, 3), 1 * 4 + 1, 1 * 4 + 1))
    assert check_hexagons(BLINE, BLINE, x).passed
    compat = check_cross_compat(BLINE, BLINE, x)
    assert not compat.passed
    assert compat["L.algebra.multiplication"].witness == (1, 1, 1)


def test_off_pattern_term_breaks_hexagons():
    # c_LH(1 (x) 1) picks up an extra x (x) 1
    x = CrossBraid.of(bump(scalar_cross_braid(F5, 4, 4, 3), 4, 0))
    report = check_hexagons(BLINE, BLINE, x)
    assert report["hexagon.LLH"].witness == (0, 1, 0)
    assert report["hexagon.LHH"].witness == (0, 0, 0)
    assert not check_cross_compat(BLINE, BLINE, x).passed


def test_product_examples():
    r = 3
    hl = build_tensor_product(BLINE, BLINE, cross(r))
    # eps(x^a (x) y^b) = [a = b = 0]
    assert hl.eps.rows() == [[1] + [0] * 15]
    # (1 (x) y)(x (x) 1) = r (x (x) y)
    assert hl.mu.column(1 * 16 + 4) == {5: r}
    # delta(x (x) 1) = (x (x) 1) (x) (1 (x) 1) + (1 (x) 1) (x) (x (x) 1)
    assert hl.delta.column(4) == {4 * 16 + 0: 1, 0 * 16 + 4: 1}
    assert hl.basis[5] == "x⊗x"
    assert hl.antipode == tensor(BLINE.antipode, BLINE.antipode)


@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_product_passes_battery(r):
    hl = build_tensor_product(BLINE, BLINE, cross(r))
    assert theorem_battery(hl).passed
    assert check_tensor_braid_equation(hl).passed


def test_product_battery_matches_oracle():
    hl = build_tensor_product(BLINE, BLINE, cross(2))
    assert all(w is None for w in braided_bialgebra_axioms(hl).values())


def test_tensor_braid_equation_examples():
    flips = build_tensor_product(C2, C2, CrossBraid.canonical(Q, 2, 2))
    assert flips.braid == flip(Q, 4, 4)
    assert check_tensor_braid_equation(flips).passed
    hl = build_tensor_product(BLINE, BLINE, cross(2))
    perturbed = dataclasses.replace(hl, braid=bump(hl.braid, 1, 1))
    assert not check_tensor_braid_equation(perturbed).passed


def test_strict_mode_refuses():
    x = CrossBraid.of(bump(scalar_cross_braid(F5, 4, 4, 3), 4, 0))
    with pytest.raises(PreconditionFailed) as info:
        build_tensor_product(BLINE, BLINE, x)
    assert not info.value.report.passed
    assert not check_hypotheses(BLINE, BLINE, x).passed
    forced = build_tensor_product(BLINE, BLINE, x, force=True)
    assert forced.dim == 16


@pytest.mark.parametrize("r", [2, 3])
def test_naive_variant_fails_delta_mu(r):
    bad = build_naive_coproduct_variant(BLINE, BLINE, cross(r))
    report = check_braided_bialgebra(bad)
    result = report["bialgebra.delta_mu"]
    assert not result.passed
    assert result.witness == braided_bialgebra_axioms(bad)["delta_mu"] == (1, 4)


@pytest.mark.parametrize("r", [1, 4])
def test_naive_variant_agrees_for_involutive_cross_braid(r):
    # r^2 = 1: c_LH and c_LH^{-1} have the same matrix
    assert build_naive_coproduct_variant(BLINE, BLINE, cross(r)) == build_tensor_product(BLINE, BLINE, cross(r))


def test_square_of_trivial():
    sq = build_square(trivial_bundle())
    t = trivial_bundle()
    assert (sq.dim, sq.mu, sq.delta, sq.braid) == (1, t.mu, t.delta, t.braid)


def test_square_of_c2_is_klein_four_group_algebra():
    sq = build_square(C2)
    labels = [(a, b) for a in range(2) for b in range(2)]
    klein = group_algebra(Q, [f"{a}{b}" for a, b in labels],
                          lambda u, v: labels.index(((labels[u][0] + labels[v][0]) % 2, (labels[u][1] + labels[v][1]) % 2)),
                          lambda u: u)
    assert group_table(sq) == group_table(klein)
    assert (sq.mu, sq.eta, sq.delta, sq.eps, sq.braid, sq.antipode) == (
        klein.mu, klein.eta, klein.delta, klein.eps, klein.braid, klein.antipode)


def test_square_of_braided_line_non_involutive():
    assert compose(BLINE.braid, BLINE.braid) != Morphism.identity(F5, 16)
    sq = build_square(BLINE)
    assert theorem_battery(sq).passed


def test_unit_absorption():
    triv = trivial_bundle(F5)
    hl = build_tensor_product(BLINE, triv, CrossBraid.canonical(F5, 1, 4))
    assert (hl.mu, hl.eta, hl.delta, hl.eps, hl.braid, hl.antipode) == (
        BLINE.mu, BLINE.eta, BLINE.delta, BLINE.eps, BLINE.braid, BLINE.antipode)
    lh = build_tensor_product(triv, BLINE, CrossBraid.canonical(F5, 4, 1))
    assert lh.mu == BLINE.mu and lh.delta == BLINE.delta and lh.braid == BLINE.braid


def test_associativity_of_construction():
    h = l = m = BLINE
    x_lh, x_mh, x_ml = cross(2), cross(3), cross(4)
    left = build_tensor_product(build_tensor_product(h, l, x_lh), m, cross_into_left_product(h, l, x_mh, x_ml))
    lm = build_tensor_product(l, m, x_ml)
    right = build_tensor_product(h, lm, cross_from_right_product(h, l.dim, m.dim, x_lh, x_mh))
    for name in ("mu", "eta", "delta", "eps", "braid", "antipode"):
        assert getattr(left, name) == getattr(right, name), name
    assert left.basis == right.basis


def test_mixed_dimensions_product():
    c3 = cyclic_group_algebra(Q, 3)
    hl = build_tensor_product(C2, c3, CrossBraid.canonical(Q, 3, 2))
    assert hl.dim == 6
    assert theorem_battery(hl).passed
    with pytest.raises(DimensionMismatch):
        build_naive_coproduct_variant(C2, c3, CrossBraid.canonical(Q, 3, 2))


def test_antipode_of_product_is_tensor_of_antipodes():
    hl = build_tensor_product(BLINE, BLINE, cross(3))
    assert check_antipode(hl, tensor(BLINE.antipode, BLINE.antipode)).passed
    no_s = build_tensor_product(BLINE, dataclasses.replace(BLINE, antipode=None), cross(3))
    assert no_s.antipode is None


def test_cross_braid_io(tmp_path):
    x = cross(2)
    path = tmp_path / "x.json"
    write_json(path, x.to_json())
    assert load_cross_braid(path, BLINE, BLINE) == x
    write_json(path, {"c_LH": Morphism.zero(F5, 16, 16).to_json()})
    with pytest.raises(NotInvertible):
        load_cross_braid(path, BLINE, BLINE)
    write_json(path, {"c": []})
    with pytest.raises(FormatError):
        load_cross_braid(path, BLINE, BLINE)
    with pytest.raises(ValueError):
        CrossBraid(x.c_lh, x.c_lh)


def test_product_structure_constants_brute_force():
    # mu((a (x) b) (x) (a' (x) b')) = r^(b a') (a + a') (x) (b + b') from the definition
    r = 2
    hl = build_tensor_product(BLINE, BLINE, cross(r))
    for a, b, a2, b2 in product(range(4), repeat=4):
        col = hl.mu.column((a * 4 + b) * 16 + a2 * 4 + b2)
        if a + a2 < 4 and b + b2 < 4:
            assert col == {(a + a2) * 4 + (b + b2): F5.power(r, b * a2)}
        else:
            assert col == {}
