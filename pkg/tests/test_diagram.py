import random

import pytest

from braidhopf.diagram import (BoundaryMismatch, DiagramSyntaxError, DiagramTypeError, Environment, Gen, Id, Seq,
                               Tensor, check_equal, evaluate, load_environment, parse, to_text, typecheck)
from braidhopf.fixtures import F5, MISBRAIDED_THIRD, PROOF_CHAIN, Q, braided_line, proof_environment, scalar_cross_braid
from braidhopf.jsonio import write_json
from braidhopf.linalg import Morphism, compose, tensor
from braidhopf.tensor import CrossBraid, build_tensor_product

BLINE = braided_line(F5, 4, 2)
MU_HL = "(id(H) * c_LH * id(L)) ; (mu_H * mu_L)"


def env_for(r):
    x = CrossBraid.of(scalar_cross_braid(F5, 4, 4, r))
    return proof_environment(BLINE, BLINE, x.c_lh, x.c_lh_inv), x


def test_parse_examples():
    assert parse("id(H)") == Id(("H",))
    assert parse(" id ( ) ") == Id(())
    expected = Seq(Tensor(Tensor(Id(("H",)), Gen("c_LH")), Id(("L",))), Tensor(Gen("mu_H"), Gen("mu_L")))
    assert parse(MU_HL) == expected
    assert parse("a ; b ; c") == Seq(Seq(Gen("a"), Gen("b")), Gen("c"))
    assert parse("a * b * c") == Tensor(Tensor(Gen("a"), Gen("b")), Gen("c"))
    assert parse("a * b ; c") == Seq(Tensor(Gen("a"), Gen("b")), Gen("c"))


@pytest.mark.parametrize("text, offset", [
    ("(mu_H * mu_L) ;", 15),
    ("mu_H ; ; mu_L", 7),
    ("(mu_H", 5),
    ("mu_H $", 5),
    ("id(H,)", 5),
    ("", 0),
    ("é ; a", 0),
    ("a ; é", 4),
])
def test_syntax_errors_have_byte_offsets(text, offset):
    with pytest.raises(DiagramSyntaxError) as info:
        parse(text)
    assert info.value.offset == offset


def test_typecheck_examples():
    env, _ = env_for(2)
    assert typecheck("id(H)", env) == (("H",), ("H",))
    with pytest.raises(DiagramTypeError):
        typecheck("mu_H ; mu_H", env)
    assert typecheck(MU_HL, env) == (("H", "L", "H", "L"), ("H", "L"))
    with pytest.raises(DiagramTypeError):
        typecheck("nope", env)
    with pytest.raises(DiagramTypeError):
        typecheck("id(Z)", env)


def test_evaluate_examples():
    env, x = env_for(3)
    assert evaluate("id(H)", env) == Morphism.identity(F5, 4)
    assert evaluate("id()", env) == Morphism.identity(F5, 1)
    hl = build_tensor_product(BLINE, BLINE, x)
    assert evaluate(MU_HL, env) == hl.mu
    assert evaluate("(delta_H * delta_L) ; (id(H) * c_LH_inv * id(L))", env) == hl.delta
    assert evaluate("(id(H) * c_LH * id(L)) ; (c_H * c_L) ; (id(H) * c_LH_inv * id(L))", env) == hl.braid


def test_check_equal_examples():
    env, _ = env_for(2)
    assert check_equal(MU_HL, MU_HL, env).passed
    with pytest.raises(BoundaryMismatch):
        check_equal("mu_H", "delta_H", env)


@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_proof_chain(r):
    env, _ = env_for(r)
    for k in range(3):
        assert check_equal(PROOF_CHAIN[k], PROOF_CHAIN[k + 1], env).passed, k


def test_misbraided_chain_fails_middle():
    env, _ = env_for(2)
    assert not check_equal(PROOF_CHAIN[1], MISBRAIDED_THIRD, env).passed
    assert check_equal(PROOF_CHAIN[1], PROOF_CHAIN[2], env).passed


def random_env(rng):
    env = Environment(Q, {"A": 1, "B": 2, "C": 3})
    objs = list(env.objects)
    for k in range(8):
        dom = tuple(rng.choice(objs) for _ in range(rng.randint(0, 2)))
        cod = tuple(rng.choice(objs) for _ in range(rng.randint(0, 2)))
        n, m = env.dim(cod), env.dim(dom)
        env.add(f"g{k}", dom, cod, Morphism.from_entries(Q, n, m, [rng.randint(-3, 3) for _ in range(n * m)]))
    return env


def random_expr(rng, env, dom, depth):
    """A well-typed expression with the given domain."""
    gens = [name for name, g in env.generators.items() if g.dom == dom]
    roll = rng.random()
    if depth == 0 or roll < 0.25:
        if gens and rng.random() < 0.7:
            return Gen(rng.choice(gens))
        return Id(dom)
    if roll < 0.6 and len(dom) >= 1:
        cut = rng.randint(0, len(dom))
        return Tensor(random_expr(rng, env, dom[:cut], depth - 1), random_expr(rng, env, dom[cut:], depth - 1))
    top = random_expr(rng, env, dom, depth - 1)
    return Seq(top, random_expr(rng, env, typecheck(top, env)[1], depth - 1))


def naive_eval(e, env):
    if isinstance(e, Gen):
        return env.generators[e.name].matrix
    if isinstance(e, Id):
        return Morphism.identity(env.field, env.dim(e.objects))
    if isinstance(e, Tensor):
        return tensor(naive_eval(e.left, env), naive_eval(e.right, env))
    return compose(naive_eval(e.bottom, env), naive_eval(e.top, env))


def test_roundtrip_and_functoriality_random():
    rng = random.Random(4242)
    count = 0
    while count < 120:
        env = random_env(rng)
        dom = tuple(rng.choice("ABC") for _ in range(rng.randint(0, 3)))
        e = random_expr(rng, env, dom, 4)
        assert parse(to_text(e)) == e
        m = evaluate(e, env)
        assert m == naive_eval(e, env)
        if isinstance(e, Tensor):
            assert m == tensor(evaluate(e.left, env), evaluate(e.right, env))
        if isinstance(e, Seq):
            assert m == compose(evaluate(e.bottom, env), evaluate(e.top, env))
        count += 1


def test_interchange_random():
    rng = random.Random(99)
    for _ in range(100):
        env = random_env(rng)
        na, nb = rng.choice(list(env.generators)), rng.choice(list(env.generators))
        a, b = env.generators[na], env.generators[nb]
        lhs = Seq(Tensor(Gen(na), Id(b.dom)), Tensor(Id(a.cod), Gen(nb)))
        rhs = Seq(Tensor(Id(a.dom), Gen(nb)), Tensor(Gen(na), Id(b.cod)))
        assert check_equal(to_text(lhs), to_text(rhs), env).passed


def test_environment_json(tmp_path):
    env, _ = env_for(2)
    path = tmp_path / "env.json"
    write_json(path, env.to_json())
    back = load_environment(path)
    assert back.objects == env.objects
    assert back.generators == env.generators
    with pytest.raises(ValueError):
        env.add("id", ["H"], ["H"], Morphism.identity(F5, 4))
