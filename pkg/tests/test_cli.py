import json

import pytest

from braidhopf.cli import REPORT_SCHEMA, main, write_fixtures
from braidhopf.fixtures import Q, cyclic_group_algebra, group_algebra
from braidhopf.hopf import load_bundle
from braidhopf.linalg import Morphism

from oracles import group_table


@pytest.fixture(scope="module")
def fx(tmp_path_factory):
    out = tmp_path_factory.mktemp("fixtures")
    write_fixtures(out)
    return out


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_fixtures_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a", tmp_path / "b"
    assert run(capsys, "fixtures", "--out", a)[0] == 0
    assert run(capsys, "fixtures", "--out", b)[0] == 0
    names = sorted(p.name for p in a.iterdir())
    assert names == sorted(p.name for p in b.iterdir())
    for name in names:
        assert (a / name).read_bytes() == (b / name).read_bytes()


@pytest.mark.parametrize("name", ["trivial", "group_c2", "group_c3", "superline_q", "bline_4_2_f5", "nonhopf"])
def test_fixture_bundles_validate(fx, capsys, name):
    code, out, _ = run(capsys, "validate", fx / f"{name}.json")
    assert code == 0
    assert out.rstrip().endswith("RESULT PASS")


def test_antipode_command(fx, tmp_path, capsys):
    assert run(capsys, "antipode", fx / "nonhopf.json")[0] == 1
    code, _, _ = run(capsys, "antipode", fx / "trivial.json", "--out", tmp_path / "t.json")
    assert code == 0
    assert load_bundle(tmp_path / "t.json").antipode.rows() == [[1]]
    run(capsys, "antipode", fx / "group_c2.json", "--out", tmp_path / "c2.json")
    assert load_bundle(tmp_path / "c2.json").antipode == Morphism.identity(Q, 2)


def test_family_command(fx, capsys):
    assert run(capsys, "family", fx / "family_trivial.json")[0] == 0
    assert run(capsys, "family", fx / "family_bline_r3.json")[0] == 0
    assert run(capsys, "family", fx / "family_broken.json")[0] == 1


def test_diagram_command(fx, capsys):
    env = fx / "env_bline_r2.json"
    code, out, _ = run(capsys, "diagram", env, "id(H)")
    assert code == 0
    assert out.splitlines()[1:] == ["1 0 0 0", "0 1 0 0", "0 0 1 0", "0 0 0 1"]
    assert run(capsys, "diagram", env, f"@{fx / 'chain_1.dsl'}", f"@{fx / 'chain_2.dsl'}")[0] == 0
    assert run(capsys, "diagram", env, f"@{fx / 'chain_2.dsl'}", f"@{fx / 'chain_3_misbraided.dsl'}")[0] == 1
    assert run(capsys, "diagram", env, "mu_H", "delta_H")[0] == 2
    assert run(capsys, "diagram", env, "mu_H ; mu_H")[0] == 2
    code, _, err = run(capsys, "diagram", env, "mu_H ;")
    assert code == 2 and "byte 6" in err


def test_tensor_strict_and_force(fx, tmp_path, capsys):
    bl = fx / "bline_4_2_f5.json"
    out = tmp_path / "bad.json"
    code, text, _ = run(capsys, "tensor", bl, bl, fx / "cross_r3_f5_corrupted.json", "--out", out)
    assert code == 1 and not out.exists()
    assert "hexagon.LLH" in text
    code, _, _ = run(capsys, "tensor", bl, bl, fx / "cross_r3_f5_corrupted.json", "--out", out, "--force")
    assert code == 1 and out.exists()
    good = tmp_path / "good.json"
    assert run(capsys, "tensor", bl, bl, fx / "cross_r2_f5.json", "--out", good)[0] == 0
    assert load_bundle(good).dim == 16


def c2_times_c3():
    pairs = [(a, b) for a in range(2) for b in range(3)]
    return group_algebra(Q, [f"{a}{b}" for a, b in pairs],
                         lambda u, v: pairs.index(((pairs[u][0] + pairs[v][0]) % 2, (pairs[u][1] + pairs[v][1]) % 3)),
                         lambda u: pairs.index(((-pairs[u][0]) % 2, (-pairs[u][1]) % 3)))


def test_classical_sanity_c2_c3(fx, tmp_path, capsys):
    out = tmp_path / "c6.json"
    code, _, _ = run(capsys, "tensor", fx / "group_c2.json", fx / "group_c3.json", fx / "cross_flip_c3_c2.json",
                     "--out", out)
    assert code == 0
    product = load_bundle(out)
    direct = c2_times_c3()
    for name in ("mu", "eta", "delta", "eps", "braid", "antipode"):
        assert getattr(product, name) == getattr(direct, name), name
    # k -> k * (g, g) is an isomorphism from C6
    gen = direct.basis.index("11")
    table, c6 = group_table(product), group_table(cyclic_group_algebra(Q, 6))
    powers = [0]
    for _ in range(5):
        powers.append(table[powers[-1], gen])
    assert sorted(powers) == list(range(6))
    assert all(table[powers[a], powers[b]] == powers[c6[a, b]] for a in range(6) for b in range(6))
    s_out = tmp_path / "c6s.json"
    bare = tmp_path / "bare.json"
    data = json.loads(out.read_text())
    del data["antipode"]
    bare.write_text(json.dumps(data))
    assert run(capsys, "antipode", bare, "--out", s_out)[0] == 0
    assert load_bundle(s_out).antipode == direct.antipode


def test_json_report_deterministic(fx, capsys):
    argv = ["validate", fx / "group_c2.json", "--json", "--no-timestamp"]
    code, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert code == 0 and first == second
    report = json.loads(first)
    assert report["schema"] == REPORT_SCHEMA
    assert report["passed"] is True
    assert "timestamp" not in report
    assert len(report["inputs"][0]["sha256"]) == 64
    code, stamped, _ = run(capsys, "--json", "validate", fx / "group_c2.json")
    assert "timestamp" in json.loads(stamped)


def test_json_report_witness(fx, capsys):
    code, out, _ = run(capsys, "family", fx / "family_broken.json", "--json", "--no-timestamp")
    assert code == 1
    report = json.loads(out)
    failing = [c for r in report["reports"] for c in r["checks"] if not c["passed"]]
    assert failing and all(isinstance(c["witness"], list) for c in failing)


def test_malformed_inputs_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "validate", bad)[0] == 2
    bad.write_text('{"field": {"kind": "Q"}, "dim": 1}')
    assert run(capsys, "validate", bad)[0] == 2
    assert run(capsys, "validate", tmp_path / "missing.json")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys)[0] == 2
