"""Command-line front end.

Exit codes: 0 every check passed, 1 some check failed, 2 malformed input.
"""

from __future__ import annotations

import argparse
import hashlib
import sys
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .diagram import DiagramSyntaxError, DiagramTypeError, check_equal, evaluate, load_environment, typecheck
from .errors import BraidHopfError, DimensionMismatch, FormatError, NoAntipode, NotInvertible
from .family import check_all_maps, check_family_braided, disentangle, load_family
from .fixtures import (F5, MISBRAIDED_THIRD, PROOF_CHAIN, Q, braided_line, cyclic_group_algebra, non_hopf_bialgebra,
                       proof_environment, scalar_cross_braid, trivial_bundle)
from .hopf import CheckReport, check_antipode, check_braided_bialgebra, compute_antipode, load_bundle
from .jsonio import dumps, write_json
from .linalg import Morphism, flip
from .tensor import CrossBraid, build_tensor_product, check_hypotheses, load_cross_braid, theorem_battery

REPORT_SCHEMA = "braidhopf.run-report/1"

OK, CHECK_FAILED, BAD_INPUT = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunReport:
    command: str
    inputs: list = field(default_factory=list)
    sections: list = field(default_factory=list)
    messages: list = field(default_factory=list)
    failed: bool = False

    @property
    def passed(self) -> bool:
        return not self.failed and all(r.passed for _, r in self.sections)

    def add_input(self, path) -> None:
        digest = hashlib.sha256(Path(path).read_bytes()).hexdigest()
        self.inputs.append({"path": str(path), "sha256": digest})

    def add(self, title: str, report: CheckReport) -> None:
        self.sections.append((title, report))

    def to_json(self, timestamp: bool = True) -> dict:
        data = {
            "schema": REPORT_SCHEMA,
            "tool_version": __version__,
            "command": self.command,
            "inputs": self.inputs,
            "reports": [{"title": t, "passed": r.passed, "checks": r.to_json()} for t, r in self.sections],
            "messages": self.messages,
            "passed": self.passed,
        }
        if timestamp:
            data["timestamp"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
        return data

    def to_text(self, timestamp: bool = True) -> str:
        lines = [f"braidhopf {__version__} {self.command}"]
        if timestamp:
            lines.append(f"time {datetime.now(timezone.utc).isoformat(timespec='seconds')}")
        for item in self.inputs:
            lines.append(f"input {item['path']} sha256={item['sha256'][:16]}")
        for title, report in self.sections:
            lines.append(f"[{title}] {'PASS' if report.passed else 'FAIL'}")
            lines.extend("  " + line for line in str(report).splitlines())
        lines.extend(self.messages)
        lines.append("RESULT " + ("PASS" if self.passed else "FAIL"))
        return "\n".join(lines)


def _emit(report: RunReport, args) -> int:
    stamp = not args.no_timestamp
    if args.json:
        print(dumps(report.to_json(stamp)))
    else:
        print(report.to_text(stamp))
    return OK if report.passed else CHECK_FAILED


def cmd_validate(args) -> int:
    report = RunReport("validate")
    report.add_input(args.bundle)
    b = load_bundle(args.bundle)
    report.add("braided bialgebra", check_braided_bialgebra(b))
    if b.antipode is not None:
        report.add("antipode", check_antipode(b, b.antipode))
    return _emit(report, args)


def cmd_tensor(args) -> int:
    report = RunReport("tensor")
    for p in (args.h, args.l, args.cross):
        report.add_input(p)
    h, l = load_bundle(args.h), load_bundle(args.l)
    x = load_cross_braid(args.cross, h, l)
    hyp = check_hypotheses(h, l, x)
    report.add("hypotheses", hyp)
    if not hyp.passed and not args.force:
        report.messages.append("hypotheses failed; product not built (use --force to build anyway)")
        return _emit(report, args)
    product = build_tensor_product(h, l, x, force=True)
    report.add("product", theorem_battery(product))
    if args.out:
        write_json(args.out, product.to_json())
        report.messages.append(f"wrote {args.out}")
    return _emit(report, args)


def cmd_antipode(args) -> int:
    report = RunReport("antipode")
    report.add_input(args.bundle)
    b = load_bundle(args.bundle)
    try:
        s = compute_antipode(b)
    except NoAntipode as exc:
        report.failed = True
        report.messages.append(f"NoAntipode: {exc}")
        return _emit(report, args)
    report.add("antipode", check_antipode(b, s))
    if args.out:
        write_json(args.out, b.with_antipode(s).to_json())
        report.messages.append(f"wrote {args.out}")
    return _emit(report, args)


def cmd_family(args) -> int:
    report = RunReport("family")
    report.add_input(args.family)
    fam = load_family(args.family)
    report.add("braided family", check_family_braided(fam))
    report.add("compatible maps", check_all_maps(fam))
    return _emit(report, args)


def _expr_text(arg: str) -> str:
    if arg.startswith("@"):
        return Path(arg[1:]).read_text(encoding="utf-8")
    return arg


def cmd_diagram(args) -> int:
    report = RunReport("diagram")
    report.add_input(args.env)
    env = load_environment(args.env)
    first = _expr_text(args.expr1)
    if args.expr2 is None:
        dom, cod = typecheck(first, env)
        m = evaluate(first, env)
        if args.json:
            data = {"schema": REPORT_SCHEMA, "tool_version": __version__, "command": "diagram",
                    "dom": list(dom), "cod": list(cod), "matrix": m.to_json(), "passed": True}
            print(dumps(data))
        else:
            print(f"({', '.join(dom)}) -> ({', '.join(cod)})  {m.cod}x{m.dom}")
            for row in m.to_json():
                print(" ".join(row))
        return OK
    report.add("diagram equality", check_equal(first, _expr_text(args.expr2), env))
    return _emit(report, args)


def write_fixtures(out: Path) -> list[Path]:
    """The canonical fixture set; output is byte-identical across runs."""
    out.mkdir(parents=True, exist_ok=True)
    written = []

    def put(name, data):
        path = out / name
        write_json(path, data)
        written.append(path)

    def put_text(name, text):
        path = out / name
        path.write_text(text + "\n", encoding="utf-8")
        written.append(path)

    triv = trivial_bundle(Q)
    c2, c3 = cyclic_group_algebra(Q, 2), cyclic_group_algebra(Q, 3)
    bline = braided_line(F5, 4, 2)
    put("trivial.json", triv.to_json())
    put("group_c2.json", c2.to_json())
    put("group_c3.json", c3.to_json())
    put("superline_q.json", braided_line(Q, 2, -1).to_json())
    put("bline_4_2_f5.json", bline.to_json())
    put("nonhopf.json", non_hopf_bialgebra(Q).to_json())
    put("cross_trivial.json", CrossBraid.canonical(Q, 1, 1).to_json())
    put("cross_flip_c3_c2.json", {"c_LH": flip(Q, 3, 2).to_json()})
    for r in (1, 2, 3, 4):
        put(f"cross_r{r}_f5.json", {"c_LH": scalar_cross_braid(F5, 4, 4, r).to_json()})
    corrupted = corrupted_cross_braid(3)
    put("cross_r3_f5_corrupted.json", {"c_LH": corrupted.to_json()})

    put("family_trivial.json", disentangle(triv, triv, Morphism.identity(Q, 1)).to_json())
    x3 = CrossBraid.of(scalar_cross_braid(F5, 4, 4, 3))
    put("family_bline_r3.json", disentangle(bline, bline, x3.c_lh_inv).to_json())
    broken = CrossBraid.of(corrupted)
    put("family_broken.json", disentangle(bline, bline, broken.c_lh_inv).to_json())

    x2 = CrossBraid.of(scalar_cross_braid(F5, 4, 4, 2))
    put("env_bline_r2.json", proof_environment(bline, bline, x2.c_lh, x2.c_lh_inv).to_json())
    for k, text in enumerate(PROOF_CHAIN, start=1):
        put_text(f"chain_{k}.dsl", text)
    put_text("chain_3_misbraided.dsl", MISBRAIDED_THIRD)
    return written


def corrupted_cross_braid(r: int) -> Morphism:
    """The ``r`` scalar cross-braid between two ``B(4, 2)`` lines with an
    extra ``x (x) 1`` term added to the image of ``1 (x) 1``."""
    rows = scalar_cross_braid(F5, 4, 4, r).rows()
    rows[4][0] = (rows[4][0] + 1) % 5
    return Morphism.from_rows(F5, rows)


def cmd_fixtures(args) -> int:
    out = Path(args.out)
    written = write_fixtures(out)
    report = RunReport("fixtures")
    report.messages.extend(f"wrote {p}" for p in written)
    return _emit(report, args)


def _add_globals(p: argparse.ArgumentParser, suppress: bool) -> None:
    default = argparse.SUPPRESS if suppress else False
    p.add_argument("--json", action="store_true", default=default, help="machine-readable report")
    p.add_argument("--no-timestamp", action="store_true", default=default, help="omit the timestamp")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="braidhopf", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"braidhopf {__version__}")
    _add_globals(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("validate", help="run the braided bialgebra battery on a bundle")
    p.add_argument("bundle")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("tensor", help="check hypotheses and build H (x) L")
    p.add_argument("h")
    p.add_argument("l")
    p.add_argument("cross")
    p.add_argument("--out")
    p.add_argument("--force", action="store_true", help="build even if hypotheses fail")
    p.set_defaults(func=cmd_tensor)

    p = sub.add_parser("antipode", help="solve for the antipode and write the augmented bundle")
    p.add_argument("bundle")
    p.add_argument("--out")
    p.set_defaults(func=cmd_antipode)

    p = sub.add_parser("family", help="check a braided family and its compatible maps")
    p.add_argument("family")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("diagram", help="evaluate one diagram or compare two (prefix @ to read a file)")
    p.add_argument("env")
    p.add_argument("expr1")
    p.add_argument("expr2", nargs="?")
    p.set_defaults(func=cmd_diagram)

    p = sub.add_parser("fixtures", help="write the canonical fixture set")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_fixtures)

    for action in sub.choices.values():
        _add_globals(action, suppress=True)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return BAD_INPUT
    except (OSError, FormatError, DimensionMismatch, NotInvertible, DiagramSyntaxError, DiagramTypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT
    except BraidHopfError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
