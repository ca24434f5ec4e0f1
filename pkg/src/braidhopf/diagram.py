"""A small textual language for string diagrams.

Grammar::

    expr    := seq
    seq     := ten (";" ten)*          # left to right = top to bottom
    ten     := atom ("*" atom)*        # horizontal juxtaposition
    atom    := NAME | "id(" objlist ")" | "(" expr ")"
    objlist := NAME ("," NAME)* | <empty>

``a ; b`` runs ``a`` first, so it evaluates to ``b o a``. Diagrams are
strict monoidal: no associators, ``id()`` is the unit object.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from typing import Union

from .errors import BraidHopfError, DimensionMismatch, FormatError
from .hopf import CheckReport, equation
from .jsonio import read_json
from .linalg import FieldSpec, Morphism, compose, tensor


class DiagramSyntaxError(BraidHopfError, ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at byte {offset}")
        self.offset = offset


class DiagramTypeError(BraidHopfError, TypeError):
    pass


class BoundaryMismatch(DiagramTypeError):
    pass


@dataclass(frozen=True)
class Gen:
    name: str


@dataclass(frozen=True)
class Id:
    objects: tuple = ()


@dataclass(frozen=True)
class Tensor:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Seq:
    top: "Expr"
    bottom: "Expr"


Expr = Union[Gen, Id, Tensor, Seq]

_TOKEN_RE = re.compile(r"(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<punct>[;*(),])")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            break
        offset = len(text[:pos].encode("utf-8"))
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise DiagramSyntaxError(f"unexpected character {text[pos]!r}", offset)
        if m.group("name"):
            tokens.append(("NAME", m.group("name"), offset))
        else:
            tokens.append((m.group("punct"), m.group("punct"), offset))
        pos = m.end()
    tokens.append(("EOF", "", len(text.encode("utf-8"))))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def take(self, kind: str) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        if tok[0] != kind:
            what = "end of input" if tok[0] == "EOF" else repr(tok[1])
            raise DiagramSyntaxError(f"expected {kind!r}, found {what}", tok[2])
        self.i += 1
        return tok

    def parse(self) -> Expr:
        e = self.seq()
        self.take("EOF")
        return e

    def seq(self) -> Expr:
        e = self.ten()
        while self.peek()[0] == ";":
            self.i += 1
            e = Seq(e, self.ten())
        return e

    def ten(self) -> Expr:
        e = self.atom()
        while self.peek()[0] == "*":
            self.i += 1
            e = Tensor(e, self.atom())
        return e

    def atom(self) -> Expr:
        kind, value, offset = self.peek()
        if kind == "(":
            self.i += 1
            e = self.seq()
            self.take(")")
            return e
        if kind == "NAME":
            self.i += 1
            if value != "id":
                return Gen(value)
            self.take("(")
            objs = []
            if self.peek()[0] == "NAME":
                objs.append(self.take("NAME")[1])
                while self.peek()[0] == ",":
                    self.i += 1
                    objs.append(self.take("NAME")[1])
            self.take(")")
            return Id(tuple(objs))
        what = "end of input" if kind == "EOF" else repr(value)
        raise DiagramSyntaxError(f"expected a generator, id(...) or '(', found {what}", offset)


def parse(text: str) -> Expr:
    return _Parser(text).parse()


def to_text(e: Expr) -> str:
    """Canonical printer; ``parse(to_text(e)) == e``."""
    if isinstance(e, Gen):
        return e.name
    if isinstance(e, Id):
        return f"id({', '.join(e.objects)})"
    if isinstance(e, Tensor):
        left = to_text(e.left)
        if isinstance(e.left, Seq):
            left = f"({left})"
        right = to_text(e.right)
        if isinstance(e.right, (Seq, Tensor)):
            right = f"({right})"
        return f"{left} * {right}"
    if isinstance(e, Seq):
        bottom = to_text(e.bottom)
        if isinstance(e.bottom, Seq):
            bottom = f"({bottom})"
        return f"{to_text(e.top)} ; {bottom}"
    raise TypeError(f"not a diagram expression: {e!r}")


@dataclass(frozen=True)
class Generator:
    dom: tuple
    cod: tuple
    matrix: Morphism


@dataclass
class Environment:
    """Objects (id -> dimension) and named generator boxes."""

    field: FieldSpec
    objects: dict
    generators: dict = dc_field(default_factory=dict)

    def dim(self, objs) -> int:
        d = 1
        for o in objs:
            if o not in self.objects:
                raise DiagramTypeError(f"undeclared object {o!r}")
            d *= self.objects[o]
        return d

    def add(self, name: str, dom, cod, matrix: Morphism) -> None:
        dom, cod = tuple(dom), tuple(cod)
        if name == "id":
            raise ValueError("'id' is reserved")
        if matrix.field != self.field:
            raise DimensionMismatch(f"generator {name} is over {matrix.field}, environment over {self.field}")
        if (matrix.dom, matrix.cod) != (self.dim(dom), self.dim(cod)):
            raise DimensionMismatch(
                f"generator {name}: matrix is {matrix.cod}x{matrix.dom}, "
                f"wires need {self.dim(cod)}x{self.dim(dom)}")
        self.generators[name] = Generator(dom, cod, matrix)

    def to_json(self) -> dict:
        return {
            "field": self.field.to_json(),
            "objects": [{"id": k, "dim": v} for k, v in self.objects.items()],
            "generators": [{"name": k, "dom": list(g.dom), "cod": list(g.cod), "matrix": g.matrix.to_json()}
                           for k, g in self.generators.items()],
        }

    @classmethod
    def from_json(cls, data) -> Environment:
        try:
            field = FieldSpec.from_json(data.get("field", {"kind": "Q"}))
            objects = {}
            for o in data["objects"]:
                objects[str(o["id"])] = int(o["dim"])
            env = cls(field, objects)
            for g in data["generators"]:
                dom, cod = [str(x) for x in g["dom"]], [str(x) for x in g["cod"]]
                m = Morphism.from_json(field, g["matrix"], env.dim(cod), env.dim(dom))
                env.add(str(g["name"]), dom, cod, m)
        except (KeyError, TypeError, AttributeError) as exc:
            raise FormatError(f"bad environment: {exc}") from exc
        except (DiagramTypeError, DimensionMismatch) as exc:
            raise FormatError(f"bad environment: {exc}") from exc
        return env


def load_environment(path) -> Environment:
    data = read_json(path)
    return Environment.from_json(data)


def _as_expr(e) -> Expr:
    return parse(e) if isinstance(e, str) else e


def typecheck(e, env: Environment) -> tuple[tuple, tuple]:
    """``(domain, codomain)`` wire strings of a diagram."""
    e = _as_expr(e)
    if isinstance(e, Gen):
        if e.name not in env.generators:
            raise DiagramTypeError(f"unknown generator {e.name!r}")
        g = env.generators[e.name]
        return g.dom, g.cod
    if isinstance(e, Id):
        env.dim(e.objects)
        return e.objects, e.objects
    if isinstance(e, Tensor):
        d1, c1 = typecheck(e.left, env)
        d2, c2 = typecheck(e.right, env)
        return d1 + d2, c1 + c2
    if isinstance(e, Seq):
        d1, c1 = typecheck(e.top, env)
        d2, c2 = typecheck(e.bottom, env)
        if c1 != d2:
            raise DiagramTypeError(
                f"cannot stack: upper part ends in ({', '.join(c1)}) but lower part starts at ({', '.join(d2)})")
        return d1, c2
    raise TypeError(f"not a diagram expression: {e!r}")


def _eval(e: Expr, env: Environment) -> Morphism:
    if isinstance(e, Gen):
        return env.generators[e.name].matrix
    if isinstance(e, Id):
        return Morphism.identity(env.field, env.dim(e.objects))
    if isinstance(e, Tensor):
        return tensor(_eval(e.left, env), _eval(e.right, env))
    return compose(_eval(e.bottom, env), _eval(e.top, env))


def evaluate(e, env: Environment) -> Morphism:
    e = _as_expr(e)
    typecheck(e, env)
    return _eval(e, env)


def check_equal(e1, e2, env: Environment, name: str = "diagrams_equal") -> CheckReport:
    """Exact equality of two diagrams with identical boundaries."""
    e1, e2 = _as_expr(e1), _as_expr(e2)
    b1, b2 = typecheck(e1, env), typecheck(e2, env)
    if b1 != b2:
        raise BoundaryMismatch(f"boundaries differ: {b1[0]} -> {b1[1]} vs {b2[0]} -> {b2[1]}")
    wires = tuple(env.objects[o] for o in b1[0])
    return CheckReport((equation(name, _eval(e1, env), _eval(e2, env), wires),))
