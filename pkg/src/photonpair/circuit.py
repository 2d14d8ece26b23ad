"""Line-oriented interferometer description language.

Example::

    # Mach-Zehnder interferometer
    modes 2
    bs 0 1
    phase 1 phi
    bs 0 1

One statement per line, ``#`` starts a comment. The first statement must be
``modes N``. ``bs I J`` places a balanced beam splitter on modes ``I`` and
``J``; ``phase I EXPR`` a phase shifter on mode ``I``. A phase expression is
a decimal (radians), a multiple of pi (``pi``, ``-pi``, ``pi/4``,
``0.5*pi``, ``3*pi/4``) or a variable name bound at compile time. Mode
indices are 0-based.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Mapping, Union

from . import optics


class ParseError(Exception):
    """Syntax or semantic error at a 1-based ``line``/``column``."""

    def __init__(self, line: int, column: int, message: str, offending_token: str = ""):
        super().__init__(message)
        self.line = line
        self.column = column
        self.message = message
        self.offending_token = offending_token

    def __str__(self) -> str:
        return f"{self.line}:{self.column}: {self.message}"


class UnboundVariableError(KeyError):
    def __init__(self, name: str):
        super().__init__(name)
        self.name = name

    def __str__(self) -> str:
        return f"unbound phase variable {self.name!r}"


# Phase expressions


@dataclass(frozen=True)
class Literal:
    value: float

    def evaluate(self, bindings: Mapping[str, float]) -> float:
        return self.value

    def render(self) -> str:
        return repr(float(self.value))


@dataclass(frozen=True)
class PiMultiple:
    """``coefficient * pi / divisor``."""

    coefficient: float = 1.0
    divisor: int = 1

    def evaluate(self, bindings: Mapping[str, float]) -> float:
        return self.coefficient * math.pi / self.divisor

    def render(self) -> str:
        c = float(self.coefficient)
        if c == 1.0:
            head = "pi"
        elif c == -1.0:
            head = "-pi"
        else:
            head = f"{c!r}*pi"
        return head if self.divisor == 1 else f"{head}/{self.divisor}"


@dataclass(frozen=True)
class Variable:
    name: str

    def evaluate(self, bindings: Mapping[str, float]) -> float:
        try:
            return float(bindings[self.name])
        except KeyError:
            raise UnboundVariableError(self.name) from None

    def render(self) -> str:
        return self.name


PhaseExpr = Union[Literal, PiMultiple, Variable]


@dataclass(frozen=True)
class BsElement:
    i: int
    j: int


@dataclass(frozen=True)
class PhaseElement:
    i: int
    expr: PhaseExpr


Element = Union[BsElement, PhaseElement]


@dataclass(frozen=True)
class CircuitAST:
    mode_count: int
    elements: tuple[Element, ...] = ()

    def variables(self) -> list[str]:
        seen: dict[str, None] = {}
        for el in self.elements:
            if isinstance(el, PhaseElement) and isinstance(el.expr, Variable):
                seen.setdefault(el.expr.name)
        return list(seen)


# Lexing

_DECIMAL = r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_DECIMAL_RE = re.compile(_DECIMAL + r"\Z")
_PI_RE = re.compile(
    r"(?:(?P<coef>" + _DECIMAL + r")\s*\*\s*|(?P<sign>-))?pi(?:\s*/\s*(?P<div>\d+))?\Z"
)
_INT_RE = re.compile(r"[+-]?\d+\Z")
_TOKEN_RE = re.compile(r"\S+")
_KEYWORDS = ("modes", "bs", "phase")


def parse_phase_expr(text: str) -> PhaseExpr:
    """Parse one phase expression; raises ``ValueError`` if malformed."""
    s = text.strip()
    m = _PI_RE.match(s)
    if m:
        div = int(m.group("div")) if m.group("div") else 1
        if div == 0:
            raise ValueError("division by zero in phase expression")
        if m.group("coef") is not None:
            coef = float(m.group("coef"))
        else:
            coef = -1.0 if m.group("sign") else 1.0
        return PiMultiple(coef, div)
    if _DECIMAL_RE.match(s):
        value = float(s)
        if not math.isfinite(value):
            raise ValueError(f"phase literal {s!r} is not finite")
        return Literal(value)
    if _IDENT_RE.match(s) and s != "pi" and s not in _KEYWORDS:
        return Variable(s)
    raise ValueError(f"invalid phase expression {s!r}")


def _index(tok: str, col: int, lineno: int, n: int) -> int:
    if not _INT_RE.match(tok):
        raise ParseError(lineno, col, f"expected a mode index, got {tok!r}", tok)
    k = int(tok)
    if not 0 <= k < n:
        raise ParseError(lineno, col, f"index {k} out of range for {n} modes", tok)
    return k


def parse(source: str) -> CircuitAST:
    mode_count: int | None = None
    elements: list[Element] = []
    last_line = 0
    for lineno, raw in enumerate(source.splitlines(), start=1):
        last_line = lineno
        code = raw.split("#", 1)[0]
        toks = [(m.group(), m.start() + 1) for m in _TOKEN_RE.finditer(code)]
        if not toks:
            continue
        kw, kw_col = toks[0]
        args = toks[1:]
        if kw not in _KEYWORDS:
            raise ParseError(lineno, kw_col, f"unknown keyword {kw!r}", kw)

        if kw == "modes":
            if mode_count is not None:
                raise ParseError(lineno, kw_col, "duplicate 'modes' header", kw)
            if len(args) != 1:
                raise ParseError(lineno, kw_col, "'modes' takes exactly one argument", kw)
            tok, col = args[0]
            if not _INT_RE.match(tok) or int(tok) < 1:
                raise ParseError(lineno, col, f"mode count must be a positive integer, got {tok!r}", tok)
            mode_count = int(tok)
            continue

        if mode_count is None:
            raise ParseError(lineno, kw_col, f"missing 'modes' header before {kw!r}", kw)

        if kw == "bs":
            if len(args) != 2:
                raise ParseError(lineno, kw_col, f"'bs' takes two mode indices, got {len(args)} arguments", kw)
            i = _index(*args[0], lineno, mode_count)
            j = _index(*args[1], lineno, mode_count)
            if i == j:
                raise ParseError(lineno, args[1][1], f"beam splitter needs distinct modes, got {i} twice", args[1][0])
            elements.append(BsElement(i, j))
        else:
            if len(args) < 2:
                raise ParseError(lineno, kw_col, "'phase' takes a mode index and an expression", kw)
            i = _index(*args[0], lineno, mode_count)
            expr_col = args[1][1]
            expr_text = code[expr_col - 1:].rstrip()
            try:
                expr = parse_phase_expr(expr_text)
            except ValueError as exc:
                raise ParseError(lineno, expr_col, str(exc), expr_text) from None
            elements.append(PhaseElement(i, expr))

    if mode_count is None:
        raise ParseError(max(last_line, 1), 1, "missing 'modes' header", "")
    return CircuitAST(mode_count, tuple(elements))


def render(ast: CircuitAST) -> str:
    lines = [f"modes {ast.mode_count}"]
    for el in ast.elements:
        if isinstance(el, BsElement):
            lines.append(f"bs {el.i} {el.j}")
        else:
            lines.append(f"phase {el.i} {el.expr.render()}")
    return "\n".join(lines) + "\n"


def compile(ast: CircuitAST, bindings: Mapping[str, float] | None = None) -> optics.TransferMatrix:  # noqa: A001
    """Multiply out the element matrices in source order."""
    bindings = {} if bindings is None else bindings
    n = ast.mode_count
    mats = []
    for el in ast.elements:
        if isinstance(el, BsElement):
            mats.append(optics.beam_splitter(n, el.i, el.j))
        else:
            mats.append(optics.phase_shifter(n, el.i, el.expr.evaluate(bindings)))
    return optics.chain(mats, n)
