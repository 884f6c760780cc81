"""Reader and writer for the S-expression circuit file format.

Grammar::

    file  := (circuit (params NAME*) expr)
    expr  := (wire) | (gate BUILTIN) | (mat MATRIX) | (rot AXIS ANGLE)
           | (ctrl expr) | (seq expr expr+) | (par expr expr+)
    AXIS  := Pauli string such as Z or ZZ, or MATRIX
    ANGLE := (+ TERM*) | TERM
    TERM  := (* RATIONAL NAME) | (pi RATIONAL) | NAME
    MATRIX:= [[scalar, ...], ...]

``seq`` lists circuits in time order.  Both ``seq`` and ``par`` desugar
left-associatively.  ``;`` starts a comment that runs to the end of the line.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .circuit import (
    BUILTIN_NAMES,
    AffineForm,
    Circuit,
    Constant,
    Control,
    Empty,
    Par,
    Rotation,
    Seq,
    builtin,
    builtin_matrix,
    pauli_string,
    require_valid,
)
from .cycmat import CycMatrix, format_matrix
from .errors import DimensionError, ParseError
from .exactnum import parse_scalar


@dataclass(frozen=True)
class CircuitFile:
    params: tuple[str, ...]
    body: Circuit

    @property
    def k(self) -> int:
        return len(self.params)


@dataclass(frozen=True)
class _Atom:
    text: str
    line: int
    col: int


@dataclass(frozen=True)
class _Matrix:
    text: str
    line: int
    col: int


@dataclass(frozen=True)
class _List:
    items: tuple
    line: int
    col: int


class _Reader:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.line = 1
        self.col = 1

    def _advance(self, n: int = 1) -> None:
        for _ in range(n):
            if self.text[self.pos] == "\n":
                self.line += 1
                self.col = 1
            else:
                self.col += 1
            self.pos += 1

    def _skip(self) -> None:
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch.isspace():
                self._advance()
            elif ch == ";":
                while self.pos < len(self.text) and self.text[self.pos] != "\n":
                    self._advance()
            else:
                return

    def at_end(self) -> bool:
        self._skip()
        return self.pos >= len(self.text)

    def read(self):
        self._skip()
        if self.pos >= len(self.text):
            raise ParseError("unexpected end of input", self.line, self.col)
        line, col = self.line, self.col
        ch = self.text[self.pos]
        if ch == "(":
            self._advance()
            items = []
            while True:
                self._skip()
                if self.pos >= len(self.text):
                    raise ParseError("unclosed '('", line, col)
                if self.text[self.pos] == ")":
                    self._advance()
                    return _List(tuple(items), line, col)
                items.append(self.read())
        if ch == ")":
            raise ParseError("unexpected ')'", line, col)
        if ch == "[":
            return self._read_matrix(line, col)
        start = self.pos
        while self.pos < len(self.text) and not (self.text[self.pos].isspace() or self.text[self.pos] in "();["):
            self._advance()
        return _Atom(self.text[start : self.pos], line, col)

    def _read_matrix(self, line: int, col: int) -> _Matrix:
        start = self.pos
        depth = 0
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch in "[(":
                depth += 1
            elif ch in "])":
                depth -= 1
                if depth < 0:
                    raise ParseError("unbalanced brackets in matrix literal", line, col)
            self._advance()
            if depth == 0:
                return _Matrix(self.text[start : self.pos], line, col)
        raise ParseError("unterminated matrix literal", line, col)


def _split_top(text: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "[(":
            depth += 1
        elif ch in "])":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def parse_matrix(text: str, line: int = 1, col: int = 1) -> CycMatrix:
    """Parse a ``[[e, e], [e, e]]`` literal with exact scalar entries."""
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise ParseError("matrix literal must be bracketed", line, col)
    rows = []
    for row_text in _split_top(body[1:-1]):
        row_text = row_text.strip()
        if not (row_text.startswith("[") and row_text.endswith("]")):
            raise ParseError(f"matrix row must be bracketed: {row_text!r}", line, col)
        entries = [e.strip() for e in _split_top(row_text[1:-1])]
        if any(not e for e in entries):
            raise ParseError("empty matrix entry", line, col)
        rows.append([parse_scalar(e, line, col) for e in entries])
    try:
        return CycMatrix.from_rows(rows)
    except DimensionError as exc:
        raise ParseError(str(exc), line, col) from None


class _Builder:
    def __init__(self, params: Sequence[str]):
        self.params = list(params)
        self.index = {name: j for j, name in enumerate(self.params)}

    def head(self, node) -> str:
        if not isinstance(node, _List) or not node.items or not isinstance(node.items[0], _Atom):
            raise ParseError("expected a parenthesized form", node.line, node.col)
        return node.items[0].text

    def expr(self, node) -> Circuit:
        head = self.head(node)
        args = node.items[1:]

        def arity(n: int | None, at_least: int | None = None) -> None:
            if n is not None and len(args) != n:
                raise ParseError(f"'{head}' takes {n} argument(s), got {len(args)}", node.line, node.col)
            if at_least is not None and len(args) < at_least:
                raise ParseError(f"'{head}' needs at least {at_least} arguments", node.line, node.col)

        if head == "wire":
            arity(0)
            return Empty()
        if head == "gate":
            arity(1)
            name = self.atom(args[0])
            if name not in BUILTIN_NAMES:
                raise ParseError(f"unknown builtin gate {name!r}", args[0].line, args[0].col)
            return builtin(name)
        if head == "mat":
            arity(1)
            return Constant(self.matrix(args[0]))
        if head == "rot":
            arity(2)
            axis, name = self.axis(args[0])
            return Rotation(axis, self.angle(args[1]), axis_name=name)
        if head == "ctrl":
            arity(1)
            inner = self.expr(args[0])
            if not isinstance(inner, (Constant, Rotation, Control)):
                raise ParseError("'ctrl' applies to a single gate", args[0].line, args[0].col)
            return Control(inner)
        if head in ("seq", "par"):
            arity(None, at_least=1)
            parts = [self.expr(a) for a in args]
            out = parts[0]
            for p in parts[1:]:
                out = Seq(p, out) if head == "seq" else Par(out, p)
            return out
        raise ParseError(f"unknown form {head!r}", node.line, node.col)

    def atom(self, node) -> str:
        if not isinstance(node, _Atom):
            raise ParseError("expected a name", node.line, node.col)
        return node.text

    def matrix(self, node) -> CycMatrix:
        if not isinstance(node, _Matrix):
            raise ParseError("expected a matrix literal", node.line, node.col)
        return parse_matrix(node.text, node.line, node.col)

    def axis(self, node) -> tuple[CycMatrix, str | None]:
        if isinstance(node, _Matrix):
            return self.matrix(node), None
        name = self.atom(node)
        try:
            return pauli_string(name), name
        except ValueError:
            raise ParseError(f"unknown rotation axis {name!r}", node.line, node.col) from None

    def rational(self, node) -> Fraction:
        text = self.atom(node)
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"expected a rational number, got {text!r}", node.line, node.col) from None

    def angle(self, node) -> AffineForm:
        coeffs = [Fraction(0)] * len(self.params)
        offset = Fraction(0)
        terms = node.items[1:] if isinstance(node, _List) and self.head(node) == "+" else (node,)
        for term in terms:
            if isinstance(term, _Atom):
                j = self.param(term)
                coeffs[j] += 1
                continue
            head = self.head(term)
            if head == "*":
                if len(term.items) != 3:
                    raise ParseError("'*' takes a rational and a parameter name", term.line, term.col)
                coeffs[self.param(term.items[2])] += self.rational(term.items[1])
            elif head == "pi":
                if len(term.items) != 2:
                    raise ParseError("'pi' takes one rational", term.line, term.col)
                offset += self.rational(term.items[1])
            else:
                raise ParseError(f"unexpected angle term {head!r}", term.line, term.col)
        return AffineForm(tuple(coeffs), offset)

    def param(self, node) -> int:
        name = self.atom(node)
        if name not in self.index:
            raise ParseError(f"parameter {name!r} is not declared in (params ...)", node.line, node.col)
        return self.index[name]


def parse_file(text: str, validate: bool = True) -> CircuitFile:
    """Parse a circuit file; raises :class:`ParseError` or ``CircuitValidationError``."""
    reader = _Reader(text)
    top = reader.read()
    if not reader.at_end():
        raise ParseError("trailing input after the circuit form", reader.line, reader.col)
    if not isinstance(top, _List) or len(top.items) != 3 or not isinstance(top.items[0], _Atom) or top.items[0].text != "circuit":
        raise ParseError("expected (circuit (params ...) expr)", top.line, top.col)
    decl = top.items[1]
    if not isinstance(decl, _List) or not decl.items or getattr(decl.items[0], "text", None) != "params":
        raise ParseError("expected (params ...)", decl.line, decl.col)
    params = []
    for item in decl.items[1:]:
        if not isinstance(item, _Atom) or not item.text.isidentifier() or item.text == "pi":
            raise ParseError("parameter names must be identifiers other than 'pi'", item.line, item.col)
        if item.text in params:
            raise ParseError(f"duplicate parameter {item.text!r}", item.line, item.col)
        params.append(item.text)
    body = _Builder(params).expr(top.items[2])
    if validate:
        require_valid(body, len(params))
    return CircuitFile(tuple(params), body)


def parse(text: str, validate: bool = True) -> Circuit:
    return parse_file(text, validate).body


def load(path, validate: bool = True) -> CircuitFile:
    with open(path, encoding="utf-8") as fh:
        return parse_file(fh.read(), validate)


def _fmt_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_angle(form: AffineForm, params: Sequence[str]) -> str:
    terms = [f"(* {_fmt_rational(a)} {params[j]})" for j, a in enumerate(form.coeffs) if a]
    if form.offset:
        terms.append(f"(pi {_fmt_rational(form.offset)})")
    return "(+" + "".join(" " + t for t in terms) + ")"


def _flatten(c: Circuit, cls) -> list[Circuit]:
    if cls is Seq:
        items = []
        while isinstance(c, Seq):
            items.append(c.after)
            c = c.before
        items.append(c)
        return items[::-1]
    items = []
    while isinstance(c, Par):
        items.append(c.bottom)
        c = c.top
    items.append(c)
    return items[::-1]


def serialize_expr(c: Circuit, params: Sequence[str], indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(c, Empty):
        return pad + "(wire)"
    if isinstance(c, Constant):
        if c.name in BUILTIN_NAMES and builtin_matrix(c.name) == c.matrix:
            return pad + f"(gate {c.name})"
        return pad + f"(mat {format_matrix(c.matrix)})"
    if isinstance(c, Rotation):
        if c.axis_name and pauli_string(c.axis_name) == c.axis:
            axis = c.axis_name
        else:
            axis = format_matrix(c.axis)
        return pad + f"(rot {axis} {format_angle(c.form, params)})"
    if isinstance(c, Control):
        for name in ("CNOT", "CZ"):
            if c == builtin(name):
                return pad + f"(gate {name})"
        return pad + "(ctrl " + serialize_expr(c.inner, params).strip() + ")"
    if isinstance(c, (Seq, Par)):
        head = "seq" if isinstance(c, Seq) else "par"
        parts = [serialize_expr(p, params, indent + 1) for p in _flatten(c, type(c))]
        return pad + f"({head}\n" + "\n".join(parts) + ")"
    raise TypeError(f"not a circuit: {c!r}")


def serialize(c: Circuit, params: Sequence[str] = ()) -> str:
    """Render ``c`` as a circuit file; ``params`` names the parameters in index order."""
    return f"(circuit (params{''.join(' ' + p for p in params)})\n{serialize_expr(c, params, 1)})\n"
