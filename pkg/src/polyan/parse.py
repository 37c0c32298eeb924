"""Infix surface syntax for expressions.

Grammar::

    expr    := term (("+" | "-") term)*
    term    := unary (("*" | "/") unary)*      division by constants only
    unary   := ("+" | "-") unary | power
    power   := atom (("^" | "**") unary)?      nonnegative integer exponents
    atom    := NUMBER | NAME | NAME "(" args ")" | "(" expr ")"

Names: ``z``, ``zb`` (``zbar``), ``w``, ``wb`` (``wbar``), ``i``.
Functions: ``F(n)`` / ``F(n, w)`` polyanalytic Fock kernel, ``H(m, n)``
complex Hermite polynomial, ``conj(e)``, and ``exp(e)`` where ``e`` is an
integer combination of ``z*wb``, ``zb*w`` and ``z*zb``.

Example: ``zb^2*z + 3``, ``(2 - (z-w)*(zb-wb))*exp(z*wb)``, ``F(3,w)``.
"""

from __future__ import annotations

import json
import re

from polyan.algebra import W, WB, Z, ZB, ExpPoly, conjugate
from polyan.errors import ExpressionSyntaxError
from polyan.serialize import expr_from_dict
from polyan.special import fock_kernel, hermite

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+\.\d*(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?|\d+(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>\*\*|[-+*/^(),]))"
)

_NAMES = {
    "z": Z,
    "zb": ZB,
    "zbar": ZB,
    "w": W,
    "wb": WB,
    "wbar": WB,
    "i": ExpPoly.constant(1j),
}

_EXP_SLOTS = {(1, 0, 0, 1): 0, (0, 1, 1, 0): 1, (1, 1, 0, 0): 2}


def _tokenize(text: str) -> list[tuple[str, str]]:
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ExpressionSyntaxError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        kind = m.lastgroup
        out.append((kind, m.group(kind)))
        pos = m.end()
    out.append(("end", ""))
    return out


def _as_int(f: ExpPoly, what: str) -> int:
    if f.factor != (0, 0, 0) or any(e != (0, 0, 0, 0) for e in f.terms):
        raise ExpressionSyntaxError(f"{what} must be a constant")
    c = f.terms.get((0, 0, 0, 0), 0j)
    if c.imag != 0 or c.real != int(c.real):
        raise ExpressionSyntaxError(f"{what} must be an integer, got {c}")
    return int(c.real)


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, value: str | None = None):
        tok = self.tokens[self.i]
        if value is not None and tok[1] != value:
            raise ExpressionSyntaxError(f"expected {value!r}, found {tok[1] or 'end of input'!r}")
        self.i += 1
        return tok

    def parse(self) -> ExpPoly:
        out = self.expr()
        if self.peek()[0] != "end":
            raise ExpressionSyntaxError(f"trailing input at {self.peek()[1]!r}")
        return out

    def expr(self) -> ExpPoly:
        out = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term(self) -> ExpPoly:
        out = self.unary()
        while self.peek()[1] in ("*", "/"):
            op = self.take()[1]
            rhs = self.unary()
            if op == "*":
                out = out * rhs
            else:
                if rhs.factor != (0, 0, 0) or any(e != (0, 0, 0, 0) for e in rhs.terms) or rhs.is_zero():
                    raise ExpressionSyntaxError("division is only allowed by nonzero constants")
                out = out / rhs.terms[(0, 0, 0, 0)]
        return out

    def unary(self) -> ExpPoly:
        if self.peek()[1] == "-":
            self.take()
            return -self.unary()
        if self.peek()[1] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> ExpPoly:
        base = self.atom()
        if self.peek()[1] in ("^", "**"):
            self.take()
            k = _as_int(self.unary(), "exponent")
            if k < 0:
                raise ExpressionSyntaxError("negative exponents are not supported")
            return base**k
        return base

    def args(self) -> list[ExpPoly]:
        self.take("(")
        out = [self.expr()]
        while self.peek()[1] == ",":
            self.take()
            out.append(self.expr())
        self.take(")")
        return out

    def atom(self) -> ExpPoly:
        kind, val = self.peek()
        if kind == "num":
            self.take()
            return ExpPoly.constant(float(val))
        if val == "(":
            self.take()
            out = self.expr()
            self.take(")")
            return out
        if kind == "name":
            self.take()
            if self.peek()[1] == "(":
                return self.call(val, self.args())
            if val in _NAMES:
                return _NAMES[val]
            raise ExpressionSyntaxError(f"unknown name {val!r}")
        raise ExpressionSyntaxError(f"unexpected token {val or 'end of input'!r}")

    def call(self, name: str, args: list[ExpPoly]) -> ExpPoly:
        if name == "F":
            if len(args) not in (1, 2):
                raise ExpressionSyntaxError("F takes (n) or (n, w)")
            if len(args) == 2 and not args[1].isclose(W):
                raise ExpressionSyntaxError("the second argument of F must be the symbol w")
            n = _as_int(args[0], "kernel order")
            if n < 1:
                raise ExpressionSyntaxError("kernel order must be >= 1")
            return fock_kernel(n)
        if name == "H":
            if len(args) != 2:
                raise ExpressionSyntaxError("H takes (m, n)")
            m, n = (_as_int(a, "Hermite index") for a in args)
            if m < 0 or n < 0:
                raise ExpressionSyntaxError("Hermite indices must be >= 0")
            return hermite(m, n)
        if name == "conj":
            if len(args) != 1:
                raise ExpressionSyntaxError("conj takes one argument")
            return conjugate(args[0])
        if name == "exp":
            if len(args) != 1:
                raise ExpressionSyntaxError("exp takes one argument")
            return _exp_factor(args[0])
        raise ExpressionSyntaxError(f"unknown function {name!r}")


def _exp_factor(arg: ExpPoly) -> ExpPoly:
    if arg.factor != (0, 0, 0):
        raise ExpressionSyntaxError("nested exponentials are not supported")
    m = [0, 0, 0]
    for e, c in arg.terms.items():
        if e not in _EXP_SLOTS or c.imag != 0 or c.real != int(c.real):
            raise ExpressionSyntaxError(
                "exp() accepts integer combinations of z*wb, zb*w and z*zb only"
            )
        m[_EXP_SLOTS[e]] = int(c.real)
    if m[0] < 0 or m[1] < 0:
        raise ExpressionSyntaxError("z*wb and zb*w multiplicities must be nonnegative")
    return ExpPoly.constant(1.0, *m)


def parse_expression(text: str) -> ExpPoly:
    """Parse infix text, or the JSON term format when the text starts with '{'."""
    stripped = text.strip()
    if not stripped:
        raise ExpressionSyntaxError("empty expression")
    if stripped.startswith("{"):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise ExpressionSyntaxError(f"invalid JSON: {exc}") from exc
        return expr_from_dict(data)
    return _Parser(stripped).parse()
