"""Expression parsing for curves and integrands.

Grammar (whitespace-insensitive):

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-' factor | atom ('^' ['-'] INT)*
    atom   := INT | NAME | '(' expr ')'

Names are maximal letter runs; only x, y and (over QQ(t)) t are defined.
Error positions are 0-based character offsets.  A binary operator with a
missing right operand reports the operator's own position.

The same parser serves both jobs: curves evaluate in the fraction field of
K(x)[y] (the denominator must be free of y), integrands evaluate directly
in the function field of an already-built curve.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algfield import Curve
from .errors import DomainError, ExprSyntaxError, UnknownVariable
from .rings import (
    QQ,
    QT,
    T_POLY,
    FracField,
    PolyRing,
    gcd,
    lcm_many,
    x_frac_field,
    x_poly_ring,
)


@dataclass(frozen=True)
class Token:
    kind: str
    value: object
    pos: int


def tokenize(text):
    out = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            out.append(Token("int", int(text[i:j]), i))
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < len(text) and text[j].isalpha():
                j += 1
            out.append(Token("name", text[i:j], i))
            i = j
            continue
        if ch in "+-*/^":
            out.append(Token("op", ch, i))
            i += 1
            continue
        if ch == "(":
            out.append(Token("lparen", ch, i))
            i += 1
            continue
        if ch == ")":
            out.append(Token("rparen", ch, i))
            i += 1
            continue
        raise ExprSyntaxError(f"unexpected character {ch!r}", i)
    out.append(Token("end", None, len(text)))
    return out


def uses_t(text):
    """Whether the expression mentions the parameter t (lexical check)."""
    try:
        toks = tokenize(text)
    except ExprSyntaxError:
        return False
    return any(tok.kind == "name" and tok.value == "t" for tok in toks)


class _Parser:
    def __init__(self, tokens, names, from_int):
        self.toks = tokens
        self.i = 0
        self.names = names
        self.from_int = from_int

    def _peek(self):
        return self.toks[self.i]

    def _next(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def _require_operand(self, op_tok):
        nxt = self._peek()
        if nxt.kind in ("end", "rparen") or (
            nxt.kind == "op" and nxt.value != "-"
        ):
            raise ExprSyntaxError(
                f"operator {op_tok.value!r} is missing its operand", op_tok.pos
            )

    def parse(self):
        value = self.expr()
        tok = self._peek()
        if tok.kind != "end":
            raise ExprSyntaxError(f"unexpected {tok.value!r}", tok.pos)
        return value

    def expr(self):
        value = self.term()
        while self._peek().kind == "op" and self._peek().value in "+-":
            op = self._next()
            self._require_operand(op)
            rhs = self.term()
            value = value + rhs if op.value == "+" else value - rhs
        return value

    def term(self):
        value = self.factor()
        while self._peek().kind == "op" and self._peek().value in "*/":
            op = self._next()
            self._require_operand(op)
            rhs = self.factor()
            if op.value == "*":
                value = value * rhs
            else:
                try:
                    value = value / rhs
                except ZeroDivisionError:
                    raise DomainError("division by zero in expression")
        return value

    def factor(self):
        tok = self._peek()
        if tok.kind == "op" and tok.value == "-":
            self._next()
            self._require_operand(tok)
            return -self.factor()
        value = self.atom()
        while self._peek().kind == "op" and self._peek().value == "^":
            op = self._next()
            sign = 1
            if self._peek().kind == "op" and self._peek().value == "-":
                self._next()
                sign = -1
            exp = self._peek()
            if exp.kind != "int":
                raise ExprSyntaxError(
                    "'^' requires an integer exponent", op.pos
                )
            self._next()
            value = value ** (sign * exp.value)
        return value

    def atom(self):
        tok = self._next()
        if tok.kind == "int":
            return self.from_int(tok.value)
        if tok.kind == "name":
            try:
                return self.names[tok.value]
            except KeyError:
                raise UnknownVariable(tok.value, tok.pos)
        if tok.kind == "lparen":
            value = self.expr()
            closing = self._next()
            if closing.kind != "rparen":
                raise ExprSyntaxError("expected ')'", closing.pos)
            return value
        raise ExprSyntaxError("expected a value", tok.pos)


def parse_expression(text, names, from_int):
    """Evaluate text over the given name bindings; any value type with
    field operators works."""
    return _Parser(tokenize(text), names, from_int).parse()


def build_curve(text, const_field):
    """Parse a polynomial in x and y (coefficients may be rational in x)
    into a Curve.  Denominators are cleared and the K[x]-content removed, so
    the recorded leading coefficient is a polynomial."""
    xring = x_poly_ring(const_field)
    xfrac = x_frac_field(const_field)
    yring = PolyRing(xfrac, "y")
    yfrac = FracField(yring)
    names = {
        "x": yfrac.of(yring.from_coeff(xfrac.of(xring.gen))),
        "y": yfrac.of(yring.gen),
    }
    if const_field == QT:
        t_val = xfrac.of(xring.from_coeff(QT.of(T_POLY.gen)))
        names["t"] = yfrac.of(yring.from_coeff(t_val))
    value = parse_expression(text, names, yfrac.from_int)
    if value.den.degree > 0:
        raise DomainError("curve must be polynomial in y")
    poly = value.num / value.den.constant_term()
    if poly.degree < 1:
        raise DomainError("curve must involve y")
    den = lcm_many([c.den for c in poly.coeffs if c])
    cleared = [(c * xfrac.of(den)).as_poly() for c in poly.coeffs]
    content = None
    for p in cleared:
        if p:
            content = p if content is None else gcd(content, p)
    primitive = [xfrac.of(p.exact_div(content)) for p in cleared]
    from .rings import Poly

    return Curve(Poly(yring, tuple(primitive)), const_field)


def build_element(text, curve):
    """Parse an integrand over an existing curve into a field element."""
    names = {
        "x": curve.from_x(curve.xfrac.of(curve.xring.gen)),
        "y": curve.gen(),
    }
    if curve.field == QT:
        names["t"] = curve.from_x(
            curve.xfrac.of(curve.xring.from_coeff(QT.of(T_POLY.gen)))
        )
    return parse_expression(
        text, names, lambda k: curve.from_x(curve.xfrac.from_int(k))
    )


def field_for(texts, force_t=False):
    """QQ(t) when any given expression mentions t (or when forced), else QQ."""
    if force_t or any(uses_t(s) for s in texts):
        return QT
    return QQ
