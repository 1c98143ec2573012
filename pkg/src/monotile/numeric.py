"""Exact arithmetic in the real quadratic field Q[sqrt3].

Every coordinate produced by the constructions in this package is a value
``p + q*sqrt3`` with rational ``p`` and ``q``.  Rationals are
:class:`fractions.Fraction`, so precision is unbounded.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational

__all__ = [
    "QS3",
    "ParseError",
    "SQRT3",
    "ZERO",
    "ONE",
    "HALF",
    "qs3_arith",
    "qs3_sign",
    "qs3_sqrt",
    "qs3_to_float",
    "parse_qs3",
]

_SQRT3_FLOAT = math.sqrt(3.0)


def _frac(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, (int, Rational)):
        return Fraction(v)
    raise TypeError(f"expected a rational, got {type(v).__name__}")


def _rational_sqrt(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


class QS3:
    """An element ``p + q*sqrt3`` of Q[sqrt3].

    Instances are immutable and hashable.  Since sqrt3 is irrational the
    pair ``(p, q)`` is unique, so equality is componentwise.
    """

    __slots__ = ("p", "q")

    def __init__(self, p=0, q=0):
        object.__setattr__(self, "p", _frac(p))
        object.__setattr__(self, "q", _frac(q))

    def __setattr__(self, name, value):
        raise AttributeError("QS3 is immutable")

    def __reduce__(self):
        return (QS3, (self.p, self.q))

    @classmethod
    def _make(cls, p: Fraction, q: Fraction) -> "QS3":
        obj = object.__new__(cls)
        object.__setattr__(obj, "p", p)
        object.__setattr__(obj, "q", q)
        return obj

    @classmethod
    def coerce(cls, v) -> "QS3":
        if isinstance(v, QS3):
            return v
        return cls(_frac(v), 0)

    # -- field operations -------------------------------------------------

    def __add__(self, other):
        try:
            o = QS3.coerce(other)
        except TypeError:
            return NotImplemented
        return QS3._make(self.p + o.p, self.q + o.q)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            o = QS3.coerce(other)
        except TypeError:
            return NotImplemented
        return QS3._make(self.p - o.p, self.q - o.q)

    def __rsub__(self, other):
        try:
            o = QS3.coerce(other)
        except TypeError:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, QS3):
            return QS3._make(self.p * other.p + 3 * self.q * other.q,
                             self.p * other.q + self.q * other.p)
        try:
            r = _frac(other)
        except TypeError:
            return NotImplemented
        return QS3._make(self.p * r, self.q * r)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        """Field norm ``p**2 - 3*q**2`` (product with the conjugate)."""
        return self.p * self.p - 3 * self.q * self.q

    def conjugate(self) -> "QS3":
        return QS3(self.p, -self.q)

    def inverse(self) -> "QS3":
        n = self.norm()
        if n == 0:
            # the norm vanishes only at zero
            raise ZeroDivisionError("QS3 division by zero")
        return QS3(self.p / n, -self.q / n)

    def __truediv__(self, other):
        try:
            o = QS3.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        try:
            o = QS3.coerce(other)
        except TypeError:
            return NotImplemented
        return o * self.inverse()

    def __neg__(self):
        return QS3._make(-self.p, -self.q)

    def __pos__(self):
        return self

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparison ---------------------------------------------------------

    def sign(self) -> int:
        return qs3_sign(self)

    def __eq__(self, other):
        if isinstance(other, QS3):
            return self.p == other.p and self.q == other.q
        try:
            r = _frac(other)
        except TypeError:
            return NotImplemented
        return self.q == 0 and self.p == r

    def __hash__(self):
        if self.q == 0:
            return hash(self.p)
        return hash((self.p, self.q))

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __bool__(self):
        return bool(self.p) or bool(self.q)

    def __float__(self):
        return qs3_to_float(self)

    def key(self) -> tuple[Fraction, Fraction]:
        """Total order on representations (not on real values)."""
        return (self.p, self.q)

    # -- text ---------------------------------------------------------------

    def __str__(self):
        p, q = self.p, self.q
        if q == 0:
            return str(p)
        mag = abs(q)
        root = "sqrt3" if mag == 1 else f"{mag}*sqrt3"
        if p == 0:
            return root if q > 0 else f"-{root}"
        return f"{p} {'+' if q > 0 else '-'} {root}"

    def __repr__(self):
        return f"QS3({str(self)!r})"


def qs3_arith(x: QS3, y: QS3, op: str) -> QS3:
    """Apply ``op`` in ``{"add", "sub", "mul", "div"}``."""
    x, y = QS3.coerce(x), QS3.coerce(y)
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown operation {op!r}")


def qs3_sign(x: QS3) -> int:
    p, q = x.p, x.q
    sp = (p > 0) - (p < 0)
    sq = (q > 0) - (q < 0)
    if sp == sq or sq == 0:
        return sp
    if sp == 0:
        return sq
    # mixed signs: |p| vs |q|*sqrt3 decided on squares
    d = p * p - 3 * q * q
    sd = (d > 0) - (d < 0)
    return sp * sd


def qs3_sqrt(x: QS3) -> QS3 | None:
    """Non-negative square root inside Q[sqrt3], or ``None`` if there is none.

    Raises ``ValueError`` for negative input.
    """
    x = QS3.coerce(x)
    if x.sign() < 0:
        raise ValueError(f"square root of negative value {x}")
    p, q = x.p, x.q
    if q == 0:
        r = _rational_sqrt(p)
        if r is not None:
            return QS3(r, 0)
        r = _rational_sqrt(p / 3)
        return QS3(0, r) if r is not None else None
    # (a + b sqrt3)^2 = p + q sqrt3  =>  a^2 + 3b^2 = p, 2ab = q
    disc = _rational_sqrt(p * p - 3 * q * q)
    if disc is None:
        return None
    for a2 in ((p + disc) / 2, (p - disc) / 2):
        a = _rational_sqrt(a2)
        if not a:
            continue
        s = QS3(a, q / (2 * a))
        if s.sign() < 0:
            s = -s
        if s * s == x:
            return s
    return None


def qs3_to_float(x: QS3) -> float:
    p, q = x.p, x.q
    if q == 0:
        return float(p)
    if p == 0 or (p > 0) == (q > 0):
        return float(p) + float(q) * _SQRT3_FLOAT
    # avoid cancellation: p + q sqrt3 = (p^2 - 3 q^2) / (p - q sqrt3)
    return float(x.norm()) / (float(p) - float(q) * _SQRT3_FLOAT)


ZERO = QS3(0)
ONE = QS3(1)
HALF = QS3(Fraction(1, 2))
SQRT3 = QS3(0, 1)


# -- expression parser ------------------------------------------------------

class ParseError(ValueError):
    """Syntax error in a QS3 expression; ``pos`` is the 0-based offset."""

    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.text = text
        self.pos = pos


_TOKEN = re.compile(r"\s*(?:(\d+)|(sqrt3)|([-+*/()]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError("unexpected character", text, start)
        kind = "int" if m.group(1) else "sqrt3" if m.group(2) else m.group(3)
        tokens.append((kind, m.group(m.lastindex), m.start(m.lastindex)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    # expr   := term (('+'|'-') term)*
    # term   := unary (('*'|'/') unary)*
    # unary  := '-' unary | '+' unary | atom
    # atom   := INT | 'sqrt3' | '(' expr ')'

    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def parse(self) -> QS3:
        value = self.expr()
        kind, _, pos = self.peek()
        if kind != "end":
            raise ParseError("unexpected token", self.text, pos)
        return value

    def expr(self) -> QS3:
        value = self.term()
        while self.peek()[0] in "+-":
            op = self.take()[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> QS3:
        value = self.unary()
        while self.peek()[0] in ("*", "/"):
            op, _, pos = self.take()
            rhs = self.unary()
            if op == "*":
                value = value * rhs
            else:
                if not rhs:
                    raise ZeroDivisionError(
                        f"division by zero at position {pos}: {self.text!r}")
                value = value / rhs
        return value

    def unary(self) -> QS3:
        kind = self.peek()[0]
        if kind == "-":
            self.take()
            return -self.unary()
        if kind == "+":
            self.take()
            return self.unary()
        return self.atom()

    def atom(self) -> QS3:
        kind, val, pos = self.take()
        if kind == "int":
            return QS3(int(val))
        if kind == "sqrt3":
            return SQRT3
        if kind == "(":
            value = self.expr()
            kind, _, pos = self.take()
            if kind != ")":
                raise ParseError("expected ')'", self.text, pos)
            return value
        what = "end of input" if kind == "end" else f"token {val!r}"
        raise ParseError(f"unexpected {what}", self.text, pos)


def parse_qs3(text: str) -> QS3:
    """Parse an expression such as ``"(sqrt3-1)/2"`` into an exact value.

    >>> str(parse_qs3("1/(1+sqrt3)"))
    '-1/2 + 1/2*sqrt3'
    """
    return _Parser(text).parse()
