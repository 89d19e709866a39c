"""Exact scalar fields: the rationals and prime fields F_p.

Scalars are plain values (``gmpy2.mpq`` for Q, ``int`` in ``[0, p)`` for F_p);
a field object carries the arithmetic and normalisation rules.
"""

from __future__ import annotations

from fractions import Fraction
import re

from gmpy2 import mpq


class FieldError(ValueError):
    pass


class Field:
    name: str
    characteristic: int

    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def coerce(self, x):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a == 0

    def to_json(self):
        raise NotImplementedError

    def format(self, a) -> str:
        return str(a)

    def __repr__(self):
        return f"{type(self).__name__}({self.name})"

    def __eq__(self, other):
        return isinstance(other, Field) and self.name == other.name

    def __hash__(self):
        return hash(self.name)


class Rationals(Field):
    name = "Q"
    characteristic = 0
    _zero = mpq(0)
    _one = mpq(1)

    def zero(self):
        return self._zero

    def one(self):
        return self._one

    def coerce(self, x):
        if isinstance(x, str):
            x = parse_rational(x)
        if isinstance(x, float):
            raise FieldError("floating point scalars are not accepted; use 'num/den'")
        if isinstance(x, Fraction):
            return mpq(x.numerator, x.denominator)
        return mpq(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def to_json(self):
        return "Q"

    def format(self, a) -> str:
        a = self.coerce(a)
        num, den = int(a.numerator), int(a.denominator)
        return str(num) if den == 1 else f"{num}/{den}"


class PrimeField(Field):
    def __init__(self, p: int):
        if not isinstance(p, int) or not is_prime(p):
            raise FieldError(f"F_p requires a prime p, got {p!r}")
        self.p = p
        self.characteristic = p
        self.name = f"F{p}"

    def zero(self):
        return 0

    def one(self):
        return 1 % self.p

    def coerce(self, x):
        if isinstance(x, str):
            x = parse_rational(x)
        if isinstance(x, float):
            raise FieldError("floating point scalars are not accepted")
        if isinstance(x, (Fraction, type(mpq()))):
            num, den = int(x.numerator), int(x.denominator)
            if den % self.p == 0:
                raise FieldError(f"denominator {den} vanishes in {self.name}")
            return num * pow(den, -1, self.p) % self.p
        return int(x) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def to_json(self):
        return {"Fp": self.p}


QQ = Rationals()

_RATIONAL = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_rational(s: str) -> Fraction:
    m = _RATIONAL.match(s)
    if not m:
        raise FieldError(f"not a rational literal: {s!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise FieldError(f"zero denominator in {s!r}")
    return Fraction(num, den)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def field_from_token(token) -> Field:
    """Accepts ``"Q"``, ``"F5"``, ``"Fp5"``, ``{"Fp": 5}`` or an existing field."""
    if isinstance(token, Field):
        return token
    if isinstance(token, dict):
        if set(token) != {"Fp"}:
            raise FieldError(f"unknown field descriptor {token!r}")
        return PrimeField(token["Fp"])
    if isinstance(token, str):
        t = token.strip()
        if t.upper() in ("Q", "QQ"):
            return QQ
        m = re.fullmatch(r"[Ff](?:[Pp])?_?(\d+)", t)
        if m:
            return PrimeField(int(m.group(1)))
    raise FieldError(f"unknown field {token!r}; expected Q or F<p>")
