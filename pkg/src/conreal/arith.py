"""Exact rationals, rational intervals and their natural-number encoding"""
import logging
import math
import operator
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from conreal.errors import InvalidInput

logger = logging.getLogger(__name__)

Rational = Fraction

_RATIONAL_RE = re.compile(r"^-?\d+(/\d+)?$", re.ASCII)

# Bump when the layout of encode_rational/encode_interval changes
ENCODING_VERSION = 1


class Ordering(Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def compare(a, b):
    if a < b:
        return Ordering.LESS
    if a > b:
        return Ordering.GREATER
    return Ordering.EQUAL


_BINARY_OPS = {
    "add": operator.add,
    "sub": operator.sub,
    "mul": operator.mul,
    "div": operator.truediv,
    "min": min,
    "max": max,
    "compare": compare,
}
_UNARY_OPS = {
    "abs": abs,
    "neg": operator.neg,
}


def rational_op(op, a, b=None):
    """Apply an exact operation on rationals; div by zero raises ZeroDivisionError."""
    if op in _UNARY_OPS:
        return _UNARY_OPS[op](Fraction(a))
    if op in _BINARY_OPS:
        if b is None:
            raise InvalidInput(f"Operation {op!r} needs two arguments")
        return _BINARY_OPS[op](Fraction(a), Fraction(b))
    raise InvalidInput(f"Unknown rational operation: {op!r}")


def pow2(k):
    """2^-k as an exact rational."""
    return Fraction(1, 1 << k) if k >= 0 else Fraction(1 << -k)


def ceil_log2(q):
    """Least e >= 0 with 2^e >= q."""
    q = Fraction(q)
    if q <= 1:
        return 0
    return (math.ceil(q) - 1).bit_length()


def parse_rational(text):
    text = text.strip()
    if not _RATIONAL_RE.match(text):
        raise InvalidInput(f"Not a rational in p/q form: {text!r}")
    numerator, _, denominator = text.partition("/")
    if denominator and int(denominator) == 0:
        raise InvalidInput(f"Zero denominator: {text!r}")
    return Fraction(int(numerator), int(denominator or 1))


def format_rational(q):
    return str(Fraction(q))


@dataclass(frozen=True)
class RatInterval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise InvalidInput(f"Interval endpoints out of order: ({self.lo}, {self.hi})")

    @classmethod
    def point(cls, q):
        return cls(q, q)

    @classmethod
    def around(cls, centre, radius):
        return cls(centre - radius, centre + radius)

    @property
    def length(self):
        return self.hi - self.lo

    def within(self, other):
        """self ⊑ other"""
        return other.lo <= self.lo and self.hi <= other.hi

    def touches(self, other):
        """self ≈ other"""
        return other.lo <= self.hi and self.lo <= other.hi

    def contains(self, q):
        return self.lo <= q <= self.hi

    def __add__(self, other):
        return RatInterval(self.lo + other.lo, self.hi + other.hi)

    def __neg__(self):
        return RatInterval(-self.hi, -self.lo)

    def scale(self, factor):
        factor = Fraction(factor)
        ends = (self.lo * factor, self.hi * factor)
        return RatInterval(min(ends), max(ends))

    def shift(self, offset):
        return RatInterval(self.lo + offset, self.hi + offset)

    def __str__(self):
        return f"[{format_rational(self.lo)}, {format_rational(self.hi)}]"


def interval_length(interval):
    return interval.length


def interval_within(inner, outer):
    return inner.within(outer)


def interval_touches(first, second):
    return first.touches(second)


# Encoding: zig-zag numerator, Cantor pairing with denominator - 1


def _zigzag(n):
    return 2 * n if n >= 0 else -2 * n - 1


def _unzigzag(z):
    return z // 2 if z % 2 == 0 else -(z + 1) // 2


def pair(a, b):
    return (a + b) * (a + b + 1) // 2 + b


def unpair(n):
    if n < 0:
        raise InvalidInput(f"Cannot unpair a negative number: {n}")
    w = (math.isqrt(8 * n + 1) - 1) // 2
    b = n - w * (w + 1) // 2
    return w - b, b


def encode_rational(q):
    q = Fraction(q)
    return pair(_zigzag(q.numerator), q.denominator - 1)


def decode_rational(n):
    z, d = unpair(n)
    numerator, denominator = _unzigzag(z), d + 1
    if math.gcd(numerator, denominator) != 1:
        raise InvalidInput(f"Code {n} is not a canonical rational")
    return Fraction(numerator, denominator)


def encode_interval(interval):
    return pair(encode_rational(interval.lo), encode_rational(interval.hi))


def decode_interval(n):
    lo_code, hi_code = unpair(n)
    return RatInterval(decode_rational(lo_code), decode_rational(hi_code))
