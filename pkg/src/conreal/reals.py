"""Regular, fundamental and shrinking-interval representations of reals"""
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from conreal.arith import RatInterval, pow2
from conreal.config import GLOBAL_CAP
from conreal.errors import CapExceeded, InvalidInput
from conreal.streams import Stream

logger = logging.getLogger(__name__)


def _as_stream(source, convert):
    if isinstance(source, Stream):
        return source
    return Stream(lambda n: convert(source(n)))


class RegularReal:
    """A rational sequence with |r(n) - r(n+1)| <= 2^-(n+1)."""

    def __init__(self, terms):
        self.terms = _as_stream(terms, Fraction)

    @classmethod
    def constant(cls, q):
        q = Fraction(q)
        return cls(lambda n: q)

    def __getitem__(self, n):
        return self.terms[n]

    def approx(self, k):
        return self.terms[k]

    def __add__(self, other):
        return regular_arithmetic("add", self, other)

    def __sub__(self, other):
        return regular_arithmetic("sub", self, other)

    def __neg__(self):
        return regular_arithmetic("neg", self)

    def __abs__(self):
        return regular_arithmetic("abs", self)


class FundamentalReal:
    """A Cauchy sequence with an explicit modulus of convergence."""

    def __init__(self, terms, modulus):
        self.terms = _as_stream(terms, Fraction)
        self.modulus = modulus

    @classmethod
    def constant(cls, q):
        q = Fraction(q)
        return cls(lambda n: q, lambda k: k)


class ShrinkingReal:
    """Nested rational intervals whose lengths tend to 0.

    convergence(k) is an index whose interval has length <= 2^-k. Inputs
    built without a witness get one by search under the global cap.
    """

    def __init__(self, intervals, convergence=None, cap=None):
        self.intervals = _as_stream(intervals, _as_interval)
        self.cap = GLOBAL_CAP if cap is None else cap
        self.convergence = convergence or self._search_convergence

    @classmethod
    def constant(cls, q):
        point = RatInterval.point(q)
        return cls(lambda n: point, lambda k: 0)

    def _search_convergence(self, k):
        bound = pow2(k)
        for m in range(self.cap):
            if self.intervals[m].length <= bound:
                return m
        logger.debug("no interval of length <= 2^-%d below %d", k, self.cap)
        raise CapExceeded(f"shrinking convergence at k={k}", self.cap)

    def __getitem__(self, n):
        return self.intervals[n]


def _as_interval(value):
    if isinstance(value, RatInterval):
        return value
    lo, hi = value
    return RatInterval(lo, hi)


class Order(Enum):
    LESS = "less"
    GREATER = "greater"
    INDISTINGUISHABLE = "indistinguishable"


@dataclass(frozen=True)
class Trichotomy:
    tag: Order
    witness: int | None = None

    def __str__(self):
        if self.witness is None:
            return self.tag.value
        return f"{self.tag.value} {self.witness}"


# Finite-depth invariant checks


def regular_check_prefix(x, depth):
    return all(abs(x[n] - x[n + 1]) <= pow2(n + 1) for n in range(depth))


def fundamental_check_prefix(f, depth):
    for k in range(depth):
        start = f.modulus(k)
        window = [f.terms[start + n] for n in range(depth)]
        if max(window) - min(window) > pow2(k):
            return False
    return True


def shrinking_check_prefix(s, depth):
    nested = all(s[n + 1].within(s[n]) for n in range(depth))
    return nested and all(s[s.convergence(k)].length <= pow2(k) for k in range(depth))


# Conversions


def regular_from_fundamental(f):
    return RegularReal(lambda n: f.terms[f.modulus(n + 1)])


def fundamental_from_regular(x):
    return FundamentalReal(x.terms, lambda k: k)


def regular_from_shrinking(s, cap=None):
    cap = GLOBAL_CAP if cap is None else cap

    # Lengths shrink along the sequence, so the least index for 2^-(k+1)
    # is never below the one found for 2^-k.
    def least_index(k):
        bound = pow2(k + 1)
        start = depths[k - 1] if k else 0
        for m in range(start, start + cap):
            if s[m].length <= bound:
                return m
        raise CapExceeded(f"interval of length <= 2^-{k + 1}", cap)

    depths = Stream(least_index)
    return RegularReal(lambda n: s[depths[n]].lo)


def shrinking_from_regular(x):
    return ShrinkingReal(
        lambda n: RatInterval.around(x[n + 1], pow2(n + 1)),
        lambda k: k,
    )


def to_regular(value):
    if isinstance(value, RegularReal):
        return value
    if isinstance(value, FundamentalReal):
        return regular_from_fundamental(value)
    if isinstance(value, ShrinkingReal):
        return regular_from_shrinking(value)
    raise InvalidInput(f"Not a real: {value!r}")


# Arithmetic


def regular_arithmetic(op, x, y=None):
    if op == "neg":
        return RegularReal(lambda n: -x[n])
    if op == "abs":
        return RegularReal(lambda n: abs(x[n]))
    if y is None:
        raise InvalidInput(f"Operation {op!r} needs two arguments")
    if op == "add":
        return RegularReal(lambda n: x[n + 1] + y[n + 1])
    if op == "sub":
        return RegularReal(lambda n: x[n + 1] - y[n + 1])
    raise InvalidInput(f"Unknown real operation: {op!r}")


def fundamental_arithmetic(op, f, g=None):
    if op == "neg":
        return FundamentalReal(lambda n: -f.terms[n], f.modulus)
    if op == "abs":
        return FundamentalReal(lambda n: abs(f.terms[n]), f.modulus)
    if g is None:
        raise InvalidInput(f"Operation {op!r} needs two arguments")

    def modulus(k):
        return max(f.modulus(k + 1), g.modulus(k + 1))

    if op == "add":
        return FundamentalReal(lambda n: f.terms[n] + g.terms[n], modulus)
    if op == "sub":
        return FundamentalReal(lambda n: f.terms[n] - g.terms[n], modulus)
    raise InvalidInput(f"Unknown real operation: {op!r}")


def _interval_abs(interval):
    # Clamped at 0 so straddling intervals stay inside [0, inf)
    return RatInterval(max(-interval.hi, interval.lo, 0), max(-interval.lo, interval.hi))


def shrinking_arithmetic(op, s, t=None):
    if op == "neg":
        return ShrinkingReal(lambda n: -s[n], s.convergence)
    if op == "abs":
        return ShrinkingReal(lambda n: _interval_abs(s[n]), s.convergence)
    if t is None:
        raise InvalidInput(f"Operation {op!r} needs two arguments")

    def convergence(k):
        return max(s.convergence(k + 1), t.convergence(k + 1))

    if op == "add":
        return ShrinkingReal(lambda n: s[n] + t[n], convergence)
    if op == "sub":
        return ShrinkingReal(lambda n: s[n] + -t[n], convergence)
    raise InvalidInput(f"Unknown real operation: {op!r}")


# Approximation and finite-depth comparison


def approx(x, k):
    """A rational within 2^-k of x."""
    return to_regular(x).approx(k)


def eq_at(x, y, depth):
    x, y = to_regular(x), to_regular(y)
    return all(abs(x[n + 1] - y[n + 1]) <= pow2(n) for n in range(depth))


def less_at(x, y, cap):
    x, y = to_regular(x), to_regular(y)
    for n in range(cap):
        gap = y[n + 1] - x[n + 1]
        if gap > pow2(n):
            return Trichotomy(Order.LESS, n)
        if -gap > pow2(n):
            return Trichotomy(Order.GREATER, n)
    return Trichotomy(Order.INDISTINGUISHABLE)


def shrinking_eq_at(s, t, depth):
    return all(s[n].touches(t[n]) for n in range(depth))


def shrinking_less_at(s, t, cap):
    for n in range(cap):
        if s[n].hi < t[n].lo:
            return Trichotomy(Order.LESS, n)
        if t[n].hi < s[n].lo:
            return Trichotomy(Order.GREATER, n)
    return Trichotomy(Order.INDISTINGUISHABLE)
