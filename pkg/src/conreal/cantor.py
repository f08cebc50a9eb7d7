"""The Cantor discontinuum inside [0, 1]"""
import logging
from dataclasses import dataclass
from fractions import Fraction

from conreal.arith import RatInterval
from conreal.reals import FundamentalReal, regular_from_fundamental
from conreal.spread import numbered_interval
from conreal.streams import BinaryStream, Stream

logger = logging.getLogger(__name__)


def ternary_scale(k):
    """Least n with 2^-n <= 3^-k."""
    return (3 ** k - 1).bit_length()


def _cantor_left(word):
    return sum((Fraction(2 * bit, 3 ** (i + 1)) for i, bit in enumerate(word)), Fraction(0))


def cantor_interval(word):
    left = _cantor_left(word)
    return RatInterval(left, left + Fraction(1, 3 ** len(word)))


def kappa(beta):
    """κ(β) = Σ 2β_i 3^-(i+1), regularized from its partial sums."""

    def partial_sum(n):
        if n == 0:
            return Fraction(0)
        return sums[n - 1] + Fraction(2 * beta[n - 1], 3 ** n)

    sums = Stream(partial_sum)
    return regular_from_fundamental(FundamentalReal(sums, ternary_scale))


def gamma(alpha):
    """The binary path γ_α read off the ternary path α.

    Digit n depends on exactly the prefix of α of length L(n+1).
    """

    def digit(n):
        depth = ternary_scale(n + 1)
        right_end = numbered_interval(alpha.numbers[depth], depth).hi
        upper = cantor_interval(path.prefix(n) + (1,))
        return 0 if right_end < upper.lo else 1

    path = BinaryStream(digit)
    return path


@dataclass(frozen=True)
class NeighborPair:
    pred: tuple | None
    succ: tuple | None


def immediate_neighbors(word):
    word = tuple(word)
    pred = succ = None
    if 1 in word:
        # word = u*1*0^m -> u*0*1^m
        cut = len(word) - 1 - word[::-1].index(1)
        pred = word[:cut] + (0,) + (1,) * (len(word) - cut - 1)
    if 0 in word:
        # word = u*0*1^m -> u*1*0^m
        cut = len(word) - 1 - word[::-1].index(0)
        succ = word[:cut] + (1,) + (0,) * (len(word) - cut - 1)
    return NeighborPair(pred, succ)


def immediately_precedes(s, t):
    """The inductive relation s <_n t on words of equal length n."""
    s, t = tuple(s), tuple(t)
    if len(s) != len(t) or not s:
        return False
    head_s, last_s = s[:-1], s[-1]
    head_t, last_t = t[:-1], t[-1]
    if head_s == head_t:
        return last_s == 0 and last_t == 1
    return last_s == 1 and last_t == 0 and immediately_precedes(head_s, head_t)
