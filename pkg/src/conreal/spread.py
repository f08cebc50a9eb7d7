"""The ternary spread: node numbering, Φ, path extraction and the rewriter ρ

Every ternary word s labels a node with number N(s) and dyadic interval
I_s of length 2^-|s|. A stream α is read as the real Φ(α), the limit of the
node midpoints along it. path_of_real goes the other way but looks at the
raw terms of its input, so equal reals may get different paths.
"""
import logging
from fractions import Fraction

from conreal.arith import RatInterval, pow2
from conreal.config import LIFT_SLACK_BITS
from conreal.errors import NoCandidateChild, NoLiftFound
from conreal.reals import RegularReal, approx
from conreal.streams import Stream, TernaryStream, words

logger = logging.getLogger(__name__)

RHO_PATTERNS = {
    (1, 2, 2): (2, 0, 2),
    (1, 0, 0): (0, 2, 0),
    (0, 2, 2): (1, 0, 2),
    (2, 0, 0): (1, 2, 0),
}


def node_number(word):
    number = 1
    for digit in word:
        number = 2 * number + digit - 1
    return number


def numbered_interval(number, depth):
    """Interval of any node at the given depth carrying the given number."""
    scale = pow2(depth + 1)
    return RatInterval(scale * (number - 1), scale * (number + 1))


def node_interval(word):
    return numbered_interval(node_number(word), len(word))


def numbers_congruent(a, b, c, d):
    """N(a) = N(b) and N(c) + k = N(d) give N(a*c) + k = N(b*d)."""
    k = node_number(d) - node_number(c)
    return node_number(tuple(a) + tuple(c)) + k == node_number(tuple(b) + tuple(d))


def phi_term(alpha, n):
    return Fraction(alpha.numbers[n], 1 << (n + 1))


def phi(alpha):
    return RegularReal(lambda n: phi_term(alpha, n))


def path_of_real(x):
    """The path α_x: each digit is the least child whose interval holds I^x_n."""

    def digit(n):
        r = x[n + 3]
        radius = pow2(n + 3)
        lo, hi = max(r - radius, 0), min(r + radius, 1)
        if lo > hi:
            raise NoCandidateChild(f"term {n + 3} = {r} lies outside [0, 1]")
        target = RatInterval(lo, hi)
        parent = path.numbers[n]
        for i in range(3):
            if target.within(numbered_interval(2 * parent + i - 1, n + 1)):
                return i
        raise NoCandidateChild(f"no child of node {parent} at depth {n} contains {target}")

    path = TernaryStream(digit)
    return path


def rho_window(window):
    window = tuple(window)
    return RHO_PATTERNS.get(window, window)


class RhoStream(TernaryStream):
    """ρ(α), with the windows σ^n kept for inspection."""

    def __init__(self, source):
        self.source = source
        self.windows = Stream(self._window)
        super().__init__(lambda n: self.windows[n][0])

    def _window(self, n):
        source = self.source
        if n == 0:
            return rho_window((source[0], source[1], source[2]))
        carry = self.windows[n - 1][1]
        return rho_window((carry, source[n + 1], source[n + 2]))


def rho(alpha):
    return RhoStream(alpha)


def quotient_lift(alpha, n, x):
    """A stream extending ρ(α)↾n whose value is x, when x is 2^-(n+5)-close to Φ(ρ(α))."""
    rewritten = rho(alpha)
    precision = n + 5 + LIFT_SLACK_BITS
    gap = abs(approx(x, precision) - approx(phi(rewritten), precision))
    if gap >= pow2(n + 5) + pow2(precision - 1):
        raise NoLiftFound(f"target is {gap} away from the path at precision {precision}")

    target = path_of_real(x)
    head = rewritten.prefix(n)
    goal = target.numbers[n + 4]
    for bridge in words(3, 4):
        if node_number(head + bridge) == goal:
            lifted = head + bridge
            logger.debug("🔍 lift at n=%d bridges with %s", n, bridge)
            return TernaryStream(lambda i: lifted[i] if i < n + 4 else target[i])
    raise NoLiftFound(f"no bridge of length 4 reaches node {goal} from {head}")
