"""Decidable bars and the real functions whose values are their hitting times

For a bar B of the binary fan, each ternary path α gets a piecewise linear
map F_α that sits at height N_α (the hitting time of γ_α) over the Cantor
interval of γ_α's barred prefix and ramps to the hitting times of the
neighbouring words. Reading F_α along Φ(α) gives a function on [0, 1] that
equals the hitting time on the Cantor discontinuum.
"""
import bisect
import logging
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from conreal.arith import RatInterval, ceil_log2, pow2
from conreal.cantor import cantor_interval, gamma, immediate_neighbors, kappa, ternary_scale
from conreal.config import DEPTH_CAP, GLOBAL_CAP
from conreal.errors import CapExceeded, InvalidInput
from conreal.moduli import Domain, ModulusFamily, fan_uniform_depth
from conreal.reals import FundamentalReal, RegularReal, eq_at, regular_from_fundamental
from conreal.spread import node_interval, path_of_real, phi_term
from conreal.streams import BINARY, EMPTY_WORD, Stream, breve, hat, is_prefix, parse_word

logger = logging.getLogger(__name__)


class DecidableBar:
    """A decidable set of binary words, optionally generated by listed prefixes."""

    def __init__(self, member, source=None):
        self._member = member
        self.source = source

    @classmethod
    def from_words(cls, generators):
        generators = tuple(tuple(word) for word in generators)
        return cls(lambda word: any(is_prefix(g, word) for g in generators), generators)

    @classmethod
    def from_file(cls, path):
        path = Path(path)
        try:
            text = path.read_text(encoding="utf-8")
        except (OSError, UnicodeDecodeError) as e:
            raise InvalidInput(f"Cannot read bar file {str(path)!r}: {e}")
        generators = [parse_word(line, BINARY) for line in text.splitlines() if line.strip()]
        logger.debug("📂 loaded %d bar words from %s", len(generators), path)
        return cls.from_words(generators)

    @classmethod
    def min_length(cls, depth):
        """{s : |s| >= depth}"""
        return cls(lambda word: len(word) >= depth)

    @classmethod
    def empty(cls):
        return cls.from_words(())

    def __call__(self, word):
        return self._member(tuple(word))

    __contains__ = __call__

    def describe(self):
        if self.source is None:
            return "<predicate>"
        return " ".join("".join(map(str, w)) or EMPTY_WORD for w in self.source)


class PiecewiseLinearMap:
    """Linear interpolation between breakpoints; constant past either end."""

    def __init__(self, *points):
        points = [(Fraction(x), Fraction(y)) for x, y in points]
        if not points:
            raise InvalidInput("A piecewise linear map needs at least one breakpoint")
        for (x0, _), (x1, _) in zip(points, points[1:]):
            if x1 <= x0:
                raise InvalidInput(f"Breakpoints must increase strictly: {x0} then {x1}")
        self.points = points
        self._xs = [x for x, _ in points]

    @property
    def domain(self):
        return RatInterval(self.points[0][0], self.points[-1][0])

    def __call__(self, r):
        r = Fraction(r)
        xs, points = self._xs, self.points
        if r <= xs[0]:
            return points[0][1]
        if r >= xs[-1]:
            return points[-1][1]
        ind = bisect.bisect_right(xs, r)
        (x_init, y_init), (x_final, y_final) = points[ind - 1], points[ind]
        t = (r - x_init) / (x_final - x_init)
        return y_init + t * (y_final - y_init)

    def max_slope(self):
        return max(
            (abs((y1 - y0) / (x1 - x0)) for (x0, y0), (x1, y1) in zip(self.points, self.points[1:])),
            default=Fraction(0),
        )


class PlateauMap(PiecewiseLinearMap):
    """F_α, carrying the hitting time and the barred prefix of γ_α."""

    def __init__(self, points, level, word, neighbors):
        super().__init__(*points)
        self.level = level
        self.word = word
        self.neighbors = neighbors


def hitting_time(bar, stream, cap=None):
    """Least n < cap with the length-n prefix of the stream in the bar."""
    cap = DEPTH_CAP if cap is None else cap
    for n in range(cap):
        if stream.prefix(n) in bar:
            return n
    raise CapExceeded(f"hitting time: stream {stream} unbarred below depth {cap}", cap)


def build_plateau_map(bar, alpha, cap=None):
    path = gamma(alpha)
    level = hitting_time(bar, path, cap)
    word = path.prefix(level)
    plateau = cantor_interval(word)
    neighbors = immediate_neighbors(word)

    if level == 0:
        points = [(0, 0), (1, 0)]
    else:
        points = []
        if neighbors.pred is not None:
            left = cantor_interval(neighbors.pred).hi
            points.append((left, hitting_time(bar, breve(neighbors.pred, BINARY), cap)))
        points += [(plateau.lo, level), (plateau.hi, level)]
        if neighbors.succ is not None:
            right = cantor_interval(neighbors.succ).lo
            points.append((right, hitting_time(bar, hat(neighbors.succ, BINARY), cap)))
    return PlateauMap(points, level, word, neighbors)


def _slope_bits(plateau):
    return ceil_log2(max(plateau.max_slope(), 1))


def bar_fn_eval_ternary(bar, alpha, cap=None):
    plateau = build_plateau_map(bar, alpha, cap)
    start = ternary_scale(plateau.level)
    bits = _slope_bits(plateau)
    terms = Stream(lambda n: plateau(phi_term(alpha, max(n, start))))
    return regular_from_fundamental(FundamentalReal(terms, lambda k: max(start, k + 1 + bits)))


def bar_fn_eval(bar, x, cap=None):
    return bar_fn_eval_ternary(bar, path_of_real(x), cap)


def bar_fn_modulus(bar, cap=None):
    """A continuous ternary modulus of the bar function."""

    def rule(k, alpha):
        plateau = build_plateau_map(bar, alpha, cap)
        if plateau.level == 0:
            return 0
        inner = node_interval(alpha.prefix(ternary_scale(plateau.level)))
        pred, succ = plateau.neighbors.pred, plateau.neighbors.succ
        left = cantor_interval(pred).hi if pred is not None else None
        right = cantor_interval(succ).lo if succ is not None else None
        for n in range(GLOBAL_CAP):
            if (left is None or left < inner.lo - pow2(n)) and (right is None or inner.hi + pow2(n) < right):
                break
        else:
            raise CapExceeded(f"bar modulus: gap around {inner} at k={k}", GLOBAL_CAP)
        omega = 0 if plateau.max_slope() == 0 else k + _slope_bits(plateau)
        return max(n, omega + 1)

    return ModulusFamily(rule, Domain.TERNARY, monotone=True)


def verify_hitting(bar, beta, prec, cap=None):
    """f(κ(β)) is the hitting time of β, checked at the given depth."""
    expected = hitting_time(bar, beta, cap)
    value = bar_fn_eval(bar, kappa(beta), cap)
    return eq_at(value, RegularReal.constant(expected), prec)


def bar_uniform_bound(bar, cap=None):
    return fan_uniform_depth(bar, Domain.BINARY, cap)
