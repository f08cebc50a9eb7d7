"""Continuity moduli and the fan search"""
import logging
from dataclasses import dataclass, field
from enum import Enum

from conreal.arith import pow2
from conreal.config import DEPTH_CAP, GLOBAL_CAP
from conreal.errors import CapExceeded, InvalidInput
from conreal.reals import RegularReal, approx
from conreal.spread import path_of_real, phi
from conreal.streams import BINARY, TERNARY, DigitStream, Stream, format_word, hat, words

logger = logging.getLogger(__name__)


class Domain(Enum):
    BINARY = "binary"
    TERNARY = "ternary"
    INTENSIONAL = "intensional"

    @property
    def base(self):
        if self is Domain.BINARY:
            return BINARY
        if self is Domain.TERNARY:
            return TERNARY
        raise InvalidInput("The intensional domain has no alphabet")


class ModulusFamily:
    """g_k(point) for k >= 0, on binary or ternary streams or on raw regular sequences."""

    def __init__(self, rule, domain=Domain.TERNARY, self_modulus=False, monotone=False, levels=None):
        self._rule = rule
        self._levels = levels
        self.domain = domain
        self.self_modulus = self_modulus
        self.monotone = monotone

    def __call__(self, k, point):
        return self._rule(k, point)

    def levels(self, point, upto):
        """[g_0(point), ..., g_upto(point)]"""
        if self._levels is not None:
            return self._levels(point, upto)
        return [self._rule(k, point) for k in range(upto + 1)]

    def at(self, k, point):
        """g_k at a point given either as a stream or as a real."""
        if self.domain is Domain.INTENSIONAL and isinstance(point, DigitStream):
            point = phi(point)
        elif self.domain is Domain.TERNARY and isinstance(point, RegularReal):
            point = path_of_real(point)
        return self._rule(k, point)

    @classmethod
    def constant(cls, values, domain=Domain.TERNARY):
        """g_k ≡ values(k), the same at every point."""
        return cls(lambda k, point: values(k), domain, self_modulus=True)


@dataclass
class ModulatedRealFn:
    point_fn: object
    modulus: ModulusFamily

    def __call__(self, x):
        if isinstance(x, DigitStream):
            x = phi(x)
        return self.point_fn(x)


class UniformModulus:
    """ω(k), made nondecreasing by a running max."""

    def __init__(self, omega):
        self._omega = omega
        self.values = Stream(lambda k: max(omega(k), self.values[k - 1]) if k else omega(0))

    def __call__(self, k):
        return self.values[k]

    def table(self, kmax):
        return [self.values[k] for k in range(kmax + 1)]


def self_modulus(g, cap=None):
    """G_k(α) = least n with g_{k+1}(hat(ᾱn)) < n."""
    cap = GLOBAL_CAP if cap is None else cap
    base = g.domain.base

    def rule(k, alpha):
        for n in range(cap):
            if g(k + 1, hat(alpha.prefix(n), base)) < n:
                return n
        logger.debug("self-modulus search for k=%d exhausted %d", k, cap)
        raise CapExceeded(f"self-modulus at k={k}", cap)

    return ModulusFamily(rule, g.domain, self_modulus=True, monotone=False)


def monotonize(g):
    """G_k = max{g_i : i <= k}"""

    def levels(point, upto):
        running = []
        for value in g.levels(point, upto):
            running.append(max(value, running[-1]) if running else value)
        return running

    return ModulusFamily(
        lambda k, point: levels(point, k)[-1],
        g.domain,
        self_modulus=g.self_modulus,
        monotone=True,
        levels=levels,
    )


def least_uc_modulus(f, bound, base=BINARY):
    """Least n <= bound such that f(hat(a)) = f(hat(a*b)) for |a| = n, |a*b| = bound."""
    values = {}

    def value(word):
        if word not in values:
            values[word] = f(hat(word, base))
        return values[word]

    full = list(words(base, bound))
    for n in range(bound + 1):
        if all(value(word) == value(word[:n]) for word in full):
            return n
    return bound


def fan_levels(bar, base, cap, budget):
    """The unbarred words of each depth, breadth first, until none are left."""
    frontier = [] if bar(()) else [()]
    levels = []
    explored = 1
    while frontier:
        if len(levels) >= cap:
            raise CapExceeded(f"fan search: {format_word(frontier[0])} unbarred at depth {cap}", cap)
        levels.append(frontier)
        following = []
        for word in frontier:
            for digit in range(base):
                child = word + (digit,)
                explored += 1
                if explored > budget:
                    raise CapExceeded("fan search nodes", budget)
                if not bar(child):
                    following.append(child)
        logger.debug("🔄 fan depth %d: %d unbarred", len(levels), len(following))
        frontier = following
    return levels


def fan_uniform_depth(bar, alphabet=Domain.BINARY, cap=None, budget=None):
    """Least N with every length-N word barred on some prefix."""
    base = alphabet.base if isinstance(alphabet, Domain) else alphabet
    cap = DEPTH_CAP if cap is None else cap
    budget = GLOBAL_CAP if budget is None else budget
    return len(fan_levels(bar, base, cap, budget))


def _uniform_bound(level, base, cap, budget):
    """(N, max of level over hats of length-N words) for a self-modulus level.

    N is least_uc_modulus(level, D, base) for the depth D where the fan search
    bars every word; the walk below gets it from the unbarred nodes alone
    instead of evaluating all base^D words.
    """
    values = {}

    def value(word):
        if word not in values:
            values[word] = level(hat(word, base))
        return values[word]

    levels = fan_levels(lambda word: value(word) <= len(word), base, cap, budget)

    # (height, common value) per unbarred node, deepest first
    profile = {}
    for frontier in reversed(levels):
        for word in frontier:
            kids = [profile.pop(word + (d,), None) or (0, value(word + (d,))) for d in range(base)]
            common = {v for _, v in kids}
            if len(common) == 1 and None not in common and all(h == 0 for h, _ in kids):
                profile[word] = (0, common.pop())
            else:
                profile[word] = (1 + max(h for h, _ in kids), None)
    depth = profile[()][0] if levels else 0
    return depth, max(value(word) for word in words(base, depth))


def pointwise_to_uniform_modulus(g, cap=None, budget=None):
    """ω(k) = max{g_{k+1}(hat(s)) : |s| = N_k}, N_k the least uniform modulus of g_{k+1}."""
    if not g.self_modulus:
        raise InvalidInput("pointwise_to_uniform_modulus needs a self-modulus")
    cap = DEPTH_CAP if cap is None else cap
    budget = GLOBAL_CAP if budget is None else budget
    base = g.domain.base

    def omega(k):
        depth, bound = _uniform_bound(lambda alpha: g(k + 1, alpha), base, cap, budget)
        logger.debug("🔍 uniform modulus at k=%d: N=%d, ω=%d", k, depth, bound)
        return bound

    return UniformModulus(omega)


def uniform_modulus_from_ternary(g, cap=None, budget=None):
    """ω(k) = max{g_k(hat(s)) : s ∈ 3^{N_k}} for a uniformly continuous self-modulus g."""
    if not g.self_modulus:
        raise InvalidInput("uniform_modulus_from_ternary needs a self-modulus")
    cap = DEPTH_CAP if cap is None else cap
    budget = GLOBAL_CAP if budget is None else budget
    base = g.domain.base
    return UniformModulus(lambda k: _uniform_bound(lambda alpha: g(k, alpha), base, cap, budget)[1])


def transfer_uniform_modulus(omega):
    """A uniform modulus of f from one of f∘Φ: k -> ω(k) + 6."""
    return UniformModulus(lambda k: omega(k) + 6)


class Bridge(Enum):
    TERNARY_FROM_INTENSIONAL = "ternary_from_intensional"
    INTENSIONAL_FROM_TERNARY = "intensional_from_ternary"


def modulus_bridge(direction, g):
    direction = Bridge(direction)
    if direction is Bridge.TERNARY_FROM_INTENSIONAL:
        if g.domain is not Domain.INTENSIONAL:
            raise InvalidInput(f"Expected an intensional modulus, got {g.domain.value}")
        return ModulusFamily(lambda k, alpha: g(k, phi(alpha)), Domain.TERNARY, monotone=g.monotone)
    if g.domain is not Domain.TERNARY:
        raise InvalidInput(f"Expected a ternary modulus, got {g.domain.value}")
    return ModulusFamily(lambda k, x: g(k, path_of_real(x)), Domain.INTENSIONAL, monotone=g.monotone)


@dataclass(frozen=True)
class Violation:
    k: int
    pair: int
    distance: object
    gap: object


@dataclass
class ModulusReport:
    pairs: int = 0
    comparisons: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations


def check_modulus(f, pairs, kmax, prec):
    """Replay the modulus display on sample pairs at finite precision."""
    report = ModulusReport(pairs=len(pairs))
    tolerance_slack = pow2(prec - 1)
    for index, (x, y) in enumerate(pairs):
        x_real = phi(x) if isinstance(x, DigitStream) else x
        y_real = phi(y) if isinstance(y, DigitStream) else y
        distance = abs(approx(x_real, prec) - approx(y_real, prec))
        gap = None
        for k in range(kmax + 1):
            if distance > pow2(f.modulus.at(k, x)):
                continue
            if gap is None:
                gap = abs(approx(f(x_real), prec) - approx(f(y_real), prec))
            report.comparisons += 1
            if gap > pow2(k) + tolerance_slack:
                logger.debug("⚠️  modulus violated at k=%d on pair %d", k, index)
                report.violations.append(Violation(k, index, distance, gap))
    return report
