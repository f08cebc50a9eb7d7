"""Codes of continuous functions on [0, 1]

A code φ maps ternary words to naturals: 0 means "no information yet" and
n + 1 is an encoded rational interval that must hold f(x) for every x whose
spread path passes through the word.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

from conreal.arith import RatInterval, decode_interval, encode_interval, parse_rational, pow2
from conreal.config import CODE_DEPTH, CODE_KMAX, DEPTH_CAP, GLOBAL_CAP
from conreal.errors import CapExceeded, InvalidInput
from conreal.moduli import Domain, ModulusFamily, UniformModulus, fan_levels, monotonize, self_modulus
from conreal.reals import ShrinkingReal, regular_from_shrinking
from conreal.spread import node_interval, node_number, path_of_real, phi, rho
from conreal.streams import TERNARY, Stream, breve, format_word, parse_word, words

logger = logging.getLogger(__name__)


class Code:
    """A total map from ternary words to naturals."""

    def __init__(self, rule, name="code"):
        self.name = name
        self._phi = lru_cache(maxsize=None)(rule)

    def __call__(self, word):
        return self._phi(tuple(word))

    def interval(self, word):
        """The decoded interval at a word, or None where the code says nothing."""
        value = self(word)
        if value == 0:
            return None
        return decode_interval(value - 1)

    def __repr__(self):
        return f"Code({self.name})"


def encode_code_value(interval):
    return 1 + encode_interval(interval)


def identity_code():
    return Code(lambda s: encode_code_value(node_interval(s)), "identity")


def constant_code(q):
    point = encode_code_value(RatInterval.point(q))
    return Code(lambda s: point, f"const:{q}")


def affine_code(a, c):
    """x -> a·x + c, by interval arithmetic on I_s."""
    a, c = Fraction(a), Fraction(c)
    return Code(lambda s: encode_code_value(node_interval(s).scale(a).shift(c)), f"affine:{a}:{c}")


def slow_identity_code():
    """The identity, but a word of length n only reports I of its first ⌊log2 n⌋ digits.

    Still uniformly continuous, with h_k = 2^k everywhere: code_uc_witness
    fails on it only because 3^(2^k) nodes exceed the search caps.
    """

    def value(s):
        if not s:
            return 0
        return encode_code_value(node_interval(s[:len(s).bit_length() - 1]))

    return Code(value, "slow")


def table_code(table, name="table"):
    table = {tuple(word): value for word, value in table.items()}
    return Code(lambda s: table.get(s, 0), name)


def file_code(path):
    path = Path(path)
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except (OSError, UnicodeDecodeError) as e:
        raise InvalidInput(f"Cannot read code file {str(path)!r}: {e}")
    table = {}
    for number, line in enumerate(lines, 1):
        if not line.strip():
            continue
        parts = line.split()
        if len(parts) != 2 or not (parts[1].isascii() and parts[1].isdigit()):
            raise InvalidInput(f"{path}:{number}: expected 'word value', got {line!r}")
        table[parse_word(parts[0], TERNARY)] = int(parts[1])
    logger.debug("📂 loaded %d code entries from %s", len(table), path)
    return table_code(table, f"file:{path}")


def load_code(spec):
    """builtin:identity, builtin:const:p/q, builtin:affine:a/b:c/d, builtin:slow or file:PATH"""
    kind, _, rest = spec.partition(":")
    if kind == "file" and rest:
        return file_code(rest)
    if kind != "builtin":
        raise InvalidInput(f"Unknown code spec: {spec!r}")
    name, _, args = rest.partition(":")
    if name == "identity" and not args:
        return identity_code()
    if name == "slow" and not args:
        return slow_identity_code()
    if name == "const" and args:
        return constant_code(parse_rational(args))
    if name == "affine":
        slope, sep, offset = args.partition(":")
        if sep:
            return affine_code(parse_rational(slope), parse_rational(offset))
    raise InvalidInput(f"Unknown code spec: {spec!r}")


# Validation


@dataclass
class CodeReport:
    checked_depth: int
    violations: list = field(default_factory=list)
    progress: dict = field(default_factory=dict)

    @property
    def ok(self):
        return not self.violations

    def lines(self):
        yield f"depth {self.checked_depth}: {len(self.violations)} violations"
        for rule, witnesses in self.violations:
            yield f"{rule} " + " ".join(format_word(w) for w in witnesses)
        for k, status in sorted(self.progress.items()):
            yield f"k={k} {status}"


def code_validate(code, depth=None, kmax=None):
    depth = CODE_DEPTH if depth is None else depth
    kmax = CODE_KMAX if kmax is None else kmax
    report = CodeReport(depth)
    decoded = {}

    # C1
    for n in range(depth + 1):
        for word in words(TERNARY, n):
            if code(word) == 0:
                continue
            try:
                decoded[word] = code.interval(word)
            except InvalidInput:
                report.violations.append(("C1", (word,)))

    # C3
    for word, interval in decoded.items():
        if len(word) == depth:
            continue
        for digit in range(3):
            child = word + (digit,)
            if code(child) == 0:
                report.violations.append(("C3", (word, child)))
            elif child in decoded and not decoded[child].within(interval):
                report.violations.append(("C3", (word, child)))

    # C4, grouping words by level and node number
    groups = {}
    for word, interval in decoded.items():
        groups.setdefault((len(word), node_number(word)), {}).setdefault(interval, word)
    for (m, number), outputs in groups.items():
        for n in range(m, depth + 1):
            spread = 1 << (n - m)
            for other in range((number - 1) * spread - 1, (number + 1) * spread + 2):
                partner = groups.get((n, other))
                if partner is None or (n, other) < (m, number):
                    continue
                for interval, word in outputs.items():
                    for other_interval, other_word in partner.items():
                        if not interval.touches(other_interval):
                            report.violations.append(("C4", (word, other_word)))

    # C2 along every word of full length: the best precision reached on the way down
    best = {}
    for n in range(depth + 1):
        for word in words(TERNARY, n):
            own = decoded[word].length if word in decoded else None
            above = best[word[:-1]] if word else None
            reached = [v for v in (own, above) if v is not None]
            best[word] = min(reached) if reached else None
    leaves = [best[word] for word in words(TERNARY, depth)]
    worst = None if None in leaves else max(leaves)
    for k in range(kmax + 1):
        verified = worst is not None and worst <= pow2(k)
        report.progress[k] = "verified" if verified else "inconclusive"

    logger.debug("✅ validated %s to depth %d: %d violations", code, depth, len(report.violations))
    return report


# Evaluation


def code_locate(code, k, alpha, cap=None):
    """h_k(α): least n with φ(ᾱn) ≠ 0 and its interval no longer than 2^-k."""
    cap = GLOBAL_CAP if cap is None else cap
    bound = pow2(k)
    for n in range(cap):
        interval = code.interval(alpha.prefix(n))
        if interval is not None and interval.length <= bound:
            return n
    raise CapExceeded(f"{code.name}: no interval of length <= 2^-{k} along {alpha}", cap)


def code_eval_ternary(code, alpha, cap=None):
    return ShrinkingReal(
        Stream(lambda n: code.interval(alpha.prefix(code_locate(code, n, alpha, cap)))),
        lambda k: k,
    )


def code_eval(code, x, cap=None):
    return regular_from_shrinking(code_eval_ternary(code, path_of_real(x), cap))


def code_to_ternary_modulus(code, cap=None):
    """g_k(α) = h_k(ρ(α)) + 6"""
    return ModulusFamily(
        lambda k, alpha: code_locate(code, k, rho(alpha), cap) + 6,
        Domain.TERNARY,
        self_modulus=True,
        monotone=True,
    )


def _code_from_modulus(f, g, name):
    """The code reading f off a monotone self-modulus ternary modulus g."""

    def value(s):
        n = len(s)
        mid = breve(s, TERNARY)
        levels = g.levels(mid, n)
        usable = [k for k, needed in enumerate(levels) if needed <= n]
        if not usable:
            return 0
        level = usable[-1]
        centre = f(phi(breve(s[:levels[level]], TERNARY))).approx(level)
        return encode_code_value(RatInterval.around(centre, 7 * pow2(level)))

    return Code(value, name)


def modulated_fn_to_code(f):
    if f.modulus.domain is not Domain.TERNARY:
        raise InvalidInput("modulated_fn_to_code needs a ternary modulus")
    g = monotonize(self_modulus(f.modulus))
    return _code_from_modulus(f, g, "modulated")


def code_uc_witness(code, kmax=None, cap=None, budget=None):
    """ω(k) = least n such that every length-n word has a prefix with an interval <= 2^-k.

    The fan search expands every unbarred word, up to 3^ω(k) of them, so the
    default budget reaches ω(k) = 9. Codes from uc_fn_to_code need
    max(k + 4, ω(k + 4)) for an input modulus ω and exceed it sooner: with
    ω(k) = k + 1 they stop at k = 4 unless a larger budget is passed.
    """
    kmax = CODE_KMAX if kmax is None else kmax
    cap = DEPTH_CAP if cap is None else cap
    budget = GLOBAL_CAP if budget is None else budget

    def omega(k):
        bound = pow2(k)

        def precise(word):
            interval = code.interval(word)
            return interval is not None and interval.length <= bound

        return len(fan_levels(precise, TERNARY, cap, budget))

    modulus = UniformModulus(omega)
    modulus.table(kmax)
    return modulus


def uc_fn_to_code(f, omega):
    """The code of f built from a uniform modulus ω of f."""
    uniform = omega if isinstance(omega, UniformModulus) else UniformModulus(omega)
    g = ModulusFamily(
        lambda k, alpha: uniform(k),
        Domain.TERNARY,
        self_modulus=True,
        monotone=True,
        levels=lambda alpha, upto: uniform.table(upto),
    )
    return _code_from_modulus(f, g, "uniform")
