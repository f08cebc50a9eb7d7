"""Finite words and memoized infinite streams"""
import logging
import threading
from functools import cached_property
from itertools import product

from conreal.errors import InvalidInput

logger = logging.getLogger(__name__)

BINARY = 2
TERNARY = 3
EMPTY_WORD = "ε"


class Stream:
    """A total map n -> value, filled left to right and cached.

    The rule for index n may read indices below n of the same stream.
    Concurrent fills are idempotent: the rule is pure, so whichever thread
    appends first stores the value every other thread would have stored.
    """

    def __init__(self, rule):
        self._rule = rule
        self._cache = []
        self._lock = threading.Lock()

    def __getitem__(self, n):
        if n < 0:
            raise IndexError(f"Stream index must be non-negative, got {n}")
        cache = self._cache
        while len(cache) <= n:
            i = len(cache)
            value = self._rule(i)
            with self._lock:
                if len(cache) == i:
                    cache.append(value)
        return cache[n]

    def prefix(self, n):
        if n == 0:
            return ()
        self[n - 1]
        return tuple(self._cache[:n])

    def __iter__(self):
        n = 0
        while True:
            yield self[n]
            n += 1


class DigitStream(Stream):
    base = None

    def __init__(self, rule):
        base = self.base

        def checked(n):
            digit = rule(n)
            if not 0 <= digit < base:
                raise InvalidInput(f"Digit {digit!r} at index {n} is outside base {base}")
            return digit

        super().__init__(checked)

    @classmethod
    def from_word(cls, word, tail=0):
        word = tuple(word)
        return cls(lambda n: word[n] if n < len(word) else tail)

    @classmethod
    def constant(cls, digit):
        return cls(lambda n: digit)

    def __str__(self):
        return format_word(self.prefix(8)) + "..."


class BinaryStream(DigitStream):
    base = BINARY


class TernaryStream(DigitStream):
    base = TERNARY

    @cached_property
    def numbers(self):
        """Node numbers N of the prefixes: numbers[n] = N(prefix(n))."""
        return Stream(lambda n: 1 if n == 0 else 2 * self.numbers[n - 1] + self[n - 1] - 1)


STREAM_TYPES = {BINARY: BinaryStream, TERNARY: TernaryStream}


def stream_type(base):
    try:
        return STREAM_TYPES[base]
    except KeyError:
        raise InvalidInput(f"Unsupported alphabet size: {base!r}")


def hat(word, base=TERNARY):
    """The word extended by 0s."""
    return stream_type(base).from_word(word, 0)


def breve(word, base=TERNARY):
    """The word extended by 1s."""
    return stream_type(base).from_word(word, 1)


def words(base, n):
    """All words of length n in lexicographic order."""
    return product(range(base), repeat=n)


def is_prefix(s, t):
    return len(s) <= len(t) and tuple(t[:len(s)]) == tuple(s)


def parse_word(text, base=TERNARY):
    text = text.strip()
    if text in ("", EMPTY_WORD):
        return ()
    digits = []
    for char in text:
        if char not in "0123456789" or int(char) >= base:
            raise InvalidInput(f"Invalid digit {char!r} in word {text!r} (base {base})")
        digits.append(int(char))
    return tuple(digits)


def parse_path(text, base=TERNARY):
    """Parse "120~2": the word 120 followed by constant 2s. The tail defaults to 0."""
    head, sep, tail = text.strip().partition("~")
    word = parse_word(head, base)
    tail_digit = 0
    if sep:
        tail_word = parse_word(tail, base)
        if len(tail_word) != 1:
            raise InvalidInput(f"Tail must be a single digit: {text!r}")
        tail_digit = tail_word[0]
    return stream_type(base).from_word(word, tail_digit)


def format_word(word):
    return "".join(str(d) for d in word) if word else EMPTY_WORD
