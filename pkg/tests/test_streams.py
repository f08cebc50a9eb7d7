import threading

import pytest
from hypothesis import given

from conreal.errors import InvalidInput
from conreal.spread import node_number
from conreal.streams import (
    BINARY,
    TERNARY,
    BinaryStream,
    Stream,
    TernaryStream,
    breve,
    format_word,
    hat,
    is_prefix,
    parse_path,
    parse_word,
    stream_type,
    words,
)
from strategies import ternary_streams


def test_stream_is_memoized():
    calls = []

    def rule(n):
        calls.append(n)
        return n * n

    squares = Stream(rule)
    assert squares[4] == 16
    assert squares.prefix(3) == (0, 1, 4)
    assert calls == [0, 1, 2, 3, 4]


def test_stream_rule_reads_earlier_indices():
    fib = Stream(lambda n: n if n < 2 else fib[n - 1] + fib[n - 2])
    assert fib[200] == 280571172992510140037611932413038677189525


def test_stream_negative_index():
    with pytest.raises(IndexError):
        Stream(lambda n: n)[-1]


def test_concurrent_fill_agrees():
    naturals = Stream(lambda n: n)
    seen = []
    threads = [threading.Thread(target=lambda: seen.append(naturals.prefix(300))) for _ in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(prefix == tuple(range(300)) for prefix in seen)


def test_digit_range_checked():
    stream = TernaryStream(lambda n: 3)
    with pytest.raises(InvalidInput):
        stream[0]
    with pytest.raises(InvalidInput):
        BinaryStream.constant(2)[5]


def test_hat_and_breve():
    assert hat((2, 1)).prefix(5) == (2, 1, 0, 0, 0)
    assert breve((0,), BINARY).prefix(3) == (0, 1, 1)
    assert isinstance(hat(()), TernaryStream)
    assert isinstance(breve((), BINARY), BinaryStream)


def test_stream_type():
    assert stream_type(TERNARY) is TernaryStream
    with pytest.raises(InvalidInput):
        stream_type(4)


@given(ternary_streams)
def test_numbers_track_prefixes(alpha):
    assert [alpha.numbers[n] for n in range(10)] == [node_number(alpha.prefix(n)) for n in range(10)]


def test_words_are_lexicographic():
    assert list(words(BINARY, 2)) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert len(list(words(TERNARY, 4))) == 81
    assert list(words(TERNARY, 0)) == [()]


def test_is_prefix():
    assert is_prefix((), (1, 2))
    assert is_prefix((1,), (1, 2))
    assert not is_prefix((2,), (1, 2))
    assert not is_prefix((1, 2, 0), (1, 2))


def test_parse_word():
    assert parse_word("") == ()
    assert parse_word("ε") == ()
    assert parse_word("201") == (2, 0, 1)
    with pytest.raises(InvalidInput):
        parse_word("12", BINARY)
    with pytest.raises(InvalidInput):
        parse_word("1a")
    for text in ["1²", "٢"]:
        with pytest.raises(InvalidInput):
            parse_word(text)


def test_parse_path():
    assert parse_path("120~2").prefix(6) == (1, 2, 0, 2, 2, 2)
    assert parse_path("12").prefix(4) == (1, 2, 0, 0)
    assert parse_path("~1", BINARY).prefix(3) == (1, 1, 1)
    with pytest.raises(InvalidInput):
        parse_path("1~12")
    with pytest.raises(InvalidInput):
        parse_path("1~")


def test_format_word():
    assert format_word(()) == "ε"
    assert format_word((0, 2, 1)) == "021"
    assert str(hat((1,))) == "10000000..."
