from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conreal.arith import RatInterval, pow2
from conreal.bars import (
    DecidableBar,
    PiecewiseLinearMap,
    bar_fn_eval,
    bar_fn_eval_ternary,
    bar_fn_modulus,
    bar_uniform_bound,
    build_plateau_map,
    hitting_time,
    verify_hitting,
)
from conreal.cantor import kappa
from conreal.errors import CapExceeded, InvalidInput
from conreal.moduli import ModulatedRealFn, check_modulus
from conreal.reals import RegularReal, approx, eq_at
from conreal.spread import path_of_real
from conreal.streams import BinaryStream, TernaryStream
from strategies import antichain_bars, binary_streams, spliced_pairs, ternary_streams, unit_walks

HALF = RegularReal.constant(Fraction(1, 2))


def test_bar_from_file(two_level_bar):
    assert two_level_bar.source == ((0,), (1, 0), (1, 1))
    assert (0, 1, 1) in two_level_bar
    assert not two_level_bar((1,))
    assert not two_level_bar(())
    assert two_level_bar.describe() == "0 10 11"


def test_bar_file_errors(tmp_path):
    with pytest.raises(InvalidInput):
        DecidableBar.from_file(tmp_path / "missing.txt")
    bad = tmp_path / "bad.txt"
    bad.write_text("01\n2\n", encoding="utf-8")
    with pytest.raises(InvalidInput):
        DecidableBar.from_file(bad)


def test_bar_file_skips_blank_lines(tmp_path):
    path = tmp_path / "bar.txt"
    path.write_text("\n1\n\n  \n00\n", encoding="utf-8")
    assert DecidableBar.from_file(path).source == ((1,), (0, 0))


def test_empty_bar_file(fixtures_path):
    bar = DecidableBar.from_file(fixtures_path / "bars" / "empty.txt")
    assert bar.source == ()
    assert not bar((0, 1, 0, 1))


def test_bar_constructors():
    assert DecidableBar.min_length(2)((0, 1))
    assert not DecidableBar.min_length(2)((0,))
    assert DecidableBar.min_length(2).describe() == "<predicate>"
    assert not DecidableBar.empty()((1, 1, 1))
    assert DecidableBar.from_words([()]).describe() == "ε"


def test_piecewise_linear_map():
    f = PiecewiseLinearMap((0, 1), (Fraction(1, 3), 1), (Fraction(2, 3), 2))
    assert f(Fraction(1, 2)) == Fraction(3, 2)
    assert f(Fraction(1, 6)) == 1
    assert f(-5) == 1
    assert f(1) == 2
    assert f(Fraction(2, 3)) == 2
    assert f.domain == RatInterval(0, Fraction(2, 3))
    assert f.max_slope() == 3
    assert PiecewiseLinearMap((0, 7)).max_slope() == 0
    assert PiecewiseLinearMap((0, 7))(3) == 7


def test_piecewise_linear_map_rejects_bad_breakpoints():
    with pytest.raises(InvalidInput):
        PiecewiseLinearMap()
    with pytest.raises(InvalidInput):
        PiecewiseLinearMap((0, 0), (0, 1))
    with pytest.raises(InvalidInput):
        PiecewiseLinearMap((1, 0), (0, 1))


@given(st.lists(st.fractions(min_value=-10, max_value=10), min_size=2, max_size=6, unique=True),
       st.fractions(min_value=-20, max_value=20))
def test_piecewise_linear_map_stays_between_neighbours(xs, r):
    xs = sorted(xs)
    f = PiecewiseLinearMap(*[(x, x * x) for x in xs])
    value = f(r)
    assert min(x * x for x in xs) <= value <= max(x * x for x in xs)
    if r in xs:
        assert value == r * r


def test_hitting_time(two_level_bar):
    assert hitting_time(two_level_bar, BinaryStream.constant(1), 20) == 2
    assert hitting_time(two_level_bar, BinaryStream.constant(0)) == 1
    with pytest.raises(CapExceeded):
        hitting_time(DecidableBar.empty(), BinaryStream.constant(0), 10)


def test_plateau_map_at_half(two_level_bar):
    plateau = build_plateau_map(two_level_bar, TernaryStream.constant(1))
    assert plateau.level == 1
    assert plateau.word == (0,)
    assert plateau.neighbors.pred is None
    assert plateau.points == [(0, 1), (Fraction(1, 3), 1), (Fraction(2, 3), 2)]


def test_plateau_map_with_both_neighbours(two_level_bar):
    alpha = path_of_real(kappa(BinaryStream.from_word((1,), 0)))
    plateau = build_plateau_map(two_level_bar, alpha)
    assert plateau.level == 2
    assert plateau.word == (1, 0)
    assert plateau.neighbors.pred == (0, 1)
    assert plateau.neighbors.succ == (1, 1)
    assert plateau.points == [
        (Fraction(1, 3), 1), (Fraction(2, 3), 2), (Fraction(7, 9), 2), (Fraction(8, 9), 2),
    ]


def test_bar_function_at_half(two_level_bar):
    assert approx(bar_fn_eval(two_level_bar, HALF), 10) == Fraction(3, 2)


def test_bar_function_shape(two_level_bar):
    for value, expected in [(0, 1), (Fraction(1, 4), 1), (Fraction(5, 6), 2), (1, 2)]:
        result = bar_fn_eval(two_level_bar, RegularReal.constant(value))
        assert eq_at(result, RegularReal.constant(expected), 20)


def test_trivial_bar_gives_zero():
    bar = DecidableBar.from_words([()])
    assert approx(bar_fn_eval(bar, HALF), 10) == 0
    assert bar_fn_modulus(bar)(3, TernaryStream.constant(1)) == 0


def test_bar_function_modulus_at_half(two_level_bar):
    g = bar_fn_modulus(two_level_bar)
    assert [g(k, TernaryStream.constant(1)) for k in range(5)] == [5, 5, 5, 6, 7]
    assert g.monotone


@settings(deadline=None)
@given(ternary_streams, ternary_streams, st.integers(0, 4))
def test_bar_function_modulus_holds(alpha, other, k):
    bar = DecidableBar.from_words([(0,), (1, 0), (1, 1, 0), (1, 1, 1)])
    n = bar_fn_modulus(bar)(k, alpha)
    head = alpha.prefix(n)
    beta = TernaryStream(lambda i: head[i] if i < n else other[i])
    gap = approx(bar_fn_eval_ternary(bar, alpha), k + 4) - approx(bar_fn_eval_ternary(bar, beta), k + 4)
    assert abs(gap) <= pow2(k) + pow2(k + 3)


@settings(deadline=None)
@given(unit_walks)
def test_bar_function_ignores_representation(x):
    # same real, read one term later: path_of_real may pick another path
    shifted = RegularReal(lambda n: x[n + 1])
    bar = DecidableBar.from_words([(0, 0), (0, 1), (1,)])
    assert eq_at(bar_fn_eval(bar, x), bar_fn_eval(bar, shifted), 20)


@settings(deadline=None)
@given(antichain_bars(max_depth=6), binary_streams)
def test_bar_function_equals_hitting_time(leaves, beta):
    assert verify_hitting(DecidableBar.from_words(leaves), beta, 25)


@settings(deadline=None)
@given(st.integers(0, 4), binary_streams)
def test_min_length_bar_function_equals_hitting_time(depth, beta):
    assert verify_hitting(DecidableBar.min_length(depth), beta, 25)


def test_bar_function_on_cantor_points(two_level_bar):
    assert verify_hitting(two_level_bar, BinaryStream.constant(1), 30)
    assert verify_hitting(two_level_bar, BinaryStream.constant(0), 30)
    assert verify_hitting(DecidableBar.from_words([(0,), (1,)]), BinaryStream.constant(1), 30)


def test_uniform_bound(two_level_bar):
    assert bar_uniform_bound(two_level_bar) == 2
    with pytest.raises(CapExceeded):
        bar_uniform_bound(DecidableBar.empty(), 100)


def test_undecodable_bar_file(tmp_path):
    path = tmp_path / "bar.txt"
    path.write_bytes(b"0\n\xff1\n")
    with pytest.raises(InvalidInput):
        DecidableBar.from_file(path)


def test_bar_modulus_search_is_capped(two_level_bar, monkeypatch):
    monkeypatch.setattr("conreal.bars.GLOBAL_CAP", 3)
    with pytest.raises(CapExceeded):
        bar_fn_modulus(two_level_bar)(0, TernaryStream.constant(1))


def bar_function(bar):
    return ModulatedRealFn(lambda x: bar_fn_eval(bar, x), bar_fn_modulus(bar))


@settings(deadline=None, max_examples=25)
@given(st.lists(spliced_pairs, min_size=1, max_size=3))
def test_bar_modulus_holds_on_sampled_pairs(pairs):
    for bar in (DecidableBar.from_words([(0,), (1, 0), (1, 1)]), DecidableBar.min_length(2)):
        report = check_modulus(bar_function(bar), pairs, kmax=8, prec=16)
        assert report.ok, report.violations


@settings(deadline=None, max_examples=20)
@given(antichain_bars(max_depth=6), st.lists(spliced_pairs, min_size=1, max_size=3))
def test_random_bar_modulus_holds(leaves, pairs):
    report = check_modulus(bar_function(DecidableBar.from_words(leaves)), pairs, kmax=8, prec=24)
    assert report.ok, report.violations
