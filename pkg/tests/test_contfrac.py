import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modsym.contfrac import (
    CFInput,
    OutOfDomain,
    SignedWord,
    encode_orbit,
    expand,
    gauss_step,
    periodic_point_quadratic,
    twisted_gauss,
)
from modsym.cosets import CosetTable
from modsym.shiftspace import is_admissible

rationals = st.tuples(
    st.integers(min_value=1, max_value=400), st.integers(min_value=2, max_value=401)
).filter(lambda pq: pq[0] < pq[1] and math.gcd(*pq) == 1)


def euclid_cf_digits(p: int, q: int) -> list[int]:
    """Independent oracle: CF digits of p/q in (0,1) via the Euclidean algorithm."""
    digits = []
    # 1/(p/q) = q/p; digit = floor(q/p), remainder (q mod p)/p
    while p != 0:
        digits.append(q // p)
        q, p = p, q % p
    return digits


def test_gauss_step_basic():
    d, r = gauss_step(Fraction(2, 7))
    assert d == 3 and r == Fraction(1, 2)
    with pytest.raises(OutOfDomain):
        gauss_step(Fraction(3, 2))
    with pytest.raises(OutOfDomain):
        gauss_step(Fraction(0))


def test_twisted_gauss_flips_sign():
    x = Fraction(2, 7)
    assert twisted_gauss(x) == -Fraction(1, 2)
    assert twisted_gauss(-x) == Fraction(1, 2)
    with pytest.raises(OutOfDomain):
        twisted_gauss(Fraction(0))


@given(rationals)
@settings(max_examples=80)
def test_expand_matches_euclid_oracle(pq):
    p, q = pq
    x = CFInput(rational=Fraction(p, q))
    word = expand(x, 50)
    oracle = euclid_cf_digits(p, q)
    assert list(word.magnitudes()) == oracle
    # sign rule: first digit has sign -sign(x), then alternates
    assert word.digits[0] < 0
    assert word.is_alternating
    # negated input flips every sign
    neg = expand(CFInput(rational=Fraction(-p, q)), 50)
    assert neg.digits == tuple(-d for d in word.digits)


@given(rationals)
@settings(max_examples=40)
def test_expand_tracks_twisted_orbit(pq):
    """Digit k at step j equals the twisted-Gauss digit of the orbit point."""
    p, q = pq
    x = Fraction(p, q)
    word = expand(CFInput(rational=x), 50)
    cur = x
    for d in word.digits:
        digit, _ = gauss_step(abs(cur))
        sign = -1 if cur > 0 else 1
        assert d == sign * digit
        cur = twisted_gauss(cur)
    assert cur == 0


def test_periodic_input_stream():
    x = CFInput(sign=1, preperiod=(2,), period=(1, 3))
    word = expand(x, 6)
    assert list(word.magnitudes()) == [2, 1, 3, 1, 3, 1]
    assert word.digits[0] == -2


def test_cfinput_validation():
    with pytest.raises(OutOfDomain):
        CFInput(rational=Fraction(3, 2))
    with pytest.raises(ValueError):
        CFInput(sign=1, period=())
    with pytest.raises(ValueError):
        CFInput(sign=2, period=(1,))
    with pytest.raises(ValueError):
        CFInput(sign=1, period=(0, 1))


def test_cfinput_json_roundtrip():
    for x in (
        CFInput(rational=Fraction(-3, 7)),
        CFInput(sign=-1, preperiod=(2, 5), period=(1, 3)),
    ):
        assert CFInput.from_json_dict(x.to_json_dict()) == x


def test_signed_word_guards():
    with pytest.raises(ValueError):
        SignedWord((1, 0))
    w = SignedWord((-2, 3, -1))
    assert w.is_alternating and len(w) == 3
    assert not SignedWord((1, 2)).is_alternating


def test_encode_orbit_decoration(level11):
    table = level11.table
    x = CFInput(sign=1, period=(1,))
    seq = encode_orbit(table, x, table.identity_label(), 12)
    assert len(seq) == 12 and not seq.terminated
    assert is_admissible(seq, table)
    assert seq.entries[0][1] == table.identity_label()


def test_encode_orbit_rational_terminates(level11):
    table = level11.table
    seq = encode_orbit(table, CFInput(rational=Fraction(3, 7)), 0, 10)
    assert seq.terminated and len(seq) == 2
    assert seq.digits() == (-2, 3)


def test_encode_orbit_bad_start(level11):
    with pytest.raises(ValueError):
        encode_orbit(level11.table, CFInput(rational=Fraction(1, 2)), 99, 5)


@given(st.lists(st.integers(min_value=1, max_value=9), min_size=1, max_size=6))
@settings(max_examples=60)
def test_periodic_point_quadratic_fixed_point(period):
    """The quadratic's positive root reproduces the periodic CF value."""
    a, b, c = periodic_point_quadratic(tuple(period))
    disc = b * b - 4 * a * c
    assert disc > 0
    y = (-b + math.sqrt(disc)) / (2 * a) if a else -c / b
    assert 0 < y < 1
    # replay: one full period of Gauss steps returns to y.  Float replay is
    # ill-conditioned (error grows like the square of the denominators), so
    # run it at 50 digits.
    with mpmath.workdps(50):
        y_mp = (-b + mpmath.sqrt(disc)) / (2 * a) if a else mpmath.mpf(-c) / b
        cur = y_mp
        for d in period:
            assert mpmath.floor(1 / cur) == d
            cur = 1 / cur - d
        assert abs(cur - y_mp) < mpmath.mpf("1e-30")
