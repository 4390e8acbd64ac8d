"""Shared assertion helpers for the numeric tests."""

import mpmath as mp

TOL30 = mp.mpf("1e-30")
TOL28 = mp.mpf("1e-28")


def rel(a, b):
    """|a - b| scaled by max(1, |a|, |b|), matching the contract tolerances."""
    return abs(a - b) / max(mp.mpf(1), abs(a), abs(b))


def assert_rel(a, b, tol=TOL30):
    err = rel(a, b)
    assert err <= tol, f"relative error {mp.nstr(err, 6)}: {a} vs {b}"


def assert_squared(value, square, sign=1, tol=TOL30):
    """Assert a floating value matches sign * sqrt(square) of an exact rational."""
    with mp.workprec(mp.mp.prec):
        target = sign * mp.sqrt(mp.mpf(square.numerator) / square.denominator)
        assert_rel(value, target, tol)
