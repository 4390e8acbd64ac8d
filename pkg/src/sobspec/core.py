"""Measures and the standard orthonormal polynomial system.

Monic families are generated from their three-term recurrence
``x P_n = P_{n+1} + beta_n P_n + gamma_n P_{n-1}``; squared norms follow from
``||P_{n+1}||^2 = gamma_{n+1} ||P_n||^2`` and orthonormal values from the
positive leading coefficients ``r_n = 1/||P_n||``.

All real computation uses mpmath binary floats at a configurable precision
(default 256 bits); every public entry point runs under the table's working
precision.  Tables are immutable after construction and safe to share across
threads; evaluations are pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp

from .errors import InvalidParameterError

DEFAULT_PRECISION = 256

NEG_INF = float("-inf")
POS_INF = float("inf")


def to_mpf(x):
    """Convert ints, floats, Fractions, decimal strings or mpf to mpf.

    Runs under the caller's active mpmath precision.
    """
    if isinstance(x, mp.mpf):
        return x
    if isinstance(x, Fraction):
        return mp.mpf(x.numerator) / x.denominator
    return mp.mpf(x)


@dataclass(frozen=True)
class MeasureSpec:
    """A base measure: a classical family or caller-supplied recurrence data.

    ``support`` is the (lo, hi) interval carrying the measure, endpoints
    possibly infinite.  Custom measures must supply the monic recurrence
    coefficients directly; moment-based recovery lives only in the oracle.
    ``moments`` is an optional exact rational moment sequence for oracle use
    (closed-form factorial moments cover integer-alpha Laguerre without it).
    """

    family: str
    alpha: float | None = None
    beta: tuple | None = None
    gamma: tuple | None = None
    norm0_sq: object = 1
    support: tuple = (NEG_INF, POS_INF)
    moments: tuple | None = None

    @classmethod
    def laguerre(cls, alpha):
        if not alpha > -1:
            raise InvalidParameterError(f"Laguerre needs alpha > -1, got {alpha}")
        return cls(family="laguerre", alpha=alpha, support=(0.0, POS_INF))

    @classmethod
    def custom(cls, beta, gamma, support, norm0_sq=1, moments=None):
        beta, gamma = tuple(beta), tuple(gamma)
        if len(beta) != len(gamma):
            raise InvalidParameterError("beta and gamma must have equal length")
        if len(beta) < 1:
            raise InvalidParameterError("need at least one recurrence coefficient")
        for n in range(1, len(gamma)):
            if not gamma[n] > 0:
                raise InvalidParameterError(f"gamma[{n}] = {gamma[n]} must be positive")
        return cls(
            family="custom",
            beta=beta,
            gamma=gamma,
            norm0_sq=norm0_sq,
            support=tuple(support),
            moments=None if moments is None else tuple(moments),
        )

    def recurrence(self, size, precision=DEFAULT_PRECISION):
        return RecurrenceTable.from_measure(self, size, precision)


@dataclass(frozen=True)
class SobolevSpec:
    """Mass-point data (c, M, N) attached to a base measure.

    Defines the inner product  <f, g> = int f g dmu + M f(c) g(c) + N f'(c) g'(c)
    with M, N >= 0 and c strictly outside the support of the base measure.
    """

    measure: MeasureSpec
    c: object
    M: object
    N: object

    def __post_init__(self):
        if not self.M >= 0 or not self.N >= 0:
            raise InvalidParameterError("M and N must be nonnegative")
        lo, hi = self.measure.support
        if not (self.c < lo or self.c > hi):
            raise InvalidParameterError(
                f"mass point c = {self.c} must lie outside the support {self.measure.support}"
            )

    @property
    def side(self):
        """'left' if c lies below the support, 'right' if above."""
        lo, _ = self.measure.support
        return "left" if self.c < lo else "right"


@dataclass(frozen=True)
class RecurrenceTable:
    """Monic three-term recurrence data with norms and leading coefficients.

    ``beta[n]``, ``gamma[n]`` (gamma[0] = 0 by convention), ``norm_sq[n]`` the
    squared monic norms, ``leading[n] = 1/||P_n||`` the positive orthonormal
    leading coefficients.  Valid indices are 0..size-1.
    """

    beta: tuple
    gamma: tuple
    norm_sq: tuple
    leading: tuple
    precision: int
    support: tuple
    measure: MeasureSpec | None = None

    @property
    def size(self):
        return len(self.beta)

    @classmethod
    def from_measure(cls, measure, size, precision=DEFAULT_PRECISION):
        if size < 1:
            raise InvalidParameterError("size must be >= 1")
        if measure.family == "laguerre":
            return laguerre_recurrence(measure.alpha, size, precision)
        if measure.family == "custom":
            if size > len(measure.beta):
                raise InvalidParameterError(
                    f"custom measure supplies {len(measure.beta)} coefficients, need {size}"
                )
            with mp.workprec(precision):
                beta = tuple(to_mpf(b) for b in measure.beta[:size])
                gamma = (mp.mpf(0),) + tuple(to_mpf(g) for g in measure.gamma[1:size])
                return cls._finish(beta, gamma, to_mpf(measure.norm0_sq),
                                   precision, measure.support, measure)
        raise InvalidParameterError(f"unknown measure family {measure.family!r}")

    @classmethod
    def _finish(cls, beta, gamma, norm0_sq, precision, support, measure):
        norm_sq = [norm0_sq]
        for n in range(1, len(beta)):
            norm_sq.append(gamma[n] * norm_sq[-1])
        leading = tuple(1 / mp.sqrt(s) for s in norm_sq)
        return cls(
            beta=beta,
            gamma=tuple(gamma),
            norm_sq=tuple(norm_sq),
            leading=leading,
            precision=precision,
            support=tuple(support),
            measure=measure,
        )


def laguerre_recurrence(alpha, size, precision=DEFAULT_PRECISION):
    """Recurrence table of the monic Laguerre family x^alpha e^(-x) on (0, inf).

    beta_n = 2n + 1 + alpha, gamma_n = n (n + alpha), ||P_0||^2 = Gamma(alpha+1).
    """
    if not alpha > -1:
        raise InvalidParameterError(f"Laguerre needs alpha > -1, got {alpha}")
    if size < 1:
        raise InvalidParameterError("size must be >= 1")
    with mp.workprec(precision):
        a = to_mpf(alpha)
        beta = tuple(2 * n + 1 + a for n in range(size))
        gamma = (mp.mpf(0),) + tuple(n * (n + a) for n in range(1, size))
        measure = MeasureSpec.laguerre(alpha)
        return RecurrenceTable._finish(
            beta, gamma, mp.gamma(a + 1), precision, (0.0, POS_INF), measure
        )


@dataclass(frozen=True)
class PolyJet:
    """Values and derivatives of the monic family P_0..P_n at one point.

    ``jet(k, j)`` is the j-th derivative of P_k at x; zero for j > k.
    """

    x: object
    order: int
    values: tuple

    @property
    def size(self):
        return len(self.values)

    def jet(self, k, j=0):
        if j > self.order:
            raise InvalidParameterError(f"jet built to order {self.order}, asked {j}")
        return self.values[k][j]


def eval_jet(rec, n, x, order=3):
    """Jets of P_0..P_n at x, derivatives up to ``order`` (at most 3).

    Forward recurrence; the j-th derivative satisfies
    P^(j)_{k+1} = (x - beta_k) P^(j)_k + j P^(j-1)_k - gamma_k P^(j)_{k-1}.
    """
    if not 0 <= n < rec.size:
        raise IndexError(f"n = {n} outside table of size {rec.size}")
    if not 0 <= order <= 3:
        raise InvalidParameterError("derivative order capped at 3")
    with mp.workprec(rec.precision):
        x = to_mpf(x)
        zero = mp.mpf(0)
        rows = [[mp.mpf(1)] + [zero] * order]
        if n >= 1:
            prev = rows[0]
            first = [x - rec.beta[0]] + [zero] * order
            if order >= 1:
                first[1] = mp.mpf(1)
            rows.append(first)
            for k in range(1, n):
                cur = rows[k]
                nxt = []
                for j in range(order + 1):
                    t = (x - rec.beta[k]) * cur[j] - rec.gamma[k] * prev[j]
                    if j >= 1:
                        t += j * cur[j - 1]
                    nxt.append(t)
                prev = cur
                rows.append(nxt)
        return PolyJet(x=x, order=order, values=tuple(tuple(r) for r in rows))


def relative_difference(a, b):
    """|a - b| scaled by max(1, |a|, |b|)."""
    return abs(a - b) / max(mp.mpf(1), abs(a), abs(b))


def monic_value(rec, n, x):
    """P_n(x) by forward recurrence."""
    return eval_jet(rec, n, x, order=0).jet(n)


def orthonormal_value(rec, n, x):
    """p_n(x) = P_n(x) / ||P_n||, positive leading coefficient."""
    with mp.workprec(rec.precision):
        return monic_value(rec, n, x) * rec.leading[n]
