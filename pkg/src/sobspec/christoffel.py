"""Iterated Christoffel transforms of the base measure (k = 1 and k = 2).

The once-transformed measure (x-c) dmu has the monic kernel polynomials as
its orthogonal family; the twice-transformed measure (x-c)^2 dmu carries the
family P^[2]_n with the connection

    (x-c)^2 P^[2]_n(x) = P_{n+2}(x) - d_n P_{n+1}(x) + e_n P_n(x).

This module builds the scalar ledger (d_n, e_n, the leading coefficients
r^[2]_n, the recurrence pair kappa_n/tau_n, squared norms) and evaluates both
transformed families.  Every quantity with two published formulas is computed
both ways and required to agree within a precision-scaled guard; the pinned
1e-30 tolerances live in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath as mp

from .core import eval_jet, relative_difference, to_mpf
from .errors import DegeneratePointError, NumericalFailureError
from .kernels import CD_SWITCH, kernel_at


def _guard_tol(precision):
    return mp.mpf(2) ** (-(precision // 2))


def _enforce(a, b, what, precision):
    if relative_difference(a, b) > _guard_tol(precision):
        raise NumericalFailureError(
            f"dual formulas for {what} disagree beyond the precision guard: {a} vs {b}"
        )


def _wronskian_den(kt, n):
    """P_{n+1}(c) P'_n(c) - P'_{n+1}(c) P_n(c); nonzero for c outside the support."""
    j = kt.cjets
    den = j.jet(n + 1) * j.jet(n, 1) - j.jet(n + 1, 1) * j.jet(n)
    if den == 0:
        raise DegeneratePointError(f"degenerate mass point: Wronskian at n = {n} vanishes")
    return den


def christoffel_coeffs(rec, kt, n):
    """(d_n, e_n) of the twice-transformed connection, determinant route.

    e_n is computed both by the determinant formula and as
    (r_n/r_{n+1})^2 K_{n+1}(c,c)/K_n(c,c); the two must agree.
    """
    if not 0 <= n <= rec.size - 3:
        raise IndexError(f"coefficients at {n} need jets of P_{n + 2}")
    with mp.workprec(rec.precision):
        j = kt.cjets
        den = _wronskian_den(kt, n)
        d = (j.jet(n + 2) * j.jet(n, 1) - j.jet(n + 2, 1) * j.jet(n)) / den
        e_det = (j.jet(n + 2) * j.jet(n + 1, 1) - j.jet(n + 2, 1) * j.jet(n + 1)) / den
        e_ker = (rec.norm_sq[n + 1] / rec.norm_sq[n]) * (kt.K[n + 1] / kt.K[n])
        _enforce(e_det, e_ker, f"e_{n}", rec.precision)
        return d, e_det


def iterated_leading(rec, kt, n):
    """r^[2]_n = r_{n+1} sqrt(K_n(c,c) / K_{n+1}(c,c)) > 0."""
    if not 0 <= n <= rec.size - 2:
        raise IndexError(f"leading coefficient at {n} needs K_{n + 1}")
    with mp.workprec(rec.precision):
        return rec.leading[n + 1] * mp.sqrt(kt.K[n] / kt.K[n + 1])


@dataclass(frozen=True)
class ChristoffelLedger:
    """Per-index scalars of the twice-transformed family.

    tau[0] holds the squared norm of the degree-0 member (the recurrence
    starts from p^[2]_0 = 1/sqrt(tau_0)); tau[n] for n >= 1 is the recurrence
    coefficient (r^[2]_{n-1}/r^[2]_n)^2.
    """

    rec: object
    kt: object
    d: tuple
    e: tuple
    r2: tuple
    kappa: tuple
    tau: tuple
    norm2_sq: tuple

    @property
    def size(self):
        return len(self.kappa)

    @classmethod
    def build(cls, rec, kt, size):
        if size > rec.size - 2:
            raise IndexError(
                f"ledger of size {size} needs a recurrence table of size {size + 2}"
            )
        with mp.workprec(rec.precision):
            d, e, r2, norm2 = [], [], [], []
            for n in range(size):
                dn, en = christoffel_coeffs(rec, kt, n)
                d.append(dn)
                e.append(en)
                r2.append(iterated_leading(rec, kt, n))
                norm2.append(en * rec.norm_sq[n])
            kappa, tau = [], [norm2[0]]
            for n in range(size):
                t1 = rec.beta[n]
                if n >= 1:
                    t1 += rec.gamma[n] * d[n - 1] / e[n - 1]
                kappa.append(t1 * e[n] * (r2[n] / rec.leading[n]) ** 2
                             - d[n] * (r2[n] / rec.leading[n + 1]) ** 2)
                if n >= 1:
                    t_rat = (r2[n - 1] / r2[n]) ** 2
                    t_alt = (r2[n - 1] / rec.leading[n + 1]) ** 2 * (kt.K[n + 1] / kt.K[n])
                    _enforce(t_rat, t_alt, f"tau_{n}", rec.precision)
                    tau.append(t_rat)
            return cls(rec=rec, kt=kt, d=tuple(d), e=tuple(e), r2=tuple(r2),
                       kappa=tuple(kappa), tau=tuple(tau), norm2_sq=tuple(norm2))


def iterated_recurrence(ledger, rec, n):
    """(kappa_n, tau_n) of the twice-transformed three-term recurrence."""
    if not 0 <= n < ledger.size:
        raise IndexError(f"n = {n} outside ledger of size {ledger.size}")
    return ledger.kappa[n], ledger.tau[n]


def _monic_iterated_by_recurrence(ledger, n, x):
    pm1, p = mp.mpf(0), mp.mpf(1)
    for k in range(n):
        tau = ledger.tau[k] if k >= 1 else mp.mpf(0)
        p, pm1 = (x - ledger.kappa[k]) * p - tau * pm1, p
    return p


def _monic_iterated_by_connection(ledger, n, x):
    rec = ledger.rec
    c = ledger.kt.c
    if x == c:
        j = ledger.kt.cjets
        num2 = j.jet(n + 2, 2) - ledger.d[n] * j.jet(n + 1, 2) + ledger.e[n] * j.jet(n, 2)
        return num2 / 2
    j = eval_jet(rec, n + 2, x, order=0)
    num = j.jet(n + 2) - ledger.d[n] * j.jet(n + 1) + ledger.e[n] * j.jet(n)
    return num / (x - c) ** 2


def eval_iterated(rec, ledger, n, x, k=2, monic=False):
    """Value of the k-iterated family at x (k = 1 monic, k = 2 by default
    orthonormal, monic with the flag).

    k = 1 uses the kernel-polynomial divided difference (the kernel sum near
    the mass point).  k = 2 is computed by the ledger recurrence and, away
    from the mass point, also by the connection through P_{n+2}, P_{n+1}, P_n;
    the two routes must agree within the precision guard.
    """
    with mp.workprec(rec.precision):
        x = to_mpf(x)
        c = ledger.kt.c
        if k == 1:
            if not 0 <= n <= rec.size - 2:
                raise IndexError(f"once-transformed value at {n} needs P_{n + 1}")
            pc = ledger.kt.cjets.jet(n)
            if pc == 0:
                raise DegeneratePointError(f"P_{n}(c) = 0")
            if abs(x - c) <= mp.mpf(CD_SWITCH) * (1 + abs(x) + abs(c)):
                return rec.norm_sq[n] * kernel_at(rec, n, x, c) / pc
            j = eval_jet(rec, n + 1, x, order=0)
            return (j.jet(n + 1) - ledger.kt.cjets.jet(n + 1) / pc * j.jet(n)) / (x - c)
        if k != 2:
            raise IndexError(f"k must be 1 or 2, got {k}")
        if not 0 <= n < ledger.size:
            raise IndexError(f"n = {n} outside ledger of size {ledger.size}")
        value = _monic_iterated_by_recurrence(ledger, n, x)
        if x == c or abs(x - c) > mp.mpf(CD_SWITCH) * (1 + abs(x) + abs(c)):
            _enforce(value, _monic_iterated_by_connection(ledger, n, x),
                     f"P^[2]_{n}({x})", rec.precision)
        return value if monic else value * ledger.r2[n]
