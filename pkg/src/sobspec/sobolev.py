"""Sobolev-type orthonormal polynomials and their connection coefficients.

The monic family S_n orthogonal under
``<f, g> = int f g dmu + M f(c) g(c) + N f'(c) g'(c)`` is pinned down by its
boundary pair (S_n(c), S_n'(c)), which solves a 2x2 linear system driven by
the confluent kernel values of the base family.  From there the ledger
collects norms, the triangular connection coefficients gamma onto the
twice-transformed orthonormal family, the five-term recurrence entries
(a_n, b_n, c_n) for multiplication by (x-c)^2, and the auxiliary alpha/xi
connection coefficients.

Derivative-index resolution (documented per the module contract): the
published bracket for gamma_{n-1,n} carries the derivative factor with index
n; the kernel expansion it comes from produces index n-1, and only the n-1
reading passes the exact-rational orthogonality suite and reproduces the
worked example's triangular matrix (entry (1,0): 11/(2 sqrt(5)); the literal
reading gives 3/sqrt(5)).  Both readings stay available behind the
``reading`` switch ("corrected" is the default, "literal" the verbatim one).
The analogous expansion-index typo inside the boundary-system derivation has
no effect on the operative formulas, which are implemented as stated.
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath as mp

from .core import eval_jet, to_mpf
from .errors import DegeneratePointError, InvalidParameterError, NumericalFailureError
from .kernels import kernel_at, kernel_dy_at_c

READINGS = ("corrected", "literal")


def sobolev_boundary(rec, kt, spec, n):
    """(S_n(c), S_n'(c)): solution of the confluent-kernel 2x2 system.

    The system matrix is [[1 + M K_{n-1}, N K01_{n-1}], [M K01_{n-1},
    1 + N K11_{n-1}]] (values at (c,c)), right-hand side (P_n(c), P_n'(c)).
    It is nonsingular for M, N >= 0 since the confluent Gram block is
    positive semidefinite; the guard catches unvalidated custom input.
    """
    if not 0 <= n < rec.size:
        raise IndexError(f"n = {n} outside table of size {rec.size}")
    with mp.workprec(rec.precision):
        M, N = to_mpf(spec.M), to_mpf(spec.N)
        if n == 0:
            a11, a12, a21, a22 = mp.mpf(1), mp.mpf(0), mp.mpf(0), mp.mpf(1)
        else:
            a11 = 1 + M * kt.K[n - 1]
            a12 = N * kt.K01[n - 1]
            a21 = M * kt.K01[n - 1]
            a22 = 1 + N * kt.K11[n - 1]
        det = a11 * a22 - a12 * a21
        if det == 0:
            raise DegeneratePointError("boundary system is singular")
        b1, b2 = kt.cjets.jet(n), kt.cjets.jet(n, 1)
        return (b1 * a22 - a12 * b2) / det, (a11 * b2 - a21 * b1) / det


def sobolev_norm(rec, spec, n, boundary, kt):
    """(||S_n||^2, t_n) with ||S_n||^2 = ||P_n||^2 + M S_n(c) P_n(c) + N S_n'(c) P_n'(c)."""
    with mp.workprec(rec.precision):
        sc, sdc = boundary
        M, N = to_mpf(spec.M), to_mpf(spec.N)
        ns = rec.norm_sq[n] + M * sc * kt.cjets.jet(n) + N * sdc * kt.cjets.jet(n, 1)
        if not ns > 0:
            raise NumericalFailureError(
                f"computed squared norm at n = {n} is {ns}; increase the precision"
            )
        return ns, 1 / mp.sqrt(ns)


@dataclass(frozen=True)
class SobolevLedger:
    """Boundary values, norms, connection and five-term coefficients.

    Field indexing follows the defining displays: gamma_nn[n], gamma_n1[n],
    gamma_n2[n] are the coefficients of the twice-transformed orthonormal
    polynomials of degrees n, n-1, n-2 in s_n (zero where the degree is
    negative); a[n], b[n], cdiag[n] are the five-term entries with
    a_n = t_{n-2}/t_n; alpha1[n]/alpha0[n] and xi0/xi1/xi2 are the auxiliary
    connection coefficients onto the base family and back.
    """

    rec: object
    kt: object
    chris: object
    spec: object
    reading: str
    Sc: tuple
    Sdc: tuple
    normS_sq: tuple
    t: tuple
    gamma_nn: tuple
    gamma_n1: tuple
    gamma_n2: tuple
    a: tuple
    b: tuple
    cdiag: tuple
    alpha1: tuple
    alpha0: tuple
    xi0: tuple
    xi1: tuple
    xi2: tuple

    @property
    def size(self):
        return len(self.t)

    @classmethod
    def build(cls, rec, kt, chris, spec, size, reading="corrected"):
        if reading not in READINGS:
            raise InvalidParameterError(f"reading must be one of {READINGS}")
        if size > chris.size or size > rec.size - 1:
            raise IndexError(
                f"ledger of size {size} needs chris size >= {size} and "
                f"recurrence size >= {size + 1}"
            )
        with mp.workprec(rec.precision):
            M, N = to_mpf(spec.M), to_mpf(spec.N)
            j = kt.cjets
            r = rec.leading
            Sc, Sdc, normS, t = [], [], [], []
            for n in range(size):
                pair = sobolev_boundary(rec, kt, spec, n)
                ns, tn = sobolev_norm(rec, spec, n, pair, kt)
                Sc.append(pair[0])
                Sdc.append(pair[1])
                normS.append(ns)
                t.append(tn)

            zero = mp.mpf(0)
            g_nn, g_n1, g_n2 = [], [], []
            for n in range(size):
                g_nn.append(t[n] / chris.r2[n])
                if n >= 1:
                    sc, sdc = t[n] * Sc[n], t[n] * Sdc[n]
                    pm1 = j.jet(n - 1) * r[n - 1]
                    if reading == "corrected":
                        dp = j.jet(n - 1, 1) * r[n - 1]
                    else:
                        dp = j.jet(n, 1) * r[n]
                    bracket = (chris.d[n - 1] * t[n] / r[n]
                               + chris.e[n - 1] * (r[n] / r[n - 1])
                               * (M * sc * pm1 + N * sdc * dp))
                    g_n1.append(-mp.sqrt(kt.K[n - 1] / kt.K[n]) * bracket)
                else:
                    g_n1.append(zero)
                g_n2.append(chris.r2[n - 2] / t[n] if n >= 2 else zero)

            a, b, cdiag = [], [], []
            for n in range(size):
                a.append(g_nn[n - 2] * g_n2[n] if n >= 2 else zero)
                bn = zero
                if n >= 1:
                    bn = g_nn[n - 1] * g_n1[n]
                    if n >= 2:
                        bn += g_n2[n] * g_n1[n - 1]
                b.append(bn)
                cdiag.append(g_nn[n] ** 2 + g_n1[n] ** 2 + g_n2[n] ** 2)

            al1, al0, x0, x1, x2 = [], [], [], [], []
            for n in range(size):
                sc, sdc = t[n] * Sc[n], t[n] * Sdc[n]
                al1.append(M * sc * j.jet(n + 1) * r[n + 1]
                           + N * sdc * j.jet(n + 1, 1) * r[n + 1])
                al0.append(t[n] / r[n] + M * sc * j.jet(n) * r[n]
                           + N * sdc * j.jet(n, 1) * r[n])
                x0.append(mp.sqrt(chris.e[n]))
                x1.append(-chris.d[n - 1] * mp.sqrt(kt.K[n - 1] / kt.K[n])
                          if n >= 1 else zero)
                x2.append((r[n - 1] / r[n]) * mp.sqrt(kt.K[n - 2] / kt.K[n - 1])
                          if n >= 2 else zero)

            return cls(rec=rec, kt=kt, chris=chris, spec=spec, reading=reading,
                       Sc=tuple(Sc), Sdc=tuple(Sdc), normS_sq=tuple(normS),
                       t=tuple(t), gamma_nn=tuple(g_nn), gamma_n1=tuple(g_n1),
                       gamma_n2=tuple(g_n2), a=tuple(a), b=tuple(b),
                       cdiag=tuple(cdiag), alpha1=tuple(al1), alpha0=tuple(al0),
                       xi0=tuple(x0), xi1=tuple(x1), xi2=tuple(x2))


def gamma_connection(ledger, n):
    """The stored triple (gamma_{n,n}, gamma_{n-1,n}, gamma_{n-2,n})."""
    if not 0 <= n < ledger.size:
        raise IndexError(f"n = {n} outside ledger of size {ledger.size}")
    return ledger.gamma_nn[n], ledger.gamma_n1[n], ledger.gamma_n2[n]


def five_term_coeffs(ledger, n):
    """(a_n, b_n, c_n) of the five-term recurrence for (x-c)^2 s_n."""
    if not 0 <= n < ledger.size:
        raise IndexError(f"n = {n} outside ledger of size {ledger.size}")
    return ledger.a[n], ledger.b[n], ledger.cdiag[n]


def _kernel01_xc(rec, kt, n, x):
    if x == kt.c:
        return kt.K01[n]
    return kernel_dy_at_c(rec, n, x, kt.c)


def eval_sobolev(rec, kt, ledger, n, x, normalized=False):
    """S_n(x) = P_n(x) - M S_n(c) K_{n-1}(x,c) - N S_n'(c) K01_{n-1}(x,c).

    The ``normalized`` flag returns s_n(x) = t_n S_n(x) instead.
    """
    if not 0 <= n < ledger.size:
        raise IndexError(f"n = {n} outside ledger of size {ledger.size}")
    with mp.workprec(rec.precision):
        x = to_mpf(x)
        value = eval_jet(rec, n, x, order=0).jet(n)
        M, N = to_mpf(ledger.spec.M), to_mpf(ledger.spec.N)
        if n >= 1:
            if M != 0:
                value -= M * ledger.Sc[n] * kernel_at(rec, n - 1, x, kt.c)
            if N != 0:
                value -= N * ledger.Sdc[n] * _kernel01_xc(rec, kt, n - 1, x)
        return value * ledger.t[n] if normalized else value


def aux_connections(ledger, n):
    """(alpha_{n+1,n}, alpha_{n,n}, xi_{n,n}, xi_{n-1,n}, xi_{n-2,n})."""
    if not 0 <= n < ledger.size:
        raise IndexError(f"n = {n} outside ledger of size {ledger.size}")
    return (ledger.alpha1[n], ledger.alpha0[n],
            ledger.xi0[n], ledger.xi1[n], ledger.xi2[n])
