"""Exact-rational reference implementation.

Everything here runs over ``fractions.Fraction`` (or over exact signed square
roots of rationals, see :class:`SqrtRational`) and never touches floating
point.  It provides the independent route for every check in the package:

* moment functionals for the three inner products (plain measure, k-iterated
  Christoffel transform ``(x-c)^k dmu``, and the discrete Sobolev product with
  point masses M, N at c),
* monic Gram-Schmidt from moments, giving exactly orthogonal systems with
  exact squared norms,
* exact construction of the whole matrix chain (Jacobi matrices, Cholesky
  factors, Q/R, the triangular connection matrix and the pentadiagonal
  recurrence matrix) for integer-alpha Laguerre configurations,
* squared-entry comparison of floating matrices against exact references.

Orthonormal-level quantities are never represented by approximate square
roots: comparisons happen in squared form with the sign tracked separately.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    InvalidParameterError,
    NotPositiveDefiniteError,
    OracleUnsupportedError,
)

#: Gram-Schmidt degree cap; rational arithmetic beyond this explodes in bit-size.
DEFAULT_DEGREE_CAP = 12


# ---------------------------------------------------------------------------
# dense polynomials over Fraction, ascending coefficients
# ---------------------------------------------------------------------------

def poly_add(f, g):
    n = max(len(f), len(g))
    return tuple(
        (f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0) for i in range(n)
    )


def poly_scale(f, s):
    return tuple(s * a for a in f)


def poly_mul(f, g):
    out = [Fraction(0)] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return tuple(out)


def poly_deriv(f):
    return tuple(i * a for i, a in enumerate(f))[1:] or (Fraction(0),)


def poly_eval(f, x):
    acc = Fraction(0)
    for a in reversed(f):
        acc = acc * x + a
    return acc


def _monomial(k):
    return tuple([Fraction(0)] * k + [Fraction(1)])


# ---------------------------------------------------------------------------
# moment functionals
# ---------------------------------------------------------------------------

def laguerre_moments(alpha, count):
    """Power moments of the weight x^alpha e^(-x) on (0, inf).

    Exact only for nonnegative integer alpha, where the n-th moment is
    (n + alpha)!.  Other alphas raise :class:`OracleUnsupportedError`; the
    floating path remains available for them.
    """
    if count < 1:
        raise InvalidParameterError("count must be >= 1")
    a = int(alpha)
    if a != alpha or a < 0:
        raise OracleUnsupportedError(
            f"exact moments require a nonnegative integer alpha, got {alpha!r}"
        )
    return tuple(Fraction(math.factorial(n + a)) for n in range(count))


@dataclass(frozen=True)
class MomentFunctional:
    """Exact bilinear form defined by a rational moment sequence.

    ``kind`` selects between the plain product, the iterated transform
    ``<f, g> = int f g (x-c)^k dmu`` and the Sobolev-type product which adds
    ``M f(c) g(c) + N f'(c) g'(c)``.
    """

    kind: str
    moments: tuple
    k: int = 0
    c: Fraction = Fraction(0)
    M: Fraction = Fraction(0)
    N: Fraction = Fraction(0)

    @classmethod
    def standard(cls, moments):
        return cls("standard", tuple(Fraction(m) for m in moments))

    @classmethod
    def iterated(cls, moments, k, c):
        if k < 1:
            raise InvalidParameterError("iterated transform needs k >= 1")
        return cls("iterated", tuple(Fraction(m) for m in moments), k=k, c=Fraction(c))

    @classmethod
    def sobolev(cls, moments, c, M, N):
        M, N = Fraction(M), Fraction(N)
        if M < 0 or N < 0:
            raise InvalidParameterError("point masses M, N must be nonnegative")
        return cls("sobolev", tuple(Fraction(m) for m in moments), c=Fraction(c), M=M, N=N)

    def _integrate(self, h):
        if len(h) > len(self.moments):
            raise OracleUnsupportedError(
                f"need moment of order {len(h) - 1}, have {len(self.moments)}"
            )
        return sum((a * m for a, m in zip(h, self.moments)), Fraction(0))

    def inner(self, f, g):
        """Exact value of the bilinear form on coefficient tuples f, g."""
        f = tuple(Fraction(a) for a in f)
        g = tuple(Fraction(a) for a in g)
        h = poly_mul(f, g)
        if self.kind == "iterated":
            shift = (-self.c, Fraction(1))
            for _ in range(self.k):
                h = poly_mul(h, shift)
        base = self._integrate(h)
        if self.kind == "sobolev":
            base += self.M * poly_eval(f, self.c) * poly_eval(g, self.c)
            base += self.N * poly_eval(poly_deriv(f), self.c) * poly_eval(poly_deriv(g), self.c)
        return base

    def norm_sq(self, f):
        return self.inner(f, f)


# ---------------------------------------------------------------------------
# monic Gram-Schmidt
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RationalPolySystem:
    """Monic, exactly orthogonal polynomial system with exact squared norms."""

    functional: MomentFunctional
    coeffs: tuple
    norm_sq: tuple

    @property
    def size(self):
        return len(self.coeffs)

    def value(self, k, x):
        return poly_eval(self.coeffs[k], Fraction(x))

    def deriv_value(self, k, x):
        return poly_eval(poly_deriv(self.coeffs[k]), Fraction(x))

    def recurrence(self):
        """Exact three-term coefficients (beta_n, gamma_n) of the system.

        beta_n = <x P_n, P_n>/<P_n, P_n>; gamma_n = <P_n, P_n>/<P_{n-1}, P_{n-1}>
        with gamma_0 = 0 by convention.
        """
        betas, gammas = [], [Fraction(0)]
        for n in range(self.size - 1):
            xpn = poly_mul((Fraction(0), Fraction(1)), self.coeffs[n])
            betas.append(self.functional.inner(xpn, self.coeffs[n]) / self.norm_sq[n])
            if n >= 1:
                gammas.append(self.norm_sq[n] / self.norm_sq[n - 1])
        return tuple(betas), tuple(gammas)

    def gram(self, upto=None):
        """Matrix of pairwise functional inner products (for orthogonality checks)."""
        m = self.size if upto is None else upto + 1
        return [
            [self.functional.inner(self.coeffs[i], self.coeffs[j]) for j in range(m)]
            for i in range(m)
        ]


def gram_schmidt(functional, n, degree_cap=DEFAULT_DEGREE_CAP):
    """Monic orthogonal system of degrees 0..n for the given functional.

    Raises :class:`NotPositiveDefiniteError` if any squared norm fails to be
    positive, i.e. the functional is not positive definite through degree n.
    """
    if n > degree_cap:
        raise OracleUnsupportedError(
            f"degree {n} exceeds the oracle cap {degree_cap}"
        )
    basis, norms = [], []
    for k in range(n + 1):
        p = _monomial(k)
        for j in range(k):
            coef = functional.inner(p, basis[j]) / norms[j]
            p = poly_add(p, poly_scale(basis[j], -coef))
        ns = functional.norm_sq(p)
        if ns <= 0:
            raise NotPositiveDefiniteError(
                f"squared norm at degree {k} is {ns}; functional not positive definite"
            )
        basis.append(p)
        norms.append(ns)
    return RationalPolySystem(functional, tuple(basis), tuple(norms))


# ---------------------------------------------------------------------------
# exact signed square roots of rationals
# ---------------------------------------------------------------------------

def _rational_sqrt(q):
    """Exact square root of a nonnegative Fraction, or None if irrational."""
    if q < 0:
        return None
    rn = math.isqrt(q.numerator)
    rd = math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


class SqrtRational:
    """Exact number of the form sign * sqrt(square), square a rational >= 0.

    Closed under multiplication and division.  Sums are defined whenever the
    two radicands have a rational square ratio, which holds throughout the
    factorization chain of this package (all chain entries are signed square
    roots of rationals); incompatible radicands raise ArithmeticError.
    """

    __slots__ = ("sign", "square")

    def __init__(self, sign, square):
        square = Fraction(square)
        if square < 0:
            raise ValueError("square must be nonnegative")
        if square == 0:
            sign = 0
        elif sign == 0:
            square = Fraction(0)
        self.sign = int(sign)
        self.square = square

    @classmethod
    def zero(cls):
        return cls(0, Fraction(0))

    @classmethod
    def from_rational(cls, q):
        q = Fraction(q)
        s = (q > 0) - (q < 0)
        return cls(s, q * q)

    @classmethod
    def from_square(cls, square, sign=1):
        return cls(sign, square)

    def is_zero(self):
        return self.sign == 0

    def as_rational(self):
        """The value as a Fraction if the radicand is a perfect square, else None."""
        r = _rational_sqrt(self.square)
        return None if r is None else self.sign * r

    def __mul__(self, other):
        return SqrtRational(self.sign * other.sign, self.square * other.square)

    def __truediv__(self, other):
        if other.sign == 0:
            raise ZeroDivisionError("division by exact zero")
        return SqrtRational(self.sign * other.sign, self.square / other.square)

    def __neg__(self):
        return SqrtRational(-self.sign, self.square)

    def __add__(self, other):
        if self.sign == 0:
            return other
        if other.sign == 0:
            return self
        ratio = _rational_sqrt(self.square / other.square)
        if ratio is None:
            raise ArithmeticError(
                f"incompatible radicands {self.square} and {other.square}"
            )
        s = self.sign * ratio + other.sign
        sig = (s > 0) - (s < 0)
        return SqrtRational(sig, s * s * other.square)

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        return self.sign == other.sign and self.square == other.square

    def __hash__(self):
        return hash((self.sign, self.square))

    def sqrt(self):
        """Exact square root; defined when the value itself is a nonnegative rational."""
        if self.sign < 0:
            raise NotPositiveDefiniteError("square root of a negative exact value")
        if self.sign == 0:
            return SqrtRational.zero()
        v = self.as_rational()
        if v is None:
            raise ArithmeticError("nested radical; value is not rational")
        return SqrtRational(1, v)

    def __float__(self):
        return self.sign * math.sqrt(float(self.square))

    def __repr__(self):
        return f"SqrtRational(sign={self.sign}, square={self.square})"


# ---------------------------------------------------------------------------
# exact matrix chain
# ---------------------------------------------------------------------------

def _sq_zeros(nrows, ncols):
    return [[SqrtRational.zero() for _ in range(ncols)] for _ in range(nrows)]


def _sq_transpose(A):
    return [list(col) for col in zip(*A)]


def _sq_matmul(A, B):
    n, m, p = len(A), len(B), len(B[0])
    out = _sq_zeros(n, p)
    for i in range(n):
        for j in range(p):
            acc = SqrtRational.zero()
            for k in range(m):
                if A[i][k].sign and B[k][j].sign:
                    acc = acc + A[i][k] * B[k][j]
            out[i][j] = acc
    return out


def _sq_cholesky_tridiag(diag, off):
    """Lower bidiagonal L with L L^T equal to the tridiagonal (diag, off).

    diag entries are rational SqrtRationals; pivots must be positive.
    """
    n = len(diag)
    L = _sq_zeros(n, n)
    for i in range(n):
        pivot = diag[i]
        if i:
            pivot = pivot - L[i][i - 1] * L[i][i - 1]
        if pivot.sign <= 0:
            raise NotPositiveDefiniteError(f"pivot {i} is not positive")
        L[i][i] = pivot.sqrt()
        if i + 1 < n:
            L[i + 1][i] = off[i] / L[i][i]
    return L


def _sq_commute(L, shift):
    """L^T L + shift I as (diag, off) pairs of the next tridiagonal matrix."""
    n = len(L)
    diag, off = [], []
    for i in range(n):
        d = L[i][i] * L[i][i] + SqrtRational.from_rational(shift)
        if i + 1 < n:
            d = d + L[i + 1][i] * L[i + 1][i]
            off.append(L[i + 1][i] * L[i + 1][i + 1])
        diag.append(d)
    return diag, off


def _sq_orthogonal_factor(L, L1):
    """Q with L1 Q^T = L^T, i.e. Q = L L1^(-T), by forward substitution."""
    n = len(L)
    Lt = _sq_transpose(L)
    Qt = _sq_zeros(n, n)
    for i in range(n):
        for j in range(n):
            acc = Lt[i][j]
            if i:
                acc = acc - L1[i][i - 1] * Qt[i - 1][j]
            Qt[i][j] = acc / L1[i][i]
    return _sq_transpose(Qt)


def _tridiag_to_sq(diag, off, size):
    A = _sq_zeros(size, size)
    for i in range(size):
        A[i][i] = diag[i]
        if i + 1 < size:
            A[i][i + 1] = A[i + 1][i] = off[i]
    return A


@dataclass(frozen=True)
class OracleMatrixSuite:
    """All chain matrices of one configuration, as exact SqrtRational entries.

    The three Jacobi matrices and the T/H connection matrices come from
    independent Gram-Schmidt constructions; the Cholesky factors, Q, R and the
    squared shifted Jacobi matrix are produced by the factorization chain run
    in exact arithmetic.  ``exact_size`` rows/columns of every matrix agree
    with the semi-infinite objects (the chain is built with an internal guard
    and trimmed).
    """

    c: Fraction
    M: Fraction
    N: Fraction
    exact_size: int
    matrices: dict = field(repr=False)

    def entry(self, name, i, j):
        return self.matrices[name][i][j]


def build_oracle_suite(alpha, c, M, N, size, degree_cap=DEFAULT_DEGREE_CAP):
    """Exact matrix suite for integer-alpha Laguerre with mass point data (c, M, N).

    ``size`` is the number of exact leading rows/columns delivered for every
    matrix; the Gram-Schmidt degree cap limits it (size + 2 monic degrees are
    needed).  Matrix names: J, L, J1, L1, J2, Q, R, T, H, J2_shift_sq.
    """
    c, M, N = Fraction(c), Fraction(M), Fraction(N)
    if c >= 0:
        raise OracleUnsupportedError(
            "oracle chain assumes the mass point left of the Laguerre support"
        )
    deg = size + 2
    guard = 2
    nb = size + guard
    moments = laguerre_moments(alpha, 2 * deg + 4)

    std = gram_schmidt(MomentFunctional.standard(moments), deg, degree_cap)
    it1 = gram_schmidt(MomentFunctional.iterated(moments, 1, c), deg, degree_cap)
    it2 = gram_schmidt(MomentFunctional.iterated(moments, 2, c), deg, degree_cap)
    sob_fn = MomentFunctional.sobolev(moments, c, M, N)
    sob = gram_schmidt(sob_fn, deg, degree_cap)
    it2_fn = it2.functional

    def jacobi_sq(system, n):
        betas, gammas = system.recurrence()
        diag = [SqrtRational.from_rational(b) for b in betas[:n]]
        off = [SqrtRational.from_square(gammas[i + 1]) for i in range(n - 1)]
        return diag, off

    jd, jo = jacobi_sq(std, nb)
    j1d, j1o = jacobi_sq(it1, nb)
    j2d, j2o = jacobi_sq(it2, nb)

    shift = [SqrtRational.from_rational(d.as_rational() - c) for d in jd]
    L = _sq_cholesky_tridiag(shift, jo)
    c1d, c1o = _sq_commute(L, Fraction(0))
    L1 = _sq_cholesky_tridiag(c1d, c1o)
    Q = _sq_orthogonal_factor(L, L1)
    R = _sq_transpose(_sq_matmul(L, L1))

    J2s = _tridiag_to_sq(
        [SqrtRational.from_rational(d.as_rational() - c) for d in j2d], j2o, nb
    )
    J2sq = _sq_matmul(J2s, J2s)

    sqn_sob = [SqrtRational.from_square(sob.norm_sq[k]) for k in range(deg + 1)]
    sqn_it2 = [SqrtRational.from_square(it2.norm_sq[k]) for k in range(deg + 1)]
    shift2 = (c * c, -2 * c, Fraction(1))

    T = _sq_zeros(nb, nb)
    for n in range(nb):
        for k in range(max(0, n - 2), n + 1):
            ip = it2_fn.inner(sob.coeffs[n], it2.coeffs[k])
            T[n][k] = SqrtRational.from_rational(ip) / (sqn_sob[n] * sqn_it2[k])

    H = _sq_zeros(nb, nb)
    for n in range(nb):
        for k in range(max(0, n - 2), min(nb, n + 3)):
            ip = sob_fn.inner(poly_mul(shift2, sob.coeffs[n]), sob.coeffs[k])
            H[n][k] = SqrtRational.from_rational(ip) / (sqn_sob[n] * sqn_sob[k])

    def trim(rows):
        return tuple(tuple(row[:size]) for row in rows[:size])

    matrices = {
        "J": trim(_tridiag_to_sq(jd, jo, nb)),
        "L": trim(L),
        "J1": trim(_tridiag_to_sq(j1d, j1o, nb)),
        "L1": trim(L1),
        "J2": trim(_tridiag_to_sq(j2d, j2o, nb)),
        "Q": trim(Q),
        "R": trim(R),
        "T": trim(T),
        "H": trim(H),
        "J2_shift_sq": trim(J2sq),
    }
    return OracleMatrixSuite(c=c, M=M, N=N, exact_size=size, matrices=matrices)


# ---------------------------------------------------------------------------
# squared-entry comparison
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EntryVerdict:
    i: int
    j: int
    ok: bool
    sign_ok: bool
    rel_err: float


@dataclass(frozen=True)
class ComparisonReport:
    name: str
    verdicts: tuple

    @property
    def total(self):
        return len(self.verdicts)

    @property
    def passed(self):
        return sum(1 for v in self.verdicts if v.ok)

    @property
    def all_ok(self):
        return self.passed == self.total

    def summary(self):
        return f"{self.name}: {self.passed}/{self.total} entries match"


def squared_entry_compare(name, float_entries, exact_entries, rel_tol):
    """Compare floating entries against exact signed-square references.

    ``float_entries`` maps (i, j) to a floating value (anything float()-able);
    ``exact_entries`` maps (i, j) to SqrtRational or (square, sign) pairs.
    A verdict passes when the squared floating entry matches the rational
    square within ``rel_tol`` (relative, absolute for exact zeros) and the
    sign agrees.  Mismatches are reported, never raised.
    """
    verdicts = []
    for (i, j), ref in sorted(exact_entries.items()):
        if not isinstance(ref, SqrtRational):
            ref = SqrtRational.from_square(ref[0], ref[1])
        fv = float_entries[(i, j)]
        fsq = fv * fv
        qs = float(ref.square)
        if ref.sign == 0:
            err = float(fsq)
            ok = err <= rel_tol
            sign_ok = ok
        else:
            err = abs(float(fsq - ref.square)) / qs if qs else float(fsq)
            fsign = (fv > 0) - (fv < 0)
            sign_ok = fsign == ref.sign
            ok = sign_ok and err <= rel_tol
        verdicts.append(EntryVerdict(i, j, ok, sign_ok, float(err)))
    return ComparisonReport(name=name, verdicts=tuple(verdicts))
