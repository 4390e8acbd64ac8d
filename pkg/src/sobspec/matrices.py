"""Finite truncations of the semi-infinite operators and their factorizations.

The chain: the shifted Jacobi matrix of the base measure factors as L L^T
(Cholesky); commuting the factors and re-shifting gives the Jacobi matrix of
the once-transformed measure, and one more commute reaches the
twice-transformed one.  From the two Cholesky factors, Q = L L1^(-T) is
orthogonal and R = (L L1)^T upper triangular with

    Q R  = J  - cI,      R Q  = J2 - cI,
    (J2 - cI)^2 = R R^T = T^T T,   (J - cI)^2 = R^T R,
    H = T T^T,           H T = T (J2 - cI)^2,

where T is the triangular connection matrix of the Sobolev family onto the
twice-transformed orthonormal family and H the pentadiagonal matrix of
multiplication by (x-c)^2 in the Sobolev basis.  When the mass point sits
right of the support, the chain factors cI - J instead and the sign threads
through the two linear identities.

Truncation bookkeeping: every matrix carries ``exact_size``, the number of
leading rows/columns guaranteed to agree with the semi-infinite object.
Commuting Cholesky factors consumes one row, forming Q/R consumes one, and a
product consumes min(left upper bandwidth, right lower bandwidth).  Residuals
are only ever evaluated inside the intersection of the operands' exact
regions.
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath as mp

from .core import to_mpf
from .errors import (
    InternalConsistencyError,
    InvalidParameterError,
    NotPositiveDefiniteError,
)


@dataclass(frozen=True)
class BandedMatrix:
    """Immutable truncation of a semi-infinite banded operator.

    Entries are stored densely (sizes here are tiny); ``lower_bw``/``upper_bw``
    declare the band, outside which entries are identically zero, and
    ``exact_size`` marks the leading block unaffected by truncation.
    Serialization emits band entries only.
    """

    nrows: int
    ncols: int
    lower_bw: int
    upper_bw: int
    exact_size: int
    precision: int
    rows: tuple

    def entry(self, i, j):
        return self.rows[i][j]

    def in_band(self, i, j):
        return -self.lower_bw <= j - i <= self.upper_bw

    def band_entries(self):
        """Yield (i, j, value) over the declared band, row-major."""
        for i in range(self.nrows):
            lo = max(0, i - self.lower_bw)
            hi = min(self.ncols, i + self.upper_bw + 1)
            for j in range(lo, hi):
                yield i, j, self.rows[i][j]

    def transpose(self):
        return BandedMatrix(
            nrows=self.ncols,
            ncols=self.nrows,
            lower_bw=self.upper_bw,
            upper_bw=self.lower_bw,
            exact_size=self.exact_size,
            precision=self.precision,
            rows=tuple(zip(*self.rows)),
        )

    def shifted(self, lam):
        """self + lam * I on the common diagonal."""
        with mp.workprec(self.precision):
            lam = to_mpf(lam)
            rows = tuple(
                tuple(v + lam if i == j else v for j, v in enumerate(row))
                for i, row in enumerate(self.rows)
            )
        return BandedMatrix(self.nrows, self.ncols, self.lower_bw, self.upper_bw,
                            self.exact_size, self.precision, rows)

    def scaled(self, s):
        with mp.workprec(self.precision):
            s = to_mpf(s)
            rows = tuple(tuple(s * v for v in row) for row in self.rows)
        return BandedMatrix(self.nrows, self.ncols, self.lower_bw, self.upper_bw,
                            self.exact_size, self.precision, rows)


def _freeze(rows, lower_bw, upper_bw, exact_size, precision):
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    return BandedMatrix(
        nrows=nrows,
        ncols=ncols,
        lower_bw=min(lower_bw, max(nrows - 1, 0)),
        upper_bw=min(upper_bw, max(ncols - 1, 0)),
        exact_size=max(0, min(exact_size, nrows, ncols)),
        precision=precision,
        rows=tuple(tuple(r) for r in rows),
    )


def identity(n, precision):
    with mp.workprec(precision):
        one, zero = mp.mpf(1), mp.mpf(0)
        rows = [[one if i == j else zero for j in range(n)] for i in range(n)]
    return _freeze(rows, 0, 0, n, precision)


def multiply(A, B):
    """A @ B with band union and exact-size propagation.

    The product consumes w = min(A.upper_bw, B.lower_bw) guard rows: entry
    (i, j) of the infinite product sums over k <= min(i + A.upper_bw,
    j + B.lower_bw), so the truncated sum is complete and made of exact
    operand entries only while i, j stay w short of the operands' markers.
    """
    if A.ncols != B.nrows:
        raise InvalidParameterError("inner dimensions differ")
    prec = max(A.precision, B.precision)
    with mp.workprec(prec):
        zero = mp.mpf(0)
        rows = []
        for i in range(A.nrows):
            arow = A.rows[i]
            out = [zero] * B.ncols
            klo = max(0, i - A.lower_bw)
            khi = min(A.ncols, i + A.upper_bw + 1)
            for k in range(klo, khi):
                a = arow[k]
                if a == 0:
                    continue
                brow = B.rows[k]
                jlo = max(0, k - B.lower_bw)
                jhi = min(B.ncols, k + B.upper_bw + 1)
                for j in range(jlo, jhi):
                    out[j] += a * brow[j]
            rows.append(out)
    w = min(A.upper_bw, B.lower_bw)
    exact = min(A.exact_size, B.exact_size - w, A.ncols - w)
    return _freeze(rows, A.lower_bw + B.lower_bw, A.upper_bw + B.upper_bw,
                   exact, prec)


def subtract(A, B):
    if (A.nrows, A.ncols) != (B.nrows, B.ncols):
        raise InvalidParameterError("shapes differ")
    prec = max(A.precision, B.precision)
    with mp.workprec(prec):
        rows = [
            [a - b for a, b in zip(ra, rb)] for ra, rb in zip(A.rows, B.rows)
        ]
    return _freeze(rows, max(A.lower_bw, B.lower_bw), max(A.upper_bw, B.upper_bw),
                   min(A.exact_size, B.exact_size), prec)


def block_max_abs(A, block):
    with mp.workprec(A.precision):
        m = mp.mpf(0)
        for i in range(min(block, A.nrows)):
            for j in range(min(block, A.ncols)):
                m = max(m, abs(A.rows[i][j]))
        return m


def block_residual(A, B, block):
    """Max-entry difference of the leading blocks, relative to their scale."""
    if block < 1:
        raise InternalConsistencyError("empty comparison block")
    with mp.workprec(max(A.precision, B.precision)):
        diff = mp.mpf(0)
        for i in range(block):
            for j in range(block):
                diff = max(diff, abs(A.rows[i][j] - B.rows[i][j]))
        scale = max(mp.mpf(1), block_max_abs(A, block), block_max_abs(B, block))
        return diff / scale


# ---------------------------------------------------------------------------
# builders
# ---------------------------------------------------------------------------

def build_jacobi(rec, size):
    """Tridiagonal symmetric truncation: diagonal beta_n, off-diagonal sqrt(gamma_{n+1})."""
    if size > rec.size:
        raise IndexError(f"size {size} exceeds recurrence table {rec.size}")
    with mp.workprec(rec.precision):
        zero = mp.mpf(0)
        rows = [[zero] * size for _ in range(size)]
        for n in range(size):
            rows[n][n] = rec.beta[n]
            if n + 1 < size:
                off = mp.sqrt(rec.gamma[n + 1])
                rows[n][n + 1] = rows[n + 1][n] = off
    return _freeze(rows, 1, 1, size, rec.precision)


def build_iterated_jacobi(chris, size):
    """Tridiagonal truncation of the twice-transformed family from its scalar
    ledger: diagonal kappa_n, off-diagonal sqrt(tau_{n+1})."""
    if size > chris.size:
        raise IndexError(f"size {size} exceeds ledger {chris.size}")
    prec = chris.rec.precision
    with mp.workprec(prec):
        zero = mp.mpf(0)
        rows = [[zero] * size for _ in range(size)]
        for n in range(size):
            rows[n][n] = chris.kappa[n]
            if n + 1 < size:
                off = mp.sqrt(chris.tau[n + 1])
                rows[n][n + 1] = rows[n + 1][n] = off
    return _freeze(rows, 1, 1, size, prec)


def cholesky_shifted(J, c, side="left"):
    """Lower bidiagonal L with L L^T = J - cI (side left) or cI - J (side right).

    Tridiagonal Cholesky is strictly forward-local, so the exact size is
    preserved.  A nonpositive pivot means c lies inside or too close to the
    support and raises.
    """
    if side not in ("left", "right"):
        raise InvalidParameterError("side must be 'left' or 'right'")
    sgn = 1 if side == "left" else -1
    n = J.nrows
    with mp.workprec(J.precision):
        c = to_mpf(c)
        zero = mp.mpf(0)
        rows = [[zero] * n for _ in range(n)]
        for i in range(n):
            pivot = sgn * (J.rows[i][i] - c)
            if i:
                pivot -= rows[i][i - 1] ** 2
            if not pivot > 0:
                raise NotPositiveDefiniteError(
                    f"nonpositive pivot at row {i}: the shifted matrix is not "
                    f"positive definite (c = {c} on the '{side}' side)"
                )
            rows[i][i] = mp.sqrt(pivot)
            if i + 1 < n:
                rows[i + 1][i] = sgn * J.rows[i + 1][i] / rows[i][i]
    return _freeze(rows, 1, 0, J.exact_size, J.precision)


def commute_cholesky(L, c, side="left"):
    """Next Jacobi matrix in the chain: L^T L re-shifted by c.

    Returns L^T L + cI on the left side, cI - L^T L on the right.  The last
    diagonal entry of L^T L needs a truncated-off row of L, so the exact size
    drops by one.
    """
    if side not in ("left", "right"):
        raise InvalidParameterError("side must be 'left' or 'right'")
    sgn = 1 if side == "left" else -1
    n = L.nrows
    with mp.workprec(L.precision):
        c = to_mpf(c)
        zero = mp.mpf(0)
        rows = [[zero] * n for _ in range(n)]
        for i in range(n):
            d = L.rows[i][i] ** 2
            if i + 1 < n:
                d += L.rows[i + 1][i] ** 2
                off = sgn * L.rows[i + 1][i] * L.rows[i + 1][i + 1]
                rows[i][i + 1] = rows[i + 1][i] = off
            rows[i][i] = sgn * d + c
    return _freeze(rows, 1, 1, L.exact_size - 1, L.precision)


def qr_pair(L, L1):
    """(Q, R) with Q = L L1^(-T) orthogonal and R = (L L1)^T upper triangular.

    Q is computed by forward substitution against L1 (never inverting), one
    subdiagonal and dense above; R has upper bandwidth 2 and positive
    diagonal.  Both give up one guard row.
    """
    n = L.nrows
    prec = max(L.precision, L1.precision)
    exact = min(L.exact_size, L1.exact_size) - 1
    with mp.workprec(prec):
        zero = mp.mpf(0)
        qt = [[zero] * n for _ in range(n)]
        for i in range(n):
            for j in range(min(i + 2, n)):
                acc = L.rows[j][i] if 0 <= j - i <= 1 else zero
                if i:
                    acc -= L1.rows[i][i - 1] * qt[i - 1][j]
                qt[i][j] = acc / L1.rows[i][i]
        Q = _freeze([list(col) for col in zip(*qt)], 1, n - 1, exact, prec)
    R = multiply(L, L1).transpose()
    R = _freeze([list(r) for r in R.rows], 0, 2, exact, prec)
    return Q, R


def build_T(sob, size):
    """Triangular connection matrix: row n holds the coefficients of s_n in
    the twice-transformed orthonormal basis (bandwidth 2 below the diagonal)."""
    if size > sob.size:
        raise IndexError(f"size {size} exceeds ledger {sob.size}")
    prec = sob.rec.precision
    with mp.workprec(prec):
        zero = mp.mpf(0)
        rows = [[zero] * size for _ in range(size)]
        for n in range(size):
            rows[n][n] = sob.gamma_nn[n]
            if n >= 1:
                rows[n][n - 1] = sob.gamma_n1[n]
            if n >= 2:
                rows[n][n - 2] = sob.gamma_n2[n]
    return _freeze(rows, 2, 0, size, prec)


def build_H(sob, size):
    """Pentadiagonal symmetric matrix of multiplication by (x-c)^2 in the
    Sobolev orthonormal basis, assembled from the (a, b, c) ledger entries."""
    if size > sob.size:
        raise IndexError(f"size {size} exceeds ledger {sob.size}")
    prec = sob.rec.precision
    with mp.workprec(prec):
        zero = mp.mpf(0)
        rows = [[zero] * size for _ in range(size)]
        for n in range(size):
            rows[n][n] = sob.cdiag[n]
            if n + 1 < size:
                rows[n][n + 1] = rows[n + 1][n] = sob.b[n + 1]
            if n + 2 < size:
                rows[n][n + 2] = rows[n + 2][n] = sob.a[n + 2]
    return _freeze(rows, 2, 2, size, prec)


# ---------------------------------------------------------------------------
# pipeline and verification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MatrixSuite:
    """All matrices of one configuration at one truncation.

    Built at ``size + guard`` rows so that every verification block of
    ``size`` rows is exact.  ``J2`` comes from the double Cholesky commute
    (the chain route); ``J2_direct`` from the scalar recurrence ledger of the
    twice-transformed family -- the two feed a cross-check residual.
    """

    spec: object
    size: int
    guard: int
    precision: int
    side: str
    rec: object
    kt: object
    chris: object
    sob: object
    J: BandedMatrix
    L: BandedMatrix
    J1: BandedMatrix
    L1: BandedMatrix
    J2: BandedMatrix
    J2_direct: BandedMatrix
    Q: BandedMatrix
    R: BandedMatrix
    T: BandedMatrix
    H: BandedMatrix

    @classmethod
    def build(cls, spec, size, guard=4, precision=None, reading="corrected"):
        from .christoffel import ChristoffelLedger
        from .core import DEFAULT_PRECISION
        from .kernels import KernelTable
        from .sobolev import SobolevLedger

        if size < 3:
            raise InvalidParameterError("size must be >= 3")
        if guard < 2:
            raise InvalidParameterError("guard must be >= 2")
        precision = DEFAULT_PRECISION if precision is None else precision
        if precision < 64:
            raise InvalidParameterError("precision must be >= 64 bits")
        nb = size + guard
        rec = spec.measure.recurrence(nb + 5, precision)
        with mp.workprec(precision):
            kt = KernelTable.build(rec, spec.c)
            chris = ChristoffelLedger.build(rec, kt, nb + 2)
            sob = SobolevLedger.build(rec, kt, chris, spec, nb + 2, reading)
            side = spec.side
            J = build_jacobi(rec, nb)
            L = cholesky_shifted(J, spec.c, side)
            J1 = commute_cholesky(L, spec.c, side)
            L1 = cholesky_shifted(J1, spec.c, side)
            J2 = commute_cholesky(L1, spec.c, side)
            J2_direct = build_iterated_jacobi(chris, nb)
            Q, R = qr_pair(L, L1)
            T = build_T(sob, nb)
            H = build_H(sob, nb)
        return cls(spec=spec, size=size, guard=guard, precision=precision,
                   side=side, rec=rec, kt=kt, chris=chris, sob=sob,
                   J=J, L=L, J1=J1, L1=L1, J2=J2, J2_direct=J2_direct,
                   Q=Q, R=R, T=T, H=H)

    def named_matrices(self):
        return {
            "J": self.J, "L": self.L, "J1": self.J1, "L1": self.L1,
            "J2": self.J2, "Q": self.Q, "R": self.R, "T": self.T, "H": self.H,
        }


@dataclass(frozen=True)
class ResidualEntry:
    name: str
    residual: object
    block: int


@dataclass(frozen=True)
class ResidualReport:
    """Max-entry relative residuals of the factorization identities, each on
    the guard-trimmed leading block recorded next to it."""

    size: int
    guard: int
    precision: int
    entries: tuple

    @property
    def max_residual(self):
        return max(e.residual for e in self.entries)

    def all_within(self, tol):
        return all(e.residual <= tol for e in self.entries)

    def as_rows(self):
        return [(e.name, e.residual, e.block) for e in self.entries]


def orthogonality_defect(Q, block, ncols=None):
    """Max-entry distance of the leading block of Q Q^T from the identity.

    The row sums run over the ``ncols`` leading columns only (default: the
    exact region), i.e. over the truncation of the semi-infinite orthogonal
    factor.  Its rows are infinite, so the defect does not vanish; it shrinks
    as the truncation grows and is reported as a diagnostic trend.  (The full
    finite section is exactly orthogonal and would show nothing.)
    """
    m = Q.exact_size if ncols is None else ncols
    with mp.workprec(Q.precision):
        worst = mp.mpf(0)
        for i in range(block):
            for j in range(block):
                v = mp.fsum(Q.rows[i][k] * Q.rows[j][k] for k in range(m))
                worst = max(worst, abs(v - (1 if i == j else 0)))
        return worst


def verify_propositions(suite, size=None):
    """Residuals of every factorization identity of the chain.

    Each residual is evaluated on min(requested size, intersection of the
    operands' exact regions); an empty intersection raises
    :class:`InternalConsistencyError`.
    """
    size = suite.size if size is None else size
    with mp.workprec(suite.precision):
        sgn = 1 if suite.side == "left" else -1
        c = to_mpf(suite.spec.c)
        A0 = suite.J.shifted(-c).scaled(sgn)
        A2 = suite.J2.shifted(-c).scaled(sgn)
        A0sq = multiply(A0, A0)
        A2sq = multiply(A2, A2)
        Rt = suite.R.transpose()
        Tt = suite.T.transpose()
        Qt = suite.Q.transpose()

        pairs = [
            ("H = T Tt", suite.H, multiply(suite.T, Tt)),
            ("H T = T (J2 - cI)^2", multiply(suite.H, suite.T),
             multiply(suite.T, A2sq)),
            ("Q R = J - cI", multiply(suite.Q, suite.R), A0),
            ("R Q = J2 - cI", multiply(suite.R, suite.Q), A2),
            ("(J2 - cI)^2 = R Rt", A2sq, multiply(suite.R, Rt)),
            ("(J - cI)^2 = Rt R", A0sq, multiply(Rt, suite.R)),
            ("R Rt = Tt T", multiply(suite.R, Rt), multiply(Tt, suite.T)),
            ("Qt Q = I", multiply(Qt, suite.Q),
             identity(suite.Q.nrows, suite.precision)),
            ("J2 chain = J2 ledger", suite.J2, suite.J2_direct),
        ]
        entries = []
        for name, A, B in pairs:
            block = min(size, A.exact_size, B.exact_size)
            entries.append(ResidualEntry(name, block_residual(A, B, block), block))

        block = min(size, suite.H.exact_size)
        scale = max(mp.mpf(1), block_max_abs(suite.H, block))
        stray = mp.mpf(0)
        for i in range(block):
            for j in range(block):
                if abs(i - j) > 2:
                    stray = max(stray, abs(suite.H.rows[i][j]))
        entries.append(ResidualEntry("H bandwidth <= 2", stray / scale, block))

    return ResidualReport(size=size, guard=suite.guard,
                          precision=suite.precision, entries=tuple(entries))
