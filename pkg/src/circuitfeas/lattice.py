"""Exact integer-matrix normal forms and exponent-lattice reductions.

Everything here runs on plain Python integers: entries grow without
overflow and all invariants (unimodularity, triangularity, divisibility
chains) are checked or checkable exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .errors import NotHonestError
from .polynomials import Exponent, SparsePolynomial

Matrix = tuple[tuple[int, ...], ...]


def _freeze(rows: Sequence[Sequence[int]]) -> Matrix:
    return tuple(tuple(int(v) for v in row) for row in rows)


def _identity(k: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(k)] for i in range(k)]


def _validate_matrix(m) -> list[list[int]]:
    rows = [list(row) for row in m]
    if not rows or not rows[0]:
        raise ValueError("matrix must be nonempty")
    width = len(rows[0])
    for row in rows:
        if len(row) != width:
            raise ValueError("ragged matrix")
        for v in row:
            if not isinstance(v, int):
                raise ValueError("matrix entries must be integers")
    return rows


def det_int(m) -> int:
    """Exact determinant of a square integer matrix (fraction-free Bareiss)."""
    a = _validate_matrix(m)
    k = len(a)
    if any(len(row) != k for row in a):
        raise ValueError("determinant needs a square matrix")
    sign = 1
    prev = 1
    for col in range(k - 1):
        if a[col][col] == 0:
            pivot = next((r for r in range(col + 1, k) if a[r][col] != 0), None)
            if pivot is None:
                return 0
            a[col], a[pivot] = a[pivot], a[col]
            sign = -sign
        for i in range(col + 1, k):
            for j in range(col + 1, k):
                a[i][j] = (a[i][j] * a[col][col] - a[i][col] * a[col][j]) // prev
            a[i][col] = 0
        prev = a[col][col]
    return sign * a[-1][-1]


@dataclass(frozen=True)
class UnimodularMatrix:
    """Square integer matrix with determinant exactly +1 or -1."""

    entries: Matrix

    def __post_init__(self):
        d = det_int(self.entries)
        if d not in (1, -1):
            raise ValueError(f"matrix has determinant {d}, not unimodular")

    @property
    def size(self) -> int:
        return len(self.entries)

    def apply(self, vector: Sequence[int]) -> tuple[int, ...]:
        return tuple(
            sum(row[j] * vector[j] for j in range(len(vector))) for row in self.entries
        )

    @staticmethod
    def identity(k: int) -> "UnimodularMatrix":
        return UnimodularMatrix(_freeze(_identity(k)))


@dataclass(frozen=True)
class HermiteFactorization:
    U: UnimodularMatrix
    H: Matrix


@dataclass(frozen=True)
class SmithFactorization:
    U: UnimodularMatrix
    V: UnimodularMatrix
    S: Matrix


def hermite(m) -> HermiteFactorization:
    """Row-style Hermite normal form U*M = H.

    H is the canonical row echelon form over the integers: pivots are
    positive, entries above each pivot are reduced into [0, pivot), zero
    rows sit at the bottom.  H is unique for fixed M.
    """
    a = _validate_matrix(m)
    nrows, ncols = len(a), len(a[0])
    u = _identity(nrows)

    def row_op(i: int, j: int, q: int) -> None:
        # row_i -= q * row_j
        ai, aj = a[i], a[j]
        for t in range(ncols):
            ai[t] -= q * aj[t]
        ui, uj = u[i], u[j]
        for t in range(nrows):
            ui[t] -= q * uj[t]

    def swap(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def negate(i: int) -> None:
        a[i] = [-v for v in a[i]]
        u[i] = [-v for v in u[i]]

    rank = 0
    for col in range(ncols):
        if rank == nrows:
            break
        while True:
            live = [i for i in range(rank, nrows) if a[i][col] != 0]
            if not live:
                break
            best = min(live, key=lambda i: abs(a[i][col]))
            if best != rank:
                swap(rank, best)
            if a[rank][col] < 0:
                negate(rank)
            done = True
            for i in range(rank + 1, nrows):
                if a[i][col]:
                    row_op(i, rank, a[i][col] // a[rank][col])
                    if a[i][col]:
                        done = False
            if done:
                break
        if a[rank][col] != 0:
            for i in range(rank):
                q = a[i][col] // a[rank][col]
                if q:
                    row_op(i, rank, q)
            rank += 1
    return HermiteFactorization(UnimodularMatrix(_freeze(u)), _freeze(a))


def smith(m) -> SmithFactorization:
    """Smith normal form U*M*V = S: nonnegative diagonal, each entry
    dividing the next, zeros last."""
    a = _validate_matrix(m)
    nrows, ncols = len(a), len(a[0])
    u = _identity(nrows)
    v = _identity(ncols)

    def row_op(i, j, q):
        for t in range(ncols):
            a[i][t] -= q * a[j][t]
        for t in range(nrows):
            u[i][t] -= q * u[j][t]

    def col_op(i, j, q):
        # col_i -= q * col_j
        for t in range(nrows):
            a[t][i] -= q * a[t][j]
        for t in range(ncols):
            v[t][i] -= q * v[t][j]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for t in range(nrows):
            a[t][i], a[t][j] = a[t][j], a[t][i]
        for t in range(ncols):
            v[t][i], v[t][j] = v[t][j], v[t][i]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    for t in range(min(nrows, ncols)):
        while True:
            entries = [
                (abs(a[i][j]), i, j)
                for i in range(t, nrows)
                for j in range(t, ncols)
                if a[i][j] != 0
            ]
            if not entries:
                break
            _, pi, pj = min(entries)
            if pi != t:
                swap_rows(t, pi)
            if pj != t:
                swap_cols(t, pj)
            for i in range(t + 1, nrows):
                if a[i][t]:
                    row_op(i, t, a[i][t] // a[t][t])
            for j in range(t + 1, ncols):
                if a[t][j]:
                    col_op(j, t, a[t][j] // a[t][t])
            if any(a[i][t] for i in range(t + 1, nrows)) or any(
                a[t][j] for j in range(t + 1, ncols)
            ):
                continue
            # pivot must divide the untouched block; if not, fold the
            # offending row in and reduce again
            offender = None
            for i in range(t + 1, nrows):
                for j in range(t + 1, ncols):
                    if a[i][j] % a[t][t]:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            row_op(t, offender, -1)
        if t < min(nrows, ncols) and a[t][t] < 0:
            negate_row(t)
    return SmithFactorization(
        UnimodularMatrix(_freeze(u)), UnimodularMatrix(_freeze(v)), _freeze(a)
    )


def integer_rank(m) -> int:
    h = hermite(m).H
    return sum(1 for row in h if any(row))


def affine_dimension(support: Sequence[Exponent]) -> int:
    """Dimension of the affine span of a set of integer points."""
    points = [tuple(p) for p in support]
    if not points:
        raise ValueError("support must be nonempty")
    if len(points) == 1:
        return 0
    base = min(points)
    columns = [tuple(a - b for a, b in zip(p, base)) for p in points if p != base]
    rows = [[col[i] for col in columns] for i in range(len(base))]
    return integer_rank(rows)


def reduce_to_honest(
    f: SparsePolynomial,
) -> tuple[SparsePolynomial, UnimodularMatrix, int]:
    """Rewrite f as an honest d-variate polynomial via x = y^U.

    d is the affine dimension of the support.  The transform is a
    unimodular change of variables, so feasibility over the positive
    orthant and over the nonzero orthants is preserved in both
    directions.  Honest inputs come back unchanged with U = identity.
    """
    base = min(f.support)
    diffs = [tuple(a - b for a, b in zip(e, base)) for e in f.support]
    n = f.n
    columns = [d for d in diffs if any(d)]
    if not columns:
        return f, UnimodularMatrix.identity(n), 0
    rows = [[col[i] for col in columns] for i in range(n)]
    fact = hermite(rows)
    d = sum(1 for row in fact.H if any(row))
    if d == n:
        return f, UnimodularMatrix.identity(n), n
    u = fact.U
    new_terms = []
    for coeff, exponent in f.terms:
        shifted = tuple(a - b for a, b in zip(exponent, base))
        image = u.apply(shifted)
        assert all(v == 0 for v in image[d:]), "rank mismatch in honest reduction"
        new_terms.append((coeff, image[:d]))
    g = SparsePolynomial.from_terms(d, new_terms)
    return g, u, d


def canonical_simplex_form(f: SparsePolynomial) -> tuple[int, Fraction]:
    """Number of positive coefficients (minus one) and constant term of the
    canonical rescaled form of an honest (n+1)-nomial.

    After flipping the global sign so the base term (lexicographically
    smallest exponent) is positive, the canonical form looks like
    gamma + x1 + ... + x_l - x_{l+1} - ... - x_n.  Only (l, gamma) are
    returned; downstream sign decisions need nothing else.
    """
    m = len(f.terms)
    if m != f.n + 1 or affine_dimension(f.support) != f.n:
        raise NotHonestError(
            f"canonical simplex form needs an honest {f.n}-variate {f.n + 1}-nomial"
        )
    base = min(f.support)
    base_coeff = next(c for c, e in f.terms if e == base)
    sign = 1 if base_coeff > 0 else -1
    positives = sum(1 for c in f.coefficients if sign * c > 0)
    return positives - 1, Fraction(abs(base_coeff))


def _gcd_many(values) -> int:
    g = 0
    for v in values:
        g = gcd(g, abs(v))
    return g
