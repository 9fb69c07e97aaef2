"""Exact comparison of integer power products.

Equality of products  prod a_i^{u_i}  is decided exactly through a
gcd-free basis (no factoring needed).  Strict comparisons go through
interval enclosures of the linear form in logarithms, starting at 64 bits
and doubling; the Nesterenko-style lower bound on nonzero linear forms in
logarithms caps the precision that can ever be needed, and small operands
short-circuit to direct big-integer comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

import mpmath

# below this estimated magnitude (bits) the products are compared as plain ints
_EXACT_BITS = 384
_START_PREC = 64


@dataclass(frozen=True)
class SignedProduct:
    """Formal product of integer powers: prod base^exponent.

    Bases are nonzero, exponents nonnegative; the empty product is 1.
    """

    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        for base, exponent in self.factors:
            if base == 0:
                raise ValueError("zero base in signed product")
            if exponent < 0:
                raise ValueError("negative exponent in signed product")

    @staticmethod
    def from_pairs(pairs: Iterable[tuple[int, int]]) -> "SignedProduct":
        return SignedProduct(tuple((int(b), int(e)) for b, e in pairs))

    def value(self) -> int:
        out = 1
        for base, exponent in self.factors:
            out *= base**exponent
        return out

    def sign(self) -> int:
        flips = sum(e for b, e in self.factors if b < 0)
        return -1 if flips % 2 else 1

    def magnitude_factors(self) -> tuple[tuple[int, int], ...]:
        """Merged |base| -> exponent map with trivial factors dropped."""
        merged: dict[int, int] = {}
        for base, exponent in self.factors:
            mag = abs(base)
            if mag == 1 or exponent == 0:
                continue
            merged[mag] = merged.get(mag, 0) + exponent
        return tuple(sorted(merged.items()))


ONE = SignedProduct(())


@dataclass(frozen=True)
class GcdFreeBasis:
    """Pairwise-coprime integers through which the inputs factor exactly."""

    gamma: tuple[int, ...]
    exponents: tuple[tuple[int, ...], ...]

    def reconstruct(self, row: int) -> int:
        out = 1
        for g, e in zip(self.gamma, self.exponents[row]):
            out *= g**e
        return out


def _coprime_refine(values: Sequence[int]) -> list[int]:
    stack = [v for v in values if v > 1]
    basis: list[int] = []
    while stack:
        x = stack.pop()
        if x == 1:
            continue
        for i, g in enumerate(basis):
            d = gcd(x, g)
            if d > 1:
                basis.pop(i)
                stack.extend((g // d, d, x // d))
                break
        else:
            basis.append(x)
    return sorted(set(basis))


def gcd_free_basis(values: Sequence[int]) -> GcdFreeBasis:
    """Factor refinement: pairwise-coprime basis with exact reconstruction.

    Inputs equal to 1 get all-zero exponent rows.  Raises ValueError on
    values <= 0.
    """
    values = [int(v) for v in values]
    for v in values:
        if v <= 0:
            raise ValueError(f"gcd-free basis needs positive integers, got {v}")
    basis = _coprime_refine(values)
    while True:
        rows = []
        leftover = None
        for v in values:
            rest = v
            row = []
            for g in basis:
                e = 0
                while rest % g == 0:
                    rest //= g
                    e += 1
                row.append(e)
            if rest != 1:
                leftover = rest
                break
            rows.append(tuple(row))
        if leftover is None:
            return GcdFreeBasis(tuple(basis), tuple(rows))
        # multiplicity mismatch against a composite basis element: refine it in
        basis = _coprime_refine(basis + [leftover])


def products_equal(lhs: SignedProduct, rhs: SignedProduct) -> bool:
    """True iff the two products are equal as integers.

    Sign parity first, then absolute values are compared per element of a
    shared gcd-free basis.
    """
    if lhs.sign() != rhs.sign():
        return False
    left = lhs.magnitude_factors()
    right = rhs.magnitude_factors()
    bases = sorted({b for b, _ in left} | {b for b, _ in right})
    if not bases:
        return True
    table = gcd_free_basis(bases)
    width = len(table.gamma)
    row_of = {b: table.exponents[i] for i, b in enumerate(bases)}
    for j in range(width):
        if sum(e * row_of[b][j] for b, e in left) != sum(
            e * row_of[b][j] for b, e in right
        ):
            return False
    return True


def _mpf_to_fraction(x) -> Fraction:
    sign, man, exp, _ = x._mpf_
    if man == 0:
        raise ValueError(f"cannot convert {x} to a fraction")
    frac = Fraction(man) * Fraction(2) ** exp
    return -frac if sign else frac


@dataclass(frozen=True)
class BakerBound:
    """Worst-case precision bound (bits) for a sign-of-log-linear-form query.

    `bits` follows the sign-algorithm formula; `nesterenko_bits` is the
    conservative variant carrying the (M+N+2)^{9/2} factor.  The cap used
    by the comparison loop is the larger of the two.
    """

    bits: Fraction
    nesterenko_bits: Fraction
    m_count: int
    n_count: int
    u_max: int
    log_magnitudes: tuple[int, ...]

    @property
    def cap_bits(self) -> Fraction:
        guard = math.ceil(math.log2(max(self.m_count, self.n_count, 2)))
        return 2 + max(self.bits, self.nesterenko_bits) + guard


def baker_bound(
    m_count: int,
    n_count: int,
    u_max: int,
    alphas: Sequence[int],
    betas: Sequence[int],
) -> BakerBound:
    """Upper bound on the bits needed to separate two log-linear forms.

    bits = (2.9/log 2) * (2e)^(2M+2N+6) * (1 + log U) * prod log a * prod log b
    with natural logarithms, returned as an exact rational upper bound on
    the real value.
    """
    if m_count < 1 or n_count < 1 or u_max < 1:
        raise ValueError("factor counts and exponent bound must be positive")
    if len(alphas) != m_count or len(betas) != n_count:
        raise ValueError("list lengths must match the stated factor counts")
    for b in list(alphas) + list(betas):
        if b < 2:
            raise ValueError(f"bases must be >= 2, got {b}")
    old_prec = mpmath.iv.prec
    try:
        mpmath.iv.prec = 96
        iv = mpmath.iv
        ln2 = iv.log(2)
        two_e = 2 * iv.exp(1)
        log_alpha = iv.mpf(1)
        for a in alphas:
            log_alpha *= iv.log(int(a))
        log_beta = iv.mpf(1)
        for b in betas:
            log_beta *= iv.log(int(b))
        k = m_count + n_count
        coeff = iv.mpf(29) / 10
        e_algo = (
            (coeff / ln2)
            * two_e ** (2 * k + 6)
            * (1 + iv.log(int(u_max)))
            * log_alpha
            * log_beta
        )
        e_nest_nats = (
            coeff
            * iv.sqrt(iv.mpf((k + 2) ** 9))
            * two_e ** (2 * k + 6)
            * (2 + iv.log(int(u_max)))
            * log_alpha
            * log_beta
        )
        e_nest = e_nest_nats / ln2
        bits = _mpf_to_fraction(e_algo.b)
        nest_bits = _mpf_to_fraction(e_nest.b)
    finally:
        mpmath.iv.prec = old_prec
    bound = BakerBound(
        bits=bits,
        nesterenko_bits=nest_bits,
        m_count=m_count,
        n_count=n_count,
        u_max=u_max,
        log_magnitudes=tuple(list(alphas) + list(betas)),
    )
    assert bound.bits >= 1
    return bound


_LOG_CACHE: dict[tuple[int, int], object] = {}


def _cached_log(base: int, prec: int):
    key = (base, prec)
    hit = _LOG_CACHE.get(key)
    if hit is None:
        hit = mpmath.iv.log(base)
        if len(_LOG_CACHE) > 4096:
            _LOG_CACHE.clear()
        _LOG_CACHE[key] = hit
    return hit


@dataclass(frozen=True)
class CompareResult:
    sign: int
    bits_used: int
    cap_bits: Fraction | None
    exact_fallback: bool


def _estimated_bits(factors: Sequence[tuple[int, int]]) -> float:
    return sum(e * math.log2(b) for b, e in factors)


def _compare_magnitudes(
    left: Sequence[tuple[int, int]], right: Sequence[tuple[int, int]]
) -> CompareResult:
    # cancel shared factors; comparisons are invariant under dividing both
    # sides by the same positive integer
    lmap = dict(left)
    rmap = dict(right)
    for base in set(lmap) & set(rmap):
        common = min(lmap[base], rmap[base])
        lmap[base] -= common
        rmap[base] -= common
    left = tuple(sorted((b, e) for b, e in lmap.items() if e))
    right = tuple(sorted((b, e) for b, e in rmap.items() if e))
    if not left and not right:
        return CompareResult(0, 0, None, False)
    if not left:
        return CompareResult(-1, 0, None, False)
    if not right:
        return CompareResult(1, 0, None, False)
    if max(_estimated_bits(left), _estimated_bits(right)) <= _EXACT_BITS:
        lv = 1
        for b, e in left:
            lv *= b**e
        rv = 1
        for b, e in right:
            rv *= b**e
        s = (lv > rv) - (lv < rv)
        return CompareResult(s, 0, None, False)
    u_max = max(e for _, e in left + right)
    bound = baker_bound(
        len(left), len(right), u_max, [b for b, _ in left], [b for b, _ in right]
    )
    cap = bound.cap_bits
    prec = _START_PREC
    old_prec = mpmath.iv.prec
    try:
        while Fraction(prec) <= cap:
            mpmath.iv.prec = prec
            form = mpmath.iv.mpf(0)
            for b, e in left:
                form += e * _cached_log(b, prec)
            for b, e in right:
                form -= e * _cached_log(b, prec)
            if form.a > 0:
                return CompareResult(1, prec, cap, False)
            if form.b < 0:
                return CompareResult(-1, prec, cap, False)
            prec *= 2
    finally:
        mpmath.iv.prec = old_prec
    # unreachable when the products differ, by the logarithm lower bound;
    # kept as an exact safety net
    lv = 1
    for b, e in left:
        lv *= b**e
    rv = 1
    for b, e in right:
        rv *= b**e
    s = (lv > rv) - (lv < rv)
    return CompareResult(s, prec, cap, True)


def product_compare_detailed(lhs: SignedProduct, rhs: SignedProduct) -> CompareResult:
    """Sign of lhs - rhs with precision bookkeeping."""
    if products_equal(lhs, rhs):
        return CompareResult(0, 0, None, False)
    sl, sr = lhs.sign(), rhs.sign()
    if sl != sr:
        return CompareResult(1 if sl > sr else -1, 0, None, False)
    result = _compare_magnitudes(lhs.magnitude_factors(), rhs.magnitude_factors())
    sign = result.sign if sl > 0 else -result.sign
    return CompareResult(sign, result.bits_used, result.cap_bits, result.exact_fallback)


def product_compare(lhs: SignedProduct, rhs: SignedProduct) -> int:
    """Sign in {-1, 0, +1} of (prod lhs) - (prod rhs), decided exactly."""
    return product_compare_detailed(lhs, rhs).sign
