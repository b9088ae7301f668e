"""Cyclotomic polynomials, Euler's totient, and removal of trivial factors."""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from .poly import IntPoly


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> IntPoly:
    """The n-th cyclotomic polynomial, by exact division of z^n - 1 by the lower Phi_d.

    >>> cyclotomic(12)
    IntPoly('z^4 - z^2 + 1')
    """
    if n < 1:
        raise ValueError("cyclotomic index must be positive")
    p = IntPoly.monomial(n) - 1
    for d in range(1, n):
        if n % d == 0:
            p = p.divexact(cyclotomic(d))
    return p


@lru_cache(maxsize=8)
def _totient_table(limit: int) -> np.ndarray:
    phi = np.arange(limit + 1, dtype=np.int64)
    for p in range(2, limit + 1):
        if phi[p] == p:  # p is prime
            phi[p::p] -= phi[p::p] // p
    return phi


def totient(n: int) -> int:
    if n < 1:
        raise ValueError("totient of a non-positive integer")
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def indices_with_totient_at_most(degree: int) -> list[int]:
    """Every n >= 1 with phi(n) <= degree.

    Uses phi(n) >= n / 6.1 for 3 <= n <= 10^7 (Rosser-Schoenfeld), so n <= 6.1 * degree + 3.
    """
    if degree < 1:
        return []
    limit = int(6.1 * degree) + 10
    if limit > 10**7:
        raise ValueError("degree too large for the totient bound")
    phi = _totient_table(_round_up(limit))
    idx = np.nonzero(phi[1 : limit + 1] <= degree)[0] + 1
    return [int(i) for i in idx]


def _round_up(n: int) -> int:
    # keep the lru cache small by bucketing table sizes
    size = 1024
    while size < n:
        size *= 2
    return size


def _float_coeffs(p: IntPoly) -> np.ndarray:
    bits = max(abs(c).bit_length() for c in p.coeffs)
    s = max(0, bits - 60)
    g = np.array([float(c >> s) for c in p.coeffs])
    return g / np.max(np.abs(g))


def _candidate_orders(p: IntPoly, orders: list[int]) -> list[int]:
    """Orders n whose primitive root of unity might be a root of p.

    A float evaluation at exp(2 pi i / n) rejects n when |p(zeta)| is far above the rounding
    error bound; survivors are confirmed by exact division by the caller, so a loose threshold
    only costs time, never correctness.
    """
    g = _float_coeffs(p)
    j = np.arange(len(g))
    scale = np.sum(np.abs(g))
    keep = []
    chunk = 256
    for start in range(0, len(orders), chunk):
        ns = np.array(orders[start : start + chunk], dtype=np.float64)
        phases = np.exp(2j * np.pi * np.outer(1.0 / ns, j))
        vals = np.abs(phases @ g)
        for n, v in zip(orders[start : start + chunk], vals):
            if v <= 1e-6 * scale:
                keep.append(n)
    return keep


def strip_trivial_factors(p: IntPoly) -> tuple[IntPoly, list[tuple[int, int]], int]:
    """Split p = core * z^k * prod Phi_n^m.

    Returns ``(core, [(n, m), ...], k)`` where the core has no cyclotomic factor and a
    nonzero constant term.  Every n with phi(n) <= deg p is considered.
    """
    if not p:
        raise ValueError("cannot strip factors of the zero polynomial")
    k = p.trailing_zeros()
    core = p.shift(-k)
    factors: list[tuple[int, int]] = []
    if core.degree < 1:
        return core, factors, k
    for n in _candidate_orders(core, indices_with_totient_at_most(core.degree)):
        phi_n = cyclotomic(n)
        mult = 0
        while core.degree >= phi_n.degree:
            q, r = core.divmod_exact_lead(phi_n)
            if r:
                break
            core = q
            mult += 1
        if mult:
            factors.append((n, mult))
    factors.sort()
    return core, factors, k


def cyclotomic_product(factors: list[tuple[int, int]]) -> IntPoly:
    out = IntPoly([1])
    for n, m in factors:
        out = out * cyclotomic(n) ** m
    return out


def is_cyclotomic_product(p: IntPoly) -> bool:
    """True iff p is +-z^k times a product of cyclotomic polynomials."""
    core, _, _ = strip_trivial_factors(p)
    return core.degree == 0 and abs(core.lead) == 1
