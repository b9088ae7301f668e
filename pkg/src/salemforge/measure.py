"""Mahler measure of integer polynomials and Pisot/Salem polynomial certificates."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import mpmath

from .cyclotomic import strip_trivial_factors
from .errors import PrecisionUnreachable
from .poly import IntPoly, trace_polynomial
from .realroots import (
    RealAlgebraic,
    count_roots_above,
    sturm_count,
    unique_root_above,
)

DEFAULT_PRECISION = Fraction(1, 10**12)

GOLDEN_POLY = IntPoly([-1, -1, 1])
#: the golden ratio (1 + sqrt 5) / 2 as an exact real algebraic number
RHO = RealAlgebraic(GOLDEN_POLY, Fraction(8, 5), Fraction(13, 8))


def _digits_for(precision) -> int:
    precision = Fraction(precision)
    if precision <= 0:
        raise ValueError("precision must be positive")
    d = 0
    while Fraction(1, 10**d) > precision:
        d += 1
    return d


def mahler_measure(p: IntPoly, precision=DEFAULT_PRECISION):
    """M(p) = |lead| * prod max(1, |alpha|), returned as an mpmath number.

    Cyclotomic factors and powers of z are removed exactly first.  Reciprocal cores with a
    real-rooted trace polynomial are handled through the roots t > 2 of that polynomial,
    each contributing (|t| + sqrt(t^2 - 4)) / 2.  Anything else goes to complex root finding
    at increasing working precision until two successive results agree.
    """
    if not p:
        raise ValueError("Mahler measure of the zero polynomial")
    digits = _digits_for(precision)
    core, _, _ = strip_trivial_factors(p)
    if core.degree < 1:
        return mpmath.mpf(abs(core.lead))
    trace = _real_rooted_trace(core)
    if trace is not None:
        return _measure_from_trace(trace, digits) * abs(core.lead)
    return _measure_numeric(core, digits)


def _real_rooted_trace(core: IntPoly) -> Optional[IntPoly]:
    if core.degree % 2 or not core.is_reciprocal():
        return None
    h = trace_polynomial(core)
    if h.degree < 1 or sturm_count(h, None, None) != _distinct_count(h):
        return None
    return h


def _distinct_count(h: IntPoly) -> int:
    from .poly import squarefree_part

    return squarefree_part(h).degree


def _measure_from_trace(h: IntPoly, digits: int):
    from .realroots import real_roots_above

    total = mpmath.mpf(1)
    eps = Fraction(1, 10 ** (digits + 6))
    with mpmath.workdps(digits + 15):
        for root, mult in real_roots_above(h, 2):
            t = root.refine_fast(eps).approx(digits + 10)
            total *= ((t + mpmath.sqrt(t * t - 4)) / 2) ** mult
        for root, mult in real_roots_above(h.negate_var(), 2):
            t = root.refine_fast(eps).approx(digits + 10)
            total *= ((t + mpmath.sqrt(t * t - 4)) / 2) ** mult
        return +total


def _measure_numeric(p: IntPoly, digits: int):
    coeffs = list(reversed(p.coeffs))
    prev = None
    dps = digits + 10
    for _ in range(6):
        with mpmath.workdps(dps):
            try:
                roots = mpmath.polyroots(coeffs, maxsteps=200 + 20 * p.degree, extraprec=4 * dps + p.degree * 4)
            except mpmath.libmp.NoConvergence:
                dps *= 2
                continue
            m = mpmath.mpf(abs(p.lead))
            for r in roots:
                a = abs(r)
                if a > 1:
                    m *= a
            if prev is not None and abs(m - prev) <= mpmath.mpf(10) ** (-digits - 2) * max(1, m):
                return +m
            prev = m
        dps *= 2
    raise PrecisionUnreachable(f"Mahler measure did not stabilise for {p}")


# -- zeros in the unit disk ------------------------------------------------------

def count_zeros_in_unit_disk(p: IntPoly) -> Optional[int]:
    """Exact number of zeros of p in |z| < 1 by the Schur-Cohn recursion.

    Returns ``None`` when the recursion degenerates, which always happens if p has a zero
    on the unit circle (and occasionally otherwise).
    """
    if not p:
        raise ValueError("zero polynomial")
    stack = []
    q = p
    while True:
        zeros = q.trailing_zeros()
        q = q.shift(-zeros)
        if q.degree == 0:
            return _unwind(stack, zeros)
        a0, an = q.coeffs[0], q.lead
        delta = a0 * a0 - an * an
        if delta == 0:
            return None
        t = q * a0 - q.reversal() * an
        if not t:
            return None
        stack.append((zeros, q.degree, delta > 0))
        q = t.primitive()


def _unwind(stack, tail_zeros: int) -> int:
    # Z(q_i) = zeros_i + (Z(q_{i+1}) if delta > 0 else n_i - Z(q_{i+1}))
    z = tail_zeros
    for zeros, n, positive in reversed(stack):
        z = zeros + (z if positive else n - z)
    return z


@dataclass(frozen=True)
class PisotCertificate:
    is_pisot: bool
    theta: Optional[RealAlgebraic]
    margin_ok: bool
    reason: str = ""


def count_zeros_in_disk(p: IntPoly, radius) -> Optional[int]:
    """Zeros of p in |z| < radius for a positive rational radius; ``None`` if degenerate."""
    r = Fraction(radius)
    if r <= 0:
        raise ValueError("radius must be positive")
    return count_zeros_in_unit_disk(p.scale_var(r.numerator, r.denominator))


def certify_pisot(p: IntPoly, margin=Fraction(1, 10**9)) -> PisotCertificate:
    """Check that p has one real root theta > 1 and all other roots in |z| < 1.

    Units have |p(0)| = |lead|, which makes the plain Schur-Cohn recursion degenerate at
    the first step, so the count is taken on the disk of radius 1 - margin instead, where
    ``margin_ok`` is then True.  If some root sits in the thin annulus the radius is pushed
    closer to 1 and the result is flagged with ``margin_ok = False``.
    p need not be irreducible; it must be monic up to sign with a nonzero constant term.
    """
    if p.degree < 1:
        return PisotCertificate(False, None, False, "constant")
    if abs(p.lead) != 1:
        return PisotCertificate(False, None, False, "not monic")
    if p.coeffs[0] == 0:
        return PisotCertificate(False, None, False, "zero root")
    if sturm_count(p, 1, None) != 1 or p.sign_at(1) == 0:
        return PisotCertificate(False, None, False, "needs exactly one real root above 1")
    target = p.degree - 1
    margin = Fraction(margin)
    for shrink in (1, 10**3, 10**6, 10**9):
        inside = count_zeros_in_disk(p, 1 - margin / shrink)
        if inside == target:
            return PisotCertificate(True, unique_root_above(p, 1), shrink == 1)
        if inside is not None and inside > target:
            break
    return PisotCertificate(False, None, False, "roots on or outside the unit circle besides theta")


def is_pisot_polynomial(p: IntPoly) -> bool:
    return certify_pisot(p).is_pisot


def is_salem_polynomial(p: IntPoly) -> bool:
    """Reciprocal, even degree >= 4, one root > 1, every other root on or inside the circle.

    Irreducibility is not certified; cyclotomic factors are rejected.
    """
    if p.degree < 4 or p.degree % 2 or abs(p.lead) != 1 or not p.is_reciprocal():
        return False
    core, factors, k = strip_trivial_factors(p)
    if factors or k:
        return False
    h = trace_polynomial(p)
    if sturm_count(h, None, None) != h.degree:
        return False  # not real-rooted with distinct roots
    return count_roots_above(h, 2) == 1 and count_roots_above(h, -2) == h.degree


def salem_root(p: IntPoly) -> RealAlgebraic:
    """The unique root > 1 of a polynomial known to have exactly one there."""
    return unique_root_above(p, 1)
