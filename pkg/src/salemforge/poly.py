"""
Dense integer polynomials.

A polynomial is stored as a tuple of Python ints, lowest degree first, so
``IntPoly([1, 0, -1])`` is ``1 - z^2``.  Every operation is exact.
"""
from __future__ import annotations

import itertools
import json
import re
from fractions import Fraction
from math import gcd as _igcd
from typing import Iterable, Sequence

from .errors import HalvedParityError, ParseError


def _trim(coeffs: Sequence[int]) -> tuple[int, ...]:
    end = len(coeffs)
    while end and coeffs[end - 1] == 0:
        end -= 1
    return tuple(int(c) for c in coeffs[:end])


class IntPoly:
    """Immutable univariate polynomial with arbitrary-precision integer coefficients.

    >>> IntPoly([-1, -1, 0, 1])
    IntPoly('z^3 - z - 1')
    """

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable[int] = ()):
        self.coeffs: tuple[int, ...] = _trim(list(coeffs))
        self._hash = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def monomial(cls, k: int, c: int = 1) -> IntPoly:
        return cls([0] * k + [c])

    @classmethod
    def const(cls, c: int) -> IntPoly:
        return cls([c])

    @classmethod
    def from_roots(cls, roots: Iterable[int]) -> IntPoly:
        p = cls([1])
        for r in roots:
            p = p * cls([-r, 1])
        return p

    # -- basic properties -------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __len__(self) -> int:
        return len(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = IntPoly([other])
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = _igcd(g, c)
            if g == 1:
                break
        return g

    def primitive(self) -> IntPoly:
        """Divide out the content and make the leading coefficient positive."""
        if not self.coeffs:
            return self
        g = self.content()
        if self.lead < 0:
            g = -g
        if g == 1:
            return self
        return IntPoly([c // g for c in self.coeffs])

    def trailing_zeros(self) -> int:
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return 0

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> IntPoly:
        if isinstance(other, IntPoly):
            return other
        if isinstance(other, int):
            return IntPoly([other])
        raise TypeError(f"cannot combine IntPoly with {type(other).__name__}")

    def __add__(self, other) -> IntPoly:
        other = self._coerce(other)
        return IntPoly([a + b for a, b in itertools.zip_longest(self.coeffs, other.coeffs, fillvalue=0)])

    __radd__ = __add__

    def __neg__(self) -> IntPoly:
        return IntPoly([-c for c in self.coeffs])

    def __sub__(self, other) -> IntPoly:
        other = self._coerce(other)
        return IntPoly([a - b for a, b in itertools.zip_longest(self.coeffs, other.coeffs, fillvalue=0)])

    def __rsub__(self, other) -> IntPoly:
        return self._coerce(other) - self

    def __mul__(self, other) -> IntPoly:
        if isinstance(other, int):
            return IntPoly([c * other for c in self.coeffs]) if other else IntPoly()
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPoly()
        if len(a) < len(b):
            a, b = b, a
        out = [0] * (len(a) + len(b) - 1)
        for j, d in enumerate(b):
            if d == 0:
                continue
            for i, c in enumerate(a, j):
                out[i] += c * d
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> IntPoly:
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result, base = IntPoly([1]), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def shift(self, k: int) -> IntPoly:
        """Multiply by z^k (k may be negative when the low coefficients vanish)."""
        if k >= 0:
            return IntPoly([0] * k + list(self.coeffs)) if self.coeffs else self
        if any(self.coeffs[:-k]):
            raise ValueError("shift would drop nonzero coefficients")
        return IntPoly(self.coeffs[-k:])

    def pseudo_divmod(self, other: IntPoly) -> tuple[IntPoly, IntPoly, int]:
        """Return (q, r, m) with lead(other)^m * self = q*other + r, deg r < deg other."""
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        db, lb = other.degree, other.lead
        if len(r) - 1 < db:
            return IntPoly(), self, 0
        q = [0] * (len(r) - db)
        m = 0
        b = other.coeffs
        for k in range(len(r) - 1, db - 1, -1):
            c = r[k]
            if c == 0:
                continue
            if c % lb:
                # scale everything so the leading term divides
                r = [x * lb for x in r]
                q = [x * lb for x in q]
                m += 1
                c = r[k]
            t = c // lb
            q[k - db] += t
            base = k - db
            for i, bi in enumerate(b):
                if bi:
                    r[base + i] -= t * bi
        return IntPoly(q), IntPoly(r[:db] if db > 0 else []), m

    def divmod_exact_lead(self, other: IntPoly) -> tuple[IntPoly, IntPoly]:
        """Division with remainder when lead(other) is +-1."""
        q, r, m = self.pseudo_divmod(other)
        if m:
            raise ValueError("divisor is not monic")
        return q, r

    def divexact(self, other: IntPoly) -> IntPoly:
        """Exact quotient self/other; raises ValueError if other does not divide self over Z."""
        q, r, m = self.pseudo_divmod(other)
        if r:
            raise ValueError("polynomial does not divide exactly")
        if m:
            s = other.lead ** m
            if any(c % s for c in q.coeffs):
                raise ValueError("quotient has non-integer coefficients")
            q = IntPoly([c // s for c in q.coeffs])
        return q

    def divides(self, other: IntPoly) -> bool:
        """True when self divides other over Q."""
        if not self:
            return not other
        _, r, _ = other.pseudo_divmod(self)
        return not r

    def __floordiv__(self, other) -> IntPoly:
        return self.divexact(self._coerce(other))

    # -- calculus / transforms -------------------------------------------
    def derivative(self) -> IntPoly:
        return IntPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def reversal(self, degree: int | None = None) -> IntPoly:
        """z^degree * p(1/z); degree defaults to deg p."""
        d = self.degree if degree is None else degree
        if d < self.degree:
            raise ValueError("reversal degree below polynomial degree")
        return IntPoly(list(reversed(self.coeffs + (0,) * (d - self.degree))))

    def negate_var(self) -> IntPoly:
        """p(-z)."""
        return IntPoly([-c if i & 1 else c for i, c in enumerate(self.coeffs)])

    def compose_square(self) -> IntPoly:
        """p(z^2)."""
        out = [0] * (2 * len(self.coeffs) - 1) if self.coeffs else []
        for i, c in enumerate(self.coeffs):
            out[2 * i] = c
        return IntPoly(out)

    def taylor_shift(self, a: int) -> IntPoly:
        """p(z + a) for an integer a (Horner scheme, O(n^2) additions)."""
        c = list(self.coeffs)
        n = len(c)
        if a == 0 or n < 2:
            return self
        for i in range(n - 1):
            for k in range(n - 2, i - 1, -1):
                c[k] += a * c[k + 1]
        return IntPoly(c)

    def scale_var(self, num: int, den: int = 1) -> IntPoly:
        """den^deg * p(num/den * z), an integer polynomial."""
        d = self.degree
        return IntPoly([c * num**i * den ** (d - i) for i, c in enumerate(self.coeffs)])

    # -- evaluation -------------------------------------------------------
    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_fraction(self, x: Fraction) -> Fraction:
        x = Fraction(x)
        p, q = x.numerator, x.denominator
        d = self.degree
        if d < 0:
            return Fraction(0)
        acc = 0
        qpow = 1
        # sum c_i p^i q^(d-i), built by Horner in p with growing q powers
        for c in reversed(self.coeffs):
            acc = acc * p + c * qpow
            qpow *= q
        return Fraction(acc, q**d)

    def sign_at(self, x: Fraction | int) -> int:
        """Exact sign of p(x) for rational x."""
        x = Fraction(x)
        p, q = x.numerator, x.denominator
        acc = 0
        qpow = 1
        for c in reversed(self.coeffs):
            acc = acc * p + c * qpow
            qpow *= q
        return (acc > 0) - (acc < 0)

    # -- predicates -------------------------------------------------------
    def is_reciprocal(self) -> bool:
        """True iff the coefficient sequence is a palindrome."""
        return self.coeffs == self.coeffs[::-1]

    def is_antireciprocal(self) -> bool:
        return self.coeffs == tuple(-c for c in self.coeffs[::-1])

    def parity(self) -> int | None:
        """0 if every exponent is even, 1 if every exponent is odd, None if mixed or zero poly."""
        exps = {i & 1 for i, c in enumerate(self.coeffs) if c}
        return exps.pop() if len(exps) == 1 else None

    # -- formatting -------------------------------------------------------
    def to_string(self, var: str = "z") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            mono = "" if i == 0 else var if i == 1 else f"{var}^{i}"
            body = str(a) if (a != 1 or not mono) else ""
            term = body + mono
            if not parts:
                parts.append(("-" if c < 0 else "") + term)
            else:
                parts.append(f" {sign} {term}")
        return "".join(parts)

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"IntPoly('{self.to_string()}')"

    def to_text(self) -> str:
        """Ascending space-separated coefficients; the zero polynomial is ``0``."""
        return " ".join(str(c) for c in self.coeffs) if self.coeffs else "0"

    @classmethod
    def from_text(cls, text: str) -> IntPoly:
        tokens = text.split()
        if not tokens:
            raise ParseError("empty polynomial text")
        try:
            return cls(int(t) for t in tokens)
        except ValueError as exc:
            raise ParseError(f"bad coefficient in {text!r}") from exc

    def to_json(self) -> str:
        return json.dumps({"coeffs": list(self.coeffs)})

    @classmethod
    def from_json(cls, text: str | dict) -> IntPoly:
        data = json.loads(text) if isinstance(text, str) else text
        try:
            coeffs = data["coeffs"]
        except (KeyError, TypeError) as exc:
            raise ParseError("polynomial JSON needs a 'coeffs' list") from exc
        if not all(isinstance(c, int) and not isinstance(c, bool) for c in coeffs):
            raise ParseError("polynomial coefficients must be integers")
        return cls(coeffs)

    @classmethod
    def parse(cls, text: str) -> IntPoly:
        """Accept the text form, the JSON form, or a human expression like ``z^3 - z - 1``."""
        s = text.strip()
        if s.startswith("{"):
            return cls.from_json(s)
        if re.fullmatch(r"[-+]?\d+(\s+[-+]?\d+)*", s):
            return cls.from_text(s)
        return _parse_expression(s)


_TERM = re.compile(r"([+-]?)\s*(\d*)\s*\*?\s*(?:([a-z])(?:\^(\d+))?)?")


def _parse_expression(s: str) -> IntPoly:
    src = s.replace(" ", "")
    if not src:
        raise ParseError("empty polynomial expression")
    coeffs: dict[int, int] = {}
    pos = 0
    while pos < len(src):
        m = _TERM.match(src, pos)
        if not m or m.end() == pos:
            raise ParseError(f"cannot parse polynomial {s!r}")
        sign, num, var, exp = m.groups()
        if not num and not var:
            raise ParseError(f"cannot parse polynomial {s!r}")
        c = int(num) if num else 1
        if sign == "-":
            c = -c
        e = (int(exp) if exp else 1) if var else 0
        coeffs[e] = coeffs.get(e, 0) + c
        pos = m.end()
    top = max(coeffs)
    return IntPoly([coeffs.get(i, 0) for i in range(top + 1)])


Z = IntPoly([0, 1])
ONE = IntPoly([1])


# -- gcd and square-free machinery ---------------------------------------------

def poly_gcd(a: IntPoly, b: IntPoly) -> IntPoly:
    """Primitive gcd over Q (positive leading coefficient); gcd(0, 0) = 0."""
    a, b = a.primitive(), b.primitive()
    if not a:
        return b
    if not b:
        return a
    if a.degree < b.degree:
        a, b = b, a
    while b:
        if b.degree == 0:
            return ONE
        _, r, _ = a.pseudo_divmod(b)
        a, b = b, r.primitive()
    return a.primitive()


def squarefree_part(p: IntPoly) -> IntPoly:
    """Product of the distinct irreducible factors of p (primitive)."""
    if p.degree <= 0:
        return p.primitive()
    g = poly_gcd(p, p.derivative())
    return p.primitive().divexact(g).primitive() if g.degree > 0 else p.primitive()


def squarefree_decomposition(p: IntPoly) -> list[tuple[IntPoly, int]]:
    """Yun's algorithm: p = c * prod f_i^i with f_i square-free and pairwise coprime."""
    p = p.primitive()
    if p.degree <= 0:
        return []
    out = []
    pq = _QPoly(p.coeffs)
    dq = pq.deriv()
    a = pq.gcd(dq)
    b = pq / a
    d = dq / a - b.deriv()
    i = 1
    while b.degree > 0:
        f = b.gcd(d)
        if f.degree > 0:
            out.append((f.to_intpoly(), i))
        b = b / f
        d = d / f - b.deriv()
        i += 1
    return out


class _QPoly:
    """Minimal polynomial over Q used internally by Yun's algorithm."""

    def __init__(self, coeffs):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.c = [Fraction(x) for x in c]

    @property
    def degree(self):
        return len(self.c) - 1

    def __sub__(self, o):
        n = max(len(self.c), len(o.c))
        return _QPoly([(self.c[i] if i < len(self.c) else 0) - (o.c[i] if i < len(o.c) else 0) for i in range(n)])

    def deriv(self):
        return _QPoly([i * x for i, x in enumerate(self.c)][1:])

    def divmod(self, o):
        r = list(self.c)
        q = [Fraction(0)] * max(len(r) - len(o.c) + 1, 1)
        lo = o.c[-1]
        for k in range(len(r) - 1, len(o.c) - 2, -1):
            if k < len(o.c) - 1:
                break
            t = r[k] / lo
            if t:
                q[k - len(o.c) + 1] = t
                for i, x in enumerate(o.c):
                    r[k - len(o.c) + 1 + i] -= t * x
        return _QPoly(q), _QPoly(r[: len(o.c) - 1])

    def __truediv__(self, o):
        q, r = self.divmod(o)
        return q

    def gcd(self, o):
        a, b = self, o
        while b.c:
            _, r = a.divmod(b)
            a, b = b, r
        if not a.c:
            return a
        lc = a.c[-1]
        return _QPoly([x / lc for x in a.c])

    def to_intpoly(self):
        from math import lcm

        den = 1
        for x in self.c:
            den = lcm(den, x.denominator)
        return IntPoly([int(x * den) for x in self.c]).primitive()


# -- Chebyshev-type substitutions ---------------------------------------------

def chebyshev_substitute(p: IntPoly, mode: str = "plain") -> IntPoly:
    """Map a polynomial in x to a reciprocal polynomial in z.

    ``plain``  : z^d * p(z + 1/z)
    ``halved`` : z^(d/2) * p(sqrt z + 1/sqrt z); needs p even or odd.
    """
    d = p.degree
    if d < 0:
        return IntPoly()
    c = p.coeffs
    if mode == "plain":
        t = [c[d]]
        for k in range(d - 1, -1, -1):
            # t <- t*(z^2+1) + c_k z^(d-k)
            nt = [0] * (len(t) + 2)
            for i, v in enumerate(t):
                if v:
                    nt[i] += v
                    nt[i + 2] += v
            nt[d - k] += c[k]
            t = nt
        return IntPoly(t)
    if mode == "halved":
        if p.parity() is None and d > 0:
            raise HalvedParityError("halved substitution needs an even or odd polynomial")
        if any(c[k] for k in range(d) if (d - k) & 1):
            raise HalvedParityError("exponents must share the parity of the degree")
        t = [c[d]]
        j = 0
        for k in range(d - 2, -1, -2):
            j += 1
            # t <- t*(z+1)^2 + c_k z^j
            nt = [0] * (len(t) + 2)
            for i, v in enumerate(t):
                if v:
                    nt[i] += v
                    nt[i + 1] += 2 * v
                    nt[i + 2] += v
            nt[j] += c[k]
            t = nt
        out = IntPoly(t)
        # odd p = x * psi(x^2) contributes the extra factor sqrt(z) * (sqrt z + 1/sqrt z) = z + 1
        return out * IntPoly([1, 1]) if d % 2 else out
    raise ValueError(f"unknown substitution mode {mode!r}")


def trace_polynomial(p: IntPoly) -> IntPoly:
    """Inverse of the plain substitution: h with z^(d/2) h(z + 1/z) = p for reciprocal p of even degree."""
    if not p.is_reciprocal() or p.degree % 2:
        raise ValueError("trace polynomial needs a reciprocal polynomial of even degree")
    d = p.degree // 2
    rem = list(p.coeffs)
    h = [0] * (d + 1)
    # peel off c * z^(d-k) (z^2+1)^k from the top, k = d, d-1, ..., 0
    binom_rows = _binomial_rows(d)
    for k in range(d, -1, -1):
        top = d + k
        c = rem[top]
        if c == 0:
            continue
        h[k] = c
        row = binom_rows[k]
        base = d - k
        for j, b in enumerate(row):
            rem[base + 2 * j] -= c * b
    if any(rem):
        raise ValueError("polynomial is not in the image of the substitution")
    return IntPoly(h)


def _binomial_rows(n: int) -> list[list[int]]:
    rows = [[1]]
    for _ in range(n):
        prev = rows[-1]
        rows.append([1] + [prev[i] + prev[i + 1] for i in range(len(prev) - 1)] + [1])
    return rows
