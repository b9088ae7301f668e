"""Exact characteristic polynomials and eigenvalue counting for graphs."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import numpy as np

from .graph import Graph
from .poly import IntPoly, squarefree_part
from .realroots import (
    Bound,
    RealAlgebraic,
    count_roots_between,
    largest_real_root,
    sturm_count,
)

X = IntPoly([0, 1])

# Faddeev-LeVerrier intermediate entries stay below 2^63 up to this size
_INT64_LIMIT = 10


def char_poly(g: Graph) -> IntPoly:
    """det(xI - A) as an integer polynomial in x.

    Tree components use the rooted recursion chi(T_v) = x prod chi(T_c) - sum_c chi(T_c - c)
    prod_{c' != c} chi(T_c'); other components use Faddeev-LeVerrier with exact integers.
    """
    return _char_poly_cached(g)


@lru_cache(maxsize=65536)
def _char_poly_cached(g: Graph) -> IntPoly:
    if g.n == 0:
        return IntPoly([1])
    comps = g.components()
    if len(comps) == 1:
        return _connected_char_poly(g)
    out = IntPoly([1])
    for c in comps:
        out = out * _connected_char_poly(g.induced_subgraph(c))
    return out


def _connected_char_poly(g: Graph) -> IntPoly:
    if g.m == g.n - 1:
        return _tree_char_poly(g)
    return char_poly_faddeev(g)


def _tree_char_poly(g: Graph, root: int = 0) -> IntPoly:
    parent = [-1] * g.n
    order = [root]
    seen = [False] * g.n
    seen[root] = True
    for v in order:
        for w in g.neighbors(v):
            if not seen[w]:
                seen[w] = True
                parent[w] = v
                order.append(w)
    f: list = [None] * g.n  # chi of the subtree at v
    h: list = [None] * g.n  # chi of that subtree with v removed
    for v in reversed(order):
        kids = [w for w in g.neighbors(v) if w != parent[v]]
        f[v], h[v] = _combine_children([f[c] for c in kids], [h[c] for c in kids])
    return f[root]


def _combine_children(fs: list[IntPoly], hs: list[IntPoly]) -> tuple[IntPoly, IntPoly]:
    if not fs:
        return X, IntPoly([1])
    if len(fs) == 1:
        return X * fs[0] - hs[0], fs[0]
    k = len(fs)
    prefix = [IntPoly([1])]
    for p in fs:
        prefix.append(prefix[-1] * p)
    suffix = [IntPoly([1])] * (k + 1)
    for i in range(k - 1, -1, -1):
        suffix[i] = suffix[i + 1] * fs[i]
    total = prefix[k]
    s = IntPoly()
    for i in range(k):
        s = s + hs[i] * prefix[i] * suffix[i + 1]
    return X * total - s, total


def char_poly_faddeev(g: Graph) -> IntPoly:
    """Faddeev-LeVerrier recursion; every division by k is exact over the integers."""
    n = g.n
    dtype = np.int64 if n <= _INT64_LIMIT else object
    a = np.zeros((n, n), dtype=dtype)
    for i, j in g.edges:
        a[i, j] = a[j, i] = 1
    eye = np.eye(n, dtype=dtype) if dtype is np.int64 else np.array([[int(i == j) for j in range(n)] for i in range(n)], dtype=object)
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    m = np.zeros((n, n), dtype=dtype)
    for k in range(1, n + 1):
        m = a @ m + coeffs[n - k + 1] * eye
        tr = int(np.trace(a @ m))
        assert tr % k == 0
        coeffs[n - k] = -tr // k
    return IntPoly(coeffs)


def _bareiss_det(rows: list[list[int]]) -> int:
    m = [r[:] for r in rows]
    n = len(m)
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1] if n else 1


def char_poly_interpolated(g: Graph) -> IntPoly:
    """det(kI - A) at k = 0..n by fraction-free elimination, then exact interpolation."""
    n = g.n
    adj = g.adjacency()
    xs = list(range(n + 1))
    ys = []
    for k in xs:
        ys.append(_bareiss_det([[(k if i == j else 0) - adj[i][j] for j in range(n)] for i in range(n)]))
    # Newton divided differences over the rationals
    coef = [Fraction(y) for y in ys]
    for level in range(1, n + 1):
        for i in range(n, level - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - level])
    poly = [Fraction(0)] * (n + 1)
    basis = [Fraction(1)]
    for i in range(n + 1):
        for d, b in enumerate(basis):
            poly[d] += coef[i] * b
        nxt = [Fraction(0)] * (len(basis) + 1)
        for d, b in enumerate(basis):
            nxt[d + 1] += b
            nxt[d] -= xs[i] * b
        basis = nxt
    assert all(c.denominator == 1 for c in poly)
    return IntPoly([int(c) for c in poly])


# -- counting ------------------------------------------------------------------

def count_eigs(g: Graph, a: Bound, b: Bound) -> int:
    """Distinct eigenvalues in (a, b] (Sturm)."""
    return sturm_count(char_poly(g), a, b)


def count_eigs_with_multiplicity(g: Graph, a: Bound, b: Bound) -> int:
    """Eigenvalues in (a, b] counted with multiplicity.

    The characteristic polynomial of a symmetric matrix is real-rooted, so Descartes' rule
    after a rational Taylor shift is exact.
    """
    return count_roots_between(char_poly(g), a, b)


def index(g: Graph) -> RealAlgebraic:
    """Largest eigenvalue as an isolated real algebraic number."""
    if g.n == 0:
        raise ValueError("empty graph")
    return largest_real_root(char_poly(g))


def eigenvalue_multiplicities_above(g: Graph, t) -> list[tuple[RealAlgebraic, int]]:
    from .realroots import real_roots_above

    return real_roots_above(char_poly(g), t)


def distinct_eigenvalue_count(g: Graph) -> int:
    return squarefree_part(char_poly(g)).degree
