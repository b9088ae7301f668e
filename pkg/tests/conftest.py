import os
import sys

import networkx as nx
import numpy as np
import pytest
import sympy
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from salemforge.graph import Graph
from salemforge.poly import IntPoly

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

Z = sympy.Symbol("z")
X = sympy.Symbol("x")

LEHMER = IntPoly([1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1])


def to_sympy(p: IntPoly, var=Z):
    return sympy.Poly(list(reversed(p.coeffs)) or [0], var)


def from_sympy(expr, var=Z) -> IntPoly:
    return IntPoly([int(c) for c in reversed(sympy.Poly(expr, var).all_coeffs())])


def sympy_charpoly(g: Graph) -> IntPoly:
    """det(xI - A) by sympy's Berkowitz routine."""
    a = sympy.Matrix(g.n, g.n, lambda i, j: 1 if g.has_edge(i, j) else 0)
    return from_sympy(a.charpoly(X).as_expr(), X)


def numpy_eigs(g: Graph) -> np.ndarray:
    return np.linalg.eigvalsh(np.array(g.adjacency(), dtype=float))


def numpy_mahler(g: Graph) -> float:
    """Mahler measure of z^n chi(z + 1/z) from float eigenvalues."""
    out = 1.0
    for lam in numpy_eigs(g):
        lam = abs(lam)
        if lam > 2 + 1e-9:
            out *= (lam + np.sqrt(lam * lam - 4)) / 2
    return out


def nx_graph(g: Graph):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


coeff = st.integers(min_value=-20, max_value=20)


@st.composite
def int_polys(draw, min_degree=0, max_degree=8):
    d = draw(st.integers(min_value=min_degree, max_value=max_degree))
    cs = draw(st.lists(coeff, min_size=d + 1, max_size=d + 1))
    lead = draw(st.integers(min_value=1, max_value=5)) * draw(st.sampled_from([1, -1]))
    return IntPoly(cs[:-1] + [lead])


@st.composite
def graphs(draw, min_n=1, max_n=8, connected=False):
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    edges = [e for e in pairs if draw(st.booleans())]
    g = Graph(n, edges)
    if connected and not g.is_connected():
        # join components in a chain
        comps = g.components()
        extra = [(comps[k][0], comps[k + 1][0]) for k in range(len(comps) - 1)]
        g = Graph(n, edges + extra)
    return g


@st.composite
def trees_st(draw, min_n=1, max_n=12):
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    edges = [(draw(st.integers(min_value=0, max_value=v - 1)), v) for v in range(1, n)]
    return Graph(n, edges)
