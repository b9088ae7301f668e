"""Rooted cyclotomic trees (and the rooted even cycle) with their known quotients.

Naming follows the usual Coxeter-Dynkin labels with the root in parentheses, e.g.
``E6(1)``, ``~E8(7)``, ``A7(2,6)``, ``D11(3,8)``, ``D9(0)``, ``~D8(3,5)``, ``~D6(0)`` and
``~A5`` (a cycle on six vertices).

Vertex numbering of the exceptional trees is that of ``families.star_like``: centre 0,
then the arms outward in the order (short, middle, long).  Root positions are:

* E6 = T(1,2,2): (1) end of a 2-arm, (2) its inner vertex, (3) centre, (4) the 1-arm leaf.
* E7 = T(1,2,3): (1) end of the 2-arm, (2) inner vertex, (3) centre, (4)-(6) along the
  3-arm outward, (7) the 1-arm leaf.
* E8 = T(1,2,4): (1), (2) along the 2-arm inward, (3) centre, (4)-(7) along the 4-arm,
  (8) the 1-arm leaf.
* ~E6 = T(2,2,2): (1) an arm end, (2) the middle of that arm, (3) centre.
* ~E7 = T(1,3,3): (1)-(3) along a 3-arm inward, (4) centre, (5) the leaf.
* ~E8 = T(1,2,5): (1)-(8) along the long path starting at the 2-arm end, (9) the leaf.

Infinite families:

* A_n(a,b): path on n = a+b-1 vertices rooted at the a-th vertex.
* D_n(a,b): path on a+b-2 vertices whose right end carries two extra leaves, rooted at the
  a-th path vertex (a >= 1, b >= 2).  D_n(0): same tree rooted at one of the two leaves.
* ~D_n(a,b): n+1 = a+b+1 vertices; a path on a+b-3 vertices with two extra leaves at each
  end, rooted at the (a-1)-th path vertex (2 <= a <= b).  ~D_n(0): rooted at an end leaf.
* ~A_{2n-1}: the cycle on 2n vertices.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .cyclotomic import cyclotomic
from .errors import InvalidFamilyParams, ParseError
from .families import star_like
from .graph import Graph, cycle_graph, path_graph
from .poly import IntPoly
from .ratfunc import INF, NuValue, RatFunc
from .trees import RootedGraph, RootedTree, nu, quotient, quotient_direct

# root vertex for each position of the exceptional trees, in star_like numbering
_EXCEPTIONAL = {
    "E6": ([1, 2, 2], [3, 2, 0, 1]),
    "E7": ([1, 2, 3], [3, 2, 0, 4, 5, 6, 1]),
    "E8": ([1, 2, 4], [3, 2, 0, 4, 5, 6, 7, 1]),
    "~E6": ([2, 2, 2], [2, 1, 0]),
    "~E7": ([1, 3, 3], [4, 3, 2, 0, 1]),
    "~E8": ([1, 2, 5], [3, 2, 0, 4, 5, 6, 7, 8, 1]),
}


def exceptional(name: str, k: int) -> RootedTree:
    arms, roots = _EXCEPTIONAL[name]
    if not 1 <= k <= len(roots):
        raise InvalidFamilyParams(f"{name} has root positions 1..{len(roots)}")
    return RootedTree(star_like(arms), roots[k - 1], f"{name}({k})")


def a_tree(a: int, b: int) -> RootedTree:
    if a < 1 or b < 1:
        raise InvalidFamilyParams("A_n(a,b) needs a, b >= 1")
    n = a + b - 1
    return RootedTree(path_graph(n), a - 1, f"A{n}({a},{b})")


def _forked_path(length: int) -> Graph:
    # path 0..length-1 plus two leaves at its right end
    g = path_graph(length)
    end = length - 1
    return Graph(length + 2, list(g.edges) + [(end, length), (end, length + 1)])


def d_tree(a: int, b: int) -> RootedTree:
    if a < 1 or b < 2:
        raise InvalidFamilyParams("D_n(a,b) needs a >= 1 and b >= 2")
    return RootedTree(_forked_path(a + b - 2), a - 1, f"D{a + b}({a},{b})")


def d_tree_leaf(n: int) -> RootedTree:
    if n < 5:
        raise InvalidFamilyParams("D_n(0) needs n >= 5")
    return RootedTree(_forked_path(n - 2), n - 1, f"D{n}(0)")


def _double_forked_path(length: int) -> Graph:
    # path 0..length-1 with two extra leaves at each end
    g = path_graph(length)
    end = length - 1
    extra = [(0, length), (0, length + 1), (end, length + 2), (end, length + 3)]
    return Graph(length + 4, list(g.edges) + extra)


def dt_tree(a: int, b: int) -> RootedTree:
    if not 2 <= a <= b:
        raise InvalidFamilyParams("~D_n(a,b) needs 2 <= a <= b")
    return RootedTree(_double_forked_path(a + b - 3), a - 2, f"~D{a + b}({a},{b})")


def dt_tree_leaf(n: int) -> RootedTree:
    if n < 4:
        raise InvalidFamilyParams("~D_n(0) needs n >= 4")
    return RootedTree(_double_forked_path(n - 3), n - 3, f"~D{n}(0)")


def at_cycle(n: int) -> RootedGraph:
    """The even cycle ~A_{2n-1} on 2n vertices, rooted at 0."""
    if n < 2:
        raise InvalidFamilyParams("~A_{2n-1} needs n >= 2")
    return RootedGraph(cycle_graph(2 * n), 0, f"~A{2 * n - 1}")


# -- expected quotients ------------------------------------------------------------------

def _zpow(k: int, sign: int) -> IntPoly:
    """z^k + sign."""
    return IntPoly.monomial(k) + sign


def _phi(*orders: int) -> IntPoly:
    out = IntPoly([1])
    for n in orders:
        out = out * cyclotomic(n)
    return out


def _cyc(num: tuple, den: tuple) -> RatFunc:
    return RatFunc(_phi(*num), _phi(*den))


# (numerator orders, denominator orders, nu); repeated orders mean powers
EXCEPTIONAL_EXPECTED: dict[str, list[tuple[tuple, tuple, NuValue]]] = {
    "E6": [
        ((2, 8), (3, 12), Fraction(4, 3)),
        ((2, 5), (3, 12), Fraction(10, 3)),
        ((2, 3), (12,), Fraction(6)),
        ((2, 6), (12,), Fraction(2)),
    ],
    "E7": [
        ((2, 10), (18,), Fraction(2)),
        ((2, 3, 6), (18,), Fraction(6)),
        ((2, 3, 4), (18,), Fraction(12)),
        ((3, 5), (2, 18), Fraction(15, 2)),
        ((2, 8), (18,), Fraction(4)),
        ((3, 12), (2, 18), Fraction(3, 2)),
        ((7,), (2, 18), Fraction(7, 2)),
    ],
    "E8": [
        ((2, 4, 12), (30,), Fraction(4)),
        ((2, 7), (30,), Fraction(14)),
        ((2, 3, 5), (30,), Fraction(30)),
        ((2, 4, 5), (30,), Fraction(20)),
        ((2, 3, 8), (30,), Fraction(12)),
        ((2, 3, 12), (30,), Fraction(6)),
        ((2, 18), (30,), Fraction(2)),
        ((2, 4, 8), (30,), Fraction(8)),
    ],
    "~E6": [
        ((12,), (1, 1, 2, 3), INF),
        ((2, 6), (1, 1, 3), INF),
        ((3,), (1, 1, 2), INF),
    ],
    "~E7": [
        ((18,), (1, 1, 2, 3, 4), INF),
        ((2, 10), (1, 1, 3, 4), INF),
        ((3, 6), (1, 1, 2, 4), INF),
        ((2, 4), (1, 1, 3), INF),
        ((8,), (1, 1, 2, 3), INF),
    ],
    "~E8": [
        ((2, 14), (1, 1, 3, 5), INF),
        ((2, 4, 8), (1, 1, 3, 5), INF),
        ((2, 3, 6), (1, 1, 5), INF),
        ((5,), (1, 1, 2, 3), INF),
        ((2, 4, 8), (1, 1, 3, 5), INF),
        ((3, 12), (1, 1, 2, 5), INF),
        ((2, 18), (1, 1, 3, 5), INF),
        ((30,), (1, 1, 2, 3, 5), INF),
        ((9,), (1, 1, 2, 5), INF),
    ],
}


def expected_a(a: int, b: int) -> tuple[RatFunc, NuValue]:
    q = RatFunc(_zpow(a, -1) * _zpow(b, -1), IntPoly([-1, 1]) * _zpow(a + b, -1))
    return q, Fraction(a * b, a + b)


def expected_d(a: int, b: int) -> tuple[RatFunc, NuValue]:
    q = RatFunc(_zpow(a, -1) * _zpow(b - 1, 1), IntPoly([-1, 1]) * _zpow(a + b - 1, 1))
    return q, Fraction(a)


def expected_d_leaf(n: int) -> tuple[RatFunc, NuValue]:
    q = RatFunc(_zpow(n, -1), IntPoly([-1, 0, 1]) * _zpow(n - 1, 1))
    return q, Fraction(n, 4)


def expected_dt(a: int, b: int) -> tuple[RatFunc, NuValue]:
    q = RatFunc(_zpow(a - 1, 1) * _zpow(b - 1, 1), IntPoly([-1, 1]) * _zpow(a + b - 2, -1))
    return q, INF


def expected_dt_leaf(n: int) -> tuple[RatFunc, NuValue]:
    q = RatFunc(_zpow(n - 1, 1), IntPoly([-1, 0, 1]) * _zpow(n - 2, -1))
    return q, INF


def expected_at(n: int) -> tuple[RatFunc, NuValue]:
    q = RatFunc(_zpow(n, 1), IntPoly([-1, 1]) * _zpow(n, -1))
    return q, INF


@dataclass(frozen=True)
class CatalogueEntry:
    name: str
    tree: RootedGraph
    expected_quotient: RatFunc
    expected_nu: NuValue


def fixed_entries() -> list[CatalogueEntry]:
    out = []
    for name, rows in EXCEPTIONAL_EXPECTED.items():
        for k, (num, den, v) in enumerate(rows, 1):
            t = exceptional(name, k)
            out.append(CatalogueEntry(t.label, t, _cyc(num, den), v))
    return out


def family_entries(max_n: int = 30) -> list[CatalogueEntry]:
    out = []
    for n in range(1, max_n + 1):
        for a in range(1, n + 1):
            t = a_tree(a, n + 1 - a)
            out.append(CatalogueEntry(t.label, t, *expected_a(a, n + 1 - a)))
    for n in range(3, max_n + 1):
        for a in range(1, n - 1):
            t = d_tree(a, n - a)
            out.append(CatalogueEntry(t.label, t, *expected_d(a, n - a)))
    for n in range(5, max_n + 1):
        t = d_tree_leaf(n)
        out.append(CatalogueEntry(t.label, t, *expected_d_leaf(n)))
    for n in range(4, max_n + 1):
        for a in range(2, n // 2 + 1):
            t = dt_tree(a, n - a)
            out.append(CatalogueEntry(t.label, t, *expected_dt(a, n - a)))
        t = dt_tree_leaf(n)
        out.append(CatalogueEntry(t.label, t, *expected_dt_leaf(n)))
    for n in range(2, (max_n + 1) // 2 + 1):
        t = at_cycle(n)
        out.append(CatalogueEntry(t.label, t, *expected_at(n)))
    return out


@dataclass(frozen=True)
class CatalogueReport:
    checked: int
    mismatches: list[tuple[str, str]]

    @property
    def ok(self) -> bool:
        return not self.mismatches


def verify_catalogue(max_n: int = 30, direct: bool = False) -> CatalogueReport:
    """Compare computed quotients and nu-values with the expected formulas.

    With ``direct`` the quotient is also recomputed from reciprocal polynomials.
    """
    bad = []
    entries = fixed_entries() + family_entries(max_n)
    for e in entries:
        q = quotient(e.tree)
        if q != e.expected_quotient:
            bad.append((e.name, f"quotient {q} != {e.expected_quotient}"))
        v = q.at_one()
        if v != e.expected_nu:
            bad.append((e.name, f"nu {v} != {e.expected_nu}"))
        if direct and quotient_direct(e.tree) != q:
            bad.append((e.name, "recursive and direct quotients differ"))
    return CatalogueReport(len(entries), bad)


# -- parsing -------------------------------------------------------------------------

_ROOTED_RE = re.compile(r"^\s*(~?)([ADEade])(\d*)\s*(?:\(\s*([0-9,\s]*)\s*\))?\s*$")


def parse_rooted(text: str) -> RootedGraph:
    """Parse a rooted catalogue name such as ``E8(7)``, ``~E6(2)``, ``D11(3,8)``, ``D(9,0)``."""
    m = _ROOTED_RE.match(text)
    if not m:
        raise ParseError(f"cannot parse rooted tree {text!r}")
    tilde, letter, sub, raw = m.group(1), m.group(2).upper(), m.group(3), m.group(4)
    try:
        params = [int(x) for x in raw.split(",")] if raw and raw.strip() else []
    except ValueError:
        raise ParseError(f"bad parameters in {text!r}") from None
    n = int(sub) if sub else None
    if letter == "E":
        if n not in (6, 7, 8) or len(params) != 1:
            raise ParseError(f"expected E6/E7/E8 with one root position in {text!r}")
        return exceptional(f"{tilde}E{n}", params[0])
    if letter == "A":
        if tilde:
            if n is None or n % 2 == 0 or params:
                raise ParseError("~A needs an odd subscript, e.g. ~A5")
            return at_cycle((n + 1) // 2)
        if len(params) != 2:
            raise ParseError("A_n(a,b) needs two parameters")
        a, b = params
        if n is not None and n != a + b - 1:
            raise InvalidFamilyParams(f"A{n}({a},{b}) needs n = a + b - 1")
        return a_tree(a, b)
    # D families; D(9,0) is accepted for D9(0)
    if n is None and len(params) == 2 and params[1] == 0:
        n, params = params[0], [0]
    if params == [0]:
        if n is None:
            raise ParseError("D(0) needs a subscript")
        return dt_tree_leaf(n) if tilde else d_tree_leaf(n)
    if len(params) != 2:
        raise ParseError(f"cannot parse D-family parameters in {text!r}")
    a, b = params
    if n is not None and n != a + b:
        raise InvalidFamilyParams(f"D{n}({a},{b}) needs n = a + b")
    return dt_tree(a, b) if tilde else d_tree(a, b)


def expected_for(t: RootedGraph) -> Optional[tuple[RatFunc, NuValue]]:
    """The tabulated quotient and nu for a catalogue tree, looked up by label."""
    for e in fixed_entries():
        if e.name == t.label:
            return e.expected_quotient, e.expected_nu
    label = t.label or ""
    m = re.match(r"^(~?)([AD])(\d+)(?:\((\d+)(?:,(\d+))?\))?$", label)
    if not m:
        return None
    tilde, letter, n = m.group(1), m.group(2), int(m.group(3))
    a = int(m.group(4)) if m.group(4) else None
    b = int(m.group(5)) if m.group(5) else None
    if letter == "A":
        return expected_at((n + 1) // 2) if tilde else expected_a(a, b)
    if b is None:
        return expected_dt_leaf(n) if tilde else expected_d_leaf(n)
    return expected_dt(a, b) if tilde else expected_d(a, b)
