"""Named graph families with a frozen vertex numbering.

Numbering conventions:

* ``Path(n)``: 0 - 1 - ... - (n-1).
* ``Cycle(n)``: 0..n-1 in cyclic order.
* ``Star(d)``: centre 0, leaves 1..d.
* ``T(a,b,c)``: centre 0; arm a is 1..a outward, then arm b, then arm c.
* ``Q(a,b,c)``: the central path runs left to right through the long arm of u (a-1
  vertices), u, the b-1 inner vertices, w, and the long arm of w (c-1 vertices); the two
  extra leaves at u and at w come last, in that order.
* ``D(n)``: T(1,1,n-3).  ``E6/E7/E8`` are T(1,2,2), T(1,2,3), T(1,2,4) and ``~E6/~E7/~E8``
  are T(2,2,2), T(1,3,3), T(1,2,5).
* ``~D(n)``: n+1 vertices; path 0..n-2 with leaf n-1 on vertex 1 and leaf n on vertex n-3.
* ``~A(n)``: the cycle on n+1 vertices.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import InvalidFamilyParams, ParseError
from .graph import Graph, cycle_graph, path_graph, star_graph

_ARITY = {
    "Path": 1,
    "Cycle": 1,
    "Star": 1,
    "T": 3,
    "Q": 3,
    "E6": 0,
    "E7": 0,
    "E8": 0,
    "tildeE6": 0,
    "tildeE7": 0,
    "tildeE8": 0,
    "Dn": 1,
    "tildeDn": 1,
    "tildeAn": 1,
}


@dataclass(frozen=True)
class FamilySpec:
    name: str
    params: tuple[int, ...] = ()

    def __post_init__(self):
        if self.name not in _ARITY:
            raise InvalidFamilyParams(f"unknown family {self.name!r}")
        if len(self.params) != _ARITY[self.name]:
            raise InvalidFamilyParams(f"{self.name} takes {_ARITY[self.name]} parameters")

    def __str__(self) -> str:
        label = {"tildeE6": "~E6", "tildeE7": "~E7", "tildeE8": "~E8", "Dn": "D", "tildeDn": "~D", "tildeAn": "~A"}.get(
            self.name, self.name
        )
        if not self.params:
            return label
        return f"{label}({','.join(map(str, self.params))})"

    def build(self) -> Graph:
        return build(self)


def star_like(arms: list[int]) -> Graph:
    """Centre 0 with paths of the given lengths, numbered arm by arm outward."""
    edges = []
    nxt = 1
    for length in arms:
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return Graph(nxt, edges)


def _t_tree(a: int, b: int, c: int) -> Graph:
    for x in (a, b, c):
        if x < 1:
            raise InvalidFamilyParams(f"T(a,b,c) needs arm lengths >= 1, got {(a, b, c)}")
    return star_like([a, b, c])


def _q_tree(a: int, b: int, c: int) -> Graph:
    if a < 2 or c < 2 or b < 1:
        raise InvalidFamilyParams(f"Q(a,b,c) needs a >= 2, b >= 1, c >= 2, got {(a, b, c)}")
    length = (a - 1) + 1 + (b - 1) + 1 + (c - 1)
    g = path_graph(length)
    u = a - 1
    w = u + b
    return Graph(length + 2, list(g.edges) + [(u, length), (w, length + 1)])


def build(spec: FamilySpec) -> Graph:
    name, p = spec.name, spec.params
    if name == "Path":
        if p[0] < 1:
            raise InvalidFamilyParams("Path(n) needs n >= 1")
        return path_graph(p[0])
    if name == "Cycle":
        if p[0] < 3:
            raise InvalidFamilyParams("Cycle(n) needs n >= 3")
        return cycle_graph(p[0])
    if name == "Star":
        if p[0] < 0:
            raise InvalidFamilyParams("Star(d) needs d >= 0")
        return star_graph(p[0])
    if name == "T":
        return _t_tree(*p)
    if name == "Q":
        return _q_tree(*p)
    if name in ("E6", "E7", "E8"):
        return star_like([1, 2, int(name[1]) - 4])
    if name == "tildeE6":
        return star_like([2, 2, 2])
    if name == "tildeE7":
        return star_like([1, 3, 3])
    if name == "tildeE8":
        return star_like([1, 2, 5])
    if name == "Dn":
        n = p[0]
        if n < 4:
            raise InvalidFamilyParams("D(n) needs n >= 4")
        return star_like([1, 1, n - 3])
    if name == "tildeDn":
        n = p[0]
        if n < 4:
            raise InvalidFamilyParams("~D(n) needs n >= 4")
        g = path_graph(n - 1)
        return Graph(n + 1, list(g.edges) + [(1, n - 1), (n - 3, n)])
    if name == "tildeAn":
        n = p[0]
        if n < 2:
            raise InvalidFamilyParams("~A(n) needs n >= 2")
        return cycle_graph(n + 1)
    raise InvalidFamilyParams(f"unknown family {name!r}")


_ALIASES = {
    "path": "Path",
    "p": "Path",
    "cycle": "Cycle",
    "c": "Cycle",
    "star": "Star",
    "t": "T",
    "q": "Q",
    "e6": "E6",
    "e7": "E7",
    "e8": "E8",
    "~e6": "tildeE6",
    "~e7": "tildeE7",
    "~e8": "tildeE8",
    "tildee6": "tildeE6",
    "tildee7": "tildeE7",
    "tildee8": "tildeE8",
    "d": "Dn",
    "dn": "Dn",
    "~d": "tildeDn",
    "tildedn": "tildeDn",
    "~dn": "tildeDn",
    "~a": "tildeAn",
    "tildean": "tildeAn",
    "~an": "tildeAn",
}

_SPEC_RE = re.compile(r"^\s*([~A-Za-z][A-Za-z0-9~]*?)\s*(?:\(\s*([-0-9,\s]*)\s*\))?\s*$")


def parse_family(text: str) -> FamilySpec:
    """Parse strings such as ``T(1,2,6)``, ``q(3,13,3)``, ``~E8`` or ``Path(5)``."""
    m = _SPEC_RE.match(text)
    if not m:
        raise ParseError(f"cannot parse family {text!r}")
    key = m.group(1).lower()
    if key not in _ALIASES:
        raise ParseError(f"unknown family {m.group(1)!r}")
    raw = m.group(2)
    try:
        params = tuple(int(x) for x in raw.split(",")) if raw and raw.strip() else ()
    except ValueError:
        raise ParseError(f"bad parameters in {text!r}") from None
    return FamilySpec(_ALIASES[key], params)
