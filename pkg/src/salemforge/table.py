"""Small Salem numbers (and powers) realised by trees built from cyclotomic rooted pieces.

A recipe is a comma-separated list of rooted cyclotomic trees (type a: joined to a new
centre), or two such lists separated by a semicolon (type b: two centres joined by an edge).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

import mpmath

from .catalogue import parse_rooted
from .cyclotomic import strip_trivial_factors
from .errors import NotSalemError, ParseError
from .poly import IntPoly
from .realroots import RealAlgebraic
from .salem import SalemClassification
from .trees import (
    Decomposition,
    RootedTree,
    TypeAResult,
    TypeBResult,
    quotient,
    decompose_salem_tree,
    salem_tree_type_a,
    salem_tree_type_b,
)


@dataclass(frozen=True)
class TableRow:
    index: int  # n in tau_n
    power: int
    recipe: str

    @property
    def label(self) -> str:
        return f"tau{self.index}" + (f"^{self.power}" if self.power > 1 else "")


TABLE: tuple[TableRow, ...] = tuple(
    TableRow(i, k, r)
    for i, k, r in [
        (1, 1, "D9(0)"),
        (1, 2, "D11(3,8)"),
        (1, 6, "E7(1),~D4(0);A5(2,4)"),
        (1, 8, "E6(1),A2(1,2);E7(5),~E6(3)"),
        (2, 2, "E8(7);E8(7)"),
        (3, 2, "E7(6);E7(6)"),
        (3, 5, "A1(1,1),A9(2,8);D15(8,7)"),
        (4, 5, "E6(4),D7(1,6);D13(3,10)"),
        (5, 2, "E6(1);E6(1)"),
        (5, 3, "E6(1);~E8(7)"),
        (5, 4, "E6(4),D18(12,6)"),
        (5, 5, "A4(1,4),A4(1,4);D4(1,3),D8(1,7)"),
        (5, 6, "A1(1,1),A3(2,2);D6(2,4),D8(4,4)"),
        (7, 1, "D10(0)"),
        (7, 4, "E6(1),A1(1,1);E6(1),A1(1,1)"),
        (7, 5, "A7(2,6);D4(1,3),~D10(5,5)"),
        (7, 6, "E7(3),D7(4,3);D9(1,8)"),
        (10, 3, "E8(8);D8(0)"),
        (12, 2, "D5(0);D5(0)"),
        (12, 3, "E7(5);E7(6)"),
        (12, 5, "E7(4),~E6(1);A7(3,5)"),
        (15, 2, "D18(6,12)"),
        (15, 4, "A1(1,1),D10(0);A1(1,1),D10(0)"),
        (16, 4, "E7(1),D9(1,8),D8(2,6)"),
        (19, 1, "D11(0)"),
        (19, 3, "~E8(8);D4(2,2)"),
        (19, 4, "E6(4),A1(1,1);E6(4),A1(1,1)"),
        (19, 5, "~E6(2),A3(2,2);A3(1,3),D6(1,5)"),
        (21, 2, "E7(1);E7(1)"),
        (21, 5, "E6(3),A4(2,3);A6(1,6)"),
        (23, 1, "E8(1)"),
        (23, 2, "~E8(6)"),
        (23, 3, "E7(2);D6(1,5)"),
        (23, 4, "~E7(3),D12(9,3)"),
        (35, 4, "E6(4),E7(1);A2(1,2),A6(1,6)"),
        (41, 1, "D13(0)"),
        (41, 2, "D6(0);D6(0)"),
        (41, 3, "A7(2,6);D10(5,5)"),
        (41, 4, "A2(1,2),A2(1,2);A6(2,5),D5(1,4)"),
    ]
)


def _split_top(text: str, sep: str) -> list[str]:
    """Split on ``sep`` outside parentheses."""
    out, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ParseError(f"unbalanced parentheses in {text!r}")
        if ch == sep and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth:
        raise ParseError(f"unbalanced parentheses in {text!r}")
    out.append("".join(cur))
    return out


def parse_forest(text: str) -> list[RootedTree]:
    """``E6(1),A2(1,2)`` or ``{E6(1),A2(1,2)}`` as a list of rooted trees."""
    text = text.strip()
    if text.startswith("{") and text.endswith("}"):
        text = text[1:-1]
    parts = [p.strip() for p in _split_top(text, ",")]
    if not parts or any(not p for p in parts):
        raise ParseError(f"empty component in {text!r}")
    out = []
    for p in parts:
        t = parse_rooted(p)
        if not isinstance(t, RootedTree):
            raise ParseError(f"{p!r} is not a tree")
        out.append(RootedTree(t.graph, t.root, p))
    return out


def build_recipe(recipe: str) -> Union[TypeAResult, TypeBResult]:
    sides = _split_top(recipe, ";")
    if len(sides) == 1:
        return salem_tree_type_a(parse_forest(sides[0]))
    if len(sides) == 2:
        return salem_tree_type_b(parse_forest(sides[0]), parse_forest(sides[1]))
    raise ParseError(f"at most one ';' allowed in {recipe!r}")


@dataclass(frozen=True)
class RecipeResult:
    recipe: str
    result: Union[TypeAResult, TypeBResult]
    classification: SalemClassification
    tau: RealAlgebraic
    minpoly: IntPoly
    decomposition: Decomposition
    square_root_minpoly: Optional[IntPoly] = None

    @property
    def kind(self) -> str:
        return "a" if isinstance(self.result, TypeAResult) else "b"


def evaluate_recipe(recipe: str) -> RecipeResult:
    """Build the tree for ``recipe``; raise NotSalemError unless it is a Salem tree."""
    res = build_recipe(recipe)
    c = res.classification
    if not c.is_salem:
        raise NotSalemError(f"{recipe} gives a {c.tag} tree")
    t = res.tree
    dec = decompose_salem_tree(t.graph, start=t.root)
    sq = None
    if isinstance(res, TypeBResult) and _same_sides(recipe):
        side = RootedTree.from_children(parse_forest(_split_top(recipe, ";")[0]))
        sq = square_root_minpoly(side, c.tau)
    return RecipeResult(recipe, res, c, c.tau, c.minpoly, dec, sq)


def _same_sides(recipe: str) -> bool:
    a, b = _split_top(recipe, ";")
    return sorted(x.strip() for x in _split_top(a, ",")) == sorted(x.strip() for x in _split_top(b, ","))


def square_root_minpoly(t1: RootedTree, tau: RealAlgebraic) -> IntPoly:
    """Minimal polynomial of sqrt(tau) for the tree t1 joined to a copy of itself.

    With q_{t1} = a/b in lowest terms the joined tree has reciprocal polynomial
    b(z)^2 - z a(z)^2, and substituting z^2 splits this as (b(z^2) - z a(z^2)) (b(z^2) + z a(z^2)).
    sqrt(tau) is a root of exactly one of the two factors, whose non-cyclotomic core is returned.
    """
    qt = quotient(t1)
    # R of the joined tree is den^2 - z num^2 up to a constant
    d2, n2 = _subst_square(qt.den), _subst_square(qt.num)
    zn2 = n2.shift(1)
    s = mpmath.sqrt(tau.approx(40))
    for g in (d2 - zn2, d2 + zn2):
        core, _, _ = strip_trivial_factors(g)
        core = core if core.lead > 0 else -core
        if core.degree and abs(_eval(core, s)) < mpmath.mpf(10) ** -15 * _scale(core, s):
            return core
    raise NotSalemError("no factor vanishes at the square root")


def _subst_square(f: IntPoly) -> IntPoly:
    out = [0] * (2 * max(f.degree, 0) + 1)
    for i, c in enumerate(f.coeffs):
        out[2 * i] = c
    return IntPoly(out)


def _eval(p: IntPoly, x):
    with mpmath.workdps(40):
        return mpmath.polyval([mpmath.mpf(c) for c in reversed(p.coeffs)], x)


def _scale(p: IntPoly, x):
    return sum(abs(c) * abs(x) ** i for i, c in enumerate(p.coeffs))


# -- power relations ----------------------------------------------------------------

def root_of_power(tau: RealAlgebraic, k: int, digits: int = 30):
    with mpmath.workdps(digits + 10):
        return mpmath.root(tau.approx(digits + 10), k)


@dataclass(frozen=True)
class TableCheck:
    row: TableRow
    result: RecipeResult
    base: object  # tau^(1/power)


def check_table(rows=TABLE, digits: int = 30) -> list[TableCheck]:
    out = []
    for row in rows:
        r = evaluate_recipe(row.recipe)
        out.append(TableCheck(row, r, root_of_power(r.tau, row.power, digits)))
    return out


def base_consistency(checks: list[TableCheck]) -> dict[int, object]:
    """Spread max - min of tau^(1/power) over the rows sharing each base index."""
    groups: dict[int, list] = {}
    for c in checks:
        groups.setdefault(c.row.index, []).append(c.base)
    return {i: max(v) - min(v) for i, v in groups.items()}


def lookup(label_or_recipe: str) -> Optional[TableRow]:
    for row in TABLE:
        if row.label == label_or_recipe or row.recipe.replace(" ", "") == label_or_recipe.replace(" ", ""):
            return row
    return None
