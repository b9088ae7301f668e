"""Command-line interface: ``salemforge <command> ...``.

Graph arguments accept a family name (``T(1,2,6)``, ``Q(3,13,3)``, ``~E8``), a rooted
catalogue name (``D9(0)``, whose tree is used), a construction recipe (``{D9(0)}`` or
``E8(7);E8(7)``), or the path of a graph file (text or JSON).

Exit status: 0 on success, 1 on a domain error, 2 on a usage or parse error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

import mpmath

from . import catalogue, mahler, pisot, salem, table, trees
from .cyclotomic import strip_trivial_factors
from .errors import NotSalemError, ParseError, SalemForgeError
from .families import FamilySpec, build, parse_family
from .graph import Graph
from .measure import DEFAULT_PRECISION, RHO, _digits_for
from .poly import IntPoly
from .ratfunc import format_nu
from .spectrum import char_poly

ENV_PRECISION = "SALEMFORGE_PRECISION"


@dataclass
class Output:
    data: dict
    text: str
    rows: Optional[list[list]] = None  # csv rows, header first
    status: int = 0


@dataclass
class Ctx:
    precision: Fraction
    digits: int
    fmt: str
    notes: list[str] = field(default_factory=list)

    def num(self, x) -> str:
        return mpmath.nstr(x, self.digits)


# -- input resolution ------------------------------------------------------------------

def _read_file(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def resolve_graph(text: str) -> tuple[Graph, str]:
    if os.path.isfile(text):
        return Graph.parse(_read_file(text)), os.path.basename(text)
    s = text.strip()
    if s.startswith("{") or ";" in s:
        res = table.build_recipe(s)
        return res.tree.graph, s
    try:
        spec = parse_family(s)
    except ParseError:
        pass
    else:
        return build(spec), str(spec)
    try:
        return catalogue.parse_rooted(s).graph, s
    except (ParseError, SalemForgeError):
        pass
    raise ParseError(f"cannot interpret {text!r} as a graph")


def resolve_rooted(text: str, root: Optional[int]) -> trees.RootedGraph:
    if root is None:
        try:
            return catalogue.parse_rooted(text)
        except ParseError:
            raise ParseError(f"{text!r} is not a rooted catalogue name; pass --root") from None
    g, name = resolve_graph(text)
    if g.is_tree():
        return trees.RootedTree(g, root, name)
    return trees.RootedGraph(g, root, name)


def _growth_input(args) -> tuple[pisot.GrowthSpec, Optional[pisot.PisotGraph]]:
    if args.named:
        pg, _ = _named_coloured(args.named)
        return pg.growth_spec(), pg
    if not args.spec:
        raise ParseError("give --spec FILE or --named NAME")
    d = json.loads(_read_file(args.spec))
    if "base" in d:
        return pisot.GrowthSpec.from_dict(d), None
    pg = pisot.PisotGraph.from_dict(d)
    return pg.growth_spec(), pg


def _named_coloured(name: str) -> tuple[pisot.PisotGraph, int]:
    if name == "small-left":
        return pisot.small_pisot_left()
    if name == "small-right":
        return pisot.small_pisot_right()
    raise ParseError(f"unknown named coloured graph {name!r}")


# -- commands --------------------------------------------------------------------------

def cmd_charpoly(args, ctx: Ctx) -> Output:
    g, name = resolve_graph(args.graph)
    p = char_poly(g)
    return Output(
        {"graph": name, "charpoly": list(p.coeffs), "string": p.to_string("x")},
        p.to_string("x"),
        [["degree", "coefficient"]] + [[i, c] for i, c in enumerate(p.coeffs)],
    )


def cmd_reciprocal(args, ctx: Ctx) -> Output:
    g, name = resolve_graph(args.graph)
    r = salem.reciprocal_poly(g)
    core, factors, k = strip_trivial_factors(r)
    data = {
        "graph": name,
        "bipartite": g.is_bipartite()[0],
        "reciprocal": list(r.coeffs),
        "core": list(core.coeffs),
        "cyclotomic_factors": [[n, m] for n, m in factors],
        "z_power": k,
    }
    facs = " ".join(f"Phi{n}^{m}" if m > 1 else f"Phi{n}" for n, m in factors) or "-"
    text = f"R = {r}\ncore = {core}\ncyclotomic = {facs}\npower of z = {k}"
    return Output(data, text, [["degree", "coefficient"]] + [[i, c] for i, c in enumerate(r.coeffs)])


def _classification_output(name: str, c: salem.SalemClassification, ctx: Ctx) -> Output:
    d = c.to_dict(ctx.digits)
    d["graph"] = name
    lines = [f"{name}: {c.tag}", f"eigenvalues > 2: {c.eigs_gt_2}, < -2: {c.eigs_lt_minus_2}"]
    if c.tau is not None:
        lines.append(f"tau = {ctx.num(c.tau.approx(ctx.digits + 5))}")
        lines.append(f"minpoly = {c.minpoly}")
    lines += list(c.notes)
    mp = " ".join(map(str, c.minpoly.coeffs)) if c.minpoly is not None else ""
    tau = ctx.num(c.tau.approx(ctx.digits + 5)) if c.tau is not None else ""
    rows = [["graph", "tag", "eigs_gt_2", "eigs_lt_minus_2", "tau", "minpoly"],
            [name, c.tag, c.eigs_gt_2, c.eigs_lt_minus_2, tau, mp]]
    return Output(d, "\n".join(lines), rows)


def cmd_classify(args, ctx: Ctx) -> Output:
    g, name = resolve_graph(args.graph)
    c = salem.classify(g)
    out = _classification_output(name, c, ctx)
    if args.require_salem and not c.is_salem:
        raise NotSalemError(f"{name} is {c.tag}")
    return out


def cmd_quotient(args, ctx: Ctx) -> Output:
    t = resolve_rooted(args.tree, args.root)
    q = trees.quotient_direct(t) if args.direct else trees.quotient(t)
    nu = q.at_one()
    return Output(
        {"tree": str(t), "quotient": q.to_dict(), "string": str(q), "nu": format_nu(nu)},
        f"q = {q}\nnu = {format_nu(nu)}",
        [["tree", "num", "den", "nu"], [str(t), q.num.to_text(), q.den.to_text(), format_nu(nu)]],
    )


def cmd_nu(args, ctx: Ctx) -> Output:
    t = resolve_rooted(args.tree, args.root)
    nu = trees.nu(t)
    return Output({"tree": str(t), "nu": format_nu(nu)}, format_nu(nu), [["tree", "nu"], [str(t), format_nu(nu)]])


def cmd_build(args, ctx: Ctx) -> Output:
    g, name = resolve_graph(args.spec)
    rows = [["i", "j"]] + [list(e) for e in g.sorted_edges()]
    return Output({"spec": name, **g.to_dict()}, g.to_text().rstrip("\n"), rows)


def _type_a_output(res: trees.TypeAResult, ctx: Ctx) -> Output:
    out = _classification_output(str(res.tree), res.classification, ctx)
    out.data["nu_forest"] = format_nu(res.nu_forest)
    out.text = f"nu(T') = {format_nu(res.nu_forest)}\n" + out.text
    return out


def cmd_salem_a(args, ctx: Ctx) -> Output:
    res = trees.salem_tree_type_a(table.parse_forest(args.forest))
    if not res.classification.is_salem:
        raise NotSalemError(f"nu(T') = {format_nu(res.nu_forest)} gives a {res.classification.tag} tree")
    return _type_a_output(res, ctx)


def cmd_salem_b(args, ctx: Ctx) -> Output:
    if args.second is None:
        parts = table._split_top(args.first, ";")
        if len(parts) != 2:
            raise ParseError("give two forests, or one argument of the form 'X;Y'")
        first, second = parts
    else:
        first, second = args.first, args.second
    res = trees.salem_tree_type_b(table.parse_forest(first), table.parse_forest(second), strict=args.strict)
    out = _classification_output(str(res.tree), res.classification, ctx)
    cond = {"nu1": format_nu(res.nu1), "nu2": format_nu(res.nu2), "product": _fmt_nu_like(res.product), "holds": res.condition_holds}
    out.data["condition"] = cond
    out.text = f"nu1 = {cond['nu1']}, nu2 = {cond['nu2']}, (nu1-2)(nu2-2) = {cond['product']} ({'<=' if res.condition_holds else '>'} 1)\n" + out.text
    if not res.classification.is_salem:
        raise NotSalemError(f"join is {res.classification.tag} with {res.classification.eigs_gt_2} eigenvalues > 2")
    return out


def _fmt_nu_like(v) -> str:
    if isinstance(v, float):
        return str(v)
    return format_nu(v)


def _decomp_dict(dec) -> dict:
    if isinstance(dec, trees.TypeA):
        return {"type": "a", "center": dec.center}
    return {"type": "b", "edge": list(dec.edge)}


def cmd_decompose(args, ctx: Ctx) -> Output:
    g, name = resolve_graph(args.tree)
    dec = trees.decompose_salem_tree(g, args.start)
    d = _decomp_dict(dec)
    text = f"type (a), centre {dec.center}" if d["type"] == "a" else f"type (b), edge {tuple(dec.edge)}"
    rows = [["type", "where"], [d["type"], d.get("center", " ".join(map(str, d.get("edge", []))))]]
    return Output({"tree": name, **d}, text, rows)


def _limit_output(lim: pisot.PisotLimit, ctx: Ctx) -> Output:
    theta = lim.theta.approx(ctx.digits + 5)
    d = {
        "minpoly": list(lim.minpoly.coeffs),
        "string": str(lim.minpoly),
        "theta": ctx.num(theta),
        "pisot": lim.certificate.is_pisot,
        "leading": list(lim.leading.coeffs),
    }
    text = f"{lim.minpoly}\ntheta = {ctx.num(theta)}\npisot certified: {lim.certificate.is_pisot}"
    return Output(d, text, [["minpoly", "theta", "pisot"], [lim.minpoly.to_text(), ctx.num(theta), lim.certificate.is_pisot]])


def cmd_pisot_limit(args, ctx: Ctx) -> Output:
    spec, _ = _growth_input(args)
    return _limit_output(pisot.pisot_limit(spec, check_salem=not args.no_check), ctx)


def cmd_pisot_quotient(args, ctx: Ctx) -> Output:
    if args.named:
        pg, root = _named_coloured(args.named)
    else:
        if not args.spec:
            raise ParseError("give --spec FILE or --named NAME")
        d = json.loads(_read_file(args.spec))
        pg, root = pisot.PisotGraph.from_dict(d), int(d.get("root", 0))
    if args.root is not None:
        root = args.root
    q = pisot.pisot_graph_quotient(pg, root)
    return Output({"quotient": q.to_dict(), "string": str(q)}, str(q),
                  [["num", "den"], [q.num.to_text(), q.den.to_text()]])


def cmd_bertin(args, ctx: Ctx) -> Output:
    pg, root = pisot.bertin_family(args.k, args.direction, args.extra_white)
    q = pisot.pisot_graph_quotient(pg, root)
    d = {"k": args.k, "direction": args.direction, "extra_white": args.extra_white,
         "graph": pg.to_dict(), "quotient": q.to_dict(), "string": str(q), "notes": list(pg.notes)}
    text = f"q = {q}\nblack vertices: {len(pg.black)}, white leaves: {len(pg.white)}"
    if args.limit:
        lim = pisot.pisot_number(pg)
        d["limit"] = {"minpoly": list(lim.minpoly.coeffs), "theta": ctx.num(lim.theta.approx(ctx.digits + 5))}
        text += f"\nlimit: {lim.minpoly}, theta = {d['limit']['theta']}"
    return Output(d, text, [["k", "num", "den"], [args.k, q.num.to_text(), q.den.to_text()]])


def cmd_convergence(args, ctx: Ctx) -> Output:
    spec, _ = _growth_input(args)
    rep = pisot.convergence_report(spec, range(args.m_from, args.m_to + 1, args.step), ctx.digits + 8)
    rows = [["lengths", "tau", "gap"]] + [[" ".join(map(str, r.lengths)), ctx.num(r.tau), mpmath.nstr(r.gap, 6)] for r in rep.rows]
    d = {
        "theta": ctx.num(rep.theta.approx(ctx.digits + 5)),
        "minpoly": list(rep.minpoly.coeffs),
        "monotone": rep.monotone,
        "rows": [{"lengths": list(r.lengths), "tau": ctx.num(r.tau), "gap": mpmath.nstr(r.gap, 6)} for r in rep.rows],
    }
    text = f"theta = {d['theta']} ({rep.minpoly})\n" + rep.to_csv(ctx.digits).rstrip("\n")
    if ctx.fmt == "csv":
        text = rep.to_csv(ctx.digits)
    return Output(d, text, None if ctx.fmt != "csv" else [r.split(",") for r in rep.to_csv(ctx.digits).splitlines()])


def cmd_mahler(args, ctx: Ctx) -> Output:
    g, name = resolve_graph(args.graph)
    r = mahler.graph_mahler(g, ctx.precision, name)
    d = r.to_dict(ctx.digits)
    if args.direct:
        d["direct"] = ctx.num(mahler.graph_mahler_direct(g, ctx.precision))
    text = f"M({name}) = {ctx.num(r.measure)}  (eigenvalues > 2: {r.eigs_gt_2}, salem: {r.is_salem})"
    if args.direct:
        text += f"\npolynomial route: {d['direct']}"
    return Output(d, text, [list(mahler.CSV_HEADER), r.csv_row(ctx.digits)])


def cmd_search(args, ctx: Ctx) -> Output:
    threshold = RHO if args.threshold == "rho" else args.threshold
    res = mahler.classify_small_measure(args.max_arm, args.max_end, threshold, args.max_vertices)
    rows = [list(mahler.CSV_HEADER)] + [r.csv_row(ctx.digits) for r in res]
    text = "\n".join(f"{r.spec:40s} {ctx.num(r.measure):>16s} {r.eigs_gt_2} {'salem' if r.is_salem else '-'}"
                     + (f"  [{'; '.join(r.flags)}]" if r.flags else "") for r in res)
    return Output({"threshold": str(args.threshold), "results": [r.to_dict(ctx.digits) for r in res]}, text, rows)


def cmd_table(args, ctx: Ctx) -> Output:
    if args.recipe:
        row = table.lookup(args.recipe)
        recipes = [(row.label if row else None, row.recipe if row else args.recipe, row.power if row else 1)]
    else:
        recipes = [(r.label, r.recipe, r.power) for r in table.TABLE]
    items, lines, rows = [], [], [["label", "recipe", "tau", "base", "minpoly", "decomposition"]]
    for label, recipe, power in recipes:
        r = table.evaluate_recipe(recipe)
        tau = r.tau.approx(ctx.digits + 10)
        base = table.root_of_power(r.tau, power, ctx.digits + 10)
        dec = _decomp_dict(r.decomposition)
        item = {
            "label": label,
            "recipe": recipe,
            "type": r.kind,
            "tau": ctx.num(tau),
            "base": ctx.num(base),
            "minpoly": list(r.minpoly.coeffs),
            "decomposition": dec,
        }
        if r.square_root_minpoly is not None:
            item["sqrt_minpoly"] = list(r.square_root_minpoly.coeffs)
        items.append(item)
        where = f"centre {dec['center']}" if dec["type"] == "a" else f"edge {tuple(dec['edge'])}"
        lines.append(f"{label or '-':10s} {recipe:40s} tau = {ctx.num(tau)}  base = {ctx.num(base)}")
        lines.append(f"{'':10s} minpoly {r.minpoly}; type ({r.kind}); certificate: {where}")
        if r.square_root_minpoly is not None:
            lines.append(f"{'':10s} sqrt(tau) has minpoly {r.square_root_minpoly}")
        rows.append([label or "", recipe, ctx.num(tau), ctx.num(base), r.minpoly.to_text(), json.dumps(dec)])
    return Output({"rows": items}, "\n".join(lines), rows)


def cmd_verify_catalogue(args, ctx: Ctx) -> Output:
    rep = catalogue.verify_catalogue(args.max_n, args.direct)
    text = f"checked {rep.checked} entries, {len(rep.mismatches)} mismatches"
    for name, why in rep.mismatches:
        text += f"\n  {name}: {why}"
    out = Output({"checked": rep.checked, "mismatches": [list(m) for m in rep.mismatches], "ok": rep.ok}, text,
                 [["checked", "mismatches"], [rep.checked, len(rep.mismatches)]])
    out.status = 0 if rep.ok else 1
    return out


# -- parser ----------------------------------------------------------------------------

def _positive_decimal(text: str) -> Fraction:
    try:
        v = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _threshold(text: str):
    if text == "rho":
        return text
    try:
        v = Fraction(text)
    except ValueError:
        raise argparse.ArgumentTypeError("threshold is 'rho' or a decimal") from None
    if v <= 1:
        raise argparse.ArgumentTypeError("threshold must exceed 1")
    return text


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="salemforge", description="Salem and Pisot numbers from graphs.")
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--precision", type=_positive_decimal, default=None,
                   help=f"absolute precision of real outputs (default 1e-12, or ${ENV_PRECISION})")
    sub = p.add_subparsers(dest="command", required=True, metavar="command")

    def add(name: str, fn: Callable, help_: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=fn)
        # allow global options after the subcommand as well
        sp.add_argument("--format", choices=("text", "json", "csv"), default=argparse.SUPPRESS)
        sp.add_argument("--precision", type=_positive_decimal, default=argparse.SUPPRESS)
        return sp

    sp = add("charpoly", cmd_charpoly, "characteristic polynomial")
    sp.add_argument("graph")
    sp = add("reciprocal", cmd_reciprocal, "reciprocal polynomial and its factors")
    sp.add_argument("graph")
    sp = add("classify", cmd_classify, "Salem / cyclotomic classification")
    sp.add_argument("graph")
    sp.add_argument("--require-salem", action="store_true", help="exit 1 unless the graph is Salem")
    for name, fn in (("quotient", cmd_quotient), ("nu", cmd_nu)):
        sp = add(name, fn, f"{name} of a rooted tree")
        sp.add_argument("tree")
        sp.add_argument("--root", type=int)
        if name == "quotient":
            sp.add_argument("--direct", action="store_true", help="ratio of reciprocal polynomials")
    sp = add("build", cmd_build, "edge list of a named graph")
    sp.add_argument("spec")
    sp = add("salem-a", cmd_salem_a, "root joined to cyclotomic rooted trees")
    sp.add_argument("forest", help="e.g. 'D9(0)' or 'E6(1),A2(1,2)'")
    sp = add("salem-b", cmd_salem_b, "two type-(a) trees joined at their centres")
    sp.add_argument("first")
    sp.add_argument("second", nargs="?")
    sp.add_argument("--strict", action="store_true", help="require finite nu > 2 on both sides")
    sp = add("decompose", cmd_decompose, "type-(a) centre or type-(b) edge of a Salem tree")
    sp.add_argument("tree")
    sp.add_argument("--start", type=int, default=0)
    for name, fn in (("pisot-limit", cmd_pisot_limit), ("convergence", cmd_convergence)):
        sp = add(name, fn, "limit Pisot polynomial" if name == "pisot-limit" else "Salem numbers approaching the limit")
        g = sp.add_mutually_exclusive_group()
        g.add_argument("--spec", help="growth spec or coloured graph JSON file")
        g.add_argument("--named", choices=("small-left", "small-right"))
        if name == "pisot-limit":
            sp.add_argument("--no-check", action="store_true", help="skip the eventually-Salem check")
        else:
            sp.add_argument("--m-from", type=int, default=6)
            sp.add_argument("--m-to", type=int, default=20)
            sp.add_argument("--step", type=int, default=1)
    sp = add("pisot-quotient", cmd_pisot_quotient, "quotient of a coloured tree")
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--spec")
    g.add_argument("--named", choices=("small-left", "small-right"))
    sp.add_argument("--root", type=int)
    sp = add("bertin", cmd_bertin, "coloured trees with quotients (z-1)/(z^2-kz-1), (z-1)/(z(z-k-1))")
    sp.add_argument("k", type=int)
    sp.add_argument("--direction", choices=("below", "above"), default="below")
    sp.add_argument("--extra-white", action="store_true")
    sp.add_argument("--limit", action="store_true", help="also compute the limit Pisot number")
    sp = add("mahler", cmd_mahler, "Mahler measure of a graph")
    sp.add_argument("graph")
    sp.add_argument("--direct", action="store_true", help="also compute via the reciprocal polynomial")
    sp = add("search", cmd_search, "graphs with small Mahler measure")
    sp.add_argument("--max-arm", type=int, default=30)
    sp.add_argument("--max-end", type=int, default=8, help="largest end-arm parameter of Q(a,b,c)")
    sp.add_argument("--max-vertices", type=int, default=9, help="exhaustive sweep size (0 disables)")
    sp.add_argument("--threshold", type=_threshold, default="rho")
    sp = add("table", cmd_table, "small Salem numbers from cyclotomic pieces")
    sp.add_argument("recipe", nargs="?", help="row label (tau5^2) or recipe (E6(1);E6(1)); all rows if omitted")
    sp = add("verify-catalogue", cmd_verify_catalogue, "check the rooted-tree quotient catalogue")
    sp.add_argument("--max-n", type=int, default=30)
    sp.add_argument("--direct", action="store_true")
    return p


def _precision(args) -> Fraction:
    if args.precision is not None:
        return args.precision
    env = os.environ.get(ENV_PRECISION)
    if env:
        try:
            return _positive_decimal(env)
        except argparse.ArgumentTypeError as exc:
            raise ParseError(f"{ENV_PRECISION}: {exc}") from None
    return DEFAULT_PRECISION


def render(out: Output, ctx: Ctx) -> str:
    if ctx.fmt == "json":
        data = dict(out.data)
        data["precision"] = mpmath.nstr(mpmath.mpf(ctx.precision.numerator) / ctx.precision.denominator, 3)
        return json.dumps(data, sort_keys=True) + "\n"
    if ctx.fmt == "csv":
        rows = out.rows
        if rows is None:
            rows = [["key", "value"]] + [[k, json.dumps(v) if isinstance(v, (dict, list)) else v] for k, v in out.data.items()]
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(rows)
        return buf.getvalue()
    return out.text + "\n"


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        prec = _precision(args)
        ctx = Ctx(prec, max(1, _digits_for(prec)), args.format)
        out = args.func(args, ctx)
    except ParseError as exc:
        # malformed input is a usage error, not a mathematical one
        print(f"error: ParseError: {exc}", file=sys.stderr)
        return 2
    except SalemForgeError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(render(out, ctx))
    return out.status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
