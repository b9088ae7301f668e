"""salemforge: Salem and Pisot numbers arising from graphs."""
from .errors import *  # noqa: F401,F403
from .poly import IntPoly
from .ratfunc import INF, RatFunc, format_nu
from .graph import Graph
from .families import FamilySpec, build, parse_family
from .spectrum import char_poly, count_eigs, index
from .measure import RHO, certify_pisot, mahler_measure
from .salem import SalemClassification, classify, reciprocal_poly, tau
from .trees import (
    RootedGraph,
    RootedTree,
    decompose_salem_tree,
    nu,
    quotient,
    quotient_direct,
    salem_tree_type_a,
    salem_tree_type_b,
)
from .catalogue import parse_rooted, verify_catalogue
from .pisot import GrowthSpec, PisotGraph, convergence_report, leading_poly, pisot_limit
from .mahler import classify_small_measure, graph_mahler
from .table import TABLE, evaluate_recipe

__version__ = "0.1.0"
