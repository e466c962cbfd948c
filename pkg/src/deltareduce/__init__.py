"""Exact differential-algebra elimination for PDE systems.

The package represents systems of polynomial PDEs exactly — coefficients
are rational functions of scalar parameters — and decomposes them into
triangular chains under pure elimination rankings, with budget caps that
turn non-termination into an explicit irreducibility verdict.  A small
finite-difference module independently checks the L2 integral and curl
identities the symbolic work relies on.
"""

from . import errors
from .coeffs import Coefficient
from .engine import (Budget, BranchCondition, RunStats, Verdict, classify,
                     rosenfeld_groebner)
from .models import COLUMNS, MODEL_NAMES, REGIMES, ModelSpec, Regime, build
from .parsing import SystemFile, parse_ranking, parse_system, parse_system_file
from .poly import DerivativeKey, DiffPoly, Indeterminate, Monomial
from .ranking import Ranking, leader_data
from .reduction import (Chain, autoreduce, normalize_leading, pseudo_reduce,
                        reduce_against_chain)
from .rendering import (render_chain, render_poly, render_solved,
                        render_verdict, verdict_payload)
from .table import CellResult, run_cell, run_table
from .verify import Grid, IdentityReport, check_identity, run_all

__version__ = "0.1.0"

__all__ = [
    "errors", "Coefficient", "DiffPoly", "DerivativeKey", "Indeterminate",
    "Monomial", "Ranking", "leader_data", "Chain", "autoreduce",
    "normalize_leading", "pseudo_reduce", "reduce_against_chain",
    "Budget", "BranchCondition", "RunStats", "Verdict", "classify",
    "rosenfeld_groebner", "COLUMNS", "MODEL_NAMES", "REGIMES", "ModelSpec",
    "Regime", "build", "SystemFile", "parse_ranking", "parse_system",
    "parse_system_file", "render_chain", "render_poly", "render_solved",
    "render_verdict", "verdict_payload", "CellResult", "run_cell",
    "run_table", "Grid", "IdentityReport", "check_identity", "run_all",
    "__version__",
]
