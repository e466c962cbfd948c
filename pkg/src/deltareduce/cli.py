"""Command-line interface.

Subcommands: ``reduce`` (triangular decomposition of a system file),
``classify`` (R/I verdict for a named fluid model and regime), ``table1``
(the full verdict grid), ``verify`` (numeric identity checks), and
``parse`` (syntax check only).

Exit codes: 0 success; 1 a ``classify`` verdict of I; 2 bad input;
3 violated internal invariant.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import table as table_mod
from . import verify as verify_mod
from .engine import Budget, rosenfeld_groebner
from .errors import DeltaReduceError, InternalError, UnsupportedCell
from .models import COLUMNS, MODEL_NAMES
from .parsing import parse_ranking, parse_system_file
from .ranking import Ranking
from .rendering import render_verdict, verdict_payload

_REGIME_ALIASES = {
    "c": "C", "compressible": "C",
    "in": "In", "incompressible": "In",
    "s": "S", "stokes": "S",
    "e": "E", "euler": "E",
    "st": "St", "stationary": "St",
}


def _budget_args(p: argparse.ArgumentParser):
    p.add_argument("--budget", type=int, default=400, metavar="N",
                   help="quiescence window: passes with no new leader "
                        "before declaring reducibility (default 400)")
    p.add_argument("--order-cap", type=int, default=12, metavar="N",
                   help="max derivative order before giving up (default 12)")
    p.add_argument("--step-cap", type=int, default=100000, metavar="N",
                   help="max reduction steps before giving up "
                        "(default 100000)")
    p.add_argument("--step-unit", choices=("elementary", "pass"),
                   default="elementary",
                   help="what one budget step counts (default elementary)")


def _format_arg(p: argparse.ArgumentParser):
    p.add_argument("--format", choices=("human", "json"), default="human")


def _emit_json(payload: dict):
    print(json.dumps(payload, indent=2))


def _parse_grid(text: str) -> tuple[int, int]:
    parts = [int(p) for p in text.split(",") if p.strip()]
    if len(parts) == 1:
        return parts[0], 2 * parts[0] - 1
    if len(parts) == 2:
        return parts[0], parts[1]
    raise ValueError("--grid takes 'coarse' or 'coarse,fine'")


def _system_ranking(args, sf) -> Ranking:
    if args.ranking:
        return parse_ranking(args.ranking, sf.dependent_map)
    if sf.ranking is not None:
        return sf.ranking
    raise DeltaReduceError(
        "no ranking: add a 'ranking ...' line to the file or pass --ranking")


def _cmd_reduce(args) -> int:
    sf = parse_system_file(Path(args.file).read_text())
    ranking = _system_ranking(args, sf)
    budget = Budget(args.budget, args.order_cap, args.step_cap)
    verdict = rosenfeld_groebner(list(sf.equations), ranking, budget,
                                 args.step_unit)
    if args.format == "json":
        _emit_json(verdict_payload(verdict, ranking))
    else:
        print(render_verdict(verdict, ranking), end="")
    return 0


def _regime_code(flag: str) -> str:
    code = _REGIME_ALIASES.get(flag.lower())
    if code is None:
        raise DeltaReduceError(
            f"unknown regime {flag!r}; use one of "
            + ", ".join(sorted(set(_REGIME_ALIASES.values()))))
    return code


def _cmd_classify(args) -> int:
    column = _regime_code(args.regime)
    budget = Budget(args.budget, args.order_cap, args.step_cap)
    cell = table_mod.run_cell(args.model, column, budget, args.wall,
                              args.step_unit, args.with_curl_defs)
    if cell.letter is None:
        raise UnsupportedCell(
            f"{args.model} has no defined equations in regime {column}")
    if args.format == "json":
        payload = {"schema": "delta-reduce/1", "kind": "classify",
                   "model": args.model}
        payload.update(table_mod.cell_payload(cell))
        _emit_json(payload)
    else:
        notes = [cell.status] if cell.status != "completed" else []
        if cell.reason:
            notes.append(cell.reason)
        if cell.best_effort:
            notes.append("best-effort")
        tail = f" ({', '.join(notes)})" if notes else ""
        print(f"{args.model} {column}: {cell.letter}{tail}")
    return 1 if cell.letter == "I" else 0


def _cmd_table1(args) -> int:
    budget = Budget(args.budget, args.order_cap, args.step_cap)

    def progress(cell):
        print(f"[table1] {cell.model}/{cell.column}: {cell.display}"
              f" ({cell.status}, {cell.seconds:.1f}s)", file=sys.stderr)

    cells = table_mod.run_table(budget, args.wall, args.step_unit,
                                args.with_curl_defs, on_cell=progress)
    if args.format == "json":
        _emit_json(table_mod.table_payload(cells))
    else:
        print(table_mod.render_table(cells), end="")
    return 0


def _cmd_verify(args) -> int:
    pair = _parse_grid(args.grid)
    if args.check == "all":
        reports = verify_mod.run_all(pair, args.seed)
    else:
        reports = [verify_mod.check_identity(args.check, pair, args.seed,
                                             args.dim)]
    if args.format == "json":
        _emit_json({"schema": "delta-reduce/1", "kind": "report",
                    "rows": [r.payload() for r in reports]})
    else:
        for r in reports:
            order = "-" if r.observed_order is None \
                else f"{r.observed_order:.2f}"
            print(f"{r.check:28s} dim={r.dim}  "
                  f"coarse={r.residual_coarse:.3e}  "
                  f"fine={r.residual_fine:.3e}  order={order:>6s}  "
                  f"{r.classification}")
    return 0


def _cmd_parse(args) -> int:
    sf = parse_system_file(Path(args.file).read_text())
    note = ""
    if sf.ranking is not None:
        note = "; ranking " + " > ".join(sf.ranking.names())
    print(f"ok: {len(sf.equations)} equations, "
          f"{len(sf.dependents)} indeterminates, "
          f"{len(sf.parameters)} parameters{note}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="delta-reduce",
        description="Differential-algebra elimination for PDE systems.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reduce", help="triangular decomposition of a file")
    p.add_argument("file")
    p.add_argument("--ranking", help='e.g. "u>v>w>p; prec x,y,z,t"')
    _budget_args(p)
    _format_arg(p)
    p.set_defaults(fn=_cmd_reduce)

    p = sub.add_parser("classify", help="R/I verdict for one model cell")
    p.add_argument("--model", required=True, choices=MODEL_NAMES)
    p.add_argument("--regime", required=True,
                   help="C, In, S, E, or St (long names accepted)")
    p.add_argument("--wall", type=float, default=None, metavar="SECONDS",
                   help="optional wall-clock limit; a timed-out run "
                        "reports I (wall_limit)")
    p.add_argument("--with-curl-defs", action=argparse.BooleanOptionalAction,
                   default=True,
                   help="include vorticity definition equations in the "
                        "omega-RANS model")
    _budget_args(p)
    _format_arg(p)
    p.set_defaults(fn=_cmd_classify)

    p = sub.add_parser("table1", help="classify the whole verdict grid")
    p.add_argument("--wall", type=float, default=table_mod.WALL_DEFAULT,
                   metavar="SECONDS",
                   help=f"per-cell wall clock (default "
                        f"{table_mod.WALL_DEFAULT:.0f}s)")
    p.add_argument("--with-curl-defs", action=argparse.BooleanOptionalAction,
                   default=True)
    _budget_args(p)
    _format_arg(p)
    p.set_defaults(fn=_cmd_table1)

    p = sub.add_parser("verify", help="numeric identity checks")
    p.add_argument("check", choices=verify_mod.CHECK_NAMES + ("all",))
    p.add_argument("--grid", default="16,31", metavar="N[,M]",
                   help="coarse[,fine] points per axis (default 16,31)")
    p.add_argument("--dim", type=int, choices=(2, 3), default=3)
    p.add_argument("--seed", type=int, default=verify_mod.DEFAULT_SEED)
    _format_arg(p)
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("parse", help="syntax-check a system file")
    p.add_argument("file")
    p.set_defaults(fn=_cmd_parse)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except InternalError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 3
    except (DeltaReduceError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
