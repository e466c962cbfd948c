"""Reducibility grid over the fluid-model families.

Each cell classifies one (model, regime) system under its suggested
ranking and a shared budget.  Cells run in a worker process with a hard
wall-clock limit: a cell whose decomposition is still generating work
when the wall is reached is reported irreducible with ``wall_limit``
status — the same empirical reading ("the algorithm keeps producing new
leaders and does not come back") that the budget caps encode, but
enforced in real time so a grid run always finishes.  Wall-limited and
invented-form cells are both marked best-effort.
"""

from __future__ import annotations

import multiprocessing
import time
from dataclasses import dataclass

from .engine import Budget, rosenfeld_groebner
from .errors import UnsupportedCell
from .models import COLUMNS, REGIMES, build

#: Table rows in display order: (model name, row label).
ROWS = (
    ("busemann", "Busemann jet"),
    ("prandtl", "Prandtl boundary layer"),
    ("ns3d", "Navier-Stokes (3-D)"),
    ("rans3d", "RANS (3-D)"),
    ("omega_rans", "omega-RANS"),
    ("streamfunction2d", "Stream-function NS (2-D)"),
)

#: Default per-cell wall clock, seconds; chosen under the one-minute
#: budget the grid is expected to respect per cell.
WALL_DEFAULT = 30.0


@dataclass(frozen=True)
class CellResult:
    """Outcome of one grid cell."""

    model: str
    column: str
    letter: str | None  # "R", "I", or None when unsupported
    status: str  # completed | wall_limit | unsupported
    reason: str | None  # cap that fired, for completed irreducible cells
    best_effort: bool
    seconds: float
    stats: dict | None

    @property
    def display(self) -> str:
        if self.letter is None:
            return "-"
        mark = "*" if self.best_effort else ""
        return self.letter + mark


def _stats_dict(verdict) -> dict:
    return {
        "total_steps": verdict.stats.total_steps,
        "distinct_leaders_seen": verdict.stats.distinct_leaders_seen,
        "max_order_reached": verdict.stats.max_order_reached,
    }


def _cell_worker(conn, name: str, column: str, budget_fields: tuple,
                 step_unit: str, with_curl_defs: bool):
    try:
        spec = build(name, REGIMES[column], with_curl_defs=with_curl_defs)
        verdict = rosenfeld_groebner(spec.equations, spec.suggested_ranking,
                                     Budget(*budget_fields), step_unit)
        conn.send({
            "status": "completed",
            "letter": "R" if verdict.reducible else "I",
            "reason": verdict.reason,
            "best_effort": spec.best_effort,
            "stats": _stats_dict(verdict),
        })
    except UnsupportedCell as exc:
        conn.send({"status": "unsupported", "detail": str(exc)})
    except Exception as exc:  # pragma: no cover - surfaced to the parent
        conn.send({"status": "error",
                   "detail": f"{type(exc).__name__}: {exc}"})
    finally:
        conn.close()


def _context():
    try:
        return multiprocessing.get_context("fork")
    except ValueError:  # pragma: no cover - non-fork platform
        return multiprocessing.get_context()


def run_cell(name: str, column: str, budget: Budget = Budget(),
             wall: float | None = WALL_DEFAULT, step_unit: str = "elementary",
             with_curl_defs: bool = True) -> CellResult:
    """Classify one cell in a worker process under a wall-clock limit.

    ``wall=None`` runs the cell inline with no time limit; the budget caps
    are then the only stopping rule.
    """
    try:
        spec = build(name, REGIMES[column], with_curl_defs=with_curl_defs)
        best_effort = spec.best_effort
    except UnsupportedCell:
        return CellResult(name, column, None, "unsupported", None, False,
                          0.0, None)

    if wall is None:
        start = time.monotonic()
        verdict = rosenfeld_groebner(spec.equations, spec.suggested_ranking,
                                     budget, step_unit)
        return CellResult(
            name, column, "R" if verdict.reducible else "I", "completed",
            verdict.reason, best_effort, time.monotonic() - start,
            _stats_dict(verdict))

    ctx = _context()
    parent_conn, child_conn = ctx.Pipe(duplex=False)
    fields = (budget.quiescence_window, budget.order_cap, budget.step_cap)
    proc = ctx.Process(target=_cell_worker,
                       args=(child_conn, name, column, fields, step_unit,
                             with_curl_defs))
    start = time.monotonic()
    proc.start()
    child_conn.close()
    payload = None
    if parent_conn.poll(wall):
        payload = parent_conn.recv()
    elapsed = time.monotonic() - start
    parent_conn.close()
    if payload is None:
        proc.terminate()
        proc.join(5.0)
        if proc.is_alive():  # pragma: no cover - terminate sufficed so far
            proc.kill()
            proc.join()
        return CellResult(name, column, "I", "wall_limit", None, True,
                          elapsed, None)
    proc.join()
    if payload["status"] == "unsupported":
        return CellResult(name, column, None, "unsupported", None, False,
                          elapsed, None)
    if payload["status"] == "error":
        raise RuntimeError(
            f"cell {name}/{column} failed: {payload['detail']}")
    return CellResult(name, column, payload["letter"], "completed",
                      payload["reason"], payload["best_effort"], elapsed,
                      payload["stats"])


def run_table(budget: Budget = Budget(), wall: float | None = WALL_DEFAULT,
              step_unit: str = "elementary", with_curl_defs: bool = True,
              on_cell=None) -> list[CellResult]:
    """Classify every cell of the grid, row-major.

    ``on_cell`` is called with each :class:`CellResult` as it finishes,
    for progress reporting.
    """
    results = []
    for name, _ in ROWS:
        for column in COLUMNS:
            cell = run_cell(name, column, budget, wall, step_unit,
                            with_curl_defs)
            if on_cell is not None:
                on_cell(cell)
            results.append(cell)
    return results


def cell_payload(cell: CellResult) -> dict:
    """JSON-ready cell dictionary.  Timing is deliberately omitted so two
    identical runs produce byte-identical output."""
    return {
        "column": cell.column,
        "letter": cell.letter,
        "display": cell.display,
        "status": cell.status,
        "reason": cell.reason,
        "best_effort": cell.best_effort,
        "stats": cell.stats,
    }


def table_payload(cells: list[CellResult]) -> dict:
    """JSON-ready dictionary for the whole verdict grid."""
    labels = dict(ROWS)
    rows: list[dict] = []
    for cell in cells:
        if not rows or rows[-1]["model"] != cell.model:
            rows.append({"model": cell.model, "label": labels[cell.model],
                         "cells": []})
        rows[-1]["cells"].append(cell_payload(cell))
    return {"schema": "delta-reduce/1", "kind": "table",
            "columns": list(COLUMNS), "rows": rows}


def render_table(cells: list[CellResult]) -> str:
    """Fixed-width text grid; ``*`` marks best-effort cells, ``-`` cells
    with no defined equations."""
    labels = dict(ROWS)
    by_model: dict[str, dict[str, CellResult]] = {}
    for cell in cells:
        by_model.setdefault(cell.model, {})[cell.column] = cell
    width = max(len(label) for label in labels.values()) + 2
    lines = ["".join(["model".ljust(width)]
                     + [c.rjust(4) for c in COLUMNS])]
    for name, label in ROWS:
        if name not in by_model:
            continue
        row = by_model[name]
        lines.append("".join(
            [label.ljust(width)]
            + [(row[c].display if c in row else "?").rjust(4)
               for c in COLUMNS]))
    lines.append("")
    lines.append("R = reducible, I = irreducible, - = no defined equations;")
    lines.append("* = best-effort cell (invented standard form or"
                 " wall-limited run).")
    return "\n".join(lines) + "\n"
