"""Scratch: time the classification of every cell expected to be reducible."""

import sys
import time

from deltareduce.engine import Budget, rosenfeld_groebner
from deltareduce.models import REGIMES, build

CELLS = [
    ("stokes3d", "In"),
    ("rans_stokes", "In"),
    ("ns3d", "S"),
    ("rans3d", "S"),
    ("omega_rans", "S"),
    ("streamfunction2d", "In"),
    ("streamfunction2d", "St"),
    ("prandtl", "In"),
]

only = sys.argv[1:] if len(sys.argv) > 1 else None
for name, col in CELLS:
    if only and name not in only:
        continue
    spec = build(name, REGIMES[col])
    t0 = time.monotonic()
    try:
        verdict = rosenfeld_groebner(spec.equations, spec.suggested_ranking,
                                     Budget())
        dt = time.monotonic() - t0
        print(f"{name}/{col}: {verdict.outcome} reason={verdict.reason} "
              f"steps={verdict.stats.total_steps} "
              f"max_order={verdict.stats.max_order_reached} "
              f"branches={len(verdict.branch_conditions)} [{dt:.2f}s]",
              flush=True)
    except Exception as exc:  # noqa: BLE001 - scratch probe
        dt = time.monotonic() - t0
        print(f"{name}/{col}: EXCEPTION {type(exc).__name__}: {exc} [{dt:.2f}s]",
              flush=True)
