"""Scratch: probe the hard classification cells before wiring the model zoo."""

import sys
import time

from deltareduce.coeffs import Coefficient
from deltareduce.poly import DerivativeKey, DiffPoly, Indeterminate
from deltareduce.ranking import Ranking
from deltareduce import engine
from deltareduce.engine import Budget, rosenfeld_groebner

u = Indeterminate("u")
v = Indeterminate("v")
w = Indeterminate("w")
p = Indeterminate("p")
nu = Coefficient.param("nu")


def K(base, x=0, y=0, z=0, t=0):
    return DiffPoly.from_key(DerivativeKey(base, (x, y, z, t)))


def lap(base):
    return K(base, x=2) + K(base, y=2) + K(base, z=2)


# Progress instrumentation: wrap the tracker methods.
_orig_observe = engine._Tracker._observe
_orig_count = engine._Tracker._count


def _observe(self, key):
    _orig_observe(self, key)


def _count(self):
    _orig_count(self)
    if self.total_steps % 50 == 0:
        print(f"    ... steps={self.total_steps} window={self.window} "
              f"max_order={self.max_order} leaders={len(self.global_seen)}",
              file=sys.stderr)


engine._Tracker._observe = _observe
engine._Tracker._count = _count


def run(name, polys, ranking, budget):
    t0 = time.monotonic()
    try:
        verdict = rosenfeld_groebner(polys, ranking, budget)
        dt = time.monotonic() - t0
        print(f"{name}: {verdict.outcome} reason={verdict.reason} "
              f"stats={verdict.stats} n_chains={len(verdict.chains)} [{dt:.2f}s]")
        return verdict
    except Exception as exc:  # noqa: BLE001 - scratch probe
        dt = time.monotonic() - t0
        print(f"{name}: EXCEPTION {type(exc).__name__}: {exc} [{dt:.2f}s]")
        return None


continuity = K(u, x=1) + K(v, y=1) + K(w, z=1)


def momentum(b):
    conv = K(u) * K(b, x=1) + K(v) * K(b, y=1) + K(w) * K(b, z=1)
    grads = {"u": K(p, x=1), "v": K(p, y=1), "w": K(p, z=1)}
    return K(b, t=1) + conv + grads[b.name] - lap(b).scale(nu)


ns = [continuity, momentum(u), momentum(v), momentum(w)]

cap = int(sys.argv[1]) if len(sys.argv) > 1 else 0
if cap > 0:
    run(f"ns3d In (order_cap={cap})", ns, Ranking((u, v, w, p)),
        Budget(order_cap=cap))
else:
    run("ns3d In p-top (order_cap=12)", ns, Ranking((p, u, v, w)), Budget())
