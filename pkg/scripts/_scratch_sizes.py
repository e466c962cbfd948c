"""Scratch: log per-reduction polynomial sizes for the NS probe."""

import sys
import time

from deltareduce.coeffs import Coefficient
from deltareduce.poly import DerivativeKey, DiffPoly, Indeterminate
from deltareduce.ranking import Ranking, leader_data
from deltareduce import engine, reduction
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


continuity = K(u, x=1) + K(v, y=1) + K(w, z=1)


def momentum(b):
    conv = K(u) * K(b, x=1) + K(v) * K(b, y=1) + K(w) * K(b, z=1)
    grads = {"u": K(p, x=1), "v": K(p, y=1), "w": K(p, z=1)}
    return K(b, t=1) + conv + grads[b.name] - lap(b).scale(nu)


ns = [continuity, momentum(u), momentum(v), momentum(w)]
r = Ranking((u, v, w, p))

_orig_rac = reduction.reduce_against_chain
_t0 = time.monotonic()


def traced_rac(f, chain, rk, mode="full", on_step=None, premultiplier_check=None):
    ld = leader_data(f, rk)
    elems = chain.elements if isinstance(chain, reduction.Chain) else chain
    start = time.monotonic()
    rem, trace = _orig_rac(f, chain, rk, mode, on_step, premultiplier_check)
    dt = time.monotonic() - start
    if dt > 0.2 or f.term_count() > 150:
        rl = "0" if rem.is_zero() else repr(leader_data(rem, rk).leader)
        print(f"[{time.monotonic()-_t0:7.1f}s] reduce |f|={f.term_count()}"
              f" lead={ld.leader!r} deg{ld.degree}"
              f" vs {len(list(elems))} divisors"
              f" -> |rem|={rem.term_count()} lead={rl}"
              f" steps={trace.step_count} [{dt:.2f}s]",
              file=sys.stderr, flush=True)
    return rem, trace


reduction.reduce_against_chain = traced_rac
engine.reduce_against_chain = traced_rac
# autoreduce holds its own reference; rebind inside its module namespace only.

t0 = time.monotonic()
try:
    verdict = rosenfeld_groebner(ns, r, Budget())
    print(f"verdict: {verdict.outcome} {verdict.reason} {verdict.stats}"
          f" [{time.monotonic()-t0:.1f}s]")
except Exception as exc:  # noqa: BLE001
    print(f"EXCEPTION {type(exc).__name__}: {exc} [{time.monotonic()-t0:.1f}s]")
