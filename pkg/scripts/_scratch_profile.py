"""Scratch: profile the pressure-top probe for a fixed wall-clock slice."""

import cProfile
import pstats
import sys
import time

from deltareduce.coeffs import Coefficient
from deltareduce.poly import DerivativeKey, DiffPoly, Indeterminate
from deltareduce.ranking import Ranking
from deltareduce import engine
from deltareduce.engine import Budget, rosenfeld_groebner

u, v, w, p = (Indeterminate(n) for n in "uvwp")
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

limit = float(sys.argv[1]) if len(sys.argv) > 1 else 25.0
deadline = time.monotonic() + limit


class _TimeUp(Exception):
    pass


_orig_count = engine._Tracker._count


def _count(self):
    _orig_count(self)
    if time.monotonic() > deadline:
        raise _TimeUp()


engine._Tracker._count = _count

prof = cProfile.Profile()
prof.enable()
try:
    rosenfeld_groebner(ns, Ranking((p, u, v, w)), Budget())
except _TimeUp:
    pass
prof.disable()
stats = pstats.Stats(prof)
stats.sort_stats("cumulative").print_stats(22)
stats.sort_stats("tottime").print_stats(22)
