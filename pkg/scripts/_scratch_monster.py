"""Scratch: capture a blown-up remainder and look for common factors."""

import sys
import time
from collections import Counter

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


class Captured(Exception):
    pass


_orig_rac = reduction.reduce_against_chain
monsters = []


def traced_rac(f, chain, rk, mode="full", on_step=None, premultiplier_check=None):
    rem, trace = _orig_rac(f, chain, rk, mode, on_step, premultiplier_check)
    if rem.term_count() > 3000:
        monsters.append(rem)
        if len(monsters) >= 2:
            raise Captured()
    return rem, trace


reduction.reduce_against_chain = traced_rac

t0 = time.monotonic()
try:
    rosenfeld_groebner(ns, r, Budget())
    print("no monster captured")
    sys.exit(0)
except Captured:
    pass
print(f"captured {len(monsters)} monsters in {time.monotonic()-t0:.1f}s")

for big in monsters:
    n = big.term_count()
    counts = Counter()
    min_deg = {}
    for mono, _ in big.terms():
        for key in mono.keys():
            counts[key] += 1
            d = mono.degree_of(key)
            prev = min_deg.get(key)
            min_deg[key] = d if prev is None else min(prev, d)
    print(f"--- monster with {n} terms, leader "
          f"{leader_data(big, r).leader!r}")
    full = [(k, min_deg[k]) for k, c in counts.items() if c == n]
    print(f"    keys present in every term: "
          f"{[(repr(k), d) for k, d in full]}")
    top = counts.most_common(6)
    print(f"    most common keys: {[(repr(k), c) for k, c in top]}")
    degs = Counter(m.degree for m, _ in big.terms())
    print(f"    monomial degree histogram: {dict(sorted(degs.items()))}")
