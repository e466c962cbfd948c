"""Scratch: run the Stokes 3-D system through the engine by hand."""

from deltareduce.coeffs import Coefficient
from deltareduce.poly import DEPENDENT, DerivativeKey, DiffPoly, Indeterminate
from deltareduce.ranking import Ranking
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
mom_u = K(u, t=1) + K(p, x=1) - lap(u).scale(nu)
mom_v = K(v, t=1) + K(p, y=1) - lap(v).scale(nu)
mom_w = K(w, t=1) + K(p, z=1) - lap(w).scale(nu)

r = Ranking((u, v, w, p))
verdict = rosenfeld_groebner([continuity, mom_u, mom_v, mom_w], r, Budget())
print("outcome:", verdict.outcome)
print("stats:", verdict.stats)
for chain in verdict.chains:
    print(f"chain with {len(chain)} elements:")
    for q in chain:
        print("   ", repr(q))

print()
print("=== two-scale split system in the viscous no-advection regime ===")
up = Indeterminate("u'")
vp = Indeterminate("v'")
wp = Indeterminate("w'")

mom2_u = K(p, x=1) + K(u, t=1) + K(up, t=1) - (lap(u) + lap(up)).scale(nu)
mom2_v = K(p, y=1) + K(v, t=1) + K(vp, t=1) - (lap(v) + lap(vp)).scale(nu)
mom2_w = K(p, z=1) + K(w, t=1) + K(wp, t=1) - (lap(w) + lap(wp)).scale(nu)

r2 = Ranking((u, v, w, up, vp, wp, p))
verdict2 = rosenfeld_groebner([continuity, mom2_u, mom2_v, mom2_w], r2, Budget())
print("outcome:", verdict2.outcome)
print("stats:", verdict2.stats)
for chain in verdict2.chains:
    print(f"chain with {len(chain)} elements:")
    for q in chain:
        print("   ", repr(q))
