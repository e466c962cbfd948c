"""Fluid-model PDE families as differential-polynomial systems.

Each family is built in a regime (compressible/incompressible crossed
with an optional Stokes, Euler, or stationary limit) and comes with a
suggested elimination ranking.  Regime limits act syntactically on the
equations: the Stokes limit drops the convective products, the Euler
limit drops every monomial whose coefficient involves the viscosity
parameter, and the stationary limit drops every monomial containing a
time derivative.

Families whose equations are standard forms chosen here rather than
fixed by an upstream display are marked ``best_effort``; the Busemann
jet has no agreed polynomial form at all and every cell of it raises
:class:`~deltareduce.errors.UnsupportedCell`.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .coeffs import Coefficient
from .errors import UnsupportedCell
from .poly import DerivativeKey, DiffPoly, Indeterminate
from .ranking import Ranking

NU = Coefficient.param("nu")

MODEL_NAMES = ("stokes3d", "rans_stokes", "ns3d", "rans3d", "omega_rans",
               "streamfunction2d", "prandtl", "busemann")

#: Table column codes in display order.
COLUMNS = ("C", "In", "S", "E", "St")


@dataclass(frozen=True)
class Regime:
    """Which limit of a family is being built.

    Exactly one of ``compressible``/``incompressible`` holds, and at most
    one of the three limits; every limit here is taken of the
    incompressible system, matching the table column semantics.
    """

    compressible: bool = False
    incompressible: bool = False
    stokes_limit: bool = False
    euler_limit: bool = False
    stationary: bool = False

    def __post_init__(self):
        if self.compressible == self.incompressible:
            raise ValueError(
                "exactly one of compressible/incompressible must be set")
        if sum((self.stokes_limit, self.euler_limit, self.stationary)) > 1:
            raise ValueError("at most one limit flag may be set")
        if self.compressible and (self.stokes_limit or self.euler_limit
                                  or self.stationary):
            raise ValueError("limits are taken of the incompressible system")

    @property
    def column(self) -> str:
        if self.compressible:
            return "C"
        if self.stokes_limit:
            return "S"
        if self.euler_limit:
            return "E"
        if self.stationary:
            return "St"
        return "In"


#: Regime for each table column.
REGIMES = {
    "C": Regime(compressible=True),
    "In": Regime(incompressible=True),
    "S": Regime(incompressible=True, stokes_limit=True),
    "E": Regime(incompressible=True, euler_limit=True),
    "St": Regime(incompressible=True, stationary=True),
}


@dataclass(frozen=True)
class ModelSpec:
    """A built system: equations, ranking, and provenance flags."""

    name: str
    regime: Regime
    dimension: int
    equations: tuple[DiffPoly, ...]
    suggested_ranking: Ranking
    best_effort: bool = False

    def __post_init__(self):
        if not self.equations:
            raise ValueError("model has no equations")


def _key(ind: Indeterminate, x=0, y=0, z=0, t=0) -> DiffPoly:
    return DiffPoly.from_key(DerivativeKey(ind, (x, y, z, t)))


def _lap(ind: Indeterminate) -> DiffPoly:
    return _key(ind, x=2) + _key(ind, y=2) + _key(ind, z=2)


def _lap2d(ind: Indeterminate) -> DiffPoly:
    return _key(ind, x=2) + _key(ind, y=2)


def _advect(fields, target: Indeterminate) -> DiffPoly:
    """(fields . nabla) target, expanded componentwise."""
    ax, ay, az = fields
    return (_key(ax) * _key(target, x=1) + _key(ay) * _key(target, y=1)
            + _key(az) * _key(target, z=1))


def drop_t_monomials(p: DiffPoly) -> DiffPoly:
    """Remove every monomial containing a t-derivative key."""
    out = DiffPoly.zero()
    for mono, coef in p.terms():
        if any(key.alpha[3] > 0 for key, _ in mono.pairs):
            continue
        out = out + DiffPoly({mono: coef})
    return out


def drop_nu_monomials(p: DiffPoly) -> DiffPoly:
    """Remove every monomial whose coefficient involves the parameter nu."""
    out = DiffPoly.zero()
    for mono, coef in p.terms():
        if coef.mentions_param("nu"):
            continue
        out = out + DiffPoly({mono: coef})
    return out


def _apply_limits(equations, regime: Regime):
    eqs = list(equations)
    if regime.euler_limit:
        eqs = [drop_nu_monomials(e) for e in eqs]
    if regime.stationary:
        eqs = [drop_t_monomials(e) for e in eqs]
    return tuple(e for e in eqs if not e.is_zero())


def _velocity3d():
    return Indeterminate("u"), Indeterminate("v"), Indeterminate("w")


def _fluct3d():
    return Indeterminate("u'"), Indeterminate("v'"), Indeterminate("w'")


def _ns_equations(regime: Regime, with_convection: bool):
    u, v, w = _velocity3d()
    p = Indeterminate("p")
    vel = (u, v, w)
    grads = {u: _key(p, x=1), v: _key(p, y=1), w: _key(p, z=1)}
    eqs = [_key(u, x=1) + _key(v, y=1) + _key(w, z=1)]
    for comp in vel:
        momentum = _key(comp, t=1) + grads[comp] - _lap(comp).scale(NU)
        if with_convection and not regime.stokes_limit:
            momentum = momentum + _advect(vel, comp)
        eqs.append(momentum)
    return tuple(eqs), Ranking((u, v, w, p))


def _ns_compressible():
    """Minimal compressible system: the momentum equations keep the
    pressure indeterminate; density enters through the continuity
    equation, with no closure relation between the two."""
    u, v, w = _velocity3d()
    p = Indeterminate("p")
    rho = Indeterminate("rho")
    vel = (u, v, w)
    continuity = _key(rho, t=1)
    for comp, axis in zip(vel, ("x", "y", "z")):
        prod = _key(rho) * _key(comp)
        continuity = continuity + prod.differentiate(axis)
    eqs = [continuity]
    grads = {u: _key(p, x=1), v: _key(p, y=1), w: _key(p, z=1)}
    for comp in vel:
        eqs.append(_key(comp, t=1) + _advect(vel, comp) + grads[comp]
                   - _lap(comp).scale(NU))
    return tuple(eqs), Ranking((u, v, w, p, rho))


def _rans_equations(regime: Regime, with_convection: bool):
    u, v, w = _velocity3d()
    uf, vf, wf = _fluct3d()
    p = Indeterminate("p")
    mean = (u, v, w)
    grads = {u: _key(p, x=1), v: _key(p, y=1), w: _key(p, z=1)}
    eqs = [_key(u, x=1) + _key(v, y=1) + _key(w, z=1)]
    for comp, fluc in zip(mean, (uf, vf, wf)):
        momentum = (grads[comp] + _key(comp, t=1) + _key(fluc, t=1)
                    - (_lap(comp) + _lap(fluc)).scale(NU))
        if with_convection and not regime.stokes_limit:
            momentum = momentum + _advect(mean, comp)
        eqs.append(momentum)
    return tuple(eqs), Ranking((u, v, w, uf, vf, wf, p))


def _rans_compressible():
    u, v, w = _velocity3d()
    uf, vf, wf = _fluct3d()
    p = Indeterminate("p")
    rho = Indeterminate("rho")
    mean, fluct = (u, v, w), (uf, vf, wf)
    continuity = _key(rho, t=1)
    for comp, fluc, axis in zip(mean, fluct, ("x", "y", "z")):
        prod = _key(rho) * (_key(comp) + _key(fluc))
        continuity = continuity + prod.differentiate(axis)
    eqs = [continuity]
    grads = {u: _key(p, x=1), v: _key(p, y=1), w: _key(p, z=1)}
    for comp, fluc in zip(mean, fluct):
        eqs.append(grads[comp] + _key(comp, t=1) + _key(fluc, t=1)
                   + _advect(mean, comp)
                   - (_lap(comp) + _lap(fluc)).scale(NU))
    return tuple(eqs), Ranking((u, v, w, uf, vf, wf, p, rho))


def _omega_rans_equations(regime: Regime, with_curl_defs: bool = True):
    """Two-scale vorticity balance, curl definitions, divergence constraints.

    The balance couples the mean and fluctuating vorticities through four
    advection groups (mean-on-mean, fluct-on-fluct, and the two crossed
    ones); the Stokes limit removes all four.  Without curl definitions
    the vorticities stay free indeterminates coupled to the velocities
    only through the advection groups.
    """
    u, v, w = _velocity3d()
    uf, vf, wf = _fluct3d()
    ox, oy, oz = (Indeterminate("ox"), Indeterminate("oy"),
                  Indeterminate("oz"))
    oxf, oyf, ozf = (Indeterminate("ox'"), Indeterminate("oy'"),
                     Indeterminate("oz'"))
    mean_vel, fluct_vel = (u, v, w), (uf, vf, wf)
    mean_vort, fluct_vort = (ox, oy, oz), (oxf, oyf, ozf)

    eqs = []
    for om, omf in zip(mean_vort, fluct_vort):
        balance = (_key(om, t=1) + _key(omf, t=1)
                   - (_lap(om) + _lap(omf)).scale(NU))
        if not regime.stokes_limit:
            balance = (balance
                       + _advect(mean_vel, om) + _advect(fluct_vel, omf)
                       + _advect(mean_vel, omf) + _advect(fluct_vel, om))
        eqs.append(balance)
    if with_curl_defs:
        # curl definitions: omega = curl(velocity), componentwise
        for (a, b, c), (vx, vy, vz) in ((mean_vort, mean_vel),
                                        (fluct_vort, fluct_vel)):
            eqs.append(_key(a) - _key(vz, y=1) + _key(vy, z=1))
            eqs.append(_key(b) - _key(vx, z=1) + _key(vz, x=1))
            eqs.append(_key(c) - _key(vy, x=1) + _key(vx, y=1))
    extra: tuple[Indeterminate, ...] = ()
    if regime.compressible:
        # The balance is already pressure-free; compressibility enters
        # through the continuity equation for the total velocity.
        rho = Indeterminate("rho")
        extra = (rho,)
        continuity = _key(rho, t=1)
        for comp, fluc, axis in zip(mean_vel, fluct_vel, ("x", "y", "z")):
            prod = _key(rho) * (_key(comp) + _key(fluc))
            continuity = continuity + prod.differentiate(axis)
        eqs.append(continuity)
    else:
        eqs.append(_key(u, x=1) + _key(v, y=1) + _key(w, z=1))
        eqs.append(_key(uf, x=1) + _key(vf, y=1) + _key(wf, z=1))
    ranking = Ranking(mean_vort + fluct_vort + mean_vel + fluct_vel + extra)
    return tuple(eqs), ranking


def _streamfunction_equations():
    psi = Indeterminate("psi")
    lap_psi = _lap2d(psi)
    biharmonic = (lap_psi.differentiate("x").differentiate("x")
                  + lap_psi.differentiate("y").differentiate("y"))
    eq = (lap_psi.differentiate("t")
          + _key(psi, y=1) * lap_psi.differentiate("x")
          - _key(psi, x=1) * lap_psi.differentiate("y")
          - biharmonic.scale(NU))
    return eq, Ranking((psi,))


def _prandtl_equations():
    # Ranking the transverse velocity highest lets the decomposition
    # solve v out of the momentum balance on the sheared branch, leaving
    # a third-order compatibility relation for u; the same system under
    # u-first rankings runs away instead of closing.
    u, v = Indeterminate("u"), Indeterminate("v")
    big_u = Indeterminate("U")
    momentum = (_key(u) * _key(u, x=1) + _key(v) * _key(u, y=1)
                - _key(u, y=2).scale(NU) - _key(big_u) * _key(big_u, x=1))
    continuity = _key(u, x=1) + _key(v, y=1)
    return (momentum, continuity), Ranking((v, u, big_u))


def build(name: str, regime: Regime, with_curl_defs: bool = True) -> ModelSpec:
    """Construct the named family in the given regime.

    ``with_curl_defs`` applies to omega_rans only: when false the
    vorticities are left as free indeterminates instead of being tied to
    the velocities by the six curl-definition equations.

    Raises :class:`UnsupportedCell` for combinations the table marks as
    not applicable, and for the Busemann jet (no polynomial form given).
    """
    if name not in MODEL_NAMES:
        raise UnsupportedCell(f"unknown model {name!r}")
    col = regime.column

    if name == "busemann":
        raise UnsupportedCell(
            "busemann jet equations are not specified; every cell of this"
            " row is reported as unsupported")

    if name == "stokes3d":
        if regime.compressible:
            raise UnsupportedCell("stokes3d is an incompressible family")
        eqs, ranking = _ns_equations(regime, with_convection=False)
        eqs = _apply_limits(eqs, regime)
        return ModelSpec(name, regime, 3, eqs, ranking)

    if name == "rans_stokes":
        if regime.compressible:
            raise UnsupportedCell("rans_stokes is an incompressible family")
        eqs, ranking = _rans_equations(regime, with_convection=False)
        eqs = _apply_limits(eqs, regime)
        return ModelSpec(name, regime, 3, eqs, ranking)

    if name == "ns3d":
        if regime.compressible:
            eqs, ranking = _ns_compressible()
            return ModelSpec(name, regime, 3, eqs, ranking, best_effort=True)
        eqs, ranking = _ns_equations(regime, with_convection=True)
        eqs = _apply_limits(eqs, regime)
        return ModelSpec(name, regime, 3, eqs, ranking)

    if name == "rans3d":
        if regime.compressible:
            eqs, ranking = _rans_compressible()
            return ModelSpec(name, regime, 3, eqs, ranking, best_effort=True)
        eqs, ranking = _rans_equations(regime, with_convection=True)
        eqs = _apply_limits(eqs, regime)
        return ModelSpec(name, regime, 3, eqs, ranking)

    if name == "omega_rans":
        eqs, ranking = _omega_rans_equations(regime, with_curl_defs)
        eqs = _apply_limits(eqs, regime)
        return ModelSpec(name, regime, 3, eqs, ranking, best_effort=True)

    if name == "streamfunction2d":
        if regime.compressible or regime.stokes_limit or regime.euler_limit:
            raise UnsupportedCell(
                f"streamfunction2d supports only In and St (got {col})")
        eq, ranking = _streamfunction_equations()
        eqs = _apply_limits((eq,), regime)
        return ModelSpec(name, regime, 2, eqs, ranking, best_effort=True)

    if name == "prandtl":
        if col != "In":
            raise UnsupportedCell(
                f"prandtl supports only the In column (got {col})")
        eqs, ranking = _prandtl_equations()
        return ModelSpec(name, regime, 2, eqs, ranking, best_effort=True)

    raise UnsupportedCell(f"unknown model {name!r}")  # pragma: no cover


def regime_filter(spec: ModelSpec, flag: str) -> ModelSpec:
    """Apply a limit syntactically to an already-built incompressible spec."""
    if spec.regime.compressible:
        raise UnsupportedCell("limits act on incompressible systems")
    if flag == "stokes_limit":
        return build(spec.name, REGIMES["S"])
    if flag == "euler_limit":
        eqs = tuple(e for e in (drop_nu_monomials(q) for q in spec.equations)
                    if not e.is_zero())
        return replace(spec, regime=REGIMES["E"], equations=eqs)
    if flag == "stationary":
        eqs = tuple(e for e in (drop_t_monomials(q) for q in spec.equations)
                    if not e.is_zero())
        return replace(spec, regime=REGIMES["St"], equations=eqs)
    raise UnsupportedCell(f"unknown regime flag {flag!r}")


def supported_columns(name: str) -> tuple[str, ...]:
    """Table columns for which ``build`` succeeds."""
    cols = []
    for col in COLUMNS:
        try:
            build(name, REGIMES[col])
        except UnsupportedCell:
            continue
        cols.append(col)
    return tuple(cols)
