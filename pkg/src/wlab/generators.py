"""ODE generators for the model surfaces.

Builds Riemann minimal examples (and their catenoid degeneration) from the
radius equation r r'' = 1 + (lambda^2 + mu^2) r^4 + r'^2 with horizontal
center drift a' = lambda r^2, b' = mu r^2, rotational profiles obeying a
linear curvature relation, and a small set of closed-form test fixtures.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.integrate import solve_ivp

from .cyclic import RiemannTypeSurface
from .errors import (
    AxisCollision,
    InvalidParameter,
    NumericalError,
    RadiusCollapse,
)
from .functions import SmoothFunction
from .surface import LWRelation, ParamSurface, PartialSupplier

_ODE_TOL = 1e-10
_COLLAPSE_EPS = 1e-8
_BLOWUP_LIMIT = 1e8


@dataclass
class RiemannExampleParams:
    """Constants and initial data of the radius ODE.

    lam and mu are the horizontal drift constants (a' = lam r^2,
    b' = mu r^2); the initial radius r0 and slope dr0 are taken at u = 0
    clamped into u_range.
    """

    lam: float = 0.0
    mu: float = 0.0
    r0: float = 1.0
    dr0: float = 0.0
    u_range: tuple = (-1.0, 1.0)

    def __post_init__(self):
        if self.lam < 0 or self.mu < 0:
            raise InvalidParameter("lam and mu must be nonnegative")
        if self.r0 <= 0:
            raise InvalidParameter("r0 must be positive")
        if self.u_range[1] <= self.u_range[0]:
            raise InvalidParameter("empty u_range")


class _TwoSidedDense:
    """Dense ODE solution integrated outward from an anchor in both directions."""

    def __init__(self, anchor, y0, sol_neg, sol_pos, u_range):
        self.anchor = anchor
        self._y0 = np.asarray(y0, dtype=float)
        self._neg = sol_neg
        self._pos = sol_pos
        self.u_range = u_range

    def __call__(self, u: float) -> np.ndarray:
        u = min(max(u, self.u_range[0]), self.u_range[1])
        if u < self.anchor and self._neg is not None:
            return self._neg.sol(u)
        if u > self.anchor and self._pos is not None:
            return self._pos.sol(u)
        if u == self.anchor:
            return self._y0
        return (self._pos or self._neg).sol(u)


def _integrate_two_sided(rhs, anchor, y0, u_range, events):
    """Integrate from the anchor to both ends, truncating at terminal events
    or solver failure.  Returns (dense, achieved_range, truncated)."""
    u0, u1 = u_range
    sols = {}
    achieved = [anchor, anchor]
    truncated = False
    for idx, target in ((0, u0), (1, u1)):
        if target == anchor:
            continue
        sol = solve_ivp(rhs, (anchor, target), y0, method="RK45",
                        rtol=_ODE_TOL, atol=_ODE_TOL, dense_output=True,
                        events=events)
        reached = float(sol.t[-1])
        if not sol.success or any(len(t) for t in sol.t_events):
            truncated = True
        if abs(reached - anchor) < 1e-12:
            sols[idx] = None
        else:
            sols[idx] = sol
            achieved[idx] = reached
    dense = _TwoSidedDense(anchor, y0, sols.get(0), sols.get(1),
                           (achieved[0], achieved[1]))
    return dense, (achieved[0], achieved[1]), truncated


def gen_riemann_example(p: RiemannExampleParams) -> RiemannTypeSurface:
    """Integrate the Riemann-example system.

    lam = mu = 0 yields the catenoid radius r = r0-scaled cosh; otherwise a
    non-rotational minimal surface.  The range is truncated (with the
    surface's truncated flag set) if the radius blows up before the
    requested endpoint.
    """
    if p.r0 <= _COLLAPSE_EPS:
        raise RadiusCollapse(f"initial radius {p.r0} at or below {_COLLAPSE_EPS}")
    lm2 = p.lam * p.lam + p.mu * p.mu
    anchor = min(max(0.0, p.u_range[0]), p.u_range[1])

    def rhs(u, y):
        r, rp = y[0], y[1]
        if r <= _COLLAPSE_EPS:
            raise RadiusCollapse(f"radius collapsed at u = {u}")
        return np.array([rp, (1.0 + lm2 * r ** 4 + rp * rp) / r,
                         p.lam * r * r, p.mu * r * r])

    def collapse(u, y):
        return y[0] - _COLLAPSE_EPS

    collapse.terminal = True

    def blowup(u, y):
        return _BLOWUP_LIMIT - (abs(y[0]) + abs(y[1]))

    blowup.terminal = True

    y0 = np.array([p.r0, p.dr0, 0.0, 0.0])
    dense, achieved, truncated = _integrate_two_sided(
        rhs, anchor, y0, p.u_range, [collapse, blowup])

    def d2r(u):
        r, rp = dense(u)[0], dense(u)[1]
        return (1.0 + lm2 * r ** 4 + rp * rp) / r

    r_fn = SmoothFunction(lambda u: dense(u)[0], lambda u: dense(u)[1], d2r)
    a_fn = SmoothFunction(lambda u: dense(u)[2],
                          lambda u: p.lam * dense(u)[0] ** 2,
                          lambda u: 2.0 * p.lam * dense(u)[0] * dense(u)[1])
    b_fn = SmoothFunction(lambda u: dense(u)[3],
                          lambda u: p.mu * dense(u)[0] ** 2,
                          lambda u: 2.0 * p.mu * dense(u)[0] * dense(u)[1])
    return RiemannTypeSurface(a_fn, b_fn, r_fn, achieved, truncated=truncated)


@dataclass
class RotationalProfile:
    """Arc-length profile (rho(s), z(s)) with tangent angle theta(s).

    rho' = cos theta, z' = sin theta, so rho'^2 + z'^2 = 1 identically.
    kappa_meridian = theta' and kappa_parallel = sin theta / rho with the
    parametrization X(s, v) = (rho cos v, rho sin v, z).
    """

    rel: LWRelation
    s_range: tuple
    dense: object
    truncated: bool = False

    def state(self, s: float):
        y = self.dense(s)
        return float(y[0]), float(y[1]), float(y[2])

    def rho(self, s: float) -> float:
        return float(self.dense(s)[0])

    def theta(self, s: float) -> float:
        return float(self.dense(s)[2])

    def kappa_meridian(self, s: float) -> float:
        rho, _, th = self.state(s)
        return self.rel.m * math.sin(th) / rho + self.rel.n

    def kappa_parallel(self, s: float) -> float:
        rho, _, th = self.state(s)
        return math.sin(th) / rho

    def curvature_samples(self, ns: int = 50):
        """(kappa_meridian, kappa_parallel) arrays on an interior sample grid."""
        s0, s1 = self.s_range
        pad = 1e-3 * (s1 - s0)
        ss = np.linspace(s0 + pad, s1 - pad, ns)
        km = np.array([self.kappa_meridian(s) for s in ss])
        kp = np.array([self.kappa_parallel(s) for s in ss])
        return ss, km, kp


def gen_rotational_lw(rel: LWRelation, rho0: float, theta0: float,
                      s_range: tuple):
    """Profile curve whose meridian curvature is m * (parallel) + n.

    Integrates rho' = cos theta, z' = sin theta,
    theta' = m sin(theta)/rho + n from s_range[0].  If the profile reaches
    the axis the integration stops and a truncated partial profile is
    returned (flag set) rather than raising.

    Returns (profile, surface).
    """
    if rho0 <= _COLLAPSE_EPS:
        raise AxisCollision(f"rho0 = {rho0} at or below {_COLLAPSE_EPS}")
    s0, s1 = s_range
    if s1 <= s0:
        raise InvalidParameter("empty s_range")

    def rhs(s, y):
        rho, z, th = y
        return np.array([math.cos(th), math.sin(th),
                         rel.m * math.sin(th) / rho + rel.n])

    def axis(s, y):
        return y[0] - _COLLAPSE_EPS

    axis.terminal = True

    sol = solve_ivp(rhs, (s0, s1), np.array([rho0, 0.0, theta0]),
                    method="RK45", rtol=_ODE_TOL, atol=_ODE_TOL,
                    dense_output=True, events=[axis])
    if not sol.success and not len(sol.t_events[0]):
        raise NumericalError(f"profile integration failed: {sol.message}")
    truncated = bool(len(sol.t_events[0])) or not sol.success
    reached = float(sol.t[-1])
    achieved = (s0, reached)

    class _Dense:
        def __call__(self, s):
            return sol.sol(min(max(s, achieved[0]), achieved[1]))

    profile = RotationalProfile(rel, achieved, _Dense(), truncated=truncated)

    def theta_at(s):
        return float(profile.dense(s)[2])

    def rho_at(s):
        return float(profile.dense(s)[0])

    def z_at(s):
        return float(profile.dense(s)[1])

    def dtheta(s):
        return rel.m * math.sin(theta_at(s)) / rho_at(s) + rel.n

    def position(s, v):
        rho = rho_at(s)
        return np.array([rho * math.cos(v), rho * math.sin(v), z_at(s)])

    def xu(s, v):
        th = theta_at(s)
        return np.array([math.cos(th) * math.cos(v), math.cos(th) * math.sin(v),
                         math.sin(th)])

    def xv(s, v):
        rho = rho_at(s)
        return np.array([-rho * math.sin(v), rho * math.cos(v), 0.0])

    def xuu(s, v):
        th, dth = theta_at(s), dtheta(s)
        return dth * np.array([-math.sin(th) * math.cos(v),
                               -math.sin(th) * math.sin(v), math.cos(th)])

    def xuv(s, v):
        th = theta_at(s)
        return np.array([-math.cos(th) * math.sin(v), math.cos(th) * math.cos(v), 0.0])

    def xvv(s, v):
        rho = rho_at(s)
        return np.array([-rho * math.cos(v), -rho * math.sin(v), 0.0])

    surface = ParamSurface(achieved, (0.0, 2.0 * math.pi), position,
                           PartialSupplier(xu, xv, xuu, xuv, xvv),
                           v_periodic=True)
    return profile, surface


def gen_fixture(kind: str, **kw) -> ParamSurface:
    """Closed-form test surfaces with exact derivative suppliers.

    Kinds: "sphere" (radius), "cylinder" (radius), "torus" (radius_major,
    radius_minor), "catenoid" (radius = neck radius).
    """
    if kind == "sphere":
        R = float(kw.pop("radius", 1.0))
        if kw or R <= 0:
            raise InvalidParameter(f"sphere needs radius > 0, got {kw or R}")
        u_range = (-1.3, 1.3)  # avoid the poles at +-pi/2

        def position(u, v):
            return R * np.array([math.cos(u) * math.cos(v),
                                 math.cos(u) * math.sin(v), math.sin(u)])

        def xu(u, v):
            return R * np.array([-math.sin(u) * math.cos(v),
                                 -math.sin(u) * math.sin(v), math.cos(u)])

        def xv(u, v):
            return R * np.array([-math.cos(u) * math.sin(v),
                                 math.cos(u) * math.cos(v), 0.0])

        def xuu(u, v):
            return -position(u, v)

        def xuv(u, v):
            return R * np.array([math.sin(u) * math.sin(v),
                                 -math.sin(u) * math.cos(v), 0.0])

        def xvv(u, v):
            return R * np.array([-math.cos(u) * math.cos(v),
                                 -math.cos(u) * math.sin(v), 0.0])

    elif kind == "cylinder":
        r = float(kw.pop("radius", 1.0))
        height = float(kw.pop("height", 4.0))
        if kw or r <= 0 or height <= 0:
            raise InvalidParameter("cylinder needs radius > 0 and height > 0")
        u_range = (-height / 2.0, height / 2.0)

        def position(u, v):
            return np.array([r * math.cos(v), r * math.sin(v), u])

        def xu(u, v):
            return np.array([0.0, 0.0, 1.0])

        def xv(u, v):
            return np.array([-r * math.sin(v), r * math.cos(v), 0.0])

        def xuu(u, v):
            return np.zeros(3)

        def xuv(u, v):
            return np.zeros(3)

        def xvv(u, v):
            return np.array([-r * math.cos(v), -r * math.sin(v), 0.0])

    elif kind == "torus":
        R = float(kw.pop("radius_major", 2.0))
        rho = float(kw.pop("radius_minor", 1.0))
        if kw or rho <= 0 or R <= rho:
            raise InvalidParameter("torus needs radius_major > radius_minor > 0")
        u_range = (0.0, 2.0 * math.pi)

        def position(u, v):
            w = R + rho * math.cos(u)
            return np.array([w * math.cos(v), w * math.sin(v), rho * math.sin(u)])

        def xu(u, v):
            return rho * np.array([-math.sin(u) * math.cos(v),
                                   -math.sin(u) * math.sin(v), math.cos(u)])

        def xv(u, v):
            w = R + rho * math.cos(u)
            return np.array([-w * math.sin(v), w * math.cos(v), 0.0])

        def xuu(u, v):
            return rho * np.array([-math.cos(u) * math.cos(v),
                                   -math.cos(u) * math.sin(v), -math.sin(u)])

        def xuv(u, v):
            return rho * np.array([math.sin(u) * math.sin(v),
                                   -math.sin(u) * math.cos(v), 0.0])

        def xvv(u, v):
            w = R + rho * math.cos(u)
            return np.array([-w * math.cos(v), -w * math.sin(v), 0.0])

    elif kind == "catenoid":
        c = float(kw.pop("radius", 1.0))
        if kw or c <= 0:
            raise InvalidParameter("catenoid needs radius > 0 (neck radius)")
        u_range = (-1.5 * c, 1.5 * c)

        def position(u, v):
            w = c * math.cosh(u / c)
            return np.array([w * math.cos(v), w * math.sin(v), u])

        def xu(u, v):
            s = math.sinh(u / c)
            return np.array([s * math.cos(v), s * math.sin(v), 1.0])

        def xv(u, v):
            w = c * math.cosh(u / c)
            return np.array([-w * math.sin(v), w * math.cos(v), 0.0])

        def xuu(u, v):
            w = math.cosh(u / c) / c
            return np.array([w * math.cos(v), w * math.sin(v), 0.0])

        def xuv(u, v):
            s = math.sinh(u / c)
            return np.array([-s * math.sin(v), s * math.cos(v), 0.0])

        def xvv(u, v):
            w = c * math.cosh(u / c)
            return np.array([-w * math.cos(v), -w * math.sin(v), 0.0])

    else:
        raise InvalidParameter(f"unknown fixture kind {kind!r}")

    # u_range endpoints are open for analytic jets; sampling helpers inset.
    if kind == "torus":
        # wrap u too: jets are valid on all of [0, 2 pi)
        u_range = (-2.0 * math.pi, 4.0 * math.pi)
    return ParamSurface(u_range, (0.0, 2.0 * math.pi), position,
                        PartialSupplier(xu, xv, xuu, xuv, xvv), v_periodic=True)
