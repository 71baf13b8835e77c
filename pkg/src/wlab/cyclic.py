"""Foliated surface constructions.

Two parametrizations are built here: general cyclic surfaces swept from a
Frenet frame along a base curve, and Riemann-type surfaces whose foliation
circles lie in horizontal planes.  Both return ParamSurface objects with
analytic partial suppliers, so curvature never differentiates the
integrated frame numerically.
"""
from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

import numpy as np
from scipy.integrate import solve_ivp

from .errors import (
    ConstantCenterCurve,
    InvalidParameter,
    NonFiniteInput,
    NumericalError,
    RadiusNotPositive,
)
from .functions import SmoothFunction, as_smooth
from .surface import ParamSurface, PartialSupplier

_ODE_TOL = 1e-10
_FRAME_DRIFT_TOL = 1e-10
_RADIUS_SAMPLES = 257


@dataclass
class FrenetCurve:
    """Curvature/torsion data and initial frame of a base curve Gamma(u).

    u is the arc-length parameter; the initial data is given at u_range[0].
    Immutable by convention after construction.
    """

    kappa: object
    sigma: object
    u_range: tuple
    point0: np.ndarray = field(default_factory=lambda: np.zeros(3))
    tangent0: np.ndarray = field(default_factory=lambda: np.array([1.0, 0.0, 0.0]))
    normal0: np.ndarray = field(default_factory=lambda: np.array([0.0, 1.0, 0.0]))
    binormal0: np.ndarray = field(default_factory=lambda: np.array([0.0, 0.0, 1.0]))

    def __post_init__(self):
        self.kappa = as_smooth(self.kappa)
        self.sigma = as_smooth(self.sigma)
        self.point0 = np.asarray(self.point0, dtype=float)
        self.tangent0 = np.asarray(self.tangent0, dtype=float)
        self.normal0 = np.asarray(self.normal0, dtype=float)
        self.binormal0 = np.asarray(self.binormal0, dtype=float)
        frame = np.stack([self.tangent0, self.normal0, self.binormal0])
        if np.max(np.abs(frame @ frame.T - np.eye(3))) > 1e-8:
            raise InvalidParameter("initial Frenet frame is not orthonormal")


@dataclass
class CyclicFoliationData:
    """Center velocity components c' = alpha t + beta n + gamma b and radius r(u)."""

    alpha: object
    beta: object
    gamma: object
    r: object

    def __post_init__(self):
        self.alpha = as_smooth(self.alpha)
        self.beta = as_smooth(self.beta)
        self.gamma = as_smooth(self.gamma)
        self.r = as_smooth(self.r)


@dataclass
class RiemannTypeSurface:
    """Horizontal-circle foliation: center (a(u), b(u), u), radius r(u) > 0."""

    a: object
    b: object
    r: object
    u_range: tuple
    truncated: bool = False

    def __post_init__(self):
        self.a = as_smooth(self.a)
        self.b = as_smooth(self.b)
        self.r = as_smooth(self.r)

    def center_total_variation(self, samples: int = 201) -> float:
        us = np.linspace(self.u_range[0], self.u_range[1], samples)
        a = np.array([self.a(u) for u in us])
        b = np.array([self.b(u) for u in us])
        return float(np.abs(np.diff(a)).sum() + np.abs(np.diff(b)).sum())

    def is_rotational(self, tol: float = 1e-12) -> bool:
        return self.center_total_variation() < tol


@dataclass(frozen=True)
class ArcLengthReparam:
    """Turning angle phi and speed phi' of the planar center curve.

    Satisfies a' = phi' cos phi, b' = phi' sin phi at the sample points.
    """

    u: np.ndarray
    phi: np.ndarray
    speed: np.ndarray


def _gram_drift(frame: np.ndarray) -> float:
    return float(np.max(np.abs(frame @ frame.T - np.eye(3))))


def _gram_schmidt(frame: np.ndarray) -> np.ndarray:
    t, n, b = frame
    t = t / np.linalg.norm(t)
    n = n - (n @ t) * t
    n = n / np.linalg.norm(n)
    b = b - (b @ t) * t - (b @ n) * n
    return np.stack([t, n, b / np.linalg.norm(b)])


class _DenseField:
    """Piecewise dense ODE solution over consecutive u-chunks."""

    def __init__(self, segments, u_range):
        self._segments = segments          # list of (u_lo, u_hi, OdeSolution)
        self._ends = [s[1] for s in segments]
        self.u_range = u_range

    def __call__(self, u: float) -> np.ndarray:
        u = min(max(u, self.u_range[0]), self.u_range[1])
        i = min(bisect.bisect_left(self._ends, u), len(self._segments) - 1)
        return self._segments[i][2](u)


def _integrate_chunked(rhs, y0, u_range, frame_dim=9, chunk=1.0):
    """solve_ivp in chunks with Gram-Schmidt frame cleanup at chunk ends.

    The first frame_dim components of the state are the stacked {t, n, b};
    they are re-orthonormalized whenever the Gram drift exceeds 1e-10.
    """
    u0, u1 = u_range
    segments = []
    u, y = u0, np.asarray(y0, dtype=float).copy()
    while u < u1 - 1e-14:
        u_next = min(u + chunk, u1)
        sol = solve_ivp(rhs, (u, u_next), y, method="RK45",
                        rtol=_ODE_TOL, atol=_ODE_TOL, dense_output=True)
        if not sol.success:
            raise NumericalError(f"frame integration failed near u = {u}: {sol.message}")
        segments.append((u, u_next, sol.sol))
        y = sol.y[:, -1].copy()
        frame = y[:frame_dim].reshape(3, 3)
        if _gram_drift(frame) > _FRAME_DRIFT_TOL:
            y[:frame_dim] = _gram_schmidt(frame).ravel()
        u = u_next
    return _DenseField(segments, u_range)


class FrenetFrameField:
    """Integrated frame {t, n, b}(u) with sampled values and a dense interpolant."""

    def __init__(self, dense: _DenseField, us: np.ndarray):
        self._dense = dense
        self.us = us
        self.u_range = dense.u_range

    def frame(self, u: float):
        y = self._dense(u)
        return y[0:3], y[3:6], y[6:9]

    def samples(self):
        return np.array([np.concatenate(self.frame(u)) for u in self.us])

    def gram_drift(self, u: float) -> float:
        y = self._dense(u)
        return _gram_drift(y[:9].reshape(3, 3))

    def max_gram_drift(self) -> float:
        return max(self.gram_drift(u) for u in self.us)


def _frenet_rhs(curve: FrenetCurve, with_center: Optional[CyclicFoliationData]):
    kappa, sigma = curve.kappa, curve.sigma

    def rhs(u, y):
        k = kappa(u)
        s = sigma(u)
        if not (math.isfinite(k) and math.isfinite(s)):
            raise NonFiniteInput(f"kappa/sigma non-finite at u = {u}")
        t, n, b = y[0:3], y[3:6], y[6:9]
        out = [k * n, -k * t + s * b, -s * n]
        if with_center is not None:
            a = with_center.alpha(u)
            be = with_center.beta(u)
            ga = with_center.gamma(u)
            if not (math.isfinite(a) and math.isfinite(be) and math.isfinite(ga)):
                raise NonFiniteInput(f"center velocity non-finite at u = {u}")
            out.append(a * t + be * n + ga * b)
        return np.concatenate(out)

    return rhs


def integrate_frenet(curve: FrenetCurve, step: Optional[float] = None) -> FrenetFrameField:
    """Transport the Frenet frame along the curve's u-range.

    Adaptive RK45 with local tolerance 1e-10; the frame is Gram-Schmidt
    re-orthonormalized whenever the Gram drift exceeds 1e-10.
    """
    if step is not None and step <= 0:
        raise InvalidParameter("step must be positive")
    u0, u1 = curve.u_range
    y0 = np.concatenate([curve.tangent0, curve.normal0, curve.binormal0])
    dense = _integrate_chunked(_frenet_rhs(curve, None), y0, (u0, u1))
    nstep = step if step is not None else (u1 - u0) / 200.0
    us = np.linspace(u0, u1, max(2, int(round((u1 - u0) / nstep)) + 1))
    return FrenetFrameField(dense, us)


def _check_radius(r: SmoothFunction, u_range) -> None:
    us = np.linspace(u_range[0], u_range[1], _RADIUS_SAMPLES)
    vals = np.array([r(u) for u in us])
    if not np.all(vals > 0):
        raise RadiusNotPositive(f"min r = {vals.min():.3e} on {u_range}")


def build_cyclic(curve: FrenetCurve, data: CyclicFoliationData) -> ParamSurface:
    """Surface X(u, v) = c(u) + r(u) (cos v n(u) + sin v b(u)).

    The frame and the center are integrated jointly; all partials are
    expressed through the Frenet equations, so no frame quantity is ever
    differentiated numerically.
    """
    _check_radius(data.r, curve.u_range)
    y0 = np.concatenate([curve.tangent0, curve.normal0, curve.binormal0, curve.point0])
    dense = _integrate_chunked(_frenet_rhs(curve, data), y0, tuple(curve.u_range))

    kappa, sigma = curve.kappa, curve.sigma
    alpha, beta, gamma, r = data.alpha, data.beta, data.gamma, data.r

    @lru_cache(maxsize=4096)
    def state(u: float):
        y = dense(u)
        return y[0:3], y[3:6], y[6:9], y[9:12]

    def position(u, v):
        t, n, b, c = state(u)
        return c + r(u) * (math.cos(v) * n + math.sin(v) * b)

    def xu(u, v):
        t, n, b, c = state(u)
        cv, sv = math.cos(v), math.sin(v)
        k, s = kappa(u), sigma(u)
        w = cv * n + sv * b
        w_v = -sv * n + cv * b
        cprime = alpha(u) * t + beta(u) * n + gamma(u) * b
        # cos v n' + sin v b' = -kappa cos v t + sigma w_v
        return cprime + r.d1(u) * w + r(u) * (-k * cv * t + s * w_v)

    def xv(u, v):
        t, n, b, c = state(u)
        return r(u) * (-math.sin(v) * n + math.cos(v) * b)

    def xvv(u, v):
        t, n, b, c = state(u)
        return -r(u) * (math.cos(v) * n + math.sin(v) * b)

    def xuv(u, v):
        t, n, b, c = state(u)
        cv, sv = math.cos(v), math.sin(v)
        k, s = kappa(u), sigma(u)
        w = cv * n + sv * b
        w_v = -sv * n + cv * b
        # -sin v n' + cos v b' = kappa sin v t - sigma w
        return r.d1(u) * w_v + r(u) * (k * sv * t - s * w)

    def xuu(u, v):
        t, n, b, c = state(u)
        cv, sv = math.cos(v), math.sin(v)
        k, s = kappa(u), sigma(u)
        k1, s1 = kappa.d1(u), sigma.d1(u)
        al, be, ga = alpha(u), beta(u), gamma(u)
        w = cv * n + sv * b
        w_v = -sv * n + cv * b
        csecond = ((alpha.d1(u) - be * k) * t
                   + (beta.d1(u) + al * k - ga * s) * n
                   + (gamma.d1(u) + be * s) * b)
        # cos v n'' + sin v b''
        nb2 = ((-k1 * cv + s * k * sv) * t
               + (-(k * k + s * s) * cv - s1 * sv) * n
               + (s1 * cv - s * s * sv) * b)
        return (csecond + r.d2(u) * w
                + 2.0 * r.d1(u) * (-k * cv * t + s * w_v)
                + r(u) * nb2)

    partials = PartialSupplier(xu, xv, xuu, xuv, xvv)
    return ParamSurface(tuple(curve.u_range), (0.0, 2.0 * math.pi), position,
                        partials, v_periodic=True)


def cyclic_center(curve: FrenetCurve, data: CyclicFoliationData):
    """Integrated center curve c(u) and frame, for construction checks."""
    y0 = np.concatenate([curve.tangent0, curve.normal0, curve.binormal0, curve.point0])
    dense = _integrate_chunked(_frenet_rhs(curve, data), y0, tuple(curve.u_range))

    def at(u):
        y = dense(u)
        return y[9:12], (y[0:3], y[3:6], y[6:9])

    return at


def build_riemann_type(s: RiemannTypeSurface) -> ParamSurface:
    """Surface X(u, v) = (a(u) + r(u) cos v, b(u) + r(u) sin v, u)."""
    _check_radius(s.r, s.u_range)
    a, b, r = s.a, s.b, s.r

    def position(u, v):
        return np.array([a(u) + r(u) * math.cos(v),
                         b(u) + r(u) * math.sin(v), u])

    def xu(u, v):
        r1 = r.d1(u)
        return np.array([a.d1(u) + r1 * math.cos(v), b.d1(u) + r1 * math.sin(v), 1.0])

    def xv(u, v):
        return np.array([-r(u) * math.sin(v), r(u) * math.cos(v), 0.0])

    def xuu(u, v):
        r2 = r.d2(u)
        return np.array([a.d2(u) + r2 * math.cos(v), b.d2(u) + r2 * math.sin(v), 0.0])

    def xuv(u, v):
        r1 = r.d1(u)
        return np.array([-r1 * math.sin(v), r1 * math.cos(v), 0.0])

    def xvv(u, v):
        return np.array([-r(u) * math.cos(v), -r(u) * math.sin(v), 0.0])

    partials = PartialSupplier(xu, xv, xuu, xuv, xvv)
    return ParamSurface(tuple(s.u_range), (0.0, 2.0 * math.pi), position,
                        partials, v_periodic=True)


def reparam_arclength(u, da, db) -> ArcLengthReparam:
    """Turning-angle description of the planar center curve from sampled (a', b').

    phi' = hypot(a', b'); phi = unwrapped atan2(b', a') where phi' > 1e-12,
    linearly interpolated across speed zeros (endpoint gaps hold the nearest
    defined value).
    """
    u = np.asarray(u, dtype=float)
    da = np.asarray(da, dtype=float)
    db = np.asarray(db, dtype=float)
    speed = np.hypot(da, db)
    mask = speed > 1e-12
    if not mask.any():
        raise ConstantCenterCurve("a' and b' vanish everywhere: surface of revolution")
    phi_defined = np.unwrap(np.arctan2(db[mask], da[mask]))
    phi = np.empty_like(speed)
    phi[mask] = phi_defined
    if not mask.all():
        phi[~mask] = np.interp(u[~mask], u[mask], phi_defined)
    return ArcLengthReparam(u, phi, speed)
