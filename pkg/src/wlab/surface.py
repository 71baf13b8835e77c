"""Parametric surfaces: jets, fundamental forms, curvature, LW residuals.

Conventions used throughout: the unit normal is N = Xu x Xv / |Xu x Xv|,
kappa1 is the larger principal curvature, and all lengths are in abstract
units.  Every type here is immutable and every function pure, so grid
evaluation can be parallelized freely.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import (
    CurvatureInconsistency,
    DegenerateJet,
    InvalidParameter,
    OutOfDomain,
)

Vec3Fn = Callable[[float, float], np.ndarray]

# 4th-order central stencils: first derivative / (12 h), second / (12 h^2).
_C1 = ((-2, 1.0), (-1, -8.0), (1, 8.0), (2, -1.0))
_C2 = ((-2, -1.0), (-1, 16.0), (0, -30.0), (1, 16.0), (2, -1.0))

_DEGENERACY_EPS = 1e-12
_DISCRIMINANT_CLAMP = 1e-12


@dataclass(frozen=True)
class PartialSupplier:
    """Analytic partial derivatives of a parametrization, up to second order."""

    xu: Vec3Fn
    xv: Vec3Fn
    xuu: Vec3Fn
    xuv: Vec3Fn
    xvv: Vec3Fn


@dataclass(frozen=True)
class ParamSurface:
    """Evaluatable map (u, v) -> R^3 over a closed parameter rectangle.

    When ``partials`` is None, jets fall back to 4th-order central finite
    differences with step ``1e-4 * max(1, extent)``; evaluation then needs a
    margin of two steps from the boundary.  ``v_periodic`` marks surfaces
    closed in v (foliated and rotational surfaces), for which the v domain
    check is skipped.
    """

    u_range: tuple
    v_range: tuple
    position: Vec3Fn
    partials: Optional[PartialSupplier] = None
    v_periodic: bool = False

    def extent(self) -> float:
        return max(self.u_range[1] - self.u_range[0],
                   self.v_range[1] - self.v_range[0])

    def fd_step(self) -> float:
        return 1e-4 * max(1.0, self.extent())


@dataclass(frozen=True)
class JetPoint:
    """Position, partials up to second order and the unit normal at a point."""

    p: np.ndarray
    xu: np.ndarray
    xv: np.ndarray
    xuu: np.ndarray
    xuv: np.ndarray
    xvv: np.ndarray
    normal: np.ndarray

    @classmethod
    def from_partials(cls, p, xu, xv, xuu, xuv, xvv) -> "JetPoint":
        arrs = [np.asarray(a, dtype=float) for a in (p, xu, xv, xuu, xuv, xvv)]
        cross = np.cross(arrs[1], arrs[2])
        norm = np.linalg.norm(cross)
        if norm < _DEGENERACY_EPS:
            raise DegenerateJet(f"|Xu x Xv| = {norm:.3e} below {_DEGENERACY_EPS}")
        return cls(*arrs, cross / norm)


@dataclass(frozen=True)
class FundamentalForms:
    E: float
    F: float
    G: float
    e: float
    f: float
    g: float
    W: float


@dataclass(frozen=True)
class CurvatureData:
    """Mean/Gauss curvature, ordered principal curvatures and the
    determinant-based numerators H1 (of 2 W^{3/2} H) and K1 (of W^2 K)."""

    H: float
    K: float
    kappa1: float
    kappa2: float
    H1: float
    K1: float


@dataclass(frozen=True)
class LWRelation:
    """The linear relation kappa1 = m * kappa2 + n (m dimensionless, n 1/length)."""

    m: float
    n: float

    def __post_init__(self):
        if self.m == 0:
            raise InvalidParameter("LWRelation: m must be nonzero (m != 0)")


def _check_domain(surface: ParamSurface, u: float, v: float) -> None:
    margin = 2.0 * surface.fd_step() if surface.partials is None else 0.0
    u0, u1 = surface.u_range
    if not (u0 + margin < u < u1 - margin):
        raise OutOfDomain(f"u = {u} outside ({u0 + margin}, {u1 - margin})")
    if not surface.v_periodic:
        v0, v1 = surface.v_range
        if not (v0 + margin < v < v1 - margin):
            raise OutOfDomain(f"v = {v} outside ({v0 + margin}, {v1 - margin})")


def evaluate_jet(surface: ParamSurface, u: float, v: float) -> JetPoint:
    """Evaluate position and all partials at (u, v).

    Uses the analytic supplier when present, otherwise 4th-order central
    finite differences.
    """
    _check_domain(surface, u, v)
    pos = surface.position
    p = np.asarray(pos(u, v), dtype=float)
    if surface.partials is not None:
        sp = surface.partials
        return JetPoint.from_partials(
            p, sp.xu(u, v), sp.xv(u, v), sp.xuu(u, v), sp.xuv(u, v), sp.xvv(u, v))

    h = surface.fd_step()

    def at(du, dv):
        return np.asarray(pos(u + du * h, v + dv * h), dtype=float)

    xu = sum(c * at(k, 0) for k, c in _C1) / (12.0 * h)
    xv = sum(c * at(0, k) for k, c in _C1) / (12.0 * h)
    xuu = sum(c * at(k, 0) for k, c in _C2) / (12.0 * h * h)
    xvv = sum(c * at(0, k) for k, c in _C2) / (12.0 * h * h)
    xuv = sum(ci * cj * at(i, j) for i, ci in _C1 for j, cj in _C1) / (144.0 * h * h)
    return JetPoint.from_partials(p, xu, xv, xuu, xuv, xvv)


def fundamental_forms(jet: JetPoint) -> FundamentalForms:
    E = float(jet.xu @ jet.xu)
    F = float(jet.xu @ jet.xv)
    G = float(jet.xv @ jet.xv)
    e = float(jet.normal @ jet.xuu)
    f = float(jet.normal @ jet.xuv)
    g = float(jet.normal @ jet.xvv)
    return FundamentalForms(E, F, G, e, f, g, E * G - F * F)


def _determinant_invariants(jet: JetPoint):
    """Return (W, H1, K1) built from triple products of the jet."""
    E = float(jet.xu @ jet.xu)
    F = float(jet.xu @ jet.xv)
    G = float(jet.xv @ jet.xv)
    cross = np.cross(jet.xu, jet.xv)
    d1 = float(cross @ jet.xuu)
    d2 = float(cross @ jet.xuv)
    d3 = float(cross @ jet.xvv)
    W = E * G - F * F
    H1 = G * d1 - 2.0 * F * d2 + E * d3
    K1 = d1 * d3 - d2 * d2
    return W, H1, K1


def curvature(jet: JetPoint) -> CurvatureData:
    """Mean, Gauss and ordered principal curvatures from the determinant forms."""
    W, H1, K1 = _determinant_invariants(jet)
    if W <= 0:
        raise DegenerateJet(f"W = {W:.3e} not positive")
    H = H1 / (2.0 * W ** 1.5)
    K = K1 / (W * W)
    disc = H * H - K
    if disc < -_DISCRIMINANT_CLAMP:
        raise CurvatureInconsistency(
            f"H^2 - K = {disc:.3e} below clamp -{_DISCRIMINANT_CLAMP}")
    root = math.sqrt(max(disc, 0.0))
    return CurvatureData(H, K, H + root, H - root, H1, K1)


def lw_residual_linear(c: CurvatureData, rel: LWRelation) -> float:
    """kappa1 - m kappa2 - n with kappa1 the larger principal curvature."""
    return c.kappa1 - rel.m * c.kappa2 - rel.n


def lw_residual_signed(jet: JetPoint, rel: LWRelation) -> float:
    """(1-m) H1 - 2 W^{3/2} n + (1+m) sqrt(H1^2 - 4 W K1).

    Vanishes exactly when the larger-root labeling satisfies the relation.
    """
    W, H1, K1 = _determinant_invariants(jet)
    s = H1 * H1 - 4.0 * W * K1
    s = max(s, 0.0)
    return (1.0 - rel.m) * H1 - 2.0 * W ** 1.5 * rel.n + (1.0 + rel.m) * math.sqrt(s)


def lw_residual_poly(jet: JetPoint, rel: LWRelation) -> float:
    """The twice-squared polynomial residual.

    (-m H1^2 + (1+m)^2 W K1 + n^2 W^3)^2 - n^2 (1-m)^2 H1^2 W^3.
    Zero whenever either labeling satisfies the relation; the converse does
    not hold (squaring introduces extraneous roots).
    """
    W, H1, K1 = _determinant_invariants(jet)
    m, n = rel.m, rel.n
    inner = -m * H1 * H1 + (1.0 + m) ** 2 * W * K1 + n * n * W ** 3
    return inner * inner - n * n * (1.0 - m) ** 2 * H1 * H1 * W ** 3


def lw_residual_poly_scale(jet: JetPoint, rel: LWRelation) -> float:
    """Natural magnitude scale of lw_residual_poly at this jet (for relative
    comparisons): sum of absolute values of its constituent terms."""
    W, H1, K1 = _determinant_invariants(jet)
    m, n = rel.m, rel.n
    inner = abs(m) * H1 * H1 + (1.0 + m) ** 2 * abs(W * K1) + n * n * abs(W) ** 3
    return inner * inner + n * n * (1.0 - m) ** 2 * H1 * H1 * abs(W) ** 3


def lw_residual_reduced(jet: JetPoint, rel: LWRelation) -> float:
    """The once-squared form -m H1^2 + (1+m)^2 W K1, valid when n = 0."""
    W, H1, K1 = _determinant_invariants(jet)
    return -rel.m * H1 * H1 + (1.0 + rel.m) ** 2 * W * K1


def finite_difference_twin(surface: ParamSurface) -> ParamSurface:
    """Same surface with the analytic supplier dropped (forces FD jets)."""
    return ParamSurface(surface.u_range, surface.v_range, surface.position,
                        partials=None, v_periodic=surface.v_periodic)


def interior_grid(surface: ParamSurface, nu: int, nv: int):
    """(us, vs) strictly inside the evaluable domain.

    u is inset by twice the FD margin; v covers a full period endpoint-free
    for periodic surfaces, otherwise it is inset like u.
    """
    margin = 4.0 * surface.fd_step()
    u0, u1 = surface.u_range
    us = np.linspace(u0 + margin, u1 - margin, nu)
    if surface.v_periodic:
        v0 = surface.v_range[0]
        vs = v0 + np.arange(nv) * (2.0 * math.pi / nv)
    else:
        v0, v1 = surface.v_range
        vs = np.linspace(v0 + margin, v1 - margin, nv)
    return us, vs


def transformed(surface: ParamSurface, rotation: np.ndarray,
                translation: np.ndarray) -> ParamSurface:
    """Apply a rigid motion x -> R x + t to a surface (used by invariance tests)."""
    R = np.asarray(rotation, dtype=float)
    t = np.asarray(translation, dtype=float)

    def pos(u, v):
        return R @ np.asarray(surface.position(u, v), dtype=float) + t

    partials = None
    if surface.partials is not None:
        sp = surface.partials

        def lin(fn):
            return lambda u, v: R @ np.asarray(fn(u, v), dtype=float)

        partials = PartialSupplier(lin(sp.xu), lin(sp.xv), lin(sp.xuu),
                                   lin(sp.xuv), lin(sp.xvv))
    return ParamSurface(surface.u_range, surface.v_range, pos, partials,
                        surface.v_periodic)
