"""Numerical toolkit for linear Weingarten surfaces."""

from .surface import (
    CurvatureData,
    FundamentalForms,
    JetPoint,
    LWRelation,
    ParamSurface,
    PartialSupplier,
    curvature,
    evaluate_jet,
    fundamental_forms,
    lw_residual_linear,
    lw_residual_poly,
    lw_residual_reduced,
    lw_residual_signed,
)
from .cyclic import (
    ArcLengthReparam,
    CyclicFoliationData,
    FrenetCurve,
    RiemannTypeSurface,
    build_cyclic,
    build_riemann_type,
    integrate_frenet,
    reparam_arclength,
)
from .harmonics import (
    HarmonicSpectrum,
    closed_form_A3_B3,
    closed_form_A4_B4_branch,
    closed_form_A6_B6,
    closed_form_A12_B12,
    extract_harmonics,
    verify_coefficient_identity,
)
from .generators import (
    RiemannExampleParams,
    RotationalProfile,
    gen_fixture,
    gen_riemann_example,
    gen_rotational_lw,
)
from .fitting import ClassificationReport, CurvatureSampleSet, classify, fit_lw

__version__ = "0.1.0"
