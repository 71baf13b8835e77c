import numpy as np
import pytest

from wlab.cyclic import build_riemann_type
from wlab.errors import (
    InsufficientSpread,
    InvalidParameter,
    UnderdeterminedUmbilic,
)
from wlab.fitting import (
    VERDICT_NOT_LW,
    VERDICT_RIEMANN,
    VERDICT_ROTATIONAL,
    VERDICT_UMBILIC,
    CurvatureSampleSet,
    classify,
    fit_lw,
    sample_curvatures,
)
from wlab.generators import (
    RiemannExampleParams,
    gen_fixture,
    gen_riemann_example,
    gen_rotational_lw,
)
from wlab.surface import LWRelation
from conftest import generic_riemann_type


class TestCurvatureSampleSet:
    def test_validation(self):
        with pytest.raises(InvalidParameter):
            CurvatureSampleSet(np.ones(2), np.ones(2))
        with pytest.raises(InvalidParameter):
            CurvatureSampleSet(np.ones(4), np.ones(3))
        with pytest.raises(InvalidParameter):
            CurvatureSampleSet(np.array([1.0, np.nan, 2.0]), np.ones(3))


class TestFitLw:
    def test_exact_line(self, rng):
        k2 = rng.uniform(-1.0, 1.0, size=40)
        k1 = 2.0 * k2 + 0.5
        fit, _ = fit_lw(CurvatureSampleSet(k1, k2))
        assert abs(fit.m - 2.0) < 1e-12
        assert abs(fit.n - 0.5) < 1e-12
        assert fit.rms < 1e-12

    def test_labeling_duality(self, rng):
        # k1 = m k2 + n implies k2 = k1/m - n/m in the swapped labeling
        k2 = rng.uniform(-1.0, 1.0, size=40)
        k1 = 2.0 * k2 + 0.5
        _, swapped = fit_lw(CurvatureSampleSet(k1, k2))
        assert abs(swapped.m - 0.5) < 1e-8
        assert abs(swapped.n + 0.25) < 1e-8

    def test_umbilic_raises(self):
        k = np.full(10, 0.7)
        with pytest.raises(UnderdeterminedUmbilic):
            fit_lw(CurvatureSampleSet(k, k))

    def test_constant_nonumbilic_raises(self):
        # cylinder-like samples: both curvatures constant, not equal
        with pytest.raises(InsufficientSpread):
            fit_lw(CurvatureSampleSet(np.full(10, 1.0), np.zeros(10)))

    def test_roundtrip_with_generator(self):
        rel = LWRelation(-1.0, 1.0)
        profile, surf = gen_rotational_lw(rel, 1.0, 0.3, (0.0, 1.0))
        samples, _, _ = sample_curvatures(surf, (25, 25))
        fit_given, fit_swapped = fit_lw(samples)
        best = min((f for f in (fit_given, fit_swapped) if f is not None),
                   key=lambda f: f.rms)
        assert abs(best.m - rel.m) < 1e-6
        assert abs(best.n - rel.n) < 1e-6
        assert best.rms < 1e-8


class TestClassify:
    def test_sphere_umbilic(self):
        report = classify(gen_fixture("sphere", radius=2.0))
        assert report.verdict == VERDICT_UMBILIC
        assert report.is_lw

    def test_cylinder_rotational(self):
        report = classify(gen_fixture("cylinder", radius=1.0))
        assert report.verdict == VERDICT_ROTATIONAL
        assert report.is_rotational

    def test_torus_not_lw(self):
        report = classify(gen_fixture("torus", radius_major=2.0, radius_minor=1.0))
        assert report.verdict == VERDICT_NOT_LW
        assert not report.is_lw

    def test_catenoid_rotational_minimal(self):
        report = classify(gen_fixture("catenoid", radius=1.0))
        assert report.verdict == VERDICT_ROTATIONAL
        assert report.is_minimal
        best = report.best_fit()
        assert abs(best.m + 1.0) < 1e-6
        assert abs(best.n) < 1e-6

    def test_riemann_example_verdict(self):
        data = gen_riemann_example(
            RiemannExampleParams(1.0, 0.0, 1.0, 0.0, (-1.0, 1.0)))
        report = classify(build_riemann_type(data), riemann_data=data)
        assert report.verdict == VERDICT_RIEMANN
        assert report.is_minimal and not report.is_rotational

    def test_generic_surface_not_lw(self):
        report = classify(build_riemann_type(generic_riemann_type()))
        assert not report.is_lw
        assert report.lw_rms > 1e-3

    def test_rotational_lw_verdict(self):
        rel = LWRelation(2.0, -1.0)
        _, surf = gen_rotational_lw(rel, 1.0, 0.3, (0.0, 1.0))
        report = classify(surf)
        assert report.verdict == VERDICT_ROTATIONAL
        best = report.best_fit()
        assert abs(best.m - 2.0) < 1e-4 or abs(best.m - 0.5) < 1e-4

    def test_report_text(self):
        report = classify(gen_fixture("cylinder", radius=1.0))
        text = report.to_text()
        assert "verdict:" in text and text.endswith("\n")
