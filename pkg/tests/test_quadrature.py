"""Brillouin-zone quadrature and finite-difference tests."""

import math

import numpy as np
import pytest

from twoband import (BZQuadratureConfig, ConvergenceError, DomainError,
                     FDConfig, GlobalReference, MassiveDiracParams, SSHParams,
                     bz_average, ground_complexity, massive_dirac_model,
                     md_complexity_closed, md_dC_dmu_analytic, param_derivative,
                     ssh_complexity_closed, ssh_model)

PI = math.pi


class TestBZAverage:
    def test_constant_integrand(self):
        for c in (0.0, 1.0, -3.7):
            assert bz_average(lambda k: c) == pytest.approx(c, abs=1e-12)

    def test_odd_integrand_vanishes(self):
        assert abs(bz_average(math.sin)) < 1e-10

    def test_matches_ssh_closed_form_oracle(self):
        params = SSHParams(1.0, 2.0)
        ref = GlobalReference(0.5 * PI, PI)
        got = ground_complexity(ssh_model(params), ref)
        assert got == pytest.approx(ssh_complexity_closed(params, ref), abs=1e-8)

    def test_linearity(self):
        f = lambda k: math.cos(k) ** 2
        g = lambda k: abs(math.sin(3 * k))
        combined = bz_average(lambda k: 2.0 * f(k) - 0.5 * g(k))
        separate = 2.0 * bz_average(f) - 0.5 * bz_average(g)
        assert combined == pytest.approx(separate, abs=2e-10)

    def test_odd_ssh_z_integrand_vanishes(self):
        model = ssh_model(SSHParams(1.0, 1.7))

        def odd(k):
            d = model.d(k)
            return d[2] / np.linalg.norm(d)

        assert abs(bz_average(odd)) < 1e-10

    def test_splitting_invariance_for_integrable_features(self):
        model = massive_dirac_model(MassiveDiracParams(mu=0.01))
        ref = GlobalReference(0.2, 0.0)
        with_split = ground_complexity(model, ref)
        no_split = ground_complexity(
            model, ref, BZQuadratureConfig(singular_points=()))
        assert with_split == pytest.approx(no_split, abs=1e-9)

    def test_convergence_error_when_budget_exhausted(self):
        cfg = BZQuadratureConfig(abs_tol=1e-13, rel_tol=1e-13, max_subdivisions=3)
        with pytest.raises(ConvergenceError):
            bz_average(lambda k: math.sin(1000.0 * k * k), cfg)

    def test_config_validation(self):
        with pytest.raises(DomainError):
            BZQuadratureConfig(abs_tol=0.0)
        with pytest.raises(DomainError):
            BZQuadratureConfig(singular_points=(4.0,))


class TestParamDerivative:
    def test_quadratic(self):
        assert param_derivative(lambda x: x * x, 3.0) == pytest.approx(6.0, abs=1e-8)

    def test_constant(self):
        assert param_derivative(lambda x: 4.2, 1.0) == pytest.approx(0.0, abs=1e-10)

    def test_matches_analytic_massive_dirac_derivative(self):
        got = param_derivative(
            lambda mu: md_complexity_closed(MassiveDiracParams(mu=mu), 0.4), 0.5)
        expected = md_dC_dmu_analytic(MassiveDiracParams(mu=0.5), 0.4)
        assert got == pytest.approx(expected, abs=1e-6)

    def test_central2_scheme(self):
        got = param_derivative(math.sin, 0.7, FDConfig(step=1e-6, scheme="central2"))
        assert got == pytest.approx(math.cos(0.7), abs=1e-9)

    def test_central4_is_higher_order(self):
        f = lambda x: math.exp(math.sin(2.0 * x))
        exact = 2.0 * math.cos(1.4) * math.exp(math.sin(1.4))
        err2 = abs(param_derivative(f, 0.7, FDConfig(step=1e-3, scheme="central2")) - exact)
        err4 = abs(param_derivative(f, 0.7, FDConfig(step=1e-3, scheme="central4")) - exact)
        assert err4 < err2 * 1e-2

    def test_config_validation(self):
        with pytest.raises(DomainError):
            FDConfig(step=0.0)
        with pytest.raises(DomainError):
            FDConfig(scheme="forward")
