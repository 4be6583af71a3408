"""Model-zoo tests: substitution values, periodicity, derivatives, parity."""

import math

import numpy as np
import pytest

from twoband import (CooperPairBoxParams, DomainError, DualSSHParams,
                     MassiveDiracParams, NonHermitianSSHParams, SSHParams,
                     cooper_pair_box_model, dual_pair, massive_dirac_model,
                     nh_ssh_bloch_hamiltonian, ssh_model)
from twoband.models import flux_angle

PI = math.pi
KGRID = np.linspace(-PI, PI, 128, endpoint=False)


class TestSSH:
    def test_gap_closes_at_critical_point(self):
        d = ssh_model(SSHParams(1.0, 1.0)).d(0.0)
        assert np.allclose(d, 0.0)

    def test_substitution_at_k_pi(self):
        d = ssh_model(SSHParams(2.0, 1.0)).d(PI)
        assert np.allclose(d, [3.0, 0.0, 0.0])
        assert np.linalg.norm(d) == pytest.approx(3.0)

    def test_magnitude_on_grid(self):
        model = ssh_model(SSHParams(1.0, 2.0))
        ks = np.linspace(-PI, PI, 64)
        mags = np.linalg.norm(model.d(ks), axis=0)
        assert np.allclose(mags, np.sqrt(5.0 - 4.0 * np.cos(ks)), atol=1e-12)

    def test_parity_of_components(self):
        d_plus = ssh_model(SSHParams(1.3, 0.8)).d(KGRID)
        d_minus = ssh_model(SSHParams(1.3, 0.8)).d(-KGRID)
        assert np.allclose(d_plus[0], d_minus[0], atol=1e-14)   # x even
        assert np.allclose(d_plus[2], -d_minus[2], atol=1e-14)  # z odd

    def test_rejects_nonpositive_hoppings(self):
        with pytest.raises(DomainError):
            SSHParams(0.0, 1.0)
        with pytest.raises(DomainError):
            SSHParams(1.0, -2.0)


class TestMassiveDirac:
    def test_gap_closing_point(self):
        assert np.allclose(massive_dirac_model(MassiveDiracParams(mu=0.0)).d(0.0), 0.0)

    def test_substitution(self):
        d = massive_dirac_model(MassiveDiracParams(t=1.0, mu=2.0)).d(0.5 * PI)
        assert np.allclose(d, [1.0, 0.0, 2.0])

    def test_eigenvalues_on_grid(self):
        mu = 0.7
        model = massive_dirac_model(MassiveDiracParams(mu=mu))
        mags = np.linalg.norm(model.d(KGRID), axis=0)
        assert np.allclose(mags, np.sqrt(np.sin(KGRID) ** 2 + mu * mu), atol=1e-12)

    def test_y_component_identically_zero(self):
        model = massive_dirac_model(MassiveDiracParams(mu=1.5))
        assert np.all(model.d(KGRID)[1] == 0.0)


class TestDualPair:
    def test_self_dual_point_coincides(self):
        m1, m2 = dual_pair(DualSSHParams(t=1.3, r=1.0))
        assert np.max(np.abs(m1.d(KGRID) - m2.d(KGRID))) < 1e-15

    def test_family_one_is_ssh_with_scaled_intercell(self):
        m1, _ = dual_pair(DualSSHParams(t=1.0, r=2.0))
        ref = ssh_model(SSHParams(1.0, 2.0))
        assert np.allclose(m1.d(KGRID), ref.d(KGRID), atol=1e-15)

    def test_family_two_is_ssh_with_inverse_ratio(self):
        _, m2 = dual_pair(DualSSHParams(t=1.0, r=2.0))
        ref = ssh_model(SSHParams(1.0, 0.5))
        assert np.allclose(m2.d(KGRID), ref.d(KGRID), atol=1e-15)

    def test_rejects_nonpositive_ratio(self):
        with pytest.raises(DomainError):
            DualSSHParams(1.0, 0.0)
        with pytest.raises(DomainError):
            DualSSHParams(1.0, -1.0)


class TestCooperPairBox:
    def test_gap_closes_at_half_gate_charge_and_half_flux(self):
        params = CooperPairBoxParams(Ej=1.0, Ecc=2.0, ng=0.5, Phi_over_Phi0=0.5)
        model = cooper_pair_box_model(params)
        assert np.allclose(model.d(flux_angle(params)), 0.0, atol=1e-15)

    def test_zero_gate_charge(self):
        model = cooper_pair_box_model(CooperPairBoxParams(Ej=1.0, Ecc=3.0, ng=0.0))
        assert model.d(0.3)[2] == pytest.approx(1.5)

    def test_zero_flux_x_component(self):
        params = CooperPairBoxParams(Ej=1.0, Ecc=1.0, Phi_over_Phi0=0.0)
        model = cooper_pair_box_model(params)
        assert model.d(flux_angle(params))[0] == pytest.approx(-1.0)

    def test_rejects_nonpositive_energies(self):
        with pytest.raises(DomainError):
            CooperPairBoxParams(Ej=0.0, Ecc=1.0)


class TestNonHermitianHamiltonian:
    def test_hermitian_limit_matches_rotated_ssh(self):
        params = NonHermitianSSHParams(1.2, 0.7, 0.0)
        for k in (-2.0, 0.3, 1.7):
            h = nh_ssh_bloch_hamiltonian(params, k)
            assert np.allclose(h, h.T)
            assert np.max(np.abs(h.imag)) == 0.0
            d = ssh_model(SSHParams(1.2, 0.7)).d(k)
            expected = np.array([[d[2], d[0]], [d[0], -d[2]]])
            assert np.allclose(h.real, expected, atol=1e-14)

    def test_exceptional_point_values(self):
        h = nh_ssh_bloch_hamiltonian(NonHermitianSSHParams(2.0, 2.5, 1.0), 0.0)
        r1, r3 = h[0, 1], h[0, 0]
        assert r1 == pytest.approx(-0.5)
        assert r3 == pytest.approx(0.5j)
        assert r1 ** 2 + r3 ** 2 == pytest.approx(0.0, abs=1e-15)

    def test_traceless(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            t1, t2 = rng.uniform(0.2, 3.0, size=2)
            gamma = rng.uniform(-2.0, 2.0)
            k = rng.uniform(-PI, PI)
            h = nh_ssh_bloch_hamiltonian(NonHermitianSSHParams(t1, t2, gamma), k)
            assert np.trace(h) == 0.0

    def test_gap_closing_couplings(self):
        assert NonHermitianSSHParams(2.0, 1.0, 1.0).gap_closing_couplings() == (1.5, 2.5)


class TestModelContract:
    @pytest.mark.parametrize("factory,lams", [
        (lambda lam: ssh_model(SSHParams(1.0, lam)), (0.3, 0.8, 1.0, 1.5, 2.5)),
        (lambda lam: massive_dirac_model(MassiveDiracParams(mu=lam)), (-2.0, -0.4, 0.1, 0.9, 3.0)),
        (lambda lam: dual_pair(DualSSHParams(1.0, lam))[0], (0.2, 0.7, 1.0, 1.6, 4.0)),
        (lambda lam: dual_pair(DualSSHParams(1.0, lam))[1], (0.2, 0.7, 1.0, 1.6, 4.0)),
        (lambda lam: cooper_pair_box_model(CooperPairBoxParams(1.0, 1.0, ng=lam)),
         (-0.5, 0.0, 0.3, 0.5, 1.0)),
    ])
    def test_periodicity_and_analytic_derivative(self, factory, lams):
        h = 1e-6
        for lam in lams:
            model = factory(lam)
            model.validate(grid_points=128)
            fd = (model.at(model.lam + h).d(KGRID) - model.at(model.lam - h).d(KGRID)) / (2.0 * h)
            assert np.max(np.abs(fd - model.d_deriv(KGRID))) < 1e-7

    def test_fd_fallback_when_no_analytic_derivative(self):
        from dataclasses import replace
        model = replace(ssh_model(SSHParams(1.0, 1.4)), family_deriv=None)
        analytic = ssh_model(SSHParams(1.0, 1.4)).d_deriv(KGRID)
        assert np.max(np.abs(model.d_deriv(KGRID) - analytic)) < 1e-9

    def test_at_rebinds_parameter(self):
        model = ssh_model(SSHParams(1.0, 1.0))
        assert np.allclose(model.at(2.0).d(KGRID), ssh_model(SSHParams(1.0, 2.0)).d(KGRID))

    def test_dvector_normalizes_to_unit_bloch_vector(self):
        from twoband import GapClosedError
        vec = ssh_model(SSHParams(1.0, 2.0)).dvector(0.7)
        unit = vec.normalized()
        assert unit.as_array() == pytest.approx(vec.as_array() / vec.magnitude())
        degenerate = ssh_model(SSHParams(1.0, 1.0)).dvector(0.0)
        with pytest.raises(GapClosedError):
            degenerate.normalized()
