"""Winding-number tests in both formulations."""

import math

import numpy as np
import pytest

from twoband import (DualSSHParams, GapClosedError, MassiveDiracParams,
                     NonQuantizedError, SSHParams, dual_windings,
                     massive_dirac_model, ssh_model, winding_cross_product,
                     winding_log_derivative)
from twoband.topology import winding_phase_accumulation

PI = math.pi


def ssh_offdiagonal(t1, t2):
    return lambda k: t1 - t2 * np.exp(1j * k)


class TestLogDerivative:
    def test_trivial_phase(self):
        assert winding_log_derivative(ssh_offdiagonal(2.0, 1.0)) == 0

    def test_topological_phase(self):
        assert winding_log_derivative(ssh_offdiagonal(1.0, 2.0)) == 1

    def test_constant_map(self):
        assert winding_log_derivative(lambda k: 1.0 + 0.0j) == 0

    def test_gap_closed(self):
        with pytest.raises(GapClosedError):
            winding_log_derivative(ssh_offdiagonal(1.0, 1.0))

    def test_non_quantized_rejected(self):
        # an open (non-periodic) phase ramp accumulates half a turn
        with pytest.raises(NonQuantizedError):
            winding_log_derivative(lambda k: np.exp(0.5j * k))

    def test_quantization_residual(self):
        for t1, t2 in ((2.0, 1.0), (1.0, 2.0), (1.0, 1.1)):
            raw = winding_phase_accumulation(ssh_offdiagonal(t1, t2), 512)
            assert abs(raw - round(raw)) < 1e-6

    def test_grid_stability(self):
        for t1, t2 in ((2.0, 1.0), (1.0, 2.0), (0.9, 1.0)):
            values = {winding_log_derivative(ssh_offdiagonal(t1, t2), n)
                      for n in (256, 512, 1024, 2048)}
            assert len(values) == 1


class TestCrossProduct:
    @pytest.mark.parametrize("mu", [-3.0, -0.5, 0.5, 3.0])
    def test_massive_dirac_is_trivial(self, mu):
        model = massive_dirac_model(MassiveDiracParams(mu=mu))
        assert abs(winding_cross_product(model)) < 1e-10

    def test_ssh_agrees_with_contour_form(self):
        got = winding_cross_product(ssh_model(SSHParams(1.0, 2.0)))
        assert got == pytest.approx(1.0, abs=1e-6)

    def test_ssh_trivial_phase(self):
        got = winding_cross_product(ssh_model(SSHParams(2.0, 1.0)))
        assert got == pytest.approx(0.0, abs=1e-6)

    def test_gap_closed(self):
        with pytest.raises(GapClosedError):
            winding_cross_product(ssh_model(SSHParams(1.0, 1.0)))


class TestDualWindings:
    def test_trivial_topological_split(self):
        assert dual_windings(DualSSHParams(1.0, 0.5)) == (0, 1)
        assert dual_windings(DualSSHParams(1.0, 2.0)) == (1, 0)

    @pytest.mark.parametrize("r", [0.3, 0.7, 1.5, 3.0])
    def test_relabeling_symmetry(self, r):
        nu_i, _ = dual_windings(DualSSHParams(1.0, r))
        _, nu_ii_inv = dual_windings(DualSSHParams(1.0, 1.0 / r))
        assert nu_i == nu_ii_inv

    @pytest.mark.parametrize("r", [0.2, 0.9, 1.1, 4.0])
    def test_windings_sum_to_one(self, r):
        nu_i, nu_ii = dual_windings(DualSSHParams(1.0, r))
        assert nu_i + nu_ii == 1

    def test_self_dual_point_rejected(self):
        with pytest.raises(GapClosedError):
            dual_windings(DualSSHParams(1.0, 1.0))
