"""Named verification suites behind the `verify` CLI subcommand.

Each check reports the measured residual and the tolerance it is held to, so
a failing run shows exactly how far off the implementation is.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Dict, List

import numpy as np

from . import special_functions as sf
from .bloch import GlobalReference, plateau_reference
from .bounds_duality import (bound_check, complexity_duality_check,
                             complexity_duality_offset, fs_duality_check,
                             ratio_R, self_dual_constraint)
from .complexity import (BandAssignment, excited_piecewise_complexity,
                         excited_split_closed, ground_complexity,
                         md_complexity_closed, plateau_complexity,
                         ssh_complexity_closed)
from .fidelity import (chi_F, chi_F_md_closed, chi_F_md_z_closed,
                       chi_F_ssh_closed)
from .models import (DualSSHParams, MassiveDiracParams, NonHermitianSSHParams,
                     SSHParams, dual_pair, massive_dirac_model,
                     nh_ssh_bloch_hamiltonian, ssh_model)
from .nonhermitian import (bikrylov_basis, biorthogonal_ground, detect_cusps,
                           nh_complexity_per_mode,
                           nh_complexity_per_mode_overlap,
                           nh_ground_complexity)
from .quadrature import BZQuadratureConfig
from .topology import dual_windings, winding_cross_product, winding_log_derivative

PI = math.pi


@dataclass(frozen=True)
class CheckResult:
    name: str
    residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.residual <= self.tolerance


def _check(name: str, residual: float, tolerance: float) -> CheckResult:
    return CheckResult(name, float(abs(residual)), float(tolerance))


def special_functions_suite() -> List[CheckResult]:
    checks = [
        _check("K(0) = pi/2", sf.complete_K(0.0) - 0.5 * PI, 1e-14),
        _check("E(0) = pi/2", sf.complete_E(0.0) - 0.5 * PI, 1e-14),
        _check("E(1) = 1", sf.complete_E(1.0) - 1.0, 0.0),
        _check("K(0.5) vs quadrature",
               sf.complete_K(0.5) - sf.complete_K_quadrature(0.5), 1e-12),
        _check("E(0.3) vs quadrature",
               sf.complete_E(0.3) - sf.complete_E_quadrature(0.3), 1e-12),
        _check("incomplete_E(pi/2, 0.4) reduces to E(0.4)",
               sf.incomplete_E(0.5 * PI, 0.4) - sf.complete_E(0.4), 1e-12),
    ]
    xp = 1e-8
    checks.append(_check(
        "K near m=1 matches log asymptote (relative)",
        (sf.complete_K(1.0 - xp) - 0.5 * math.log(16.0 / xp)) / sf.complete_K(1.0 - xp),
        1e-4))
    m = 0.04
    k_series = 0.5 * PI * (1.0 + 0.25 * m + (9.0 / 64.0) * m * m)
    checks.append(_check("K series at m=0.04",
                         sf.complete_K(m) - k_series, 2.0 * 0.5 * PI * (25.0 / 256.0) * m ** 3))
    h = 1e-6
    fd = (sf.complete_K(0.5 + h) - sf.complete_K(0.5 - h)) / (2.0 * h)
    checks.append(_check("dK/dm identity vs finite difference (relative)",
                         (sf.dK_dm(0.5) - fd) / fd, 1e-8))
    ms = np.linspace(0.0, 0.95, 20)
    kvals = [sf.complete_K(m) for m in ms]
    evals = [sf.complete_E(m) for m in ms]
    mono = float(np.min(np.diff(kvals))) > 0 and float(np.max(np.diff(evals))) < 0
    checks.append(_check("K increasing / E decreasing", 0.0 if mono else 1.0, 0.5))
    return checks


def closed_forms_suite() -> List[CheckResult]:
    cfg = BZQuadratureConfig()
    checks: List[CheckResult] = []
    refs = [GlobalReference(0.5 * PI, PI), GlobalReference(PI / 3.0, PI / 4.0),
            GlobalReference(0.3, 2.0)]
    worst = 0.0
    for t1 in (0.6, 1.0, 1.7, 2.6):
        for t2 in (0.5, 1.2, 2.1, 2.9):
            model = ssh_model(SSHParams(t1, t2))
            for ref in refs:
                worst = max(worst, abs(ssh_complexity_closed(SSHParams(t1, t2), ref)
                                       - ground_complexity(model, ref, cfg)))
    checks.append(_check("SSH closed form vs quadrature (grid)", worst, 1e-8))
    worst = 0.0
    for mu in (0.01, 0.1, 0.5, 1.0, 2.0, 10.0):
        for theta in (0.0, PI / 4.0, PI / 3.0):
            model = massive_dirac_model(MassiveDiracParams(mu=mu))
            ref = GlobalReference(theta, 0.0)
            worst = max(worst, abs(md_complexity_closed(MassiveDiracParams(mu=mu), theta)
                                   - ground_complexity(model, ref, cfg)))
    checks.append(_check("massive-Dirac closed form vs quadrature", worst, 1e-8))
    worst = 0.0
    for t1, t2 in ((2.0, 1.0), (1.0, 2.0), (1.3, 2.2), (2.6, 0.7)):
        got = chi_F(ssh_model(SSHParams(t1, t2)), t2, cfg).components[0]
        ref_val = chi_F_ssh_closed(SSHParams(t1, t2))
        worst = max(worst, abs(got - ref_val) / ref_val)
    checks.append(_check("SSH susceptibility x-component closed form (relative)", worst, 1e-6))
    worst = 0.0
    for mu in (0.05, 0.5, 1.0, 3.0):
        breakdown = chi_F(massive_dirac_model(MassiveDiracParams(mu=mu)), mu, cfg)
        worst = max(worst, abs(breakdown.total - chi_F_md_closed(MassiveDiracParams(mu=mu)))
                    / breakdown.total)
        worst = max(worst, abs(breakdown.components[2] - chi_F_md_z_closed(MassiveDiracParams(mu=mu)))
                    / breakdown.components[2])
    checks.append(_check("massive-Dirac susceptibility closed forms (relative)", worst, 1e-6))
    checks.append(_check("plateau value in the topological phase",
                         plateau_complexity(SSHParams(1.0, 2.0)) - (0.5 - 1.0 / PI), 1e-8))
    checks.append(_check("plateau linear branch in the trivial phase",
                         plateau_complexity(SSHParams(1.0, 0.4)) - (0.5 - 0.4 / PI), 1e-8))
    bands = BandAssignment.two_interval(0.0, -1, +1)
    ref = GlobalReference(0.7, 0.3)
    got = excited_piecewise_complexity(SSHParams(1.0, 1.7), bands, ref, cfg)
    checks.append(_check("k0 = 0 band split closed form",
                         got - excited_split_closed(SSHParams(1.0, 1.7), 0.7), 1e-8))
    return checks


def duality_suite() -> List[CheckResult]:
    cfg = BZQuadratureConfig()
    ref = GlobalReference(0.5 * PI, PI)
    checks: List[CheckResult] = []
    for r in (0.2, 0.5, 2.0, 5.0):
        _, _, resid = fs_duality_check(DualSSHParams(1.0, r), cfg)
        checks.append(_check(f"susceptibility duality at r={r} (relative)", resid, 1e-6))
        _, _, resid = complexity_duality_check(DualSSHParams(1.0, r), ref, cfg)
        checks.append(_check(f"complexity duality at r={r}", resid, 1e-7))
    checks.append(_check("duality offset vanishes at r=1",
                         complexity_duality_offset(1.0, ref), 0.0))
    model = ssh_model(SSHParams(1.0, 1.0))
    for r in (1.5, 3.0):
        resid = ratio_R(model, ref, r, cfg) - ratio_R(model, ref, 1.0 / r, cfg)
        checks.append(_check(f"ratio symmetry R(r)=R(1/r) at r={r}", resid, 1e-8))
    c1 = 0.5 + ref.re_alpha_beta * 2.0 / PI
    resid_prev = None
    monotone = True
    for eps in (1e-2, 1e-3):
        val, _ = self_dual_constraint(DualSSHParams(1.0, 1.0 + eps), ref)
        resid = abs(val - c1)
        if resid_prev is not None and resid >= resid_prev:
            monotone = False
        resid_prev = resid
    checks.append(_check("self-dual constraint residual shrinks with eps",
                         0.0 if monotone else 1.0, 0.5))
    return checks


def bound_suite() -> List[CheckResult]:
    cfg = BZQuadratureConfig()
    checks: List[CheckResult] = []
    ref = GlobalReference(0.5 * PI, PI)
    ssh = ssh_model(SSHParams(1.0, 1.0))
    violations = 0
    for lam in np.linspace(0.2, 2.5, 20):
        if abs(lam - 1.0) < 2e-2:
            continue
        if not bound_check(ssh, ref, float(lam), cfg).satisfied:
            violations += 1
    checks.append(_check("bound holds across the SSH sweep", violations, 0.5))
    md = massive_dirac_model(MassiveDiracParams())
    ref_z = GlobalReference(0.0, 0.0)
    violations = 0
    for lam in np.linspace(-2.0, 2.0, 20):
        if abs(lam) < 5e-2:
            continue
        if not bound_check(md, ref_z, float(lam), cfg).satisfied:
            violations += 1
    checks.append(_check("bound holds across the massive-Dirac sweep", violations, 0.5))
    target = math.sqrt(2.0 / 3.0)
    checks.append(_check("ratio saturation, SSH at t2=50",
                         ratio_R(ssh, ref, 50.0, cfg) - target, 1e-3))
    checks.append(_check("ratio saturation, massive Dirac at mu=50",
                         ratio_R(md, ref_z, 50.0, cfg) - target, 1e-3))
    return checks


def winding_suite() -> List[CheckResult]:
    checks = [
        _check("trivial chain winding (t1=2, t2=1)",
               winding_log_derivative(lambda k: 2.0 - 1.0 * np.exp(1j * k)), 0.0),
        _check("topological chain winding (t1=1, t2=2) minus 1",
               winding_log_derivative(lambda k: 1.0 - 2.0 * np.exp(1j * k)) - 1, 0.0),
        _check("constant map winding",
               winding_log_derivative(lambda k: 1.0 + 0.0j), 0.0),
    ]
    for mu in (-3.0, -0.5, 0.5, 3.0):
        model = massive_dirac_model(MassiveDiracParams(mu=mu))
        checks.append(_check(f"massive-Dirac planar winding at mu={mu}",
                             winding_cross_product(model), 1e-10))
    checks.append(_check("SSH planar winding matches contour form",
                         winding_cross_product(ssh_model(SSHParams(1.0, 2.0))) - 1.0, 1e-6))
    for r in (0.3, 0.5, 2.0, 4.0):
        nu_i, nu_ii = dual_windings(DualSSHParams(1.0, r))
        checks.append(_check(f"dual windings sum to 1 at r={r}", nu_i + nu_ii - 1, 0.0))
    return checks


def nonhermitian_suite() -> List[CheckResult]:
    cfg = BZQuadratureConfig()
    checks: List[CheckResult] = []
    rng = np.random.default_rng(7)
    worst_pairing = 0.0
    worst_basis = 0.0
    worst_dual = 0.0
    for _ in range(40):
        t1, t2 = rng.uniform(0.5, 3.0, size=2)
        gamma = rng.uniform(-1.5, 1.5)
        k = rng.uniform(-PI, PI)
        params = NonHermitianSSHParams(t1=t1, t2=t2, gamma=gamma)
        pair = biorthogonal_ground(nh_ssh_bloch_hamiltonian(params, k))
        worst_pairing = max(worst_pairing, abs(pair.pairing() - 1.0))
        z = rng.normal(size=4)
        alpha = complex(z[0], z[1])
        beta = complex(z[2], z[3])
        n = math.sqrt(abs(alpha) ** 2 + abs(beta) ** 2)
        alpha, beta = alpha / n, beta / n
        basis = bikrylov_basis(alpha, beta)
        gram = np.array([[basis.left0 @ basis.right0, basis.left0 @ basis.right1],
                         [basis.left1 @ basis.right0, basis.left1 @ basis.right1]])
        worst_basis = max(worst_basis, float(np.max(np.abs(gram - np.eye(2)))))
        worst_dual = max(worst_dual, abs(nh_complexity_per_mode(params, k, alpha, beta)
                                         - nh_complexity_per_mode_overlap(params, k, alpha, beta)))
    checks.append(_check("biorthogonal pairing <L|R> = 1 (random samples)", worst_pairing, 1e-10))
    checks.append(_check("Krylov biorthonormality (random samples)", worst_basis, 1e-10))
    checks.append(_check("explicit vs overlap per-mode weights", worst_dual, 1e-10))
    amp = 1.0 / math.sqrt(2.0)
    hermitian = ground_complexity(ssh_model(SSHParams(2.0, 1.0)), GlobalReference(0.5 * PI, 0.0), cfg)
    checks.append(_check("gamma = 0 reduction to the Hermitian value",
                         nh_ground_complexity(NonHermitianSSHParams(2.0, 1.0, 0.0), amp, amp, cfg)
                         - hermitian, 1e-8))
    checks.append(_check("gamma -> 0 continuity",
                         nh_ground_complexity(NonHermitianSSHParams(2.0, 1.0, 1e-6), amp, amp, cfg)
                         - hermitian, 1e-5))
    grid = np.linspace(0.5, 4.0, 200)
    curve = [(float(t2), nh_ground_complexity(NonHermitianSSHParams(2.0, float(t2), 1.0),
                                              amp, amp, cfg)) for t2 in grid]
    cusps = detect_cusps(curve)
    spacing = float(grid[1] - grid[0])
    resid = 1.0
    if len(cusps) >= 2:
        resid = max(min(abs(c - 1.5) for c in cusps), min(abs(c - 2.5) for c in cusps))
    checks.append(_check("PBC cusps near t2 = t1 +- gamma/2", resid, spacing))
    return checks


SUITES: Dict[str, Callable[[], List[CheckResult]]] = {
    "special-functions": special_functions_suite,
    "closed-forms": closed_forms_suite,
    "duality": duality_suite,
    "bound": bound_suite,
    "winding": winding_suite,
    "nonhermitian": nonhermitian_suite,
}


def run_suite(name: str) -> List[CheckResult]:
    if name == "all":
        results: List[CheckResult] = []
        for suite in SUITES.values():
            results.extend(suite())
        return results
    if name not in SUITES:
        raise KeyError(name)
    return SUITES[name]()
