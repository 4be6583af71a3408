"""The complexity-susceptibility bound, the saturation ratio, and duality maps.

The derivative of the BZ-averaged complexity decomposes over Bloch axes with
reference-state coefficients Q_i; Cauchy-Schwarz then bounds it by
4*pi * sum_i |Q_i| sqrt(chi_F^i).  The dual pair of dimerized chains obeys
exact susceptibility and complexity identities under r <-> 1/r, verified here
numerically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .bloch import GlobalReference
from .complexity import ground_complexity
from .errors import DomainError, GapClosedError, UndefinedRatioError
from .fidelity import chi_F, dhat_derivative
from .models import DualSSHParams, TwoBandModel, dual_pair
from .quadrature import (BZQuadratureConfig, FDConfig, bz_average_vec,
                         param_derivative, with_offset_on)
from .special_functions import complete_E, complete_K, dE_dm, dK_dm

PI = math.pi

# Bound slack: lhs <= rhs * (1 + _BOUND_RTOL) counts as satisfied.
_BOUND_RTOL = 1e-9

_MC_FLOOR = 1e-15


def reference_coefficients(ref: GlobalReference) -> np.ndarray:
    """Coefficients Q = n_ref / (4*pi) multiplying integral(d(d_hat_i)/d(lambda)) dk."""
    return ref.bloch.as_array() / (4.0 * PI)


@dataclass(frozen=True)
class BoundReport:
    """One evaluation of |dC/d(lambda)| <= 4*pi sum_i |Q_i| sqrt(chi_F^i)."""

    lam: float
    lhs: float
    rhs: float
    q: Tuple[float, float, float]
    satisfied: bool
    ratio: float


def dhat_derivative_integrals(model: TwoBandModel, lam: float,
                              cfg: BZQuadratureConfig | None = None) -> np.ndarray:
    """integral over the BZ of d(d_hat_i)/d(lambda), one value per axis."""
    m = model.at(lam)

    def integrand(k):
        return dhat_derivative(m.d(k), m.d_deriv(k))

    return 2.0 * PI * bz_average_vec(with_offset_on(integrand, GapClosedError), cfg,
                                     extra_points=m.singular_points)


def bound_check(model: TwoBandModel, ref: GlobalReference, lam: float,
                cfg: BZQuadratureConfig | None = None,
                fd: FDConfig | None = None) -> BoundReport:
    """Evaluate both sides of the bound at one parameter value.

    The left side is a central finite difference of the quadrature
    complexity; the right side combines the susceptibility components.  A
    divergent susceptibility makes the bound trivially satisfied.
    """
    fd = fd or FDConfig(step=1e-5, scheme="central4")
    q = reference_coefficients(ref)
    lhs = abs(param_derivative(lambda x: ground_complexity(model.at(x), ref, cfg), lam, fd))
    breakdown = chi_F(model, lam, cfg)
    if breakdown.diverged:
        rhs = math.inf
    else:
        rhs = 4.0 * PI * float(np.sum(np.abs(q) * np.sqrt(np.maximum(breakdown.components, 0.0))))
    try:
        ratio = ratio_R(model, ref, lam, cfg)
    except UndefinedRatioError:
        ratio = math.nan
    satisfied = lhs <= rhs * (1.0 + _BOUND_RTOL)
    return BoundReport(lam=float(lam), lhs=lhs, rhs=rhs, q=tuple(q),
                       satisfied=bool(satisfied), ratio=ratio)


def ratio_R(model: TwoBandModel, ref: GlobalReference, lam: float,
            cfg: BZQuadratureConfig | None = None) -> float:
    """Saturation ratio of the dominant component of the bound.

    R = |dC^(i)/d(lambda)| / (4*pi |Q_i| sqrt(chi_F^i)) with the dominant
    axis i chosen as the largest |integral of d(d_hat_i)/d(lambda)|; the
    reference coefficients cancel, so R <= 1 is pure Cauchy-Schwarz and
    tends to sqrt(2/3) deep in either phase.
    """
    integrals = dhat_derivative_integrals(model, lam, cfg)
    axis = int(np.argmax(np.abs(integrals)))
    q = reference_coefficients(ref)
    if abs(q[axis]) < 1e-15:
        raise UndefinedRatioError(
            f"reference coefficient Q[{axis}] vanishes for the dominant component")
    breakdown = chi_F(model, lam, cfg)
    comp = breakdown.components[axis]
    if not comp > 0.0:
        raise UndefinedRatioError("dominant susceptibility component vanishes")
    return abs(integrals[axis]) / (4.0 * PI * math.sqrt(comp))


def fs_duality_check(params: DualSSHParams,
                     cfg: BZQuadratureConfig | None = None) -> Tuple[float, float, float]:
    """Check chi_F^(II)(1/r) = r^4 chi_F^(I)(r).

    Each family is differentiated with respect to its own parameter; the
    left side is family II evaluated at parameter value 1/r.  Returns
    (lhs, rhs, relative residual).
    """
    r = params.r
    if abs(r - 1.0) < 1e-12:
        raise DomainError("susceptibility duality check diverges at r = 1")
    model_i, model_ii = dual_pair(params)
    lhs = chi_F(model_ii, 1.0 / r, cfg).total
    rhs = r ** 4 * chi_F(model_i, r, cfg).total
    residual = abs(lhs - rhs) / max(abs(lhs), abs(rhs))
    return lhs, rhs, residual


def _mc_of_ratio(r: float) -> float:
    return ((1.0 - r) / (1.0 + r)) ** 2


def _K_of_ratio(r: float) -> float:
    """K(4r/(1+r)^2) with the near-self-dual logarithmic asymptote."""
    mc = _mc_of_ratio(r)
    if mc < _MC_FLOOR:
        return math.log(4.0 * (1.0 + r) / abs(1.0 - r))
    return complete_K(1.0 - mc)


def ratio_integral_I1(r: float) -> float:
    """I1(r) = [(1-r) K(m) + (1+r) E(m)] / pi, m = 4r/(1+r)^2."""
    mc = _mc_of_ratio(r)
    if mc < _MC_FLOOR:
        k_term = 0.0 if r == 1.0 else (1.0 - r) * _K_of_ratio(r)
        return (k_term + (1.0 + r)) / PI
    m = 1.0 - mc
    return ((1.0 - r) * complete_K(m) + (1.0 + r) * complete_E(m)) / PI


def ratio_complexity(r: float, ref: GlobalReference) -> float:
    """Closed-form complexity of the chain with coupling ratio r (t-independent)."""
    return 0.5 + ref.re_alpha_beta * ratio_integral_I1(r)


def ratio_complexity_prime(r: float, ref: GlobalReference) -> float:
    """Analytic d/dr of ratio_complexity; diverges logarithmically at r = 1."""
    a = ref.re_alpha_beta
    if a == 0.0:
        return 0.0
    mc = _mc_of_ratio(r)
    if mc < _MC_FLOOR:
        raise DomainError("complexity derivative diverges at the self-dual point")
    m = 1.0 - mc
    m_prime = 4.0 * (1.0 - r) / (1.0 + r) ** 3
    i1_prime = (-complete_K(m) + complete_E(m)
                + ((1.0 - r) * dK_dm(m) + (1.0 + r) * dE_dm(m)) * m_prime) / PI
    return a * i1_prime


def complexity_duality_offset(r: float, ref: GlobalReference) -> float:
    """H(r) = (1-r)/2 + 2 Re(alpha* beta) (1-r) K(m) / pi; H(1) = 0."""
    if r == 1.0:
        return 0.0
    return (1.0 - r) / 2.0 + 2.0 * ref.re_alpha_beta * (1.0 - r) * _K_of_ratio(r) / PI


def complexity_duality_offset_prime(r: float, ref: GlobalReference) -> float:
    """Analytic d/dr of the duality offset H."""
    a = ref.re_alpha_beta
    if a == 0.0:
        return -0.5
    mc = _mc_of_ratio(r)
    if mc < _MC_FLOOR:
        raise DomainError("offset derivative diverges at the self-dual point")
    m = 1.0 - mc
    m_prime = 4.0 * (1.0 - r) / (1.0 + r) ** 3
    return -0.5 + (2.0 * a / PI) * (-complete_K(m) + (1.0 - r) * dK_dm(m) * m_prime)


def complexity_duality_check(params: DualSSHParams, ref: GlobalReference,
                             cfg: BZQuadratureConfig | None = None) -> Tuple[float, float, float]:
    """Check C at ratio 1/r against [C at ratio r - H(r)] / r.

    The left side is the quadrature complexity of dual family II (whose
    coupling ratio at parameter r is 1/r); the right side maps family I
    through the duality offset.  Returns (lhs, rhs, absolute residual).
    """
    model_i, model_ii = dual_pair(params)
    lhs = ground_complexity(model_ii, ref, cfg)
    rhs = (ground_complexity(model_i, ref, cfg)
           - complexity_duality_offset(params.r, ref)) / params.r
    return lhs, rhs, abs(lhs - rhs)


def self_dual_constraint(params: DualSSHParams, ref: GlobalReference) -> Tuple[float, float]:
    """Evaluate (2 C'(r) - H'(r), C(r)) at the given r near the self-dual point.

    As r -> 1 the first entry converges to C(1) even when both C' and H'
    diverge logarithmically: the divergent parts cancel at matching rate.
    """
    r = params.r
    a = ref.re_alpha_beta
    if a == 0.0:
        return 2.0 * 0.0 - (-0.5), ratio_complexity(r, ref)
    constraint = 2.0 * ratio_complexity_prime(r, ref) - complexity_duality_offset_prime(r, ref)
    return constraint, ratio_complexity(r, ref)
