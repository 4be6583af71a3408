"""Complete and incomplete elliptic integrals.

Conventions follow the parameter form: the integrand carries ``1 - m sin^2(u)``
with ``m`` in ``[0, 1]``.  The complete integrals are evaluated by
arithmetic-geometric-mean iteration; the defining quadratures are kept as slow
oracle paths so the fast implementations can always be cross-checked.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.integrate import quad

from .errors import DomainError

# Boundary values within this distance of {0, 1} are clamped instead of
# rejected; they arise from floating-point noise in m = 4*t1*t2/(t1+t2)^2.
_BOUNDARY_CLAMP = 1e-14

# AGM stops when successive arithmetic means agree to this relative level.
_AGM_RTOL = 1e-15


@dataclass(frozen=True)
class EllipticModulus:
    """Parameter m of an elliptic integral, validated and clamped to [0, 1]."""

    m: float

    def __post_init__(self):
        m = float(self.m)
        if math.isnan(m) or m < -_BOUNDARY_CLAMP or m > 1.0 + _BOUNDARY_CLAMP:
            raise DomainError(f"elliptic parameter m={m!r} outside [0, 1]")
        object.__setattr__(self, "m", min(max(m, 0.0), 1.0))

    def __float__(self):
        return self.m


def _param(m) -> float:
    if isinstance(m, EllipticModulus):
        return m.m
    return EllipticModulus(float(m)).m


def _agm(m: float):
    """Return the AGM limit a and the weighted sum over c_n^2 used by E."""
    a, b = 1.0, math.sqrt(1.0 - m)
    csq_sum = 0.5 * m  # 2^{n-1} c_n^2 at n = 0, c_0 = sqrt(m)
    weight = 0.5
    while abs(a - b) > _AGM_RTOL * a:
        c = 0.5 * (a - b)
        a, b = 0.5 * (a + b), math.sqrt(a * b)
        weight *= 2.0
        csq_sum += weight * c * c
    return a, csq_sum


def complete_K(m) -> float:
    """Complete elliptic integral of the first kind, K(m).

    Requires 0 <= m < 1; the m -> 1 limit diverges logarithmically.
    """
    m = _param(m)
    if m >= 1.0:
        raise DomainError("K(m) diverges at m = 1")
    a, _ = _agm(m)
    return math.pi / (2.0 * a)


def complete_E(m) -> float:
    """Complete elliptic integral of the second kind, E(m), on 0 <= m <= 1."""
    m = _param(m)
    if m == 1.0:
        return 1.0
    a, csq_sum = _agm(m)
    return math.pi / (2.0 * a) * (1.0 - csq_sum)


def dK_dm(m) -> float:
    """Derivative dK/dm = [E(m) - (1-m) K(m)] / [2 m (1-m)] for 0 < m < 1."""
    m = _param(m)
    if m == 0.0 or m == 1.0:
        raise DomainError("dK/dm is evaluated on the open interval (0, 1)")
    return (complete_E(m) - (1.0 - m) * complete_K(m)) / (2.0 * m * (1.0 - m))


def dE_dm(m) -> float:
    """Derivative dE/dm = [E(m) - K(m)] / (2 m) for 0 < m < 1."""
    m = _param(m)
    if m == 0.0 or m == 1.0:
        raise DomainError("dE/dm is evaluated on the open interval (0, 1)")
    return (complete_E(m) - complete_K(m)) / (2.0 * m)


def incomplete_E(phi: float, m) -> float:
    """Incomplete elliptic integral of the second kind.

    Computes ``int_0^phi sqrt(1 - m sin^2 u) du`` for amplitude
    ``phi in [0, pi/2]`` by adaptive quadrature (absolute tolerance 1e-12).
    ``incomplete_E(pi/2, m)`` reduces to ``complete_E(m)``.
    """
    m = _param(m)
    phi = float(phi)
    if phi < -_BOUNDARY_CLAMP or phi > 0.5 * math.pi + _BOUNDARY_CLAMP:
        raise DomainError(f"amplitude phi={phi!r} outside [0, pi/2]")
    phi = min(max(phi, 0.0), 0.5 * math.pi)
    if phi == 0.0:
        return 0.0
    val, _ = quad(lambda u: math.sqrt(1.0 - m * math.sin(u) ** 2), 0.0, phi,
                  epsabs=1e-12, epsrel=1e-12, limit=200)
    return val


def complete_K_quadrature(m) -> float:
    """Slow oracle: K(m) by adaptive quadrature of the defining integral."""
    m = _param(m)
    if m >= 1.0:
        raise DomainError("K(m) diverges at m = 1")
    val, _ = quad(lambda u: 1.0 / math.sqrt(1.0 - m * math.sin(u) ** 2),
                  0.0, 0.5 * math.pi, epsabs=1e-13, epsrel=1e-13, limit=500)
    return val


def complete_E_quadrature(m) -> float:
    """Slow oracle: E(m) by adaptive quadrature of the defining integral."""
    m = _param(m)
    val, _ = quad(lambda u: math.sqrt(1.0 - m * math.sin(u) ** 2),
                  0.0, 0.5 * math.pi, epsabs=1e-13, epsrel=1e-13, limit=500)
    return val
