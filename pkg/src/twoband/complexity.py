"""Krylov spread complexity from Bloch-sphere geometry.

For a two-level mode the Krylov chain has length two, so the spread
complexity of a target state relative to a reference state reduces to the
overlap formula ``C_k = (1 - n_ref . n_target) / 2``; everything in this
module is that formula averaged over the Brillouin zone, plus the closed
forms it admits for the dimerized-chain and massive-Dirac families.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .bloch import (BlochVector, GlobalReference, PiecewiseBlochReference,
                    ReferenceState, plateau_reference)
from .errors import DomainError, GapClosedError, PartitionError
from .models import (GAP_EPS, DVector, MassiveDiracParams, SSHParams,
                     TwoBandModel, ssh_model)
from .quadrature import BZQuadratureConfig, bz_average, with_offset_on
from .special_functions import complete_E, complete_K

PI = math.pi


def complexity_per_mode(n_ref, n_target) -> float:
    """C_k = (1 - n_ref . n_target) / 2 for two unit Bloch vectors.

    Lies in [0, 1]; zero iff the vectors coincide, one iff they are antipodal.
    """
    a = n_ref.as_array() if isinstance(n_ref, BlochVector) else np.asarray(n_ref, dtype=float)
    b = n_target.as_array() if isinstance(n_target, BlochVector) else np.asarray(n_target, dtype=float)
    c = 0.5 * (1.0 - float(a @ b))
    return min(max(c, 0.0), 1.0)


def ground_state_bloch(d) -> BlochVector:
    """Bloch vector of the lower band, -d/|d|; undefined at a gap closing."""
    v = d.as_array() if isinstance(d, DVector) else np.asarray(d, dtype=float)
    n = float(np.linalg.norm(v))
    if n < GAP_EPS:
        raise GapClosedError("ground-state Bloch vector undefined: |d| = 0")
    return BlochVector(-v[0] / n, -v[1] / n, -v[2] / n)


def _ground_integrand(model: TwoBandModel, ref: ReferenceState):
    fixed = ref.bloch_at(0.0) if ref.is_global else None

    def ck(k):
        d = model.d(k)
        n = math.sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2])
        if n < GAP_EPS:
            raise GapClosedError(f"gap closed at k={k}")
        nref = fixed if fixed is not None else ref.bloch_at(k)
        return 0.5 * (1.0 + (nref[0] * d[0] + nref[1] * d[1] + nref[2] * d[2]) / n)

    return with_offset_on(ck, GapClosedError)


def ground_complexity(model: TwoBandModel, ref: ReferenceState,
                      cfg: BZQuadratureConfig | None = None) -> float:
    """BZ-averaged ground-state spread complexity for an arbitrary reference."""
    extra = tuple(model.singular_points) + tuple(ref.breakpoints())
    return bz_average(_ground_integrand(model, ref), cfg, extra_points=extra)


# Below this value of 1 - m the elliptic terms of the closed form are replaced
# by their m -> 1 asymptotics (the K term carries a vanishing prefactor).
_M_COMPLEMENT_FLOOR = 1e-15


def _ssh_elliptic_terms(t1: float, t2: float) -> float:
    """(delta*K(m) + s*E(m)) / (pi*t1) with the t1 = t2 limit handled."""
    s = t1 + t2
    delta = t1 - t2
    mc = (delta / s) ** 2
    if mc < _M_COMPLEMENT_FLOOR:
        k_term = 0.0 if delta == 0.0 else delta * math.log(4.0 * s / abs(delta))
        return (k_term + s) / (PI * t1)
    m = 1.0 - mc
    return (delta * complete_K(m) + s * complete_E(m)) / (PI * t1)


def _require_global(ref: ReferenceState) -> GlobalReference:
    if not isinstance(ref, GlobalReference):
        raise DomainError("this operation requires a momentum-independent reference state")
    return ref


def ssh_complexity_closed(params: SSHParams, ref: GlobalReference) -> float:
    """Closed-form SSH ground-state complexity.

    C = 1/2 + Re(alpha* beta) * (delta K(m) + s E(m)) / (pi t1) with
    s = t1 + t2, delta = t1 - t2, m = 4 t1 t2 / s^2.  At t1 = t2 the
    divergent K is tamed by the vanishing delta prefactor.
    """
    ref = _require_global(ref)
    return 0.5 + ref.re_alpha_beta * _ssh_elliptic_terms(params.t1, params.t2)


def ssh_dC_dt2_asymptotic(params: SSHParams, ref: GlobalReference) -> float:
    """Leading-log estimate of dC/dt2 near the gap closing.

    Differentiates the small-delta expansion
    I1 ~ s/(pi t1) + (delta/(pi t1)) ln(4 s / |delta|), valid for
    |delta|/s < 0.1; the derivative magnitude grows like ln(1/|delta|).
    """
    ref = _require_global(ref)
    s = params.t1 + params.t2
    delta = params.t1 - params.t2
    if delta == 0.0:
        raise DomainError("asymptotic derivative undefined at t1 = t2")
    if abs(delta) / s >= 0.1:
        raise DomainError("outside the asymptotic window |t1 - t2|/(t1 + t2) < 0.1")
    return ref.re_alpha_beta * (2.0 + delta / s - math.log(4.0 * s / abs(delta))) / (PI * params.t1)


def md_complexity_closed(params: MassiveDiracParams, theta: float) -> float:
    """Closed-form massive-Dirac complexity 1/2 + mu cos(theta) K(1/(1+mu^2)) / (pi sqrt(1+mu^2))."""
    mu = params.mu
    if mu == 0.0:
        return 0.5
    lam = 1.0 / (1.0 + mu * mu)
    if 1.0 - lam < _M_COMPLEMENT_FLOOR:
        k_val = math.log(4.0 / abs(mu))
    else:
        k_val = complete_K(lam)
    return 0.5 + mu * math.cos(theta) / (PI * math.sqrt(1.0 + mu * mu)) * k_val


def md_dC_dmu_analytic(params: MassiveDiracParams, theta: float) -> float:
    """Analytic derivative (cos(theta)/(pi sqrt(1+mu^2))) [K(lam) - E(lam)], lam = 1/(1+mu^2).

    Diverges like (cos(theta)/pi) ln(4/|mu|) as mu -> 0; mu = 0 is rejected.
    """
    mu = params.mu
    if mu == 0.0:
        raise DomainError("derivative diverges at mu = 0")
    lam = 1.0 / (1.0 + mu * mu)
    return math.cos(theta) / (PI * math.sqrt(1.0 + mu * mu)) * (complete_K(lam) - complete_E(lam))


def plateau_complexity(params: SSHParams, cfg: BZQuadratureConfig | None = None) -> float:
    """SSH complexity for the antipodal z-axis reference, by quadrature.

    The per-mode value 1/2 - t2 sin|k| / (2 |d(k)|) averages to
    1/2 - t2/(pi t1) in the trivial phase and plateaus at 1/2 - 1/pi in the
    topological phase.  The per-mode formula is authoritative here; see the
    normalization notes in the README.
    """
    return ground_complexity(ssh_model(params), plateau_reference(), cfg)


@dataclass(frozen=True)
class BandAssignment:
    """Piecewise band choice: sign +1 selects the upper band, -1 the lower.

    ``breakpoints`` must run strictly increasing from -pi to pi and delimit
    len(signs) intervals.
    """

    breakpoints: Tuple[float, ...]
    signs: Tuple[int, ...]

    def __post_init__(self):
        bp = tuple(float(b) for b in self.breakpoints)
        signs = tuple(int(s) for s in self.signs)
        if len(bp) < 2 or abs(bp[0] + PI) > 1e-12 or abs(bp[-1] - PI) > 1e-12:
            raise PartitionError("breakpoints must run from -pi to pi")
        if any(b2 <= b1 for b1, b2 in zip(bp, bp[1:])):
            raise PartitionError("breakpoints must be strictly increasing")
        if len(signs) != len(bp) - 1:
            raise PartitionError("need exactly one sign per interval")
        if any(s not in (-1, 1) for s in signs):
            raise PartitionError("band signs must be +1 or -1")
        object.__setattr__(self, "breakpoints", bp)
        object.__setattr__(self, "signs", signs)

    def sign_at(self, k: float) -> int:
        for hi, s in zip(self.breakpoints[1:], self.signs):
            if k <= hi:
                return s
        return self.signs[-1]

    @classmethod
    def two_interval(cls, k0: float, sign_left: int, sign_right: int) -> "BandAssignment":
        return cls((-PI, float(k0), PI), (sign_left, sign_right))

    @classmethod
    def ground(cls) -> "BandAssignment":
        return cls((-PI, PI), (-1,))


def excited_piecewise_complexity(params: SSHParams, bands: BandAssignment,
                                 ref: GlobalReference,
                                 cfg: BZQuadratureConfig | None = None) -> float:
    """Complexity of a piecewise band assignment of the SSH chain.

    The target Bloch vector is sign(k) * d_hat(k), so per mode
    C_k = 1/2 - (sign(k)/2) * n_ref . d_hat(k); the average is taken by
    quadrature interval by interval.
    """
    ref = _require_global(ref)
    model = ssh_model(params)
    nref = ref.bloch.as_array()

    def ck(k):
        d = model.d(k)
        n = math.sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2])
        if n < GAP_EPS:
            raise GapClosedError(f"gap closed at k={k}")
        s = bands.sign_at(k)
        return 0.5 * (1.0 - s * (nref[0] * d[0] + nref[1] * d[1] + nref[2] * d[2]) / n)

    extra = tuple(model.singular_points) + tuple(bands.breakpoints[1:-1])
    return bz_average(with_offset_on(ck, GapClosedError), cfg, extra_points=extra)


def excited_split_closed(params: SSHParams, theta: float) -> float:
    """Closed form for the k0 = 0 split with the lower band kept on k <= 0.

    Equals 1/2 + (cos(theta) / (2 pi t1)) (|t1 - t2| - (t1 + t2)); the cusp
    at t1 = t2 survives for any reference with cos(theta) != 0.
    """
    t1, t2 = params.t1, params.t2
    return 0.5 + math.cos(theta) / (2.0 * PI * t1) * (abs(t1 - t2) - (t1 + t2))
