"""The model zoo: analytic d(k, lambda) vectors and their parameter derivatives.

All Hermitian models are stored in the rotated basis (d_y = 0) obtained from
the sigma relabeling (x, y, z) -> (x, z, -y); the rotation is applied once at
construction time and recorded on the model so topology diagnostics can undo
it.  The massive-Dirac family is native to the final basis and carries no
rotation tag.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Optional, Tuple

import numpy as np

from .bloch import BlochVector
from .errors import DomainError, GapClosedError

PI = math.pi

# |d| below this is treated as an exact gap closing.
GAP_EPS = 1e-13


@dataclass(frozen=True)
class DVector:
    """A d-vector sample, optionally remembering the momentum it came from."""

    dx: float
    dy: float
    dz: float
    k: Optional[float] = None

    def as_array(self) -> np.ndarray:
        return np.array([self.dx, self.dy, self.dz])

    def magnitude(self) -> float:
        return math.sqrt(self.dx ** 2 + self.dy ** 2 + self.dz ** 2)

    def normalized(self) -> BlochVector:
        if self.magnitude() < GAP_EPS:
            raise GapClosedError(f"|d| vanishes at k={self.k!r}")
        return BlochVector(self.dx, self.dy, self.dz)


@dataclass(frozen=True)
class TwoBandModel:
    """A one-parameter family k -> d(k, lambda) of two-band Bloch Hamiltonians.

    ``family`` maps (k, lam) to the three d components and broadcasts over
    numpy arrays of k.  ``family_deriv`` is the analytic d(d)/d(lambda) when
    available; otherwise derivatives fall back to central finite differences.
    Models are immutable; ``at`` rebinds the swept parameter.
    """

    family: Callable[[np.ndarray, float], np.ndarray]
    lam: float
    family_deriv: Optional[Callable[[np.ndarray, float], np.ndarray]] = None
    sweep_parameter: str = "lambda"
    rotated: bool = False
    singular_points: Tuple[float, ...] = (0.0,)
    label: str = ""
    fd_step: float = 1e-6

    def d(self, k):
        """d(k) at the bound parameter value; shape (3,) + shape(k)."""
        return np.asarray(self.family(k, self.lam), dtype=float)

    def d_deriv(self, k):
        """Parameter derivative of d at the bound value (analytic or central FD)."""
        if self.family_deriv is not None:
            return np.asarray(self.family_deriv(k, self.lam), dtype=float)
        h = self.fd_step
        hi = np.asarray(self.family(k, self.lam + h), dtype=float)
        lo = np.asarray(self.family(k, self.lam - h), dtype=float)
        return (hi - lo) / (2.0 * h)

    def dvector(self, k: float) -> DVector:
        dx, dy, dz = self.d(float(k))
        return DVector(float(dx), float(dy), float(dz), k=float(k))

    def at(self, lam: float) -> "TwoBandModel":
        return replace(self, lam=float(lam))

    def validate(self, grid_points: int = 64) -> None:
        """Check 2*pi periodicity and (when analytic) the parameter derivative."""
        ks = np.linspace(-PI, PI, grid_points, endpoint=False)
        if np.max(np.abs(self.d(ks) - self.d(ks + 2.0 * PI))) > 1e-12:
            raise DomainError(f"model {self.label!r} is not 2*pi-periodic in k")
        if self.family_deriv is not None:
            h = 1e-6
            fd = (np.asarray(self.family(ks, self.lam + h), dtype=float)
                  - np.asarray(self.family(ks, self.lam - h), dtype=float)) / (2.0 * h)
            if np.max(np.abs(fd - self.d_deriv(ks))) > 1e-7:
                raise DomainError(f"analytic derivative of {self.label!r} disagrees with FD")


@dataclass(frozen=True)
class SSHParams:
    """Hopping amplitudes of the dimerized chain; both must be positive."""

    t1: float
    t2: float

    def __post_init__(self):
        if not (self.t1 > 0 and self.t2 > 0):
            raise DomainError("SSH hoppings must satisfy t1 > 0 and t2 > 0")


@dataclass(frozen=True)
class DualSSHParams:
    """Fixed intracell coupling t and dimensionless ratio r of the dual pair."""

    t: float = 1.0
    r: float = 1.0

    def __post_init__(self):
        if not (self.t > 0):
            raise DomainError("coupling t must be positive")
        if not (self.r > 0):
            raise DomainError("ratio r must be positive")


@dataclass(frozen=True)
class MassiveDiracParams:
    t: float = 1.0
    mu: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.t) and math.isfinite(self.mu)):
            raise DomainError("massive-Dirac parameters must be finite")


@dataclass(frozen=True)
class CooperPairBoxParams:
    """Josephson energy, charging energy 2e^2/C, gate charge and flux ratio."""

    Ej: float
    Ecc: float
    ng: float = 0.0
    Phi_over_Phi0: float = 0.0

    def __post_init__(self):
        if not (self.Ej > 0 and self.Ecc > 0):
            raise DomainError("Cooper-pair-box energies Ej and Ecc must be positive")


@dataclass(frozen=True)
class NonHermitianSSHParams:
    t1: float
    t2: float
    gamma: float = 0.0

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.t1, self.t2, self.gamma)):
            raise DomainError("non-Hermitian SSH parameters must be finite")

    def gap_closing_couplings(self) -> Tuple[float, float]:
        """The two PBC gap-closing values of t2 at fixed t1 and gamma."""
        return (self.t1 - 0.5 * abs(self.gamma), self.t1 + 0.5 * abs(self.gamma))


def ssh_model(params: SSHParams) -> TwoBandModel:
    """d(k) = (t1 - t2 cos k, 0, t2 sin k), swept in t2."""
    t1 = params.t1

    def family(k, t2):
        k = np.asarray(k, dtype=float)
        return np.stack([t1 - t2 * np.cos(k), np.zeros_like(k), t2 * np.sin(k)])

    def deriv(k, t2):
        k = np.asarray(k, dtype=float)
        return np.stack([-np.cos(k), np.zeros_like(k), np.sin(k)])

    return TwoBandModel(family, params.t2, deriv, sweep_parameter="t2",
                        rotated=True, singular_points=(0.0,), label="ssh")


def massive_dirac_model(params: MassiveDiracParams) -> TwoBandModel:
    """d(k) = (t sin k, 0, mu), swept in mu."""
    t = params.t

    def family(k, mu):
        k = np.asarray(k, dtype=float)
        return np.stack([t * np.sin(k), np.zeros_like(k), np.full_like(k, mu)])

    def deriv(k, mu):
        k = np.asarray(k, dtype=float)
        z = np.zeros_like(k)
        return np.stack([z, z, np.ones_like(k)])

    return TwoBandModel(family, params.mu, deriv, sweep_parameter="mu",
                        rotated=False, singular_points=(0.0, -PI, PI), label="massive-dirac")


def dual_pair(params: DualSSHParams) -> Tuple[TwoBandModel, TwoBandModel]:
    """The two dual families: couplings (t, r*t) and (t, t/r), each swept in r.

    Both are ordinary SSH chains; family II carries 1/r where family I carries
    r, so the two coincide componentwise at the self-dual point r = 1.
    """
    t = params.t

    def family_i(k, r):
        k = np.asarray(k, dtype=float)
        return np.stack([t * (1.0 - r * np.cos(k)), np.zeros_like(k), t * r * np.sin(k)])

    def deriv_i(k, r):
        k = np.asarray(k, dtype=float)
        return np.stack([-t * np.cos(k), np.zeros_like(k), t * np.sin(k)])

    def family_ii(k, r):
        k = np.asarray(k, dtype=float)
        return np.stack([t * (1.0 - np.cos(k) / r), np.zeros_like(k), t * np.sin(k) / r])

    def deriv_ii(k, r):
        k = np.asarray(k, dtype=float)
        return np.stack([t * np.cos(k) / r ** 2, np.zeros_like(k), -t * np.sin(k) / r ** 2])

    model_i = TwoBandModel(family_i, params.r, deriv_i, sweep_parameter="r",
                           rotated=True, singular_points=(0.0,), label="dual-ssh-I")
    model_ii = TwoBandModel(family_ii, params.r, deriv_ii, sweep_parameter="r",
                            rotated=True, singular_points=(0.0,), label="dual-ssh-II")
    return model_i, model_ii


def cooper_pair_box_model(params: CooperPairBoxParams) -> TwoBandModel:
    """Massive-Dirac-form model in the flux angle k = pi * Phi/Phi0, swept in ng.

    d(k) = (-Ej cos k, 0, Ecc (1 - 2 ng) / 2); the flux ratio spans [-1, 1]
    with period 2, and the gap closes at ng = 1/2, Phi = Phi0/2.
    """
    Ej, Ecc = params.Ej, params.Ecc

    def family(k, ng):
        k = np.asarray(k, dtype=float)
        return np.stack([-Ej * np.cos(k), np.zeros_like(k),
                         np.full_like(k, 0.5 * Ecc * (1.0 - 2.0 * ng))])

    def deriv(k, ng):
        k = np.asarray(k, dtype=float)
        z = np.zeros_like(k)
        return np.stack([z, z, np.full_like(k, -Ecc)])

    return TwoBandModel(family, params.ng, deriv, sweep_parameter="ng",
                        rotated=False, singular_points=(-0.5 * PI, 0.5 * PI),
                        label="cooper-pair-box")


def flux_angle(params: CooperPairBoxParams) -> float:
    """Momentum-like angle corresponding to the stored flux ratio."""
    return PI * params.Phi_over_Phi0


def nh_ssh_bloch_hamiltonian(params: NonHermitianSSHParams, k: float) -> np.ndarray:
    """Complex-symmetric Bloch matrix [[R3, R1], [R1, -R3]] of the lossy chain.

    R1 = t1 - t2 cos k and R3 = t2 sin k + i*gamma/2; the eigenvalues are
    +-R with R^2 = R1^2 + R3^2, vanishing at the exceptional points.
    """
    r1 = params.t1 - params.t2 * math.cos(k)
    r3 = params.t2 * math.sin(k) + 0.5j * params.gamma
    return np.array([[r3, r1], [r1, -r3]], dtype=complex)
