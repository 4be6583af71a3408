"""Biorthogonal spread complexity for the lossy dimerized chain under PBC.

Left and right eigenvectors of the complex-symmetric Bloch matrix are paired
by biorthogonal normalization; the two-vector Krylov chains built from a
reference amplitude pair give per-mode weights w_0, w_1 and the prescription
C_k = |w_1| / (|w_0| + |w_1|).  Cusp detection locates the non-analyticities
of the swept average at the PBC gap-closing couplings.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from .errors import (ExceptionalPointError, InsufficientDataError,
                     NormalizationError)
from .models import NonHermitianSSHParams, nh_ssh_bloch_hamiltonian
from .quadrature import BZQuadratureConfig, bz_average, with_offset_on

PI = math.pi

# |R^2| below this is treated as an exceptional point.
_EP_EPS = 1e-20


@dataclass(frozen=True)
class BiorthogonalPair:
    """Right column / left row ground eigenvectors with <L|R> = 1."""

    right: np.ndarray
    left: np.ndarray
    eigenvalue: complex

    def pairing(self) -> complex:
        return complex(self.left @ self.right)


@dataclass(frozen=True)
class BiKrylovBasis:
    """Two-step left/right Krylov chains satisfying <K_i^L|K_j^R> = delta_ij."""

    right0: np.ndarray
    right1: np.ndarray
    left0: np.ndarray
    left1: np.ndarray


def _branch_R(r1: complex, r3: complex) -> complex:
    # Principal square root: Re(R) >= 0, and Im(R) >= 0 on the Re(R) = 0 ray,
    # which implements the ground-branch rule Re(-R) < 0 with the
    # Im(-R) < 0 tie-break.
    return cmath.sqrt(r1 * r1 + r3 * r3)


def biorthogonal_ground(h: np.ndarray) -> BiorthogonalPair:
    """Ground biorthogonal pair of a complex-symmetric traceless 2x2 matrix.

    The eigenvalue branch -R with Re(-R) < 0 is selected; the shared complex
    normalization 1/sqrt(R1^2 + (R + R3)^2) cancels in any left-right product.
    """
    h = np.asarray(h, dtype=complex)
    r1 = complex(h[0, 1])
    r3 = complex(h[0, 0])
    rsq = r1 * r1 + r3 * r3
    if abs(rsq) < _EP_EPS:
        raise ExceptionalPointError("R^2 = 0: eigenvectors coalesce")
    R = _branch_R(r1, r3)
    norm_sq = r1 * r1 + (R + r3) ** 2
    if abs(norm_sq) < _EP_EPS:
        raise ExceptionalPointError("self-orthogonal ground state")
    norm = cmath.sqrt(norm_sq)
    right = np.array([r1, -(r3 + R)], dtype=complex) / norm
    left = np.array([r1, -(r3 + R)], dtype=complex) / norm
    return BiorthogonalPair(right=right, left=left, eigenvalue=-R)


def bikrylov_basis(alpha: complex, beta: complex) -> BiKrylovBasis:
    """Krylov chains seeded by the amplitude pair (alpha, beta).

    Requires |alpha|^2 + |beta|^2 = 1.  The companions (beta*, -alpha*) and
    (beta, -alpha) make all four biorthonormality relations exact.
    """
    alpha = complex(alpha)
    beta = complex(beta)
    if abs(abs(alpha) ** 2 + abs(beta) ** 2 - 1.0) > 1e-10:
        raise NormalizationError("amplitudes must satisfy |alpha|^2 + |beta|^2 = 1")
    return BiKrylovBasis(
        right0=np.array([alpha, beta], dtype=complex),
        right1=np.array([beta.conjugate(), -alpha.conjugate()], dtype=complex),
        left0=np.array([alpha.conjugate(), beta.conjugate()], dtype=complex),
        left1=np.array([beta, -alpha], dtype=complex),
    )


def _normalized_pair(alpha: complex, beta: complex) -> Tuple[complex, complex]:
    n = math.sqrt(abs(alpha) ** 2 + abs(beta) ** 2)
    if n < 1e-12:
        raise NormalizationError("reference amplitudes cannot both vanish")
    return alpha / n, beta / n


def nh_complexity_per_mode(params: NonHermitianSSHParams, k: float,
                           alpha: complex, beta: complex) -> float:
    """Per-mode biorthogonal complexity C_k = |w_1| / (|w_0| + |w_1|).

    Uses the explicit weight formulas in terms of R1, R3 and R; the overall
    amplitude scale of (alpha, beta) cancels and is normalized away.
    """
    alpha, beta = _normalized_pair(alpha, beta)
    r1 = params.t1 - params.t2 * math.cos(k)
    r3 = complex(params.t2 * math.sin(k), 0.5 * params.gamma)
    rsq = r1 * r1 + r3 * r3
    if abs(rsq) < _EP_EPS:
        raise ExceptionalPointError(f"exceptional point at k={k}")
    R = _branch_R(r1, r3)
    u = R + r3
    denom = r1 * r1 + u * u
    if abs(denom) < _EP_EPS:
        raise ExceptionalPointError(f"self-orthogonal ground state at k={k}")
    w0 = (alpha * r1 - beta * u) * (alpha.conjugate() * r1 - beta.conjugate() * u) / denom
    w1 = (alpha * u + beta * r1) * (alpha.conjugate() * u + beta.conjugate() * r1) / denom
    return abs(w1) / (abs(w0) + abs(w1))


def nh_complexity_per_mode_overlap(params: NonHermitianSSHParams, k: float,
                                   alpha: complex, beta: complex) -> float:
    """Oracle path for C_k built from explicit eigenvectors and Krylov chains.

    w_i = <K_i^L|psi_g^R><psi_g^L|K_i^R>; must agree with the closed-form
    weights to full precision.
    """
    alpha, beta = _normalized_pair(alpha, beta)
    pair = biorthogonal_ground(nh_ssh_bloch_hamiltonian(params, k))
    basis = bikrylov_basis(alpha, beta)
    w0 = complex(basis.left0 @ pair.right) * complex(pair.left @ basis.right0)
    w1 = complex(basis.left1 @ pair.right) * complex(pair.left @ basis.right1)
    return abs(w1) / (abs(w0) + abs(w1))


def nh_ground_complexity(params: NonHermitianSSHParams, alpha: complex, beta: complex,
                         cfg: BZQuadratureConfig | None = None) -> float:
    """BZ average of the biorthogonal per-mode complexity.

    Exceptional points met mid-quadrature are integrated around by a
    one-sided offset, mirroring the Hermitian gap-closing treatment.
    """
    alpha, beta = _normalized_pair(alpha, beta)

    def ck(k):
        return nh_complexity_per_mode(params, k, alpha, beta)

    return bz_average(with_offset_on(ck, ExceptionalPointError), cfg,
                      extra_points=(0.0,))


def _sweep_arrays(sweep) -> Tuple[np.ndarray, np.ndarray]:
    lams: List[float] = []
    values: List[float] = []
    for row in sweep:
        if hasattr(row, "lam"):
            lams.append(float(row.lam))
            values.append(float(row.values.get("complexity")))
        else:
            lam, val = row
            lams.append(float(lam))
            values.append(float(val))
    return np.asarray(lams), np.asarray(values)


def detect_cusps(sweep: Sequence) -> List[float]:
    """Locate curvature spikes of a swept scalar, e.g. dC/d(lambda) cusps.

    Accepts (lambda, value) pairs or sweep records carrying a complexity
    column, sorted by lambda with at least 20 points.  A point is a cusp
    candidate when its second difference exceeds five times the sweep's
    median absolute second difference (plus a small absolute floor so exact
    lines stay empty); adjacent candidates collapse to the strongest one.
    """
    lams, values = _sweep_arrays(sweep)
    if lams.size < 20:
        raise InsufficientDataError("cusp detection needs at least 20 sweep points")
    if np.any(np.diff(lams) <= 0):
        raise InsufficientDataError("sweep must be sorted by the swept parameter")
    d2 = np.abs(values[:-2] - 2.0 * values[1:-1] + values[2:])
    floor = 1e-12 + 1e-9 * float(np.max(np.abs(values)))
    threshold = max(5.0 * float(np.median(d2)), floor)
    hits = np.flatnonzero(d2 > threshold) + 1  # +1: d2[i] sits at lams[i+1]
    # A grid point landing exactly on a cusp has a cancelling second
    # difference, leaving two flanking hits; merge hits within two steps.
    cusps: List[float] = []
    group: List[int] = []
    for idx in hits:
        if group and idx > group[-1] + 2:
            best = max(group, key=lambda i: d2[i - 1])
            cusps.append(float(lams[best]))
            group = []
        group.append(int(idx))
    if group:
        best = max(group, key=lambda i: d2[i - 1])
        cusps.append(float(lams[best]))
    return cusps
