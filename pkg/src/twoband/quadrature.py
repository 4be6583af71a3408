"""Brillouin-zone averaging and numerical differentiation.

The integrands met here are smooth except for integrable features at gap
closings (all located at k in {0, +-pi} for the stock models), so the
integrator pre-splits at known singular points and subdivides adaptively.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence, Tuple

import numpy as np
from scipy.integrate import quad, quad_vec

from .errors import ConvergenceError, DomainError

PI = math.pi

# Offset used to evaluate an integrand one-sidedly when it is undefined at an
# isolated point (exact gap closing / exceptional point on the grid).
SINGULAR_OFFSET = 1e-10


@dataclass(frozen=True)
class BZQuadratureConfig:
    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    max_subdivisions: int = 2000
    singular_points: Tuple[float, ...] = (0.0, -PI, PI)

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise DomainError("quadrature tolerances must be positive")
        for p in self.singular_points:
            if not -PI <= p <= PI:
                raise DomainError(f"singular point {p} outside [-pi, pi]")


@dataclass(frozen=True)
class FDConfig:
    step: float = 1e-5
    scheme: str = "central4"

    def __post_init__(self):
        if not self.step > 0:
            raise DomainError("finite-difference step must be positive")
        if self.scheme not in ("central2", "central4"):
            raise DomainError(f"unknown finite-difference scheme {self.scheme!r}")


def _interior_points(cfg: BZQuadratureConfig, extra: Iterable[float] = ()) -> list:
    pts = sorted({float(p) for p in (*cfg.singular_points, *extra)
                  if -PI < p < PI})
    return pts


def with_offset_on(f: Callable[[float], float], exceptions,
                   offset: float = SINGULAR_OFFSET) -> Callable[[float], float]:
    """Wrap an integrand so isolated undefined points are evaluated one-sidedly.

    The offset limit is legitimate only for bounded integrands with
    measure-zero discontinuities (per-mode complexity is such a case).
    """

    def safe(k):
        try:
            return f(k)
        except exceptions:
            return f(k + offset if k < 0.5 * (PI - offset) else k - offset)

    return safe


def bz_average(f: Callable[[float], float], cfg: BZQuadratureConfig | None = None,
               extra_points: Iterable[float] = ()) -> float:
    """(1/2*pi) * integral of f over [-pi, pi] by adaptive subdivision."""
    cfg = cfg or BZQuadratureConfig()
    pts = _interior_points(cfg, extra_points)
    val, err, *rest = quad(f, -PI, PI, points=pts or None,
                           limit=cfg.max_subdivisions,
                           epsabs=cfg.abs_tol * 2.0 * PI,
                           epsrel=cfg.rel_tol, full_output=1)
    if len(rest) > 1:  # quad appends a message when ier != 0
        budget = max(cfg.abs_tol * 2.0 * PI, cfg.rel_tol * abs(val)) * 10.0
        if err > budget or not math.isfinite(val):
            raise ConvergenceError(
                f"BZ average did not converge: {rest[1]}",
                estimate=val / (2.0 * PI), error=err / (2.0 * PI))
    return val / (2.0 * PI)


def bz_average_vec(f: Callable[[float], np.ndarray], cfg: BZQuadratureConfig | None = None,
                   extra_points: Iterable[float] = ()) -> np.ndarray:
    """Vector-valued BZ average; all components share one subdivision tree."""
    cfg = cfg or BZQuadratureConfig()
    pts = _interior_points(cfg, extra_points)
    val, err = quad_vec(f, -PI, PI, points=pts or None,
                        limit=cfg.max_subdivisions,
                        epsabs=cfg.abs_tol * 2.0 * PI,
                        epsrel=cfg.rel_tol)
    val = np.asarray(val, dtype=float) / (2.0 * PI)
    err = err / (2.0 * PI)
    budget = max(cfg.abs_tol, cfg.rel_tol * float(np.max(np.abs(val)))) * 10.0
    if not np.all(np.isfinite(val)) or err > budget:
        raise ConvergenceError("vector BZ average did not converge",
                               estimate=val, error=err)
    return val


def param_derivative(g: Callable[[float], float], at: float,
                     cfg: FDConfig | None = None) -> float:
    """Central finite-difference derivative of g at the given point.

    Differences are grouped before weighting so a constant g yields exactly
    zero rather than stencil roundoff.
    """
    cfg = cfg or FDConfig()
    h = cfg.step
    if cfg.scheme == "central2":
        return (g(at + h) - g(at - h)) / (2.0 * h)
    inner = g(at + h) - g(at - h)
    outer = g(at + 2.0 * h) - g(at - 2.0 * h)
    return (8.0 * inner - outer) / (12.0 * h)


def second_differences(values: Sequence[float]) -> np.ndarray:
    """Discrete second differences v[i-1] - 2 v[i] + v[i+1] of a sweep."""
    v = np.asarray(values, dtype=float)
    return v[:-2] - 2.0 * v[1:-1] + v[2:]
