"""Truncated number-basis brute force used to validate the Gaussian engine.

Everything here is deliberately independent of the phase-space modules:
states are amplitude arrays over number states, quadrature projections
use the oscillator wavefunctions, and inefficiency is handled by
Gauss-Hermite smearing of the ideal record.  Agreement between this
route and the Gaussian closed forms is the package's strongest
correctness evidence.

The same quadrature convention applies: x = (a + a^dag)/2, so the
ground-state wavefunction is (2/pi)^{1/4} e^{-x^2} with variance 1/4.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .gaussian import UnphysicalStateError

# Hilbert-space dimension cap: cutoff + 1 <= 128.
MAX_CUTOFF = 127


class DegenerateOutcomeError(ValueError):
    """Raised when a record value has vanishing probability density."""


@dataclass(frozen=True)
class FockVector:
    """Pure state as amplitudes over number states.

    ``amps`` is 1-D (single mode, index p) or 2-D (two modes, indices
    p, q) with each axis running 0..cutoff.
    """

    cutoff: int
    amps: np.ndarray

    def __post_init__(self):
        if not 0 <= self.cutoff <= MAX_CUTOFF:
            raise ValueError(f"cutoff must lie in [0, {MAX_CUTOFF}]")
        amps = np.array(self.amps, dtype=complex)
        if amps.ndim not in (1, 2) or any(s != self.cutoff + 1 for s in amps.shape):
            raise ValueError("amps must be 1-D or 2-D with axes of length cutoff + 1")
        amps.setflags(write=False)
        object.__setattr__(self, "amps", amps)

    @property
    def n_modes(self) -> int:
        return self.amps.ndim

    @property
    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.amps) ** 2))

    @property
    def leakage(self) -> float:
        """Probability weight lost to truncation, 1 - norm_sq."""
        return max(0.0, 1.0 - self.norm_sq)


class FockMoments(NamedTuple):
    """Quadrature moments and purity extracted from a density matrix."""

    mean_x: float
    mean_y: float
    var_x: float
    var_y: float
    cov_xy: float
    purity: float


@dataclass(frozen=True)
class QuadratureGrid:
    """Gauss-Hermite nodes in the unit variable with weights summing to 1."""

    points: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        points = np.array(self.points, dtype=float)
        weights = np.array(self.weights, dtype=float)
        if points.shape != weights.shape or points.ndim != 1 or points.size == 0:
            raise ValueError("points and weights must be matching 1-D arrays")
        points.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "weights", weights)


def gauss_hermite_grid(n_nodes: int = 40) -> QuadratureGrid:
    """Grid integrating f against a unit Gaussian: sum w_k f(mu + sqrt(2) s u_k)."""
    if n_nodes < 1:
        raise ValueError("n_nodes must be at least 1")
    nodes, weights = np.polynomial.hermite.hermgauss(int(n_nodes))
    return QuadratureGrid(points=nodes, weights=weights / math.sqrt(math.pi))


def twb_fock(lam: float, cutoff: int) -> FockVector:
    """Truncated twin beam: amplitudes sqrt(1 - lam^2) lam^p on |p, p>.

    ``lam = tanh r`` ties this to the phase-space twin beam; the exact
    truncation leakage is lam^{2 (cutoff + 1)}.
    """
    if not 0.0 <= lam < 1.0:
        raise ValueError("lam must lie in [0, 1)")
    amps = np.zeros((cutoff + 1, cutoff + 1))
    amps[np.diag_indices(cutoff + 1)] = math.sqrt(1.0 - lam * lam) * lam ** np.arange(
        cutoff + 1
    )
    return FockVector(cutoff=cutoff, amps=amps)


def quadrature_wavefunction(x, cutoff: int) -> np.ndarray:
    """Oscillator wavefunctions psi_p(x) for p = 0..cutoff.

    Stable three-term recurrence; x may be a scalar or an array, and the
    p axis is appended last.
    """
    if not 0 <= cutoff <= MAX_CUTOFF:
        raise ValueError(f"cutoff must lie in [0, {MAX_CUTOFF}]")
    x = np.asarray(x, dtype=float)
    out = np.zeros(x.shape + (cutoff + 1,))
    out[..., 0] = (2.0 / math.pi) ** 0.25 * np.exp(-x * x)
    if cutoff >= 1:
        out[..., 1] = 2.0 * x * out[..., 0]
    for p in range(1, cutoff):
        out[..., p + 1] = (
            2.0 * x * out[..., p] - math.sqrt(p) * out[..., p - 1]
        ) / math.sqrt(p + 1.0)
    return out


def condition_fock(
    state: FockVector, x: float, eta: float = 1.0, grid: QuadratureGrid | None = None
):
    """Project one arm of a two-mode state on a quadrature record.

    Measures the first index at record value ``x`` with efficiency
    ``eta``; an imperfect record is the ideal one smeared by Gaussian
    noise of variance (1 - eta)/(4 eta), integrated on the grid.

    Returns:
        (density, rho): the record's probability density and the
        normalized reduced density matrix of the unmeasured mode.
    """
    if state.n_modes != 2:
        raise ValueError("conditioning requires a two-mode state")
    if not 0.0 < eta <= 1.0:
        raise ValueError("eta must lie in (0, 1]")
    if eta == 1.0:
        v = quadrature_wavefunction(float(x), state.cutoff) @ state.amps
        density = float(np.real(np.vdot(v, v)))
        if density < 1e-300:
            raise DegenerateOutcomeError(f"record x={x} has vanishing density")
        rho = np.outer(v, v.conj()) / density
        return density, rho
    if grid is None:
        grid = gauss_hermite_grid()
    sigma = math.sqrt((1.0 - eta) / (4.0 * eta))
    nodes = float(x) + math.sqrt(2.0) * sigma * grid.points
    proj = quadrature_wavefunction(nodes, state.cutoff) @ state.amps
    rho = (proj.T * grid.weights) @ proj.conj()
    density = float(np.real(np.trace(rho)))
    if density < 1e-300:
        raise DegenerateOutcomeError(f"record x={x} has vanishing density")
    rho = rho / density
    return density, 0.5 * (rho + rho.conj().T)


def _ladder(dim: int) -> np.ndarray:
    a = np.zeros((dim, dim))
    a[np.arange(dim - 1), np.arange(1, dim)] = np.sqrt(np.arange(1, dim))
    return a


def moments_fock(rho: np.ndarray) -> FockMoments:
    """Quadrature means, (co)variances and purity of a density matrix.

    Accuracy is limited by the truncation of the matrix itself; inputs
    must be Hermitian with unit trace to 1e-8.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise UnphysicalStateError("rho must be a square matrix")
    if np.max(np.abs(rho - rho.conj().T)) > 1e-8:
        raise UnphysicalStateError("rho must be Hermitian")
    if abs(np.trace(rho).real - 1.0) > 1e-8:
        raise UnphysicalStateError("rho must have unit trace")
    a = _ladder(rho.shape[0])
    xq = 0.5 * (a + a.T)
    yq = 0.5j * (a.T - a)
    mean_x = float(np.real(np.trace(rho @ xq)))
    mean_y = float(np.real(np.trace(rho @ yq)))
    var_x = float(np.real(np.trace(rho @ xq @ xq))) - mean_x**2
    var_y = float(np.real(np.trace(rho @ yq @ yq))) - mean_y**2
    sym = 0.5 * (xq @ yq + yq @ xq)
    cov_xy = float(np.real(np.trace(rho @ sym))) - mean_x * mean_y
    purity = float(np.real(np.sum(rho * rho.conj().T)))
    return FockMoments(mean_x, mean_y, var_x, var_y, cov_xy, purity)
