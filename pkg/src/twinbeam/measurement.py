"""Homodyne and double-homodyne measurements on Gaussian states.

Conditioning is computed with exact Gaussian identities (Schur
complements), never by discretizing a measurement kernel; the POVM
constructors exist so the measurement elements themselves can be
inspected or integrated against.

Detector efficiency ``eta`` follows the equivalent-noise picture: an
inefficient homodyne of a quadrature behaves like a perfect one whose
record picks up independent Gaussian noise of variance
(1 - eta) / (4 eta).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .gaussian import (
    GaussianOperator,
    _rotation_matrix,
    displace,
    require_physical,
    transpose_wigner,
)


def _generator(seed: int) -> np.random.Generator:
    # Philox is counter-based: reproducible and cheap to fork by seed.
    return np.random.Generator(np.random.Philox(int(seed)))


@dataclass(frozen=True)
class HomodyneSetting:
    """Which quadrature is measured, and how well.

    Attributes:
        mode: index of the measured mode.
        phase: quadrature angle; 0 measures x, pi/2 measures y.
        efficiency: detector efficiency eta in (0, 1].
    """

    mode: int = 0
    phase: float = 0.0
    efficiency: float = 1.0

    def __post_init__(self):
        if self.mode < 0:
            raise ValueError("mode must be nonnegative")
        if not 0.0 < self.efficiency <= 1.0:
            raise ValueError("efficiency must lie in (0, 1]")
        object.__setattr__(self, "phase", float(self.phase) % (2.0 * math.pi))

    @property
    def noise_variance(self) -> float:
        """Equivalent Gaussian record noise (1 - eta) / (4 eta)."""
        return (1.0 - self.efficiency) / (4.0 * self.efficiency)


@dataclass(frozen=True)
class DoubleHomodyneSetting:
    """Joint x/y measurement against a single-mode reference state."""

    reference: GaussianOperator
    efficiency: float = 1.0

    def __post_init__(self):
        if self.reference.n_modes != 1:
            raise ValueError("reference must be a single-mode state")
        require_physical(self.reference, "reference")
        if not 0.0 < self.efficiency <= 1.0:
            raise ValueError("efficiency must lie in (0, 1]")

    @property
    def delta_sq(self) -> float:
        """Total excess noise (1 - eta) / eta of the split detection."""
        return (1.0 - self.efficiency) / self.efficiency


@dataclass(frozen=True)
class ConditionalOutcome:
    """Result of conditioning: outcome density and the remaining state."""

    probability_density: float
    state: GaussianOperator


@dataclass(frozen=True)
class QuadratureDensity:
    """Gaussian outcome distribution of a homodyne record."""

    mean: float
    variance: float

    def __call__(self, x) -> float:
        x = np.asarray(x, dtype=float)
        val = np.exp(-0.5 * (x - self.mean) ** 2 / self.variance) / math.sqrt(
            2.0 * math.pi * self.variance
        )
        return float(val) if val.ndim == 0 else val


def _direction(setting: HomodyneSetting, n_modes: int) -> np.ndarray:
    if setting.mode >= n_modes:
        raise ValueError(f"mode {setting.mode} out of range for {n_modes} modes")
    c = np.zeros(2 * n_modes)
    c[2 * setting.mode] = math.cos(setting.phase)
    c[2 * setting.mode + 1] = math.sin(setting.phase)
    return c


def homodyne_povm_wigner(
    setting: HomodyneSetting, outcome: float, flat_variance: float = 1e6
) -> GaussianOperator:
    """Gaussian surrogate for the POVM element of an outcome ``x``.

    The exact element is flat along the conjugate quadrature; here that
    direction carries the large ``flat_variance`` instead, with the weight
    chosen so operator overlaps against it converge to the homodyne
    density as flat_variance grows.  Requires efficiency < 1; the
    noiseless element is a line delta with no Gaussian representation.
    """
    if setting.efficiency >= 1.0:
        raise ValueError("the ideal POVM element is singular; requires efficiency < 1")
    if flat_variance <= 0:
        raise ValueError("flat_variance must be positive")
    rot = _rotation_matrix(setting.phase)
    cov = rot @ np.diag([setting.noise_variance, flat_variance]) @ rot.T
    mean = float(outcome) * rot[:, 0]
    weight = math.sqrt(2.0 * math.pi * flat_variance) / math.pi
    return GaussianOperator(mean=mean, cov=cov, weight=weight)


def homodyne_density(state: GaussianOperator, setting: HomodyneSetting) -> QuadratureDensity:
    """Outcome distribution of the homodyne record, noise included."""
    require_physical(state)
    c = _direction(setting, state.n_modes)
    return QuadratureDensity(
        mean=float(c @ state.mean),
        variance=float(c @ state.cov @ c) + setting.noise_variance,
    )


def condition_homodyne(
    state: GaussianOperator, setting: HomodyneSetting, outcome: float
) -> ConditionalOutcome:
    """Condition a multimode state on one homodyne record value.

    Returns the outcome density together with the normalized Gaussian
    state of the unmeasured modes.  The measured mode is traced out.
    """
    require_physical(state)
    n = state.n_modes
    if n < 2:
        raise ValueError("conditioning requires at least two modes")
    c = _direction(setting, n)
    record_var = float(c @ state.cov @ c) + setting.noise_variance
    shift = float(outcome) - float(c @ state.mean)
    density = (
        state.weight
        * math.exp(-0.5 * shift**2 / record_var)
        / math.sqrt(2.0 * math.pi * record_var)
    )
    gain = state.cov @ c / record_var
    mean = state.mean + gain * shift
    cov = state.cov - np.outer(gain, state.cov @ c)
    keep = np.ones(2 * n, dtype=bool)
    keep[2 * setting.mode : 2 * setting.mode + 2] = False
    cov = cov[np.ix_(keep, keep)]
    return ConditionalOutcome(
        probability_density=density,
        state=GaussianOperator(mean=mean[keep], cov=0.5 * (cov + cov.T)),
    )


def sample_homodyne(
    state: GaussianOperator,
    setting: HomodyneSetting,
    seed: int,
    n_samples: int | None = None,
):
    """Draw homodyne record values; identical seeds give identical draws.

    Returns a scalar when ``n_samples`` is None, else an array of that
    length from the same deterministic stream.
    """
    dens = homodyne_density(state, setting)
    rng = _generator(seed)
    draws = rng.normal(dens.mean, math.sqrt(dens.variance), size=n_samples)
    return float(draws) if n_samples is None else draws


def _double_homodyne_blocks(state: GaussianOperator, setting: DoubleHomodyneSetting):
    """Observation mean/covariance pieces for measuring the first mode."""
    require_physical(state)
    if state.n_modes != 2:
        raise ValueError("double homodyne conditioning expects a two-mode state")
    # POVM element: transposed Wigner function of the displaced reference,
    # broadened by the split detection's excess noise when eta < 1.
    ref_t = transpose_wigner(setting.reference)
    noise = 0.5 * setting.delta_sq * np.eye(2)
    s_obs = state.cov[:2, :2] + ref_t.cov + noise
    gain = np.linalg.solve(s_obs.T, state.cov[:2, 2:]).T
    cov_cond = state.cov[2:, 2:] - gain @ state.cov[:2, 2:]
    return ref_t, s_obs, gain, 0.5 * (cov_cond + cov_cond.T)


def double_homodyne_condition(
    state: GaussianOperator, setting: DoubleHomodyneSetting, alpha: complex
) -> ConditionalOutcome:
    """Condition the second mode on a joint x/y record ``alpha``.

    The first mode of ``state`` is measured against the setting's
    reference; the density is per unit area in the complex record plane.
    """
    ref_t, s_obs, gain, cov_cond = _double_homodyne_blocks(state, setting)
    povm_mean = ref_t.mean + np.array([alpha.real, -alpha.imag])
    shift = povm_mean - state.mean[:2]
    sign, logdet = np.linalg.slogdet(s_obs)
    quad = float(shift @ np.linalg.solve(s_obs, shift))
    density = state.weight * math.exp(-0.5 * (quad + logdet)) / (2.0 * math.pi)
    mean_cond = state.mean[2:] + gain @ shift
    return ConditionalOutcome(
        probability_density=density,
        state=GaussianOperator(mean=mean_cond, cov=cov_cond),
    )


def sample_double_homodyne(
    state: GaussianOperator,
    setting: DoubleHomodyneSetting,
    seed: int,
    n_samples: int | None = None,
):
    """Draw joint records alpha = x + iy; seed-deterministic like
    :func:`sample_homodyne`."""
    ref_t, s_obs, _, _ = _double_homodyne_blocks(state, setting)
    rng = _generator(seed)
    size = 1 if n_samples is None else int(n_samples)
    obs = state.mean[:2] + rng.standard_normal((size, 2)) @ np.linalg.cholesky(s_obs).T
    # invert povm_mean = ref_t.mean + (x, -y) for the record value
    alpha = (obs[:, 0] - ref_t.mean[0]) - 1j * (obs[:, 1] - ref_t.mean[1])
    return complex(alpha[0]) if n_samples is None else alpha
