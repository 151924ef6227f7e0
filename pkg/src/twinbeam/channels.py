"""Single-mode damping into a thermal background.

The channel is parametrized by the dimensionless damping ``gamma_t``
(decay-rate times time) and the mean photon number ``thermal_photons``
of the bath.  Acting on a Gaussian state it contracts means by
e^{-gamma_t/2} and drives every quadrature variance toward the bath
value (2 thermal_photons + 1)/4.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .gaussian import GaussianOperator, require_physical


@dataclass(frozen=True)
class LossChannel:
    """Damping by ``gamma_t`` into a bath holding ``thermal_photons``."""

    gamma_t: float
    thermal_photons: float = 0.0

    def __post_init__(self):
        if self.gamma_t < 0:
            raise ValueError("gamma_t must be nonnegative")
        if self.thermal_photons < 0:
            raise ValueError("thermal_photons must be nonnegative")

    @property
    def transmission(self) -> float:
        """Amplitude-squared survival e^{-gamma_t}."""
        return math.exp(-self.gamma_t)

    @property
    def added_variance(self) -> float:
        """Diffusion added per quadrature: (2M + 1)(1 - e^{-gamma_t})/4."""
        return 0.25 * (2.0 * self.thermal_photons + 1.0) * (1.0 - self.transmission)


def evolve(state: GaussianOperator, channel: LossChannel, modes=None) -> GaussianOperator:
    """Apply the channel to every mode (default) or to ``modes``.

    Means scale by sqrt(transmission); covariances contract toward the
    bath variance.  The fixed point is the thermal state of the bath.
    """
    require_physical(state)
    n = state.n_modes
    which = range(n) if modes is None else sorted(set(int(m) for m in modes))
    scale = np.ones(2 * n)
    hit = np.zeros(2 * n, dtype=bool)
    for m in which:
        if not 0 <= m < n:
            raise ValueError(f"mode index {m} out of range for {n} modes")
        scale[2 * m : 2 * m + 2] = math.sqrt(channel.transmission)
        hit[2 * m : 2 * m + 2] = True
    cov = np.outer(scale, scale) * state.cov + np.diag(hit * channel.added_variance)
    return GaussianOperator(mean=scale * state.mean, cov=cov, weight=state.weight)


def effective_kappa_contribution(r: float, channel: LossChannel) -> float:
    """Teleportation noise from squeezing plus channel damping.

    Equals e^{-gamma_t - 2r} + (2M + 1)(1 - e^{-gamma_t}): four times the
    variance of the damped twin-beam difference quadrature.
    """
    if r < 0:
        raise ValueError("r must be nonnegative")
    t = channel.transmission
    return t * math.exp(-2.0 * r) + (2.0 * channel.thermal_photons + 1.0) * (1.0 - t)
