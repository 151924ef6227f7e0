"""End-to-end protocols built on the Gaussian primitives.

Two protocols share the twin beam as their entanglement resource:

* remote preparation: one arm is homodyned; the other collapses to a
  displaced squeezed thermal state whose parameters are closed forms
  in the beam strength, the record value and the detector efficiency;
* teleportation: one arm travels through a lossy channel, a joint x/y
  measurement against the input state is taken on the other, and the
  record is undone by a corrective displacement.  The surviving
  imperfection is one number, kappa^2, added as kappa^2/2 of extra
  variance per quadrature of the teleported state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channels import LossChannel, effective_kappa_contribution, evolve
from .gaussian import (
    GaussianOperator,
    coherent,
    photon_number,
    require_physical,
    twb,
)
from .measurement import DoubleHomodyneSetting, _double_homodyne_blocks, _generator

# Distinguished return value of eta_threshold: no efficiency in (0, 1]
# makes the teleported state conditionally squeezed.
IMPOSSIBLE = "impossible"


@dataclass(frozen=True)
class RemotePrepResult:
    """Closed-form description of the remotely prepared state.

    Attributes:
        a_x_eta: heralded displacement of the prepared state (along x).
        sigma1_sq: variance of the conditionally squeezed x quadrature.
        sigma2_sq: variance of the conjugate y quadrature.
        n_th: effective thermal occupation of the prepared state.
        r_squeeze: effective squeezing parameter of the prepared state.
        is_squeezed: True when sigma1_sq drops strictly below vacuum 1/4.
        outcome_density: probability density of the homodyne record.
    """

    a_x_eta: float
    sigma1_sq: float
    sigma2_sq: float
    n_th: float
    r_squeeze: float
    is_squeezed: bool
    outcome_density: float


@dataclass(frozen=True)
class TeleportConfig:
    """Resource squeezing r, channel damping, bath photons and efficiency."""

    r: float
    gamma_t: float = 0.0
    thermal_photons: float = 0.0
    eta: float = 1.0

    def __post_init__(self):
        if self.r < 0:
            raise ValueError("r must be nonnegative")
        if not 0.0 < self.eta <= 1.0:
            raise ValueError("eta must lie in (0, 1]")
        # LossChannel validates gamma_t and thermal_photons
        self.channel()

    def channel(self) -> LossChannel:
        return LossChannel(gamma_t=self.gamma_t, thermal_photons=self.thermal_photons)

    @property
    def kappa_sq(self) -> float:
        """Total added noise e^{-gamma_t - 2r} + (2M+1)(1 - e^{-gamma_t})
        + (1 - eta)/eta."""
        return (
            effective_kappa_contribution(self.r, self.channel())
            + (1.0 - self.eta) / self.eta
        )


def remote_prep(r: float, eta: float, x: float) -> RemotePrepResult:
    """Closed-form state prepared by homodyning one twin-beam arm.

    Args:
        r: twin-beam squeezing parameter, r >= 0.
        eta: homodyne efficiency in (0, 1].
        x: recorded quadrature value.

    The prepared state is squeezed iff eta > 1/2 (for any r > 0); at
    eta = 1/2 the conditional x variance equals the vacuum value 1/4.
    """
    if r < 0:
        raise ValueError("r must be nonnegative")
    if not 0.0 < eta <= 1.0:
        raise ValueError("eta must lie in (0, 1]")
    n = photon_number(r)
    a_x = eta * math.sqrt(n * (n + 2.0)) * x / (1.0 + eta * n)
    sigma1 = 0.25 * (1.0 + n * (1.0 - eta)) / (1.0 + eta * n)
    sigma2 = 0.25 * (1.0 + n)
    ratio = (1.0 + n) * (1.0 + eta * n) / (1.0 + n * (1.0 - eta))
    n_th = 0.5 * (math.sqrt((1.0 + n) * (1.0 + n * (1.0 - eta)) / (1.0 + eta * n)) - 1.0)
    r_squeeze = 0.25 * math.log(ratio)
    record_var = 0.25 * (1.0 + n) + (1.0 - eta) / (4.0 * eta)
    density = math.exp(-0.5 * x * x / record_var) / math.sqrt(2.0 * math.pi * record_var)
    return RemotePrepResult(
        a_x_eta=a_x,
        sigma1_sq=sigma1,
        sigma2_sq=sigma2,
        n_th=max(0.0, n_th),
        r_squeeze=r_squeeze,
        is_squeezed=sigma1 < 0.25,
        outcome_density=density,
    )


def teleport_gaussian(state: GaussianOperator, config: TeleportConfig) -> GaussianOperator:
    """Average teleported state: input plus kappa^2/2 noise per quadrature."""
    require_physical(state)
    if state.n_modes != 1:
        raise ValueError("teleportation acts on a single-mode input")
    noise = 0.5 * config.kappa_sq * np.eye(2)
    return GaussianOperator(
        mean=state.mean, cov=state.cov + noise, weight=state.weight
    )


def fidelity_coherent(config: TeleportConfig) -> float:
    """Teleportation fidelity for coherent inputs: 1 / (1 + kappa^2)."""
    return 1.0 / (1.0 + config.kappa_sq)


def eta_threshold(r: float, gamma_t: float, thermal_photons: float = 0.0):
    """Smallest efficiency at which teleportation beats the classical 1/2.

    Returns the threshold as a float when some eta in (0, 1] reaches
    fidelity 1/2, else the string ``IMPOSSIBLE``.  With a vacuum bath
    (thermal_photons = 0) a threshold always exists.
    """
    a = effective_kappa_contribution(r, LossChannel(gamma_t, thermal_photons))
    # a <= 1 always holds for a vacuum bath; the epsilon absorbs the
    # 1-ulp rounding of that boundary so M = 0 never reports impossible
    if a > 1.0 + 1e-12:
        return IMPOSSIBLE
    return min(1.0, 1.0 / (2.0 - a))


def teleport_monte_carlo(z: complex, config: TeleportConfig, n_samples: int, seed: int) -> float:
    """Monte Carlo fidelity estimate for a coherent input ``z``.

    Simulates the full record-by-record protocol: damp both twin-beam
    arms, draw joint x/y records against the input, condition, undo the
    record by displacement, and average the per-record fidelity with
    the input.  The estimator's expectation is exactly
    :func:`fidelity_coherent`; identical seeds give identical estimates.

    The conditional covariance and record gain do not depend on the
    record value, so the loop over samples is vectorized.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be at least 1")
    resource = evolve(twb(config.r), config.channel())
    reference = coherent(z)
    setting = DoubleHomodyneSetting(reference=reference, efficiency=config.eta)
    ref_t, s_obs, gain, cov_cond = _double_homodyne_blocks(resource, setting)

    rng = _generator(seed)
    obs = resource.mean[:2] + rng.standard_normal((int(n_samples), 2)) @ np.linalg.cholesky(
        s_obs
    ).T
    shift = obs - resource.mean[:2]
    mean_cond = resource.mean[2:] + shift @ gain.T
    # record alpha satisfies obs = ref_t.mean + (x_alpha, -y_alpha);
    # the correction displaces by -alpha
    alpha_xy = (obs - ref_t.mean) * np.array([1.0, -1.0])
    mean_out = mean_cond - alpha_xy

    total_cov = cov_cond + reference.cov
    delta = mean_out - reference.mean
    quad = np.einsum("ij,ij->i", delta, np.linalg.solve(total_cov, delta.T).T)
    fidelities = 0.5 * np.exp(-0.5 * quad) / math.sqrt(np.linalg.det(total_cov))
    return float(np.mean(fidelities))
