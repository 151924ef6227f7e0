"""Multimode Gaussian operators in quadrature phase space.

Conventions used throughout the package:

* quadratures are x = (a + a^dag)/2 and y = i(a^dag - a)/2, so the vacuum
  has variance 1/4 per quadrature and a pure coherent state's Wigner
  function peaks at 2/pi;
* phase-space coordinates are ordered (x1, y1, x2, y2, ...);
* every Gaussian object carries an explicit scalar ``weight`` so that
  unnormalized operators (measurement elements, unconditioned outcomes)
  live in the same representation as density operators, whose Wigner
  function is ``weight`` times a normalized multivariate normal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

VACUUM_VARIANCE = 0.25

# Slack allowed on the uncertainty bound when certifying physicality.
PHYSICALITY_TOL = 1e-9

_COV_SYMMETRY_RTOL = 1e-12


class UnphysicalStateError(ValueError):
    """Raised when an operation requires a bona fide quantum state."""


def _as_float_array(values, name: str) -> np.ndarray:
    arr = np.array(values, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} must be finite")
    return arr


@dataclass(frozen=True, eq=False)
class GaussianOperator:
    """Gaussian-Wigner operator: weight times a normal density.

    Attributes:
        mean: length-2n quadrature mean, ordered (x1, y1, ..., xn, yn).
        cov: 2n x 2n symmetric positive-definite covariance matrix.
        weight: positive scalar prefactor; 1 for a normalized state.
    """

    mean: np.ndarray
    cov: np.ndarray
    weight: float = 1.0

    def __post_init__(self):
        mean = _as_float_array(self.mean, "mean")
        cov = _as_float_array(self.cov, "cov")
        if mean.ndim != 1 or mean.size == 0 or mean.size % 2 != 0:
            raise ValueError("mean must be a 1-D vector of even length")
        if cov.shape != (mean.size, mean.size):
            raise ValueError("cov must be square and match the mean length")
        scale = max(1.0, float(np.max(np.abs(cov))))
        if np.max(np.abs(cov - cov.T)) > _COV_SYMMETRY_RTOL * scale:
            raise ValueError("cov must be symmetric")
        cov = 0.5 * (cov + cov.T)
        try:
            np.linalg.cholesky(cov)
        except np.linalg.LinAlgError:
            raise ValueError("cov must be positive definite") from None
        weight = float(self.weight)
        if not math.isfinite(weight) or weight <= 0.0:
            raise ValueError("weight must be a positive finite scalar")
        mean.setflags(write=False)
        cov.setflags(write=False)
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "cov", cov)
        object.__setattr__(self, "weight", weight)

    @property
    def n_modes(self) -> int:
        return self.mean.size // 2

    def to_dict(self) -> dict:
        """JSON-ready payload: n_modes, mean, row-major cov, weight."""
        return {
            "n_modes": self.n_modes,
            "mean": self.mean.tolist(),
            "cov": self.cov.ravel().tolist(),
            "weight": self.weight,
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "GaussianOperator":
        n = int(payload["n_modes"])
        mean = np.array(payload["mean"], dtype=float)
        cov = np.array(payload["cov"], dtype=float).reshape(2 * n, 2 * n)
        return cls(mean=mean, cov=cov, weight=float(payload.get("weight", 1.0)))


@dataclass(frozen=True)
class SqueezedThermalDecomposition:
    """Canonical single-mode parameters: D(alpha) S(r, phase) rho_th(n_th)."""

    displacement: complex
    squeeze_r: float
    squeeze_phase: float
    n_th: float

    def to_operator(self) -> GaussianOperator:
        """Rebuild the Gaussian state described by these parameters."""
        width = (2.0 * self.n_th + 1.0) * VACUUM_VARIANCE
        rot = _rotation_matrix(self.squeeze_phase)
        core = np.diag([math.exp(-2.0 * self.squeeze_r), math.exp(2.0 * self.squeeze_r)])
        cov = width * rot @ core @ rot.T
        mean = np.array([self.displacement.real, self.displacement.imag])
        return GaussianOperator(mean=mean, cov=cov)


def _rotation_matrix(phi: float) -> np.ndarray:
    c, s = math.cos(phi), math.sin(phi)
    return np.array([[c, -s], [s, c]])


def _mode_block(mode: int, n_modes: int) -> slice:
    if not 0 <= mode < n_modes:
        raise ValueError(f"mode index {mode} out of range for {n_modes} modes")
    return slice(2 * mode, 2 * mode + 2)


def _embed_single_mode(matrix: np.ndarray, mode: int, n_modes: int) -> np.ndarray:
    full = np.eye(2 * n_modes)
    block = _mode_block(mode, n_modes)
    full[block, block] = matrix
    return full


def _apply_symplectic(op: GaussianOperator, s: np.ndarray) -> GaussianOperator:
    return GaussianOperator(
        mean=s @ op.mean, cov=s @ op.cov @ s.T, weight=op.weight
    )


def symplectic_form(n_modes: int) -> np.ndarray:
    """Block-diagonal symplectic form matching the (x1, y1, ...) ordering."""
    omega = np.zeros((2 * n_modes, 2 * n_modes))
    for k in range(n_modes):
        omega[2 * k, 2 * k + 1] = 1.0
        omega[2 * k + 1, 2 * k] = -1.0
    return omega


def symplectic_eigenvalues(cov: np.ndarray) -> np.ndarray:
    """Symplectic spectrum of a covariance matrix, sorted ascending.

    A covariance matrix describes a physical state iff every symplectic
    eigenvalue is at least the vacuum variance 1/4.
    """
    cov = np.asarray(cov, dtype=float)
    n = cov.shape[0] // 2
    eigs = np.linalg.eigvals(1j * symplectic_form(n) @ cov)
    # eigenvalues of i*Omega*cov come in +/- pairs; keep one of each
    return np.sort(np.abs(eigs))[::2]


def is_physical(op: GaussianOperator, tol: float = PHYSICALITY_TOL) -> bool:
    """True when the covariance satisfies the uncertainty bound."""
    return bool(symplectic_eigenvalues(op.cov)[0] >= VACUUM_VARIANCE - tol)


def require_physical(op: GaussianOperator, what: str = "state") -> None:
    nu_min = symplectic_eigenvalues(op.cov)[0]
    if nu_min < VACUUM_VARIANCE - PHYSICALITY_TOL:
        raise UnphysicalStateError(
            f"{what} violates the uncertainty bound: min symplectic "
            f"eigenvalue {nu_min:.6g} < {VACUUM_VARIANCE}"
        )


def vacuum(n_modes: int = 1) -> GaussianOperator:
    """Vacuum state on ``n_modes`` modes."""
    if n_modes < 1:
        raise ValueError("n_modes must be at least 1")
    return GaussianOperator(
        mean=np.zeros(2 * n_modes),
        cov=VACUUM_VARIANCE * np.eye(2 * n_modes),
    )


def coherent(alpha: complex) -> GaussianOperator:
    """Single-mode coherent state with quadrature mean (Re alpha, Im alpha)."""
    return displace(vacuum(1), 0, alpha)


def thermal(n_th: float) -> GaussianOperator:
    """Single-mode thermal state with mean photon number ``n_th``."""
    if n_th < 0:
        raise ValueError("n_th must be nonnegative")
    return GaussianOperator(
        mean=np.zeros(2),
        cov=(2.0 * n_th + 1.0) * VACUUM_VARIANCE * np.eye(2),
    )


def twb(r: float) -> GaussianOperator:
    """Twin-beam (two-mode squeezed vacuum) state with squeezing ``r >= 0``.

    The sum quadrature (x1 + x2)/sqrt(2) and difference (y1 - y2)/sqrt(2)
    have variance e^{2r}/4; the conjugate combinations have e^{-2r}/4.
    """
    if r < 0:
        raise ValueError("r must be nonnegative")
    ch, sh = math.cosh(2.0 * r), math.sinh(2.0 * r)
    cov = VACUUM_VARIANCE * np.array(
        [
            [ch, 0.0, sh, 0.0],
            [0.0, ch, 0.0, -sh],
            [sh, 0.0, ch, 0.0],
            [0.0, -sh, 0.0, ch],
        ]
    )
    return GaussianOperator(mean=np.zeros(4), cov=cov)


def photon_number(r: float) -> float:
    """Mean photon number per arm of a twin beam: N = 2 sinh^2 r."""
    return 2.0 * math.sinh(r) ** 2


def squeezing_from_photon_number(n: float) -> float:
    """Inverse of :func:`photon_number`: r = arcsinh(sqrt(N / 2))."""
    if n < 0:
        raise ValueError("photon number must be nonnegative")
    return math.asinh(math.sqrt(0.5 * n))


def displace(op: GaussianOperator, mode: int, alpha: complex) -> GaussianOperator:
    """Displace one mode by the complex amplitude ``alpha``."""
    block = _mode_block(mode, op.n_modes)
    mean = op.mean.copy()
    mean[block] += (alpha.real, alpha.imag)
    return GaussianOperator(mean=mean, cov=op.cov, weight=op.weight)


def squeeze(op: GaussianOperator, mode: int, r: float, phase: float = 0.0) -> GaussianOperator:
    """Squeeze one mode: variance e^{-2r}/4 along the ``phase`` direction.

    ``phase`` is the orientation of the squeezed axis in the (x, y) plane;
    phase 0 squeezes x and antisqueezes y.
    """
    rot = _rotation_matrix(phase)
    core = np.diag([math.exp(-r), math.exp(r)])
    s = _embed_single_mode(rot @ core @ rot.T, mode, op.n_modes)
    return _apply_symplectic(op, s)


def rotate(op: GaussianOperator, mode: int, phi: float) -> GaussianOperator:
    """Rotate one mode's quadratures by angle ``phi``."""
    s = _embed_single_mode(_rotation_matrix(phi), mode, op.n_modes)
    return _apply_symplectic(op, s)


def wigner_eval(op: GaussianOperator, point) -> float:
    """Evaluate the Wigner function at one phase-space point."""
    point = _as_float_array(point, "point")
    if point.shape != op.mean.shape:
        raise ValueError("point must match the operator's phase-space dimension")
    delta = point - op.mean
    sign, logdet = np.linalg.slogdet(op.cov)
    if sign <= 0:
        raise ValueError("cov must be positive definite")
    quad = float(delta @ np.linalg.solve(op.cov, delta))
    n = op.n_modes
    return op.weight * math.exp(-0.5 * (quad + logdet)) / (2.0 * math.pi) ** n


def overlap(a: GaussianOperator, b: GaussianOperator) -> float:
    """Hilbert-Schmidt overlap Tr[A B] = pi^n * integral of W_A W_B.

    For normalized states this is the purity (a == b) or the fidelity
    when at least one of the two is pure.
    """
    if a.n_modes != b.n_modes:
        raise ValueError("operators must act on the same number of modes")
    total = a.cov + b.cov
    delta = a.mean - b.mean
    sign, logdet = np.linalg.slogdet(total)
    if sign <= 0:
        raise ValueError("sum of covariances must be positive definite")
    quad = float(delta @ np.linalg.solve(total, delta))
    return a.weight * b.weight * math.exp(-0.5 * (quad + logdet)) / 2.0 ** a.n_modes


def marginal(op: GaussianOperator, keep_modes) -> GaussianOperator:
    """Trace out every mode not listed in ``keep_modes``."""
    keep = sorted(set(int(m) for m in keep_modes))
    if not keep:
        raise ValueError("keep_modes must not be empty")
    if keep[0] < 0 or keep[-1] >= op.n_modes:
        raise ValueError("keep_modes out of range")
    idx = np.concatenate([[2 * m, 2 * m + 1] for m in keep])
    return GaussianOperator(
        mean=op.mean[idx], cov=op.cov[np.ix_(idx, idx)], weight=op.weight
    )


def transpose_wigner(op: GaussianOperator) -> GaussianOperator:
    """Operator transpose, i.e. time reversal y -> -y on every mode."""
    flip = np.ones(2 * op.n_modes)
    flip[1::2] = -1.0
    return GaussianOperator(
        mean=flip * op.mean,
        cov=op.cov * np.outer(flip, flip),
        weight=op.weight,
    )


def decompose_single_mode(op: GaussianOperator) -> SqueezedThermalDecomposition:
    """Factor a single-mode state as displaced squeezed thermal.

    Returns the unique parameters with squeeze_r >= 0 and squeeze_phase
    in [0, pi); a rotationally symmetric state reports phase 0.
    """
    if op.n_modes != 1:
        raise ValueError("decomposition requires a single-mode operator")
    require_physical(op)
    eigvals, eigvecs = np.linalg.eigh(op.cov)
    lam_min, lam_max = float(eigvals[0]), float(eigvals[1])
    nu = math.sqrt(lam_min * lam_max)
    n_th = max(0.0, 2.0 * nu - 0.5)
    r = 0.25 * math.log(lam_max / lam_min)
    if r < 1e-15:
        phase = 0.0
    else:
        v = eigvecs[:, 0]
        phase = math.atan2(v[1], v[0]) % math.pi
    return SqueezedThermalDecomposition(
        displacement=complex(op.mean[0], op.mean[1]),
        squeeze_r=r,
        squeeze_phase=phase,
        n_th=n_th,
    )
