"""Exact moments of the linear network SDE du = -L u dt + Sigma dW.

With L symmetric positive semidefinite this is a multivariate
Ornstein-Uhlenbeck process, and both moments are closed-form in the
eigenbasis L = V diag(lambda) V^T:

    E[u(t)]   = V diag(exp(-lambda t)) V^T u0,
    Cov(t)    = V Ctilde(t) V^T,
    Ctilde_jk = (V^T Sigma^2 V)_jk * g(lambda_j + lambda_k, t),

where g(mu, t) = (1 - exp(-mu t)) / mu for mu > 0 and g(0, t) = t.  Along
every null-space mode the variance grows linearly forever; on the orthogonal
complement it saturates at the stationary value B_jk / (lambda_j + lambda_k).

These values serve as the verification oracle for the stochastic integrator;
they model the synchronous scheme's target dynamics, not the legacy sweep.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .network import Network, laplacian_matrix

__all__ = [
    "SpectralOracle",
    "spectral_decompose",
    "oracle_for_network",
    "exact_mean",
    "exact_covariance",
    "stationary_deviation_covariance",
]

_NULL_EIGENVALUE_CUTOFF = 1e-10  # lambda_j + lambda_k below this counts as zero


@dataclass(frozen=True, eq=False)
class SpectralOracle:
    """Eigendecomposition of the drift matrix plus the noise intensities.

    ``eigenvalues`` ascend; ``eigenvectors`` holds the matching orthonormal
    eigenvectors as columns.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    sigma_diag: np.ndarray

    @property
    def dim(self) -> int:
        return self.eigenvalues.shape[0]


def spectral_decompose(lap: np.ndarray, sigma) -> SpectralOracle:
    """Full symmetric eigendecomposition of ``lap`` with per-site sigmas."""
    lap = np.asarray(lap, dtype=float)
    if lap.ndim != 2 or lap.shape[0] != lap.shape[1]:
        raise ValueError("matrix must be square")
    if not np.allclose(lap, lap.T, rtol=0.0, atol=1e-12):
        raise ValueError("matrix must be symmetric to 1e-12")
    sigma = np.asarray(sigma, dtype=float)
    if sigma.shape != (lap.shape[0],):
        raise ValueError("sigma must have one entry per site")
    if np.any(~np.isfinite(sigma)) or np.any(sigma < 0.0):
        raise ValueError("sigma entries must be finite and non-negative")
    eigenvalues, eigenvectors = np.linalg.eigh(lap)
    return SpectralOracle(
        eigenvalues=eigenvalues, eigenvectors=eigenvectors, sigma_diag=sigma.copy()
    )


def oracle_for_network(net: Network, sigma) -> SpectralOracle:
    """Oracle for a network's Laplacian; scalar sigma broadcasts to all sites."""
    if np.isscalar(sigma):
        sigma = np.full(net.site_count, float(sigma))
    return spectral_decompose(laplacian_matrix(net), sigma)


def exact_mean(oracle: SpectralOracle, u0, t: float) -> np.ndarray:
    """E[u(t)] = exp(-L t) u0."""
    if t < 0.0:
        raise ValueError("t must be non-negative")
    u0 = np.asarray(u0, dtype=float)
    if u0.shape != (oracle.dim,):
        raise ValueError("u0 length must match the oracle dimension")
    v = oracle.eigenvectors
    coeffs = v.T @ u0
    return v @ (np.exp(-oracle.eigenvalues * t) * coeffs)


def _mode_noise_matrix(oracle: SpectralOracle) -> np.ndarray:
    # B = V^T Sigma^2 V, the noise covariance rotated to the eigenbasis.
    v = oracle.eigenvectors
    return v.T @ (oracle.sigma_diag[:, None] ** 2 * v)


def exact_covariance(oracle: SpectralOracle, t: float) -> np.ndarray:
    """Cov(u(t)) for u(0) deterministic, as a symmetric PSD matrix."""
    if t < 0.0:
        raise ValueError("t must be non-negative")
    lam = oracle.eigenvalues
    mu = lam[:, None] + lam[None, :]
    growth = np.where(
        mu < _NULL_EIGENVALUE_CUTOFF,
        t,
        -np.expm1(-mu * t) / np.where(mu < _NULL_EIGENVALUE_CUTOFF, 1.0, mu),
    )
    ctilde = _mode_noise_matrix(oracle) * growth
    v = oracle.eigenvectors
    cov = v @ ctilde @ v.T
    return (cov + cov.T) / 2.0


def stationary_deviation_covariance(oracle: SpectralOracle) -> np.ndarray:
    """Long-time covariance on the complement of the drift null space.

    Mode pairs with lambda_j + lambda_k below the null cutoff (the linearly
    growing directions) contribute zero by convention.
    """
    lam = oracle.eigenvalues
    mu = lam[:, None] + lam[None, :]
    inv = np.where(mu < _NULL_EIGENVALUE_CUTOFF, 0.0, 1.0 / np.where(mu < _NULL_EIGENVALUE_CUTOFF, 1.0, mu))
    ctilde = _mode_noise_matrix(oracle) * inv
    v = oracle.eigenvectors
    cov = v @ ctilde @ v.T
    return (cov + cov.T) / 2.0
