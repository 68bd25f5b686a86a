"""Scalar divergences between positive operators, all in bits.

Implements the quantum relative entropy, the alpha-Renyi and sandwiched
alpha-Renyi relative entropies, the min/max relative entropies, and the
operator f-divergence.  When a support condition fails the value is the
explicit float +inf, never an error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import DimensionMismatchError, ValidationError
from .linalg import DEFAULT_CONVENTION, hermitian_eig, herm_pow
from .states import fidelity

ALPHA_ONE_GUARD = 1e-6


@dataclass(frozen=True)
class AlphaParameter:
    """Renyi order with its derived substitution gamma = (2 alpha - 1) / alpha.

    ``petz_ok`` marks the interval (0,1) u (1,2) on which the non-sandwiched
    quantities are certified, ``sandwiched_ok`` the interval (1/2,1) u (1,inf)
    for the sandwiched ones.  Orders within 1e-6 of 1 are rejected: the
    1/(alpha-1) prefactor amplifies round-off beyond usefulness there, and
    callers should use the von Neumann quantities instead.
    """

    alpha: float
    gamma: float = field(init=False)

    def __post_init__(self):
        a = float(self.alpha)
        if not a > 0.0:
            raise ValidationError("bad-spec", f"alpha must be positive, got {a}")
        if abs(a - 1.0) < ALPHA_ONE_GUARD:
            raise ValidationError(
                "bad-spec", f"alpha within {ALPHA_ONE_GUARD} of 1 is not evaluable"
            )
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "gamma", (2.0 * a - 1.0) / a)

    @property
    def petz_ok(self) -> bool:
        return 0.0 < self.alpha < 2.0

    @property
    def sandwiched_ok(self) -> bool:
        return self.alpha > 0.5


def as_alpha(a) -> AlphaParameter:
    return a if isinstance(a, AlphaParameter) else AlphaParameter(float(a))


def _pair(rho, sigma) -> tuple[np.ndarray, np.ndarray]:
    a = rho.matrix if hasattr(rho, "matrix") else np.asarray(rho, dtype=complex)
    b = sigma.matrix if hasattr(sigma, "matrix") else np.asarray(sigma, dtype=complex)
    if a.shape != b.shape:
        raise DimensionMismatchError(f"shape mismatch {a.shape} vs {b.shape}")
    return a, b


def support_contained(rho, sigma, tol: float = 1e-10) -> bool:
    """Whether supp(rho) is contained in supp(sigma)."""
    a, b = _pair(rho, sigma)
    dec = hermitian_eig(b)
    top = np.max(np.abs(dec.eigenvalues)) if dec.eigenvalues.size else 0.0
    kernel = dec.eigenvectors[:, np.abs(dec.eigenvalues) <= DEFAULT_CONVENTION.relative_cutoff * top]
    if kernel.shape[1] == 0:
        return True
    weight = float(np.real(np.trace(kernel.conj().T @ a @ kernel)))
    return weight <= tol * max(1.0, float(np.trace(a).real))


def von_neumann_entropy(rho) -> float:
    """Entropy -Tr{rho log2 rho} over the support."""
    mat = rho.matrix if hasattr(rho, "matrix") else np.asarray(rho, dtype=complex)
    eigs = np.linalg.eigvalsh((mat + mat.conj().T) / 2)
    top = eigs[-1] if eigs.size else 0.0
    kept = eigs[eigs > DEFAULT_CONVENTION.relative_cutoff * max(top, 0.0)]
    if kept.size == 0:
        return 0.0
    return float(-np.sum(kept * np.log2(kept)))


def rel_entropy(rho, sigma) -> float:
    """Quantum relative entropy Tr{rho (log2 rho - log2 sigma)}.

    Returns +inf when supp(rho) is not contained in supp(sigma).
    """
    a, b = _pair(rho, sigma)
    if not support_contained(a, b):
        return math.inf
    dec_a = hermitian_eig(a)
    dec_b = hermitian_eig(b)
    cutoff = DEFAULT_CONVENTION.relative_cutoff
    top_a = np.max(np.abs(dec_a.eigenvalues)) if dec_a.eigenvalues.size else 0.0
    keep_a = dec_a.eigenvalues > cutoff * top_a
    top_b = np.max(np.abs(dec_b.eigenvalues)) if dec_b.eigenvalues.size else 0.0
    keep_b = dec_b.eigenvalues > cutoff * top_b
    p = dec_a.eigenvalues[keep_a]
    va = dec_a.eigenvectors[:, keep_a]
    q = dec_b.eigenvalues[keep_b]
    vb = dec_b.eigenvectors[:, keep_b]
    overlaps = np.abs(va.conj().T @ vb) ** 2  # |<a_i|b_j>|^2
    value = float(np.sum(p * np.log2(p)) - np.sum((p[:, None] * overlaps) * np.log2(q)[None, :]))
    return value


def renyi_rel_entropy(rho, sigma, a) -> float:
    """alpha-Renyi relative entropy (1/(alpha-1)) log2 Tr{rho^alpha sigma^(1-alpha)}.

    +inf when alpha > 1 and supp(rho) is not contained in supp(sigma), and
    also when the trace functional vanishes (disjoint supports, alpha < 1).
    """
    a = as_alpha(a)
    rho_m, sigma_m = _pair(rho, sigma)
    if a.alpha > 1.0 and not support_contained(rho_m, sigma_m):
        return math.inf
    value = np.trace(
        herm_pow(rho_m, a.alpha) @ herm_pow(sigma_m, 1.0 - a.alpha)
    ).real
    if value <= 0.0:
        return math.inf
    return float(np.log2(value) / (a.alpha - 1.0))


def sandwiched_rel_entropy(rho, sigma, a) -> float:
    """Sandwiched Renyi relative entropy.

    (1/(alpha-1)) log2 Tr{ (sigma^((1-alpha)/2alpha) rho sigma^((1-alpha)/2alpha))^alpha }.
    """
    a = as_alpha(a)
    rho_m, sigma_m = _pair(rho, sigma)
    if a.alpha > 1.0 and not support_contained(rho_m, sigma_m):
        return math.inf
    exponent = (1.0 - a.alpha) / (2.0 * a.alpha)
    wedge = herm_pow(sigma_m, exponent)
    core = wedge @ rho_m @ wedge
    core = (core + core.conj().T) / 2
    eigs = np.linalg.eigvalsh(core)
    top = eigs[-1] if eigs.size else 0.0
    kept = eigs[eigs > DEFAULT_CONVENTION.relative_cutoff * max(top, 0.0)]
    if kept.size == 0:
        return math.inf
    value = float(np.sum(kept**a.alpha))
    if value <= 0.0:
        return math.inf
    return float(np.log2(value) / (a.alpha - 1.0))


def min_rel_entropy(rho, sigma) -> float:
    """Min-relative entropy -log2 F(rho, sigma)."""
    value = fidelity(rho, sigma)
    if value <= 0.0:
        return math.inf
    return float(-np.log2(value))


def max_rel_entropy(rho, sigma) -> float:
    """Max-relative entropy log2 of the least lambda with rho <= 2^lambda sigma.

    Equals log2 of the largest eigenvalue of sigma^(-1/2) rho sigma^(-1/2)
    when supp(rho) is contained in supp(sigma); +inf otherwise.
    """
    rho_m, sigma_m = _pair(rho, sigma)
    if not support_contained(rho_m, sigma_m):
        return math.inf
    inv_sqrt = herm_pow(sigma_m, -0.5)
    core = inv_sqrt @ rho_m @ inv_sqrt
    eigs = np.linalg.eigvalsh((core + core.conj().T) / 2)
    top = float(eigs[-1])
    if top <= 0.0:
        return math.inf
    return float(np.log2(top))


def f_divergence(a, b, f: Callable[[np.ndarray], np.ndarray]) -> float:
    """Operator f-divergence of A with respect to positive definite B.

    Evaluates <G| (sqrt(B) x I) f(B^(-1) x A^T) (sqrt(B) x I) |G> where |G> is
    the unnormalized maximally entangled vector in the computational basis
    (the basis in which the transpose is taken).  The Kronecker factor is
    never formed: the spectrum of B^(-1) x A^T is the set of ratios of the
    two spectra, and f is applied there, on the support only.
    """
    a_m, b_m = _pair(a, b)
    dec_b = hermitian_eig(b_m)
    if dec_b.eigenvalues[-1] <= 0.0:
        raise ValidationError("not-positive", "B must be positive definite")
    dec_a = hermitian_eig(a_m)
    ratios = dec_a.eigenvalues[None, :] / dec_b.eigenvalues[:, None]
    top = np.max(np.abs(ratios))
    keep = np.abs(ratios) > DEFAULT_CONVENTION.relative_cutoff * top if top > 0 else np.zeros_like(ratios, bool)
    with np.errstate(all="ignore"):
        fvals = np.where(keep, f(np.where(keep, ratios, 1.0)), 0.0)
    if not np.all(np.isfinite(fvals)):
        raise ValidationError("bad-spec", "f undefined on a retained spectral ratio")
    # <G| (sqrt(B) x I) (u_i x conj(v_j))  =  sqrt(b_i) u_i^T conj(v_j)
    weights = np.abs(dec_b.eigenvectors.T @ dec_a.eigenvectors.conj()) ** 2
    weights = dec_b.eigenvalues[:, None] * weights
    return float(np.sum(fvals * weights))
