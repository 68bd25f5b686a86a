"""Dense complex Hermitian linear algebra.

Eigendecompositions, matrix functions restricted to the support, tensor
products, partial traces, and Schatten functionals.  Every function here is
pure; matrices are never modified in place.

Conventions: functions of a Hermitian operator act only on the part of the
spectrum above a relative cutoff, so negative powers are pseudo-inverses on
the support and ``A @ herm_pow(A, -1)`` is the orthogonal projector onto
supp(A).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import (
    DimensionMismatchError,
    MatrixFunctionDomainError,
    NonHermitianError,
)

LOG2 = math.log(2.0)


@dataclass(frozen=True)
class SupportConvention:
    """Relative eigenvalue cutoff below which the spectrum is treated as zero.

    An eigenvalue lam is dropped when |lam| <= relative_cutoff * max|lam|.
    """

    relative_cutoff: float = 1e-12

    def __post_init__(self):
        if not 0.0 <= self.relative_cutoff < 1.0:
            raise ValueError(
                f"relative_cutoff must lie in [0, 1), got {self.relative_cutoff}"
            )


DEFAULT_CONVENTION = SupportConvention()


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigensystem of a Hermitian matrix, eigenvalues sorted descending."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray  # columns, aligned with eigenvalues
    hermiticity_residual: float

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def _as_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise DimensionMismatchError(f"expected a matrix, got shape {a.shape}")
    return a


def hermitian_eig(m, tol: float = 1e-10) -> SpectralDecomposition:
    """Eigendecomposition of a Hermitian matrix.

    The input is symmetrized to (M + M†)/2 before the decomposition; a
    relative anti-Hermitian residual above ``tol`` raises NonHermitianError.
    """
    a = _as_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise DimensionMismatchError(f"matrix is not square: shape {a.shape}")
    scale = np.linalg.norm(a, np.inf)
    residual = np.linalg.norm(a - a.conj().T, np.inf)
    if scale > 0 and residual > tol * scale:
        raise NonHermitianError(
            f"anti-Hermitian residual {residual:.3e} exceeds {tol:.1e} * norm {scale:.3e}"
        )
    sym = (a + a.conj().T) / 2
    vals, vecs = np.linalg.eigh(sym)
    order = np.argsort(-vals, kind="stable")
    rel = residual / scale if scale > 0 else 0.0
    return SpectralDecomposition(vals[order], vecs[:, order], float(rel))


def matrix_function(
    m,
    f: Callable[[np.ndarray], np.ndarray],
    conv: SupportConvention = DEFAULT_CONVENTION,
    tol: float = 1e-10,
) -> np.ndarray:
    """Apply a scalar function to a Hermitian matrix on its support only.

    Eigenvalues at or below the support cutoff are mapped to zero without
    evaluating ``f``, so e.g. f(x) = 1/x yields the pseudo-inverse.  Raises
    MatrixFunctionDomainError if ``f`` is undefined (nan/inf) on a retained
    eigenvalue.
    """
    dec = hermitian_eig(m, tol=tol)
    vals, vecs = dec.eigenvalues, dec.eigenvectors
    top = np.max(np.abs(vals)) if vals.size else 0.0
    keep = np.abs(vals) > conv.relative_cutoff * top if top > 0 else np.zeros_like(vals, bool)
    if not np.any(keep):
        return np.zeros_like(np.asarray(m, dtype=complex))
    with np.errstate(all="ignore"):
        fvals = np.asarray(f(vals[keep]), dtype=float)
    if not np.all(np.isfinite(fvals)):
        bad = vals[keep][~np.isfinite(fvals)]
        raise MatrixFunctionDomainError(
            f"function undefined on retained eigenvalue(s) {bad}"
        )
    v = vecs[:, keep]
    out = (v * fvals) @ v.conj().T
    return (out + out.conj().T) / 2


def herm_pow(m, p: float, conv: SupportConvention = DEFAULT_CONVENTION) -> np.ndarray:
    """Fractional power of a Hermitian matrix, restricted to the support.

    ``p = 0`` gives the projector onto the support; negative ``p`` uses the
    support-restricted inverse.
    """
    return matrix_function(m, lambda x: np.power(x, p), conv)


def herm_log(m, conv: SupportConvention = DEFAULT_CONVENTION) -> np.ndarray:
    """Natural logarithm on the support of a Hermitian PSD matrix."""
    return matrix_function(m, np.log, conv)


def herm_log2(m, conv: SupportConvention = DEFAULT_CONVENTION) -> np.ndarray:
    """Base-2 logarithm on the support of a Hermitian PSD matrix."""
    return matrix_function(m, np.log2, conv)


def herm_exp(m, tol: float = 1e-10) -> np.ndarray:
    """Exponential of a Hermitian matrix over the full spectrum.

    Unlike matrix_function this does not drop the kernel (exp(0) = 1 there),
    which is the behavior needed for exponentials of sums of logarithms.
    """
    dec = hermitian_eig(m, tol=tol)
    v = dec.eigenvectors
    out = (v * np.exp(dec.eigenvalues)) @ v.conj().T
    return (out + out.conj().T) / 2


def kron(a, b) -> np.ndarray:
    """Kronecker product; dimensions multiply."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def kron_all(*ops) -> np.ndarray:
    out = np.asarray(ops[0], dtype=complex)
    for op in ops[1:]:
        out = np.kron(out, np.asarray(op, dtype=complex))
    return out


def partial_trace(m, dims: Sequence[int], traced_out: Iterable[int]) -> np.ndarray:
    """Trace out the listed tensor factors of an operator.

    ``dims`` lists the subsystem dimensions in tensor order; ``traced_out``
    is a set of factor indices.  The remaining factors keep their order, and
    the total trace is preserved.
    """
    a = _as_matrix(m)
    dims = tuple(int(d) for d in dims)
    n = len(dims)
    total = int(np.prod(dims))
    if a.shape != (total, total):
        raise DimensionMismatchError(
            f"dims {dims} imply shape {(total, total)}, got {a.shape}"
        )
    traced = sorted(set(int(i) for i in traced_out))
    if any(i < 0 or i >= n for i in traced):
        raise DimensionMismatchError(f"traced_out {traced} out of range for {n} factors")
    kept = [i for i in range(n) if i not in traced]
    if not kept:
        return np.array([[np.trace(a)]], dtype=complex)

    t = a.reshape(dims + dims)
    row = [chr(ord("a") + i) for i in range(n)]
    col = [chr(ord("A") + i) for i in range(n)]
    for i in traced:
        col[i] = row[i]
    src = "".join(row) + "".join(col)
    dst = "".join(row[i] for i in kept) + "".join(col[i] for i in kept)
    reduced = np.einsum(f"{src}->{dst}", t)
    d_kept = int(np.prod([dims[i] for i in kept]))
    return reduced.reshape(d_kept, d_kept)


def embed_operator(x, dims: Sequence[int], sites: Sequence[int]) -> np.ndarray:
    """Extend an operator on a subset of tensor factors by identity elsewhere.

    ``sites`` are the (ascending) factor indices that ``x`` acts on; the
    result acts on the full tensor product in natural factor order.
    """
    a = _as_matrix(x)
    dims = tuple(int(d) for d in dims)
    sites = tuple(int(s) for s in sites)
    if sorted(sites) != list(sites) or len(set(sites)) != len(sites):
        raise DimensionMismatchError(f"sites must be strictly ascending, got {sites}")
    d_sites = int(np.prod([dims[s] for s in sites]))
    if a.shape != (d_sites, d_sites):
        raise DimensionMismatchError(
            f"operator shape {a.shape} does not match site dims product {d_sites}"
        )
    rest = [i for i in range(len(dims)) if i not in sites]
    d_rest = int(np.prod([dims[i] for i in rest])) if rest else 1
    full = np.kron(a, np.eye(d_rest, dtype=complex))
    # current factor order is sites + rest; permute back to natural order
    perm = list(sites) + rest
    inv = np.argsort(perm)
    n = len(dims)
    cur_dims = [dims[p] for p in perm]
    t = full.reshape(cur_dims + cur_dims)
    t = np.transpose(t, list(inv) + [n + i for i in inv])
    total = int(np.prod(dims))
    return np.ascontiguousarray(t.reshape(total, total))


def singular_values(x, conv: SupportConvention = DEFAULT_CONVENTION) -> np.ndarray:
    """Singular values above the support cutoff, descending."""
    sv = np.linalg.svd(_as_matrix(x), compute_uv=False)
    if sv.size == 0 or sv[0] == 0.0:
        return np.zeros(0)
    return sv[sv > conv.relative_cutoff * sv[0]]


def alpha_norm(x, alpha: float, conv: SupportConvention = DEFAULT_CONVENTION) -> float:
    """Schatten functional [Tr |X|^alpha]^(1/alpha) with |X| = sqrt(X†X).

    For alpha >= 1 this is the Schatten norm; for alpha in (0, 1) it is the
    corresponding quasi-norm (same formula, no triangle inequality).
    """
    if alpha <= 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    sv = singular_values(x, conv)
    if sv.size == 0:
        return 0.0
    return float(np.sum(sv**alpha) ** (1.0 / alpha))


def trace_norm(x) -> float:
    """Schatten 1-norm (sum of singular values)."""
    return alpha_norm(x, 1.0)


def spectral_norm(x) -> float:
    """Schatten infinity-norm (largest singular value)."""
    sv = np.linalg.svd(_as_matrix(x), compute_uv=False)
    return float(sv[0]) if sv.size else 0.0


def hs_inner(c, d) -> complex:
    """Hilbert-Schmidt inner product Tr{C† D}."""
    cm, dm = _as_matrix(c), _as_matrix(d)
    if cm.shape != dm.shape:
        raise DimensionMismatchError(f"shape mismatch {cm.shape} vs {dm.shape}")
    return complex(np.vdot(cm, dm))
