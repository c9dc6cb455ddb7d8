"""Dense complex-matrix primitives.

Matrices are plain two-dimensional :class:`numpy.ndarray` objects; every
function here is a pure function of its inputs.
"""

from __future__ import annotations

import numpy as np

ATOL = 1e-9


class NumericalError(RuntimeError):
    """Raised when a numerical routine fails to produce a trustworthy result."""


def as_matrix(a) -> np.ndarray:
    """Return ``a`` as a 2-D complex array, rejecting NaN/Inf entries."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got an array of shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


def kron(a, b) -> np.ndarray:
    """Kronecker product; entry ``[i*p + k, j*q + l] = a[i, j] * b[k, l]``."""
    return np.kron(as_matrix(a), as_matrix(b))


def singular_values(a) -> np.ndarray:
    """Singular values of ``a`` in non-increasing order.

    The result has ``min(rows, cols)`` entries.

    Raises
    ------
    NumericalError
        If LAPACK fails to converge.
    """
    m = as_matrix(a)
    try:
        s = np.linalg.svd(m, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"SVD did not converge: {exc}") from exc
    if not np.all(np.isfinite(s)):
        raise NumericalError("SVD returned non-finite singular values")
    return s


def trace_norm(a) -> float:
    """Trace (nuclear) norm: the sum of the singular values."""
    return float(np.sum(singular_values(a)))


def operator_norm(a) -> float:
    """Standard operator norm: the largest singular value."""
    s = singular_values(a)
    return float(s[0]) if s.size else 0.0


def hs_inner(a, b) -> complex:
    """Hilbert-Schmidt inner product ``tr(a^dagger b)``, antilinear in ``a``."""
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    return complex(np.vdot(a, b))


def hs_norm_sq(a) -> float:
    """Squared Hilbert-Schmidt (Frobenius) norm."""
    a = as_matrix(a)
    return float(np.vdot(a, a).real)


def is_hermitian(a, atol: float = ATOL) -> bool:
    a = as_matrix(a)
    return a.shape[0] == a.shape[1] and np.allclose(a, a.conj().T, rtol=0, atol=atol)
