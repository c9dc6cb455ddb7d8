"""Bipartite structure on operators acting on ``C^dim_a (x) C^dim_b``.

Composite indices follow the product-basis convention ``(m, mu) -> m * dim_b + mu``
(0-based). Operators that are not states, such as the combinations built by the
criteria, are handled as bare arrays together with ``(dim_a, dim_b)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import ATOL, as_matrix, hs_norm_sq, singular_values


class InvalidStateError(ValueError):
    """The matrix does not describe a density operator."""


def _check_square(op: np.ndarray, dim_a: int, dim_b: int) -> None:
    n = dim_a * dim_b
    if op.shape != (n, n):
        raise ValueError(f"operator of shape {op.shape} does not act on {dim_a}x{dim_b} system")


@dataclass(frozen=True, eq=False)
class BipartiteState:
    """A validated density matrix on a ``dim_a x dim_b`` system.

    Construction checks Hermiticity, unit trace and positivity, each to ``atol``.
    """

    dim_a: int
    dim_b: int
    matrix: np.ndarray
    atol: float = ATOL

    def __post_init__(self):
        if self.dim_a < 2 or self.dim_b < 2:
            raise InvalidStateError(f"local dimensions must be >= 2, got ({self.dim_a}, {self.dim_b})")
        m = as_matrix(self.matrix)
        _check_square(m, self.dim_a, self.dim_b)
        if not np.allclose(m, m.conj().T, rtol=0, atol=self.atol):
            raise InvalidStateError("matrix is not Hermitian")
        tr = np.trace(m)
        if abs(tr - 1) > self.atol:
            raise InvalidStateError(f"trace is {tr.real:.12g}, expected 1")
        min_eig = float(np.linalg.eigvalsh(m)[0])
        if min_eig < -self.atol:
            raise InvalidStateError(f"matrix is not positive semidefinite (minimum eigenvalue {min_eig:.6g})")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dims(self) -> tuple[int, int]:
        return self.dim_a, self.dim_b

    @property
    def rho_a(self) -> np.ndarray:
        return partial_trace_b(self.matrix, self.dim_a, self.dim_b)

    @property
    def rho_b(self) -> np.ndarray:
        return partial_trace_a(self.matrix, self.dim_a, self.dim_b)


def realign(op, dim_a: int, dim_b: int) -> np.ndarray:
    """Realigned matrix: ``R[m*dim_a + n, mu*dim_b + nu] = op[m*dim_b + mu, n*dim_b + nu]``.

    Maps a ``(dim_a*dim_b)``-square matrix to a ``dim_a**2 x dim_b**2`` one. The
    map is a fixed permutation of entries, hence linear.
    """
    op = as_matrix(op)
    _check_square(op, dim_a, dim_b)
    t = op.reshape(dim_a, dim_b, dim_a, dim_b).transpose(0, 2, 1, 3)
    return t.reshape(dim_a * dim_a, dim_b * dim_b)


def unrealign(r, dim_a: int, dim_b: int) -> np.ndarray:
    """Exact inverse of :func:`realign`."""
    r = as_matrix(r)
    if r.shape != (dim_a * dim_a, dim_b * dim_b):
        raise ValueError(f"realigned matrix of shape {r.shape} does not match dims ({dim_a}, {dim_b})")
    t = r.reshape(dim_a, dim_a, dim_b, dim_b).transpose(0, 2, 1, 3)
    return t.reshape(dim_a * dim_b, dim_a * dim_b)


def partial_trace_b(op, dim_a: int, dim_b: int) -> np.ndarray:
    op = as_matrix(op)
    _check_square(op, dim_a, dim_b)
    return np.einsum("ajbj->ab", op.reshape(dim_a, dim_b, dim_a, dim_b))


def partial_trace_a(op, dim_a: int, dim_b: int) -> np.ndarray:
    op = as_matrix(op)
    _check_square(op, dim_a, dim_b)
    return np.einsum("iaib->ab", op.reshape(dim_a, dim_b, dim_a, dim_b))


def marginal_a(state: BipartiteState) -> np.ndarray:
    """Reduced density matrix of subsystem A."""
    return state.rho_a


def marginal_b(state: BipartiteState) -> np.ndarray:
    """Reduced density matrix of subsystem B."""
    return state.rho_b


def partial_transpose(op, dim_a: int, dim_b: int, side: str = "b") -> np.ndarray:
    """Transpose the A or B tensor factor in the computational product basis."""
    op = as_matrix(op)
    _check_square(op, dim_a, dim_b)
    t = op.reshape(dim_a, dim_b, dim_a, dim_b)
    if side == "b":
        t = t.transpose(0, 3, 2, 1)
    elif side == "a":
        t = t.transpose(2, 1, 0, 3)
    else:
        raise ValueError(f"side must be 'a' or 'b', got {side!r}")
    return t.reshape(dim_a * dim_b, dim_a * dim_b)


def partial_transpose_b(state: BipartiteState) -> np.ndarray:
    return partial_transpose(state.matrix, state.dim_a, state.dim_b, "b")


def schmidt_coefficients(op, dim_a: int, dim_b: int) -> np.ndarray:
    """Operator Schmidt coefficients, i.e. the singular values of the realigned matrix.

    All ``min(dim_a**2, dim_b**2)`` values are returned, including numerical zeros;
    callers threshold as needed.
    """
    return singular_values(realign(op, dim_a, dim_b))


def purity(m) -> float:
    """``Re tr(m @ m)``; for a density matrix this lies in ``[1/N, 1]``."""
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise ValueError("purity needs a square matrix")
    return float(np.einsum("ij,ji->", m, m).real)


def pure_state(psi, atol: float = ATOL) -> BipartiteState:
    """Projector onto the vector whose coefficient matrix is ``psi``.

    ``psi`` is ``dim_a x dim_b`` with ``psi[m, mu]`` the amplitude of ``|m>|mu>``;
    it must have unit Frobenius norm.
    """
    psi = as_matrix(psi)
    norm_sq = hs_norm_sq(psi)
    if abs(norm_sq - 1) > atol:
        raise InvalidStateError(f"coefficient matrix has squared norm {norm_sq:.12g}, expected 1")
    v = psi.reshape(-1)
    return BipartiteState(psi.shape[0], psi.shape[1], np.outer(v, v.conj()), atol=atol)


def product_state(rho_a, rho_b) -> BipartiteState:
    rho_a = as_matrix(rho_a)
    rho_b = as_matrix(rho_b)
    return BipartiteState(rho_a.shape[0], rho_b.shape[0], np.kron(rho_a, rho_b))
