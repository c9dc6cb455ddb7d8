"""Linear and antilinear super-operators on local operator spaces.

A :class:`SuperOp` acts as ``A -> phase * X @ f(A) @ Y`` where ``f`` is one of the
identity, transposition, complex conjugation or adjoint. This covers identities,
transpositions, unitary and antiunitary conjugations and the sandwich maps
``A -> X A Y``, and it gives the tensor product of two such maps an unambiguous
action on arbitrary (non-product) composite operators.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .bipartite import BipartiteState, partial_trace_a, partial_trace_b, partial_transpose
from .linalg import as_matrix, hs_inner, hs_norm_sq, operator_norm

#: slack added to ``n * eps`` when auditing the norm condition
AUDIT_SLACK = 1e-9


@dataclass(frozen=True, eq=False)
class SuperOp:
    dim: int
    left: np.ndarray
    right: np.ndarray
    phase: complex = 1.0
    conjugate_input: bool = False
    transpose_input: bool = False

    def __post_init__(self):
        left = as_matrix(self.left)
        right = as_matrix(self.right)
        if left.shape != (self.dim, self.dim) or right.shape != (self.dim, self.dim):
            raise ValueError(f"left/right factors must be {self.dim}x{self.dim}")
        if abs(abs(self.phase) - 1) > 1e-12:
            raise ValueError(f"phase must have unit modulus, got {self.phase!r}")
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)
        object.__setattr__(self, "phase", complex(self.phase))

    @property
    def antilinear(self) -> bool:
        return self.conjugate_input

    def __call__(self, a) -> np.ndarray:
        return apply(self, a)

    def with_phase(self, phase: complex) -> "SuperOp":
        """Same map multiplied by an extra unit-modulus factor."""
        return SuperOp(self.dim, self.left, self.right, self.phase * phase,
                       self.conjugate_input, self.transpose_input)

    def norm_bound(self) -> float:
        """Upper bound ``||X|| * ||Y||`` on the HS-norm gain of the map."""
        return operator_norm(self.left) * operator_norm(self.right)


def identity(dim: int) -> SuperOp:
    eye = np.eye(dim)
    return SuperOp(dim, eye, eye)


def transposition(dim: int) -> SuperOp:
    eye = np.eye(dim)
    return SuperOp(dim, eye, eye, transpose_input=True)


def complex_conjugation(dim: int) -> SuperOp:
    eye = np.eye(dim)
    return SuperOp(dim, eye, eye, conjugate_input=True)


def sandwich(x, y, phase: complex = 1.0) -> SuperOp:
    """The linear map ``A -> phase * x @ A @ y``."""
    x = as_matrix(x)
    return SuperOp(x.shape[0], x, y, phase)


def unitary_conjugation(u, antiunitary: bool = False) -> SuperOp:
    """``A -> U A U^dagger``, or ``A -> U conj(A) U^dagger`` when ``antiunitary``."""
    u = as_matrix(u)
    return SuperOp(u.shape[0], u, u.conj().T, conjugate_input=antiunitary)


def _input_map(a: np.ndarray, conjugate: bool, transpose: bool) -> np.ndarray:
    if conjugate:
        a = a.conj()
    if transpose:
        a = a.T
    return a


def apply(e: SuperOp, a) -> np.ndarray:
    """Apply ``e`` to a ``dim x dim`` matrix."""
    a = as_matrix(a)
    if a.shape != (e.dim, e.dim):
        raise ValueError(f"super-operator on {e.dim}x{e.dim} matrices got shape {a.shape}")
    return e.phase * (e.left @ _input_map(a, e.conjugate_input, e.transpose_input) @ e.right)


def apply_tensor(e_a: SuperOp, e_b: SuperOp, op) -> np.ndarray:
    """Action of ``e_a (x) e_b`` on an arbitrary composite operator.

    Conjugation (when both maps are antilinear) is applied once to the composite
    entries, transpositions become partial transpositions of the matching
    factor, then the local sandwiches and phases are applied.
    """
    if e_a.conjugate_input != e_b.conjugate_input:
        raise ValueError("tensor product needs both maps linear or both antilinear")
    dim_a, dim_b = e_a.dim, e_b.dim
    op = as_matrix(op)
    if op.shape != (dim_a * dim_b, dim_a * dim_b):
        raise ValueError(f"operator of shape {op.shape} does not act on {dim_a}x{dim_b} system")
    if e_a.conjugate_input:
        op = op.conj()
    if e_a.transpose_input:
        op = partial_transpose(op, dim_a, dim_b, "a")
    if e_b.transpose_input:
        op = partial_transpose(op, dim_a, dim_b, "b")
    x = np.kron(e_a.left, e_b.left)
    y = np.kron(e_a.right, e_b.right)
    return (e_a.phase * e_b.phase) * (x @ op @ y)


@dataclass(frozen=True, eq=False)
class SuperOpFamily:
    """The ``n`` pairs of local maps plus the bounds ``eps_a``, ``eps_b``.

    All maps must be jointly linear or jointly antilinear.
    """

    ops_a: tuple[SuperOp, ...]
    ops_b: tuple[SuperOp, ...]
    eps_a: float = 1.0
    eps_b: float = 1.0

    def __post_init__(self):
        ops_a = tuple(self.ops_a)
        ops_b = tuple(self.ops_b)
        if not ops_a or len(ops_a) != len(ops_b):
            raise ValueError("need n >= 1 maps on each side, with equal counts")
        if len({e.dim for e in ops_a}) != 1 or len({e.dim for e in ops_b}) != 1:
            raise ValueError("all maps on one side must act on the same dimension")
        if len({e.conjugate_input for e in ops_a + ops_b}) != 1:
            raise ValueError("maps must be jointly linear or jointly antilinear")
        if self.eps_a < 0 or self.eps_b < 0:
            raise ValueError("eps bounds must be non-negative")
        object.__setattr__(self, "ops_a", ops_a)
        object.__setattr__(self, "ops_b", ops_b)

    @property
    def n(self) -> int:
        return len(self.ops_a)

    @property
    def dims(self) -> tuple[int, int]:
        return self.ops_a[0].dim, self.ops_b[0].dim

    @property
    def antilinear(self) -> bool:
        return self.ops_a[0].conjugate_input

    def permuted(self, order: Sequence[int]) -> "SuperOpFamily":
        return SuperOpFamily(tuple(self.ops_a[i] for i in order),
                             tuple(self.ops_b[i] for i in order), self.eps_a, self.eps_b)


def norm_bound_eps(ops: Sequence[SuperOp]) -> float:
    """Rigorous eps from operator norms: ``n^-1 * sum_k ||X_k||^2 ||Y_k||^2``."""
    return sum(e.norm_bound() ** 2 for e in ops) / len(ops)


def random_density(dim: int, rng: np.random.Generator, rank: int | None = None) -> np.ndarray:
    """``G G^dagger / tr(G G^dagger)`` with ``G`` a ``dim x rank`` complex Gaussian matrix."""
    rank = dim if rank is None else rank
    g = rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def _audit_draw(dim: int, rng: np.random.Generator) -> np.ndarray:
    # mixed ranks so that pure states, where the supremum sits, get drawn too
    return random_density(dim, rng, rank=int(rng.integers(1, dim + 1)))


def _side_ratio(ops: Sequence[SuperOp], rng: np.random.Generator) -> float:
    return sum(hs_norm_sq(apply(e, _audit_draw(e.dim, rng))) for e in ops) / len(ops)


def estimate_breve_epsilon(ops: Sequence[SuperOp], samples: int = 200, seed=0) -> float:
    """Sampled lower bound on ``sup n^-1 sum_k ||E_k(sigma_k)||_HS^2`` over density tuples.

    Draws come from one seeded stream, so the estimate is non-decreasing in
    ``samples`` for a fixed seed.
    """
    if not ops:
        raise ValueError("need at least one super-operator")
    rng = np.random.default_rng(seed)
    return max(_side_ratio(ops, rng) for _ in range(samples))


def check_condicio(fam: SuperOpFamily, samples: int = 200, seed=0) -> tuple[bool, float]:
    """Randomized audit of the norm condition on both sides of ``fam``.

    Returns ``(ok, worst)`` where ``worst`` is the largest observed
    ``n^-1 sum_k ||E_k(sigma_k)||^2`` over both sides; ``ok`` is False when some
    draw exceeds its side's ``eps`` by more than :data:`AUDIT_SLACK`.
    """
    rng = np.random.default_rng(seed)
    max_a = max_b = 0.0
    for _ in range(samples):
        max_a = max(max_a, _side_ratio(fam.ops_a, rng))
        max_b = max(max_b, _side_ratio(fam.ops_b, rng))
    ok = max_a <= fam.eps_a + AUDIT_SLACK and max_b <= fam.eps_b + AUDIT_SLACK
    return bool(ok), float(max(max_a, max_b))


def build_rho_e(state: BipartiteState | np.ndarray, fam: SuperOpFamily, dims=None) -> np.ndarray:
    """The operator ``n^-1 [sum_k (E_k^A (x) E_k^B)(rho) + sum_{k!=l} (E_k^A (x) E_l^B)(rho_A (x) rho_B)]``.

    In general neither Hermitian nor of unit trace.
    """
    if isinstance(state, BipartiteState):
        rho, (dim_a, dim_b) = state.matrix, state.dims
        rho_a, rho_b = state.rho_a, state.rho_b
    else:
        dim_a, dim_b = dims
        rho = as_matrix(state)
        rho_a, rho_b = partial_trace_b(rho, dim_a, dim_b), partial_trace_a(rho, dim_a, dim_b)
    if fam.dims != (dim_a, dim_b):
        raise ValueError(f"family acts on {fam.dims}, state on {(dim_a, dim_b)}")
    images_a = [apply(e, rho_a) for e in fam.ops_a]
    images_b = [apply(e, rho_b) for e in fam.ops_b]
    out = np.zeros_like(rho)
    for k in range(fam.n):
        out += apply_tensor(fam.ops_a[k], fam.ops_b[k], rho)
        for l in range(fam.n):
            if l != k:
                out += np.kron(images_a[k], images_b[l])
    return out / fam.n


def cross_term(ops: Sequence[SuperOp], rho_local: np.ndarray) -> float:
    """``n^-1 sum_{k<l} (<E_k(rho), E_l(rho)> + c.c.)``."""
    images = [apply(e, rho_local) for e in ops]
    total = 0.0
    for k in range(len(images)):
        for l in range(k + 1, len(images)):
            total += 2.0 * hs_inner(images[k], images[l]).real
    return total / len(ops)
