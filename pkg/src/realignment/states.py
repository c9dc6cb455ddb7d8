"""Test-state families and seeded random generators."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.stats import unitary_group

from .bipartite import BipartiteState, pure_state
from .superop import random_density  # noqa: F401  (re-exported)


def _check_unit_interval(name: str, value: float) -> None:
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {value}")


def horodecki_a(a: float) -> BipartiteState:
    """Horodecki's two-qutrit PPT entangled family, entangled for ``0 < a < 1``."""
    _check_unit_interval("a", a)
    m = np.zeros((9, 9))
    for i in (0, 4, 8):
        for j in (0, 4, 8):
            m[i, j] = a
    for i in (1, 2, 3, 5, 7):
        m[i, i] = a
    m[6, 6] = m[8, 8] = (1 + a) / 2
    m[6, 8] = m[8, 6] = np.sqrt(1 - a * a) / 2
    return BipartiteState(3, 3, m / (8 * a + 1))


def horodecki_mixture(a: float, p: float) -> BipartiteState:
    """``p * horodecki_a(a) + (1 - p) * I/9``."""
    _check_unit_interval("p", p)
    rho = horodecki_a(a).matrix
    return BipartiteState(3, 3, p * rho + (1 - p) * np.eye(9) / 9)


def two_qubit_tsr(t: float, s: float, r: float) -> BipartiteState:
    """Two-qubit family, separable iff ``t == 0``.

    Basis order is ``|11>, |12>, |21>, |22>``.
    """
    m = 0.5 * np.array([
        [1 + r, 0, 0, t],
        [0, 0, 0, 0],
        [0, 0, s - r, 0],
        [t, 0, 0, 1 - s],
    ], dtype=float)
    return BipartiteState(2, 2, m)


def max_entangled(d: int) -> BipartiteState:
    """Projector onto ``sum_k |kk> / sqrt(d)``."""
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")
    return pure_state(np.eye(d) / np.sqrt(d))


def isotropic_identity_mixture(d: int, p: float) -> BipartiteState:
    """``p * |Phi><Phi| + (1 - p) * I / d^2`` with ``Phi`` maximally entangled."""
    _check_unit_interval("p", p)
    phi = max_entangled(d).matrix
    return BipartiteState(d, d, p * phi + (1 - p) * np.eye(d * d) / (d * d))


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    return unitary_group.rvs(dim, random_state=rng)


def random_pure_coefficients(dim_a: int, dim_b: int, rng: np.random.Generator,
                             rank: int | None = None) -> np.ndarray:
    """Unit-norm complex Gaussian coefficient matrix, optionally of given rank."""
    if rank is None:
        psi = rng.standard_normal((dim_a, dim_b)) + 1j * rng.standard_normal((dim_a, dim_b))
    else:
        left = rng.standard_normal((dim_a, rank)) + 1j * rng.standard_normal((dim_a, rank))
        right = rng.standard_normal((rank, dim_b)) + 1j * rng.standard_normal((rank, dim_b))
        psi = left @ right
    return psi / np.linalg.norm(psi)


@dataclass(frozen=True, eq=False)
class SeparableDecomposition:
    weights: np.ndarray
    locals_a: list[np.ndarray]
    locals_b: list[np.ndarray]

    def __len__(self) -> int:
        return len(self.weights)


def random_separable(dim_a: int, dim_b: int, terms: int, seed) -> tuple[BipartiteState, SeparableDecomposition]:
    """Random finite convex mixture of product states, with its decomposition.

    Weights are uniform on the simplex; local states come from the Gaussian
    (Ginibre) density sampler.
    """
    if terms < 1:
        raise ValueError("need at least one term")
    rng = np.random.default_rng(seed)
    weights = rng.dirichlet(np.ones(terms))
    locals_a = [random_density(dim_a, rng) for _ in range(terms)]
    locals_b = [random_density(dim_b, rng) for _ in range(terms)]
    rho = sum(w * np.kron(ra, rb) for w, ra, rb in zip(weights, locals_a, locals_b))
    # symmetrize away rounding so validation sees an exactly Hermitian matrix
    rho = (rho + rho.conj().T) / 2
    return BipartiteState(dim_a, dim_b, rho), SeparableDecomposition(weights, locals_a, locals_b)


FAMILIES = {
    "horodecki_a": (horodecki_a, ("a",)),
    "horodecki_mixture": (horodecki_mixture, ("a", "p")),
    "two_qubit_tsr": (two_qubit_tsr, ("t", "s", "r")),
    "max_entangled": (max_entangled, ("dim",)),
    "isotropic_identity_mixture": (isotropic_identity_mixture, ("dim", "p")),
}

_INT_PARAMS = {"dim"}


@dataclass
class FamilyParams:
    """A named state family with (possibly partial) parameter values.

    A value may be a number or a linear reference ``"<c>*<name>"`` to another
    parameter, e.g. ``r="0.5*s"``, resolved at :meth:`build` time.
    """

    family: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; choose from {sorted(FAMILIES)}")
        names = FAMILIES[self.family][1]
        for key in self.params:
            if key not in names:
                raise ValueError(f"family {self.family} has no parameter {key!r} (expects {names})")

    @property
    def param_names(self) -> tuple[str, ...]:
        return FAMILIES[self.family][1]

    @classmethod
    def parse(cls, family: str, pairs) -> "FamilyParams":
        """Build from ``key=value`` strings."""
        params = {}
        for pair in pairs:
            key, sep, value = pair.partition("=")
            if not sep or not key:
                raise ValueError(f"expected key=value, got {pair!r}")
            params[key.strip()] = _parse_value(value.strip())
        return cls(family, params)

    def with_values(self, **values) -> "FamilyParams":
        return FamilyParams(self.family, {**self.params, **values})

    def resolve(self) -> dict:
        resolved = {k: v for k, v in self.params.items() if not isinstance(v, tuple)}
        for key, value in self.params.items():
            if isinstance(value, tuple):
                coeff, ref = value
                if ref not in resolved:
                    raise ValueError(f"{key} refers to unset parameter {ref!r}")
                resolved[key] = coeff * resolved[ref]
        missing = [n for n in self.param_names if n not in resolved]
        if missing:
            raise ValueError(f"family {self.family} is missing parameters {missing}")
        for name in _INT_PARAMS & resolved.keys():
            if float(resolved[name]) != int(resolved[name]):
                raise ValueError(f"{name} must be an integer")
            resolved[name] = int(resolved[name])
        return resolved

    def build(self) -> BipartiteState:
        builder, names = FAMILIES[self.family]
        values = self.resolve()
        return builder(*(values[n] for n in names))


def _parse_value(text: str):
    if "*" in text:
        coeff, _, ref = text.partition("*")
        return float(coeff), ref.strip()
    return float(text)

