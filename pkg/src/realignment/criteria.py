"""Realignment-type separability tests.

Every test returns a :class:`CriterionReport`. The inequalities hold for all
separable states, so ``violated`` certifies entanglement; a non-violation
proves nothing.
"""

from __future__ import annotations

import json
import logging
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .bipartite import BipartiteState, partial_transpose, partial_transpose_b, purity, realign
from .linalg import ATOL, NumericalError, as_matrix, operator_norm, trace_norm
from .superop import SuperOpFamily, build_rho_e, cross_term

log = logging.getLogger(__name__)

DEFAULT_TOL = 1e-9
DEFAULT_THETAS = (0.0, math.pi / 4, math.pi / 2, 3 * math.pi / 4, math.pi)

RC = "rc"
GENERALIZED_RC = "generalized_rc"
ZHANG = "zhang"
OMEGA = "omega_family"
THETA = "theta"
MIRROR_THETA = "mirror_theta"
TRANSPOSE_THETA = "transpose_theta"
FILTER = "filter"
PPT = "ppt"

#: criteria that take a single angle parameter
THETA_CRITERIA = (THETA, MIRROR_THETA, TRANSPOSE_THETA)


@dataclass
class CriterionReport:
    criterion_id: str
    params: dict
    lhs: float
    rhs: float
    margin: float = field(init=False)
    violated: bool = field(init=False)
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        self.lhs = float(self.lhs)
        self.rhs = float(self.rhs)
        if not (math.isfinite(self.lhs) and math.isfinite(self.rhs)):
            raise ValueError(f"{self.criterion_id}: non-finite sides lhs={self.lhs}, rhs={self.rhs}")
        self.margin = self.lhs - self.rhs
        self.violated = bool(self.margin > self.tol)

    @property
    def theta(self) -> float | None:
        return self.params.get("theta")

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _sqrt_radicand(value: float, what: str) -> float:
    if value < -ATOL:
        raise ValueError(f"negative radicand {value:.6g} in {what}; the eps bound is invalid")
    return math.sqrt(max(value, 0.0))


def _realigned_norm(op, state: BipartiteState) -> float:
    return trace_norm(realign(op, state.dim_a, state.dim_b))


def _check_theta(theta: float, upper: float, closed: bool) -> None:
    ok = 0.0 <= theta <= upper if closed else 0.0 <= theta < upper
    if not ok:
        bracket = "]" if closed else "["
        raise ValueError(f"theta={theta} outside [0, {upper:.6g}{bracket}")


def rc(state: BipartiteState, tol: float = DEFAULT_TOL) -> CriterionReport:
    """Realignment criterion: ``||R(rho)||_tr <= 1``."""
    return CriterionReport(RC, {}, _realigned_norm(state.matrix, state), 1.0, tol=tol)


def generalized_rc(state: BipartiteState, fam: SuperOpFamily, tol: float = DEFAULT_TOL) -> CriterionReport:
    """Generalized realignment inequality for an arbitrary super-operator family."""
    lhs = _realigned_norm(build_rho_e(state, fam), state)
    rad_a = fam.eps_a + cross_term(fam.ops_a, state.rho_a)
    rad_b = fam.eps_b + cross_term(fam.ops_b, state.rho_b)
    rhs = _sqrt_radicand(rad_a, "A-side bound") * _sqrt_radicand(rad_b, "B-side bound")
    params = {"n": float(fam.n), "eps_a": fam.eps_a, "eps_b": fam.eps_b}
    return CriterionReport(GENERALIZED_RC, params, lhs, rhs, tol=tol)


def zhang(state: BipartiteState, tol: float = DEFAULT_TOL) -> CriterionReport:
    """``||R(rho - rho_A (x) rho_B)||_tr <= sqrt((1 - tr rho_A^2)(1 - tr rho_B^2))``."""
    rho_a, rho_b = state.rho_a, state.rho_b
    lhs = _realigned_norm(state.matrix - np.kron(rho_a, rho_b), state)
    rhs = _sqrt_radicand(1 - purity(rho_a), "A-side bound") * _sqrt_radicand(1 - purity(rho_b), "B-side bound")
    return CriterionReport(ZHANG, {}, lhs, rhs, tol=tol)


def _cos_bound(cos_t: float, pur_a: float, pur_b: float) -> float:
    rad_a, rad_b = 1 + cos_t * pur_a, 1 + cos_t * pur_b
    rhs = _sqrt_radicand(rad_a, "A-side bound") * _sqrt_radicand(rad_b, "B-side bound")
    assert -ATOL <= rad_a <= 2 + ATOL and -ATOL <= rad_b <= 2 + ATOL, (rad_a, rad_b)
    return rhs


def omega_family(state: BipartiteState, omega: float, theta: float, phi: float,
                 tol: float = DEFAULT_TOL) -> CriterionReport:
    """Three-angle family of inequalities built from phase-rotated identities."""
    rho_a, rho_b = state.rho_a, state.rho_b
    c_rho = (np.exp(1j * omega) + np.exp(1j * (omega + theta + phi))) / 2
    c_prod = (np.exp(1j * (omega + theta)) + np.exp(1j * (omega + phi))) / 2
    lhs = _realigned_norm(c_rho * state.matrix + c_prod * np.kron(rho_a, rho_b), state)
    pur_a, pur_b = purity(rho_a), purity(rho_b)
    rhs = (_sqrt_radicand(1 + math.cos(theta) * pur_a, "A-side bound")
           * _sqrt_radicand(1 + math.cos(phi) * pur_b, "B-side bound"))
    return CriterionReport(OMEGA, {"omega": omega, "theta": theta, "phi": phi}, lhs, rhs, tol=tol)


def theta_criterion(state: BipartiteState, theta: float, tol: float = DEFAULT_TOL) -> CriterionReport:
    """``||R(rho + cos(theta) rho_A (x) rho_B)||_tr <= sqrt((1 + cos(theta) P_A)(1 + cos(theta) P_B))``.

    ``theta = pi/2`` is the plain realignment criterion and ``theta = pi`` the
    criterion of :func:`zhang`.
    """
    _check_theta(theta, math.pi, closed=True)
    rho_a, rho_b = state.rho_a, state.rho_b
    c = math.cos(theta)
    lhs = _realigned_norm(state.matrix + c * np.kron(rho_a, rho_b), state)
    rhs = _cos_bound(c, purity(rho_a), purity(rho_b))
    return CriterionReport(THETA, {"theta": theta}, lhs, rhs, tol=tol)


def mirror_theta_criterion(state: BipartiteState, theta: float, tol: float = DEFAULT_TOL) -> CriterionReport:
    """Variant with ``phi = theta``: operator ``(1 + e^{2i theta})/2 rho + e^{i theta} rho_A (x) rho_B``."""
    _check_theta(theta, 2 * math.pi, closed=False)
    rho_a, rho_b = state.rho_a, state.rho_b
    op = (1 + np.exp(2j * theta)) / 2 * state.matrix + np.exp(1j * theta) * np.kron(rho_a, rho_b)
    lhs = _realigned_norm(op, state)
    rhs = _cos_bound(math.cos(theta), purity(rho_a), purity(rho_b))
    return CriterionReport(MIRROR_THETA, {"theta": theta}, lhs, rhs, tol=tol)


def transpose_pairing(m) -> float:
    """``tr(m^T m)``, which is real for Hermitian ``m`` but differs from ``tr(m^2)`` unless ``m`` is real."""
    m = as_matrix(m)
    return float(np.trace(m.T @ m).real)


def transpose_theta_criterion(state: BipartiteState, theta: float, tol: float = DEFAULT_TOL) -> CriterionReport:
    """Inequality from the family ``{e^{i theta} I, e^{-i theta} T}``, ``{I, I}``.

    The B-side bound uses ``tr(rho_B^T rho_B)``; both it and ``tr(rho_B^2)`` are
    recorded in ``params``.
    """
    _check_theta(theta, math.pi, closed=True)
    dim_a, dim_b = state.dims
    rho_a, rho_b = state.rho_a, state.rho_b
    rho_pt = partial_transpose(state.matrix, dim_a, dim_b, "b")
    op = (rho_pt + state.matrix) / 2 + (np.exp(1j * theta) * np.kron(rho_a, rho_b)
                                         + np.exp(-1j * theta) * np.kron(rho_a, rho_b.T)) / 2
    lhs = _realigned_norm(op, state)
    pairing_b = transpose_pairing(rho_b)
    rhs = _cos_bound(math.cos(theta), purity(rho_a), pairing_b)
    params = {"theta": theta, "tr_rhoBT_rhoB": pairing_b, "purity_b": purity(rho_b)}
    return CriterionReport(TRANSPOSE_THETA, params, lhs, rhs, tol=tol)


def filter_criterion(state: BipartiteState, f_a, f_b, theta: float,
                     tol: float = DEFAULT_TOL) -> CriterionReport:
    """Local-filtering enhancement of :func:`theta_criterion` with contractions ``f_a``, ``f_b``."""
    _check_theta(theta, math.pi, closed=True)
    f_a, f_b = as_matrix(f_a), as_matrix(f_b)
    for name, f, dim in (("f_a", f_a, state.dim_a), ("f_b", f_b, state.dim_b)):
        if f.shape != (dim, dim):
            raise ValueError(f"{name} must be {dim}x{dim}, got {f.shape}")
        norm = operator_norm(f)
        if norm > 1 + ATOL:
            raise ValueError(f"{name} has operator norm {norm:.6g} > 1; rescale it by 1/{norm:.6g}")
    f = np.kron(f_a, f_b)
    filtered = f @ state.matrix @ f.conj().T
    fa_rho = f_a @ state.rho_a @ f_a.conj().T
    fb_rho = f_b @ state.rho_b @ f_b.conj().T
    c = math.cos(theta)
    lhs = _realigned_norm(filtered + c * np.kron(fa_rho, fb_rho), state)
    rhs = _cos_bound(c, purity(fa_rho), purity(fb_rho))
    return CriterionReport(FILTER, {"theta": theta}, lhs, rhs, tol=tol)


def ppt_check(state: BipartiteState, tol: float = DEFAULT_TOL) -> CriterionReport:
    """Peres-Horodecki test on the partial transpose over B.

    ``lhs = max(0, -lambda_min)`` so that both sides stay non-negative; the raw
    minimum eigenvalue is kept in ``params["min_eigenvalue"]``.
    """
    min_eig = float(np.linalg.eigvalsh(partial_transpose_b(state))[0])
    return CriterionReport(PPT, {"min_eigenvalue": min_eig}, max(0.0, -min_eig), 0.0, tol=tol)


def evaluate(criterion_id: str, state: BipartiteState, theta: float | None = None,
             tol: float = DEFAULT_TOL) -> CriterionReport:
    """Dispatch a state-only criterion by name."""
    if criterion_id in THETA_CRITERIA:
        if theta is None:
            raise ValueError(f"criterion {criterion_id} needs theta")
        fn = {THETA: theta_criterion, MIRROR_THETA: mirror_theta_criterion,
              TRANSPOSE_THETA: transpose_theta_criterion}[criterion_id]
        return fn(state, theta, tol=tol)
    fn = {RC: rc, ZHANG: zhang, PPT: ppt_check}.get(criterion_id)
    if fn is None:
        raise ValueError(f"unknown criterion {criterion_id!r}")
    return fn(state, tol=tol)


def criterion_plan(criteria, thetas) -> list[tuple[str, float | None]]:
    """``(criterion_id, theta)`` pairs sorted by id, then by theta."""
    plan = []
    for cid in sorted(set(criteria)):
        if cid in THETA_CRITERIA:
            plan.extend((cid, t) for t in sorted(set(thetas)))
        else:
            plan.append((cid, None))
    return plan


def run_all(state: BipartiteState, theta_grid=DEFAULT_THETAS, tol: float = DEFAULT_TOL,
            criteria=(RC, ZHANG, PPT, THETA, TRANSPOSE_THETA), errors: list | None = None) -> list[CriterionReport]:
    """Evaluate the standard battery, ordered by criterion id then theta.

    A failing criterion does not abort the batch: it is logged, appended to
    ``errors`` as ``(criterion_id, theta, message)`` when given, and skipped.
    """
    reports = []
    for cid, theta in criterion_plan(criteria, theta_grid):
        try:
            reports.append(evaluate(cid, state, theta, tol=tol))
        except (ValueError, ArithmeticError, NumericalError, np.linalg.LinAlgError) as exc:
            log.warning("criterion %s (theta=%s) failed: %s", cid, theta, exc)
            if errors is not None:
                errors.append((cid, theta, str(exc)))
    return reports
