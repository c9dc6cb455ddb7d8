"""Parameter-grid scans and bisection of detection boundaries over state families.

Angles are carried in units of pi (``theta_over_pi``) throughout this module,
matching the CLI; they are converted to radians only when a criterion is
evaluated.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .bipartite import InvalidStateError
from .criteria import DEFAULT_TOL, THETA_CRITERIA, criterion_plan, evaluate
from .states import FamilyParams

SCAN_HEADER = ["axis1", "axis1_value", "axis2", "axis2_value", "criterion_id", "theta_over_pi",
               "lhs", "rhs", "margin", "violated", "status"]
BOUNDARY_HEADER = ["fixed_param", "fixed_value", "sweep_param", "boundary_value", "iterations", "status"]

PRESCAN_POINTS = 32


def fmt(x) -> str:
    """Render one CSV cell; floats get 12 significant digits, independent of locale."""
    if x is None:
        return ""
    if isinstance(x, str):
        return x
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    return format(float(x), ".12g")


@dataclass(frozen=True)
class Axis:
    name: str
    lo: float
    hi: float
    steps: int

    def __post_init__(self):
        if self.steps < 2:
            raise ValueError(f"axis {self.name} needs at least 2 steps")

    @property
    def values(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.steps)

    @classmethod
    def parse(cls, text: str, steps_required: bool = True) -> "Axis":
        """Parse ``name:lo:hi:steps`` (or ``name:lo:hi`` when steps are optional)."""
        parts = text.split(":")
        if len(parts) == 3 and not steps_required:
            parts.append(str(PRESCAN_POINTS))
        if len(parts) != 4:
            raise ValueError(f"expected name:lo:hi{':steps' if steps_required else ''}, got {text!r}")
        name, lo, hi, steps = parts
        return cls(name, float(lo), float(hi), int(steps))


@dataclass
class ScanSpec:
    family: FamilyParams
    axis1: Axis
    axis2: Axis
    criteria: tuple[str, ...]
    thetas_over_pi: tuple[float, ...] = (0.0, 0.5, 0.75, 1.0)
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        if self.axis1.name == self.axis2.name:
            raise ValueError("scan axes must name distinct parameters")
        for axis in (self.axis1, self.axis2):
            if axis.name not in self.family.param_names:
                raise ValueError(f"family {self.family.family} has no parameter {axis.name!r}")


def _evaluate_point(family: FamilyParams, plan, tol: float):
    state = family.build()
    return [evaluate(cid, state, None if t is None else t * math.pi, tol=tol) for cid, t in plan]


def scan(spec: ScanSpec) -> list[dict]:
    """Evaluate every criterion on every grid point.

    Rows run axis1-major, then axis2, then in criterion order. Grid points
    whose parameters do not give a density matrix yield rows with status
    ``invalid`` and empty numeric fields.
    """
    plan = criterion_plan(spec.criteria, spec.thetas_over_pi)
    rows = []
    for v1 in spec.axis1.values:
        for v2 in spec.axis2.values:
            point = spec.family.with_values(**{spec.axis1.name: float(v1), spec.axis2.name: float(v2)})
            base = {"axis1": spec.axis1.name, "axis1_value": float(v1),
                    "axis2": spec.axis2.name, "axis2_value": float(v2)}
            try:
                reports = _evaluate_point(point, plan, spec.tol)
            except InvalidStateError:
                reports = None
            for i, (cid, t) in enumerate(plan):
                row = dict(base, criterion_id=cid, theta_over_pi=t)
                if reports is None:
                    row.update(lhs=None, rhs=None, margin=None, violated=None, status="invalid")
                else:
                    r = reports[i]
                    row.update(lhs=r.lhs, rhs=r.rhs, margin=r.margin, violated=r.violated, status="ok")
                rows.append(row)
    return rows


@dataclass
class BisectionResult:
    value: float | None
    iterations: int
    status: str


def bisect_sign_change(f: Callable[[float], float], lo: float, hi: float, tol: float = 1e-6,
                       max_iter: int = 60, prescan: int = PRESCAN_POINTS) -> BisectionResult:
    """Locate the first sign change of ``f`` on ``[lo, hi]``.

    ``f`` is sampled at ``prescan`` equispaced points to bracket the first
    change between "positive" and "non-positive", then the bracket is bisected
    until its width is at most ``tol``. Points where ``f`` raises
    :class:`InvalidStateError` are skipped during the pre-scan.

    Status is ``ok``, ``no-crossing``, ``max-iter`` or ``invalid``.
    """
    xs, signs = [], []
    for x in np.linspace(lo, hi, prescan):
        try:
            signs.append(f(float(x)) > 0)
        except InvalidStateError:
            continue
        xs.append(float(x))
    bracket = next(((xs[i], xs[i + 1], signs[i]) for i in range(len(xs) - 1) if signs[i] != signs[i + 1]), None)
    if bracket is None:
        return BisectionResult(None, 0, "no-crossing")
    a, b, sign_a = bracket
    it = 0
    while b - a > tol and it < max_iter:
        mid = 0.5 * (a + b)
        try:
            positive = f(mid) > 0
        except InvalidStateError:
            return BisectionResult(None, it, "invalid")
        it += 1
        if positive == sign_a:
            a = mid
        else:
            b = mid
    status = "ok" if b - a <= tol else "max-iter"
    return BisectionResult(0.5 * (a + b), it, status)


@dataclass
class BoundarySpec:
    family: FamilyParams
    sweep: Axis
    fixed: Axis
    criterion: str
    theta_over_pi: float | None = None
    bisect_tol: float = 1e-6
    max_iter: int = 60
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        if self.sweep.name == self.fixed.name:
            raise ValueError("sweep and fixed axes must name distinct parameters")
        if self.criterion in THETA_CRITERIA and self.theta_over_pi is None:
            raise ValueError(f"criterion {self.criterion} needs a theta")


def boundary(spec: BoundarySpec) -> list[dict]:
    """Bisect the criterion margin along the sweep axis for every fixed-axis value."""
    theta = None if spec.theta_over_pi is None else spec.theta_over_pi * math.pi
    rows = []
    for fv in spec.fixed.values:
        def margin(x: float, fv=float(fv)) -> float:
            point = spec.family.with_values(**{spec.fixed.name: fv, spec.sweep.name: x})
            return evaluate(spec.criterion, point.build(), theta, tol=spec.tol).margin

        res = bisect_sign_change(margin, spec.sweep.lo, spec.sweep.hi, spec.bisect_tol,
                                 spec.max_iter, prescan=spec.sweep.steps)
        rows.append({"fixed_param": spec.fixed.name, "fixed_value": float(fv),
                     "sweep_param": spec.sweep.name, "boundary_value": res.value,
                     "iterations": res.iterations, "status": res.status})
    return rows


def render(rows: list[dict], header: list[str], fmt_name: str = "csv") -> str:
    """Serialize rows to CSV (fixed header, 12 significant digits) or JSON."""
    if fmt_name == "json":
        return json.dumps(rows, indent=1) + "\n"
    if fmt_name != "csv":
        raise ValueError(f"unknown format {fmt_name!r}")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(row[k]) for k in header])
    return buf.getvalue()
