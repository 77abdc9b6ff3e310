"""Root finding, minimization and grid sweeps over the dimensionless temperature."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy import optimize

from . import closed_form
from .errors import ConvergenceError, DomainError
from .model import PC_PC, ChannelId, GeometryKind, Scenario

ROOT_TOL = 1e-6
MIN_TOL = 1e-5
SCAN_PER_DECADE = 256


@dataclass(frozen=True)
class Target:
    """A scalar function of nu: one channel or a scenario total, f or s."""

    kind: GeometryKind
    scenario: Scenario = PC_PC
    quantity: str = "s"
    channel: Optional[ChannelId] = None

    def __post_init__(self):
        object.__setattr__(self, "kind", GeometryKind(self.kind))
        if self.quantity not in ("f", "s"):
            raise DomainError(f"quantity must be 'f' or 's', got {self.quantity!r}")

    def __call__(self, nu: float) -> float:
        if self.channel is None:
            if self.quantity == "f":
                return closed_form.total_f(self.kind, self.scenario, nu)
            return closed_form.total_s(self.kind, self.scenario, nu)
        if self.quantity == "f":
            return closed_form.channel_f(self.kind, self.channel, nu)
        return closed_form.channel_s(self.kind, self.channel, nu)

    @property
    def label(self) -> str:
        which = "total" if self.channel is None else self.channel.label
        return f"{self.kind.value}:{self.scenario.label}:{self.quantity}:{which}"


@dataclass(frozen=True)
class RootResult:
    found: bool
    nu: Optional[float]
    value: Optional[float]
    bracket: tuple[float, float]
    iterations: int
    tolerance: float


@dataclass(frozen=True)
class MinResult:
    nu: float
    value: float
    bracket: tuple[float, float]
    iterations: int
    tolerance: float
    interior: bool = True
    unimodal: bool = True


@dataclass(frozen=True)
class SweepSpec:
    target: Target
    lo: float
    hi: float
    points: int
    spacing: str = "lin"

    def __post_init__(self):
        if not (0.0 <= self.lo < self.hi) or not math.isfinite(self.hi):
            raise DomainError(f"need 0 <= lo < hi, got [{self.lo}, {self.hi}]")
        if self.points < 2:
            raise DomainError(f"need at least 2 points, got {self.points}")
        if self.spacing not in ("lin", "log"):
            raise DomainError(f"spacing must be 'lin' or 'log', got {self.spacing!r}")
        if self.spacing == "log" and self.lo <= 0.0:
            raise DomainError("log spacing needs lo > 0")

    def grid(self) -> np.ndarray:
        if self.spacing == "log":
            nu = np.geomspace(self.lo, self.hi, self.points)
        else:
            nu = np.linspace(self.lo, self.hi, self.points)
        # pin the endpoints exactly
        nu[0], nu[-1] = self.lo, self.hi
        return nu


@dataclass(frozen=True)
class SweepTable:
    spec: SweepSpec
    nu: tuple[float, ...]
    values: tuple[float, ...] = field(repr=False)

    def rows(self):
        return zip(self.nu, self.values)


def sweep(spec: SweepSpec) -> SweepTable:
    nus = [float(x) for x in spec.grid()]
    values = []
    for nu in nus:
        try:
            values.append(spec.target(nu))
        except DomainError as exc:
            raise DomainError(f"at nu={nu!r}: {exc}") from exc
    return SweepTable(spec, tuple(nus), tuple(values))


def _scan_grid(lo: float, hi: float) -> np.ndarray:
    if lo > 0.0:
        n = max(16, math.ceil(SCAN_PER_DECADE * math.log10(hi / lo)) + 1)
        grid = np.geomspace(lo, hi, n)
    else:
        grid = np.linspace(lo, hi, SCAN_PER_DECADE + 1)
    grid[0], grid[-1] = lo, hi
    return grid


def _check_bracket(bracket) -> tuple[float, float]:
    lo, hi = (float(b) for b in bracket)
    if not (0.0 <= lo < hi) or not math.isfinite(hi):
        raise DomainError(f"bracket must satisfy 0 <= lo < hi, got {bracket!r}")
    return lo, hi


def find_sign_change(target: Target, bracket, tol: float = ROOT_TOL) -> RootResult:
    """Locate a zero of ``target`` inside ``bracket`` with Brent's method.

    If the endpoints do not differ in sign, the bracket is scanned first and
    the first sign change is refined. No sign change gives ``found=False``.
    """
    lo, hi = _check_bracket(bracket)
    a, b = lo, hi
    fa, fb = target(a), target(b)
    if fa == 0.0:
        return RootResult(True, a, fa, (lo, hi), 0, tol)
    if fb == 0.0:
        return RootResult(True, b, fb, (lo, hi), 0, tol)
    if math.copysign(1.0, fa) == math.copysign(1.0, fb):
        grid = _scan_grid(lo, hi)
        values = [target(float(x)) for x in grid]
        for x0, x1, v0, v1 in zip(grid[:-1], grid[1:], values[:-1], values[1:]):
            if v0 == 0.0:
                return RootResult(True, float(x0), v0, (lo, hi), 0, tol)
            if v0 * v1 < 0.0:
                a, b = float(x0), float(x1)
                break
        else:
            return RootResult(False, None, None, (lo, hi), 0, tol)
    root, info = optimize.brentq(target, a, b, xtol=tol, full_output=True)
    if not info.converged:
        raise ConvergenceError(f"Brent iteration failed on [{a}, {b}]: {info.flag}")
    return RootResult(True, float(root), target(root), (a, b), info.iterations, tol)


def minimize_scalar(target: Target, bracket, tol: float = MIN_TOL) -> MinResult:
    """Minimum of ``target`` on ``bracket``.

    A dense scan isolates the lowest grid point; the bounded Brent
    (golden-section/parabolic) search then refines it between its neighbours.
    A minimum at an endpoint is returned with ``interior=False``; more than
    one local minimum on the scan gives ``unimodal=False``.
    """
    lo, hi = _check_bracket(bracket)
    grid = _scan_grid(lo, hi)
    values = np.array([target(float(x)) for x in grid])
    i = int(np.argmin(values))
    inner = values[1:-1]
    local_minima = int(np.sum((inner < values[:-2]) & (inner <= values[2:])))
    unimodal = local_minima <= 1
    if i == 0 or i == len(grid) - 1:
        nu = float(grid[i])
        return MinResult(nu, float(values[i]), (lo, hi), 0, tol, interior=False, unimodal=unimodal)
    a, b = float(grid[i - 1]), float(grid[i + 1])
    res = optimize.minimize_scalar(target, bounds=(a, b), method="bounded", options={"xatol": tol})
    nu, value = float(res.x), float(res.fun)
    if values[i] < value:
        nu, value = float(grid[i]), float(values[i])
    return MinResult(nu, value, (a, b), int(res.nfev), tol, interior=True, unimodal=unimodal)
