"""Self-contained consistency suite behind ``casimir-channels verify``.

Each check compares two independent routes to the same numbers: closed
forms against the Matsubara oracle, explicit translation elements against
the Wigner-3j construction, and closed forms against the low-temperature
series.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import closed_form as cf
from . import matsubara_oracle as mo
from .analysis import Target, find_sign_change
from .model import ALL_CHANNELS, D_D, PC_D, D_PC, PC_PC, GeometryKind, TE, TM, ChannelId

KINDS = (GeometryKind.SPHERE_PLANE, GeometryKind.SPHERE_SPHERE)
SCENARIOS = (PC_PC, PC_D, D_PC, D_D)
ORACLE_NUS = (0.5, 1.0, 2.0, 5.0, 10.0)
EPS = float(np.finfo(float).eps)


@dataclass
class CheckResult:
    name: str
    passed: bool
    worst: float
    tolerance: float
    detail: dict = field(default_factory=dict)

    def as_dict(self):
        return {
            "check": self.name,
            "passed": self.passed,
            "worst": self.worst,
            "tolerance": self.tolerance,
            "detail": self.detail,
        }


def _rel(a: float, b: float) -> float:
    if a == b:
        return 0.0
    return abs(a - b) / max(abs(a), abs(b))


def _worst(name, pairs, tol):
    worst, where = -1.0, None
    for key, a, b in pairs:
        r = _rel(a, b)
        if r > worst:
            worst, where = r, key
    return CheckResult(name, worst <= tol, worst, tol, {"worst_at": where})


def check_oracle_f() -> CheckResult:
    pairs = (
        (f"{k.value}/{ch.label}/nu={nu}", mo.matsubara_f(k, ch, nu), cf.channel_f(k, ch, nu))
        for k in KINDS for ch in ALL_CHANNELS for nu in ORACLE_NUS
    )
    return _worst("oracle_free_energy", pairs, 1e-9)


def check_oracle_s() -> CheckResult:
    pairs = (
        (f"{k.value}/{ch.label}/nu={nu}", mo.numeric_entropy(k, ch, nu), cf.channel_s(k, ch, nu))
        for k in KINDS for ch in ALL_CHANNELS for nu in ORACLE_NUS
    )
    return _worst("oracle_entropy", pairs, 1e-6)


def check_oracle_scenarios() -> CheckResult:
    """Sphere-sphere totals with materials entering through the Mie coefficients."""
    pairs = (
        (f"{sc.label}/nu={nu}", mo.matsubara_total_f(GeometryKind.SPHERE_SPHERE, sc, nu),
         cf.total_f(GeometryKind.SPHERE_SPHERE, sc, nu))
        for sc in SCENARIOS for nu in ORACLE_NUS
    )
    return _worst("oracle_scenario_totals", pairs, 1e-9)


def check_ratio_identities() -> CheckResult:
    grid = np.geomspace(1e-4, 100.0, 61)
    pairs = []
    sp, ss = GeometryKind.SPHERE_PLANE, GeometryKind.SPHERE_SPHERE
    for nu in map(float, grid):
        for fn in (cf.channel_f, cf.channel_s):
            for te, tm in ((ChannelId(0, TE, TE), ChannelId(0, TM, TM)),
                           (ChannelId(1, TE, TE), ChannelId(1, TM, TM)),
                           (ChannelId(1, TE, TM), ChannelId(1, TM, TE))):
                pairs.append((f"sp/{te.label}/{fn.__name__}/{nu:.3g}", fn(sp, te, nu), 0.5 * fn(sp, tm, nu)))
            for m in (0, 1):
                pairs.append((f"ss/m{m}-TETE/{fn.__name__}/{nu:.3g}",
                              fn(ss, ChannelId(m, TE, TE), nu), 0.25 * fn(ss, ChannelId(m, TM, TM), nu)))
            pairs.append((f"ss/m1-TETM/{fn.__name__}/{nu:.3g}",
                          fn(ss, ChannelId(1, TE, TM), nu), fn(ss, ChannelId(1, TM, TE), nu)))
    return _worst("ratio_identities", pairs, 1e-15)


def check_series_crossover() -> CheckResult:
    worst, where, ok = 0.0, None, True
    for k in KINDS:
        for target in list(ALL_CHANNELS) + list(SCENARIOS):
            for nu in map(float, np.geomspace(1e-3, 0.3, 25)):
                series = cf.low_temp_series(k, target, nu)
                if isinstance(target, ChannelId):
                    exact = cf.channel_s(k, target, nu)
                else:
                    exact = cf.total_s(k, target, nu)
                # a few ulps of slack: near nu = 1e-3 the bound is below double resolution
                allowed = series.truncation_bound + 4.0 * EPS * abs(series.value)
                excess = abs(exact - series.value) / allowed
                if excess > worst:
                    worst, where = excess, f"{k.value}/{getattr(target, 'label', target)}/nu={nu:.3g}"
                ok &= excess <= 1.0
    return CheckResult("series_crossover", ok, worst, 1.0, {"worst_at": where, "unit": "fraction of bound"})


def check_translation() -> CheckResult:
    pairs = []
    for xi in map(float, np.geomspace(0.1, 50.0, 80)):
        for m in (0, 1):
            for same in (True, False):
                for direction in (1, -1):
                    pairs.append((f"m={m}/same={same}/dir={direction}/xi={xi:.3g}",
                                  mo.ss_translation_general(m, same, xi, direction),
                                  mo.ss_translation(m, same, xi, direction)))
    result = _worst("translation_general_vs_explicit", pairs, 1e-12)
    zero = all(mo.ss_translation_general(0, False, xi, 1) == 0.0 for xi in (0.1, 1.0, 10.0))
    result.passed &= zero
    result.detail["m0_mixed_exactly_zero"] = zero
    return result


def check_third_law() -> CheckResult:
    worst = max(abs(cf.total_s(k, sc, 1e-4)) for k in KINDS for sc in SCENARIOS)
    return CheckResult("third_law", worst <= 1e-12, worst, 1e-12)


def check_sign_change() -> CheckResult:
    res = find_sign_change(Target(GeometryKind.SPHERE_PLANE, PC_PC, "s"), (1.0, 2.0))
    err = abs(res.nu - 1.486) if res.found else math.inf
    return CheckResult("sphere_plane_sign_change", err <= 0.005, err, 0.005, {"nu": res.nu})


CHECKS = (
    check_oracle_f,
    check_oracle_s,
    check_oracle_scenarios,
    check_ratio_identities,
    check_series_crossover,
    check_translation,
    check_third_law,
    check_sign_change,
)


def run_checks() -> list[CheckResult]:
    return [check() for check in CHECKS]
