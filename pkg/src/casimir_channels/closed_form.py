"""Closed-form channel free energies and entropies.

Every channel free energy ``f`` and entropy bracket is a finite linear
combination of monomials ``g(nu)**a * cosh(nu)**b``; they are stored below
as ``{(a, b): coefficient}`` tables with exact rational coefficients. The
entropy is ``s = bracket / nu``.

The entropy brackets cancel to ``O(nu**4)`` (or ``O(nu**6)``) at low
temperature, so three regimes are used for ``s``:

* ``nu < SERIES_CUTOFF``: the low-temperature series;
* ``nu < PRECISE_CUTOFF``: the bracket in extended precision (mpmath);
* otherwise: the bracket in double precision.

The free energies are sums of positive monomials and need no such care.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Union

import mpmath

from . import special_fn
from .errors import DomainError
from .model import (
    ALL_CHANNELS,
    HBAR,
    C,
    K_B,
    ChannelId,
    Geometry,
    GeometryKind,
    Scenario,
    TE,
    TM,
    channel_weight,
    check_large_distance,
    to_dimensionless_temperature,
)

SERIES_CUTOFF = 1e-3
PRECISE_CUTOFF = 0.5
PRECISE_DPS = 40

Terms = dict[tuple[int, int], Fraction]

_F = Fraction


def _scaled(terms: Terms, factor: Fraction) -> Terms:
    return {k: v * factor for k, v in terms.items()}


# Channels with TM on body 1; the others follow from fixed ratios.
_M0 = (0, "same")
_M1 = (1, "same")
_MIX = (1, "mixed")

_SP_F = {
    _M0: _scaled({(1, 1): _F(1), (2, 0): _F(1)}, _F(1, 8)),
    _M1: _scaled({(1, 1): _F(1), (2, 0): _F(1), (3, 1): _F(1)}, _F(1, 8)),
    _MIX: _scaled({(3, 1): _F(1)}, _F(1, 8)),
}
_SP_S = {
    _M0: _scaled({(1, 1): _F(1), (2, 0): _F(1), (3, 1): _F(-2)}, _F(1, 8)),
    _M1: _scaled(
        {(1, 1): _F(1), (2, 0): _F(1), (3, 1): _F(1), (4, 2): _F(-2), (4, 0): _F(-1)},
        _F(1, 8),
    ),
    _MIX: _scaled({(3, 1): _F(3), (4, 2): _F(-2), (4, 0): _F(-1)}, _F(1, 8)),
}

# g^4 (2 cosh^2 + 1), g^5 cosh (cosh^2 + 2), g^6 (2 cosh^4 + 11 cosh^2 + 2)
_G4 = {(4, 2): _F(2), (4, 0): _F(1)}
_G5 = {(5, 3): _F(1), (5, 1): _F(2)}
_G6 = {(6, 4): _F(2), (6, 2): _F(11), (6, 0): _F(2)}


def _combine(*parts: tuple[Fraction, Terms]) -> Terms:
    out: Terms = {}
    for coef, terms in parts:
        for k, v in terms.items():
            out[k] = out.get(k, _F(0)) + coef * v
    return {k: v for k, v in out.items() if v != 0}


_SS_F = {
    _M0: {(1, 1): _F(2), (2, 0): _F(2), (3, 1): _F(1)},
    _M1: _scaled(
        _combine((_F(1), {(1, 1): _F(2), (2, 0): _F(2), (3, 1): _F(3)}), (_F(1), _G4), (_F(1), _G5)),
        _F(1, 2),
    ),
    _MIX: _scaled(_combine((_F(1), {(3, 1): _F(1)}), (_F(1), _G4), (_F(1), _G5)), _F(1, 4)),
}
_SS_S = {
    _M0: _combine((_F(1), {(1, 1): _F(2), (2, 0): _F(2), (3, 1): _F(-1)}), (_F(-1), _G4)),
    _M1: _scaled(
        _combine(
            (_F(1), {(1, 1): _F(2), (2, 0): _F(2), (3, 1): _F(5)}),
            (_F(1), _G4),
            (_F(1), _G5),
            (_F(-1), _G6),
        ),
        _F(1, 2),
    ),
    _MIX: _scaled(
        _combine((_F(1), {(3, 1): _F(3)}), (_F(3), _G4), (_F(1), _G5), (_F(-1), _G6)),
        _F(1, 4),
    ),
}

# Low-temperature entropy series {power: coefficient}.
_SP_SERIES = {
    _M0: {3: _F(1, 45), 5: _F(-2, 315)},
    _M1: {3: _F(-1, 90), 5: _F(1, 105)},
    _MIX: {3: _F(-1, 30), 5: _F(1, 63)},
}
_SS_SERIES = {
    _M0: {3: _F(4, 45), 5: _F(8, 315), 7: _F(-8, 525)},
    _M1: {3: _F(-4, 45), 5: _F(2, 45), 7: _F(-68, 1575)},
    _MIX: {5: _F(-1, 63), 7: _F(-2, 225)},
}

_TABLES = {
    GeometryKind.SPHERE_PLANE: (_SP_F, _SP_S, _SP_SERIES),
    GeometryKind.SPHERE_SPHERE: (_SS_F, _SS_S, _SS_SERIES),
}


def _kind(geometry) -> GeometryKind:
    if isinstance(geometry, GeometryKind):
        return geometry
    if isinstance(geometry, str):
        return GeometryKind(geometry)
    return geometry.kind


def _family(channel: ChannelId):
    if not isinstance(channel, ChannelId):
        raise DomainError(f"not a channel: {channel!r}")
    if channel.mixed:
        return _MIX
    return _M1 if channel.m == 1 else _M0


def channel_ratio(kind, channel: ChannelId) -> Fraction:
    """Factor relating ``channel`` to its TM-on-body-1 partner.

    Sphere-plane: TE on the sphere halves the contribution. Sphere-sphere:
    TE,TE is a quarter of TM,TM; the two mixed channels are equal.
    """
    kind = _kind(kind)
    if kind is GeometryKind.SPHERE_PLANE:
        return _F(1, 2) if channel.p1 is TE else _F(1)
    if channel.p1 is TE and channel.p2 is TE:
        return _F(1, 4)
    return _F(1)


def f_terms(kind, channel: ChannelId) -> Terms:
    """Monomial table of the free energy ``f`` for ``channel``."""
    kind = _kind(kind)
    return _scaled(_TABLES[kind][0][_family(channel)], channel_ratio(kind, channel))


def s_terms(kind, channel: ChannelId) -> Terms:
    """Monomial table of ``nu * s`` for ``channel``."""
    kind = _kind(kind)
    return _scaled(_TABLES[kind][1][_family(channel)], channel_ratio(kind, channel))


def series_terms(kind, channel: ChannelId) -> dict[int, Fraction]:
    """Low-temperature entropy series ``{power: coefficient}`` for ``channel``."""
    kind = _kind(kind)
    return _scaled(_TABLES[kind][2][_family(channel)], channel_ratio(kind, channel))


def evaluate_terms(terms: Terms, nu: float, precise: bool = False):
    """Sum ``coef * g**a * cosh**b`` at ``nu``.

    With ``precise=True`` the sum is done in mpmath at ``PRECISE_DPS``
    digits and an ``mpf`` is returned.
    """
    if not precise:
        return math.fsum(float(c) * special_fn.g_cosh_product(a, b, nu) for (a, b), c in terms.items())
    special_fn.check_nu(nu)
    with mpmath.workdps(PRECISE_DPS):
        x = mpmath.mpf(nu)
        gv = mpmath.mpf(1) if x == 0 else x / mpmath.sinh(x)
        cv = mpmath.cosh(x)
        return mpmath.fsum(
            mpmath.mpf(c.numerator) / c.denominator * gv**a * cv**b for (a, b), c in terms.items()
        )


def channel_f(kind, channel: ChannelId, nu: float) -> float:
    """Rescaled free energy of one channel (PC materials)."""
    return evaluate_terms(f_terms(kind, channel), nu)


def _entropy(kind, terms: Terms, nu: float, series_target) -> float:
    nu = special_fn.check_nu(nu)
    if nu < SERIES_CUTOFF:
        return low_temp_series(kind, series_target, nu).value
    if nu < PRECISE_CUTOFF:
        with mpmath.workdps(PRECISE_DPS):
            return float(evaluate_terms(terms, nu, precise=True) / mpmath.mpf(nu))
    return evaluate_terms(terms, nu) / nu


def channel_s(kind, channel: ChannelId, nu: float) -> float:
    """Rescaled entropy of one channel (PC materials), ``s = df/dnu``."""
    return _entropy(kind, s_terms(kind, channel), nu, channel)


def sp_channel_f(channel: ChannelId, nu: float) -> float:
    return channel_f(GeometryKind.SPHERE_PLANE, channel, nu)


def sp_channel_s(channel: ChannelId, nu: float) -> float:
    return channel_s(GeometryKind.SPHERE_PLANE, channel, nu)


def ss_channel_f(channel: ChannelId, nu: float) -> float:
    return channel_f(GeometryKind.SPHERE_SPHERE, channel, nu)


def ss_channel_s(channel: ChannelId, nu: float) -> float:
    return channel_s(GeometryKind.SPHERE_SPHERE, channel, nu)


class SeriesValue(NamedTuple):
    value: float
    truncation_bound: float


def total_series_terms(kind, scenario: Scenario) -> dict[int, Fraction]:
    """Weighted sum of the channel series for a material scenario."""
    out: dict[int, Fraction] = {}
    for ch in ALL_CHANNELS:
        if channel_weight(scenario, ch):
            for p, c in series_terms(kind, ch).items():
                out[p] = out.get(p, _F(0)) + c
    return {p: c for p, c in sorted(out.items()) if c != 0}


def low_temp_series(kind, target: Union[ChannelId, Scenario], nu: float) -> SeriesValue:
    """Low-temperature entropy series for a channel or a scenario total.

    The truncation bound is ``2 |c_last| nu**(p_last + 2)``, an engineering
    estimate rather than a rigorous remainder.
    """
    kind = _kind(kind)
    nu = special_fn.check_nu(nu)
    if isinstance(target, ChannelId):
        coeffs = series_terms(kind, target)
    elif isinstance(target, Scenario):
        coeffs = total_series_terms(kind, target)
    else:
        raise DomainError(f"unknown series target {target!r}")
    value = math.fsum(float(c) * nu**p for p, c in coeffs.items())
    # the retained orders are fixed by the geometry, not by which ones cancel
    last_power = 5 if kind is GeometryKind.SPHERE_PLANE else 7
    last = abs(float(coeffs.get(last_power, 0)))
    return SeriesValue(value, 2.0 * last * nu ** (last_power + 2))


@dataclass(frozen=True)
class ChannelValue:
    channel: ChannelId
    f: float
    s: float
    weight: int = 1


@dataclass(frozen=True)
class ChannelTable:
    kind: GeometryKind
    scenario: Scenario
    nu: float
    values: tuple[ChannelValue, ...]
    f_total: float
    s_total: float

    def __getitem__(self, channel: ChannelId) -> ChannelValue:
        for v in self.values:
            if v.channel == channel:
                return v
        raise KeyError(channel)


def scenario_total(geometry, scenario: Scenario, nu: float) -> ChannelTable:
    """All six channels at ``nu`` with their weights and the weighted totals.

    The totals equal the weight-masked channel sums up to the rounding of
    the individual channel values.
    """
    kind = _kind(geometry)
    values = tuple(
        ChannelValue(ch, channel_f(kind, ch, nu), channel_s(kind, ch, nu), channel_weight(scenario, ch))
        for ch in ALL_CHANNELS
    )
    return ChannelTable(
        kind, scenario, float(nu), values, total_f(kind, scenario, nu), total_s(kind, scenario, nu)
    )


def _weighted(table_fn, kind, scenario: Scenario) -> Terms:
    return _combine(*((_F(1), table_fn(kind, ch)) for ch in ALL_CHANNELS if channel_weight(scenario, ch)))


def total_f(geometry, scenario: Scenario, nu: float) -> float:
    """Weighted sum of the channel free energies."""
    kind = _kind(geometry)
    return evaluate_terms(_weighted(f_terms, kind, scenario), nu)


def total_s(geometry, scenario: Scenario, nu: float) -> float:
    """Weighted sum of the channel entropies.

    The channel brackets are merged into one monomial table before
    evaluation: for two spheres the channels cancel to ``O(nu**5)``, far
    below the size of the individual terms.
    """
    kind = _kind(geometry)
    return _entropy(kind, _weighted(s_terms, kind, scenario), nu, scenario)


class DimensionalResult(NamedTuple):
    F: float  # joule
    S: float  # joule / kelvin
    nu: float
    warnings: list


def dimensional_outputs(geometry: Geometry, scenario: Scenario, T: float) -> DimensionalResult:
    """Free energy (J) and entropy (J/K) for an SI geometry at temperature T."""
    nu = to_dimensionless_temperature(T, geometry)
    messages = check_large_distance(geometry)
    table = scenario_total(geometry, scenario, nu)
    D = geometry.natural_length
    G = geometry.geometry_factor
    F = -(HBAR * C / (2.0 * math.pi * D)) * G * table.f_total
    S = K_B * G * table.s_total
    return DimensionalResult(F, S, nu, messages)
