"""Independent reconstruction of the channel free energies.

Round-trip matrix elements are assembled from their building blocks (dipole
Mie coefficients and translation elements for two spheres, explicit dipole
round-trip elements for sphere and plane), the Matsubara series is summed
term by term, and entropies are obtained by numerical differentiation.
Nothing here calls into :mod:`closed_form`.

The single-round-trip dipole expansion is taken as exact here, as it is in
the closed forms; the oracle checks summation and algebra, not that
truncation.

All matrix elements have the geometry factor ``(R/D)**3`` or
``(R1 R2 / d**2)**3`` divided out.
"""
from __future__ import annotations

import math

from . import special_fn
from .errors import ConvergenceError, DomainError
from .model import (
    ALL_CHANNELS,
    PC_PC,
    ChannelId,
    GeometryKind,
    Material,
    Polarization,
    Scenario,
    TE,
    TM,
    channel_weight,
)

NU_MIN = 1e-3
DEFAULT_REL_TOL = 1e-14
MAX_TERMS = 10_000_000

# Below this frequency the reflection/translation pairs are evaluated from
# their exp-scaled Laurent coefficients instead of as a plain product.
_PAIR_CUTOFF = 1e-60


def _check_xi(xi: float) -> float:
    xi = float(xi)
    if not math.isfinite(xi) or xi < 0.0:
        raise DomainError(f"dimensionless frequency must be finite and >= 0, got {xi!r}")
    return xi


def _kind(kind) -> GeometryKind:
    if isinstance(kind, GeometryKind):
        return kind
    if isinstance(kind, str):
        return GeometryKind(kind)
    return kind.kind


# --- sphere-plane -----------------------------------------------------------

def sp_roundtrip(channel: ChannelId, xi: float) -> float:
    """Sphere-plane round-trip element at ``xi`` (perfect conductors)."""
    if not isinstance(channel, ChannelId):
        raise DomainError(f"not a channel: {channel!r}")
    xi = _check_xi(xi)
    decay = math.exp(-2.0 * xi)
    if channel.mixed:
        value = 0.25 * xi * xi * decay
    elif channel.m == 0:
        value = 0.25 * (1.0 + 2.0 * xi) * decay
    else:
        value = 0.125 * (1.0 + 2.0 * xi + 2.0 * xi * xi) * decay
    # first index is the sphere polarization
    return 0.5 * value if channel.p1 is TE else value


# --- sphere-sphere building blocks ------------------------------------------

def mie_dipole_coefficient(material: Material, polarization: Polarization) -> float:
    """Coefficient ``c`` of the small-radius dipole Mie coefficient ``c (xi R/c)**3``."""
    material = Material(material)
    polarization = Polarization(polarization)
    if polarization is TM:
        return -2.0 / 3.0
    if material is Material.DRUDE:
        return 0.0
    return 1.0 / 3.0


def mie_dipole(material: Material, polarization: Polarization, xi_R: float) -> float:
    """Dipole Mie coefficient ``a_1`` (TM) or ``b_1`` (TE) at ``xi R / c``.

    Perfect conductor: ``a_1 = -(2/3) x**3``, ``b_1 = x**3 / 3``. In the
    Drude limit ``a_1`` is unchanged and ``b_1`` is dropped.
    """
    x = _check_xi(xi_R)
    return mie_dipole_coefficient(material, polarization) * x**3


def _translation_laurent(m: int, same_polarization: bool, direction: int) -> dict[int, float]:
    """``e^xi T`` as ``{k: t_k}`` meaning ``sum t_k xi**-k``."""
    if m == 0:
        if not same_polarization:
            return {}
        return {3: 3.0, 2: 3.0}
    if m == 1:
        if same_polarization:
            return {3: -1.5, 2: -1.5, 1: -1.5}
        sign = _direction_sign(direction)
        return {2: 1.5 * sign, 1: 1.5 * sign}
    raise DomainError(f"only m = 0 and m = 1 are supported, got m={m}")


def _direction_sign(direction: int) -> float:
    if direction not in (1, -1):
        raise DomainError(f"direction must be +1 (+z) or -1 (-z), got {direction!r}")
    return float(direction)


def ss_translation(m: int, same_polarization: bool, xi: float, direction: int = 1) -> float:
    """Translation element between the sphere centers at imaginary frequency.

    ``direction`` is +1 for a translation along +z and -1 along -z; only the
    polarization-changing element depends on it.
    """
    xi = _check_xi(xi)
    if xi == 0.0:
        raise DomainError("translation elements are singular at xi = 0")
    inv = 1.0 / xi
    laurent = _translation_laurent(m, same_polarization, direction)
    return sum(t * inv**k for k, t in laurent.items()) * math.exp(-xi)


def ss_translation_general(m: int, same_polarization: bool, xi: float, direction: int = 1) -> float:
    """Translation element from the Wigner-3j sum over ``l' in {0, 2}``.

    Uses ``h_l(i x) = -(2/pi) i**-l k_l(x)``, so ``i**-l h_l(i x)`` is the
    real number ``-(2/pi) (-1)**l k_l(x)``. Equals :func:`ss_translation`.
    """
    xi = _check_xi(xi)
    if xi == 0.0:
        raise DomainError("translation elements are singular at xi = 0")
    if m not in (0, 1):
        raise DomainError(f"only m = 0 and m = 1 are supported, got m={m}")
    if not same_polarization and m == 0:
        return 0.0

    def bessel_term(ell: int) -> float:
        return -(2.0 / math.pi) * (-1) ** ell * special_fn.modified_spherical_k(ell, xi)

    total = 0.0
    for ell in (0, 2):
        w = special_fn.wigner3j(1, 1, ell, 0, 0, 0) * special_fn.wigner3j(1, 1, ell, m, -m, 0)
        if same_polarization:
            total += (4 - ell * (ell + 1)) * (2 * ell + 1) * w * bessel_term(ell)
        else:
            total += (2 * ell + 1) * w * bessel_term(ell)
    if same_polarization:
        return (-1) ** m * 0.75 * total
    # (3/2) i k d with k d = i xi gives -(3/2) xi
    return _direction_sign(direction) * -1.5 * xi * total


def _pair(material: Material, p_in: Polarization, p_out: Polarization, m: int,
          xi: float, direction: int) -> float:
    """Reflection on a sphere times the translation leading to it."""
    same = p_in is p_out
    if xi > _PAIR_CUTOFF:
        return mie_dipole(material, p_out, xi) * ss_translation(m, same, xi, direction)
    # c xi^3 e^{-xi} sum t_k xi^-k, finite at xi = 0 because k <= 3
    coef = mie_dipole_coefficient(material, p_out)
    laurent = _translation_laurent(m, same, direction)
    return coef * math.exp(-xi) * sum(t * xi ** (3 - k) for k, t in laurent.items())


def ss_roundtrip(channel: ChannelId, scenario: Scenario = PC_PC, xi: float = 0.0,
                 first_direction: int = 1) -> float:
    """Sphere-sphere round trip ``R_1 T_12 R_2 T_21`` for one channel.

    The two translations run in opposite directions; ``first_direction``
    selects which one is along +z and does not change the result.
    """
    if not isinstance(channel, ChannelId):
        raise DomainError(f"not a channel: {channel!r}")
    xi = _check_xi(xi)
    d = _direction_sign(first_direction)
    # T_21 carries p1 -> p2 and is reflected at body 2; T_12 brings p2 back
    leg2 = _pair(scenario.body2, channel.p1, channel.p2, channel.m, xi, int(d))
    leg1 = _pair(scenario.body1, channel.p2, channel.p1, channel.m, xi, -int(d))
    return leg1 * leg2


# --- Matsubara sums ---------------------------------------------------------

def roundtrip(kind, channel: ChannelId, xi: float, scenario: Scenario = PC_PC) -> float:
    kind = _kind(kind)
    if kind is GeometryKind.SPHERE_PLANE:
        return channel_weight(scenario, channel) * sp_roundtrip(channel, xi)
    return ss_roundtrip(channel, scenario, xi)


def matsubara_f(kind, channel: ChannelId, nu: float, rel_tol: float = DEFAULT_REL_TOL,
                scenario: Scenario = PC_PC) -> float:
    """Channel free energy ``nu * sum' w_m M(n nu)`` from the Matsubara series.

    ``w_m`` is 2 for ``m = 1`` (the two signs of m) and 1 for ``m = 0``; the
    ``n = 0`` term is halved. Terms are added until the geometric tail
    estimate drops below ``rel_tol`` times the partial sum and ``n >= 10/nu``.
    """
    kind = _kind(kind)
    nu = float(nu)
    if not math.isfinite(nu) or nu < NU_MIN:
        raise DomainError(f"oracle refuses nu < {NU_MIN}; closed forms cover that range (got {nu!r})")
    if not rel_tol >= 1e-14:
        raise DomainError(f"rel_tol must be >= 1e-14, got {rel_tol}")
    weight = 2.0 if channel.m == 1 else 1.0

    terms = [0.5 * roundtrip(kind, channel, 0.0, scenario)]
    partial = terms[0]
    previous = terms[0]
    n_min = math.ceil(10.0 / nu)
    for n in range(1, MAX_TERMS):
        term = roundtrip(kind, channel, n * nu, scenario)
        terms.append(term)
        partial += term
        if n >= n_min:
            if term == 0.0:
                break
            ratio = term / previous if previous else 1.0
            # geometric tail bound, valid once the terms decay monotonically
            if ratio < 1.0 and term * ratio / (1.0 - ratio) <= rel_tol * abs(partial):
                break
        previous = term
    else:
        raise ConvergenceError(f"Matsubara sum did not converge within {MAX_TERMS} terms at nu={nu}")
    return weight * nu * math.fsum(terms)


def matsubara_total_f(kind, scenario: Scenario, nu: float, rel_tol: float = DEFAULT_REL_TOL) -> float:
    """Sum of all channel free energies; materials enter through the round trips."""
    return math.fsum(matsubara_f(kind, ch, nu, rel_tol, scenario) for ch in ALL_CHANNELS)


def _richardson_derivative(func, nu: float, h: float) -> float:
    def central(step):
        return (func(nu + step) - func(nu - step)) / (2.0 * step)

    coarse = central(h)
    fine = central(0.5 * h)
    return (4.0 * fine - coarse) / 3.0


def derivative_step(nu: float) -> float:
    return 1e-3 * max(nu, 1.0)


def numeric_entropy(kind, channel: ChannelId, nu: float, scenario: Scenario = PC_PC) -> float:
    """``s = df/dnu`` by Richardson-extrapolated central differences."""
    if nu < 2.0 * NU_MIN:
        raise DomainError(f"numeric_entropy needs nu >= {2 * NU_MIN}, got {nu!r}")
    return _richardson_derivative(
        lambda x: matsubara_f(kind, channel, x, scenario=scenario), nu, derivative_step(nu)
    )


def numeric_total_entropy(kind, scenario: Scenario, nu: float) -> float:
    if nu < 2.0 * NU_MIN:
        raise DomainError(f"numeric_entropy needs nu >= {2 * NU_MIN}, got {nu!r}")
    return _richardson_derivative(
        lambda x: matsubara_total_f(kind, scenario, x), nu, derivative_step(nu)
    )
