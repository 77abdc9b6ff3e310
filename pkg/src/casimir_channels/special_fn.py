"""Special functions for the large-distance Casimir formulas.

Everything here is a pure function of its arguments. The hyperbolic
monomials ``g(nu)**a * cosh(nu)**b`` are evaluated in exponentially scaled
form so that nothing overflows for large ``nu``.
"""
from __future__ import annotations

import math
from fractions import Fraction

from .errors import DomainError, UnsupportedOrder

# Taylor branch of nu/sinh(nu) is used below this value.
G_TAYLOR_CUTOFF = 1e-3

# Largest j accepted by wigner3j. The Racah sum is exact for any j; the cap
# only keeps factorials of reasonable size.
MAX_J = 100


def check_nu(nu: float) -> float:
    nu = float(nu)
    if not math.isfinite(nu) or nu < 0.0:
        raise DomainError(f"dimensionless temperature must be finite and >= 0, got {nu!r}")
    return nu


def g(nu: float) -> float:
    """Return ``nu / sinh(nu)``, continuous at ``nu = 0`` with value 1.

    Underflows gracefully to 0 for very large ``nu``.
    """
    nu = check_nu(nu)
    if nu < G_TAYLOR_CUTOFF:
        x2 = nu * nu
        return 1.0 - x2 / 6.0 + 7.0 * x2 * x2 / 360.0 - 31.0 * x2 * x2 * x2 / 15120.0
    # nu/sinh(nu) = 2 nu e^{-nu} / (1 - e^{-2 nu})
    return 2.0 * nu * math.exp(-nu) / -math.expm1(-2.0 * nu)


def g_cosh_product(a: int, b: int, nu: float) -> float:
    """Evaluate ``g(nu)**a * cosh(nu)**b`` without intermediate overflow.

    Uses ``g = [2 nu / (1 - q)] e^{-nu}`` and ``cosh = [(1 + q) / 2] e^{nu}``
    with ``q = e^{-2 nu}``; the net factor ``e^{-(a-b) nu}`` is applied last,
    one power at a time, so that the polynomial part cannot be lost to a
    premature underflow.

    Parameters
    ----------
    a, b : int
        Nonnegative exponents with ``a >= b``.
    nu : float
        Dimensionless temperature, ``nu >= 0``.
    """
    if a < 0 or b < 0:
        raise DomainError(f"exponents must be nonnegative, got a={a}, b={b}")
    if a < b:
        raise DomainError(f"g_cosh_product requires a >= b, got a={a}, b={b}")
    nu = check_nu(nu)
    if nu == 0.0:
        return 1.0
    q = math.exp(-2.0 * nu)
    g_scaled = 2.0 * nu / -math.expm1(-2.0 * nu)
    cosh_scaled = 0.5 * (1.0 + q)
    value = g_scaled**a * cosh_scaled**b
    decay = math.exp(-nu)
    for _ in range(a - b):
        value *= decay
    return value


def modified_spherical_k(ell: int, x: float, scaled: bool = False) -> float:
    """Modified spherical Bessel function of the second kind, orders 0 and 2.

    Normalized as ``k_0(x) = (pi/2) e^{-x} / x``. With ``scaled=True`` the
    value ``e^x k_ell(x)`` is returned, which is finite for every ``x > 0``.
    """
    if ell not in (0, 2):
        raise UnsupportedOrder(f"only k_0 and k_2 are implemented, got ell={ell}")
    x = float(x)
    if not (x > 0.0) or not math.isfinite(x):
        raise DomainError(f"modified_spherical_k needs finite x > 0, got {x!r}")
    inv = 1.0 / x
    if ell == 0:
        poly = inv
    else:
        poly = inv + 3.0 * inv * inv + 3.0 * inv * inv * inv
    value = 0.5 * math.pi * poly
    if scaled:
        return value
    return value * math.exp(-x)


def _racah_3j(j1: int, j2: int, j3: int, m1: int, m2: int, m3: int) -> tuple[Fraction, Fraction]:
    """Return ``(sum, prefactor_squared)`` with 3j = sum * sqrt(prefactor_squared)."""
    f = math.factorial
    triangle = Fraction(
        f(j1 + j2 - j3) * f(j1 - j2 + j3) * f(-j1 + j2 + j3), f(j1 + j2 + j3 + 1)
    )
    pref2 = triangle * (
        f(j1 + m1) * f(j1 - m1) * f(j2 + m2) * f(j2 - m2) * f(j3 + m3) * f(j3 - m3)
    )
    kmin = max(0, j2 - j3 - m1, j1 - j3 + m2)
    kmax = min(j1 + j2 - j3, j1 - m1, j2 + m2)
    total = Fraction(0)
    for k in range(kmin, kmax + 1):
        denom = (
            f(k)
            * f(j1 + j2 - j3 - k)
            * f(j1 - m1 - k)
            * f(j2 + m2 - k)
            * f(j3 - j2 + m1 + k)
            * f(j3 - j1 - m2 + k)
        )
        term = Fraction(1, denom)
        total += -term if k % 2 else term
    if (j1 - j2 - m3) % 2:
        total = -total
    return total, pref2


def wigner3j(j1: int, j2: int, j3: int, m1: int, m2: int, m3: int) -> float:
    """Wigner 3j symbol for integer angular momenta.

    Evaluated with the Racah single-sum formula in exact rational arithmetic
    and converted to float at the end. Returns 0 whenever the selection
    rules fail.

    >>> round(wigner3j(1, 1, 0, 0, 0, 0), 12)
    -0.57735026919
    """
    args = (j1, j2, j3, m1, m2, m3)
    if any(int(v) != v for v in args):
        raise UnsupportedOrder(f"only integer angular momenta are supported, got {args}")
    j1, j2, j3, m1, m2, m3 = (int(v) for v in args)
    if min(j1, j2, j3) < 0:
        raise DomainError(f"angular momenta must be nonnegative, got {args}")
    if max(j1, j2, j3) > MAX_J:
        raise UnsupportedOrder(f"j above supported maximum {MAX_J}: {args}")
    if abs(m1) > j1 or abs(m2) > j2 or abs(m3) > j3:
        raise DomainError(f"|m| must not exceed j, got {args}")
    if m1 + m2 + m3 != 0:
        return 0.0
    if j3 > j1 + j2 or j3 < abs(j1 - j2):
        return 0.0
    if m1 == m2 == m3 == 0 and (j1 + j2 + j3) % 2:
        return 0.0
    total, pref2 = _racah_3j(j1, j2, j3, m1, m2, m3)
    if total == 0:
        return 0.0
    # sign(total) * sqrt(total**2 * pref2), exact until the final sqrt
    square = total * total * pref2
    value = math.sqrt(float(square))
    return value if total > 0 else -value
