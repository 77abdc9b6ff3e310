"""Geometry, materials, scattering channels and SI unit conversion.

Body 1 is the sphere (sphere-plane) or sphere 1 (sphere-sphere); body 2 is
the plane or sphere 2. A channel ``(m, p1, p2)`` carries polarization ``p1``
on body 1 and ``p2`` on body 2.
"""
from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass
from typing import Union

from .errors import DomainError

HBAR = 1.054571817e-34  # J s
C = 299792458.0  # m / s
K_B = 1.380649e-23  # J / K

# Beyond this radius-to-distance ratio the dipole, single-round-trip
# formulas are no longer a good approximation.
VALIDITY_RATIO = 0.2


class LargeDistanceWarning(UserWarning):
    """The geometry is too compact for the large-distance formulas."""


class GeometryKind(str, enum.Enum):
    SPHERE_PLANE = "sphere-plane"
    SPHERE_SPHERE = "sphere-sphere"


def _positive(name: str, value: float) -> None:
    if not (math.isfinite(value) and value > 0.0):
        raise DomainError(f"{name} must be a finite positive length, got {value!r}")


@dataclass(frozen=True)
class SpherePlane:
    """Sphere of radius ``R`` at surface distance ``L`` from a plane (meters)."""

    L: float
    R: float

    kind = GeometryKind.SPHERE_PLANE

    def __post_init__(self):
        _positive("L", self.L)
        _positive("R", self.R)

    @property
    def natural_length(self) -> float:
        return self.L + self.R

    @property
    def geometry_factor(self) -> float:
        """``(R/D)**3``; multiplies the rescaled f and s."""
        return (self.R / self.natural_length) ** 3

    @property
    def radius_ratio(self) -> float:
        return self.R / self.natural_length


@dataclass(frozen=True)
class SphereSphere:
    """Two spheres of radii ``R1``, ``R2`` at surface distance ``L`` (meters)."""

    L: float
    R1: float
    R2: float

    kind = GeometryKind.SPHERE_SPHERE

    def __post_init__(self):
        _positive("L", self.L)
        _positive("R1", self.R1)
        _positive("R2", self.R2)

    @property
    def natural_length(self) -> float:
        return self.L + self.R1 + self.R2

    @property
    def geometry_factor(self) -> float:
        """``(R1 R2 / d**2)**3``."""
        d = self.natural_length
        return (self.R1 * self.R2 / (d * d)) ** 3

    @property
    def radius_ratio(self) -> float:
        return max(self.R1, self.R2) / self.natural_length


Geometry = Union[SpherePlane, SphereSphere]


def natural_length(geometry: Geometry) -> float:
    """Return L+R (sphere-plane) or L+R1+R2 (sphere-sphere)."""
    return geometry.natural_length


def to_dimensionless_temperature(T: float, geometry: Geometry) -> float:
    """Convert a temperature in kelvin to ``nu = 2 pi D k_B T / (hbar c)``."""
    T = float(T)
    if not math.isfinite(T) or T < 0.0:
        raise DomainError(f"temperature must be finite and >= 0, got {T!r}")
    return 2.0 * math.pi * geometry.natural_length * K_B * T / (HBAR * C)


def check_large_distance(geometry: Geometry) -> list[str]:
    """Return validity warnings for ``geometry`` and emit them as warnings."""
    messages = []
    ratio = geometry.radius_ratio
    if ratio > VALIDITY_RATIO:
        msg = (
            f"R/D = {ratio:.3g} exceeds {VALIDITY_RATIO}; "
            "large-distance dipole formulas are inaccurate here"
        )
        messages.append(msg)
        warnings.warn(msg, LargeDistanceWarning, stacklevel=2)
    return messages


class Material(str, enum.Enum):
    """Body material. ``DRUDE`` only encodes the large-distance Drude limit,
    where TE dipole reflection is negligible (valid for d >> sigma_0 R**2 / 30c).
    """

    PC = "pc"
    DRUDE = "drude"


@dataclass(frozen=True)
class Scenario:
    """Materials of body 1 and body 2."""

    body1: Material = Material.PC
    body2: Material = Material.PC

    @classmethod
    def parse(cls, text: str) -> "Scenario":
        """Parse ``"pc,drude"`` style strings (body 1 first)."""
        parts = [p.strip().lower() for p in text.split(",")]
        if len(parts) != 2:
            raise DomainError(f"materials must be 'a,b', got {text!r}")
        try:
            return cls(Material(parts[0]), Material(parts[1]))
        except ValueError:
            raise DomainError(f"unknown material in {text!r}; use pc or drude") from None

    @property
    def label(self) -> str:
        return f"{self.body1.value},{self.body2.value}"


PC_PC = Scenario(Material.PC, Material.PC)
PC_D = Scenario(Material.PC, Material.DRUDE)
D_PC = Scenario(Material.DRUDE, Material.PC)
D_D = Scenario(Material.DRUDE, Material.DRUDE)


class Polarization(str, enum.Enum):
    TE = "TE"
    TM = "TM"


TE = Polarization.TE
TM = Polarization.TM


@dataclass(frozen=True)
class ChannelId:
    """Scattering channel: azimuthal number ``m`` and polarizations on the
    two bodies. ``m = 0`` channels never change polarization."""

    m: int
    p1: Polarization
    p2: Polarization

    def __post_init__(self):
        if self.m not in (0, 1):
            raise DomainError(f"only m = 0 and m = 1 channels exist, got m={self.m}")
        object.__setattr__(self, "p1", Polarization(self.p1))
        object.__setattr__(self, "p2", Polarization(self.p2))
        if self.m == 0 and self.p1 != self.p2:
            raise DomainError("m = 0 channels cannot change polarization")

    @property
    def mixed(self) -> bool:
        return self.p1 != self.p2

    @property
    def label(self) -> str:
        return f"m{self.m}-{self.p1.value}{self.p2.value}"

    @classmethod
    def parse(cls, text: str) -> "ChannelId":
        """Parse the canonical ``m{0|1}-{TE|TM}{TE|TM}`` form."""
        t = text.strip()
        if len(t) != 7 or t[0] != "m" or t[2] != "-":
            raise DomainError(f"bad channel identifier {text!r}; expected e.g. m1-TMTE")
        try:
            return cls(int(t[1]), Polarization(t[3:5].upper()), Polarization(t[5:7].upper()))
        except ValueError:
            raise DomainError(f"bad channel identifier {text!r}") from None

    def __str__(self):
        return self.label


ALL_CHANNELS = (
    ChannelId(0, TM, TM),
    ChannelId(0, TE, TE),
    ChannelId(1, TM, TM),
    ChannelId(1, TE, TE),
    ChannelId(1, TM, TE),
    ChannelId(1, TE, TM),
)


def channel_weight(scenario: Scenario, channel: ChannelId) -> int:
    """1 if ``channel`` survives under ``scenario``, else 0.

    A Drude-limit body does not reflect TE dipole waves, so any channel
    carrying TE on such a body is suppressed.
    """
    if scenario.body1 is Material.DRUDE and channel.p1 is TE:
        return 0
    if scenario.body2 is Material.DRUDE and channel.p2 is TE:
        return 0
    return 1


def active_channels(scenario: Scenario) -> list[ChannelId]:
    return [ch for ch in ALL_CHANNELS if channel_weight(scenario, ch)]
