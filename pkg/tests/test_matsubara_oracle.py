import math

import numpy as np
import pytest
from scipy.integrate import quad

from casimir_channels import closed_form as cf
from casimir_channels import matsubara_oracle as mo
from casimir_channels.errors import DomainError
from casimir_channels.model import (
    ALL_CHANNELS,
    D_D,
    D_PC,
    PC_D,
    PC_PC,
    TE,
    TM,
    ChannelId,
    GeometryKind,
    Material,
)

SP, SS = GeometryKind.SPHERE_PLANE, GeometryKind.SPHERE_SPHERE
SCENARIOS = (PC_PC, PC_D, D_PC, D_D)
M0, M1, MIX = ChannelId(0, TM, TM), ChannelId(1, TM, TM), ChannelId(1, TM, TE)


def test_sphere_plane_roundtrip_at_zero():
    assert mo.sp_roundtrip(M0, 0.0) == 0.25
    assert mo.sp_roundtrip(M1, 0.0) == 0.125
    assert mo.sp_roundtrip(MIX, 0.0) == 0.0
    assert mo.sp_roundtrip(ChannelId(0, TE, TE), 0.0) == 0.125
    assert mo.sp_roundtrip(ChannelId(1, TE, TM), 1.0) == 0.5 * mo.sp_roundtrip(MIX, 1.0)


def test_mie_coefficients():
    assert mo.mie_dipole(Material.PC, TM, 0.1) == pytest.approx(-2e-3 / 3, rel=1e-15)
    assert mo.mie_dipole(Material.PC, TE, 0.1) == pytest.approx(1e-3 / 3, rel=1e-15)
    assert mo.mie_dipole(Material.DRUDE, TE, 0.1) == 0.0
    assert mo.mie_dipole(Material.DRUDE, TM, 0.1) == mo.mie_dipole(Material.PC, TM, 0.1)


@pytest.mark.parametrize("xi", [1e-3, 0.3, 1.0, 4.0, 25.0])
def test_sphere_sphere_roundtrip_products(xi):
    # hand-multiplied products of reflections and translations
    e = math.exp(-2 * xi)
    assert mo.ss_roundtrip(M0, PC_PC, xi) == pytest.approx(4 * (1 + xi) ** 2 * e, rel=1e-13)
    assert mo.ss_roundtrip(M1, PC_PC, xi) == pytest.approx((1 + xi + xi * xi) ** 2 * e, rel=1e-13)
    # mixed: a_1 b_1 (3/2)^2 (xi + xi^2)^2 with opposite directions
    expected = (2 / 9) * 2.25 * (xi + xi * xi) ** 2 * e
    assert mo.ss_roundtrip(MIX, PC_PC, xi) == pytest.approx(expected, rel=1e-13)


def test_roundtrip_finite_at_zero():
    assert mo.ss_roundtrip(M0, PC_PC, 0.0) == 4.0
    assert mo.ss_roundtrip(M1, PC_PC, 0.0) == 1.0
    assert mo.ss_roundtrip(MIX, PC_PC, 0.0) == 0.0
    for xi in (1e-80, 1e-30, 1e-10):
        assert mo.ss_roundtrip(M0, PC_PC, xi) == pytest.approx(4.0, rel=1e-9)


@pytest.mark.parametrize("ch", ALL_CHANNELS, ids=str)
def test_direction_invariance(ch):
    for xi in (0.0, 0.2, 3.0):
        assert mo.ss_roundtrip(ch, PC_PC, xi, 1) == mo.ss_roundtrip(ch, PC_PC, xi, -1)


def test_translation_errors():
    with pytest.raises(DomainError):
        mo.ss_translation(0, True, 0.0)
    with pytest.raises(DomainError):
        mo.ss_translation(2, True, 1.0)
    with pytest.raises(DomainError):
        mo.ss_translation(1, False, 1.0, direction=0)


def test_general_translation_matches_explicit():
    for xi in np.geomspace(0.05, 60.0, 40):
        xi = float(xi)
        for m in (0, 1):
            for same in (True, False):
                for d in (1, -1):
                    a = mo.ss_translation_general(m, same, xi, d)
                    b = mo.ss_translation(m, same, xi, d)
                    assert a == pytest.approx(b, rel=1e-12, abs=1e-300)


def test_drude_drude_zeros():
    for ch in ALL_CHANNELS:
        if ch.p1 is TE or ch.p2 is TE:
            assert mo.ss_roundtrip(ch, D_D, 0.7) == 0.0
            assert mo.matsubara_f(SS, ch, 1.0, scenario=D_D) == 0.0


@pytest.mark.parametrize("kind", [SP, SS])
@pytest.mark.parametrize("ch", ALL_CHANNELS, ids=str)
def test_equivalence_with_closed_form(kind, ch):
    for nu in (0.05, 0.5, 1.0, 2.0, 5.0, 10.0, 40.0):
        assert mo.matsubara_f(kind, ch, nu) == pytest.approx(cf.channel_f(kind, ch, nu), rel=1e-9)


@pytest.mark.parametrize("sc", SCENARIOS, ids=lambda s: s.label)
def test_scenario_totals_through_mie(sc):
    for nu in (0.3, 1.0, 3.0):
        assert mo.matsubara_total_f(SS, sc, nu) == pytest.approx(cf.total_f(SS, sc, nu), rel=1e-9)
        assert mo.matsubara_total_f(SP, sc, nu) == pytest.approx(cf.total_f(SP, sc, nu), rel=1e-9)


@pytest.mark.parametrize("ch", [M0, M1, MIX], ids=str)
def test_low_temperature_integral(ch):
    # nu -> 0 turns the sum into an integral over xi
    w = 2.0 if ch.m == 1 else 1.0
    for kind in (SP, SS):
        integral, _ = quad(lambda x: w * mo.roundtrip(kind, ch, x), 0.0, np.inf, epsabs=0, epsrel=1e-13)
        assert cf.channel_f(kind, ch, 0.0) == pytest.approx(integral, rel=1e-11)
        assert mo.matsubara_f(kind, ch, 1e-3) == pytest.approx(integral, rel=1e-5)


def test_high_temperature_limit():
    # only the halved n = 0 term survives: nu * M(0) / 2
    assert mo.matsubara_f(SS, M0, 50.0) == pytest.approx(100.0, rel=1e-15)
    assert mo.matsubara_f(SP, M0, 50.0) == pytest.approx(50.0 / 8, rel=1e-15)


def test_entropy_oracle():
    for kind in (SP, SS):
        for ch in (M0, M1, MIX):
            for nu in (0.5, 2.0):
                assert mo.numeric_entropy(kind, ch, nu) == pytest.approx(cf.channel_s(kind, ch, nu), rel=1e-6)
        assert mo.numeric_total_entropy(kind, PC_PC, 1.0) == pytest.approx(cf.total_s(kind, PC_PC, 1.0), rel=1e-6)


def test_refusals():
    with pytest.raises(DomainError):
        mo.matsubara_f(SP, M0, 5e-4)
    with pytest.raises(DomainError):
        mo.matsubara_f(SP, M0, 1.0, rel_tol=1e-15)
    with pytest.raises(DomainError):
        mo.numeric_entropy(SP, M0, 1.5e-3)
    with pytest.raises(DomainError):
        mo.sp_roundtrip(M0, -1.0)
