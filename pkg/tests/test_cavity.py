import math

import numpy as np
import pytest

from bath_entanglement.bath import CONSTANTS
from bath_entanglement.cavity import (
    CavityConfig,
    CouplingClass,
    band_bath,
    cavity_bath,
    cavity_kernel,
    coupling_constants,
    derive_constants,
    enumerate_modes,
    estimated_mode_count,
    mode_bath,
    mode_weight,
    mode_weights,
    peak_time,
    plasma_frequency,
    saturation_f,
)
from bath_entanglement.exceptions import CapTooLarge, ConfigError, InvalidMode
from bath_entanglement.states import KernelValue


@pytest.fixture
def cfg():
    return CavityConfig(d=1e-8, T=0.1)


def lowest_omega(cfg):
    return CONSTANTS.c_0 * math.pi * math.hypot(2.0 / cfg.a, 1.0 / cfg.b)


def test_aluminum_constants(cfg):
    derived = derive_constants(cfg)
    assert cfg.omega_p == pytest.approx(2.3245e16, rel=1e-4)
    assert derived.tau == pytest.approx(3.8191e-11, rel=1e-4)
    assert derived.x_max == pytest.approx(8.8775e5, rel=1e-4)
    assert derived.zeta == pytest.approx(1.7719e-15, rel=1e-3)
    assert saturation_f(cfg) == pytest.approx(1.3965e-3, rel=1e-3)
    assert set(derived.to_json()) == {'zeta', 'tau', 'x_max'}


def test_unknown_material():
    with pytest.raises(ConfigError):
        plasma_frequency('unobtainium')
    with pytest.raises(ConfigError):
        CavityConfig.for_material(1e-8, 0.1, 'unobtainium')


def test_config_validation():
    with pytest.raises(ConfigError):
        CavityConfig(d=0.0, T=0.1)
    with pytest.raises(ConfigError):
        CavityConfig(d=1e-8, T=0.1, a=-0.01)
    assert CavityConfig(d=1e-8, T=0.1).dipole_approximation_valid


def test_dipole_warning(caplog):
    cfg = CavityConfig(d=1e-3, T=300.0)
    assert not cfg.dipole_approximation_valid
    assert 'dipole approximation' in caplog.text


def test_zeta_scaling(cfg):
    base = derive_constants(cfg).zeta
    assert derive_constants(CavityConfig(d=2e-8, T=0.1)).zeta == pytest.approx(
        4.0 * base, rel=1e-12)
    assert derive_constants(CavityConfig(d=1e-8, T=0.2)).zeta == pytest.approx(
        4.0 * base, rel=1e-12)


def test_continuum_does_not_depend_on_volume(cfg):
    assert derive_constants(cfg.scaled(7.0)) == derive_constants(cfg)
    t = 3.0 * peak_time(cfg)
    assert cavity_kernel(cfg.scaled(7.0), t) == cavity_kernel(cfg, t)


def test_peak_time(cfg):
    t_peak = peak_time(cfg)
    assert t_peak == pytest.approx(7.45e-17, rel=0.02)
    assert 1e-17 <= t_peak < 1e-16
    times = np.geomspace(t_peak / 10.0, t_peak * 10.0, 2001)
    f = [cavity_kernel(cfg, t).f for t in times]
    assert times[int(np.argmax(f))] == pytest.approx(t_peak, rel=0.01)
    assert max(f) == pytest.approx(1.125 * saturation_f(cfg), rel=1e-6)


def test_saturation(cfg):
    bath = cavity_bath(cfg)
    assert bath.coth_approx
    assert bath.kernel(1e-13).f == pytest.approx(0.0014, rel=0.1)
    assert bath.kernel(1e-13).f == pytest.approx(saturation_f(cfg), rel=1e-6)
    assert cavity_kernel(cfg, 0.0) == KernelValue.ZERO


def test_phase_grows_without_bound(cfg):
    t = peak_time(cfg)
    # linear in t well after the peak
    assert cavity_kernel(cfg, 100.0 * t).phi == pytest.approx(
        10.0 * cavity_kernel(cfg, 10.0 * t).phi, rel=1e-3)
    assert cavity_kernel(cfg, 10.0 * t).phi > 1.0


@pytest.mark.parametrize('mode, expected', [
    ((2, 1, 0), CouplingClass.SYMMETRIC),
    ((1, 1, 0), CouplingClass.ANTISYMMETRIC),
    ((4, 1, 0), CouplingClass.DARK),
    ((2, 2, 0), CouplingClass.DARK),
])
def test_coupling_class(cfg, mode, expected):
    assert coupling_constants(mode, cfg).coupling_class is expected


def test_symmetric_mode_amplitudes(cfg):
    amplitudes = coupling_constants((2, 1, 0), cfg)
    assert amplitudes.g_a == pytest.approx(1.0)
    assert amplitudes.g_b == pytest.approx(-1.0)


def test_mode_without_transverse_wave_number(cfg):
    with pytest.raises(InvalidMode):
        coupling_constants((0, 0, 1), cfg)


def test_common_factor_scales_with_root_mass(cfg):
    light = coupling_constants((2, 1, 0), cfg, mass=1.0).common_factor
    heavy = coupling_constants((2, 1, 0), cfg, mass=4.0).common_factor
    assert heavy == pytest.approx(2.0 * light, rel=1e-14)


def test_no_modes_below_the_lowest(cfg):
    assert len(enumerate_modes(cfg, 0.999 * lowest_omega(cfg))) == 0


def test_single_lowest_mode(cfg):
    modes = enumerate_modes(cfg, 1.0001 * lowest_omega(cfg))
    assert len(modes) == 1
    mode = modes[0]
    assert (mode.n_x, mode.n_y, mode.n_z) == (0, 0, 0)
    assert mode.tm_indices == (2, 1, 0)
    assert mode.omega == pytest.approx(lowest_omega(cfg), rel=1e-12)
    assert coupling_constants(mode.tm_indices, cfg).coupling_class \
        is CouplingClass.SYMMETRIC


def test_mode_count_grows_as_cube():
    cfg = CavityConfig(d=1e-8, T=0.1, a=0.05, b=0.05, c=0.05)
    caps = np.geomspace(6e11, 2.4e12, 5)
    counts = [len(enumerate_modes(cfg, cap)) for cap in caps]
    slope = np.polyfit(np.log(caps), np.log(counts), 1)[0]
    assert slope == pytest.approx(3.0, abs=0.2)
    assert counts[-1] == pytest.approx(estimated_mode_count(cfg, caps[-1]),
                                       rel=0.2)


def test_cap_limits(cfg):
    with pytest.raises(CapTooLarge):
        enumerate_modes(cfg, 1e13, budget=10)
    with pytest.raises(ConfigError):
        enumerate_modes(cfg, 2.0 * cfg.omega_p)
    with pytest.raises(ConfigError):
        enumerate_modes(cfg, 0.0)


def test_modes_are_sorted_and_on_lattice():
    cfg = CavityConfig(d=1e-8, T=0.1, a=0.03, b=0.02, c=0.05)
    modes = enumerate_modes(cfg, 8e11)
    assert len(modes) > 50
    assert np.all(np.diff(modes.omega) >= 0.0)
    for mode in modes:
        m, n, p = mode.tm_indices
        kx, ky, kz = mode.k
        assert kx == pytest.approx(math.pi * m / cfg.a, rel=1e-12)
        assert ky == pytest.approx(math.pi * n / cfg.b, rel=1e-12)
        assert kz == pytest.approx(math.pi * p / cfg.c, rel=1e-12)
        assert mode.omega == pytest.approx(
            CONSTANTS.c_0 * math.sqrt(kx * kx + ky * ky + kz * kz), rel=1e-12)
        assert mode.omega <= 8e11
        assert coupling_constants(mode.tm_indices, cfg).coupling_class \
            is not CouplingClass.DARK


def test_workers_do_not_change_modes():
    cfg = CavityConfig(d=1e-8, T=0.1, a=0.05, b=0.05, c=0.05)
    serial = enumerate_modes(cfg, 1.5e12, workers=1)
    threaded = enumerate_modes(cfg, 1.5e12, workers=4)
    assert np.array_equal(serial.indices, threaded.indices)
    assert np.array_equal(serial.omega, threaded.omega)


def test_mass_cancels_in_weights(cfg):
    modes = enumerate_modes(cfg, 8e11)
    assert np.allclose(mode_weights(modes, cfg, mass=1.0),
                       mode_weights(modes, cfg, mass=7.0), rtol=1e-12, atol=0.0)


def test_weight_from_coupling_constants(cfg):
    mode = enumerate_modes(cfg, 8e11)[3]
    amplitudes = coupling_constants(mode.tm_indices, cfg, mass=3.0)
    g = amplitudes.common_factor * amplitudes.g_a
    expected = 24.0 * g * g / (2.0 * 3.0 * CONSTANTS.hbar * mode.omega ** 3)
    assert mode_weight(mode, cfg) == pytest.approx(expected, rel=1e-12)


def test_mode_sum_approaches_continuum():
    cfg = CavityConfig(d=1e-8, T=0.1, a=1.0, b=1.0, c=1.0)
    tau = derive_constants(cfg).tau
    omega_cap = 5.0 / tau
    discrete = mode_bath(cfg, omega_cap)
    assert len(discrete.modes) == pytest.approx(
        estimated_mode_count(cfg, omega_cap), rel=0.1)
    continuum = band_bath(cfg, omega_cap)
    assert discrete.kernel(tau).f == pytest.approx(continuum.kernel(tau).f,
                                                   rel=0.1)
