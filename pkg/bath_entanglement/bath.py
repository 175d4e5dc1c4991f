"""
Decoherence functions f(t) and phi(t) of a harmonic heat bath.

Three descriptions are supported:

* ``DiscreteBath`` - explicit oscillator modes with dimensionless weights
  ``w_k = g_k**2 / (2 m hbar omega_k**3)``;
* ``ContinuumBath`` - thermal continuum in the dimensionless frequency
  ``x = omega * tau`` (``tau = hbar / (2 k_B T)``) with a cut-off function;
* ``PathBath`` - an explicit, piecewise linear path in the (f, phi) plane.

Every model exposes ``kernel(t) -> KernelValue`` and ``f_bound()``.
"""
import logging
import math
import warnings
from dataclasses import dataclass, field
from typing import Union

import numpy as np
from scipy import constants as sc
from scipy.integrate import IntegrationWarning, quad

from .exceptions import ConfigError, QuadratureFailure
from .settings import get_settings
from .states import KernelValue

logger = logging.getLogger('bath_entanglement.bath')

# upper limit of the Bose correction integrals; the integrand is below e^-120
BOSE_CUTOFF = 60.0
# below this many radians of total phase the oscillatory factor is
# integrated directly instead of by a Fourier-weighted rule
DIRECT_PHASE = 50.0


@dataclass(frozen=True)
class PhysicalConstants:
    """SI constants (CODATA 2018 via scipy.constants).

    hbar 1.05457e-34 J s, k_B 1.38065e-23 J/K, e 1.60218e-19 C,
    mu_0 1.25664e-6 N/A^2, epsilon_0 8.85419e-12 F/m, c_0 2.99792e8 m/s.
    """
    hbar: float = sc.hbar
    k_B: float = sc.k
    e: float = sc.e
    mu_0: float = sc.mu_0
    epsilon_0: float = sc.epsilon_0
    c_0: float = sc.c


CONSTANTS = PhysicalConstants()


def thermal_occupation(omega, T, constants=CONSTANTS):
    """Bose-Einstein occupation ``1 / (exp(hbar omega / k_B T) - 1)``."""
    omega = np.asarray(omega, dtype=float)
    if np.any(omega <= 0.0) or T < 0.0:
        raise ConfigError('thermal_occupation needs omega > 0 and T >= 0')
    if T == 0.0:
        result = np.zeros_like(omega)
    else:
        with np.errstate(over='ignore'):
            result = 1.0 / np.expm1(constants.hbar * omega / (constants.k_B * T))
    return float(result) if result.ndim == 0 else result


def one_minus_cos(x):
    return 2.0 * np.sin(0.5 * x) ** 2


def x_minus_sin(x):
    x = np.asarray(x, dtype=float)
    x2 = x * x
    series = x * x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0 * (
        1.0 - x2 / 72.0)))
    return np.where(np.abs(x) < 0.1, series, x - np.sin(x))


@dataclass(frozen=True)
class BathMode:
    omega: float
    weight: float
    nbar: float = 0.0

    def __post_init__(self):
        if not self.omega > 0.0:
            raise ConfigError('mode frequency should be > 0, got {}'.format(
                self.omega))
        if self.nbar < 0.0 or self.weight < 0.0:
            raise ConfigError('mode weight and occupation should be >= 0')

    @classmethod
    def from_coupling(cls, g, omega, nbar=0.0, mass=1.0, constants=CONSTANTS):
        """Mode from a raw coupling constant; the formal mass cancels in f, phi
        only together with a mass-proportional ``g**2``."""
        return cls(omega=omega,
                   weight=g * g / (2.0 * mass * constants.hbar * omega ** 3),
                   nbar=nbar)

    @classmethod
    def thermal(cls, weight, omega, T, constants=CONSTANTS):
        return cls(omega=omega, weight=weight,
                   nbar=thermal_occupation(omega, T, constants))


def kernel_from_modes(modes, t):
    """f = sum w (1 + 2 nbar)(1 - cos wt), phi = sum w (wt - sin wt)."""
    if t < 0.0:
        raise ConfigError('time should be >= 0, got {}'.format(t))
    if not modes:
        return KernelValue.ZERO
    omega = np.array([mode.omega for mode in modes])
    weight = np.array([mode.weight for mode in modes])
    nbar = np.array([mode.nbar for mode in modes])
    phase = omega * t
    f = np.sum(weight * (1.0 + 2.0 * nbar) * one_minus_cos(phase))
    phi = np.sum(weight * x_minus_sin(phase))
    return KernelValue(float(f), float(phi))


@dataclass(frozen=True)
class DiscreteBath:
    modes: tuple

    def __post_init__(self):
        object.__setattr__(self, 'modes', tuple(self.modes))

    def kernel(self, t):
        return kernel_from_modes(self.modes, t)

    def f_bound(self):
        return float(sum(2.0 * m.weight * (1.0 + 2.0 * m.nbar)
                         for m in self.modes))


class Cutoff:
    """Cut-off function ``c(x)`` of the dimensionless frequency."""
    exponential = False

    def __call__(self, x):
        raise NotImplementedError

    def support(self):
        raise NotImplementedError


@dataclass(frozen=True)
class ExponentialCutoff(Cutoff):
    x_max: float
    exponential = True

    def __call__(self, x):
        return math.exp(-x / self.x_max)

    def support(self):
        return 0.0, 60.0 * self.x_max


@dataclass(frozen=True)
class GaussianCutoff(Cutoff):
    x_max: float

    def __call__(self, x):
        return math.exp(-(x / self.x_max) ** 2)

    def support(self):
        return 0.0, 9.0 * self.x_max


@dataclass(frozen=True)
class SharpCutoff(Cutoff):
    """Band limit: keeps ``0 <= x <= x_max``."""
    x_max: float

    def __call__(self, x):
        return 1.0 if x <= self.x_max else 0.0

    def support(self):
        return 0.0, self.x_max


@dataclass(frozen=True)
class PeakedWeight(Cutoff):
    """Narrow normalized Gaussian weight of total ``area`` around ``x0``.

    Not a cut-off in the strict sense (c(0) != 1); it turns the continuum
    into an effective single mode.
    """
    x0: float
    width: float
    area: float = 1.0

    def __call__(self, x):
        z = (x - self.x0) / self.width
        return self.area * math.exp(-0.5 * z * z) / (
            math.sqrt(2.0 * math.pi) * self.width)

    def support(self):
        return max(0.0, self.x0 - 12.0 * self.width), self.x0 + 12.0 * self.width


@dataclass(frozen=True)
class ContinuumBath:
    x_max: float
    tau: float
    cutoff: Cutoff = None
    coth_approx: bool = False
    zeta: float = 1.0

    def __post_init__(self):
        if not (self.x_max > 0.0 and self.tau > 0.0 and self.zeta >= 0.0):
            raise ConfigError('continuum bath needs x_max > 0, tau > 0, '
                              'zeta >= 0')
        if self.cutoff is None:
            object.__setattr__(self, 'cutoff', ExponentialCutoff(self.x_max))

    def kernel(self, t):
        value = continuum_kernel(self, t)
        return KernelValue(self.zeta * value.f, self.zeta * value.phi)

    def f_bound(self):
        if not self.cutoff.exponential:
            return None
        bound = 1.125 * self.x_max ** 2
        if not self.coth_approx:
            # sup of the Bose correction: 2 * int 2x / (e^2x - 1) dx
            bound += math.pi ** 2 / 6.0
        return self.zeta * bound


@dataclass(frozen=True)
class PathBath:
    """Explicit (t, f, phi) samples, linearly interpolated."""
    times: tuple
    f: tuple
    phi: tuple = field(default=None)

    def __post_init__(self):
        times = tuple(float(v) for v in self.times)
        f = tuple(float(v) for v in self.f)
        phi = tuple(float(v) for v in (self.phi if self.phi is not None
                                       else [0.0] * len(f)))
        if not times or not len(times) == len(f) == len(phi):
            raise ConfigError('path needs equal, non-empty times, f, phi')
        if times[0] < 0.0 or any(b <= a for a, b in zip(times, times[1:])):
            raise ConfigError('path times should be >= 0 and increasing')
        if min(f) < 0.0 or min(phi) < 0.0:
            raise ConfigError('path f and phi values should be >= 0')
        object.__setattr__(self, 'times', times)
        object.__setattr__(self, 'f', f)
        object.__setattr__(self, 'phi', phi)

    @classmethod
    def linear(cls, f_rate, phi_rate, t_max):
        return cls((0.0, t_max), (0.0, f_rate * t_max), (0.0, phi_rate * t_max))

    def kernel(self, t):
        if t < self.times[0] or t > self.times[-1]:
            raise ConfigError('time {} is outside the path [{}, {}]'.format(
                t, self.times[0], self.times[-1]))
        return KernelValue(float(np.interp(t, self.times, self.f)),
                           float(np.interp(t, self.times, self.phi)))

    def f_bound(self):
        return max(self.f)


BathModel = Union[DiscreteBath, ContinuumBath, PathBath]


def closed_form_f(t, x_max, tau):
    """f~ for the exponential cut-off with coth(x) -> 1.

    ``x_max**2 * (1 - cos(2 arctan u) / (1 + u**2))`` with ``u = t x_max / tau``,
    written without cancellation; saturates at ``x_max**2`` and peaks at
    ``1.125 x_max**2`` for ``u = sqrt(3)``.
    """
    if t < 0.0 or x_max <= 0.0 or tau <= 0.0:
        raise ConfigError('closed_form_f needs t >= 0, x_max > 0, tau > 0')
    v = (t * x_max / tau) ** 2
    return x_max ** 2 * (v / (1.0 + v)) * ((3.0 + v) / (1.0 + v))


def exponential_phi(t, x_max, tau):
    """phi~ for the exponential cut-off (no coth enters phi~)."""
    u = t * x_max / tau
    v = u * u
    return (2.0 / 3.0) * x_max ** 3 * u * (v / (1.0 + v)) * (
        (10.0 + 9.0 * v + 3.0 * v * v) / (1.0 + v) ** 2)


def _integrate(func, lo, hi, rtol, epsabs=0.0, **kwargs):
    settings = get_settings()
    with warnings.catch_warnings():
        warnings.simplefilter('error', IntegrationWarning)
        try:
            value, error = quad(func, lo, hi, epsabs=epsabs, epsrel=rtol,
                                limit=settings['QUAD_LIMIT'], **kwargs)
        except IntegrationWarning as err:
            raise QuadratureFailure('quadrature on [{}, {}] failed: {}'.format(
                lo, hi, err))
    return value, error


def _oscillating(weight_func, kind, s, lo, hi, rtol):
    """``int w(x) (1 - cos sx) dx`` (kind 'cos') or
    ``int w(x) (sx - sin sx) dx`` (kind 'sin') over ``[lo, hi]``.

    For fast oscillation the non-oscillating part is integrated on its own
    and the Fourier part only needs to be accurate relative to it.
    """
    if s * (hi - lo) <= DIRECT_PHASE:
        factor = one_minus_cos if kind == 'cos' else x_minus_sin
        return _integrate(lambda x: weight_func(x) * float(factor(s * x)),
                          lo, hi, rtol)
    if kind == 'cos':
        static, e1 = _integrate(weight_func, lo, hi, rtol)
        wave, e2 = _integrate(weight_func, lo, hi, rtol,
                              epsabs=0.1 * rtol * abs(static),
                              weight='cos', wvar=s)
        return static - wave, e1 + e2
    static, e1 = _integrate(lambda x: x * weight_func(x), lo, hi, rtol)
    wave, e2 = _integrate(weight_func, lo, hi, rtol,
                          epsabs=0.1 * rtol * abs(s * static),
                          weight='sin', wvar=s)
    return s * static - wave, s * e1 + e2


def _bose_correction(x):
    # coth(x) - 1 = 2 / (e^2x - 1), times x
    return 2.0 * x / math.expm1(2.0 * x) if x > 0.0 else 1.0


def _x_coth(x):
    return x / math.tanh(x) if x > 0.0 else 1.0


def _check_accuracy(value, error, rtol, what):
    if error > rtol * abs(value) and error > 1e-300:
        raise QuadratureFailure('{} reached relative error {:.2e} > {:.0e}'.format(
            what, error / max(abs(value), 1e-300), rtol))


def continuum_kernel(bath, t):
    """Dimensionless (f~, phi~) of a continuum bath at time ``t``.

    f~ = int x coth(x) c(x) (1 - cos(x t / tau)) dx
    phi~ = 1/3 int x^2 c(x) (x t / tau - sin(x t / tau)) dx
    """
    if t < 0.0:
        raise ConfigError('time should be >= 0, got {}'.format(t))
    if t == 0.0:
        return KernelValue.ZERO
    settings = get_settings()
    s = t / bath.tau
    cutoff = bath.cutoff

    if cutoff.exponential:
        rtol = settings['QUAD_RTOL']
        mu = cutoff.x_max
        f = closed_form_f(t, mu, bath.tau)
        phi = exponential_phi(t, mu, bath.tau)
        if not bath.coth_approx:
            correction, error = _oscillating(
                lambda x: _bose_correction(x) * math.exp(-x / mu), 'cos', s,
                0.0, BOSE_CUTOFF, rtol)
            f += correction
            _check_accuracy(f, error, rtol, 'f~ Bose correction')
        logger.debug('continuum_kernel: t/tau={!r} f~={!r} phi~={!r}'.format(
            s, f, phi))
        return KernelValue(max(f, 0.0), max(phi, 0.0))

    rtol = settings['QUAD_GENERIC_RTOL']
    lo, hi = cutoff.support()
    if s * hi > settings['QUAD_MAX_PHASE']:
        raise QuadratureFailure(
            'oscillation too fast for the generic cut-off: '
            't x_max / tau = {:.2e}'.format(s * hi))
    x_weight = (lambda x: x * cutoff(x)) if bath.coth_approx else \
        (lambda x: _x_coth(x) * cutoff(x))
    f, f_error = _oscillating(x_weight, 'cos', s, lo, hi, rtol)
    _check_accuracy(f, f_error, rtol, 'f~')
    phi, phi_error = _oscillating(lambda x: x * x * cutoff(x), 'sin', s,
                                  lo, hi, rtol)
    _check_accuracy(phi, phi_error, rtol, 'phi~')
    logger.debug('continuum_kernel (generic): t/tau={!r} f~={!r} phi~={!r}'.format(
        s, f, phi))
    return KernelValue(max(f, 0.0), max(phi / 3.0, 0.0))
