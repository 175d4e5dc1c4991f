"""
Two double-well quantum dots in a perfectly conducting box cavity.

Dots sit at ``(a/4, b/2, c/2)`` and ``(3a/4, b/2, c/2)`` with dipoles along z,
so only TM modes couple. With the odd-m modes suppressed the surviving
wave vectors are ``k = pi ((4 n_x + 2)/a, (2 n_y + 1)/b, 2 n_z / c)``.
"""
import enum
import logging
import math
from dataclasses import dataclass

import numpy as np

from .bath import (
    CONSTANTS,
    BathMode,
    ContinuumBath,
    DiscreteBath,
    ExponentialCutoff,
    SharpCutoff,
    thermal_occupation,
)
from .exceptions import CapTooLarge, ConfigError, InvalidMode
from .parallel import chunks, ordered_map
from .settings import get_settings

logger = logging.getLogger('bath_entanglement.cavity')

# hbar * omega_p in eV
MATERIALS = {
    'aluminum': 15.3,
}

# Mode-sum normalization: with it the dense-cavity limit of the mode sum
# equals zeta * f~ in the closed-form convention of f~.
MODE_NORMALIZATION = 24.0

DARK_TOL = 1e-12


def plasma_frequency(material, constants=CONSTANTS):
    try:
        energy_ev = MATERIALS[material]
    except KeyError:
        raise ConfigError('unknown material `{}`, known: {}'.format(
            material, sorted(MATERIALS)))
    return energy_ev * constants.e / constants.hbar


@dataclass(frozen=True)
class CavityConfig:
    d: float
    T: float
    a: float = 0.01
    b: float = 0.01
    c: float = 0.01
    omega_p: float = None

    def __post_init__(self):
        if self.omega_p is None:
            object.__setattr__(self, 'omega_p', plasma_frequency('aluminum'))
        for name in ('a', 'b', 'c', 'd', 'T', 'omega_p'):
            if not getattr(self, name) > 0.0:
                raise ConfigError('cavity `{}` should be > 0, got {}'.format(
                    name, getattr(self, name)))
        if not self.dipole_approximation_valid:
            logger.warning(
                'k_B T = {:.3e} J is not << 2 pi hbar c_0 / d = {:.3e} J, '
                'dipole approximation is questionable'.format(
                    CONSTANTS.k_B * self.T,
                    2 * math.pi * CONSTANTS.hbar * CONSTANTS.c_0 / self.d))

    @classmethod
    def for_material(cls, d, T, material='aluminum', **geometry):
        return cls(d=d, T=T, omega_p=plasma_frequency(material), **geometry)

    @property
    def volume(self):
        return self.a * self.b * self.c

    @property
    def dipole_approximation_valid(self):
        thermal = CONSTANTS.k_B * self.T
        return thermal < 2 * math.pi * CONSTANTS.hbar * CONSTANTS.c_0 / (
            10.0 * self.d)

    def scaled(self, factor):
        return CavityConfig(d=self.d, T=self.T, a=self.a * factor,
                            b=self.b * factor, c=self.c * factor,
                            omega_p=self.omega_p)


@dataclass(frozen=True)
class CavityDerived:
    zeta: float
    tau: float
    x_max: float

    def to_json(self):
        return {'zeta': self.zeta, 'tau': self.tau, 'x_max': self.x_max}


def derive_constants(cfg, constants=CONSTANTS):
    """zeta = e^2 d^2 mu_0 / (pi^2 c_0 hbar^3 beta^2), tau = beta hbar / 2,
    x_max = omega_p tau."""
    beta = 1.0 / (constants.k_B * cfg.T)
    zeta = (constants.e ** 2 * cfg.d ** 2 * constants.mu_0
            / (math.pi ** 2 * constants.c_0 * constants.hbar ** 3 * beta ** 2))
    tau = beta * constants.hbar / 2.0
    return CavityDerived(zeta=zeta, tau=tau, x_max=cfg.omega_p * tau)


def peak_time(cfg):
    derived = derive_constants(cfg)
    return math.sqrt(3.0) * derived.tau / derived.x_max


def saturation_f(cfg):
    derived = derive_constants(cfg)
    return derived.zeta * derived.x_max ** 2


class CouplingClass(enum.Enum):
    SYMMETRIC = 'symmetric'          # g_B = -g_A, couples to sx_A + sx_B
    ANTISYMMETRIC = 'antisymmetric'  # g_B = +g_A, couples to sx_A - sx_B
    DARK = 'dark'


@dataclass(frozen=True)
class CouplingAmplitudes:
    g_a: float
    g_b: float
    common_factor: float
    coupling_class: CouplingClass


def wave_vector(mode, cfg):
    m, n, p = mode
    return math.pi * m / cfg.a, math.pi * n / cfg.b, math.pi * p / cfg.c


def coupling_constants(mode, cfg, mass=1.0, constants=CONSTANTS):
    """Dimensionless dot amplitudes of TM mode ``(m, n, p)``.

    Full couplings are ``common_factor * g_a`` and ``common_factor * g_b``
    with ``common_factor = e d sqrt(mass / (mu_0 V)) k_perp / epsilon_0``.
    """
    kx, ky, kz = wave_vector(mode, cfg)
    k_perp = math.hypot(kx, ky)
    if k_perp == 0.0:
        raise InvalidMode('mode {} has k_perp = 0'.format(tuple(mode)))
    s = math.sin(ky * cfg.b / 2.0) * math.cos(kz * cfg.c / 2.0)
    g_a = math.sin(kx * cfg.a / 4.0) * s
    g_b = math.sin(3.0 * kx * cfg.a / 4.0) * s
    if max(abs(g_a), abs(g_b)) < DARK_TOL:
        coupling_class = CouplingClass.DARK
    elif g_a * g_b < 0.0:
        coupling_class = CouplingClass.SYMMETRIC
    else:
        coupling_class = CouplingClass.ANTISYMMETRIC
    common = (constants.e * cfg.d * math.sqrt(mass / (constants.mu_0 * cfg.volume))
              * k_perp / constants.epsilon_0)
    return CouplingAmplitudes(g_a=g_a, g_b=g_b, common_factor=common,
                              coupling_class=coupling_class)


@dataclass(frozen=True)
class CavityMode:
    n_x: int
    n_y: int
    n_z: int
    k: tuple
    omega: float

    @property
    def tm_indices(self):
        """``(m, n, p)`` of the underlying TM mode."""
        return 4 * self.n_x + 2, 2 * self.n_y + 1, 2 * self.n_z


class ModeSet:
    """Sorted surviving modes held as arrays; iterates as ``CavityMode``."""

    def __init__(self, indices, k, omega):
        self.indices = indices
        self.k = k
        self.omega = omega

    def __len__(self):
        return self.omega.size

    def __getitem__(self, item):
        n_x, n_y, n_z = (int(v) for v in self.indices[item])
        return CavityMode(n_x, n_y, n_z, tuple(float(v) for v in self.k[item]),
                          float(self.omega[item]))

    def __iter__(self):
        return (self[i] for i in range(len(self)))

    @property
    def k_perp_squared(self):
        return self.k[:, 0] ** 2 + self.k[:, 1] ** 2


def estimated_mode_count(cfg, omega_cap, constants=CONSTANTS):
    # octant volume pi K^3 / 6 over the cell volume 16 pi^3 / V
    k_cap = omega_cap / constants.c_0
    return cfg.volume * k_cap ** 3 / (96.0 * math.pi ** 2)


def _dot_amplitude(cfg, kx, ky, kz):
    return (np.sin(kx * cfg.a / 4.0) * np.sin(ky * cfg.b / 2.0)
            * np.cos(kz * cfg.c / 2.0))


def _slab(cfg, omega_cap, n_x_range, constants):
    k_cap = omega_cap / constants.c_0
    found = []
    for n_x in n_x_range:
        kx = math.pi * (4 * n_x + 2) / cfg.a
        rest = k_cap ** 2 - kx ** 2
        if rest < 0.0:
            continue
        n_y_max = int(math.floor((math.sqrt(rest) * cfg.b / math.pi - 1.0) / 2.0))
        n_z_max = int(math.floor(math.sqrt(rest) * cfg.c / (2.0 * math.pi)))
        if n_y_max < 0:
            continue
        n_y, n_z = np.meshgrid(np.arange(n_y_max + 1), np.arange(n_z_max + 1),
                               indexing='ij')
        n_y, n_z = n_y.ravel(), n_z.ravel()
        ky = math.pi * (2 * n_y + 1) / cfg.b
        kz = 2.0 * math.pi * n_z / cfg.c
        omega = constants.c_0 * np.sqrt(kx ** 2 + ky ** 2 + kz ** 2)
        keep = (omega <= omega_cap) & (
            np.abs(_dot_amplitude(cfg, kx, ky, kz)) >= DARK_TOL)
        count = int(np.count_nonzero(keep))
        if count:
            found.append((np.column_stack([np.full(count, n_x), n_y[keep],
                                           n_z[keep]]),
                          np.column_stack([np.full(count, kx), ky[keep],
                                           kz[keep]]),
                          omega[keep]))
    return found


def enumerate_modes(cfg, omega_cap, budget=None, workers=None,
                    constants=CONSTANTS):
    """All surviving modes with ``omega <= omega_cap``, sorted by omega."""
    settings = get_settings()
    budget = settings['MODE_BUDGET'] if budget is None else budget
    workers = workers or settings['WORKERS']
    if not 0.0 < omega_cap <= cfg.omega_p:
        raise ConfigError('omega_cap should be in (0, omega_p = {:.4e}]'.format(
            cfg.omega_p))
    estimate = estimated_mode_count(cfg, omega_cap, constants)
    if estimate > budget:
        raise CapTooLarge('about {:.3g} modes below omega_cap, budget is {}'.format(
            estimate, budget))

    k_cap = omega_cap / constants.c_0
    n_x_max = int(math.floor((k_cap * cfg.a / math.pi - 2.0) / 4.0))
    if n_x_max < 0:
        return ModeSet(np.zeros((0, 3), dtype=int), np.zeros((0, 3)),
                       np.zeros(0))
    n_x_all = np.arange(n_x_max + 1)
    slabs = ordered_map(lambda part: _slab(cfg, omega_cap, n_x_all[part],
                                           constants),
                        chunks(n_x_all.size, workers), workers)
    pieces = [piece for slab in slabs for piece in slab]
    if not pieces:
        return ModeSet(np.zeros((0, 3), dtype=int), np.zeros((0, 3)),
                       np.zeros(0))
    indices = np.concatenate([piece[0] for piece in pieces]).astype(int)
    k = np.concatenate([piece[1] for piece in pieces])
    omega = np.concatenate([piece[2] for piece in pieces])
    order = np.lexsort((indices[:, 2], indices[:, 1], indices[:, 0], omega))
    logger.debug('enumerate_modes: {} modes below {:.4e} rad/s '
                 '(estimate {:.0f})'.format(omega.size, omega_cap, estimate))
    return ModeSet(indices[order], k[order], omega[order])


def mode_weights(modes, cfg, mass=1.0, constants=CONSTANTS):
    """Dimensionless weights ``w_k = N g_k^2 / (2 mass hbar omega_k^3)``.

    ``g_k`` is the dot-A coupling (its sign drops out); ``mass`` cancels.
    """
    common_squared = ((constants.e * cfg.d) ** 2 * mass
                      / (constants.mu_0 * cfg.volume * constants.epsilon_0 ** 2))
    amplitude = _dot_amplitude(cfg, modes.k[:, 0], modes.k[:, 1], modes.k[:, 2])
    g_squared = common_squared * modes.k_perp_squared * amplitude ** 2
    return MODE_NORMALIZATION * g_squared / (
        2.0 * mass * constants.hbar * modes.omega ** 3)


def mode_weight(mode, cfg, mass=1.0, constants=CONSTANTS):
    kx, ky, kz = mode.k
    single = ModeSet(np.array([[mode.n_x, mode.n_y, mode.n_z]]),
                     np.array([[kx, ky, kz]]), np.array([mode.omega]))
    return float(mode_weights(single, cfg, mass, constants)[0])


def mode_bath(cfg, omega_cap, mass=1.0, constants=CONSTANTS):
    """Discrete bath of all surviving modes below ``omega_cap``."""
    modes = enumerate_modes(cfg, omega_cap, constants=constants)
    weights = mode_weights(modes, cfg, mass, constants)
    nbar = thermal_occupation(modes.omega, cfg.T, constants)
    return DiscreteBath(tuple(BathMode(omega=float(o), weight=float(w),
                                       nbar=float(n))
                              for o, w, n in zip(modes.omega, weights,
                                                 np.atleast_1d(nbar))))


def cavity_bath(cfg):
    """Continuum bath of the cavity, scaled by zeta."""
    derived = derive_constants(cfg)
    coth_approx = derived.x_max >= get_settings()['COTH_APPROX_MIN_XMAX']
    return ContinuumBath(x_max=derived.x_max, tau=derived.tau,
                         cutoff=ExponentialCutoff(derived.x_max),
                         coth_approx=coth_approx, zeta=derived.zeta)


def band_bath(cfg, omega_cap):
    """Continuum restricted to ``omega <= omega_cap`` with the full coth."""
    derived = derive_constants(cfg)
    x_cap = omega_cap * derived.tau
    return ContinuumBath(x_max=x_cap, tau=derived.tau, cutoff=SharpCutoff(x_cap),
                         coth_approx=False, zeta=derived.zeta)


def cavity_kernel(cfg, t):
    return cavity_bath(cfg).kernel(t)
