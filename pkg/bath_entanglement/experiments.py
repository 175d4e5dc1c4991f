"""
Scans and searches over the decoherence plane.

``scan_plane`` tabulates the smallest partial-transpose eigenvalue over an
(f, phi) grid, ``run_trajectory`` follows the path a bath takes through that
plane, and ``separability_time`` looks for the time after which the state
stays separable.
"""
import enum
import logging
import math
from dataclasses import dataclass

import numpy as np
import pandas as pd

from .entanglement import analyze, analyze_batch
from .exceptions import ConfigError
from .linalg import BipartiteDims
from .parallel import chunks, ordered_map
from .settings import get_settings
from .states import (
    PureState,
    evolve,
    evolve_batch,
    pointer_values,
    product_state,
)

logger = logging.getLogger('bath_entanglement.experiments')

# largest stack handed to the eigensolver in one piece
SCAN_CHUNK = 4096

SCAN_COLUMNS = ('f', 'phi', 'lambda0', 'negativity')
TRAJECTORY_COLUMNS = ('t', 'f', 'phi', 'lambda0', 'negativity')


class Spacing(enum.Enum):
    LINEAR = 'linear'
    LOG = 'log'


def _axis(values, name):
    values = tuple(float(v) for v in values)
    if not values:
        raise ConfigError('{} axis should not be empty'.format(name))
    if not all(math.isfinite(v) and v >= 0.0 for v in values):
        raise ConfigError('{} values should be finite and >= 0'.format(name))
    if any(b < a for a, b in zip(values, values[1:])):
        raise ConfigError('{} values should be sorted ascending'.format(name))
    return values


@dataclass(frozen=True)
class ScanGrid:
    f_values: tuple
    phi_values: tuple
    spacing: Spacing = Spacing.LINEAR

    def __post_init__(self):
        object.__setattr__(self, 'f_values', _axis(self.f_values, 'f'))
        object.__setattr__(self, 'phi_values', _axis(self.phi_values, 'phi'))
        object.__setattr__(self, 'spacing', Spacing(self.spacing))

    @classmethod
    def linear(cls, f_max, phi_max, n):
        if n < 1:
            raise ConfigError('grid needs at least one point per axis')
        return cls(np.linspace(0.0, f_max, n), np.linspace(0.0, phi_max, n),
                   Spacing.LINEAR)

    @classmethod
    def log(cls, f_min, f_max, phi_min, phi_max, n):
        if not (0.0 < f_min <= f_max and 0.0 < phi_min <= phi_max) or n < 1:
            raise ConfigError('log grid needs 0 < min <= max and n >= 1')
        return cls(np.geomspace(f_min, f_max, n),
                   np.geomspace(phi_min, phi_max, n), Spacing.LOG)

    @classmethod
    def default(cls):
        settings = get_settings()
        return cls.linear(settings['GRID_F_MAX'], settings['GRID_PHI_MAX'],
                          settings['GRID_POINTS'])

    @property
    def shape(self):
        return len(self.f_values), len(self.phi_values)

    def points(self):
        """Flat ``(f, phi)`` arrays, f-major."""
        f, phi = np.meshgrid(self.f_values, self.phi_values, indexing='ij')
        return f.ravel(), phi.ravel()


def default_initial_state(dims):
    """``|-> (x) |+>`` for two qubits; B becomes the uniform superposition
    for larger dB."""
    dims = dims if isinstance(dims, BipartiteDims) else BipartiteDims(*dims)
    if dims.dA != 2:
        raise ConfigError('default initial state needs dA = 2, got {}'.format(
            dims.dA))
    return product_state(PureState.minus(), PureState.uniform(dims.dB))


def scan_plane(rho0, spectrum, grid, workers=None):
    """One row per grid point, f-major: ``f, phi, lambda0, negativity``."""
    spectrum.check(rho0.dims)
    f, phi = grid.points()
    workers = workers or get_settings()['WORKERS']
    parts = max(workers, -(-f.size // SCAN_CHUNK))

    def _scan(part):
        matrices = evolve_batch(rho0, spectrum, f[part], phi[part])
        return analyze_batch(matrices, rho0.dims)

    results = ordered_map(_scan, chunks(f.size, parts), workers)
    lambda0 = np.concatenate([r[0] for r in results])
    negativity = np.concatenate([r[1] for r in results])
    logger.debug('scan_plane: {}x{} grid, min lambda0={!r}'.format(
        grid.shape[0], grid.shape[1], float(lambda0.min())))
    return pd.DataFrame({'f': f, 'phi': phi, 'lambda0': lambda0,
                         'negativity': negativity},
                        columns=list(SCAN_COLUMNS))


@dataclass(frozen=True)
class TrajectoryResult:
    times: tuple
    kernels: tuple
    lambda0: tuple
    negativity: tuple

    def __post_init__(self):
        if not (len(self.times) == len(self.kernels) == len(self.lambda0)
                == len(self.negativity)):
            raise ConfigError('trajectory columns should have equal lengths')

    def __len__(self):
        return len(self.times)

    def to_frame(self):
        return pd.DataFrame({
            't': self.times,
            'f': [k.f for k in self.kernels],
            'phi': [k.phi for k in self.kernels],
            'lambda0': self.lambda0,
            'negativity': self.negativity,
        }, columns=list(TRAJECTORY_COLUMNS))


def _check_times(times):
    times = tuple(float(t) for t in times)
    if not times:
        raise ConfigError('at least one time is needed')
    if times[0] < 0.0 or any(b < a for a, b in zip(times, times[1:])):
        raise ConfigError('times should be >= 0 and sorted ascending')
    return times


def time_grid(t_max, n, spacing=Spacing.LINEAR, decades=None):
    """``n`` times ending at ``t_max``; the log grid starts with 0."""
    if not t_max > 0.0 or n < 2:
        raise ConfigError('time grid needs t_max > 0 and n >= 2')
    if Spacing(spacing) is Spacing.LINEAR:
        return tuple(np.linspace(0.0, t_max, n))
    decades = get_settings()['SEPTIME_DECADES'] if decades is None else decades
    return (0.0,) + tuple(np.geomspace(t_max * 10.0 ** -decades, t_max, n - 1))


def run_trajectory(rho0, spectrum, bath, times, workers=None):
    """Kernel, lambda0 and negativity at every time, each point computed
    independently as ``analyze(evolve(rho0, spectrum, bath.kernel(t)))``."""
    spectrum.check(rho0.dims)
    times = _check_times(times)

    def _point(t):
        kernel = bath.kernel(t)
        return kernel, analyze(evolve(rho0, spectrum, kernel))

    points = ordered_map(_point, times, workers)
    return TrajectoryResult(
        times=times,
        kernels=tuple(kernel for kernel, _ in points),
        lambda0=tuple(report.min_pt_eigenvalue for _, report in points),
        negativity=tuple(report.negativity for _, report in points),
    )


class SeparabilityOutcome(enum.Enum):
    TIME = 'time'
    NEVER = 'never'
    NOT_REACHED = 'not_reached'


@dataclass(frozen=True)
class SeparabilityResult:
    outcome: SeparabilityOutcome
    t_star: float = None

    def to_json(self):
        return {'result': self.outcome.value, 't_star': self.t_star}


def persistent_entanglement(rho0, spectrum, tol=None):
    """True when the pointer structure protects entanglement from damping.

    That is the case when ``rho0`` holds a coherence between two different
    product states ``|ij>``, ``|kl>`` (``i != k``, ``j != l``) sharing one
    pointer value, so it survives any f, while some other coherence is
    damped.
    """
    tol = get_settings()['TOL_DEGEN'] if tol is None else tol
    pointer = pointer_values(spectrum, tol)
    if not pointer.degenerate:
        return False
    same = pointer.same_class()
    dims = rho0.dims
    index = np.arange(dims.dim)
    a_index, b_index = index // dims.dB, index % dims.dB
    cross = (np.not_equal.outer(a_index, a_index)
             & np.not_equal.outer(b_index, b_index))
    coherent = np.abs(rho0.matrix) > tol
    protected = np.any(cross & coherent & same)
    damped = np.any(coherent & ~same)
    return bool(protected and damped)


def separability_time(rho0, spectrum, bath, t_max):
    """Time ``t*`` after which lambda0 stays >= -TOL_PPT up to ``t_max``.

    ``NEVER`` when ``persistent_entanglement`` holds, the bath reports a
    finite ``f_bound`` and lambda0 is negative somewhere on ``[0, t_max]``.
    ``NOT_REACHED`` when the state is otherwise still entangled at
    ``t_max``. Otherwise the last negative point of a log time grid is
    bracketed and bisected to ``SEPTIME_RTOL``; 0 when no grid point is
    negative.
    """
    settings = get_settings()
    spectrum.check(rho0.dims)
    if not t_max > 0.0:
        raise ConfigError('t_max should be > 0, got {}'.format(t_max))
    tol = settings['TOL_PPT']

    def _lambda0(t):
        return analyze(evolve(rho0, spectrum, bath.kernel(t))).min_pt_eigenvalue

    protected = persistent_entanglement(rho0, spectrum)
    bounded = bath.f_bound() is not None
    if _lambda0(t_max) < -tol:
        if protected and bounded:
            logger.debug('separability_time: protected coherence, f bounded by '
                         '{!r}, never separable'.format(bath.f_bound()))
            return SeparabilityResult(SeparabilityOutcome.NEVER)
        logger.debug('separability_time: entangled at t_max={!r}'.format(t_max))
        return SeparabilityResult(SeparabilityOutcome.NOT_REACHED)

    times = np.geomspace(t_max * 10.0 ** -settings['SEPTIME_DECADES'], t_max,
                         settings['SEPTIME_GRID_POINTS'])
    times[-1] = t_max
    kernels = ordered_map(bath.kernel, times)
    matrices = evolve_batch(rho0, spectrum, [k.f for k in kernels],
                            [k.phi for k in kernels])
    lambda0, _ = analyze_batch(matrices, rho0.dims)
    negative = np.flatnonzero(lambda0 < -tol)
    if not negative.size:
        return SeparabilityResult(SeparabilityOutcome.TIME, 0.0)
    if protected and bounded:
        logger.debug('separability_time: protected coherence was entangled, '
                     'never separable')
        return SeparabilityResult(SeparabilityOutcome.NEVER)

    last = int(negative[-1])
    if last == times.size - 1:
        return SeparabilityResult(SeparabilityOutcome.NOT_REACHED)
    lo, hi = float(times[last]), float(times[last + 1])
    while hi - lo > settings['SEPTIME_RTOL'] * hi:
        mid = 0.5 * (lo + hi)
        if _lambda0(mid) < -tol:
            lo = mid
        else:
            hi = mid
    logger.debug('separability_time: t*={!r}'.format(hi))
    return SeparabilityResult(SeparabilityOutcome.TIME, hi)
