"""
Qudit pure states, bipartite density matrices and exact dephasing.

In the pointer basis ``|i>_A (x) |j>_B`` with pointer values
``L_ij = a_i + b_j`` a common bath multiplies every matrix element by

    exp(-(L_ij - L_kl)**2 * f + 1j * (L_ij**2 - L_kl**2) * phi)

so ``(f, phi)`` fully determine the reduced state.
"""
import logging
from dataclasses import dataclass, field

import numpy as np

from .exceptions import (
    ConfigError,
    DimensionMismatch,
    InvalidState,
    NotNormalized,
)
from .linalg import BipartiteDims, hermitian_eigenvalues, hermitize, tensor_product
from .settings import get_settings

logger = logging.getLogger('bath_entanglement.states')

TRACE_TOL = 1e-10
POSITIVITY_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class PureState:
    amplitudes: np.ndarray

    def __post_init__(self):
        amplitudes = np.asarray(self.amplitudes, dtype=complex).ravel()
        if amplitudes.size < 1:
            raise DimensionMismatch('pure state needs at least one amplitude')
        amplitudes.setflags(write=False)
        object.__setattr__(self, 'amplitudes', amplitudes)

    @classmethod
    def from_amplitudes(cls, values, normalize=False):
        amplitudes = np.asarray(values, dtype=complex).ravel()
        if normalize:
            norm = np.linalg.norm(amplitudes)
            if norm == 0.0:
                raise NotNormalized('zero vector can not be normalized')
            amplitudes = amplitudes / norm
        return cls(amplitudes)

    @classmethod
    def basis(cls, dim, index):
        amplitudes = np.zeros(dim, dtype=complex)
        amplitudes[index] = 1.0
        return cls(amplitudes)

    @classmethod
    def plus(cls):
        return cls.from_amplitudes([1.0, 1.0], normalize=True)

    @classmethod
    def minus(cls):
        return cls.from_amplitudes([1.0, -1.0], normalize=True)

    @classmethod
    def uniform(cls, dim):
        return cls.from_amplitudes(np.ones(dim), normalize=True)

    @property
    def dim(self):
        return self.amplitudes.size

    @property
    def norm(self):
        return float(np.linalg.norm(self.amplitudes))

    def is_normalized(self, tol=None):
        tol = get_settings()['TOL_NORM'] if tol is None else tol
        return abs(self.norm ** 2 - 1.0) <= tol

    def projector(self):
        return np.outer(self.amplitudes, np.conj(self.amplitudes))


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Bipartite density matrix; validated on construction."""
    matrix: np.ndarray
    dims: BipartiteDims

    def __post_init__(self):
        matrix = np.asarray(self.matrix, dtype=complex)
        if matrix.ndim != 2:
            raise DimensionMismatch('density matrix should be 2-dimensional')
        self.dims.check(matrix)
        matrix = hermitize(matrix)
        trace = np.trace(matrix).real
        if abs(trace - 1.0) > TRACE_TOL:
            raise InvalidState('trace is {!r}, expected 1'.format(trace))
        lowest = hermitian_eigenvalues(matrix)[0]
        if lowest < -POSITIVITY_TOL:
            raise InvalidState(
                'density matrix has negative eigenvalue {:.3e}'.format(lowest))
        matrix.setflags(write=False)
        object.__setattr__(self, 'matrix', matrix)

    @property
    def dim(self):
        return self.dims.dim


@dataclass(frozen=True)
class CouplingSpectrum:
    """Eigenvalues of the coupling agents S^A and S^B."""
    a: tuple
    b: tuple

    def __post_init__(self):
        a = tuple(float(v) for v in self.a)
        b = tuple(float(v) for v in self.b)
        if not a or not b:
            raise DimensionMismatch('coupling spectra should not be empty')
        if not np.all(np.isfinite(a + b)):
            raise ConfigError('coupling eigenvalues should be finite')
        object.__setattr__(self, 'a', a)
        object.__setattr__(self, 'b', b)

    @classmethod
    def from_flat(cls, values, dims):
        values = list(values)
        if len(values) != dims.dA + dims.dB:
            raise DimensionMismatch(
                '{} coupling values given, {}+{} expected'.format(
                    len(values), dims.dA, dims.dB))
        return cls(tuple(values[:dims.dA]), tuple(values[dims.dA:]))

    @property
    def dims(self):
        return BipartiteDims(len(self.a), len(self.b))

    def check(self, dims):
        if (len(self.a), len(self.b)) != (dims.dA, dims.dB):
            raise DimensionMismatch(
                'spectrum lengths {}x{} do not match dims {}x{}'.format(
                    len(self.a), len(self.b), dims.dA, dims.dB))

    def pointer_vector(self):
        """``L[i * dB + j] = a_i + b_j``."""
        return np.add.outer(np.asarray(self.a), np.asarray(self.b)).ravel()


@dataclass(frozen=True)
class KernelValue:
    """Decoherence exponent ``f`` and phase ``phi`` at one time."""
    f: float
    phi: float

    def __post_init__(self):
        f, phi = float(self.f), float(self.phi)
        if not (np.isfinite(f) and np.isfinite(phi)) or f < 0.0 or phi < 0.0:
            raise ConfigError(
                'kernel values should be finite and >= 0, got f={}, phi={}'.format(
                    f, phi))
        object.__setattr__(self, 'f', f)
        object.__setattr__(self, 'phi', phi)

    def __add__(self, other):
        return KernelValue(self.f + other.f, self.phi + other.phi)


KernelValue.ZERO = KernelValue(0.0, 0.0)


@dataclass(frozen=True)
class PointerSpectrum:
    values: tuple
    labels: tuple
    classes: tuple = field(default=())

    @property
    def degenerate(self):
        return any(len(group) > 1 for group in self.classes)

    def same_class(self):
        """Boolean ``(d, d)`` mask of index pairs sharing a class."""
        label = np.empty(len(self.values), dtype=int)
        for number, group in enumerate(self.classes):
            label[list(group)] = number
        return np.equal.outer(label, label)


def product_state(psi_a, psi_b):
    for name, psi in (('A', psi_a), ('B', psi_b)):
        if not psi.is_normalized():
            raise NotNormalized(
                'state {} has norm {!r}, expected 1'.format(name, psi.norm))
    dims = BipartiteDims(psi_a.dim, psi_b.dim)
    return DensityMatrix(tensor_product(psi_a.projector(), psi_b.projector()),
                         dims)


def pointer_values(spectrum, tol=None):
    """Group pointer values ``a_i + b_j`` into classes equal within ``tol``."""
    tol = get_settings()['TOL_DEGEN'] if tol is None else tol
    values = spectrum.pointer_vector()
    d_b = len(spectrum.b)
    labels = tuple('{}{}'.format(index // d_b, index % d_b)
                   for index in range(values.size))
    order = np.argsort(values, kind='stable')
    classes, current = [], [int(order[0])]
    for prev, index in zip(order[:-1], order[1:]):
        if values[index] - values[prev] <= tol:
            current.append(int(index))
        else:
            classes.append(tuple(sorted(current)))
            current = [int(index)]
    classes.append(tuple(sorted(current)))
    return PointerSpectrum(values=tuple(float(v) for v in values),
                           labels=labels, classes=tuple(classes))


def _exponents(spectrum):
    pointer = spectrum.pointer_vector()
    damping = np.subtract.outer(pointer, pointer) ** 2
    phases = np.subtract.outer(pointer ** 2, pointer ** 2)
    return damping, phases


def evolve_batch(rho0, spectrum, f, phi):
    """Evolve ``rho0`` to every ``(f[n], phi[n])``; returns ``(n, d, d)``.

    No sign restriction on ``f`` or ``phi``; results are raw matrices.
    """
    spectrum.check(rho0.dims)
    f = np.atleast_1d(np.asarray(f, dtype=float))
    phi = np.atleast_1d(np.asarray(phi, dtype=float))
    f, phi = np.broadcast_arrays(f, phi)
    damping, phases = _exponents(spectrum)
    exponent = (-damping[None, :, :] * f[:, None, None]
                + 1j * phases[None, :, :] * phi[:, None, None])
    return rho0.matrix[None, :, :] * np.exp(exponent)


def evolve(rho0, spectrum, kernel):
    spectrum.check(rho0.dims)
    damping, phases = _exponents(spectrum)
    factor = np.exp(-damping * kernel.f + 1j * phases * kernel.phi)
    logger.debug('evolve: f={!r} phi={!r}'.format(kernel.f, kernel.phi))
    return DensityMatrix(rho0.matrix * factor, rho0.dims)


def limit_state(rho0, spectrum, tol=None):
    """State reached for f -> infinity: only same-class coherences survive."""
    tol = get_settings()['TOL_DEGEN'] if tol is None else tol
    spectrum.check(rho0.dims)
    keep = pointer_values(spectrum, tol).same_class()
    return DensityMatrix(np.where(keep, rho0.matrix, 0.0), rho0.dims)
