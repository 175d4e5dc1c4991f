"""
Small dense complex matrix kernel.

Matrices are numpy arrays of shape ``(d, d)`` or stacks ``(..., d, d)``.
Bipartite index convention, shared by every module: basis state
``|i>_A (x) |k>_B`` has row index ``i * dB + k``.
"""
import logging
from dataclasses import dataclass

import numpy as np

from .exceptions import ConvergenceFailure, DimensionMismatch, NonHermitianInput
from .settings import get_settings

logger = logging.getLogger('bath_entanglement.linalg')

CONCLUSIVE_PPT_DIMS = frozenset({(2, 2), (2, 3), (3, 2)})


@dataclass(frozen=True)
class BipartiteDims:
    dA: int
    dB: int

    def __post_init__(self):
        for name in ('dA', 'dB'):
            value = getattr(self, name)
            if isinstance(value, bool) or int(value) != value or value < 1:
                raise DimensionMismatch(
                    '{} should be a positive integer, got {}'.format(name, value))

    @property
    def dim(self):
        return self.dA * self.dB

    @property
    def conclusive(self):
        """PPT decides separability only for 2x2, 2x3 and 3x2."""
        return (self.dA, self.dB) in CONCLUSIVE_PPT_DIMS

    def check(self, matrix):
        if matrix.shape[-1] != self.dim:
            raise DimensionMismatch(
                'matrix dimension {} does not match dims {}x{}'.format(
                    matrix.shape[-1], self.dA, self.dB))


def as_matrix(data):
    matrix = np.asarray(data, dtype=complex)
    if matrix.ndim < 2 or matrix.shape[-1] != matrix.shape[-2]:
        raise DimensionMismatch(
            'square matrix expected, got shape {}'.format(matrix.shape))
    return matrix


def dagger(matrix):
    return np.conj(np.swapaxes(matrix, -1, -2))


def hermitize(matrix, tol=None):
    """Return ``(M + M^H) / 2`` after checking ``M`` is Hermitian within tol.

    ``tol`` is relative to the largest entry magnitude.
    """
    tol = get_settings()['TOL_HERM'] if tol is None else tol
    matrix = as_matrix(matrix)
    scale = np.max(np.abs(matrix)) if matrix.size else 0.0
    deviation = np.max(np.abs(matrix - dagger(matrix))) if matrix.size else 0.0
    if deviation > tol * max(scale, np.finfo(float).tiny):
        raise NonHermitianInput(
            'matrix is not Hermitian: max |M - M^H| = {:.3e}'.format(deviation))
    return 0.5 * (matrix + dagger(matrix))


def _off_diagonal_norm(stack):
    d = stack.shape[-1]
    mask = ~np.eye(d, dtype=bool)
    return np.sqrt(np.sum(np.abs(stack[:, mask]) ** 2, axis=-1))


def _rotate(stack, p, q, live):
    # one complex Jacobi rotation zeroing (p, q) in the live matrices
    b = stack[:, p, q]
    absb = np.abs(b)
    index = np.flatnonzero(live & (absb > 0.0))
    if not index.size:
        return
    sub = stack[index]
    b = b[index]
    absb = absb[index]
    phase = np.exp(1j * np.angle(b))
    app = sub[:, p, p].real.copy()
    aqq = sub[:, q, q].real.copy()
    theta = (aqq - app) / (2.0 * absb)
    t = np.where(theta >= 0.0, 1.0, -1.0) / (np.abs(theta) + np.hypot(theta, 1.0))
    c = 1.0 / np.sqrt(t * t + 1.0)
    s = t * c

    col_p = sub[:, :, p].copy()
    col_q = sub[:, :, q].copy()
    sub[:, :, p] = c[:, None] * col_p - (s * np.conj(phase))[:, None] * col_q
    sub[:, :, q] = s[:, None] * col_p + (c * np.conj(phase))[:, None] * col_q
    row_p = sub[:, p, :].copy()
    row_q = sub[:, q, :].copy()
    sub[:, p, :] = c[:, None] * row_p - (s * phase)[:, None] * row_q
    sub[:, q, :] = s[:, None] * row_p + (c * phase)[:, None] * row_q

    sub[:, p, q] = 0.0
    sub[:, q, p] = 0.0
    sub[:, p, p] = app - t * absb
    sub[:, q, q] = aqq + t * absb
    stack[index] = sub


def hermitian_eigenvalues(matrix):
    """Eigenvalues of a Hermitian matrix (or stack), ascending.

    Cyclic Jacobi sweeps, run on the whole stack at once, until the
    off-diagonal Frobenius norm of every matrix drops below
    ``JACOBI_RTOL * ||M||``. A matrix that has converged is left alone
    while the rest of the stack keeps sweeping.
    """
    settings = get_settings()
    matrix = hermitize(matrix)
    shape = matrix.shape
    d = shape[-1]
    stack = matrix.reshape((-1, d, d)).copy()
    threshold = settings['JACOBI_RTOL'] * np.sqrt(
        np.sum(np.abs(stack) ** 2, axis=(-2, -1)))
    pairs = [(p, q) for p in range(d - 1) for q in range(p + 1, d)]

    sweeps = 0
    live = _off_diagonal_norm(stack) > threshold
    while np.any(live):
        if sweeps >= settings['JACOBI_MAX_SWEEPS']:
            raise ConvergenceFailure(
                'Jacobi eigensolver did not converge in {} sweeps '
                '({} of {} matrices left)'.format(
                    sweeps, int(np.count_nonzero(live)), stack.shape[0]))
        for p, q in pairs:
            _rotate(stack, p, q, live)
        sweeps += 1
        live = _off_diagonal_norm(stack) > threshold
    logger.debug('Jacobi: {} matrices of size {} in {} sweeps'.format(
        stack.shape[0], d, sweeps))

    values = np.sort(np.diagonal(stack, axis1=-2, axis2=-1).real, axis=-1)
    return values.reshape(shape[:-1])


def partial_transpose(matrix, dims):
    """Transpose subsystem A: ``N[(i,k),(j,l)] = M[(j,k),(i,l)]``."""
    matrix = as_matrix(matrix)
    dims.check(matrix)
    lead = matrix.shape[:-2]
    blocks = matrix.reshape(lead + (dims.dA, dims.dB, dims.dA, dims.dB))
    return np.swapaxes(blocks, -4, -2).reshape(matrix.shape)


def tensor_product(a, b):
    """Kronecker product, ``entry[(i,k),(j,l)] = A[i,j] * B[k,l]``."""
    return np.kron(as_matrix(a), as_matrix(b))
