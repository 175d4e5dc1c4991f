import enum
import logging
from dataclasses import dataclass

import numpy as np

from .linalg import hermitian_eigenvalues, partial_transpose
from .settings import get_settings

logger = logging.getLogger('bath_entanglement.entanglement')


class Verdict(enum.Enum):
    SEPARABLE = 'separable'
    ENTANGLED = 'entangled'
    PPT_INCONCLUSIVE = 'ppt_inconclusive'


@dataclass(frozen=True)
class EntanglementReport:
    min_pt_eigenvalue: float
    negativity: float
    verdict: Verdict
    pt_eigenvalues: tuple = ()


def pt_spectra(matrices, dims):
    """Ascending eigenvalues of the partial transpose of each matrix."""
    return hermitian_eigenvalues(partial_transpose(matrices, dims))


def negativities(spectra, tol=None):
    tol = get_settings()['TOL_PPT'] if tol is None else tol
    spectra = np.asarray(spectra)
    return np.sum(np.where(spectra < -tol, -spectra, 0.0), axis=-1)


def _verdict(negativity, conclusive):
    if negativity > 0.0:
        return Verdict.ENTANGLED
    return Verdict.SEPARABLE if conclusive else Verdict.PPT_INCONCLUSIVE


def analyze(rho):
    """Partial-transpose report of a density matrix.

    PPT is necessary and sufficient for separability only in 2x2 and 2x3;
    elsewhere a non-negative partial transpose gives ``PPT_INCONCLUSIVE``.
    """
    spectrum = pt_spectra(rho.matrix, rho.dims)
    negativity = float(negativities(spectrum))
    report = EntanglementReport(
        min_pt_eigenvalue=float(spectrum[0]),
        negativity=negativity,
        verdict=_verdict(negativity, rho.dims.conclusive),
        pt_eigenvalues=tuple(float(v) for v in spectrum),
    )
    logger.debug('analyze: lambda0={!r} negativity={!r} {}'.format(
        report.min_pt_eigenvalue, report.negativity, report.verdict.value))
    return report


def analyze_batch(matrices, dims):
    """``(lambda0, negativity)`` arrays for a stack of density matrices."""
    spectra = pt_spectra(matrices, dims)
    return spectra[..., 0], negativities(spectra)


def min_pt_eigenvalue(rho):
    return analyze(rho).min_pt_eigenvalue
