import json
import logging
import os

from .singleton import Singleton

logger = logging.getLogger('bath_entanglement.settings')

SETTINGS_ENV = 'BATH_ENTANGLEMENT_SETTINGS'

DEFAULTS = {
    # linalg / states / entanglement tolerances
    'TOL_HERM': 1e-9,
    'TOL_PPT': 1e-11,
    'TOL_DEGEN': 1e-12,
    'TOL_NORM': 1e-12,
    'JACOBI_RTOL': 1e-13,
    'JACOBI_MAX_SWEEPS': 60,
    # bath quadrature
    'QUAD_RTOL': 1e-8,
    'QUAD_GENERIC_RTOL': 1e-6,
    'QUAD_LIMIT': 400,
    'QUAD_MAX_PHASE': 1e8,
    'COTH_APPROX_MIN_XMAX': 100.0,
    # cavity
    'MODE_BUDGET': 10000000,
    # experiments
    'WORKERS': 1,
    'GRID_F_MAX': 3.0,
    'GRID_PHI_MAX': 3.0,
    'GRID_POINTS': 121,
    'SEPTIME_GRID_POINTS': 1024,
    'SEPTIME_DECADES': 12,
    'SEPTIME_RTOL': 1e-6,
}

# counts that are clamped to at least one
POSITIVE_INTS = ('JACOBI_MAX_SWEEPS', 'WORKERS')


class BathSettings(dict, metaclass=Singleton):

    def __init__(self):
        super().__init__()
        _overrides = self._load_overrides(os.getenv(SETTINGS_ENV, ''))
        for key in sorted(set(_overrides) - set(DEFAULTS)):
            logger.warning('Unknown setting `{}` ignored'.format(key))
        self.update({key: self._normalize(key, _overrides.get(key, default))
                     for key, default in DEFAULTS.items()})
        for key in POSITIVE_INTS:
            if self[key] < 1:
                logger.warning('Setting `{}` should be >= 1, got {}'.format(
                    key, self[key]))
                self[key] = 1

    @staticmethod
    def _load_overrides(path):
        if not path:
            return {}
        try:
            with open(path, encoding='utf-8') as f:
                data = json.load(f)
        except (IOError, OSError, ValueError):
            logger.warning('Could not read settings file `{}`, '
                           'defaults are used'.format(path))
            return {}
        return data if isinstance(data, dict) else {}

    @staticmethod
    def _normalize(key, value):
        default = DEFAULTS[key]
        try:
            return type(default)(value)
        except (TypeError, ValueError):
            logger.warning('Setting `{}` has bad value `{}`, using {}'.format(
                key, value, default))
            return default


def get_settings():
    return BathSettings()


def reload_settings():
    BathSettings.reset()
    return BathSettings()
