"""
bath.json loader.

    {"type": "modes", "T": 0.1,
     "modes": [{"omega": 1.0, "weight": 0.5, "nbar": 0.0}, ...]}
    {"type": "continuum", "x_max": 10.0, "tau": 1.0,
     "cutoff": "exponential", "coth_approx": false, "zeta": 1.0}
    {"type": "path", "times": [0, 1, 2], "f": [0, 0.5, 1], "phi": [0, 0.1, 0.4]}
    {"type": "cavity", "d": 1e-8, "T": 0.1, "material": "aluminum",
     "a": 0.01, "b": 0.01, "c": 0.01}

``T`` of a modes bath, when given, replaces every ``nbar`` by the thermal
occupation.
"""
import json
import logging
import os

from . import fields
from .bath import (
    BathMode,
    ContinuumBath,
    DiscreteBath,
    ExponentialCutoff,
    GaussianCutoff,
    PathBath,
    SharpCutoff,
)
from .cavity import MATERIALS, CavityConfig, cavity_bath, plasma_frequency
from .decorators import validated
from .exceptions import BathConfigError
from .fields import check_structure

logger = logging.getLogger('bath_entanglement.bath_config')

CUTOFFS = {
    'exponential': ExponentialCutoff,
    'gaussian': GaussianCutoff,
    'sharp': SharpCutoff,
}

HEADER = {
    'type': fields.String(required=True,
                          choices=('modes', 'continuum', 'path', 'cavity')),
}

MODES = {
    'T': fields.Float(min_value=0.0),
    'modes': [{
        'omega': fields.Float(required=True, min_value=0.0),
        'weight': fields.Float(required=True, min_value=0.0),
        'nbar': fields.Float(default=0.0, min_value=0.0),
    }],
}

CONTINUUM = {
    'x_max': fields.Float(required=True, min_value=0.0),
    'tau': fields.Float(required=True, min_value=0.0),
    'cutoff': fields.String(default='exponential', choices=tuple(CUTOFFS)),
    'coth_approx': fields.Bool(default=False),
    'zeta': fields.Float(default=1.0, min_value=0.0),
}

PATH = {
    'times': fields.FloatList(required=True, min_value=0.0),
    'f': fields.FloatList(required=True, min_value=0.0),
    'phi': fields.FloatList(min_value=0.0),
}

CAVITY = {
    'd': fields.Float(required=True, min_value=0.0),
    'T': fields.Float(required=True, min_value=0.0),
    'material': fields.String(default='aluminum', choices=tuple(MATERIALS)),
    'omega_p': fields.Float(min_value=0.0),
    'a': fields.Float(default=0.01, min_value=0.0),
    'b': fields.Float(default=0.01, min_value=0.0),
    'c': fields.Float(default=0.01, min_value=0.0),
}


@validated(MODES, message='modes bath is not valid')
def modes_bath(data):
    temperature = data.get('T')
    modes = []
    for item in data['modes']:
        if temperature is None:
            modes.append(BathMode(**item))
        else:
            modes.append(BathMode.thermal(item['weight'], item['omega'],
                                          temperature))
    return DiscreteBath(tuple(modes))


@validated(CONTINUUM, message='continuum bath is not valid')
def continuum_bath(data):
    cutoff = CUTOFFS[data['cutoff']](data['x_max'])
    return ContinuumBath(x_max=data['x_max'], tau=data['tau'], cutoff=cutoff,
                         coth_approx=data['coth_approx'], zeta=data['zeta'])


@validated(PATH, message='path bath is not valid')
def path_bath(data):
    return PathBath(data['times'], data['f'], data.get('phi'))


@validated(CAVITY, message='cavity bath is not valid')
def cavity_config(data):
    omega_p = data.get('omega_p') or plasma_frequency(data['material'])
    return CavityConfig(d=data['d'], T=data['T'], a=data['a'], b=data['b'],
                        c=data['c'], omega_p=omega_p)


BUILDERS = {
    'modes': modes_bath,
    'continuum': continuum_bath,
    'path': path_bath,
    'cavity': lambda data: cavity_bath(cavity_config(data)),
}


def read_json(source):
    if isinstance(source, (str, os.PathLike)):
        try:
            with open(source, encoding='utf-8') as f:
                return json.load(f)
        except (IOError, OSError) as err:
            raise BathConfigError('could not read `{}`: {}'.format(source, err))
        except ValueError as err:
            raise BathConfigError('`{}` is not valid JSON: {}'.format(source, err))
    return source


def load_bath(source):
    """Bath model from a bath.json path or an already parsed mapping."""
    data = read_json(source)
    header, messages = check_structure(data, HEADER)
    if messages:
        raise BathConfigError(['bath configuration is not valid'] + messages)
    logger.debug('load_bath: type={}'.format(header['type']))
    return BUILDERS[header['type']](data)
