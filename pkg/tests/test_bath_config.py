import json
import os

import pytest

from bath_entanglement import fields
from bath_entanglement.bath import (
    ContinuumBath,
    DiscreteBath,
    GaussianCutoff,
    PathBath,
    SharpCutoff,
)
from bath_entanglement.bath_config import load_bath, read_json
from bath_entanglement.cavity import CavityConfig, derive_constants
from bath_entanglement.decorators import validated
from bath_entanglement.exceptions import (
    BathConfigError,
    ConfigError,
    FieldTypeError,
    FieldValueError,
)
from bath_entanglement.fields import check_structure

DEMO = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))),
                    'bath_entanglement_demo', 'baths')


def demo(name):
    return os.path.join(DEMO, name)


def test_field_type_checks():
    with pytest.raises(FieldTypeError):
        fields.JSONField(field_type=dict)
    with pytest.raises(FieldValueError):
        fields.String(default='c', choices=('a', 'b'))


def test_float_field():
    field = fields.Float(required=True, min_value=0.0)
    assert field.validate('x', '2.5') == (2.5, [])
    assert field.validate('x', None) == (None, ['`x` value is required'])
    value, messages = field.validate('x', -1.0)
    assert value is None and messages
    value, messages = field.validate('x', True)
    assert value is None and messages
    assert fields.Float(default=3.0).validate('x', None) == (3.0, [])


def test_bool_and_string_fields():
    assert fields.Bool(default=False).validate('flag', None) == (False, [])
    assert fields.Bool().validate('flag', 'yes')[1]
    assert fields.String(choices=('a', 'b')).validate('k', 'c')[1]
    assert fields.String(blank=False).validate('k', '')[1]


def test_float_list_field():
    field = fields.FloatList(min_value=0.0)
    assert field.validate('f', [0, 1, 2.5]) == ([0.0, 1.0, 2.5], [])
    assert field.validate('f', 'abc')[1]
    assert field.validate('f', [1.0, 'x'])[1]
    assert field.validate('f', [1.0, -2.0])[1]
    assert field.validate('f', [])[1]


def test_check_structure_nested():
    structure = {'items': [{'v': fields.Float(required=True)}],
                 'name': fields.String(default='n')}
    value, messages = check_structure({'items': [{'v': 1}, {'v': '2'}]},
                                      structure)
    assert messages == []
    assert value == {'items': [{'v': 1.0}, {'v': 2.0}], 'name': 'n'}
    _, messages = check_structure({'items': {'v': 1}}, structure)
    assert messages
    _, messages = check_structure([1, 2], structure)
    assert messages == ['data should be a dict instance']


def test_validated_decorator():
    @validated({'x': fields.Float(required=True)}, message='bad input')
    def double(data):
        return 2.0 * data['x']

    assert double({'x': '1.5'}) == 3.0
    with pytest.raises(BathConfigError) as info:
        double({})
    assert info.value.messages[0] == 'bad input'
    assert info.value.exit_status == 2


def test_demo_baths_load():
    modes = load_bath(demo('modes.json'))
    assert isinstance(modes, DiscreteBath)
    assert len(modes.modes) == 5
    assert all(mode.nbar == 0.0 for mode in modes.modes)
    assert isinstance(load_bath(demo('continuum.json')), ContinuumBath)
    path = load_bath(demo('path.json'))
    assert isinstance(path, PathBath)
    assert path.kernel(500.0).phi == 500.0
    cavity = load_bath(demo('cavity.json'))
    assert isinstance(cavity, ContinuumBath)
    assert cavity.zeta == pytest.approx(
        derive_constants(CavityConfig(d=1e-8, T=0.1)).zeta, rel=1e-12)


def test_modes_bath_temperature():
    bath = load_bath({'type': 'modes', 'T': 1.0,
                      'modes': [{'omega': 1e11, 'weight': 0.1, 'nbar': 5.0}]})
    assert 0.0 < bath.modes[0].nbar < 5.0
    explicit = load_bath({'type': 'modes',
                          'modes': [{'omega': 1.0, 'weight': 0.1, 'nbar': 5.0}]})
    assert explicit.modes[0].nbar == 5.0


def test_continuum_cutoffs():
    sharp = load_bath({'type': 'continuum', 'x_max': 5, 'tau': 1,
                       'cutoff': 'sharp'})
    assert sharp.cutoff == SharpCutoff(5.0)
    assert not sharp.coth_approx
    gaussian = load_bath({'type': 'continuum', 'x_max': 5, 'tau': 1,
                          'cutoff': 'gaussian', 'coth_approx': True})
    assert gaussian.cutoff == GaussianCutoff(5.0)
    assert gaussian.zeta == 1.0


def test_path_without_phi():
    bath = load_bath({'type': 'path', 'times': [0, 2], 'f': [0, 1]})
    assert bath.kernel(1.0).phi == 0.0


@pytest.mark.parametrize('data', [
    {'type': 'lattice'},
    {'x_max': 1.0},
    [],
    {'type': 'continuum', 'tau': 1.0},
    {'type': 'continuum', 'x_max': 1.0, 'tau': 1.0, 'cutoff': 'box'},
    {'type': 'modes', 'modes': [{'omega': 1.0}]},
    {'type': 'path', 'times': [0, 1], 'f': [0, -1]},
    {'type': 'cavity', 'd': 1e-8, 'T': 0.1, 'material': 'lead'},
])
def test_invalid_structures(data):
    with pytest.raises(BathConfigError):
        load_bath(data)


def test_invalid_values_are_config_errors():
    with pytest.raises(ConfigError):
        load_bath({'type': 'path', 'times': [0, 1, 1], 'f': [0, 1, 2]})
    with pytest.raises(ConfigError):
        load_bath({'type': 'modes', 'modes': [{'omega': 0.0, 'weight': 1.0}]})


def test_read_json(tmp_path):
    good = tmp_path / 'bath.json'
    good.write_text(json.dumps({'type': 'path', 'times': [0, 1], 'f': [0, 1]}))
    assert read_json(str(good))['type'] == 'path'
    assert isinstance(load_bath(good), PathBath)
    broken = tmp_path / 'broken.json'
    broken.write_text('{"type": ')
    with pytest.raises(BathConfigError):
        read_json(broken)
    with pytest.raises(BathConfigError):
        load_bath(str(tmp_path / 'missing.json'))
