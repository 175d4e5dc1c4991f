import json
import logging

import pytest

from bath_entanglement import status
from bath_entanglement.exceptions import (
    BathConfigError,
    BathEntanglementError,
    ConfigError,
    ConvergenceFailure,
    QuadratureFailure,
)
from bath_entanglement.parallel import chunks, ordered_map
from bath_entanglement.settings import (
    DEFAULTS,
    SETTINGS_ENV,
    BathSettings,
    get_settings,
    reload_settings,
)


def write_settings(tmp_path, monkeypatch, data):
    path = tmp_path / 'settings.json'
    path.write_text(json.dumps(data))
    monkeypatch.setenv(SETTINGS_ENV, str(path))
    return reload_settings()


def test_defaults():
    settings = get_settings()
    assert settings == DEFAULTS
    assert settings is BathSettings()
    assert settings['TOL_PPT'] == 1e-11


def test_override_from_file(tmp_path, monkeypatch):
    settings = write_settings(tmp_path, monkeypatch,
                              {'TOL_PPT': '1e-9', 'WORKERS': 4})
    assert settings['TOL_PPT'] == 1e-9
    assert settings['WORKERS'] == 4
    assert get_settings() is settings


def test_unknown_and_bad_values(tmp_path, monkeypatch, caplog):
    with caplog.at_level(logging.WARNING, logger='bath_entanglement.settings'):
        settings = write_settings(tmp_path, monkeypatch,
                                  {'NO_SUCH_KEY': 1, 'GRID_POINTS': 'many'})
    assert 'NO_SUCH_KEY' not in settings
    assert settings['GRID_POINTS'] == DEFAULTS['GRID_POINTS']
    assert 'Unknown setting `NO_SUCH_KEY`' in caplog.text
    assert 'GRID_POINTS' in caplog.text


def test_workers_at_least_one(tmp_path, monkeypatch):
    assert write_settings(tmp_path, monkeypatch, {'WORKERS': 0})['WORKERS'] == 1


def test_unreadable_file_keeps_defaults(tmp_path, monkeypatch, caplog):
    monkeypatch.setenv(SETTINGS_ENV, str(tmp_path / 'missing.json'))
    with caplog.at_level(logging.WARNING, logger='bath_entanglement.settings'):
        assert reload_settings() == DEFAULTS
    assert 'Could not read settings file' in caplog.text


def test_ordered_map_keeps_order():
    items = list(range(50))
    assert ordered_map(lambda x: x * x, items, workers=8) == \
        [x * x for x in items]
    assert ordered_map(str, [], workers=3) == []


def test_chunks():
    assert chunks(10, 3) == [slice(0, 3), slice(3, 6), slice(6, 10)]
    assert chunks(2, 5) == [slice(0, 1), slice(1, 2)]
    assert chunks(0, 4) == []


def test_exit_statuses():
    assert BathConfigError().exit_status == status.EXIT_2_INVALID_CONFIG
    assert not status.is_numerical_error(BathConfigError().exit_status)
    assert status.is_numerical_error(QuadratureFailure().exit_status)
    assert status.is_numerical_error(ConvergenceFailure().exit_status)
    assert BathEntanglementError.exit_status == status.EXIT_1_FAILURE


def test_config_error_messages():
    assert str(ConfigError(['a', 'b'])) == 'a; b'
    assert ConfigError('single').messages == ['single']
    assert ConfigError().messages == []
    assert isinstance(BathConfigError('x'), ConfigError)


def test_settings_are_a_dict_override(monkeypatch):
    monkeypatch.setitem(get_settings(), 'GRID_POINTS', 7)
    assert get_settings()['GRID_POINTS'] == 7


@pytest.mark.parametrize('key', sorted(DEFAULTS))
def test_every_default_is_typed(key):
    assert isinstance(get_settings()[key], type(DEFAULTS[key]))


def test_jacobi_sweeps_at_least_one(tmp_path, monkeypatch, caplog):
    with caplog.at_level(logging.WARNING, logger='bath_entanglement.settings'):
        settings = write_settings(tmp_path, monkeypatch, {'JACOBI_MAX_SWEEPS': 0})
    assert settings['JACOBI_MAX_SWEEPS'] == 1
    assert 'JACOBI_MAX_SWEEPS' in caplog.text
