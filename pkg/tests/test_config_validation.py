"""
Tests for configuration layering, input validation, error payloads and result files
"""
import logging
import math
import os

import numpy as np
import pytest

from config import ExperimentConfig, config
from config.settings import LOG_HANDLER_NAME, ProductionConfig
from experiments.common import build_spec, fit_window, run_ordered
from experiments.fit import read_spectrum_csv
from utils.errors import (
    BlowUpError, DivergenceError, LabError, OutputError, ValidationError, create_success_response, handle_error
)
from utils.output import format_value, write_csv_atomic
from utils.summation import CompensatedSum
from utils.validation import InputValidator


@pytest.mark.unit
class TestExperimentConfig:
    """Defaults and source precedence"""

    def test_defaults(self):
        settings = ExperimentConfig()
        assert settings.delta == 2.0 ** -14
        assert settings.n_points == 2 ** 14
        assert settings.epsilon_values == pytest.approx([2.0 ** -j * 2.0 ** -14 for j in range(7)])
        assert settings.deltas == pytest.approx([2.0 ** -j for j in range(4, 17, 2)])

    def test_mapping_accepts_prefixed_and_lowercase_keys(self):
        settings = ExperimentConfig.from_mapping({'cascade_delta': '0.25', 'N_POINTS': '256', 'focusing': 'yes'})
        assert settings.delta == 0.25
        assert settings.n_points == 256
        assert settings.focusing is True

    def test_unknown_key(self):
        with pytest.raises(ValidationError) as excinfo:
            ExperimentConfig.from_mapping({'DELTAA': '0.1'})
        assert excinfo.value.error_code == 'UNKNOWN_KEY'

    def test_error_names_the_key(self):
        with pytest.raises(ValidationError) as excinfo:
            ExperimentConfig.from_mapping({'DT': '-0.1'})
        assert excinfo.value.message.startswith('DT')

    @pytest.mark.parametrize("key,value", [
        ('P', '0.5'),
        ('BRANCH', '3'),
        ('N_POINTS', '1000'),
        ('EPSILON_EXPONENTS', '1,2.5'),
        ('WINDOW', '3,1'),
        ('SEED', '-1'),
        ('ALPHA', '1.5'),
    ])
    def test_invalid_values(self, key, value):
        with pytest.raises(ValidationError):
            ExperimentConfig.from_mapping({key: value})

    def test_optional_values(self):
        settings = ExperimentConfig.from_mapping({'ALPHA': 'none', 'WINDOW': '', 'EPSILONS': '0.1, 0.05'})
        assert settings.alpha is None
        assert settings.window is None
        assert settings.epsilon_values == [0.1, 0.05]

    def test_precedence(self, tmp_path):
        config_file = tmp_path / 'lab.env'
        config_file.write_text('# file layer\nDELTA=0.25\nDT=0.01\n')
        environ = {'CASCADE_DELTA': '0.5', 'CASCADE_NU': '0.2', 'PATH': '/usr/bin', 'CASCADE_ENV': 'testing'}

        settings = ExperimentConfig.from_sources(
            config_file=str(config_file), overrides={'DT': '0.02', 'SEED': None}, environ=environ
        )
        assert settings.delta == 0.25
        assert settings.nu == 0.2
        assert settings.dt == 0.02
        assert settings.seed == 0

    def test_missing_file(self, tmp_path):
        with pytest.raises(ValidationError) as excinfo:
            ExperimentConfig.from_sources(config_file=str(tmp_path / 'absent.env'), environ={})
        assert excinfo.value.error_code == 'MISSING_CONFIG'

    def test_to_dict(self):
        payload = ExperimentConfig().to_dict()
        assert payload['output_dir'] == 'results'
        assert payload['workers'] == 4

    def test_environment_classes(self):
        assert set(config) >= {'development', 'production', 'testing', 'default'}
        assert config['testing'].TESTING

    def test_production_logging_is_installed_once(self, monkeypatch):
        monkeypatch.setenv('LOG_TO_STDOUT', '1')
        root = logging.getLogger()
        level = root.level
        try:
            ProductionConfig.init_logging()
            ProductionConfig.init_logging()
            named = [handler for handler in root.handlers if handler.get_name() == LOG_HANDLER_NAME]
            assert len(named) == 1
        finally:
            for handler in [h for h in root.handlers if h.get_name() == LOG_HANDLER_NAME]:
                root.removeHandler(handler)
            root.setLevel(level)


@pytest.mark.unit
class TestExperimentBuilders:

    def test_power_takes_precedence(self):
        settings = ExperimentConfig.from_mapping({'POWER': '2', 'ALPHA': '0.1'})
        spec = build_spec(settings)
        assert spec.alpha == pytest.approx(2.0 / 3.0)
        assert spec.power == 2.0

    def test_configured_window(self):
        settings = ExperimentConfig.from_mapping({'WINDOW': '1,5', 'DELTA': '1'})
        assert fit_window(settings) == (1.0, 5.0)

    def test_run_ordered_keeps_order(self):
        assert run_ordered(lambda item: item * item, range(10), workers=4) == [item * item for item in range(10)]

    def test_read_spectrum_csv(self, tmp_path):
        source = tmp_path / 'spectrum.csv'
        source.write_text('xi,magnitude,extra\n# comment\n1.0,2.0,x\n2.0,0.5,y\n')
        xi, magnitude = read_spectrum_csv(str(source))
        assert list(xi) == [1.0, 2.0]
        assert list(magnitude) == [2.0, 0.5]

    def test_read_spectrum_csv_rejects_bad_rows(self, tmp_path):
        source = tmp_path / 'spectrum.csv'
        source.write_text('1.0,2.0\nthree,4.0\n')
        with pytest.raises(ValidationError):
            read_spectrum_csv(str(source))


@pytest.mark.unit
class TestInputValidator:

    def test_real(self):
        assert InputValidator.validate_real('2.5', 'x') == 2.5
        for bad in (None, '', 'abc', True, float('nan'), float('inf')):
            with pytest.raises(ValidationError):
                InputValidator.validate_real(bad, 'x')

    def test_positive_and_non_negative(self):
        assert InputValidator.validate_non_negative(0, 'x') == 0.0
        with pytest.raises(ValidationError):
            InputValidator.validate_positive(0, 'x')
        with pytest.raises(ValidationError):
            InputValidator.validate_non_negative(-1e-300, 'x')

    def test_integers(self):
        assert InputValidator.validate_positive_int('12', 'n') == 12
        assert InputValidator.validate_positive_int(4.0, 'n') == 4
        with pytest.raises(ValidationError):
            InputValidator.validate_positive_int(2.5, 'n')
        with pytest.raises(ValidationError):
            InputValidator.validate_positive_int(0, 'n')

    def test_power_of_two(self):
        assert InputValidator.validate_power_of_two(1024, 'n') == 1024
        for bad in (2, 1000, 3):
            with pytest.raises(ValidationError):
                InputValidator.validate_power_of_two(bad, 'n')

    def test_bool(self):
        assert InputValidator.validate_bool('On', 'flag') is True
        assert InputValidator.validate_bool('0', 'flag') is False
        with pytest.raises(ValidationError):
            InputValidator.validate_bool('maybe', 'flag')

    def test_real_list(self):
        assert InputValidator.validate_real_list('1, 2,3', 'xs') == [1.0, 2.0, 3.0]
        assert InputValidator.validate_real_list(0.5, 'xs') == [0.5]
        with pytest.raises(ValidationError):
            InputValidator.validate_real_list('', 'xs')
        with pytest.raises(ValidationError):
            InputValidator.validate_real_list('1,-2', 'xs', positive=True)

    def test_seed(self):
        assert InputValidator.validate_seed('') is None
        assert InputValidator.validate_seed('42') == 42
        with pytest.raises(ValidationError):
            InputValidator.validate_seed('x')

    def test_window(self):
        assert InputValidator.validate_window((1, 2)) == (1.0, 2.0)
        for bad in ((2, 1), (0, 1), (1,), None):
            with pytest.raises(ValidationError):
                InputValidator.validate_window(bad)


@pytest.mark.unit
class TestErrorHandling:

    def test_lab_errors_keep_their_exit_code(self):
        payload, code = handle_error(DivergenceError("diverged", iterations=4))
        assert code == 3
        assert payload == {'success': False, 'error': 'diverged', 'error_code': 'DIVERGENCE'}

    @pytest.mark.parametrize("error,code", [
        (ValidationError("bad"), 2),
        (BlowUpError("boom", time=0.5), 3),
        (OutputError("disk", path='/tmp/x'), 4),
        (KeyError('delta'), 2),
        (ValueError('bad value'), 2),
        (FileNotFoundError(2, 'No such file', 'x.csv'), 4),
        (RuntimeError('unexpected'), 1),
    ])
    def test_exit_codes(self, error, code):
        payload, exit_code = handle_error(error)
        assert exit_code == code
        assert payload['success'] is False

    def test_internal_errors_hide_details(self):
        payload, _ = handle_error(RuntimeError('secret detail'))
        assert payload['error'] == 'Internal error'

    def test_base_error(self):
        error = LabError("generic")
        assert error.exit_code == 1
        assert error.to_dict()['error_code'] == 'LAB_ERROR'

    def test_success_response(self):
        assert create_success_response() == {'success': True}
        assert create_success_response({'files': []}, 'done') == {'success': True, 'files': [], 'message': 'done'}


@pytest.mark.unit
class TestResultFiles:

    def test_format_value(self):
        assert format_value(None) == ''
        assert format_value(True) == 'true'
        assert format_value(7) == '7'
        assert format_value(math.nan) == 'nan'
        assert format_value(0.1) == '0.10000000000000001'
        assert format_value(np.float64(2.0) ** -14) == '6.103515625e-05'
        assert format_value('text') == 'text'

    def test_csv_round_trip_precision(self, tmp_path):
        path = str(tmp_path / 'out' / 'table.csv')
        value = 1.0 / 3.0
        write_csv_atomic(path, ('a', 'b'), [(value, None)], comments=['note=1'])
        lines = open(path).read().splitlines()
        assert lines == ['a,b', f'{value:.17g},', '# note=1']
        assert float(lines[1].split(',')[0]) == value
        assert [name for name in os.listdir(tmp_path / 'out')] == ['table.csv']

    def test_unwritable_destination(self, tmp_path):
        blocker = tmp_path / 'blocker'
        blocker.write_text('')
        with pytest.raises(OutputError) as excinfo:
            write_csv_atomic(str(blocker / 'table.csv'), ('a',), [(1,)])
        assert excinfo.value.exit_code == 4


@pytest.mark.unit
class TestCompensatedSum:

    def test_recovers_small_terms(self):
        total = CompensatedSum()
        total.add(1.0)
        for _ in range(1000):
            total.add(1e-16)
        assert total.value == pytest.approx(1.0 + 1e-13, rel=1e-15)

    def test_indexed_sums(self):
        total = CompensatedSum((3,))
        total.add_terms(np.ones((2, 4)), np.array([0, 2]))
        assert list(total.value) == [4.0, 0.0, 4.0]
