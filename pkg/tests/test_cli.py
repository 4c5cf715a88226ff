"""
End-to-end tests for the command line interface
"""
import csv
import json
import os

import numpy as np
import pytest

COARSE = ['--n-points', '4096', '--delta', '0.0009765625']


def error_payload(result):
    """The JSON error document is the last line written to stderr"""
    return json.loads(result.stderr.strip().splitlines()[-1])


def read_rows(path):
    with open(path, newline='') as stream:
        return [row for row in csv.reader(stream)]


@pytest.mark.integration
class TestSpectrumCommand:

    def test_writes_spectrum_csv(self, cli_runner, tmp_path):
        runner, cli = cli_runner
        result = runner.invoke(cli, ['spectrum', *COARSE, '--out', str(tmp_path)])
        assert result.exit_code == 0, result.output

        payload = json.loads(result.stdout)
        assert payload['success'] is True
        # finite-delta slopes sit below -5/3 and approach it as delta shrinks
        assert -1.9 < payload['fit']['slope'] < -5.0 / 3.0
        assert payload['expected_slope'] == pytest.approx(-5.0 / 3.0)

        rows = read_rows(tmp_path / 'spectrum.csv')
        assert rows[0] == ['xi', 'abs_uhat_dft', 'abs_uhat_series', 'fitted_slope_window_lo',
                           'fitted_slope_window_hi', 'slope', 'r2']
        assert len(rows) == 1 + 2047
        # the series column is filled up to the window's upper edge only
        assert rows[1][2] != ''
        assert rows[-1][2] == ''

    def test_is_deterministic(self, cli_runner, tmp_path):
        runner, cli = cli_runner
        for name in ('first', 'second'):
            result = runner.invoke(cli, ['spectrum', *COARSE, '--out', str(tmp_path / name)])
            assert result.exit_code == 0, result.output
        first = (tmp_path / 'first' / 'spectrum.csv').read_bytes()
        second = (tmp_path / 'second' / 'spectrum.csv').read_bytes()
        assert first == second

    def test_svg_figure(self, cli_runner, tmp_path):
        runner, cli = cli_runner
        result = runner.invoke(cli, ['spectrum', *COARSE, '--svg', '--out', str(tmp_path)])
        assert result.exit_code == 0, result.output
        assert (tmp_path / 'spectrum.svg').read_text().lstrip().startswith('<?xml')

    def test_rotating_profile(self, cli_runner, tmp_path):
        runner, cli = cli_runner
        result = runner.invoke(cli, ['spectrum', *COARSE, '--p', '1', '--out', str(tmp_path)])
        assert result.exit_code == 0, result.output
        rows = read_rows(tmp_path / 'spectrum.csv')
        assert all(row[2] == '' for row in rows[1:])

    def test_config_file_and_overrides(self, cli_runner, tmp_path):
        runner, cli = cli_runner
        config_file = tmp_path / 'lab.env'
        config_file.write_text('# coarse run\nDELTA=0.0009765625\nN_POINTS=4096\n')
        result = runner.invoke(cli, ['spectrum', '--config', str(config_file), '--n-points', '2048',
                                     '--out', str(tmp_path)])
        assert result.exit_code == 0, result.output
        assert len(read_rows(tmp_path / 'spectrum.csv')) == 1 + 1023


@pytest.mark.integration
class TestExitCodes:

    @pytest.mark.parametrize("arguments", [
        ['--delta', '-1'],
        ['--n-points', '1000'],
        ['--p', '2'],
        ['--window', '5,2'],
        ['--delta', '1'],
    ])
    def test_invalid_input(self, cli_runner, tmp_path, arguments):
        runner, cli = cli_runner
        result = runner.invoke(cli, ['spectrum', '--n-points', '256', *arguments, '--out', str(tmp_path)])
        assert result.exit_code == 2
        payload = error_payload(result)
        assert payload['success'] is False

    def test_unknown_config_key(self, cli_runner, tmp_path):
        runner, cli = cli_runner
        config_file = tmp_path / 'lab.env'
        config_file.write_text('DELTAA=0.1\n')
        result = runner.invoke(cli, ['spectrum', '--config', str(config_file), '--out', str(tmp_path)])
        assert result.exit_code == 2
        assert error_payload(result)['error_code'] == 'UNKNOWN_KEY'

    def test_missing_config_file(self, cli_runner, tmp_path):
        runner, cli = cli_runner
        result = runner.invoke(cli, ['spectrum', '--config', str(tmp_path / 'absent.env')])
        assert result.exit_code == 2

    def test_unwritable_output(self, cli_runner, tmp_path):
        runner, cli = cli_runner
        blocker = tmp_path / 'blocker'
        blocker.write_text('not a directory')
        result = runner.invoke(cli, ['spectrum', *COARSE, '--out', str(blocker / 'results')])
        assert result.exit_code == 4
        assert error_payload(result)['error_code'] == 'IO_ERROR'

    def test_blow_up(self, cli_runner, tmp_path):
        runner, cli = cli_runner
        result = runner.invoke(cli, ['evolve', '--n-points', '1024', '--delta', '0.0009765625', '--focusing',
                                     '--epsilon', '0.01', '--perturbation', '10000', '--dt', '0.01',
                                     '--t-final', '0.1', '--out', str(tmp_path)])
        assert result.exit_code == 3
        assert error_payload(result)['error_code'] == 'BLOW_UP'
        text = (tmp_path / 'trajectory.csv').read_text()
        assert 'status=blow_up' in text


@pytest.mark.integration
class TestStationaryCommand:

    def test_epsilon_sweep(self, cli_runner, tmp_path):
        runner, cli = cli_runner
        result = runner.invoke(cli, ['stationary', *COARSE, '--epsilon-exponents', '3,4', '--out', str(tmp_path)])
        assert result.exit_code == 0, result.output

        rows = read_rows(tmp_path / 'stationary.csv')
        assert rows[0] == ['epsilon', 'converged', 'iterations', 'residual', 'v_max', 'weighted_deviation']
        assert [row[1] for row in rows[1:]] == ['true', 'true']
        epsilons = [float(row[0]) for row in rows[1:]]
        assert epsilons == pytest.approx([2.0 ** -13, 2.0 ** -14])
        deviations = [float(row[5]) for row in rows[1:]]
        assert deviations[1] < deviations[0]

        deviation_rows = read_rows(tmp_path / 'deviation.csv')
        assert deviation_rows[0] == ['epsilon', 'xi', 'abs_uhat_eps', 'abs_uhat_0', 'weighted_difference']
        assert len(deviation_rows) > 1

    def test_focusing_reports_lost_ellipticity(self, cli_runner, tmp_path):
        runner, cli = cli_runner
        result = runner.invoke(cli, ['stationary', *COARSE, '--focusing', '--epsilon-exponents', '4,5',
                                     '--out', str(tmp_path)])
        assert result.exit_code == 0, result.output

        payload = json.loads(result.stdout)
        assert payload['ellipticity']['elliptic'] is False
        assert payload['ellipticity']['min_coefficient'] < 0
        assert [row['elliptic'] for row in payload['rows']] == [False, False]

        rows = read_rows(tmp_path / 'stationary.csv')
        assert [row[1] for row in rows[1:]] == ['false', 'false']
        assert len(read_rows(tmp_path / 'deviation.csv')) == 1


@pytest.mark.integration
class TestEvolveCommand:

    def test_trajectory(self, cli_runner, tmp_path):
        runner, cli = cli_runner
        result = runner.invoke(cli, ['evolve', *COARSE, '--epsilon-exponents', '4', '--dt', '0.001',
                                     '--t-final', '0.05', '--record-every', '10', '--seed', '5',
                                     '--out', str(tmp_path)])
        assert result.exit_code == 0, result.output
        assert json.loads(result.stdout)['samples'] == 6

        lines = (tmp_path / 'trajectory.csv').read_text().splitlines()
        assert lines[0] == 't,l2_v,energy,renorm_energy,mass'
        assert len(lines) == 1 + 6 + 1
        assert lines[-1].startswith('# envelope_amplitude=')
        assert lines[-1].endswith(';seed=5;status=ok')
        times = [float(line.split(',')[0]) for line in lines[1:-1]]
        assert times == pytest.approx([0.0, 0.01, 0.02, 0.03, 0.04, 0.05])


@pytest.mark.integration
class TestSweepAndFitCommands:

    def test_sweep(self, cli_runner, tmp_path):
        runner, cli = cli_runner
        result = runner.invoke(cli, ['sweep', '--n-points', '4096', '--deltas', '0.0625,0.0009765625',
                                     '--workers', '2', '--out', str(tmp_path)])
        assert result.exit_code == 0, result.output
        rows = read_rows(tmp_path / 'sweep.csv')
        assert rows[0] == ['delta', 'xi_lo', 'xi_hi', 'slope', 'intercept', 'r2']
        assert float(rows[1][0]) == 0.0625
        assert rows[1][1:] == ['', '', '', '', '']
        assert -1.9 < float(rows[2][3]) < -5.0 / 3.0

    def test_fit(self, cli_runner, tmp_path):
        runner, cli = cli_runner
        source = tmp_path / 'power_law.csv'
        xi = np.linspace(0.5, 20.0, 40)
        source.write_text('xi,magnitude\n' + ''.join(f'{float(a)!r},{float(a) ** -2.0!r}\n' for a in xi))
        result = runner.invoke(cli, ['fit', str(source), '--window', '1,10', '--out', str(tmp_path)])
        assert result.exit_code == 0, result.output

        rows = read_rows(tmp_path / 'fit.csv')
        assert rows[0] == ['xi_lo', 'xi_hi', 'slope', 'intercept', 'r2', 'points']
        assert float(rows[1][2]) == pytest.approx(-2.0, abs=1e-10)

    def test_fit_missing_input(self, cli_runner, tmp_path):
        runner, cli = cli_runner
        result = runner.invoke(cli, ['fit', str(tmp_path / 'absent.csv'), '--out', str(tmp_path)])
        assert result.exit_code == 4
        assert not os.path.exists(tmp_path / 'fit.csv')
