""" Tests of geocesaro/cli.py """
import csv
import io
import json
import os

import pytest

from geocesaro import cli
from geocesaro.config import DUMMY_CONFIG
from geocesaro.errors import NotCesaroSummable


@pytest.fixture(autouse=True)
def no_config_file(tmp_path, monkeypatch):
    """ Run every command away from any ./geocesaro.conf or $GEOCESARO_CONFIG. """
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv('GEOCESARO_CONFIG', raising=False)


def run(capsys, *argv):
    """ Run the command line, return its exit code and its standard output. """
    code = cli.main(['geocesaro'] + list(argv))
    return code, capsys.readouterr().out


class Test_eval:  # pylint: disable=invalid-name,missing-class-docstring
    def test_zeta(self, capsys):
        """ zeta(-1) = -1/12, with its tail estimate. """
        code, out = run(capsys, 'eval', 'zeta', '--s', '-1')
        lines = out.splitlines()
        assert code == cli.EXIT_OK  # nosec assert_used
        assert lines[0].startswith('-0.0833333333')  # nosec assert_used
        assert lines[1].startswith('tail_estimate:')  # nosec assert_used

    def test_zeta_cesaro(self, capsys):
        """ zeta(-1) = -1/12 again, as clim of the stripped trace. """
        code, out = run(capsys, 'eval', 'zeta', '--s', '-1', '--method', 'cesaro')
        assert code == cli.EXIT_OK  # nosec assert_used
        assert out.splitlines()[0].startswith('-0.0833333333')  # nosec assert_used

    def test_gamma(self, capsys):
        """ Gamma(4) = 3! prints as an integer. """
        code, out = run(capsys, 'eval', 'gamma', '--z', '4')
        assert code == cli.EXIT_OK  # nosec assert_used
        assert out.splitlines()[0] == '6'  # nosec assert_used

    def test_json(self, capsys):
        """ zeta_H(1/2; 0) = -1 in JSON. """
        code, out = run(capsys, '--format', 'json', 'eval', 'hzeta', '--z0', '0.5', '--s', '0')
        row = json.loads(out)
        assert code == cli.EXIT_OK  # nosec assert_used
        assert row['command'] == 'hzeta'  # nosec assert_used
        assert row['value'] == '-1'  # nosec assert_used
        assert row['re'] == pytest.approx(-1)  # nosec assert_used
        assert row['im'] == pytest.approx(0)  # nosec assert_used

    def test_csv(self, capsys):
        """ The finite sum 1 + 2 + 3 in CSV. """
        code, out = run(capsys, '--format', 'csv', 'eval', 'finite-sum', '--kind', 'identity', '--upper', '3')
        rows = list(csv.reader(io.StringIO(out)))
        assert code == cli.EXIT_OK  # nosec assert_used
        assert rows[0] == ['command', 're', 'im', 'tail_estimate']  # nosec assert_used
        assert float(rows[1][1]) == pytest.approx(6)  # nosec assert_used

    def test_rsum(self, capsys):
        """ R+[1](z0) = -z0 - 1/2 from the Euler-Maclaurin constant. """
        code, out = run(capsys, 'eval', 'rsum', '--kind', 'const', '--z0', '0.3+0.4i', '--method', 'em')
        assert code == cli.EXIT_OK  # nosec assert_used
        assert out.splitlines()[0] == '-0.8-0.4i'  # nosec assert_used

    def test_pole(self, capsys):
        """ A pole is a domain error. """
        assert run(capsys, 'eval', 'hzeta', '--z0', '0.5', '--s', '1')[0] == cli.EXIT_DOMAIN  # nosec assert_used
        assert run(capsys, 'eval', 'gamma', '--z', '0')[0] == cli.EXIT_DOMAIN  # nosec assert_used

    def test_not_summable(self, capsys, monkeypatch):
        """ A series without a Cesaro limit has its own exit code. """
        def diverging(*args):  # pylint: disable=unused-argument
            raise NotCesaroSummable('no power of P up to 4 gives a limit', [{'power': 0}], True)
        monkeypatch.setattr(cli, 'remainder_sum', diverging)
        code, _ = run(capsys, 'eval', 'rsum', '--kind', 'log', '--z0', '1')
        assert code == cli.EXIT_NOT_SUMMABLE  # nosec assert_used

    def test_parametric_log(self, capsys):
        """ Stripping ln Gamma in the arc length leaves a log-divergence. """
        code, _ = run(capsys, 'eval', 'rsum', '--kind', 'log', '--z0', '0.3+0.7i', '--method', 'parametric')
        assert code == cli.EXIT_NOT_SUMMABLE  # nosec assert_used


class Test_verify:  # pylint: disable=invalid-name,missing-class-docstring
    def test_list(self, capsys):
        """ Every suite is listed with its description. """
        code, out = run(capsys, 'verify', '--list')
        assert code == cli.EXIT_OK  # nosec assert_used
        assert 'kernel: R+,0,-[z^n](z0) = 0 for n = 0..4' in out.splitlines()  # nosec assert_used

    def test_kernel(self, capsys):
        """ One row per case, then the summary. """
        code, out = run(capsys, 'verify', 'kernel')
        assert code == cli.EXIT_OK  # nosec assert_used
        assert out.splitlines()[-1] == '50/50 cases passed.'  # nosec assert_used

    def test_kernel_json(self, capsys):
        """ One JSON row per case. """
        code, out = run(capsys, '--format', 'json', 'verify', 'kernel')
        rows = [json.loads(line) for line in out.splitlines()]
        assert code == cli.EXIT_OK  # nosec assert_used
        assert len(rows) == 50  # nosec assert_used
        assert all(row['pass'] and row['suite'] == 'kernel' for row in rows)  # nosec assert_used

    def test_usage(self, capsys):
        """ An unknown suite, or none, is a usage error. """
        assert run(capsys, 'verify', 'nosuch')[0] == cli.EXIT_USAGE  # nosec assert_used
        assert run(capsys, 'verify')[0] == cli.EXIT_USAGE  # nosec assert_used
        assert run(capsys)[0] == cli.EXIT_USAGE  # nosec assert_used


class Test_trace:  # pylint: disable=invalid-name,missing-class-docstring
    def test_zeta0(self, capsys):
        """ The p-sum of 1 + 1 + ... and its running average. """
        code, out = run(capsys, 'trace', 'zeta0', '--range', '0', '2', '--step', '0.5')
        rows = list(csv.reader(io.StringIO(out)))
        assert code == cli.EXIT_OK  # nosec assert_used
        assert rows[0] == list(cli.TRACE_COLUMNS)  # nosec assert_used
        assert len(rows) == 6  # nosec assert_used
        assert rows[-1] == ['2', '2', '0', '2', '0', '0.5', '0']  # nosec assert_used

    def test_staircase_json(self, capsys):
        """ The staircase rows in JSON. """
        code, out = run(capsys, '--format', 'json', 'trace', 'staircase', '--range', '1', '3', '--step', '1', '--h', '0.5')
        rows = [json.loads(line) for line in out.splitlines()]
        assert code == cli.EXIT_OK  # nosec assert_used
        assert [row['t'] for row in rows] == [1, 2, 3]  # nosec assert_used
        assert rows[1]['psum_re'] == pytest.approx(2 * 0.6931471805599453 - 1)  # nosec assert_used

    def test_range(self, capsys):
        """ MAX > MIN >= 0 and a positive step. """
        assert run(capsys, 'trace', 'zeta0', '--range', '2', '1')[0] == cli.EXIT_USAGE  # nosec assert_used
        assert run(capsys, 'trace', 'zeta0', '--range', '0', '1', '--step', '0')[0] == cli.EXIT_USAGE  # nosec assert_used


class Test_config:  # pylint: disable=invalid-name,missing-class-docstring
    def test_generate_config(self, tmp_path, capsys):
        """ We want to verify that the configuration file is correctly generated. """
        config_filename = os.path.join(tmp_path, 'generated.conf')
        code, out = run(capsys, '-vv', '-g', config_filename)
        with open(config_filename, 'r', encoding='utf-8') as conf_file:
            config_text = conf_file.read()
        assert code == cli.EXIT_OK  # nosec assert_used
        assert 'Do not forget to edit the configuration file:' in out  # nosec assert_used
        assert config_text == DUMMY_CONFIG  # nosec assert_used

    def test_missing_config(self, tmp_path, capsys):
        """ A missing configuration file is a usage error. """
        code, _ = run(capsys, '-c', os.path.join(tmp_path, 'missing.conf'), 'eval', 'zeta', '--s', '2')
        assert code == cli.EXIT_USAGE  # nosec assert_used

    def test_options_override(self, tmp_path, capsys):
        """ We expect the options to overwrite the values from the configuration file. """
        config_filename = os.path.join(tmp_path, 'geocesaro.conf')
        with open(config_filename, 'w', encoding='utf-8') as conf_file:
            conf_file.write('output-format = json\n')
        code, out = run(capsys, '--format', 'csv', 'eval', 'zeta', '--s', '2')
        assert code == cli.EXIT_OK  # nosec assert_used
        assert out.splitlines()[0] == 'command,re,im,tail_estimate'  # nosec assert_used
        code, out = run(capsys, 'eval', 'zeta', '--s', '2')
        assert json.loads(out)['command'] == 'zeta'  # nosec assert_used
