""" Tests of geocesaro/config.py """
import os

import pytest

from geocesaro.config import DUMMY_CONFIG, RunConfig, load_config, parse_config_text, write_dummy_config
from geocesaro.errors import ConfigError


class Test_parse_config_text:  # pylint: disable=invalid-name,missing-class-docstring
    def test_key_value(self):
        """ Values are typed by the YAML parser, hyphens are accepted in keys. """
        settings = parse_config_text('precision = 40  # digits\ntol = 1e-6\n\noutput-format = json\n')
        assert settings == {'precision': 40, 'tol': 1e-6, 'output_format': 'json'}  # nosec assert_used

    def test_yaml_mapping(self):
        """ A YAML mapping is accepted too. """
        assert parse_config_text('seed: 7\nmax_power: 2\n') == {'seed': 7, 'max_power': 2}  # nosec assert_used

    def test_dummy(self):
        """ The generated configuration holds the defaults. """
        assert RunConfig(**parse_config_text(DUMMY_CONFIG)) == RunConfig()  # nosec assert_used

    def test_errors(self):
        """ Unknown keys, bad values and bad lines are configuration errors. """
        for text in ('colour = blue', 'precision = thirty', 'just a line', 'seed = 1.5'):
            with pytest.raises(ConfigError):
                parse_config_text(text)


class Test_RunConfig:  # pylint: disable=invalid-name,missing-class-docstring
    def test_invariants(self):
        """ precision >= 15 and tol > 0. """
        with pytest.raises(ConfigError):
            RunConfig(precision=10)
        with pytest.raises(ConfigError):
            RunConfig(tol=0)
        with pytest.raises(ConfigError):
            RunConfig(output_format='xml')


class Test_load_config:  # pylint: disable=invalid-name,missing-class-docstring
    def test_precedence(self, tmp_path):
        """ The overrides win over the file, which wins over the defaults. """
        config_filename = os.path.join(tmp_path, 'geocesaro.conf')
        with open(config_filename, 'w', encoding='utf-8') as config_file:
            config_file.write('precision = 40\nseed = 7\n')
        config = load_config(config_filename, environ={}, seed=11, tol=None)
        assert config.precision == 40  # nosec assert_used
        assert config.seed == 11  # nosec assert_used
        assert config.tol == RunConfig().tol  # nosec assert_used

    def test_environment(self, tmp_path):
        """ The environment variable names the file when no option does. """
        config_filename = os.path.join(tmp_path, 'env.conf')
        with open(config_filename, 'w', encoding='utf-8') as config_file:
            config_file.write('k_default = 128\n')
        assert load_config(environ={'GEOCESARO_CONFIG': config_filename}).k_default == 128  # nosec assert_used

    def test_missing(self, tmp_path):
        """ An explicitly requested file must exist. """
        with pytest.raises(ConfigError):
            load_config(os.path.join(tmp_path, 'missing.conf'), environ={})

    def test_defaults(self, tmp_path, monkeypatch):
        """ Without any file, the defaults apply. """
        monkeypatch.chdir(tmp_path)
        assert load_config(environ={}) == RunConfig()  # nosec assert_used

    def test_generate(self, tmp_path):
        """ The dummy configuration is written as is. """
        config_filename = os.path.join(tmp_path, 'geocesaro.conf')
        write_dummy_config(config_filename)
        with open(config_filename, 'r', encoding='utf-8') as config_file:
            assert config_file.read() == DUMMY_CONFIG  # nosec assert_used
