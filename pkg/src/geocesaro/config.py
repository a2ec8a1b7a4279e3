""" This module loads the run configuration of geocesaro.

    The configuration file is a flat list of "key = value" lines, with "#" comments.
    Each value is typed by the YAML parser, so that 1e-8, 30 or json read naturally.
    A file whose whole content is a YAML mapping is accepted too.

    The file is looked up in this order:
        - the -c | --config option,
        - the GEOCESARO_CONFIG environment variable,
        - geocesaro.conf in the current directory, if it exists.
    Otherwise the built-in defaults are used.
"""

import dataclasses
import logging
import os

import yaml

from geocesaro.errors import ConfigError

CONFIG_ENV_VAR = 'GEOCESARO_CONFIG'
DEFAULT_CONFIG_FILE = 'geocesaro.conf'
OUTPUT_FORMATS = ('human', 'json', 'csv')

DUMMY_CONFIG = """# Configuration of geocesaro, as "key = value" lines.
# The command-line options take precedence over these values.

# Working precision, in decimal digits (at least 15).
precision = 30

# Number of explicit summands before the Euler-Maclaurin tail takes over.
k_default = 64

# Number of Bernoulli corrections for ln Gamma, and for the Hurwitz zeta function.
order_default = 3
zeta_order = 12

# Stabilisation tolerance of the generalised Cesaro limits.
tol = 1e-8

# Highest power of the averaging operator P that is tried.
max_power = 4

# Probe schedule: t = probe_base * 2^i, for i in 0..probe_levels-1.
probe_base = 64
probe_levels = 7

# One of: human, json, csv.
output_format = human

# Seed of the randomized verification suites.
seed = 541
"""


@dataclasses.dataclass(frozen=True)
class RunConfig:  # pylint: disable=too-many-instance-attributes
    """ The settings shared by every command. """
    precision: int = 30
    k_default: int = 64
    order_default: int = 3
    zeta_order: int = 12
    tol: float = 1e-8
    max_power: int = 4
    probe_base: int = 64
    probe_levels: int = 7
    output_format: str = 'human'
    seed: int = 541

    def __post_init__(self):
        if self.precision < 15:
            raise ConfigError(f'precision must be at least 15 digits, got {self.precision}')
        if not self.tol > 0:
            raise ConfigError(f'tol must be positive, got {self.tol}')
        if self.k_default < 1:
            raise ConfigError(f'k_default must be positive, got {self.k_default}')
        if self.order_default < 0 or self.zeta_order < 0:
            raise ConfigError('order_default and zeta_order must be non-negative')
        if self.max_power < 0:
            raise ConfigError(f'max_power must be non-negative, got {self.max_power}')
        if self.probe_base < 1 or self.probe_levels < 4:
            raise ConfigError('probe_base must be positive and probe_levels at least 4')
        if self.output_format not in OUTPUT_FORMATS:
            raise ConfigError(f'output_format must be one of {", ".join(OUTPUT_FORMATS)}, got {self.output_format!r}')


def _coerce(name, value):
    """ Convert a parsed value to the type of the RunConfig field 'name'. """
    field_types = {field.name: field.type for field in dataclasses.fields(RunConfig)}
    if name not in field_types:
        raise ConfigError(f'unknown configuration key: {name}')
    wanted = field_types[name]
    if isinstance(wanted, str):
        # Annotations are strings under "from __future__ import annotations".
        wanted = {'int': int, 'float': float, 'str': str}[wanted]
    try:
        if wanted is int and isinstance(value, float) and not value.is_integer():
            raise ValueError(f'{value} is not an integer')
        return wanted(value)
    except (TypeError, ValueError) as exp:
        raise ConfigError(f'invalid value for {name}: {value!r} ({exp})') from exp


def parse_config_text(text):
    """ Parse the content of a configuration file into a dictionary of typed settings. """
    settings = {}
    try:
        # The load() function is deprecated because it allows arbitrary code execution.
        # See: https://python.land/data-processing/python-yaml#PyYAML_safe_load_vs_load
        document = yaml.safe_load(text)
    except yaml.YAMLError:
        document = None
    if isinstance(document, dict):
        items = document.items()
    else:
        items = []
        for number, line in enumerate(text.splitlines(), start=1):
            line = line.split('#', 1)[0].strip()
            if not line:
                continue
            if '=' not in line:
                raise ConfigError(f'line {number}: expected "key = value", got {line!r}')
            key, raw = line.split('=', 1)
            try:
                items.append((key, yaml.safe_load(raw.strip())))
            except yaml.YAMLError as exp:
                raise ConfigError(f'line {number}: {exp}') from exp
    for key, value in items:
        name = str(key).strip().replace('-', '_')
        settings[name] = _coerce(name, value)
    return settings


def locate_config(path=None, environ=None):
    """ Return (path, explicit) of the configuration file to load, or (None, False). """
    environ = os.environ if environ is None else environ
    if path:
        return path, True
    if environ.get(CONFIG_ENV_VAR):
        return environ[CONFIG_ENV_VAR], True
    if os.path.isfile(DEFAULT_CONFIG_FILE):
        return DEFAULT_CONFIG_FILE, False
    return None, False


def load_config(path=None, environ=None, **overrides):
    """ Build the RunConfig from the located file, then apply the non-None overrides. """
    located, explicit = locate_config(path, environ)
    settings = {}
    if located:
        try:
            with open(located, 'r', encoding='utf-8') as config_file:
                settings = parse_config_text(config_file.read())
        except OSError as exp:
            if explicit:
                raise ConfigError(f'the configuration file could not be loaded: {located} ({exp})') from exp
            logging.warning('Ignoring the unreadable configuration file %s: %s', located, exp)
        logging.debug('Loaded %s from %s', settings, located)
    config = RunConfig(**settings)
    changes = {name: value for name, value in overrides.items() if value is not None}
    if changes:
        config = dataclasses.replace(config, **changes)
    logging.debug('config = %s', config)
    return config


def write_dummy_config(path):
    """ Write the documented default configuration to 'path'. """
    logging.debug('Generating config file: %s', path)
    with open(path, 'w', encoding='utf-8') as config_file:
        config_file.write(DUMMY_CONFIG)
