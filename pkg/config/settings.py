import logging
import math
import os
from dataclasses import dataclass, field, fields, replace
from logging.handlers import RotatingFileHandler
from typing import List, Optional

from dotenv import dotenv_values, load_dotenv

from utils.errors import ValidationError
from utils.validation import InputValidator

LOG_FORMAT = '%(asctime)s %(levelname)s: %(message)s [in %(pathname)s:%(lineno)d]'
ENV_PREFIX = 'CASCADE_'
LOG_HANDLER_NAME = 'cascade-lab'


class Config:
    """Base configuration class"""

    SERVICE_NAME = os.environ.get('SERVICE_NAME', 'cascade-lab')
    LOG_LEVEL = logging.INFO
    LOG_FILE = os.path.join('logs', 'cascade_lab.log')

    @staticmethod
    def init_logging():
        """Initialize logging for this configuration"""
        pass


class DevelopmentConfig(Config):
    """Development configuration"""
    DEBUG = True
    LOG_LEVEL = logging.DEBUG

    @staticmethod
    def init_logging():
        Config.init_logging()
        logging.basicConfig(level=logging.DEBUG)


class ProductionConfig(Config):
    """Production configuration"""
    DEBUG = False

    @staticmethod
    def init_logging():
        Config.init_logging()
        root = logging.getLogger()
        if any(handler.get_name() == LOG_HANDLER_NAME for handler in root.handlers):
            return

        # Batch runs on clusters usually collect stdout
        if os.environ.get('LOG_TO_STDOUT'):
            handler = logging.StreamHandler()
        else:
            if not os.path.exists('logs'):
                os.makedirs('logs')
            handler = RotatingFileHandler(Config.LOG_FILE, maxBytes=10240, backupCount=10)
        handler.set_name(LOG_HANDLER_NAME)
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        handler.setLevel(logging.INFO)
        root.addHandler(handler)
        root.setLevel(logging.INFO)
        root.info('Cascade lab startup')


class TestingConfig(Config):
    """Testing configuration"""
    TESTING = True
    DEBUG = True
    LOG_LEVEL = logging.WARNING

    @staticmethod
    def init_logging():
        Config.init_logging()
        logging.getLogger().setLevel(logging.WARNING)


# Configuration mapping
config = {
    'development': DevelopmentConfig,
    'production': ProductionConfig,
    'testing': TestingConfig,
    'default': DevelopmentConfig
}


def _optional(convert):
    def check(value, name):
        if value is None or (isinstance(value, str) and value.strip().lower() in ('', 'none')):
            return None
        return convert(value, name)
    return check


def _exponent_list(value, name):
    exponents = []
    for item in InputValidator.validate_real_list(value, name):
        if item < 0 or item != int(item):
            raise ValidationError(f"{name} entries must be non-negative integers, got {item:g}", "INVALID_TYPE")
        exponents.append(int(item))
    return exponents


def _integer_choice(choices):
    def check(value, name):
        number = InputValidator.validate_real(value, name)
        if number != int(number):
            raise ValidationError(f"{name} must be an integer, got {value!r}", "INVALID_TYPE")
        return InputValidator.validate_choice(int(number), name, choices)
    return check


def _window(value, name):
    if value is None or (isinstance(value, str) and value.strip().lower() in ('', 'none')):
        return None
    lo, hi = InputValidator.validate_real_list(value, name, positive=True)[:2]
    return InputValidator.validate_window((lo, hi))


# key -> (field name, validator)
CONFIG_KEYS = {
    'DELTA': ('delta', InputValidator.validate_positive),
    'BETA': ('beta', InputValidator.validate_positive),
    'SIGMA': ('sigma', InputValidator.validate_positive_int),
    'ALPHA': ('alpha', _optional(InputValidator.validate_open_unit)),
    'POWER': ('power', _optional(InputValidator.validate_positive)),
    'P': ('p', _integer_choice([0, 1])),
    'FOCUSING': ('focusing', InputValidator.validate_bool),
    'BRANCH': ('branch', _integer_choice([0, 1, 2])),
    'N_POINTS': ('n_points', InputValidator.validate_power_of_two),
    'HALF_LENGTH': ('half_length', InputValidator.validate_positive),
    'EPSILONS': ('epsilons', _optional(lambda value, name: InputValidator.validate_real_list(value, name))),
    'EPSILON_EXPONENTS': ('epsilon_exponents', _exponent_list),
    'DELTAS': ('deltas', lambda value, name: InputValidator.validate_real_list(value, name, positive=True)),
    'MAX_ITERATIONS': ('max_iterations', InputValidator.validate_positive_int),
    'TOLERANCE': ('tolerance', InputValidator.validate_positive),
    'DT': ('dt', InputValidator.validate_positive),
    'T_FINAL': ('t_final', InputValidator.validate_positive),
    'NU': ('nu', InputValidator.validate_non_negative),
    'RECORD_EVERY': ('record_every', InputValidator.validate_positive_int),
    'PERTURBATION': ('perturbation', InputValidator.validate_non_negative),
    'XI0': ('xi0', InputValidator.validate_positive),
    'WINDOW': ('window', _window),
    'SEED': ('seed', lambda value, name: InputValidator.validate_seed(value)),
    'OUTPUT_DIR': ('output_dir', lambda value, name: str(value)),
    'EMIT_SVG': ('emit_svg', InputValidator.validate_bool),
    'WORKERS': ('workers', InputValidator.validate_positive_int),
}


@dataclass(frozen=True)
class ExperimentConfig:
    """
    Parameters of one laboratory run.

    Sources are layered: defaults < CASCADE_* environment (and .env) <
    config file of KEY=VALUE lines < command-line overrides.
    """

    delta: float = 2.0 ** -14
    beta: float = 1.0
    sigma: int = 1
    alpha: Optional[float] = None
    power: Optional[float] = None
    p: int = 0
    focusing: bool = False
    branch: int = 1
    n_points: int = 2 ** 14
    half_length: float = 2 * math.pi
    epsilons: Optional[List[float]] = None
    epsilon_exponents: List[int] = field(default_factory=lambda: list(range(7)))
    deltas: List[float] = field(default_factory=lambda: [2.0 ** -j for j in range(4, 17, 2)])
    max_iterations: int = 200
    tolerance: float = 1e-12
    dt: float = 1e-3
    t_final: float = 1.0
    nu: float = 0.0
    record_every: int = 10
    perturbation: float = 0.1
    xi0: float = 2.0
    window: Optional[tuple] = None
    seed: Optional[int] = 0
    output_dir: str = 'results'
    emit_svg: bool = False
    workers: int = 4

    @classmethod
    def from_mapping(cls, values: dict, base: 'ExperimentConfig' = None) -> 'ExperimentConfig':
        """
        Apply KEY=VALUE pairs on top of base

        Keys are matched case-insensitively, with or without the CASCADE_ prefix;
        None values are skipped. Unknown keys raise.

        Raises:
            ValidationError: Naming the offending key
        """
        base = base or cls()
        updates = {}
        for raw_key, value in values.items():
            if value is None:
                continue
            key = raw_key.upper()
            if key.startswith(ENV_PREFIX):
                key = key[len(ENV_PREFIX):]
            if key not in CONFIG_KEYS:
                raise ValidationError(f"unknown configuration key {raw_key!r}", "UNKNOWN_KEY")
            name, validate = CONFIG_KEYS[key]
            try:
                updates[name] = validate(value, key)
            except ValidationError as error:
                if key in error.message:
                    raise
                raise ValidationError(f"{key}: {error.message}", error.error_code) from error
        return replace(base, **updates)

    @classmethod
    def from_environment(cls, environ: dict = None, base: 'ExperimentConfig' = None) -> 'ExperimentConfig':
        environ = os.environ if environ is None else environ
        selected = {
            key: value for key, value in environ.items()
            if key.startswith(ENV_PREFIX) and key[len(ENV_PREFIX):] in CONFIG_KEYS
        }
        return cls.from_mapping(selected, base)

    @classmethod
    def from_file(cls, path: str, base: 'ExperimentConfig' = None) -> 'ExperimentConfig':
        """Read KEY=VALUE lines (comments with #) through python-dotenv"""
        if not os.path.isfile(path):
            raise ValidationError(f"config file not found: {path}", "MISSING_CONFIG")
        return cls.from_mapping(dict(dotenv_values(path)), base)

    @classmethod
    def from_sources(cls, config_file: str = None, overrides: dict = None,
                     environ: dict = None, dotenv_path: str = None) -> 'ExperimentConfig':
        """
        Resolve a configuration from every source in precedence order

        Args:
            config_file: Optional KEY=VALUE file
            overrides: Command-line values by key (None entries are ignored)
            environ: Environment mapping, os.environ by default
            dotenv_path: .env file merged into os.environ first (existing variables win)

        Returns:
            ExperimentConfig: The validated configuration
        """
        if environ is None:
            load_dotenv(dotenv_path, override=False)
        resolved = cls.from_environment(environ)
        if config_file:
            resolved = cls.from_file(config_file, resolved)
        if overrides:
            resolved = cls.from_mapping(overrides, resolved)
        return resolved

    @property
    def epsilon_values(self) -> List[float]:
        """Explicit EPSILONS, else eps = 2^-j delta over EPSILON_EXPONENTS"""
        if self.epsilons:
            return list(self.epsilons)
        return [2.0 ** -j * self.delta for j in self.epsilon_exponents]

    def to_dict(self):
        return {item.name: getattr(self, item.name) for item in fields(self)}
