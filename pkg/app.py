"""
Command line entry point of the cascade laboratory
"""
import functools
import json
import logging
import os
import sys

# Add project root to Python path
sys.path.insert(0, os.path.dirname(__file__))

import click  # noqa: E402

from config.settings import ExperimentConfig, config  # noqa: E402
from experiments import run_evolve, run_fit, run_spectrum, run_stationary, run_sweep  # noqa: E402
from utils.errors import LabError, handle_error  # noqa: E402

logger = logging.getLogger(__name__)

# option name -> configuration key
OVERRIDES = {
    'delta': 'DELTA',
    'beta': 'BETA',
    'sigma': 'SIGMA',
    'alpha': 'ALPHA',
    'power': 'POWER',
    'p': 'P',
    'focusing': 'FOCUSING',
    'branch': 'BRANCH',
    'n_points': 'N_POINTS',
    'half_length': 'HALF_LENGTH',
    'epsilon': 'EPSILONS',
    'epsilon_exponents': 'EPSILON_EXPONENTS',
    'deltas': 'DELTAS',
    'max_iterations': 'MAX_ITERATIONS',
    'tolerance': 'TOLERANCE',
    'dt': 'DT',
    't_final': 'T_FINAL',
    'nu': 'NU',
    'record_every': 'RECORD_EVERY',
    'perturbation': 'PERTURBATION',
    'xi0': 'XI0',
    'window': 'WINDOW',
    'seed': 'SEED',
    'out': 'OUTPUT_DIR',
    'svg': 'EMIT_SVG',
    'workers': 'WORKERS',
}


def experiment_options(command):
    """Options shared by every command; each overrides the configuration key of the same name"""
    options = [
        click.option('--config', 'config_file', type=click.Path(dir_okay=False),
                     help='KEY=VALUE configuration file.'),
        click.option('--delta', help='Depth parameter delta > 0.'),
        click.option('--beta', help='Gaussian width parameter beta > 0.'),
        click.option('--sigma', help='Nonlinearity exponent (positive integer).'),
        click.option('--alpha', help='Profile exponent in (0, 1).'),
        click.option('--power', help='Forcing power k; alpha becomes the fractional part of k/(2 sigma + 1).'),
        click.option('--p', 'p', help='0 for time independent forcing, 1 for time periodic forcing.'),
        click.option('--focusing/--defocusing', default=None, help='Sign of the nonlinearity.'),
        click.option('--branch', help='Cardano branch 0, 1 or 2 (P = 1).'),
        click.option('--n-points', help='Grid size (power of two).'),
        click.option('--half-length', help='Half length L of the domain [-L, L).'),
        click.option('--epsilon', help='Comma separated epsilon values.'),
        click.option('--epsilon-exponents', help='Comma separated j with epsilon = 2^-j delta.'),
        click.option('--deltas', help='Comma separated delta values for sweeps.'),
        click.option('--max-iterations', help='Fixed-point iteration cap.'),
        click.option('--tolerance', help='Fixed-point update tolerance.'),
        click.option('--dt', help='Time step.'),
        click.option('--t-final', help='Final time.'),
        click.option('--nu', help='Damping of the linear flow.'),
        click.option('--record-every', help='Recording stride in steps.'),
        click.option('--perturbation', help='Perturbation size c with |v0| = c eps^(1/2).'),
        click.option('--xi0', help='Lower edge of the default fit window.'),
        click.option('--window', help='Fit window as lo,hi.'),
        click.option('--seed', help='Random seed of the perturbation.'),
        click.option('--out', help='Output directory.'),
        click.option('--svg/--no-svg', default=None, help='Also write SVG figures.'),
        click.option('--workers', help='Threads for sweep rows.'),
    ]
    for option in reversed(options):
        command = option(command)
    return command


def load_config(config_file, options: dict) -> ExperimentConfig:
    overrides = {OVERRIDES[name]: value for name, value in options.items() if name in OVERRIDES}
    return ExperimentConfig.from_sources(config_file=config_file, overrides=overrides)


def report(payload: dict):
    click.echo(json.dumps(payload, indent=2, sort_keys=True, default=str))


def register_error_handlers(command):
    """Map every failure of a command to its payload on stderr and its exit code"""

    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except LabError as error:
            logger.warning(f"{command.__name__} failed: {error.message}")
            payload, exit_code = handle_error(error)
        except Exception as error:
            logger.error(f"Unexpected error in {command.__name__}: {str(error)}", exc_info=True)
            payload, exit_code = handle_error(error)
        click.echo(json.dumps(payload, sort_keys=True, default=str), err=True)
        sys.exit(exit_code)

    return wrapper


def setup_logging(config_name: str):
    """Set up logging for the selected environment"""
    config[config_name].init_logging()


def create_cli(config_name=None):
    """
    Command group factory

    Args:
        config_name (str): Environment name (development, production, testing)

    Returns:
        click.Group: The command line interface
    """
    if config_name is None:
        config_name = os.environ.get('CASCADE_ENV', 'production')

    if config_name not in config:
        config_name = 'production'

    @click.group()
    def cli():
        """Cascade laboratory for the forced nonlinear Schrodinger equation."""
        setup_logging(config_name)

    @cli.command()
    @experiment_options
    @register_error_handlers
    def spectrum(config_file, **options):
        """Fourier spectrum and cascade fit of an algebraic profile."""
        report(run_spectrum(load_config(config_file, options)))

    @cli.command()
    @experiment_options
    @register_error_handlers
    def stationary(config_file, **options):
        """epsilon sweep of the corrected stationary solution."""
        report(run_stationary(load_config(config_file, options)))

    @cli.command()
    @experiment_options
    @register_error_handlers
    def evolve(config_file, **options):
        """Time evolution of a perturbed stationary or rotating solution."""
        report(run_evolve(load_config(config_file, options)))

    @cli.command()
    @experiment_options
    @register_error_handlers
    def sweep(config_file, **options):
        """Cascade fit across the DELTAS list."""
        report(run_sweep(load_config(config_file, options)))

    @cli.command()
    @click.argument('input_csv', type=click.Path(dir_okay=False))
    @experiment_options
    @register_error_handlers
    def fit(input_csv, config_file, **options):
        """Power-law fit of a two-column xi,magnitude CSV."""
        report(run_fit(load_config(config_file, options), input_csv))

    return cli


# Create the command line instance
cli = create_cli()

if __name__ == '__main__':
    cli()
