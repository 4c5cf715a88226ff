"""
Shared builders turning an ExperimentConfig into forcing specs, grids and profiles
"""
import logging
import os
from concurrent.futures import ThreadPoolExecutor

from src.models import AlgebraicProfile, ForcingSpec, Grid1D, Regime
from src.numerics import cardano_profiles, default_window, power_root_profile
from utils.validation import InputValidator

logger = logging.getLogger(__name__)


def build_spec(config, delta: float = None) -> ForcingSpec:
    """ForcingSpec from the config; POWER takes precedence over ALPHA"""
    delta = config.delta if delta is None else delta
    common = dict(beta=config.beta, p=config.p, focusing=config.focusing)
    if config.power is not None:
        return ForcingSpec.from_power(config.power, delta, sigma=config.sigma, **common)
    return ForcingSpec(delta=delta, sigma=config.sigma, alpha=config.alpha, **common)


def build_grid(config) -> Grid1D:
    return Grid1D(config.n_points, config.half_length)


def build_profile(spec: ForcingSpec, grid: Grid1D, branch: int = 1) -> AlgebraicProfile:
    if spec.p is Regime.ZERO:
        return power_root_profile(spec, grid)
    branch = InputValidator.validate_choice(branch, 'branch', [0, 1, 2])
    return cardano_profiles(spec, grid)[branch]


def fit_window(config, delta: float = None) -> tuple:
    """Configured WINDOW, else (xi0, 0.3/sqrt(delta))"""
    if config.window is not None:
        return InputValidator.validate_window(config.window)
    return default_window(config.delta if delta is None else delta, config.xi0)


def output_path(config, name: str) -> str:
    return os.path.join(config.output_dir, name)


def run_ordered(task, items, workers: int = 1):
    """Map task over items on a thread pool; results keep the order of items"""
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [task(item) for item in items]
    with ThreadPoolExecutor(max_workers=min(workers, len(items))) as pool:
        return list(pool.map(task, items))
