from .spectrum import run_spectrum
from .stationary import run_stationary
from .evolve import run_evolve
from .sweep import run_sweep
from .fit import run_fit

__all__ = ['run_spectrum', 'run_stationary', 'run_evolve', 'run_sweep', 'run_fit']
