from .grid import Boundary, Domain, Grid1D, Field
from .forcing_spec import ForcingSpec, Regime
from .profile import AlgebraicProfile, Branch
from .spectrum import SpectrumEstimate
from .solver import SolverConfig, StationaryResult
from .evolution import EvolutionConfig, EnvelopeFit, ReferenceKind, TrajectoryRecord

__all__ = [
    'Boundary', 'Domain', 'Grid1D', 'Field',
    'ForcingSpec', 'Regime',
    'AlgebraicProfile', 'Branch',
    'SpectrumEstimate',
    'SolverConfig', 'StationaryResult',
    'EvolutionConfig', 'EnvelopeFit', 'ReferenceKind', 'TrajectoryRecord',
]
