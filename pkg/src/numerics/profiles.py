"""
Algebraic solutions with epsilon = 0: the power root f^alpha and the Cardano branches
"""
import logging
import math

import numpy as np

from src.models import AlgebraicProfile, Branch, Field, ForcingSpec, Grid1D, Regime
from utils.errors import ValidationError, WrongRegimeError

from .forcing import eval_f, eval_Q

logger = logging.getLogger(__name__)

SQRT3 = math.sqrt(3.0)


def power_root_profile(spec: ForcingSpec, grid: Grid1D) -> AlgebraicProfile:
    """
    u0 = f^alpha, evaluated as exp(alpha log f)

    With the default alpha = 1/(2 sigma + 1) this solves u^(2 sigma + 1) = f.
    f >= 1 - e^(-delta) > 0 keeps the logarithm finite.

    Raises:
        WrongRegimeError: If spec is a P = 1 spec
    """
    if spec.p is not Regime.ZERO:
        raise WrongRegimeError("the power root profile needs P = 0")

    f = eval_f(spec, grid)
    values = np.exp(spec.alpha * np.log(f.values))
    return AlgebraicProfile(spec, Branch.POWER_ROOT, Field(grid, values))


def cardano_profiles(spec: ForcingSpec, grid: Grid1D):
    """
    The three real roots of U^3 - 3U - 2Q = 0

    With c = e^(-delta/2 - x^2/4) and s = (1 - c^2)^(1/2):
        U0 = 2c,  U1 = -c - sqrt(3) s,  U2 = -c + sqrt(3) s.
    Computed from (c, s) directly rather than through arccos(c).

    Returns:
        tuple: (U0, U1, U2) as AlgebraicProfile

    Raises:
        WrongRegimeError: If spec is not a P = 1, sigma = 1 spec
        ValidationError: If delta <= 0
    """
    if spec.p is not Regime.ONE or spec.sigma != 1:
        raise WrongRegimeError("Cardano profiles need P = 1 and sigma = 1")
    if spec.delta <= 0:
        raise ValidationError("Cardano profiles need delta > 0", "INVALID_DELTA")

    x = grid.points
    exponent = spec.delta / 2.0 + spec.beta * x ** 2 / 4.0
    c = np.exp(-exponent)
    s = np.sqrt(-np.expm1(-2.0 * exponent))

    branches = (2.0 * c, -c - SQRT3 * s, -c + SQRT3 * s)
    logger.debug(f"Cardano branches on {grid!r}: min 3U1^2 - 3 = {float(np.min(3.0 * branches[1] ** 2 - 3.0)):.3e}")
    return tuple(
        AlgebraicProfile(spec, Branch.CARDANO, Field(grid, values), k=k)
        for k, values in enumerate(branches)
    )


def cardano_roots(p, q):
    """
    Trigonometric roots of the depressed cubic U^3 - 3 P U - 2 Q = 0

    Valid where Q^2 < P^3 (three distinct real roots):
        U_k = 2 sqrt(P) cos(theta/3 + 2 k pi / 3),  cos(theta) = Q / P^(3/2).

    Args:
        p: P > 0, scalar or array
        q: Q, scalar or array broadcastable against p

    Returns:
        tuple: three arrays (k = 0, 1, 2)

    Raises:
        WrongRegimeError: Where Q^2 >= P^3 (one real root or a double root)
    """
    p, q = np.broadcast_arrays(np.asarray(p, dtype=float), np.asarray(q, dtype=float))
    if np.any(q ** 2 >= p ** 3):
        raise WrongRegimeError("trigonometric Cardano roots need Q^2 < P^3 everywhere")

    third_theta = np.arccos(q / p ** 1.5) / 3.0
    scale = 2.0 * np.sqrt(p)
    return tuple(scale * np.cos(third_theta + 2.0 * k * np.pi / 3.0) for k in range(3))


def profile_residual(profile: AlgebraicProfile) -> float:
    """Max-norm residual of the algebraic equation the profile solves"""
    values = profile.values.values
    grid = profile.values.grid
    spec = profile.spec
    if profile.branch is Branch.POWER_ROOT:
        target = np.exp(spec.alpha * (2 * spec.sigma + 1) * np.log(eval_f(spec, grid).values))
        return float(np.max(np.abs(values ** (2 * spec.sigma + 1) - target)))

    q = eval_Q(spec, grid).values
    return float(np.max(np.abs(values ** 3 - 3.0 * values - 2.0 * q)))
