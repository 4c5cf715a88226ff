"""
epsilon-corrected stationary solutions u_eps = u0 + v by fixed-point iteration

Each iteration solves the linearized elliptic problem
    -eps^2 Lap_h v_{n+1} + a v_{n+1} = eps^2 Lap_h u0 - R(u0, v_n)
with second-order finite differences and Dirichlet boundary values, where a is
the linear coefficient of the nonlinearity at u0 and R its Taylor remainder.
"""
import logging
from math import comb

import numpy as np
import scipy.linalg

from src.models import AlgebraicProfile, Branch, Field, Grid1D, SolverConfig, StationaryResult
from utils.errors import DivergenceError, LostEllipticityError, UnsupportedError, ValidationError, WrongRegimeError

from .forcing import rhs_field
from .grid_spectral import to_dirichlet, to_periodic

logger = logging.getLogger(__name__)

BACKSUBSTITUTION_TOLERANCE = 1e-10
RESIDUAL_TOLERANCE = 1e-8


def _boundary_pair(boundary_value):
    if np.ndim(boundary_value) == 0:
        return float(boundary_value), float(boundary_value)
    left, right = boundary_value
    return float(left), float(right)


def fd_laplacian_apply(field: Field, grid: Grid1D = None, boundary_value=0.0) -> Field:
    """
    Three-point Laplacian (u_{j-1} - 2 u_j + u_{j+1}) / dx^2 on Dirichlet interior nodes

    Args:
        field: Interior values on a Dirichlet grid
        grid: Grid of the field (defaults to field.grid)
        boundary_value: Value at x = -L and x = L, scalar or (left, right)

    Returns:
        Field: Discrete Laplacian on the same interior nodes

    Raises:
        ValidationError: If the grid is not Dirichlet or shapes disagree
    """
    grid = grid or field.grid
    if grid.is_periodic or field.grid != grid:
        raise ValidationError("finite-difference Laplacian needs the field's Dirichlet grid", "GRID_MISMATCH")

    left, right = _boundary_pair(boundary_value)
    padded = np.concatenate(([left], field.values, [right]))
    laplacian = (padded[:-2] - 2.0 * padded[1:-1] + padded[2:]) / grid.dx ** 2
    return field.with_values(laplacian)


def _banded_operator(a_diag: np.ndarray, epsilon: float, dx: float) -> np.ndarray:
    coupling = epsilon ** 2 / dx ** 2
    ab = np.empty((3, a_diag.size))
    ab[0, :] = -coupling
    ab[1, :] = a_diag + 2.0 * coupling
    ab[2, :] = -coupling
    ab[0, 0] = 0.0
    ab[2, -1] = 0.0
    return ab


def solve_linearized(a_diag: Field, epsilon: float, rhs: Field, grid: Grid1D = None) -> Field:
    """
    Solve (-eps^2 Lap_h + a_diag) w = rhs with homogeneous Dirichlet values

    The matrix is a symmetric M-matrix when min(a_diag) > 0; it is solved with a
    single banded elimination and the back-substitution residual is checked
    against 1e-10 (|A| |w| + |rhs|).

    Raises:
        LostEllipticityError: If min(a_diag) <= 0
        ValidationError: If a_diag and rhs do not share the Dirichlet grid
    """
    grid = grid or rhs.grid
    if grid.is_periodic or a_diag.grid != grid or rhs.grid != grid:
        raise ValidationError("linearized solve needs a_diag and rhs on one Dirichlet grid", "GRID_MISMATCH")

    coefficient = np.asarray(a_diag.values, dtype=float)
    floor = float(coefficient.min())
    if floor <= 0:
        raise LostEllipticityError(
            f"linearized operator is not elliptic: min coefficient {floor:.6e} <= 0",
            min_coefficient=floor
        )

    if epsilon == 0:
        return rhs.with_values(rhs.values / coefficient)

    ab = _banded_operator(coefficient, epsilon, grid.dx)
    solution = scipy.linalg.solve_banded((1, 1), ab, np.asarray(rhs.values, dtype=float))

    applied = ab[1] * solution
    applied[:-1] += ab[0, 1:] * solution[1:]
    applied[1:] += ab[2, :-1] * solution[:-1]
    operator_norm = float(np.max(np.abs(ab).sum(axis=0)))
    scale = operator_norm * float(np.max(np.abs(solution))) + float(np.max(np.abs(rhs.values)))
    mismatch = float(np.max(np.abs(applied - rhs.values)))
    if mismatch > BACKSUBSTITUTION_TOLERANCE * max(scale, np.finfo(float).tiny):
        raise LostEllipticityError(
            f"tridiagonal back-substitution residual {mismatch:.3e} exceeds tolerance",
            min_coefficient=floor
        )
    return rhs.with_values(solution)


def _check_branch(profile: AlgebraicProfile):
    spec = profile.spec
    if profile.branch is Branch.POWER_ROOT:
        if not spec.is_algebraic_exponent:
            raise WrongRegimeError(
                f"alpha={spec.alpha:g} does not solve u^(2 sigma + 1) = f; "
                f"the stationary problem needs alpha = 1/(2 sigma + 1)"
            )
        return
    if profile.k != 1:
        raise UnsupportedError(f"stationary correction is built on U1, got U{profile.k}")


def linear_coefficient(profile: AlgebraicProfile) -> np.ndarray:
    """
    Coefficient a of the linearized operator -eps^2 Lap + a at the profile

    (2 sigma + 1) u0^(2 sigma) - 3P, multiplied by -1 in the focusing case.
    """
    spec = profile.spec
    u0 = np.asarray(profile.values.values, dtype=float)
    a = (2 * spec.sigma + 1) * u0 ** (2 * spec.sigma) - 3.0 * int(spec.p)
    return spec.nonlinearity_sign * a


def ellipticity_report(profile: AlgebraicProfile) -> dict:
    """Minimum of the linear coefficient and whether the linearized operator is elliptic"""
    floor = float(linear_coefficient(profile).min())
    return {
        'min_coefficient': floor,
        'elliptic': floor > 0,
        'focusing': profile.spec.focusing,
        'branch': profile.label,
    }


def taylor_remainder(u0: np.ndarray, v: np.ndarray, sigma: int) -> np.ndarray:
    """sum_{l=2}^{2 sigma + 1} binom(2 sigma + 1, l) u0^(2 sigma + 1 - l) v^l"""
    degree = 2 * sigma + 1
    remainder = np.zeros_like(v)
    for power in range(2, degree + 1):
        remainder += comb(degree, power) * u0 ** (degree - power) * v ** power
    return remainder


def nonlinear_residual(u: Field, profile: AlgebraicProfile, epsilon: float, boundary_value) -> float:
    """Max-norm of -eps^2 Lap_h u + s(-3P u + u^(2 sigma + 1) - RHS) on interior nodes"""
    spec = profile.spec
    rhs = rhs_field(spec, u.grid).values
    values = u.values
    local = -3.0 * int(spec.p) * values + values ** (2 * spec.sigma + 1) - rhs
    laplacian = fd_laplacian_apply(u, boundary_value=boundary_value).values
    return float(np.max(np.abs(-epsilon ** 2 * laplacian + spec.nonlinearity_sign * local)))


def stationary_fixed_point(profile: AlgebraicProfile, config: SolverConfig) -> StationaryResult:
    """
    Iterate v_0 = 0, v_{n+1} = solve_linearized(a, eps, G_n) until the update stalls

    G_n = eps^2 Lap_h u0 - s R(u0, v_n). The Dirichlet value at x = +-L is the
    profile's own edge value, so v vanishes on the boundary.

    Args:
        profile: PowerRoot profile (P = 0) or Cardano U1 (P = 1) on a periodic grid
        config: epsilon, iteration cap, update tolerance and divergence factor

    Returns:
        StationaryResult: u_eps and v = u_eps - u0 on the periodic grid

    Raises:
        LostEllipticityError: If the linearized operator is not positive (focusing case)
        DivergenceError: If an iterate leaves the divergence guard or turns non-finite
        UnsupportedError / WrongRegimeError: For profiles outside the two supported cases
    """
    _check_branch(profile)
    if not profile.values.grid.is_periodic:
        raise ValidationError("stationary solves start from a profile on the periodic grid", "NOT_PERIODIC")
    spec = profile.spec
    epsilon = config.epsilon
    sign = spec.nonlinearity_sign

    interior = to_dirichlet(profile.values)
    grid = interior.grid
    u0 = np.asarray(interior.values, dtype=float)
    edge = float(np.real(profile.values.values[0]))

    a_diag = interior.with_values(linear_coefficient(profile)[1:])
    source = epsilon ** 2 * fd_laplacian_apply(interior.with_values(u0), boundary_value=edge).values
    guard = config.divergence_factor * max(float(np.max(np.abs(source))), np.finfo(float).tiny)

    v = np.zeros_like(u0)
    increments = []
    converged = False
    iterations = 0
    while iterations < config.max_iterations:
        iterations += 1
        g = source - sign * taylor_remainder(u0, v, spec.sigma)
        v_next = solve_linearized(a_diag, epsilon, interior.with_values(g), grid).values

        if not np.all(np.isfinite(v_next)) or np.max(np.abs(v_next)) > guard:
            logger.warning(f"fixed point diverged at iteration {iterations} (eps={epsilon:g}, guard={guard:.3e})")
            raise DivergenceError(
                f"iterate left the divergence guard {guard:.3e} at iteration {iterations} (eps={epsilon:g})",
                iterations=iterations
            )

        increment = float(np.max(np.abs(v_next - v)))
        increments.append(increment)
        v = v_next
        logger.debug(f"eps={epsilon:g} iteration {iterations}: |v_(n+1) - v_n| = {increment:.3e}")
        if increment < config.tolerance:
            converged = True
            break

    u_eps = interior.with_values(u0 + v)
    residual = nonlinear_residual(u_eps, profile, epsilon, edge)
    rhs_scale = float(np.max(np.abs(rhs_field(spec, grid).values)))
    if converged and residual >= RESIDUAL_TOLERANCE * (1.0 + rhs_scale):
        logger.warning(f"eps={epsilon:g}: update converged but nonlinear residual is {residual:.3e}")
        converged = False

    if converged:
        logger.info(f"stationary solve converged: eps={epsilon:g}, iterations={iterations}, residual={residual:.3e}")
    else:
        logger.warning(f"stationary solve did not converge: eps={epsilon:g}, iterations={iterations}")

    u_eps_periodic = to_periodic(u_eps, edge)
    u0_periodic = to_periodic(interior, edge)
    return StationaryResult(
        u_eps=u_eps_periodic,
        v=u_eps_periodic - u0_periodic,
        iterations=iterations,
        residual=residual,
        converged=converged,
        epsilon=epsilon,
        increments=tuple(increments),
    )
