"""
Time integration of the forced NLS
    i u_t = -eps^2 Lap u + s(|u|^(2 sigma) u - f(t, x)),   s = -1 when focusing
by Strang splitting on the periodic grid, with energy diagnostics along the trajectory
"""
import logging
import math

import numpy as np
from scipy import stats

from src.models import (
    Domain, EnvelopeFit, EvolutionConfig, Field, ForcingSpec, Grid1D, ReferenceKind, Regime,
    SolverConfig, TrajectoryRecord
)
from utils.errors import BlowUpError, InsufficientDataError, UnsupportedError, ValidationError, WrongRegimeError
from utils.validation import InputValidator

from .cascade_fit import WINDOW_MARGIN
from .forcing import eval_f, eval_Q
from .grid_spectral import NormKind, dft_backward, discrete_norm, spectral_derivative
from .profiles import cardano_profiles, power_root_profile
from .stationary_solver import stationary_fixed_point

logger = logging.getLogger(__name__)

BLOWUP_THRESHOLD = 1e8
ROTATION_FREQUENCY = 3.0


class StaticForcing:
    """Time independent forcing f(x)"""

    def __init__(self, values: np.ndarray):
        self.values = np.asarray(values, dtype=float)

    def __call__(self, t: float) -> np.ndarray:
        return self.values


class RotatingForcing:
    """Time periodic forcing amplitude(x) e^(-i omega t)"""

    def __init__(self, amplitude: np.ndarray, omega: float):
        self.amplitude = np.asarray(amplitude, dtype=float)
        self.omega = float(omega)

    def __call__(self, t: float) -> np.ndarray:
        return self.amplitude * np.exp(-1j * self.omega * t)


def rotation_rate(spec: ForcingSpec) -> float:
    """omega with f(t) = 2Q e^(-i omega t); 0 for P = 0, sign-flipped when focusing"""
    return ROTATION_FREQUENCY * int(spec.p) * spec.nonlinearity_sign


def forcing_for(spec: ForcingSpec, grid: Grid1D):
    """f_delta for P = 0, 2Q e^(-3it) for P = 1 (e^(+3it) when focusing)"""
    if spec.p is Regime.ZERO:
        return StaticForcing(eval_f(spec, grid).values)
    return RotatingForcing(2.0 * eval_Q(spec, grid).values, rotation_rate(spec))


class SplitStepIntegrator:
    """
    Strang splitting L(dt/2) N(dt) L(dt/2) on a periodic grid.

    L is the exact Fourier multiplier e^(-(i + nu) eps^2 xi^2 tau). N is the
    pointwise flow of i u_t = s(|u|^(2 sigma) u - f(t)): an exact phase rotation
    without forcing, classical RK4 with forcing.
    """

    def __init__(self, grid: Grid1D, epsilon: float, sigma: int = 1, nu: float = 0.0,
                 forcing=None, focusing: bool = False, nonlinear: bool = True,
                 blowup_threshold: float = BLOWUP_THRESHOLD):
        if not grid.is_periodic:
            raise ValidationError("time stepping needs a periodic grid", "NOT_PERIODIC")
        self.grid = grid
        self.epsilon = InputValidator.validate_non_negative(epsilon, 'epsilon')
        self.sigma = InputValidator.validate_positive_int(sigma, 'sigma')
        self.nu = InputValidator.validate_non_negative(nu, 'nu')
        self.forcing = forcing
        self.sign = -1 if focusing else 1
        self.nonlinear = nonlinear
        self.blowup_threshold = InputValidator.validate_positive(blowup_threshold, 'blowup_threshold')
        self._xi_sq = (2.0 * np.pi * np.fft.fftfreq(grid.n_points, d=grid.dx)) ** 2
        self._dt = None
        self._half_linear = None

    def set_timestep(self, dt: float):
        if dt == self._dt:
            return
        self._dt = dt
        self._half_linear = np.exp(-(1j + self.nu) * self.epsilon ** 2 * self._xi_sq * (dt / 2.0))

    def _linear(self, u: np.ndarray) -> np.ndarray:
        if self.epsilon == 0:
            return u
        return np.fft.ifft(np.fft.fft(u) * self._half_linear)

    def _rate(self, u: np.ndarray, t: float) -> np.ndarray:
        local = np.abs(u) ** (2 * self.sigma) * u if self.nonlinear else 0.0
        return -1j * self.sign * (local - self.forcing(t))

    def _nonlinear(self, u: np.ndarray, t: float, dt: float) -> np.ndarray:
        if self.forcing is None:
            if not self.nonlinear:
                return u
            return u * np.exp(-1j * self.sign * np.abs(u) ** (2 * self.sigma) * dt)

        k1 = self._rate(u, t)
        k2 = self._rate(u + 0.5 * dt * k1, t + 0.5 * dt)
        k3 = self._rate(u + 0.5 * dt * k2, t + 0.5 * dt)
        k4 = self._rate(u + dt * k3, t + dt)
        return u + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)

    def step(self, u: np.ndarray, t: float, dt: float) -> np.ndarray:
        """Advance raw samples from t to t + dt"""
        self.set_timestep(dt)
        u = self._linear(np.asarray(u, dtype=complex))
        u = self._nonlinear(u, t, dt)
        u = self._linear(u)
        if not np.all(np.isfinite(u)) or np.max(np.abs(u)) > self.blowup_threshold:
            raise BlowUpError(f"solution left the finite range at t={t + dt:g}", time=t + dt)
        return u

    def __call__(self, field: Field, t: float, dt: float) -> Field:
        if field.grid != self.grid or field.domain is not Domain.PHYSICAL:
            raise ValidationError("field does not live on the integrator's grid", "GRID_MISMATCH")
        return field.with_values(self.step(field.values, t, dt))


def step_strang(u: Field, forcing, t: float, dt: float, epsilon: float, nu: float = 0.0,
                sigma: int = 1, focusing: bool = False, nonlinear: bool = True) -> Field:
    """
    One Strang step of the forced NLS

    Args:
        u: Current state on a periodic grid
        forcing: Callable t -> samples of f(t, x), or None for f = 0
        t: Current time
        dt: Time step
        epsilon: Semiclassical parameter; 0 disables the linear substep
        nu: Damping of the linear substep
        sigma: Nonlinearity exponent
        focusing: Flip the sign of the nonlinearity and forcing
        nonlinear: False drops |u|^(2 sigma) u from the pointwise substep

    Returns:
        Field: State at t + dt

    Raises:
        BlowUpError: If the state turns non-finite or exceeds the blow-up threshold
    """
    integrator = SplitStepIntegrator(u.grid, epsilon, sigma, nu, forcing, focusing, nonlinear)
    return integrator(u, t, dt)


def energy(u: Field, spec: ForcingSpec, epsilon: float) -> float:
    """
    E(u) = eps^2/2 |grad u|^2 + s/(2 sigma + 2) |u|_(2 sigma + 2)^(2 sigma + 2) - s Re int f conj(u)

    Raises:
        WrongRegimeError: For P = 1 (time dependent forcing); see rotating_energy
    """
    if spec.p is not Regime.ZERO:
        raise WrongRegimeError("E is defined for time independent forcing; use rotating_energy for P = 1")
    grid = u.grid
    f = eval_f(spec, grid).values
    values = u.values
    gradient = discrete_norm(spectral_derivative(u), NormKind.L2) ** 2
    potential = grid.dx * np.sum(np.abs(values) ** (2 * spec.sigma + 2)) / (2 * spec.sigma + 2)
    work = grid.dx * np.sum(np.real(f * np.conj(values)))
    return float(epsilon ** 2 / 2.0 * gradient + spec.nonlinearity_sign * (potential - work))


def rotating_energy(u: Field, spec: ForcingSpec, epsilon: float, t: float) -> float:
    """
    Energy of the rotating frame w = u e^(i omega t) for P = 1

    H(w) = eps^2/2 |grad w|^2 + s(1/4 |w|_4^4 - 3/2 |w|^2 - Re int 2Q conj(w)),
    conserved by the P = 1 dynamics.
    """
    if spec.p is not Regime.ONE:
        raise WrongRegimeError("the rotating-frame energy is defined for P = 1")
    grid = u.grid
    w = u.with_values(u.values * np.exp(1j * rotation_rate(spec) * t))
    q2 = 2.0 * eval_Q(spec, grid).values
    gradient = discrete_norm(spectral_derivative(w), NormKind.L2) ** 2
    quartic = grid.dx * np.sum(np.abs(w.values) ** 4) / 4.0
    mass = grid.dx * np.sum(np.abs(w.values) ** 2)
    work = grid.dx * np.sum(np.real(q2 * np.conj(w.values)))
    return float(epsilon ** 2 / 2.0 * gradient
                 + spec.nonlinearity_sign * (quartic - ROTATION_FREQUENCY / 2.0 * mass - work))


def renormalized_energy(v: Field, u_eps: Field, epsilon: float, sigma: int = 1,
                        rotation: float = 0.0, focusing: bool = False) -> float:
    """
    Energy of the perturbation v around a real stationary solution u_eps (cubic case)

        eps^2/2 |grad v|^2 + s(1/2 int u^2 |v|^2 + int u^2 (Re v)^2
                              + Re int |v|^2 v u + 1/4 |v|_4^4 - rotation/2 |v|^2)

    rotation = 3 for the P = 1 rotating frame, 0 otherwise.

    Raises:
        UnsupportedError: If sigma != 1
        ValidationError: If the fields do not share a grid
    """
    if sigma != 1:
        raise UnsupportedError(f"renormalized energy is defined for the cubic case, got sigma={sigma}")
    if not v.same_support(u_eps):
        raise ValidationError("v and u_eps live on different grids", "GRID_MISMATCH")

    dx = v.grid.dx
    u = np.real(u_eps.values)
    values = v.values
    modulus_sq = np.abs(values) ** 2
    gradient = discrete_norm(spectral_derivative(v), NormKind.L2) ** 2
    quadratic = dx * np.sum(0.5 * u ** 2 * modulus_sq + u ** 2 * np.real(values) ** 2)
    cubic = dx * np.sum(modulus_sq * np.real(values) * u)
    quartic = dx * np.sum(modulus_sq ** 2) / 4.0
    shift = rotation / 2.0 * dx * np.sum(modulus_sq)
    sign = -1 if focusing else 1
    return float(epsilon ** 2 / 2.0 * gradient + sign * (quadratic + cubic + quartic - shift))


def band_limited_perturbation(grid: Grid1D, l2_norm: float, xi_max: float, seed: int = 0) -> Field:
    """
    Random complex field with Fourier support in |xi| <= xi_max, scaled to the given L2 norm

    Raises:
        ValidationError: If no lattice frequency lies in the band
    """
    l2_norm = InputValidator.validate_non_negative(l2_norm, 'l2_norm')
    xi_max = InputValidator.validate_positive(xi_max, 'xi_max')
    rng = np.random.default_rng(seed)

    band = np.abs(grid.frequencies) <= xi_max
    coefficients = np.zeros(grid.n_points, dtype=complex)
    coefficients[band] = rng.standard_normal(band.sum()) + 1j * rng.standard_normal(band.sum())
    v = dft_backward(Field(grid, coefficients, Domain.FREQUENCY))

    norm = discrete_norm(v)
    if norm == 0:
        raise ValidationError(f"no frequency of the lattice lies in |xi| <= {xi_max:g}", "EMPTY_BAND")
    return v.with_values(v.values * (l2_norm / norm))


def fit_envelope(times, l2_v) -> EnvelopeFit:
    """
    Exponential envelope A e^(C t) over a perturbation norm

    C comes from least squares on log l2_v; A is then raised until the
    envelope bounds every sample.

    Raises:
        InsufficientDataError: With fewer than 2 positive samples
    """
    times = np.asarray(times, dtype=float)
    l2_v = np.asarray(l2_v, dtype=float)
    positive = l2_v > 0
    if np.count_nonzero(positive) < 2:
        raise InsufficientDataError("envelope fit needs at least 2 positive samples")

    t, norms = times[positive], l2_v[positive]
    if np.ptp(t) == 0:
        raise InsufficientDataError("envelope fit needs samples at distinct times")

    fit = stats.linregress(t, np.log(norms))
    rate = float(fit.slope)
    amplitude = float(np.max(norms * np.exp(-rate * t)))
    r_squared = float(fit.rvalue) ** 2 if np.isfinite(fit.rvalue) else 0.0
    return EnvelopeFit(amplitude=amplitude, rate=rate, r_squared=min(1.0, r_squared))


def _reference_field(spec: ForcingSpec, grid: Grid1D, config: EvolutionConfig, epsilon: float) -> Field:
    if config.reference is ReferenceKind.ROTATING:
        if spec.p is not Regime.ONE:
            raise WrongRegimeError("rotating references need P = 1")
        return cardano_profiles(spec, grid)[config.k].values

    if spec.p is Regime.ZERO:
        profile = power_root_profile(spec, grid)
    else:
        profile = cardano_profiles(spec, grid)[1]
    return stationary_fixed_point(profile, SolverConfig(epsilon=epsilon)).u_eps


def dt_resolves_band(dt: float, epsilon: float, xi_max: float) -> bool:
    return dt * epsilon ** 2 * xi_max ** 2 <= math.pi


def evolve(u0: Field, config: EvolutionConfig, spec: ForcingSpec, epsilon: float,
           reference: Field = None, nonlinear: bool = True) -> TrajectoryRecord:
    """
    Run the split-step scheme from u0 and record the perturbation and energies

    The perturbation is v(t) = u(t) - ref e^(-i omega t), where ref is u_eps
    (STATIONARY) or the Cardano branch U_k (ROTATING) and omega = 0 for P = 0.

    Args:
        u0: Initial state on a periodic grid
        config: Time step, horizon, damping, recording stride and reference kind
        spec: Forcing parameters
        epsilon: Semiclassical parameter
        reference: Reference state; solved or built from spec when omitted
        nonlinear: False drops the nonlinearity from the pointwise substep

    Returns:
        TrajectoryRecord: Samples at t = 0, every record_every steps and at t_final

    Raises:
        BlowUpError: Carrying the partial record
    """
    grid = u0.grid
    if reference is None:
        reference = _reference_field(spec, grid, config, epsilon)
    if not reference.same_support(u0):
        raise ValidationError("reference and initial state live on different grids", "GRID_MISMATCH")

    xi_band = WINDOW_MARGIN / math.sqrt(spec.delta)
    if not dt_resolves_band(config.dt, epsilon, xi_band):
        logger.warning(f"dt={config.dt:g} does not resolve the linear phase up to xi={xi_band:.4g} "
                       f"(dt eps^2 xi^2 = {config.dt * epsilon ** 2 * xi_band ** 2:.3g} > pi)")

    omega = rotation_rate(spec)
    cubic = spec.sigma == 1
    integrator = SplitStepIntegrator(grid, epsilon, spec.sigma, config.nu, forcing_for(spec, grid),
                                     spec.focusing, nonlinear)
    record = TrajectoryRecord(renorm_energy=[] if cubic else None)

    def sample(u: Field, t: float):
        phase = np.exp(-1j * omega * t)
        v = u - reference.values * phase
        if spec.p is Regime.ZERO:
            current_energy = energy(u, spec, epsilon)
        else:
            current_energy = rotating_energy(u, spec, epsilon, t)
        renorm = None
        if cubic:
            frame = v.with_values(v.values / phase)
            renorm = renormalized_energy(frame, reference, epsilon, rotation=ROTATION_FREQUENCY * int(spec.p),
                                         focusing=spec.focusing)
        record.append(t, discrete_norm(v), current_energy, renorm, discrete_norm(u))

    u = u0.with_values(np.asarray(u0.values, dtype=complex))
    n_steps = config.n_steps
    logger.info(f"evolving {n_steps} steps of dt={config.dt:g} (eps={epsilon:g}, nu={config.nu:g}, "
                f"reference={config.reference.value})")
    sample(u, 0.0)
    for index in range(n_steps):
        t = index * config.dt
        try:
            u = integrator(u, t, config.dt)
        except BlowUpError as error:
            logger.warning(f"blow-up at t={error.time:g} after {index + 1} steps")
            error.record = record
            raise
        if (index + 1) % config.record_every == 0 or index + 1 == n_steps:
            sample(u, (index + 1) * config.dt)

    logger.info(f"evolution finished: |v(T)| = {record.l2_v[-1]:.3e}, mass drift = "
                f"{abs(record.mass[-1] - record.mass[0]):.3e}")
    return record
