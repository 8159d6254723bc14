"""Simulated homodyne detection and the three-quadrature witness estimator.

The rotated quadrature is x_theta = x cos(theta) + p sin(theta); its
wavefunction is obtained by multiplying Fock amplitudes with e^(-i n theta)
and expanding in Hermite functions with vacuum variance 1/2.  Sampling all
six cosine moments of O_GKP(u) needs only the angles 0, pi/2 and -pi/4.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError, MassDeficitError
from .operators import check_unit

SQRT_PI = math.sqrt(math.pi)
SQRT_2PI = math.sqrt(2 * math.pi)

MEASUREMENT_ANGLES = (0.0, math.pi / 2, -math.pi / 4)


@dataclass
class QuadratureSamples:
    angle: float
    values: np.ndarray
    seed: int


@dataclass
class WitnessEstimate:
    value: float
    std_error: float
    per_term: tuple  # six (moment, std_error) pairs


def hermite_basis(nmax, grid):
    """Hermite functions phi_0..phi_(nmax-1) on the grid, rows indexed by n."""
    grid = np.asarray(grid, dtype=float)
    basis = np.empty((nmax, grid.size))
    basis[0] = np.pi ** (-0.25) * np.exp(-0.5 * grid**2)
    if nmax > 1:
        basis[1] = math.sqrt(2.0) * grid * basis[0]
    for n in range(1, nmax - 1):
        basis[n + 1] = (
            math.sqrt(2.0 / (n + 1)) * grid * basis[n]
            - math.sqrt(n / (n + 1)) * basis[n - 1]
        )
    return basis


def default_grid(state, points=4096):
    """Grid spanning the classically allowed region of the state plus tails."""
    state = np.asarray(state)
    occupied = np.nonzero(np.abs(state) > 1e-8)[0]
    n_max = int(occupied[-1]) if occupied.size else 0
    half_width = math.sqrt(2 * n_max) + 5 if n_max else 5.0
    return np.linspace(-half_width, half_width, points)


def rotated_wavefunction(state, angle, grid):
    """Wavefunction of the state in the x_angle quadrature representation."""
    state = np.asarray(state, dtype=complex)
    grid = np.asarray(grid, dtype=float)
    if grid.size < 2 or np.any(np.diff(grid) <= 0):
        raise InvalidArgumentError("grid must be strictly increasing")
    rotated = state * np.exp(-1j * angle * np.arange(state.size))
    psi = rotated @ hermite_basis(state.size, grid)
    mass = np.trapezoid(np.abs(psi) ** 2, grid)
    if mass < 1 - 1e-6:
        raise MassDeficitError(
            f"grid captures only {mass:.8f} of the probability mass",
            captured_mass=float(mass),
        )
    return psi


def sample_quadrature(state, angle, count, seed, grid=None):
    """Draw homodyne outcomes at the given angle by inverse-CDF sampling."""
    if count < 1:
        raise InvalidArgumentError(f"count must be >= 1, got {count}")
    if grid is None:
        grid = default_grid(state)
    psi = rotated_wavefunction(state, angle, grid)
    pdf = np.abs(psi) ** 2
    dx = np.diff(grid)
    # cumulative trapezoid, normalized
    cdf = np.concatenate(([0.0], np.cumsum(0.5 * dx * (pdf[1:] + pdf[:-1]))))
    cdf /= cdf[-1]
    rng = np.random.default_rng(seed)
    uniforms = rng.random(count)
    values = np.interp(uniforms, cdf, grid)
    return QuadratureSamples(angle=angle, values=values, seed=seed)


def _cosine_moment(samples, freq):
    vals = np.cos(freq * samples)
    n = vals.size
    return float(vals.mean()), float(vals.std(ddof=1) / math.sqrt(n))


def estimate_witness(state_or_samples, u, count_per_quadrature=100_000, seed=0):
    """Estimate <O_GKP(u)> from three sets of homodyne samples.

    Accepts either a Fock state (sampled internally with seeds seed, seed+1,
    seed+2 at angles 0, pi/2, -pi/4) or a sequence of three QuadratureSamples
    at those angles.  The standard error combines per-sample-set variances of
    the assembled integrand; the three sets are independent.
    """
    u = check_unit(u)
    if isinstance(state_or_samples, (list, tuple)) and isinstance(
        state_or_samples[0], QuadratureSamples
    ):
        by_angle = {round(s.angle, 12): s for s in state_or_samples}
        try:
            samples = [by_angle[round(a, 12)] for a in MEASUREMENT_ANGLES]
        except KeyError as exc:
            raise InvalidArgumentError(
                f"samples must cover angles {MEASUREMENT_ANGLES}"
            ) from exc
    else:
        state = np.asarray(state_or_samples, dtype=complex)
        samples = [
            sample_quadrature(state, angle, count_per_quadrature, seed + i)
            for i, angle in enumerate(MEASUREMENT_ANGLES)
        ]

    # (samples, single-frequency, Bloch coefficient); x - p = sqrt(2) x_(-pi/4)
    setup = [
        (samples[0].values, SQRT_PI, u[2]),  # cos(sqrt(pi) x) terms
        (samples[1].values, SQRT_PI, u[0]),  # cos(sqrt(pi) p) terms
        (samples[2].values, SQRT_2PI, u[1]),  # cos(sqrt(pi)(x-p)) terms
    ]
    per_term = []
    total = 0.0
    variance = 0.0
    for vals, freq, coeff in setup:
        single = np.cos(freq * vals)
        double = np.cos(2 * freq * vals)
        n = vals.size
        per_term.append((float(single.mean()), float(single.std(ddof=1) / math.sqrt(n))))
        per_term.append((float(double.mean()), float(double.std(ddof=1) / math.sqrt(n))))
        combined = double / 3.0 + coeff * single
        total += float(combined.mean())
        variance += float(combined.var(ddof=1) / n)
    return WitnessEstimate(
        value=2.0 - total,
        std_error=math.sqrt(variance),
        per_term=tuple(per_term),
    )
