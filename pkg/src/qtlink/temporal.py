"""Pulse temporal modes and the first-order response to a timing offset.

A transform-limited Gaussian pulse of carrier ``omega0`` and rms spectral
spread ``delta_omega`` is described by the fundamental envelope mode y0.
Delaying the pulse by a small du populates, to first order, the orthogonal
companion y1 together with a phase rotation of y0; the specific unit-norm
superposition excited by the delay is

    z1(u) = (y1(u) + i*Omega*y0(u)) / sqrt(Omega^2 + 1),   Omega = omega0/delta_omega,

with weight du/u0 where u0 = 1/sqrt(omega0^2 + delta_omega^2).  Everything
here is expressed in the light-cone coordinate u = t - z/c (seconds).

Paper-scale carriers (Omega ~ 1e8) cannot be resolved on any practical
sample grid, so grid-based checks are meant to run in natural units
(omega0, delta_omega of order 1..10); the closed-form helpers accept any
scale.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

__all__ = [
    "SpectralProfile",
    "TimingModeParams",
    "ModeFunction",
    "timing_params",
    "mode_functions",
    "shift_coefficients",
    "shift_expansion_check",
    "inner_product",
]

_trapezoid = getattr(np, "trapezoid", None) or np.trapz

# Grid adequacy limits for quadrature-based checks: envelope decays as
# exp(-(delta_omega*u)^2), so +-5/delta_omega already reaches ~1e-11.
_MIN_SPAN = 5.0
_MIN_POINTS_PER_WIDTH = 16.0


@dataclass(frozen=True)
class SpectralProfile:
    """Carrier, spectral spread and sampling grid of a pulsed mode.

    ``grid_span`` is measured in units of 1/delta_omega, i.e. samples cover
    u in [-grid_span/delta_omega, +grid_span/delta_omega].
    """

    omega0: float
    delta_omega: float
    shape: str = "gaussian"
    grid_points: int = 4096
    grid_span: float = 8.0

    def __post_init__(self):
        if self.omega0 <= 0:
            raise ValueError(f"omega0 must be > 0, got {self.omega0}")
        if self.delta_omega <= 0:
            raise ValueError(f"delta_omega must be > 0, got {self.delta_omega}")
        if self.shape != "gaussian":
            raise ValueError(f"unsupported pulse shape {self.shape!r}")
        if self.grid_points < 16:
            raise ValueError("grid_points must be >= 16")
        if self.grid_span <= 0:
            raise ValueError("grid_span must be > 0")

    def u_grid(self) -> np.ndarray:
        half = self.grid_span / self.delta_omega
        return np.linspace(-half, half, self.grid_points)


@dataclass(frozen=True)
class TimingModeParams:
    """Derived scales of the offset expansion: u0 (s) and Omega = omega0/delta_omega."""

    u0: float
    big_omega: float

    def __post_init__(self):
        if self.u0 <= 0 or self.big_omega <= 0:
            raise ValueError("u0 and big_omega must be positive")


@dataclass(frozen=True)
class ModeFunction:
    """Complex mode amplitudes sampled on a uniform u grid."""

    u: np.ndarray
    samples: np.ndarray
    label: int

    def norm(self) -> float:
        return float(np.sqrt(_trapezoid(np.abs(self.samples) ** 2, self.u).real))


def inner_product(a: ModeFunction, b: ModeFunction) -> complex:
    """Trapezoidal <a, b> = integral of conj(a(u)) * b(u) du."""
    if a.u.shape != b.u.shape or not np.array_equal(a.u, b.u):
        raise ValueError("mode functions live on different grids")
    return complex(_trapezoid(np.conj(a.samples) * b.samples, a.u))


def timing_params(profile: SpectralProfile) -> TimingModeParams:
    """Offset-expansion scales for a profile: u0 = 1/sqrt(omega0^2 + delta_omega^2)."""
    return TimingModeParams(
        u0=1.0 / np.hypot(profile.omega0, profile.delta_omega),
        big_omega=profile.omega0 / profile.delta_omega,
    )


def _envelope(profile: SpectralProfile, u: np.ndarray) -> np.ndarray:
    # Unit-norm Gaussian whose intensity spectrum has rms width delta_omega.
    dw = profile.delta_omega
    return (2.0 * dw**2 / np.pi) ** 0.25 * np.exp(-(dw * u) ** 2)


def _sampled_fundamental(profile: SpectralProfile, u: np.ndarray, du: float = 0.0):
    shifted = u - du
    return _envelope(profile, shifted) * np.exp(-1j * profile.omega0 * shifted)


def mode_functions(
    profile: SpectralProfile,
) -> tuple[ModeFunction, ModeFunction, ModeFunction]:
    """Sample the fundamental mode y0, its companion y1, and the offset mode z1.

    y0 is the carrier-modulated Gaussian envelope; y1 is the first
    Hermite-Gauss mode on the same carrier, fixed so that
    -d(y0)/du = i*omega0*y0 + delta_omega*y1.  z1 is the unit-norm
    combination (y1 + i*Omega*y0)/sqrt(Omega^2 + 1).
    """
    u = profile.u_grid()
    carrier = np.exp(-1j * profile.omega0 * u)
    g0 = _envelope(profile, u)
    g1 = 2.0 * profile.delta_omega * u * g0
    y0 = ModeFunction(u, g0 * carrier, 0)
    y1 = ModeFunction(u, g1 * carrier, 1)
    big_omega = profile.omega0 / profile.delta_omega
    z1_samples = (y1.samples + 1j * big_omega * y0.samples) / np.sqrt(
        big_omega**2 + 1.0
    )
    return y0, y1, ModeFunction(u, z1_samples, 1)


def shift_coefficients(
    params: TimingModeParams, n_photons: float, theta: float, delta_u: float
) -> tuple[complex, complex]:
    """First-order mode amplitudes of a pulse delayed by delta_u.

    Returns (c0, c1) with c0 = (1 + i*omega0*du)*sqrt(N)*e^{i theta} on the
    fundamental mode and c1 = (delta_omega*du)*sqrt(N)*e^{i theta} on the
    companion.  Valid for |du| << u0; a warning is raised past du/u0 = 0.1.
    """
    if n_photons < 0:
        raise ValueError(f"photon number must be >= 0, got {n_photons}")
    ratio = abs(delta_u) / params.u0
    if ratio > 0.1:
        warnings.warn(
            f"first-order expansion is dubious at |delta_u|/u0 = {ratio:.3g}",
            stacklevel=2,
        )
    omega0 = params.big_omega / (params.u0 * np.sqrt(params.big_omega**2 + 1.0))
    delta_omega = omega0 / params.big_omega
    amp = np.sqrt(n_photons) * np.exp(1j * theta)
    return (1.0 + 1j * omega0 * delta_u) * amp, (delta_omega * delta_u) * amp


def shift_expansion_check(profile: SpectralProfile, delta_u: float) -> float:
    """Residual of the first-order delay expansion, measured on the grid.

    Shifts y0 by delta_u, projects onto {y0, y1}, and returns the larger
    deviation of the two projections from the first-order coefficients
    (1 + i*omega0*du, delta_omega*du).  The basis is orthonormal, so the
    deviations are relative to the unit pulse norm; the residual shrinks
    quadratically in delta_u.
    """
    points_per_width = profile.grid_points / (2.0 * profile.grid_span)
    if profile.grid_span < _MIN_SPAN or points_per_width < _MIN_POINTS_PER_WIDTH:
        raise ValueError(
            f"grid too coarse for the expansion check: span {profile.grid_span} "
            f"widths at {points_per_width:.1f} points/width "
            f"(need >= {_MIN_SPAN} and >= {_MIN_POINTS_PER_WIDTH})"
        )
    y0, y1, _ = mode_functions(profile)
    shifted = ModeFunction(y0.u, _sampled_fundamental(profile, y0.u, delta_u), 0)
    p0 = inner_product(y0, shifted)
    p1 = inner_product(y1, shifted)
    c0 = 1.0 + 1j * profile.omega0 * delta_u
    c1 = profile.delta_omega * delta_u
    return float(max(abs(p0 - c0), abs(p1 - c1)))
