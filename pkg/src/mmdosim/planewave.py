"""Half-space Fresnel optics at an air/tissue interface.

Reflection coefficients for lossy media, power coefficients, pseudo-Brewster
angle location and penetration depth.  All angles in radians, incidence
measured from the surface normal.
"""

from __future__ import annotations

import cmath
import math
from enum import Enum

from .constants import C_0
from .dielectrics import ComplexPermittivity
from .errors import DomainError, LosslessMediumError, SolverError


class Polarization(str, Enum):
    PARALLEL = "parallel"
    PERPENDICULAR = "perpendicular"


def _root(w: complex) -> complex:
    """Complex square root on the branch with non-negative real part."""
    s = cmath.sqrt(w)
    return -s if s.real < 0 else s


def _check_angle(theta_i: float) -> None:
    if not 0.0 <= theta_i < math.pi / 2:
        raise DomainError(f"incidence angle must lie in [0, pi/2), got {theta_i}")


def reflection_coefficient(
    eps: ComplexPermittivity, theta_i: float, pol: Polarization
) -> complex:
    """Field reflection coefficient at the air side of the interface."""
    _check_angle(theta_i)
    e = eps.as_complex
    s = _root(e - math.sin(theta_i) ** 2)
    c = math.cos(theta_i)
    if Polarization(pol) is Polarization.PARALLEL:
        return (-e * c + s) / (e * c + s)
    return (c - s) / (c + s)


def power_coefficients(
    eps: ComplexPermittivity, theta_i: float, pol: Polarization
) -> tuple[float, float]:
    """(reflectance, transmittance) with the pair summing to one exactly."""
    r = abs(reflection_coefficient(eps, theta_i, pol)) ** 2
    return r, 1.0 - r


# Brewster search controls: coarse grid feeds a golden-section refinement.
_BREWSTER_COARSE_STEP_DEG = 0.5
_BREWSTER_TOL_RAD = math.radians(0.01)
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def brewster_angle(eps: ComplexPermittivity) -> float:
    """Angle minimizing the parallel-polarization reflectance.

    For a lossless medium this is the classical Brewster angle atan(sqrt(eps')).
    For lossy media the minimum reflectance is nonzero and the minimizer is
    the pseudo-Brewster angle.  Located to 0.01 degree by a coarse scan plus
    golden-section refinement.
    """
    if eps.eps_real <= 1.0:
        raise DomainError(f"Brewster search requires eps_real > 1, got {eps.eps_real}")

    def f(theta: float) -> float:
        return abs(reflection_coefficient(eps, theta, Polarization.PARALLEL)) ** 2

    step = math.radians(_BREWSTER_COARSE_STEP_DEG)
    n = int(math.pi / 2 / step)
    grid = [i * step for i in range(n)]
    vals = [f(t) for t in grid]
    i_min = min(range(n), key=vals.__getitem__)
    if i_min == 0 or i_min == n - 1:
        raise SolverError("reflectance minimum not bracketed inside (0, pi/2)")

    a, b = grid[i_min - 1], grid[i_min + 1]
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    while b - a > _BREWSTER_TOL_RAD:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


def wavenumber(eps: ComplexPermittivity, frequency_hz: float) -> complex:
    """Complex wavenumber k = beta - j*alpha [rad/m], decaying branch."""
    if frequency_hz <= 0:
        raise DomainError(f"frequency must be positive, got {frequency_hz}")
    return 2.0 * math.pi * frequency_hz / C_0 * _root(eps.as_complex)


def attenuation_constant(eps: ComplexPermittivity, frequency_hz: float) -> float:
    """Field attenuation constant alpha [1/m]; power decays as exp(-2*alpha*z)."""
    return -wavenumber(eps, frequency_hz).imag


def penetration_depth(eps: ComplexPermittivity, frequency_hz: float) -> float:
    """Depth 1/alpha [m] where transmitted power has fallen to 1/e^2."""
    if eps.eps_imag == 0:
        raise LosslessMediumError("penetration depth is infinite in a lossless medium")
    return 1.0 / attenuation_constant(eps, frequency_hz)


def ninety_percent_absorption_depth(eps: ComplexPermittivity, frequency_hz: float) -> float:
    """Depth ln(10)/(2*alpha) [m] by which 90% of transmitted power is absorbed."""
    if eps.eps_imag == 0:
        raise LosslessMediumError("absorption depth is infinite in a lossless medium")
    return math.log(10.0) / (2.0 * attenuation_constant(eps, frequency_hz))
