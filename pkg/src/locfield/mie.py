"""Exact scattering series for a dielectric sphere host.

The scattering Green tensor of a homogeneous sphere (permittivity eps,
optical radius q_R = k_A R) at an interior point decomposes over vector
spherical waves; contracting with a dipole at displacement q_L = k_A l_A
from the center leaves one series per orientation:

    gamma_b(radial) = (3/2) Im{ K sum_m (2m+1) m (m+1) C_m^N
                                 [ j_m(x)/x ]^2 },
    gamma_b(tang.)  = (3/4) Im{ K sum_m (2m+1)
                                 [ C_m^M j_m(x)^2 + C_m^N (psi_m'(x)/x)^2 ] },

with x = n q_L, K = 9 i eps^{5/2}/(2 eps+1)^2 (the local-field corrected
prefactor), psi_m the Riccati-Bessel function, and C_m^N, C_m^M the
interior scattering coefficients

    C_m^N = -[eps h_m(z1) xi_m'(z0) - xi_m'(z1) h_m(z0)]
             / [eps j_m(z1) xi_m'(z0) - psi_m'(z1) h_m(z0)],

(C_m^M without the eps factors), z0 = q_R, z1 = n q_R.  At the center
only m = 1 survives and both orientations give Im[K C_1^N]; this limit is
implemented analytically rather than by small-q_L evaluation, so there is
no 0/0.

The fully assembled exact center rate adds the cavity terms of
:mod:`locfield.cavity` and is the quantity plotted against sphere radius
in the sweep presets.

Series terms decay super-exponentially once m exceeds ~ q_R |n|, so the
default truncation ceil(q_R |n|) + 30 is generous; truncation additionally
requires several consecutive terms below a relative tolerance.
"""

from __future__ import annotations

import dataclasses
import math

import numpy as np

from .errors import AccuracyError, DomainError, SingularityError
from .greens import as_permittivity
from .specfun import riccati_derivative, spherical_bessel_j, spherical_hankel_h1

__all__ = [
    "MieSeriesSettings",
    "sphere_coefficients",
    "body_green_center",
    "gamma_b_exact",
    "gamma_center_exact",
]


@dataclasses.dataclass(frozen=True)
class MieSeriesSettings:
    """Truncation policy for the sphere series.

    m_max = None uses ceil(q_R |n|) + 30.  The series stops only after
    `consecutive_small` successive terms fall below term_tolerance times
    the running sum magnitude; hitting m_max first raises AccuracyError.
    """

    m_max: int | None = None
    term_tolerance: float = 1.0e-14
    consecutive_small: int = 3

    def __post_init__(self):
        if self.m_max is not None and int(self.m_max) < 1:
            raise DomainError("m_max must be >= 1")
        if not (self.term_tolerance > 0):
            raise DomainError("term_tolerance must be positive")
        if int(self.consecutive_small) < 1:
            raise DomainError("consecutive_small must be >= 1")

    def resolve_m_max(self, q_R: float, n_abs: float) -> int:
        if self.m_max is not None:
            return int(self.m_max)
        return int(math.ceil(q_R * n_abs)) + 30


_DEFAULT_SETTINGS = MieSeriesSettings()


def _prefactor(eps: complex) -> complex:
    # K = 9 i eps^{5/2} / (2 eps + 1)^2, principal branch of the root
    return 9j * eps * eps * complex(np.sqrt(eps)) / (2.0 * eps + 1.0) ** 2


def sphere_coefficients(eps, q_R: float, m: int):
    """Interior scattering coefficients (C_m^N, C_m^M) of the sphere."""
    eps = as_permittivity(eps)
    q_R = float(q_R)
    if not (math.isfinite(q_R) and q_R > 0):
        raise DomainError("q_R must be positive and finite")
    m = int(m)
    if m < 1:
        raise DomainError("m must be >= 1")
    e = eps.epsilon
    z0 = complex(q_R)
    z1 = eps.n * q_R
    h0 = spherical_hankel_h1(m, z0)
    h1 = spherical_hankel_h1(m, z1)
    j1 = spherical_bessel_j(m, z1)
    xi0p = riccati_derivative("hankel_h1", m, z0)
    xi1p = riccati_derivative("hankel_h1", m, z1)
    ps1p = riccati_derivative("bessel_j", m, z1)
    den_N = e * j1 * xi0p - ps1p * h0
    den_M = j1 * xi0p - ps1p * h0
    if min(abs(den_N), abs(den_M)) < 1.0e-300:
        raise SingularityError(f"sphere coefficient denominator vanished "
                               f"at m = {m} (resonance pole)")
    C_N = -(e * h1 * xi0p - xi1p * h0) / den_N
    C_M = -(h1 * xi0p - xi1p * h0) / den_M
    return C_N, C_M


def body_green_center(eps, q_R: float) -> np.ndarray:
    """Scattering Green tensor of the sphere at its center, units of k_A.

        G_B^(1)(0) = i sqrt(eps) C_1^N / (6 pi) * I

    This is the gB1 input that makes :func:`locfield.cavity.gamma_b_corrected`
    reproduce the assembled exact center rate.
    """
    eps = as_permittivity(eps)
    C_N, _ = sphere_coefficients(eps, q_R, 1)
    return (1j * eps.n * C_N / (6.0 * np.pi)) * np.eye(3, dtype=complex)


def _series(eps, q_R: float, q_L: float, orient: str,
            settings: MieSeriesSettings) -> complex:
    """Orientation-resolved series sum (without the K prefactor and the
    outer 3/2 or 3/4 normalization)."""
    n = eps.n
    x = n * q_L
    m_cap = settings.resolve_m_max(q_R, abs(n))
    total = 0.0j
    small_run = 0
    for m in range(1, m_cap + 1):
        C_N, C_M = sphere_coefficients(eps, q_R, m)
        if orient == "radial":
            jm = spherical_bessel_j(m, x)
            term = (2 * m + 1) * m * (m + 1) * C_N * (jm / x) ** 2
        else:
            jm = spherical_bessel_j(m, x)
            pj = riccati_derivative("bessel_j", m, x)
            term = (2 * m + 1) * (C_M * jm * jm + C_N * (pj / x) ** 2)
        total += term
        if abs(term) < settings.term_tolerance * max(abs(total), 1.0e-300):
            small_run += 1
            if small_run >= settings.consecutive_small:
                return total
        else:
            small_run = 0
    raise AccuracyError(f"sphere series not converged within m_max = "
                        f"{m_cap} (q_R = {q_R:g}, q_L = {q_L:g})")


def gamma_b_exact(eps, q_R: float, q_L: float, orient: str = "radial",
                  settings: MieSeriesSettings | None = None) -> float:
    """Exact local-field corrected body rate gamma_b for the sphere.

    Parameters
    ----------
    eps : Permittivity or complex
    q_R, q_L : optical radius and emitter displacement, 0 <= q_L < q_R.
    orient : {"radial", "tangential"}
        Dipole along the displacement axis or perpendicular to it.
    settings : MieSeriesSettings, optional

    Notes
    -----
    q_L = 0 takes the analytic m = 1 limit Im[K C_1^N], identical for
    both orientations.
    """
    eps = as_permittivity(eps)
    q_R = float(q_R)
    q_L = float(q_L)
    if not (math.isfinite(q_R) and q_R > 0):
        raise DomainError("q_R must be positive and finite")
    if not (0.0 <= q_L < q_R):
        raise DomainError("need 0 <= q_L < q_R (emitter inside sphere)")
    if orient not in ("radial", "tangential"):
        raise DomainError(f"orient must be 'radial' or 'tangential', "
                          f"got {orient!r}")
    if settings is None:
        settings = _DEFAULT_SETTINGS
    K = _prefactor(eps.epsilon)
    if q_L == 0.0:
        C_N, _ = sphere_coefficients(eps, q_R, 1)
        return float(np.imag(K * C_N))
    series = _series(eps, q_R, q_L, orient, settings)
    if orient == "radial":
        return 1.5 * float(np.imag(K * series))
    return 0.75 * float(np.imag(K * series))


def gamma_center_exact(eps, q_R: float, q_C: float) -> float:
    """Fully assembled exact rate Gamma/Gamma_0 at the sphere center.

        Im{ 3(eps-1)/(2 eps+1)/q_C^3
            + 9(eps-1)(4 eps+1)/[5(2 eps+1)^2]/q_C
            + 9 i eps^{5/2}/(2 eps+1)^2 (1 + C_1^N) }

    The free-space unity is contained in the structure (the whole
    expression tends to 1 as eps -> 1).  Identical, to roundoff, to
    1 + cavity.gamma_c_exact + cavity.gamma_b_corrected with the
    center-sphere tensor of :func:`body_green_center`.
    """
    eps = as_permittivity(eps)
    q_R = float(q_R)
    q_C = float(q_C)
    if not (math.isfinite(q_C) and q_C > 0):
        raise DomainError("q_C must be positive and finite")
    if not (math.isfinite(q_R) and q_R > q_C):
        raise DomainError("need q_R > q_C (cavity inside the sphere)")
    e = eps.epsilon
    C_N, _ = sphere_coefficients(eps, q_R, 1)
    val = (3.0 * (e - 1.0) / (2.0 * e + 1.0) / q_C**3
           + 9.0 * (e - 1.0) * (4.0 * e + 1.0)
           / (5.0 * (2.0 * e + 1.0) ** 2) / q_C
           + _prefactor(e) * (1.0 + C_N))
    return float(np.imag(val))
