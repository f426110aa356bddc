"""Top-level rate assembly, dispatch, and SI units.

All internal machinery works with the dimensionless ratio Gamma/Gamma_0;
this module converts to absolute rates when a dipole moment is supplied,

    Gamma_0 = k_A^3 d_A^2 / (3 pi hbar eps_0),

and dispatches a single request record to the linear-Born, exact
real-cavity, weak-absorption, or uncorrected evaluation paths.

Physical constants (CODATA 2022, via scipy.constants, 12 significant
digits):

    hbar  = 1.05457181765e-34  J s
    eps_0 = 8.85418781880e-12  F / m
    c     = 2.99792458000e+8   m / s  (exact)
"""

from __future__ import annotations

import dataclasses
import math

import numpy as np
from scipy import constants as _const

from . import born, cavity, mie
from .errors import ConfigError, DomainError
from .greens import Permittivity, as_permittivity, unit_vector

__all__ = [
    "AtomParams",
    "RateRequest",
    "METHODS",
    "GEOMETRIES",
    "gamma0_si",
    "gamma_uncorrected",
    "compute",
]

METHODS = ("linear_born", "exact", "weak_absorption", "uncorrected")
GEOMETRIES = ("sphere", "bulk")

_ABSORPTION_TOL = 1.0e-6

# dipole directions for the two orientation labels; the displacement
# axis is z throughout the package
_DIPOLES = {
    "radial": np.array([0.0, 0.0, 1.0]),
    "tangential": np.array([1.0, 0.0, 0.0]),
}


@dataclasses.dataclass(frozen=True)
class AtomParams:
    """Two-level emitter parameters.

    Give exactly one of ``k_A`` (vacuum wavenumber, 1/m) or
    ``wavelength`` (vacuum transition wavelength, m).  ``d_A`` is the
    transition dipole matrix element (C m), needed only for SI rates.
    """

    k_A: float | None = None
    wavelength: float | None = None
    d_A: float | None = None

    def __post_init__(self):
        if (self.k_A is None) == (self.wavelength is None):
            raise DomainError("give exactly one of k_A and wavelength")
        if self.k_A is not None and not (self.k_A > 0):
            raise DomainError("k_A must be positive")
        if self.wavelength is not None and not (self.wavelength > 0):
            raise DomainError("wavelength must be positive")
        if self.d_A is not None and not (self.d_A > 0):
            raise DomainError("d_A must be positive when given")

    @property
    def wavenumber(self) -> float:
        if self.k_A is not None:
            return float(self.k_A)
        return 2.0 * math.pi / float(self.wavelength)


def gamma0_si(params: AtomParams) -> float:
    """Free-space spontaneous decay rate in 1/s.

        Gamma_0 = k_A^3 d_A^2 / (3 pi hbar eps_0)
    """
    if params.d_A is None:
        raise DomainError("gamma0_si needs the dipole moment d_A")
    k = params.wavenumber
    return k**3 * params.d_A**2 / (3.0 * math.pi * _const.hbar
                                   * _const.epsilon_0)


def gamma_uncorrected(eps_real, gB1, dipole) -> float:
    """Uncorrected (no local-field factor) rate for a transparent host.

        Gamma/Gamma_0 = sqrt(eps) + 6 pi Im[d.gB1.d]

    with gB1 the body scattering tensor in units of k_A.  Valid only for
    negligible absorption (Im eps <= 1e-6): with absorption the bulk
    contribution diverges with the local environment and the plain
    sqrt(eps) limit does not exist.
    """
    eps = as_permittivity(eps_real)
    if eps.epsilon.imag > _ABSORPTION_TOL:
        raise DomainError("gamma_uncorrected assumes a transparent host "
                          f"(Im eps <= {_ABSORPTION_TOL:g})")
    e = eps.epsilon.real
    if e <= 0:
        raise DomainError("need Re eps > 0")
    g = np.asarray(gB1, dtype=complex)
    d = unit_vector(dipole)
    return math.sqrt(e) + 6.0 * math.pi * float(np.imag(d @ g @ d))


@dataclasses.dataclass(frozen=True)
class RateRequest:
    """One rate evaluation: medium, geometry, method, orientation.

    geometry "sphere" requires q_R (and optionally q_L, the emitter
    displacement); "bulk" must leave q_R unset.  The weak_absorption
    method is available for bulk and centered-sphere geometries only
    (its absorption split is formulated for the isotropic case).
    Inconsistent combinations raise ConfigError at construction time.
    """

    eps: complex
    method: str
    geometry: str = "sphere"
    q_R: float | None = None
    q_L: float = 0.0
    q_C: float = 0.01
    orientation: str = "radial"
    nu: float = 0.0
    tol: float = 1.0e-10
    mie_settings: mie.MieSeriesSettings | None = None

    def __post_init__(self):
        if self.method not in METHODS:
            raise ConfigError(f"method must be one of {METHODS}, "
                              f"got {self.method!r}")
        if self.geometry not in GEOMETRIES:
            raise ConfigError(f"geometry must be one of {GEOMETRIES}, "
                              f"got {self.geometry!r}")
        if self.orientation not in born.ORIENTATIONS:
            raise ConfigError(f"orientation must be one of "
                              f"{born.ORIENTATIONS}, "
                              f"got {self.orientation!r}")
        if self.geometry == "sphere":
            if self.q_R is None:
                raise ConfigError("sphere geometry requires q_R")
        else:
            if self.q_R is not None:
                raise ConfigError("bulk geometry takes no q_R")
            if self.q_L != 0.0:
                raise ConfigError("bulk geometry takes no q_L")
        if self.method == "weak_absorption" and self.q_L != 0.0:
            raise ConfigError("weak_absorption is formulated for the "
                              "sphere center (q_L = 0) or bulk")
        # validate the permittivity and geometry numbers eagerly
        as_permittivity(self.eps)
        if self.geometry == "sphere":
            self.sphere_config()

    def sphere_config(self) -> born.SphereConfig:
        return born.SphereConfig(q_R=float(self.q_R), q_L=self.q_L,
                                 q_C=self.q_C, nu=self.nu)

    @property
    def permittivity(self) -> Permittivity:
        return as_permittivity(self.eps)


def _validity(req: RateRequest, chi: complex) -> born.ValidityReport:
    if req.geometry == "sphere":
        return born.validity_check(req.sphere_config(), chi)
    return born.validity_check(None, chi, q_C=req.q_C)


def compute(request: RateRequest) -> born.RateBreakdown:
    """Evaluate one rate request; returns the Gamma/Gamma_0 breakdown
    with the linearity/absorption validity report attached."""
    eps = request.permittivity
    chi = eps.chi
    validity = _validity(request, chi)
    method = request.method

    if method == "linear_born":
        gamma_c = born.gamma_c_linear(chi, request.q_C)
        if request.geometry == "bulk":
            gamma_b = 0.0
        else:
            gamma_b = born.gamma_b_sphere_linear(
                request.sphere_config(), chi, request.orientation,
                request.tol)
        return born.RateBreakdown.from_parts(gamma_c, gamma_b, validity)

    if method == "exact":
        gamma_c = cavity.gamma_c_exact(eps, request.q_C)
        if request.geometry == "bulk":
            gamma_b = 0.0
        else:
            gamma_b = mie.gamma_b_exact(eps, float(request.q_R),
                                        request.q_L, request.orientation,
                                        request.mie_settings)
        return born.RateBreakdown.from_parts(gamma_c, gamma_b, validity)

    if method == "uncorrected":
        if eps.epsilon.imag > _ABSORPTION_TOL:
            raise DomainError("uncorrected method assumes a transparent "
                              "host; use exact or weak_absorption")
        e_re = eps.epsilon.real
        gamma_c = math.sqrt(e_re) - 1.0
        if request.geometry == "bulk":
            gamma_b = 0.0
        else:
            # body term to linear order in the (real) susceptibility
            gamma_b = born.gamma_b_sphere_linear(
                request.sphere_config(), e_re - 1.0, request.orientation,
                request.tol)
        return born.RateBreakdown.from_parts(gamma_c, gamma_b, validity)

    # weak_absorption
    e_re = eps.epsilon.real
    dipole = _DIPOLES[request.orientation]
    if request.geometry == "bulk":
        gB1 = np.zeros((3, 3), dtype=complex)
    else:
        gB1 = mie.body_green_center(e_re, float(request.q_R))
    gb_unc = gamma_uncorrected(e_re, gB1, dipole)
    gamma, _cond = cavity.gamma_weak_absorption(eps, request.q_C, gb_unc,
                                                gB1, dipole)
    f2 = (3.0 * e_re / (2.0 * e_re + 1.0)) ** 2
    gamma_b = f2 * (gb_unc - math.sqrt(e_re))
    gamma_c = gamma - 1.0 - gamma_b
    return born.RateBreakdown.from_parts(gamma_c, gamma_b, validity)
