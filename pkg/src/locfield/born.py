"""Linear (first Born) decay rates for an emitter in a dielectric body.

To first order in the susceptibility chi = eps - 1, the decay rate of a
dipole sitting in a small empty cavity (optical radius q_C) carved into a
body splits into a cavity piece and a body piece,

    Gamma/Gamma_0 = 1 + gamma_c + gamma_b,

with the cavity piece carrying the local-field divergences,

    gamma_c = Im(chi) (1/q_C^3 + 1/q_C) + (7/6) Re(chi),

and the body piece reducing, for a star-shaped body, to a single angular
integral of the radial antiderivative implemented in
:mod:`locfield.greens`.  For a sphere with the emitter displaced q_L from
the center both dipole orientations collapse the angular integral to one
dimension in x = cos(theta), evaluated here with adaptive Gauss-Kronrod
quadrature.  The centered sphere has a closed form (no quadrature), kept
as an independent cross-check of the 1D path.

Everything in this module is strictly first order in chi; the accompanying
validity report quantifies when that is trustworthy (optically small
body, weak absorption relative to the cavity volume).
"""

from __future__ import annotations

import dataclasses
import math
import warnings

import numpy as np
from scipy.integrate import quad

from .errors import AccuracyError, DomainError
from .greens import StarBoundary, _brace_coeffs, body_green_linear, unit_vector

__all__ = [
    "ORIENTATIONS",
    "SphereConfig",
    "RateBreakdown",
    "ValidityReport",
    "gamma_c_linear",
    "gamma_b_center_closed",
    "gamma_b_sphere_linear",
    "gamma_total_linear",
    "validity_check",
]

ORIENTATIONS = ("radial", "tangential")

# Hard cap and soft warning threshold for the cavity radius; the
# closed-form cavity terms drop O(q_C) corrections.
_QC_MAX = 0.2
_QC_WARN = 0.1

_Z_HAT = np.array([0.0, 0.0, 1.0])


def _check_chi(chi) -> complex:
    chi = complex(chi)
    if not (math.isfinite(chi.real) and math.isfinite(chi.imag)):
        raise DomainError("chi must be finite")
    if chi.imag < 0:
        raise DomainError("passive medium required: Im chi >= 0")
    return chi


def _check_qc(q_C: float) -> float:
    q_C = float(q_C)
    if not (math.isfinite(q_C) and q_C > 0):
        raise DomainError("q_C must be positive and finite")
    if q_C > _QC_MAX:
        raise DomainError(f"q_C = {q_C:g} too large; the small-cavity "
                          f"expansion needs q_C <= {_QC_MAX}")
    if q_C > _QC_WARN:
        warnings.warn(f"q_C = {q_C:g} > {_QC_WARN}: dropped O(q_C) cavity "
                      "terms may be significant", stacklevel=3)
    return q_C


def _check_orientation(orientation: str) -> str:
    if orientation not in ORIENTATIONS:
        raise DomainError(f"orientation must be one of {ORIENTATIONS}, "
                          f"got {orientation!r}")
    return orientation


@dataclasses.dataclass(frozen=True)
class SphereConfig:
    """Sphere geometry in optical units: radius q_R = k_A R, emitter
    displacement q_L = k_A l_A from the center, cavity radius q_C = k_A R_C.

    ``nu`` is a validity margin: the emitter cavity must keep a clearance
    of (1 + nu) q_C from the surface.  Configurations with the emitter at
    (or too near) the surface are rejected outright, the model breaks
    down there.
    """

    q_R: float
    q_L: float = 0.0
    q_C: float = 0.01
    nu: float = 0.0

    def __post_init__(self):
        for name in ("q_R", "q_L", "q_C", "nu"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise DomainError(f"{name} must be finite")
            object.__setattr__(self, name, v)
        if self.q_R <= 0:
            raise DomainError("q_R must be positive")
        if self.q_L < 0:
            raise DomainError("q_L must be non-negative")
        if self.nu < 0:
            raise DomainError("nu must be non-negative")
        _check_qc(self.q_C)
        if self.q_L + (1.0 + self.nu) * self.q_C > self.q_R:
            raise DomainError(
                f"emitter too close to the surface: q_L + (1+nu) q_C = "
                f"{self.q_L + (1 + self.nu) * self.q_C:g} exceeds q_R = "
                f"{self.q_R:g}")

    def boundary(self) -> StarBoundary:
        return StarBoundary.sphere(self.q_R, self.q_L)


@dataclasses.dataclass(frozen=True)
class ValidityReport:
    """Computed values and pass flags of the two linearity conditions.

    chi_size: |chi| * q_max, the Born expansion parameter over the body
        (threshold 0.3).
    absorption: Im(chi)/q_C^3, absorption accumulated over the cavity
        volume (threshold 0.1); beyond it the rate is dominated by
        nonradiative transfer into the immediate neighbourhood.
    """

    chi_size_value: float
    chi_size_ok: bool
    absorption_value: float
    absorption_ok: bool

    @property
    def all_ok(self) -> bool:
        return self.chi_size_ok and self.absorption_ok


@dataclasses.dataclass(frozen=True)
class RateBreakdown:
    """Decay rate split Gamma/Gamma_0 = 1 + gamma_c + gamma_b."""

    gamma_c_ratio: float
    gamma_b_ratio: float
    total_ratio: float
    validity: ValidityReport | None = None

    def __post_init__(self):
        if self.total_ratio != 1.0 + self.gamma_c_ratio + self.gamma_b_ratio:
            raise DomainError("total_ratio must equal "
                              "1 + gamma_c_ratio + gamma_b_ratio exactly; "
                              "use RateBreakdown.from_parts")

    @classmethod
    def from_parts(cls, gamma_c: float, gamma_b: float,
                   validity: ValidityReport | None = None) -> "RateBreakdown":
        gamma_c = float(gamma_c)
        gamma_b = float(gamma_b)
        return cls(gamma_c_ratio=gamma_c, gamma_b_ratio=gamma_b,
                   total_ratio=1.0 + gamma_c + gamma_b, validity=validity)


def gamma_c_linear(chi, q_C: float) -> float:
    """Linear cavity contribution gamma_c to Gamma/Gamma_0.

        gamma_c = Im(chi) (1/q_C^3 + 1/q_C) + (7/6) Re(chi)

    The 1/q_C^3 term is nonradiative energy transfer to the absorbing
    material bordering the cavity; the 7/6 constant is what turns the
    vacuum rate into the linear bulk rate 1 + 7 chi/6.
    """
    chi = _check_chi(chi)
    q_C = _check_qc(q_C)
    return chi.imag * (1.0 / q_C**3 + 1.0 / q_C) + (7.0 / 6.0) * chi.real


def _fz(q, z):
    """Scalar radial antiderivative contracted with a dipole direction.

    z is the squared projection (s.d)^2 averaged over azimuth; the
    radial/tangential orientations enter only through z(x).
    """
    cI, cS, ei = _brace_coeffs(q)
    return (cI + cS * z) * np.exp(2j * np.asarray(q, dtype=float)) \
        + 4j * ei * (1.0 / 3.0 - z)


def gamma_b_center_closed(q_R: float, chi) -> float:
    """Closed-form linear body rate for an emitter at the sphere center.

        gamma_b = -Im{ chi (1/q^3 - 2i/q^2 - 1/q + i/2) e^{2iq} },  q = q_R.

    For real chi and large q_R this oscillates as -(chi/2) cos(2 q_R)
    with remainder bounded by 2 chi/q_R.
    """
    q = float(q_R)
    if not (math.isfinite(q) and q > 0):
        raise DomainError("q_R must be positive and finite")
    chi = _check_chi(chi)
    val = chi * (1.0 / q**3 - 2j / q**2 - 1.0 / q + 0.5j) * np.exp(2j * q)
    return -float(np.imag(val))


def gamma_b_sphere_linear(config: SphereConfig, chi,
                          orientation: str = "radial",
                          tol: float = 1.0e-10) -> float:
    """Linear body contribution for an emitter inside a sphere.

    The angular integral over the boundary reduces to one dimension in
    x = cos(theta) (theta measured from the displacement axis):

        gamma_b = -(3/4) Im[ chi * Int_{-1}^{1} f(q_o(x), z(x)) dx ]

    with q_o(x) the emitter-to-surface distance, z = x^2 for a radially
    oriented dipole and z = (1 - x^2)/2 for a tangential one.

    Parameters
    ----------
    config : SphereConfig
    chi : complex, Im chi >= 0
    orientation : {"radial", "tangential"}
        Dipole along the displacement axis or perpendicular to it
        (degenerate at q_L = 0).
    tol : float
        Absolute tolerance on the returned rate.
    """
    chi = _check_chi(chi)
    orientation = _check_orientation(orientation)
    if not (tol > 0):
        raise DomainError("tol must be positive")
    q_R, q_L = config.q_R, config.q_L

    def q_o(x):
        return np.sqrt(q_R**2 - q_L**2 * (1.0 - x * x)) - q_L * x

    if orientation == "radial":
        def integrand(x):
            return _fz(q_o(x), x * x)
    else:
        def integrand(x):
            return _fz(q_o(x), 0.5 * (1.0 - x * x))

    if chi == 0:
        return 0.0
    # tolerance on the integral such that the rate error stays below tol
    quad_tol = tol / (0.75 * abs(chi))
    val, err = quad(integrand, -1.0, 1.0, complex_func=True,
                    epsabs=quad_tol, epsrel=1.0e-12, limit=400)
    if 0.75 * abs(chi) * (abs(err.real) + abs(err.imag)) > 10.0 * tol:
        raise AccuracyError(f"1D boundary quadrature error estimate "
                            f"{abs(err):.3e} exceeds tolerance {tol:g}")
    return -0.75 * float(np.imag(chi * val))


def gamma_total_linear(geometry, chi, orientation: str = "radial",
                       q_C: float | None = None, dipole=None,
                       tol: float = 1.0e-10) -> RateBreakdown:
    """Assembled linear rate Gamma/Gamma_0 = 1 + gamma_c + gamma_b.

    Parameters
    ----------
    geometry : SphereConfig or StarBoundary
        SphereConfig uses the specialized 1D path; a StarBoundary goes
        through the general angular quadrature of
        :func:`locfield.greens.body_green_linear` contracted with
        ``dipole`` (a bulk boundary contributes gamma_b = 0).
    chi : complex
    orientation : used for SphereConfig geometries.
    q_C : cavity radius; required for StarBoundary geometries (a
        SphereConfig already carries it).
    dipole : unit 3-vector for StarBoundary geometries (default z-hat).
    """
    chi = _check_chi(chi)
    if isinstance(geometry, SphereConfig):
        if q_C is not None and q_C != geometry.q_C:
            raise DomainError("q_C given both in SphereConfig and as an "
                              "argument; drop one")
        gamma_c = gamma_c_linear(chi, geometry.q_C)
        gamma_b = gamma_b_sphere_linear(geometry, chi, orientation, tol)
    elif isinstance(geometry, StarBoundary):
        if q_C is None:
            raise DomainError("q_C is required with a StarBoundary geometry")
        gamma_c = gamma_c_linear(chi, q_C)
        if geometry.is_bulk:
            gamma_b = 0.0
        else:
            d = _Z_HAT if dipole is None else unit_vector(dipole)
            g_b = body_green_linear(geometry, chi, angular_tolerance=tol)
            gamma_b = 6.0 * np.pi * float(np.imag(d @ g_b @ d))
    else:
        raise DomainError(f"unsupported geometry type "
                          f"{type(geometry).__name__}")
    return RateBreakdown.from_parts(gamma_c, gamma_b)


def validity_check(config: SphereConfig | None, chi,
                   boundary_max: float | None = None,
                   q_C: float | None = None) -> ValidityReport:
    """Quantify the two conditions behind the linear-rate formulas.

    (i)  |chi| * q_max <= 0.3, with q_max the largest emitter-to-boundary
         optical distance (q_L + q_R for a sphere; |chi| itself for bulk,
         where dephasing limits the effective interaction range to ~1).
    (ii) Im(chi)/q_C^3 <= 0.1, absorption within the cavity-scale volume.

    Both computed values are always returned so callers can apply their
    own thresholds.
    """
    chi = _check_chi(chi)
    if config is not None:
        if boundary_max is None:
            boundary_max = config.q_L + config.q_R
        if q_C is None:
            q_C = config.q_C
    else:
        if boundary_max is None:
            boundary_max = 1.0
        if q_C is None:
            raise DomainError("q_C required when no SphereConfig is given")
    chi_size = abs(chi) * float(boundary_max)
    absorption = chi.imag / float(q_C)**3
    return ValidityReport(chi_size_value=chi_size,
                          chi_size_ok=bool(chi_size <= 0.3),
                          absorption_value=absorption,
                          absorption_ok=bool(absorption <= 0.1))
