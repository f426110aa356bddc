"""Exact real-cavity local-field model.

The emitter sits at the center of a small empty spherical cavity (optical
radius q_C = k_A R_C) carved out of the host medium.  For q_C much smaller
than both the wavelength and the host-body features, the exact rate
assembles as

    Gamma/Gamma_0 = 1 + gamma_c_exact(eps, q_C)
                      + 6 pi Im[(3 eps/(2 eps + 1))^2 d.G_B^(1).d],

where G_B^(1) is the scattering Green tensor (units of k_A) of the host
body *without* the cavity, evaluated at the emitter position, and the
(3 eps/(2 eps+1))^2 factor is the local-field correction of the
real-cavity model.  gamma_c_exact carries the cavity's own contribution,

    gamma_c = Im{ 3(eps-1)/(2 eps+1) / q_C^3
                  + 9(eps-1)(4 eps+1)/[5 (2 eps+1)^2] / q_C
                  + i [9 eps^{5/2}/(2 eps+1)^2 - 1] },

whose divergent terms describe nonradiative transfer into the absorbing
material around the cavity and vanish for real eps.  The decomposition
holds for host bodies of arbitrary shape, which is why the body tensor is
an *input* here (spheres get theirs from :mod:`locfield.mie`, generic
star-shaped bodies from :mod:`locfield.greens` to linear order).

Transmission and scattering coefficients of the cavity itself (A, B_m)
are exposed for diagnostics; their small-q_C asymptotics
A -> n 3 eps/(2 eps+1), |B_m^N| = O(q_C^{2m+1}), |B_m^M| = O(q_C^{2m+3})
justify dropping the cavity-scattering corrections in the assembled rate.
"""

from __future__ import annotations

import dataclasses
import math

import numpy as np

from .errors import DomainError, InvariantError, SingularityError
from .greens import Permittivity, as_permittivity, unit_vector
from .specfun import riccati_derivative, spherical_bessel_j, spherical_hankel_h1
from .born import _check_qc

__all__ = [
    "CavityCoefficients",
    "transmission_coefficient",
    "outside_scatter_coefficients",
    "gamma_c_exact",
    "gamma_b_corrected",
    "gamma_weak_absorption",
    "gamma_bulk",
    "BULK_MODELS",
]

BULK_MODELS = ("real_cavity", "virtual_cavity", "linear")

# Im eps above which the negligible-absorption closed forms are refused.
_ABSORPTION_TOL = 1.0e-6

# symmetry tolerance for input Green tensors (relative to their scale)
_SYM_TOL = 1.0e-12


@dataclasses.dataclass(frozen=True)
class CavityCoefficients:
    """Cavity transmission coefficient A and outside-scattering
    coefficients B_m^M, B_m^N for m = 1..m_max (index m-1 in the arrays)."""

    A: complex
    B_M: np.ndarray
    B_N: np.ndarray


def _eps52(eps: complex) -> complex:
    # eps^{5/2} with the principal square root, matching n = sqrt(eps)
    return eps * eps * complex(np.sqrt(eps))


def _local_field_factor(eps: complex) -> complex:
    return (3.0 * eps / (2.0 * eps + 1.0)) ** 2


def transmission_coefficient(eps, q_C: float) -> complex:
    """Cavity transmission coefficient A (dipole wave, m = 1).

        A = n [j_1(z0) xi_1'(z0) - psi_1'(z0) h_1(z0)]
              / [j_1(z0) xi_1'(z1) - eps psi_1'(z0) h_1(z1)],

    z0 = q_C, z1 = n q_C, with psi/xi the Riccati-Bessel functions of
    j/h type.  As q_C -> 0, A -> n 3 eps/(2 eps + 1).
    """
    eps = as_permittivity(eps)
    q_C = float(q_C)
    if not (math.isfinite(q_C) and q_C > 0):
        raise DomainError("q_C must be positive and finite")
    n = eps.n
    e = eps.epsilon
    z0 = complex(q_C)
    z1 = n * q_C
    num = (spherical_bessel_j(1, z0) * riccati_derivative("hankel_h1", 1, z0)
           - riccati_derivative("bessel_j", 1, z0) * spherical_hankel_h1(1, z0))
    den = (spherical_bessel_j(1, z0) * riccati_derivative("hankel_h1", 1, z1)
           - e * riccati_derivative("bessel_j", 1, z0)
           * spherical_hankel_h1(1, z1))
    if abs(den) < 1.0e-300:
        raise SingularityError("cavity transmission denominator vanished")
    return n * num / den


def outside_scatter_coefficients(eps, q_C: float,
                                 m_max: int) -> CavityCoefficients:
    """Scattering coefficients of the empty cavity as seen from outside.

        B_m^M = -[j_m(z0) psi_m'(z1) - psi_m'(z0) j_m(z1)]
                 / [j_m(z0) xi_m'(z1) - psi_m'(z0) h_m(z1)]

    and B_m^N the same with eps multiplying both psi_m'(z0) terms;
    z0 = q_C, z1 = n q_C.  These are O(q_C^{2m+3}) and O(q_C^{2m+1})
    respectively, hence negligible in the assembled small-cavity rate.
    """
    eps = as_permittivity(eps)
    q_C = float(q_C)
    if not (math.isfinite(q_C) and q_C > 0):
        raise DomainError("q_C must be positive and finite")
    m_max = int(m_max)
    if m_max < 1:
        raise DomainError("m_max must be >= 1")
    e = eps.epsilon
    z0 = complex(q_C)
    z1 = eps.n * q_C
    B_M = np.empty(m_max, dtype=complex)
    B_N = np.empty(m_max, dtype=complex)
    for m in range(1, m_max + 1):
        j0 = spherical_bessel_j(m, z0)
        j1 = spherical_bessel_j(m, z1)
        h1v = spherical_hankel_h1(m, z1)
        pj0 = riccati_derivative("bessel_j", m, z0)
        pj1 = riccati_derivative("bessel_j", m, z1)
        ph1 = riccati_derivative("hankel_h1", m, z1)
        den_M = j0 * ph1 - pj0 * h1v
        den_N = j0 * ph1 - e * pj0 * h1v
        if min(abs(den_M), abs(den_N)) < 1.0e-300:
            raise SingularityError(f"cavity scattering denominator vanished "
                                   f"at m = {m}")
        B_M[m - 1] = -(j0 * pj1 - pj0 * j1) / den_M
        B_N[m - 1] = -(j0 * pj1 - e * pj0 * j1) / den_N
    return CavityCoefficients(A=transmission_coefficient(eps, q_C),
                              B_M=B_M, B_N=B_N)


def gamma_c_exact(eps, q_C: float) -> float:
    """Exact small-cavity contribution gamma_c to Gamma/Gamma_0.

    Reduces to :func:`locfield.born.gamma_c_linear` to first order in
    chi (the difference is -chi^2/8 + O(chi^3) for real chi).  For real
    eps only the constant survives: 9 eps^{5/2}/(2 eps+1)^2 - 1.
    """
    eps = as_permittivity(eps)
    q_C = _check_qc(q_C)
    e = eps.epsilon
    val = (3.0 * (e - 1.0) / (2.0 * e + 1.0) / q_C**3
           + 9.0 * (e - 1.0) * (4.0 * e + 1.0)
           / (5.0 * (2.0 * e + 1.0) ** 2) / q_C
           + 1j * (9.0 * _eps52(e) / (2.0 * e + 1.0) ** 2 - 1.0))
    return float(np.imag(val))


def _check_green_tensor(gB1) -> np.ndarray:
    g = np.asarray(gB1, dtype=complex)
    if g.shape != (3, 3):
        raise DomainError(f"gB1 must be a 3x3 tensor, got shape {g.shape}")
    if not np.all(np.isfinite(g)):
        raise DomainError("gB1 must be finite")
    scale = max(float(np.max(np.abs(g))), 1.0)
    if float(np.max(np.abs(g - g.T))) > _SYM_TOL * scale:
        raise InvariantError("gB1 must be symmetric (reciprocity); "
                             "asymmetry exceeds tolerance")
    return g


def gamma_b_corrected(eps, gB1, dipole) -> float:
    """Local-field corrected body contribution.

        gamma_b = 6 pi Im[(3 eps/(2 eps+1))^2 d.gB1.d]

    with gB1 the scattering Green tensor of the host body without the
    cavity, at the emitter position, in units of k_A.  For eps = 1 the
    factor is 1 and the uncorrected scattering term is recovered.
    """
    eps = as_permittivity(eps)
    g = _check_green_tensor(gB1)
    d = unit_vector(dipole)
    return 6.0 * np.pi * float(np.imag(_local_field_factor(eps.epsilon)
                                       * (d @ g @ d)))


def gamma_weak_absorption(eps, q_C: float, gamma_b_uncorrected: float,
                          gB1, dipole) -> tuple[float, float]:
    """Weakly absorbing host: corrected rate plus absorption shift.

    Returns ``(gamma_total, condition_value)`` with

        gamma_total = (3 Re eps/(2 Re eps+1))^2 * gamma_b_uncorrected
                      + delta_gamma,

        delta_gamma = 9 Im(eps) / [(2 Re eps+1)^2 q_C^3]
                      + 9 (14 Re eps+1) Im(eps) / [5 (2 Re eps+1)^3 q_C],

    where ``gamma_b_uncorrected`` is the *full* uncorrected rate
    Gamma_B/Gamma_0 = sqrt(Re eps) + 6 pi Im[d.gB1.d] evaluated with the
    real part of eps (see :func:`locfield.rates.gamma_uncorrected`).
    ``condition_value`` is the smallness parameter

        |Im eps * Re(d.gB1.d)| / |Re eps * (sqrt(Re eps)/6pi + Im(d.gB1.d))|

    comparing the absorptive correction of the body term against the
    retained radiative part; the split is trustworthy when it is small
    (the divergent real part of the bulk tensor does not enter, only the
    scattering part contributes to the numerator at this order).
    """
    eps = as_permittivity(eps)
    q_C = _check_qc(q_C)
    g = _check_green_tensor(gB1)
    d = unit_vector(dipole)
    re = eps.epsilon.real
    im = eps.epsilon.imag
    if re <= 0:
        raise DomainError("weak-absorption split needs Re eps > 0")
    f2 = (3.0 * re / (2.0 * re + 1.0)) ** 2
    delta = (9.0 * im / ((2.0 * re + 1.0) ** 2 * q_C**3)
             + 9.0 * (14.0 * re + 1.0) * im
             / (5.0 * (2.0 * re + 1.0) ** 3 * q_C))
    gamma = f2 * float(gamma_b_uncorrected) + delta
    gdd = complex(d @ g @ d)
    denom = re * (math.sqrt(re) / (6.0 * np.pi) + gdd.imag)
    if denom == 0:
        condition = math.inf
    else:
        condition = abs(im * gdd.real) / abs(denom)
    return gamma, condition


def gamma_bulk(eps, q_C: float | None = None,
               model: str = "real_cavity") -> float:
    """Bulk-medium decay rate Gamma/Gamma_0 for negligible absorption.

    Models:

    * ``real_cavity``:    (3 eps/(2 eps+1))^2 sqrt(eps)
    * ``virtual_cavity``: ((eps+2)/3)^2 sqrt(eps)
    * ``linear``:         1 + 7 chi/6 (both cavity models linearized)

    All three are stated for (effectively) real permittivity; an
    absorbing eps raises DomainError, since the absorbing bulk rate is
    cavity-size dependent and must be computed as
    ``1 + gamma_c_exact(eps, q_C)`` instead.
    """
    eps = as_permittivity(eps)
    if model not in BULK_MODELS:
        raise DomainError(f"model must be one of {BULK_MODELS}, "
                          f"got {model!r}")
    if eps.epsilon.imag > _ABSORPTION_TOL:
        hint = "1 + gamma_c_exact(eps, q_C)"
        if q_C is not None:
            hint = f"1 + gamma_c_exact(eps, {q_C:g})"
        raise DomainError(
            f"bulk model {model!r} assumes negligible absorption "
            f"(Im eps <= {_ABSORPTION_TOL:g}); for absorbing media use "
            + hint)
    e = eps.epsilon.real
    if e <= 0:
        raise DomainError("bulk closed forms need Re eps > 0")
    if model == "real_cavity":
        return float((3.0 * e / (2.0 * e + 1.0)) ** 2 * math.sqrt(e))
    if model == "virtual_cavity":
        return float(((e + 2.0) / 3.0) ** 2 * math.sqrt(e))
    return 1.0 + 7.0 * (e - 1.0) / 6.0
