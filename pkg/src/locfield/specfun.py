"""Special functions of complex argument used by the rate formulas.

Thin, defensively checked wrappers over :mod:`scipy.special`: spherical
Bessel functions ``j_m``, outgoing spherical Hankel functions
``h_m == h_m^{(1)}``, the Riccati-Bessel derivatives ``[z f_m(z)]'``, and
the exponential integral ``Ei`` on its principal branch.  The wrappers pin
down conventions the rest of the package relies on and enforce a strict
non-finite policy: no NaN or infinity escapes silently.

Conventions
-----------
* ``h_m`` always denotes the *outgoing* Hankel function, so
  ``h_1(z) = -(1/z + i/z**2) exp(iz)``.
* ``Ei`` uses the principal branch, cut along the negative real axis.  On
  the positive real axis it coincides with the classical real Ei, and
  ``Ei(conj(z)) == conj(Ei(z))`` off the cut.  Along the positive imaginary
  axis, the only region the decay-rate integrals probe, ``Ei(iy) -> i*pi``
  as ``y -> +inf``.  Evaluation *on* the cut is rejected rather than
  silently picking a side.

All functions accept scalars or ndarrays of complex argument and
broadcast like the underlying scipy routines.
"""

from __future__ import annotations

import numpy as np
from scipy import special as _sp

from .errors import DomainError, NonFiniteError, SingularityError

__all__ = [
    "spherical_bessel_j",
    "spherical_hankel_h1",
    "riccati_derivative",
    "exponential_integral_ei",
    "ORDER_MAX",
    "ARG_MAX",
]

# Validated ranges.  AMOS-backed routines degrade gracefully well beyond
# these, but the rate formulas never need more and the caps keep the
# error surface predictable.
ORDER_MAX = 200
ARG_MAX = 1.0e4


def _check_order(m) -> np.ndarray:
    m = np.asarray(m)
    if not np.issubdtype(m.dtype, np.integer):
        raise DomainError(f"order m must be integer, got dtype {m.dtype}")
    if np.any(m < 0) or np.any(m > ORDER_MAX):
        raise DomainError(f"order m must lie in [0, {ORDER_MAX}]")
    return m


def _check_arg(z, allow_zero: bool) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    if not np.all(np.isfinite(z)):
        raise DomainError("argument z must be finite")
    if np.any(np.abs(z) >= ARG_MAX):
        raise DomainError(f"|z| must be < {ARG_MAX:g}")
    if not allow_zero and np.any(z == 0):
        raise SingularityError("function is singular at z = 0")
    return z


def _finite_or_raise(value: np.ndarray, what: str):
    if not np.all(np.isfinite(value)):
        raise NonFiniteError(f"{what} overflowed or produced NaN; "
                             "argument too deep in the complex plane for "
                             "double precision")
    if value.ndim == 0:
        return complex(value)
    return value


def spherical_bessel_j(m, z):
    """Spherical Bessel function j_m(z) for complex z.

    Parameters
    ----------
    m : int or integer ndarray
        Order, 0 <= m <= ORDER_MAX.
    z : complex or complex ndarray
        Argument, |z| < ARG_MAX.  z = 0 is allowed: j_0(0) = 1 and
        j_m(0) = 0 for m >= 1.

    Returns
    -------
    complex or ndarray
    """
    m = _check_order(m)
    z = _check_arg(z, allow_zero=True)
    return _finite_or_raise(_sp.spherical_jn(m, z), "spherical_bessel_j")


def spherical_hankel_h1(m, z):
    """Outgoing spherical Hankel function h_m(z) = j_m(z) + i y_m(z).

    Singular at z = 0 (raises SingularityError).  In the lower half
    plane the function grows like exp(|Im z|)/|z|; overflow raises
    NonFiniteError rather than returning inf.

    Evaluated as sqrt(pi/2) z^{-1/2} H^{(1)}_{m+1/2}(z) rather than as
    j_m + i y_m: in the upper half plane h_m decays like exp(-Im z)
    while j_m and y_m both grow, so the sum would cancel catastrophically
    for Im z of a few tens.  The cylinder route keeps full relative
    accuracy in both half planes.
    """
    m = _check_order(m)
    z = _check_arg(z, allow_zero=False)
    val = _half_order_h1(m, z)
    return _finite_or_raise(val, "spherical_hankel_h1")


def _half_order_h1(m, z):
    # h_m is meromorphic (no branch cut), but both factors below have one
    # along the negative reals; normalizing -0.0 imaginary parts to +0.0
    # keeps the two cuts cancelling on either lip of the axis.
    z = z + 0.0j
    # sqrt(pi/2)/sqrt(z) keeps the prefactor on the principal branch of z
    # itself, consistent with AMOS' branch for H^{(1)} at arg z = pi.
    return np.sqrt(0.5 * np.pi) / np.sqrt(z) * _sp.hankel1(m + 0.5, z)


def riccati_derivative(kind, m, z):
    """Derivative of a Riccati-Bessel function, [z f_m(z)]' = f_m + z f_m'.

    Parameters
    ----------
    kind : {"bessel_j", "hankel_h1"}
        Which radial function f_m to use.
    m, z : as for the underlying function.

    Notes
    -----
    For kind="bessel_j", m=0 this is d/dz [z j_0(z)] = cos(z).  Near the
    origin [z j_m(z)]' ~ (m+1) z^m / (2m+1)!!, so the m=1 bracket behaves
    like 2z/3.
    """
    m = _check_order(m)
    if kind == "bessel_j":
        z = _check_arg(z, allow_zero=True)
        val = _sp.spherical_jn(m, z) + z * _sp.spherical_jn(m, z, derivative=True)
    elif kind == "hankel_h1":
        z = _check_arg(z, allow_zero=False)
        # [z h_m]' = z h_{m-1} - m h_m, exact for all m >= 0 with
        # h_{-1}(z) = exp(iz)/z; avoids the j + iy cancellation in the
        # upper half plane (see spherical_hankel_h1)
        val = z * _half_order_h1(m - 1, z) - m * _half_order_h1(m, z)
    else:
        raise DomainError(f"unknown Riccati kind {kind!r}; "
                          "expected 'bessel_j' or 'hankel_h1'")
    return _finite_or_raise(val, f"riccati_derivative[{kind}]")


def exponential_integral_ei(z):
    """Exponential integral Ei(z), principal branch.

    The branch cut runs along the negative real axis; evaluation exactly
    on the cut (z real and negative) is rejected with DomainError since
    the two one-sided limits differ by 2*pi*i.  z = 0 is a logarithmic
    singularity and raises SingularityError.

    For reference, Ei(2i) = Ci(2) + i*(Si(2) + pi/2)
    = 0.4229808287748650 + 3.1762093035975916 i.
    """
    z = np.asarray(z, dtype=complex)
    if not np.all(np.isfinite(z)):
        raise DomainError("argument z must be finite")
    if np.any(z == 0):
        raise SingularityError("Ei has a logarithmic singularity at z = 0")
    on_cut = (z.imag == 0) & (z.real < 0)
    if np.any(on_cut):
        raise DomainError("Ei evaluated on the branch cut (negative real "
                          "axis); shift z off the axis to pick a side")
    z1 = np.atleast_1d(z)
    val = np.asarray(_sp.expi(z1), dtype=complex)
    # scipy's real-argument Ei is machine accurate; the complex-plane
    # algorithm carries a few parts in 1e13 near the real axis
    on_axis = (z1.imag == 0.0) & (z1.real > 0.0)
    if np.any(on_axis):
        val[on_axis] = _sp.expi(z1.real[on_axis])
    return _finite_or_raise(val.reshape(z.shape), "exponential_integral_ei")
