"""Linear Born rates: closed forms, 1D reduction, validity bookkeeping."""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from locfield.born import (ORIENTATIONS, RateBreakdown, SphereConfig,
                           ValidityReport, gamma_b_center_closed,
                           gamma_b_sphere_linear, gamma_c_linear,
                           gamma_total_linear, validity_check)
from locfield.errors import DomainError
from locfield.greens import StarBoundary


# -- configuration records ----------------------------------------------------


def test_sphere_config_invariants():
    cfg = SphereConfig(q_R=2.0, q_L=0.5, q_C=0.01)
    assert cfg.boundary().q_max == 2.5
    with pytest.raises(DomainError):
        SphereConfig(q_R=0.0)
    with pytest.raises(DomainError):
        SphereConfig(q_R=2.0, q_L=-0.1)
    with pytest.raises(DomainError):
        SphereConfig(q_R=2.0, nu=-1.0)
    # emitter cavity reaching the surface is rejected
    with pytest.raises(DomainError):
        SphereConfig(q_R=1.0, q_L=0.995, q_C=0.01)
    with pytest.raises(DomainError):
        SphereConfig(q_R=1.0, q_L=0.97, q_C=0.01, nu=2.5)


def test_cavity_radius_guard_rails():
    with pytest.warns(UserWarning):
        gamma_c_linear(0.1 + 0j, 0.15)
    with pytest.raises(DomainError):
        gamma_c_linear(0.1 + 0j, 0.25)
    with pytest.warns(UserWarning):
        SphereConfig(q_R=2.0, q_C=0.15)


def test_rate_breakdown_identity():
    b = RateBreakdown.from_parts(0.125, -0.25)
    assert b.total_ratio == 1.0 + 0.125 - 0.25
    with pytest.raises(DomainError):
        RateBreakdown(gamma_c_ratio=0.1, gamma_b_ratio=0.2,
                      total_ratio=1.25)


# -- cavity term ---------------------------------------------------------------


def test_gamma_c_linear_values():
    # pure absorption: Im chi (1/q_C^3 + 1/q_C)
    assert_allclose(gamma_c_linear(1e-6j, 0.01), 1.0001, rtol=1e-12)
    # transparent: (7/6) Re chi
    assert_allclose(gamma_c_linear(0.12, 0.01), 0.14, rtol=1e-14)
    with pytest.raises(DomainError):
        gamma_c_linear(0.1 - 1e-9j, 0.01)
    with pytest.raises(DomainError):
        gamma_c_linear(complex(np.inf, 0), 0.01)


# -- body term -----------------------------------------------------------------


def test_center_closed_form_matches_quadrature():
    for q_R in (0.5, 1.556, 4.0, 9.3):
        for chi in (0.05, 0.1 + 1e-8j, 0.2 + 1e-7j):
            cfg = SphereConfig(q_R=q_R, q_L=0.0, q_C=0.01)
            g_quad = gamma_b_sphere_linear(cfg, chi, "radial")
            g_closed = gamma_b_center_closed(q_R, chi)
            assert abs(g_quad - g_closed) <= 1e-10 * max(abs(g_closed), 1.0)


def test_body_term_linearity_in_chi():
    cfg = SphereConfig(q_R=3.0, q_L=1.0, q_C=0.01)
    g1 = gamma_b_sphere_linear(cfg, 0.05, "tangential")
    g2 = gamma_b_sphere_linear(cfg, 0.10, "tangential")
    assert_allclose(g2, 2.0 * g1, rtol=1e-10)
    # additive over independent real/imaginary parts
    ga = gamma_b_sphere_linear(cfg, 0.1, "radial")
    gb = gamma_b_sphere_linear(cfg, 1e-3j, "radial")
    gab = gamma_b_sphere_linear(cfg, 0.1 + 1e-3j, "radial")
    assert_allclose(gab, ga + gb, atol=1e-12)


def test_center_large_sphere_oscillation_bound():
    # gamma_b -> -(chi/2) cos(2 q_R) with remainder below 2 chi / q_R
    chi = 0.1
    for q_R in (10.0, 15.0, 22.0, 40.0):
        g = gamma_b_center_closed(q_R, chi)
        assert abs(g + 0.5 * chi * np.cos(2 * q_R)) <= 2.0 * chi / q_R


def test_orientation_degeneracy_at_center():
    chi = 0.1 + 1e-8j
    for q_R in (1.0, 2.0, 5.0):
        cfg = SphereConfig(q_R=q_R, q_L=0.0, q_C=0.01)
        gr = gamma_b_sphere_linear(cfg, chi, "radial")
        gt = gamma_b_sphere_linear(cfg, chi, "tangential")
        assert abs(gr - gt) <= 1e-12


def test_body_term_zero_chi_and_validation():
    cfg = SphereConfig(q_R=2.0)
    assert gamma_b_sphere_linear(cfg, 0.0) == 0.0
    with pytest.raises(DomainError):
        gamma_b_sphere_linear(cfg, 0.1, "diagonal")
    with pytest.raises(DomainError):
        gamma_b_sphere_linear(cfg, 0.1, tol=0.0)
    with pytest.raises(DomainError):
        gamma_b_center_closed(-1.0, 0.1)


# -- assembled rate -------------------------------------------------------------


def test_total_linear_bulk():
    out = gamma_total_linear(StarBoundary.bulk(), 0.12, q_C=0.01)
    assert_allclose(out.total_ratio, 1.0 + 7.0 * 0.12 / 6.0, rtol=1e-14)
    assert out.gamma_b_ratio == 0.0
    with pytest.raises(DomainError):
        gamma_total_linear(StarBoundary.bulk(), 0.12)     # q_C missing


def test_total_linear_sphere_paths_agree():
    chi = 0.1 + 1e-8j
    cfg = SphereConfig(q_R=5.0, q_L=1.0, q_C=0.01)
    via_1d = gamma_total_linear(cfg, chi, orientation="tangential")
    via_2d = gamma_total_linear(StarBoundary.sphere(5.0, 1.0), chi,
                                q_C=0.01, dipole=[1.0, 0.0, 0.0])
    assert abs(via_1d.total_ratio - via_2d.total_ratio) < 1e-8
    with pytest.raises(DomainError):
        gamma_total_linear(cfg, chi, q_C=0.02)   # conflicting q_C
    with pytest.raises(DomainError):
        gamma_total_linear(3.0, chi)             # unsupported geometry


def test_total_linear_vs_exact_small_chi():
    # one figure-scale spot check against the independent Mie route
    from locfield.mie import gamma_center_exact
    chi = 0.1 + 1e-8j
    cfg = SphereConfig(q_R=2.0, q_L=0.0, q_C=0.01)
    lin = gamma_total_linear(cfg, chi).total_ratio
    exact = gamma_center_exact(1.0 + chi, 2.0, 0.01)
    assert abs(lin - exact) < 0.01


# -- validity report -------------------------------------------------------------


def test_validity_examples():
    r = validity_check(None, 1e-2, q_C=0.01)
    assert r.chi_size_ok and r.absorption_ok and r.all_ok
    assert_allclose(r.chi_size_value, 1e-2, rtol=1e-15)
    r = validity_check(None, 2.0, q_C=0.01)
    assert not r.chi_size_ok
    r = validity_check(None, 0.0, q_C=0.01)
    assert r.chi_size_value == 0.0 and r.absorption_value == 0.0
    assert r.all_ok


def test_validity_sphere_geometry():
    cfg = SphereConfig(q_R=2.0, q_L=1.0, q_C=0.01)
    r = validity_check(cfg, 0.09 + 2e-7j)
    assert_allclose(r.chi_size_value, abs(0.09 + 2e-7j) * 3.0, rtol=1e-15)
    assert_allclose(r.absorption_value, 2e-7 / 0.01**3, rtol=1e-12)
    assert r.chi_size_ok and not r.absorption_ok
    # explicit overrides win
    r2 = validity_check(cfg, 0.1, boundary_max=10.0)
    assert not r2.chi_size_ok
    with pytest.raises(DomainError):
        validity_check(None, 0.1)   # bulk needs q_C


def test_validity_report_is_plain_data():
    r = ValidityReport(0.1, True, 0.0, True)
    assert r.all_ok
    r = ValidityReport(0.1, True, 1.0, False)
    assert not r.all_ok


def test_orientations_constant():
    assert ORIENTATIONS == ("radial", "tangential")
