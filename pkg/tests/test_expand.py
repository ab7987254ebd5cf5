"""Quadrature certification, projections, parity coefficients,
reconstruction residuals."""

import math
from fractions import Fraction

import numpy as np
import pytest

from paritywilson.errors import NoConvergence
from paritywilson.expand import (
    QuadratureConfig,
    auto_cutoff,
    inner_product,
    integrate_semiinfinite,
    parity_coefficients,
    parity_target,
    project,
    reconstruction_residual,
    tail_bound,
)
from paritywilson.numcore import poly_eval
from paritywilson.wilson import (
    WilsonFamily,
    family_weight,
    monic_from_recurrence,
    norm_closed_form,
)

CASE_A = WilsonFamily.case_a()
CASE_B_32 = WilsonFamily.case_b(Fraction(3, 2))
TWO_PI = 2.0 * math.pi


class TestIntegrate:
    def test_exponential_moment(self):
        val, err = integrate_semiinfinite(lambda x: x * np.exp(-TWO_PI * x),
                                          growth_degree=1)
        want = 1.0 / (4 * math.pi ** 2)
        assert abs(val - want) <= err
        assert abs(val - want) < 1e-12

    def test_error_honesty_on_twenty_closed_forms(self):
        # x^p e^{-2 pi x} and x^p e^{-3 pi x}, p = 0..9: reported error must
        # dominate the true error on every one
        for lam in (TWO_PI, 3 * math.pi):
            for p in range(10):
                val, err = integrate_semiinfinite(
                    lambda x, p=p, lam=lam: x ** p * np.exp(-lam * x),
                    growth_degree=p)
                want = math.factorial(p) / lam ** (p + 1)
                assert abs(val - want) <= err, (lam, p)

    def test_complex_integrand(self):
        val, err = integrate_semiinfinite(
            lambda x: (1.0 + 2j) * x * np.exp(-TWO_PI * x), growth_degree=1)
        want = (1.0 + 2j) / (4 * math.pi ** 2)
        assert abs(val - want) <= err

    def test_tail_bound_formula(self):
        # exact incomplete-gamma value for p = 2
        lam, x = 2.0, 3.0
        want = math.exp(-lam * x) * (x * x / lam + 2 * x / lam ** 2 + 2 / lam ** 3)
        assert abs(tail_bound(1.0, 2, lam, x) - want) < 1e-14

    def test_explicit_cutoff_respected(self):
        cfg = QuadratureConfig(x_max=20.0)
        val, err = integrate_semiinfinite(lambda x: np.exp(-TWO_PI * x), cfg)
        assert abs(val - 1.0 / TWO_PI) <= err

    def test_no_convergence_cap(self):
        cfg = QuadratureConfig(rel_tol=1e-14, abs_tol=1e-300, panel_order=2,
                               max_panels=20, x_max=16.0)
        with pytest.raises(NoConvergence):
            integrate_semiinfinite(
                lambda x: np.cos(37.0 * x * x) * np.exp(-x) * 1e6, cfg)

    def test_auto_cutoff_grows_with_degree(self):
        assert auto_cutoff(0) == 15.0
        assert auto_cutoff(10) == 15.0  # floor dominates through degree ~17
        assert auto_cutoff(48) > auto_cutoff(30) > 15.0


class TestInnerProduct:
    def test_case_a_norms(self):
        tab = monic_from_recurrence(CASE_A, 2)
        val, err = inner_product(CASE_A, tab[0], tab[0])
        assert abs(float(np.real(val)) - 2.0 / 3.0) <= 1e-8 * (2.0 / 3.0)
        cross, _ = inner_product(CASE_A, tab[0], tab[1])
        assert abs(float(np.real(cross))) <= 1e-8

    def test_case_b_full_measure_norm(self):
        tab = monic_from_recurrence(CASE_B_32, 1)
        val, err = inner_product(CASE_B_32, tab[1], tab[1])
        want = float(norm_closed_form(CASE_B_32, 1))
        assert abs(float(np.real(val)) - want) <= 1e-8 * want

    def test_callable_needs_mass_continuation(self):
        tab = monic_from_recurrence(CASE_B_32, 1)
        with pytest.raises(ValueError):
            inner_product(CASE_B_32, lambda x: np.exp(-x), tab[0])


class TestProjection:
    def test_basis_element_projects_to_itself(self):
        tab = monic_from_recurrence(CASE_A, 4)
        table = project(tab[2], CASE_A, 4)
        for n, c, _ in table.entries:
            want = 1.0 if n == 2 else 0.0
            assert abs(c - want) <= 1e-8

    def test_basis_element_case_b(self):
        tab = monic_from_recurrence(CASE_B_32, 3)
        table = project(tab[1], CASE_B_32, 3)
        for n, c, _ in table.entries:
            want = 1.0 if n == 1 else 0.0
            assert abs(c - want) <= 1e-8


class TestParityCoefficients:
    def test_c0_exact(self):
        table = parity_coefficients(CASE_A, 2)
        assert table.coefficient(0) == -1j
        assert table.error(0) == 0.0

    def test_dual_route_agreement(self):
        for family in (CASE_A, CASE_B_32):
            closed = parity_coefficients(family, 6)
            generic = parity_coefficients(family, 6, route="projection")
            for n in range(7):
                d = abs(closed.coefficient(n) - generic.coefficient(n))
                assert d <= 2 * (closed.error(n) + generic.error(n)) + 1e-13, (family.case, n)

    def test_printed_constants_detector_case_a(self):
        closed = parity_coefficients(CASE_A, 4)
        printed = parity_coefficients(CASE_A, 4, route="printed")
        assert printed.coefficient(1) == pytest.approx(closed.coefficient(1), rel=1e-10)
        for n in range(2, 5):
            ratio = printed.coefficient(n) / closed.coefficient(n)
            want = 2 * math.factorial(2 * n) / math.factorial(n + 1) ** 2
            assert ratio == pytest.approx(want, rel=1e-9)

    def test_printed_detector_case_b_misses_point_masses(self):
        closed = parity_coefficients(CASE_B_32, 3)
        printed = parity_coefficients(CASE_B_32, 3, route="printed")
        weight = family_weight(CASE_B_32)
        polys = monic_from_recurrence(CASE_B_32, 3)
        for n in range(4):
            missing = sum(pm.mass * complex(np.exp(-1j * np.pi * pm.t))
                          * float(poly_eval(polys[n], pm.y))
                          for pm in weight.point_masses)
            missing *= (-1) ** n / float(norm_closed_form(CASE_B_32, n))
            delta = closed.coefficient(n) - printed.coefficient(n)
            assert abs(delta - missing) <= 1e-10 * max(1.0, abs(missing))

    def test_symbolic_b_rejected(self):
        with pytest.raises(ValueError):
            parity_coefficients(WilsonFamily.case_b(), 2)


class TestReconstruction:
    def test_case_a_residuals_match_frozen_oracle(self):
        # frozen from a 50-digit evaluation with exact polynomials and norms
        res = reconstruction_residual(CASE_A, 12)
        assert res[0] == pytest.approx(0.820029, abs=2e-6)
        assert res[12] == pytest.approx(0.203557, abs=2e-6)

    def test_case_b_residuals_match_frozen_oracle(self):
        res = reconstruction_residual(CASE_B_32, 12)
        assert res[0] == pytest.approx(3.038876, abs=2e-5)
        assert res[12] == pytest.approx(0.330211, abs=2e-5)

    @pytest.mark.parametrize("family", [CASE_A, CASE_B_32])
    def test_nonincreasing(self, family):
        res = reconstruction_residual(family, 8)
        for a, b in zip(res, res[1:]):
            assert b <= a * (1 + 1e-8) + 1e-10

    def test_first_truncation_strictly_positive(self):
        res = reconstruction_residual(CASE_A, 0)
        assert res[0] > 0.1

    def test_parseval_consistency(self):
        # dropping the last term restores the previous residual:
        # r_{N-1}^2 - r_N^2 = |c|^2 * norm within quadrature error
        table = parity_coefficients(CASE_A, 7)
        res = reconstruction_residual(CASE_A, 6, table=table)
        for n in range(1, 7):
            gap = res[n - 1] ** 2 - res[n] ** 2
            want = abs(table.coefficient(n + 1)) ** 2 * float(norm_closed_form(CASE_A, n))
            assert gap == pytest.approx(want, rel=1e-6, abs=1e-10)
