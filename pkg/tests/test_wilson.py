"""Family construction routes, recurrence adjudication, measures, norms,
generating functions."""

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from paritywilson.errors import DegenerateFamily
from paritywilson.numcore import RationalPolynomial, poly_eval
from paritywilson.wilson import (
    WilsonFamily,
    alternating_reflect,
    family_weight,
    generating_function_check,
    monic_from_hypergeometric,
    monic_from_recurrence,
    norm_closed_form,
    printed_norm_rhs,
    recurrence_discrepancy_report,
    standard_recurrence_terms,
    weight_and_norm,
)
from paritywilson.expand import inner_product, stieltjes_monic_table

CASE_A = WilsonFamily.case_a()
CASE_B_SYM = WilsonFamily.case_b()
CASE_B_32 = WilsonFamily.case_b(Fraction(3, 2))


def fr(s):
    return Fraction(s)


class TestHypergeometricRoute:
    def test_case_a_seeds(self):
        assert monic_from_hypergeometric(CASE_A, 0) == RationalPolynomial([1])
        assert monic_from_hypergeometric(CASE_A, 1) == RationalPolynomial([fr("-3/4"), 1])

    def test_case_a_degree_two(self):
        # derived by exact expansion; equals the degree-3 z-space member at
        # reflected argument
        assert monic_from_hypergeometric(CASE_A, 2) == RationalPolynomial(
            [fr("117/80"), fr("-7/2"), 1])

    def test_case_b_symbolic_seed(self):
        p1 = monic_from_hypergeometric(CASE_B_SYM, 1)
        assert p1.coeffs[0] == RationalPolynomial([fr("1/4"), fr("1/2")])
        assert p1.coeffs[1] == RationalPolynomial([1])

    def test_case_b_reflected_degree_two(self):
        g2 = alternating_reflect(monic_from_hypergeometric(CASE_B_SYM, 2), 2)
        assert g2.coeffs[0] == RationalPolynomial([fr("-3/16"), fr("-1/4"), fr("1/6")])
        assert g2.coeffs[1] == RationalPolynomial([fr("1/2"), -1])
        assert g2.coeffs[2] == RationalPolynomial([1])

    def test_degenerate_numeric_b_rejected(self):
        with pytest.raises(DegenerateFamily):
            monic_from_hypergeometric(WilsonFamily.case_b(0), 1)
        with pytest.raises(DegenerateFamily):
            monic_from_hypergeometric(WilsonFamily.case_b(3), 2)
        # degeneracy only bites once n reaches the integer root
        assert monic_from_hypergeometric(WilsonFamily.case_b(3), 1)


class TestRecurrenceRoute:
    @pytest.mark.parametrize("family", [CASE_A, CASE_B_SYM, CASE_B_32,
                                        WilsonFamily.case_b(Fraction(-1, 2))])
    def test_corrected_matches_hypergeometric_exactly(self, family):
        table = monic_from_recurrence(family, 10)
        for n in range(11):
            if family.case == "B" and family.b is not None:
                want = monic_from_hypergeometric(CASE_B_SYM, n).substitute_b(family.b)
            else:
                want = monic_from_hypergeometric(family, n)
            assert table[n] == want

    @pytest.mark.parametrize("family", [CASE_A, CASE_B_SYM])
    def test_monic(self, family):
        table = monic_from_recurrence(family, 10)
        for n in range(11):
            assert table[n].is_monic()
            assert table[n].degree == n

    def test_b_zero_seed(self):
        table = monic_from_recurrence(WilsonFamily.case_b(0), 1)
        assert table[1] == RationalPolynomial([fr("1/4"), 1])

    def test_rederivation_from_standard_recurrence_case_a(self):
        # independent re-derivation: monic recurrence terms from the
        # normalized-recurrence products A_{n-1} C_n at (1/2,1/2,3/2,3/2)
        def a_std(k):
            return Fraction((k + 3) * (k + 1) * (k + 2) ** 2, (2 * k + 3) * (2 * k + 4))

        def c_std(k):
            return Fraction(k * (k + 1) ** 2 * (k + 2), (2 * k + 2) * (2 * k + 3))

        for n in range(2, 12):
            beta, gamma = standard_recurrence_terms(CASE_A, n)
            assert -beta == a_std(n - 1) + c_std(n - 1) - Fraction(1, 4)
            assert gamma == a_std(n - 2) * c_std(n - 1)

    @pytest.mark.parametrize("b", [-0.5, 1.5, 7.3])
    def test_rederivation_from_standard_recurrence_case_b(self, b):
        s = math.sqrt(b + 1)
        a, bb, c, d = 0.5, 0.5, 0.5 - s, 0.5 + s

        def a_std(k):
            return ((k + a + bb + c + d - 1) * (k + a + bb) * (k + a + c) * (k + a + d)
                    / ((2 * k + a + bb + c + d - 1) * (2 * k + a + bb + c + d)))

        def c_std(k):
            return (k * (k + bb + c - 1) * (k + bb + d - 1) * (k + c + d - 1)
                    / ((2 * k + a + bb + c + d - 2) * (2 * k + a + bb + c + d - 1)))

        fam = WilsonFamily.case_b(Fraction(b))
        for n in range(2, 10):
            beta, gamma = standard_recurrence_terms(fam, n)
            want_beta = -(a_std(n - 1) + c_std(n - 1) - 0.25)
            want_gamma = a_std(n - 2) * c_std(n - 1)
            assert abs(float(beta) - want_beta) < 1e-11 * max(1, abs(want_beta))
            assert abs(float(gamma) - want_gamma) < 1e-11 * max(1, abs(want_gamma))


class TestAdjudication:
    def test_printed_case_a_table_value(self):
        printed = monic_from_recurrence(CASE_A, 2, form="printed")
        assert printed[2] == RationalPolynomial([fr("57/20"), fr("-15/4"), 1])
        assert printed[2] != monic_from_hypergeometric(CASE_A, 2)

    def test_case_a_report(self):
        rep = recurrence_discrepancy_report(CASE_A)
        assert rep.first_table_mismatch == 2
        assert rep.printed_entry == RationalPolynomial([fr("57/20"), fr("-15/4"), 1])
        assert rep.oracle_entry == RationalPolynomial([fr("117/80"), fr("-7/2"), 1])
        # the printed recurrence applied at n=1 also contradicts its own seed
        assert rep.seed_consistency_mismatch_at_n1
        assert rep.recurrence_p1 == RationalPolynomial([-1, 1])

    def test_case_b_report_fails_at_n1(self):
        rep = recurrence_discrepancy_report(CASE_B_SYM)
        assert rep.seed_consistency_mismatch_at_n1
        # recurrence at n=1 gives x^2 - B/2 + 3/4 against the seed x^2 + B/2 + 1/4
        assert rep.recurrence_p1.coeffs[0] == RationalPolynomial([fr("3/4"), fr("-1/2")])
        assert "shifted" in rep.note


class TestMeasure:
    def test_weight_positive_and_decaying(self):
        for family in (CASE_A, CASE_B_32, WilsonFamily.case_b(Fraction(73, 10))):
            w = family_weight(family)
            xs = np.array([0.1, 0.5, 1.0, 3.0, 7.0])
            assert np.all(w.evaluate(xs) > 0)
            ratio = w.evaluate(np.array([21.0]))[0] / w.evaluate(np.array([20.0]))[0]
            # exponential rate 2*pi, modulo the slowly-varying polynomial factor
            assert abs(math.log(ratio) + 2 * math.pi) < 0.3

    def test_case_a_norms(self):
        assert norm_closed_form(CASE_A, 0) == fr("2/3")
        assert norm_closed_form(CASE_A, 1) == fr("2/5")
        assert norm_closed_form(CASE_A, 2) == fr("288/175")

    def test_case_a_norm_is_recurrence_product(self):
        acc = norm_closed_form(CASE_A, 0)
        for n in range(1, 9):
            _, gamma = standard_recurrence_terms(CASE_A, n + 1)
            acc *= gamma
            assert norm_closed_form(CASE_A, n) == acc

    def test_printed_norm_table_disagrees_for_positive_n(self):
        assert printed_norm_rhs(CASE_A, 0) == norm_closed_form(CASE_A, 0)
        for n in range(1, 7):
            printed, true = printed_norm_rhs(CASE_A, n), norm_closed_form(CASE_A, n)
            assert printed != true
            # the deviation factor
            assert printed == true * Fraction(
                math.factorial(n + 2) ** 2, 2 * math.factorial(2 * n + 2))

    def test_case_b_mass_points(self):
        w = family_weight(CASE_B_32)
        s = CASE_B_32.s_value()
        assert len(w.point_masses) == 2
        for j, pm in enumerate(w.point_masses):
            assert abs(pm.t - (s - 0.5 - j)) < 1e-14
            assert abs(pm.mass - 2 * math.pi ** 2 * pm.t / math.sin(math.pi * s) ** 2) < 1e-10
            assert pm.y == -pm.t * pm.t
        assert len(family_weight(WilsonFamily.case_b(Fraction(-1, 2))).point_masses) == 1
        assert len(family_weight(WilsonFamily.case_b(Fraction(73, 10))).point_masses) == 3

    @pytest.mark.parametrize("b", [Fraction(-1, 2), Fraction(3, 2), Fraction(73, 10)])
    def test_masses_solve_orthogonality(self, b):
        # independent oracle: masses recovered from the orthogonality
        # conditions <P_0, P_k> = 0 must match the closed form
        family = WilsonFamily.case_b(b)
        weight = family_weight(family)
        table = monic_from_recurrence(family, len(weight.point_masses))
        from paritywilson.expand import QuadratureConfig, integrate_semiinfinite, auto_cutoff

        k_count = len(weight.point_masses)
        rows, rhs = [], []
        for k in range(1, k_count + 1):
            poly = table[k]
            coeffs = poly.float_coeffs()

            def f(x, c=coeffs):
                u = x * x
                acc = np.zeros_like(u)
                for cc in reversed(c):
                    acc = acc * u + cc
                return weight.evaluate(x) * acc
            cont, _ = integrate_semiinfinite(
                f, QuadratureConfig(x_max=auto_cutoff(2 * k)), growth_degree=2 * k)
            rows.append([float(poly_eval(poly, pm.y)) for pm in weight.point_masses])
            rhs.append(-float(np.real(cont)))
        solved = np.linalg.solve(np.array(rows), np.array(rhs))
        for pm, m_solved in zip(weight.point_masses, solved):
            assert abs(pm.mass - m_solved) < 1e-8 * pm.mass

    def test_degenerate_norms_rejected(self):
        with pytest.raises(DegenerateFamily):
            weight_and_norm(WilsonFamily.case_b(0), 0)
        with pytest.raises(DegenerateFamily):
            WilsonFamily.case_b(-1)
        w, norm = weight_and_norm(CASE_A, 0)
        assert norm == fr("2/3") and not w.point_masses

    @pytest.mark.parametrize("family,n", [(CASE_A, 3), (CASE_B_32, 3)])
    def test_quadrature_matches_closed_norms(self, family, n):
        table = monic_from_recurrence(family, n)
        val, err = inner_product(family, table[n], table[n])
        want = float(norm_closed_form(family, n))
        assert abs(float(np.real(val)) - want) <= 1e-8 * want


class TestThreeRouteAgreement:
    def test_stieltjes_case_a(self):
        st_table = stieltjes_monic_table(CASE_A, 10)
        exact = monic_from_recurrence(CASE_A, 10)
        for n in range(11):
            want = np.array(exact[n].float_coeffs())
            got = st_table[n]
            rel = np.max(np.abs(got - want) / np.maximum(1.0, np.abs(want)))
            assert rel < 1e-8, (n, rel)

    def test_stieltjes_case_b(self):
        st_table = stieltjes_monic_table(CASE_B_32, 6)
        exact = monic_from_recurrence(CASE_B_32, 6)
        for n in range(7):
            want = np.array(exact[n].float_coeffs())
            rel = np.max(np.abs(st_table[n] - want) / np.maximum(1.0, np.abs(want)))
            assert rel < 1e-8, (n, rel)


class TestGeneratingFunctions:
    def test_t_zero_reduces_to_leading_prefactor(self):
        for ident in (1, 2, 3):
            rep = generating_function_check(CASE_A, ident, 0.5, 0.0, n_terms=5)
            assert rep.passed and abs(rep.lhs - rep.rhs) < 1e-13

    def test_case_a_first_identity(self):
        rep = generating_function_check(CASE_A, 1, 0.5, 0.1, n_terms=25)
        assert rep.passed and rep.abs_diff <= 1e-10 + rep.truncation_bound

    def test_doubled_truncation_cross_check(self):
        r25 = generating_function_check(CASE_A, 2, 0.9, 0.2, n_terms=25)
        r50 = generating_function_check(CASE_A, 2, 0.9, 0.2, n_terms=50)
        assert abs(r25.lhs - r50.lhs) <= r25.truncation_bound + 1e-13

    def test_printed_forms_fail(self):
        assert not generating_function_check(CASE_A, 1, 0.5, 0.1, form="printed").passed
        assert not generating_function_check(CASE_A, 3, 0.5, 0.1, form="printed").passed
        # identity 2 is correct as printed
        assert generating_function_check(CASE_A, 2, 0.5, 0.1, form="printed").passed

    def test_case_b_identities(self):
        for ident in (1, 2, 3):
            rep = generating_function_check(CASE_B_32, ident, 0.9, 0.2, n_terms=30)
            assert rep.passed, (ident, rep.abs_diff)

    def test_degenerate_b_rejected(self):
        with pytest.raises(DegenerateFamily):
            generating_function_check(WilsonFamily.case_b(3), 1, 0.5, 0.1)

    def test_t_domain_enforced(self):
        with pytest.raises(ValueError):
            generating_function_check(CASE_A, 1, 0.5, 0.4)


@given(st.fractions(min_value=-3, max_value=3, max_denominator=8))
@settings(max_examples=25, deadline=None)
def test_terminating_pfq_equals_horner_on_tables(z):
    # exact-arithmetic identity between the hypergeometric route and the
    # tabulated polynomials, over random rational arguments
    from paritywilson.numcore import hyp_pfq_terminating
    for n in range(1, 5):
        pref = Fraction(
            math.factorial(n - 1) * math.factorial(n) ** 2 * math.factorial(n + 1),
            math.factorial(2 * n))
        val = pref * hyp_pfq_terminating(
            [1 - n, n + 2, Fraction(1, 2) - z, Fraction(1, 2) + z], [1, 2, 2],
            Fraction(1), n - 1)
        g = alternating_reflect(monic_from_hypergeometric(CASE_A, n - 1), n - 1)
        assert val == poly_eval(g, z * z)
