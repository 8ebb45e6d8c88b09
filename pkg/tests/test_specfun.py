"""Special-function engine against closed forms and independent summation."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import mp

import oracles
from cmcheck import (
    DEFAULT_PRECISION,
    CoeffTable,
    NumericFailure,
    WorkingPrecision,
    a_coeff,
    bessel_i,
    exp_recip_derivative,
    hyp1f2,
    polygamma,
    shifted_factorial,
    to_mpf,
)

PREC = DEFAULT_PRECISION

# frozen from mpmath's Hurwitz-zeta / Bessel / hypergeometric routes at 80 dps
PSI1_ONE_THIRD = "10.095597125427094081792004099892516360518904119281"
PSI2_FIVE_HALVES = "-0.23620405164172740300374166856770727811721550017439"
PSI9_TWO = "360.9114223826268071435255657477648911443676141176"
BESSEL_I3_2P5 = "0.47437040877803558955482401786933145126791733118761"
HYP1F2_2_3_1P7 = "1.3270854321926317305435201929450351275290628425544"


def assert_close(value, reference, rel="1e-45"):
    with mp.workdps(80):
        want = mp.mpf(reference)
        assert abs(value - want) <= mp.mpf(rel) * abs(want), (
            mp.nstr(value, 30),
            mp.nstr(want, 30),
        )


class TestWorkingPrecision:
    def test_digit_floor(self):
        with pytest.raises(ValueError):
            WorkingPrecision(29)
        WorkingPrecision(30)

    def test_derived_fields(self):
        prec = WorkingPrecision(50)
        assert prec.working_dps == 65
        with mp.workdps(70):
            assert prec.series_stop == mp.mpf(10) ** -55
            assert prec.noise_floor == mp.mpf(10) ** -35

    def test_context_restores_dps(self):
        before = mp.dps
        with PREC.workdps():
            assert mp.dps == PREC.working_dps
        assert mp.dps == before

    def test_to_mpf_exact_inputs(self):
        with PREC.workdps():
            assert to_mpf(3) == 3
            assert to_mpf("0.5") == mp.mpf(1) / 2
            assert to_mpf(Fraction(1, 4)) == mp.mpf(1) / 4
            assert to_mpf(0.25) == mp.mpf(1) / 4
        with pytest.raises(ValueError):
            to_mpf("not a number")
        with pytest.raises(ValueError):
            to_mpf(1j)


class TestPolygamma:
    def test_trigamma_closed_forms(self):
        with mp.workdps(70):
            assert_close(polygamma(1, 1, PREC), mp.pi ** 2 / 6, rel="1e-48")
            assert_close(polygamma(1, "0.5", PREC), mp.pi ** 2 / 2, rel="1e-48")
            assert_close(polygamma(2, 1, PREC), -2 * mp.zeta(3), rel="1e-48")

    def test_frozen_values(self):
        assert_close(polygamma(1, Fraction(1, 3), PREC), PSI1_ONE_THIRD)
        assert_close(polygamma(2, "2.5", PREC), PSI2_FIVE_HALVES)
        assert_close(polygamma(9, 2, PREC), PSI9_TWO)

    def test_summation_bracket_oracle(self):
        for n, t in ((1, 1), (2, "0.5"), (3, "7.25")):
            lo, hi = oracles.polygamma_sum_bracket(n, t, terms=20000)
            value = polygamma(n, t, PREC)
            assert lo <= value <= hi

    def test_quadrature_oracle(self):
        for n, t in ((1, "1.5"), (2, 3)):
            ref = oracles.polygamma_quad(n, t)
            assert_close(polygamma(n, t, PREC), ref, rel="1e-40")

    def test_reflection_identity(self):
        # psi'(x) + psi'(1-x) = pi^2 / sin^2(pi x); at x = 1/4 this is 2 pi^2
        with mp.workdps(70):
            total = polygamma(1, "0.25", PREC) + polygamma(1, "0.75", PREC)
            assert_close(total, 2 * mp.pi ** 2, rel="1e-48")

    def test_recurrence_residual(self):
        with PREC.workdps():
            for n in (1, 2, 3):
                for t in (mp.mpf("0.1"), mp.mpf(1), mp.mpf(25), mp.mpf(100)):
                    scale = mp.factorial(n) / t ** (n + 1)
                    residual = (
                        polygamma(n, t + 1, PREC)
                        - polygamma(n, t, PREC)
                        - (-1) ** n * scale
                    )
                    assert abs(residual) < mp.mpf("1e-40") * scale

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            polygamma(0, 1, PREC)
        with pytest.raises(ValueError):
            polygamma(1, 0, PREC)
        with pytest.raises(ValueError):
            polygamma(1, -2, PREC)

    @settings(deadline=None, max_examples=25)
    @given(
        n=st.integers(min_value=1, max_value=5),
        t=st.floats(min_value=0.1, max_value=50),
    )
    def test_recurrence_property(self, n, t):
        with PREC.workdps():
            tt = to_mpf(t)
            scale = mp.factorial(n) / tt ** (n + 1)
            residual = (
                polygamma(n, tt + 1, PREC)
                - polygamma(n, tt, PREC)
                - (-1) ** n * scale
            )
            assert abs(residual) < mp.mpf("1e-40") * scale


class TestShiftedFactorial:
    def test_exact_integers(self):
        assert shifted_factorial(3, 4) == 360
        assert shifted_factorial(1, 5) == 120
        assert shifted_factorial(7, 0) == 1

    def test_exact_fractions(self):
        assert shifted_factorial(Fraction(1, 2), 3) == Fraction(15, 8)
        assert shifted_factorial(Fraction(-3, 2), 2) == Fraction(3, 4)

    def test_float_route(self):
        with PREC.workdps():
            value = shifted_factorial("2.5", 3, PREC)
            assert_close(value, mp.mpf("39.375"), rel="1e-48")

    def test_negative_length_rejected(self):
        with pytest.raises(ValueError):
            shifted_factorial(2, -1)


class TestLaurentCoefficients:
    def test_first_rows(self):
        # rows a_{i,.} of (e^(1/t))^(i) = (-1)^i e^(1/t) t^(-2i) sum_k a_{i,k} t^k
        assert [a_coeff(1, k) for k in range(1)] == [1]
        assert [a_coeff(2, k) for k in range(2)] == [1, 2]
        assert [a_coeff(3, k) for k in range(3)] == [1, 6, 6]
        assert [a_coeff(4, k) for k in range(4)] == [1, 12, 36, 24]

    def test_structural_endpoints(self):
        from math import factorial

        for i in range(1, 10):
            assert a_coeff(i, 0) == 1
            assert a_coeff(i, i - 1) == factorial(i)

    def test_against_exact_recursion(self):
        # c[2i-k] = (-1)^i a_{i,k} links the two exact representations
        assert oracles.exp_recip_poly(0) == [Fraction(1)]
        for i in range(1, 9):
            poly = oracles.exp_recip_poly(i)
            for k in range(i):
                assert (-1) ** i * a_coeff(i, k) == poly[2 * i - k]

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            a_coeff(0, 0)
        with pytest.raises(ValueError):
            a_coeff(2, 2)

    def test_table_consistency(self):
        table = CoeffTable.up_to(6)
        assert table.max_order == 6
        assert table.row(3) == (1, 6, 6)
        assert table.rows[2] == (1, 6, 6)
        assert table.row(6) == tuple(a_coeff(6, k) for k in range(6))
        with pytest.raises(ValueError):
            table.row(7)
        with pytest.raises(ValueError):
            CoeffTable.up_to(0)


class TestExpRecipDerivative:
    def test_closed_forms(self):
        with PREC.workdps():
            t = mp.mpf(2)
            assert_close(exp_recip_derivative(0, 2, PREC), mp.exp(1 / t), rel="1e-48")
            assert_close(
                exp_recip_derivative(1, 2, PREC), -mp.exp(1 / t) / t ** 2, rel="1e-48"
            )
            # i = 3 polynomial is 1 + 6t + 6t^2 -> 37 at t = 2, sign (-1)^3
            assert_close(
                exp_recip_derivative(3, 2, PREC),
                -mp.exp(1 / t) * 37 / 64,
                rel="1e-48",
            )

    def test_central_difference(self):
        # the stencil's O(h^2) truncation sits near 1e-20, so compare at 1e-15
        for i in (1, 2, 3):
            for t in ("0.8", 2):
                ref = oracles.central_difference(lambda u: mp.exp(1 / u), i, t)
                assert_close(exp_recip_derivative(i, t, PREC), ref, rel="1e-15")

    def test_alternating_sign(self):
        with PREC.workdps():
            for i in range(9):
                value = exp_recip_derivative(i, "0.7", PREC)
                assert (-1) ** i * value > 0

    def test_domain(self):
        with pytest.raises(ValueError):
            exp_recip_derivative(-1, 1, PREC)
        with pytest.raises(ValueError):
            exp_recip_derivative(2, 0, PREC)


class TestBesselI:
    def test_frozen_value(self):
        assert_close(bessel_i(3, "2.5", PREC), BESSEL_I3_2P5)

    def test_small_argument(self):
        # I_nu(z) ~ (z/2)^nu / nu! as z -> 0
        with PREC.workdps():
            z = mp.mpf("1e-8")
            lead = (z / 2) ** 2 / 2
            assert abs(bessel_i(2, z, PREC) / lead - 1) < mp.mpf("1e-15")

    def test_partial_sum_oracle(self):
        for nu, z in ((0, 1), (1, "0.3"), (4, 10), (2, 30)):
            ref = oracles.bessel_partial(nu, z, terms=120, dps=80)
            assert_close(bessel_i(nu, z, PREC), ref, rel="1e-40")

    def test_domain(self):
        with pytest.raises(ValueError):
            bessel_i(-1, 1, PREC)
        with pytest.raises(ValueError):
            bessel_i(1, -2, PREC)
        assert bessel_i(0, 0, PREC) == 1
        assert bessel_i(1, 0, PREC) == 0

    @settings(deadline=None, max_examples=25)
    @given(
        nu=st.integers(min_value=1, max_value=8),
        z=st.floats(min_value=0.01, max_value=30),
    )
    def test_recurrence_property(self, nu, z):
        # I_{nu-1}(z) - I_{nu+1}(z) = (2 nu / z) I_nu(z)
        with PREC.workdps():
            zz = to_mpf(z)
            lhs = bessel_i(nu - 1, zz, PREC) - bessel_i(nu + 1, zz, PREC)
            rhs = 2 * nu / zz * bessel_i(nu, zz, PREC)
            assert abs(lhs - rhs) <= mp.mpf("1e-40") * abs(rhs)


class TestHyp1F2:
    def test_frozen_value(self):
        assert_close(hyp1f2(2, 3, "1.7", PREC), HYP1F2_2_3_1P7)

    def test_partial_sum_oracle(self):
        for b1, b2, t in ((1, 2, 1), (3, 5, "0.25"), (2, 3, 40)):
            ref = oracles.hyp1f2_partial(b1, b2, t, terms=150, dps=80)
            assert_close(hyp1f2(b1, b2, t, PREC), ref, rel="1e-40")

    def test_unit_value_at_zero_argument(self):
        with PREC.workdps():
            assert abs(hyp1f2(4, 7, "1e-60", PREC) - 1) < mp.mpf("1e-55")

    def test_domain(self):
        with pytest.raises(ValueError):
            hyp1f2(0, 2, 1, PREC)
        with pytest.raises(ValueError):
            hyp1f2(2, -3, 1, PREC)


class TestNumericFailure:
    def test_carries_operation_and_inputs(self):
        err = NumericFailure("some_op", "went sideways", alpha=3, t="0.5")
        text = str(err)
        assert "some_op" in text
        assert "went sideways" in text
        assert "alpha=3" in text
        assert isinstance(err, ArithmeticError)
