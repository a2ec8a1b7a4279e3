""" Tests of geocesaro/special_functions.py """
import pytest
from mpmath import mp

from geocesaro.errors import DomainError, ExcludedCaseError, PoleError
from geocesaro.remainder_ops import strip_index
from geocesaro.special_functions import (b_derivative_residual, b_polynomial, euler_gamma_cesaro, gamma, gamma_multiplication_residual,
                                         gamma_recurrence_residual, gamma_reflection_residual, gamma_staircase_derivative, gamma_staircase_trace,
                                         gamma_taylor_coeff, gamma_taylor_series, hurwitz_coprime_special_value, hurwitz_duplication_residual,
                                         hurwitz_integral_identity, hurwitz_prime_special_value, hurwitz_zeta, log_gamma, plain_log_constant,
                                         riemann_zeta)

Z0 = mp.mpc(0.3, 0.4)


class Test_zeta:  # pylint: disable=invalid-name,missing-class-docstring
    def test_riemann(self):
        """ zeta(-1) = -1/12, zeta(2) = pi^2/6, and a value on the critical line. """
        assert abs(riemann_zeta(-1) + mp.mpf(1) / 12) < 1e-12  # nosec assert_used
        assert abs(riemann_zeta(2) - mp.pi ** 2 / 6) < 1e-12  # nosec assert_used
        assert abs(riemann_zeta(mp.mpc(0.5, 14)) - mp.zeta(mp.mpc(0.5, 14))) < 1e-8  # nosec assert_used

    def test_hurwitz(self):
        """ The summation starts at n = 1: zeta_H(z0; s) = zeta(s, z0 + 1). """
        for s in (mp.mpf(0.5), mp.mpc(-1.5, 2), mp.mpf(3)):
            result = hurwitz_zeta(Z0, s)
            assert abs(result.value - mp.zeta(s, Z0 + 1)) < 1e-10  # nosec assert_used
            assert result.strip_index >= 12  # nosec assert_used
        assert abs(hurwitz_zeta(0.5, 0).value + 1) < 1e-12  # nosec assert_used

    def test_pole(self):
        """ s = 1 is a pole. """
        with pytest.raises(PoleError):
            hurwitz_zeta(Z0, 1)

    def test_cesaro_method(self):
        """ clim of the stripped trace gives the same zeta_H as the Euler-Maclaurin constant. """
        for s in (mp.mpf(0), mp.mpf(-1), mp.mpf(0.5), mp.mpc(-1.5, 0.5), mp.mpf(2)):
            averaged = hurwitz_zeta(Z0, s, method='cesaro')
            assert averaged.outcome is not None  # nosec assert_used
            assert averaged.outcome.tail_estimate >= 0  # nosec assert_used
            assert abs(averaged.value - hurwitz_zeta(Z0, s).value) < 1e-7  # nosec assert_used

    def test_unknown_method(self):
        """ Only the accelerated and cesaro methods exist. """
        with pytest.raises(DomainError):
            hurwitz_zeta(Z0, 2, method='lattice')
        with pytest.raises(DomainError):
            log_gamma(Z0, method='plain')

    def test_strip_continuity(self):
        """ One more Bernoulli correction than the strip of s needs changes nothing, across Re s = 1, 0, -1. """
        for s in (mp.mpc(1, 0.5), mp.mpc(0, 0.5), mp.mpf(-1), mp.mpc(-1, 0.5)):
            order = strip_index(s, zeta_order=4)
            low = hurwitz_zeta(Z0, s, order=order).value
            high = hurwitz_zeta(Z0, s, order=order + 1).value
            assert abs(low - high) < 1e-9  # nosec assert_used


class Test_b_polynomial:  # pylint: disable=invalid-name,missing-class-docstring
    def test_values(self):
        """ b_2(3) = 1 + 2 + 3, and b_3(z) = z(z+1)(2z+1)/6 off the integers. """
        assert abs(b_polynomial(2, 3) - 6) < 1e-12  # nosec assert_used
        assert abs(b_polynomial(3, 0.5) - mp.mpf(1) / 4) < 1e-12  # nosec assert_used

    def test_derivative(self):
        """ b_n' = (n-1)*(b_(n-1) - zeta(2-n)). """
        assert b_derivative_residual(3, Z0) < 1e-6  # nosec assert_used
        assert b_derivative_residual(4, 0.7) < 1e-6  # nosec assert_used

    def test_errors(self):
        """ n is a positive integer, and the step is small. """
        with pytest.raises(DomainError):
            b_polynomial(0, 1)
        with pytest.raises(DomainError):
            b_derivative_residual(1, 1)
        with pytest.raises(DomainError):
            b_derivative_residual(3, 1, h=0.1)


class Test_gamma:  # pylint: disable=invalid-name,missing-class-docstring
    def test_log_gamma(self):
        """ ln Gamma(z0 + 1) agrees with mpmath. """
        for z0 in (mp.mpf(0.5), Z0, mp.mpf(10)):
            result = log_gamma(z0)
            assert abs(result.log_value - mp.loggamma(z0 + 1)) < 1e-10  # nosec assert_used
            assert result.order_used == 3  # nosec assert_used

    def test_plain_constant(self):
        """ The plain formula, summed in double precision, agrees with the accelerated constant. """
        for z0 in (mp.mpf(0.5), Z0, mp.mpc(-0.9, 2.5), mp.mpf(3.7)):
            accelerated = log_gamma(z0).c_z0
            for k in (10 ** 4, 3 * 10 ** 4):
                assert abs(plain_log_constant(z0, k) - accelerated) < 1e-10  # nosec assert_used

    def test_plain_constant_domain(self):
        """ The direct head of the plain formula stays off the poles and the branch cut. """
        with pytest.raises(PoleError):
            plain_log_constant(-2)
        with pytest.raises(DomainError):
            plain_log_constant(-7.5)
        with pytest.raises(DomainError):
            plain_log_constant(0.5, k=8)

    def test_log_gamma_cesaro(self):
        """ c_z0 as clim of the stripped trace of ln z matches the accelerated constant. """
        for z0 in (mp.mpf(0.5), mp.mpc(0.3, 0.7)):
            averaged = log_gamma(z0, method='cesaro')
            assert averaged.outcome.averaging_power == 1  # nosec assert_used
            assert abs(averaged.c_z0 - log_gamma(z0).c_z0) < 1e-7  # nosec assert_used
            assert abs(averaged.log_value - mp.loggamma(z0 + 1)) < 1e-7  # nosec assert_used

    def test_values(self):
        """ Gamma(3) = 2, Gamma(1/2) = sqrt(pi), Gamma(-1/2) = -2*sqrt(pi). """
        assert abs(gamma(3) - 2) < 1e-12  # nosec assert_used
        assert abs(gamma(0.5) - mp.sqrt(mp.pi)) < 1e-12  # nosec assert_used
        assert abs(gamma(-0.5) + 2 * mp.sqrt(mp.pi)) < 1e-9  # nosec assert_used

    def test_poles(self):
        """ Gamma has poles at 0, -1, -2... """
        for z in (0, -2):
            with pytest.raises(PoleError):
                gamma(z)
        with pytest.raises(PoleError):
            log_gamma(-1)

    def test_identities(self):
        """ The recurrence, the reflection and the multiplication formulas hold. """
        assert gamma_recurrence_residual(Z0) < 1e-10  # nosec assert_used
        assert gamma_reflection_residual(Z0) < 1e-10  # nosec assert_used
        assert gamma_multiplication_residual(0.3, 3) < 1e-10  # nosec assert_used
        assert gamma_multiplication_residual(Z0, 2) < 1e-10  # nosec assert_used
        with pytest.raises(DomainError):
            gamma_multiplication_residual(Z0, 0)


class Test_staircase:  # pylint: disable=invalid-name,missing-class-docstring
    def test_trace(self):
        """ The spike of width h carries ln(j), the naive trace none. """
        trace = gamma_staircase_trace(0.25, 4)
        assert abs(trace.value_at(2.1) - (4 * mp.log(2) - 1)) < 1e-12  # nosec assert_used
        assert abs(trace.value_at(2.5) + mp.mpf(3) / 2) < 1e-12  # nosec assert_used
        naive = gamma_staircase_trace(0.25, 4, naive=True)
        assert abs(naive.value_at(2.1) + mp.mpf(3) / 2) < 1e-12  # nosec assert_used

    def test_derivative(self):
        """ P of the staircase at T approaches Gamma'(1) = -gamma. """
        assert abs(gamma_staircase_derivative(1e-3, 4096) + mp.euler) < 5e-3  # nosec assert_used

    def test_cesaro(self):
        """ The generalised Cesaro limit of the staircase is -gamma. """
        assert abs(euler_gamma_cesaro() + mp.euler) < 1e-7  # nosec assert_used

    def test_errors(self):
        """ 0 < h < 1 and T >= 100. """
        with pytest.raises(DomainError):
            gamma_staircase_trace(1, 10)
        with pytest.raises(DomainError):
            gamma_staircase_derivative(1e-3, 50)


class Test_taylor:  # pylint: disable=invalid-name,missing-class-docstring
    def test_coefficients(self):
        """ The first coefficient is -gamma, then (-1)^n*zeta(n)/n. """
        assert abs(gamma_taylor_coeff(1) + mp.euler) < 1e-7  # nosec assert_used
        assert abs(gamma_taylor_coeff(2) - mp.pi ** 2 / 12) < 1e-12  # nosec assert_used
        with pytest.raises(DomainError):
            gamma_taylor_coeff(0)

    def test_series(self):
        """ The series converges to ln Gamma(z + 1) inside the unit disk only. """
        assert abs(gamma_taylor_series(0.5) - mp.loggamma(1.5)) < 1e-6  # nosec assert_used
        with pytest.raises(DomainError):
            gamma_taylor_series(1)


class Test_hurwitz_identities:  # pylint: disable=invalid-name,missing-class-docstring
    def test_integral(self):
        """ The integral of zeta_H(z; s) over [-1, 0] vanishes. """
        assert abs(hurwitz_integral_identity(0.5)) < 1e-8  # nosec assert_used
        assert abs(hurwitz_integral_identity(mp.mpc(-0.5, 3))) < 1e-8  # nosec assert_used
        with pytest.raises(ExcludedCaseError):
            hurwitz_integral_identity(1)
        with pytest.raises(DomainError):
            hurwitz_integral_identity(0.5, quad_points=8)

    def test_prime(self):
        """ The sum over j/p gives (p^s - 1)*zeta(s). """
        assert abs(hurwitz_prime_special_value(3, 2) - 8 * mp.zeta(2)) < 1e-9  # nosec assert_used
        with pytest.raises(DomainError):
            hurwitz_prime_special_value(4, 2)

    def test_coprime(self):
        """ The sum over j/pq coprime to pq gives ((pq)^s - p^s - q^s + 1)*zeta(s). """
        assert abs(hurwitz_coprime_special_value(2, 3, 2) - 24 * mp.zeta(2)) < 1e-9  # nosec assert_used
        with pytest.raises(DomainError):
            hurwitz_coprime_special_value(3, 3, 2)

    def test_duplication(self):
        """ zeta_H(z; s) splits into n interleaved sums. """
        assert hurwitz_duplication_residual(Z0, 2, 2) < 1e-10  # nosec assert_used
        assert hurwitz_duplication_residual(Z0, mp.mpc(0.5, 1), 3) < 1e-10  # nosec assert_used
