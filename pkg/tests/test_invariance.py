""" Tests of geocesaro/invariance.py """
import pytest
from mpmath import mp

from geocesaro.errors import DomainError, ResolutionError
from geocesaro.invariance import (CORPUS, DILATION_CASES, Generator, apply_generator, apply_P, apply_P_inverse, corpus_function, dilation_invariance_check,
                                  hs_commutator_residual, log_grid, multiplication_interleaving, multiplication_interleaving_residual, q_tilde,
                                  sample, scaling_commutation_power_residual, scaling_commutation_residual, scaling_eigen_residual)

Z0 = mp.mpc(0.3, 0.4)


class Test_grid:  # pylint: disable=invalid-name,missing-class-docstring
    def setup_method(self, method):  # pylint: disable=unused-argument
        """ Called before each method.
            See: https://docs.pytest.org/en/6.2.x/xunit_setup.html """
        self.grid = log_grid(0.5, 50)  # pylint: disable=attribute-defined-outside-init

    def test_log_grid(self):
        """ The grid is geometric, from low to high. """
        assert len(self.grid) == 17  # nosec assert_used
        assert abs(self.grid[0] - 0.5) < 1e-15  # nosec assert_used
        assert abs(self.grid[-1] - 50) < 1e-12  # nosec assert_used

    def test_coarse(self):
        """ Fewer than five points per decade cannot resolve the operators. """
        with pytest.raises(ResolutionError):
            sample('identity', (1, 10))
        with pytest.raises(DomainError):
            sample('identity', (2, 1))
        with pytest.raises(DomainError):
            log_grid(1, 1)

    def test_unknown(self):
        """ Only the registered functions can be sampled. """
        with pytest.raises(DomainError):
            corpus_function('sine')
        assert 'oscillator' in CORPUS  # nosec assert_used


class Test_operators:  # pylint: disable=invalid-name,missing-class-docstring
    def setup_method(self, method):  # pylint: disable=unused-argument
        """ Called before each method.
            See: https://docs.pytest.org/en/6.2.x/xunit_setup.html """
        self.grid = log_grid(0.5, 50)  # pylint: disable=attribute-defined-outside-init

    def test_inverse(self):
        """ P^-1[t^2] = 3*t^2. """
        result = apply_P_inverse(sample('square', self.grid))
        assert result.source == 'P^-1(square)'  # nosec assert_used
        for t, value in zip(result.grid, result.values):
            assert abs(value - 3 * t ** 2) < 1e-10 * t ** 2  # nosec assert_used

    def test_generators(self):
        """ H_D[sqrt t] = sqrt(t)/2, H_S[t] = t*ln(t). """
        dilated = apply_generator(sample('sqrt', self.grid), Generator.DILATION)
        scaled = apply_generator(sample('identity', self.grid), Generator.SCALING)
        assert dilated.source == 'H_D(sqrt)'  # nosec assert_used
        assert scaled.source == 'H_S(identity)'  # nosec assert_used
        for t, value in zip(dilated.grid, dilated.values):
            assert abs(value - mp.sqrt(t) / 2) < 1e-12  # nosec assert_used
        for t, value in zip(scaled.grid, scaled.values):
            assert abs(value - t * mp.log(t)) < 1e-10  # nosec assert_used

    def test_average(self):
        """ P[t^2] = t^2/3, and P undoes P^-1 by quadrature. """
        averaged = apply_P(sample('square', self.grid))
        assert averaged.source == 'P(square)'  # nosec assert_used
        for t, value in zip(averaged.grid, averaged.values):
            assert abs(value - t ** 2 / 3) < 1e-12 * t ** 2  # nosec assert_used
        restored = apply_P(apply_P_inverse(sample('oscillator', self.grid)))
        for t, value in zip(restored.grid, restored.values):
            assert abs(value - mp.cos(mp.log(t))) < 1e-8  # nosec assert_used

    def test_not_integrable(self):
        """ 1/t has no average. """
        with pytest.raises(DomainError):
            apply_P(sample('reciprocal', self.grid))


class Test_scaling:  # pylint: disable=invalid-name,missing-class-docstring
    def test_q_tilde(self):
        """ q~(1) = 1 for every r. """
        assert q_tilde(2.5, 1) == 1  # nosec assert_used
        assert abs(q_tilde(mp.log(2), mp.mpf(1) / 3) - mp.mpf(2) / 3) < 1e-15  # nosec assert_used

    def test_commutation(self):
        """ P o S_r = q~(P) o S_r o P. """
        for fn_id in ('const', 'square', 'sqrt', 't-log-t', 'shifted-reciprocal'):
            assert scaling_commutation_residual(fn_id, 0.5, 2) < 1e-6  # nosec assert_used
        assert scaling_commutation_residual('oscillator', -0.3, 1.5) < 1e-6  # nosec assert_used

    def test_commutation_power(self):
        """ P^2 o S_r = q~(P)^2 o S_r o P^2. """
        assert scaling_commutation_power_residual('identity', 0.4, 3, 2) < 1e-6  # nosec assert_used

    def test_commutation_errors(self):
        """ n in 1..3, t > 0, and f integrable at 0. """
        with pytest.raises(DomainError):
            scaling_commutation_power_residual('identity', 0.4, 3, 4)
        with pytest.raises(DomainError):
            scaling_commutation_residual('identity', 0.4, 0)
        with pytest.raises(DomainError):
            scaling_commutation_residual('reciprocal', 0.4, 2)

    def test_eigen(self):
        """ z^rho*(ln z)^m composed with t^r is r^m*z^(r*rho)*(ln z)^m. """
        assert scaling_eigen_residual(0.5, 1, 2, log_grid(1, 10)) < 1e-12  # nosec assert_used
        assert scaling_eigen_residual(mp.mpc(-0.5, 1), 2, 0.7, log_grid(0.5, 5)) < 1e-12  # nosec assert_used
        with pytest.raises(ResolutionError):
            scaling_eigen_residual(0.5, 1, 2, (1, 100))


class Test_hs_commutator:  # pylint: disable=invalid-name,missing-class-docstring
    def test_residual(self):
        """ [P^-1, H_S^n] = ((H_S + 1)^n - H_S^n) H_D. """
        assert hs_commutator_residual('square', 2, 1) < 1e-8  # nosec assert_used
        assert hs_commutator_residual('oscillator', 1.5, 2) < 1e-6  # nosec assert_used
        assert hs_commutator_residual('t-log-t', 3, 3) < 1e-6  # nosec assert_used

    def test_errors(self):
        """ n in 1..3 and t > 0. """
        with pytest.raises(DomainError):
            hs_commutator_residual('square', 2, 0)
        with pytest.raises(DomainError):
            hs_commutator_residual('square', -1, 1)


class Test_dilation:  # pylint: disable=invalid-name,missing-class-docstring
    def test_identity(self):
        """ r = 1 leaves the sum unchanged. """
        assert dilation_invariance_check('zeta-s0', 1) == 0  # nosec assert_used

    def test_power(self):
        """ The limit of the dilated lattice is r^-s times the original one. """
        for r in (0.5, 2, 3):
            assert dilation_invariance_check('zeta-s0', r) < 1e-9  # nosec assert_used

    def test_log(self):
        """ ln(r*z) = ln r + ln z, the extra terms are stripped with the others. """
        for r in (0.5, 2, 3):
            assert dilation_invariance_check('log-gamma', r) < 1e-9  # nosec assert_used

    def test_cases(self):
        """ Every dilation case is probed at the default tolerance. """
        assert all(case.probe_tol == 1e-8 for case in DILATION_CASES.values())  # nosec assert_used

    def test_range(self):
        """ r is kept in [0.1, 10]. """
        with pytest.raises(DomainError):
            dilation_invariance_check('zeta-s0', 20)


class Test_multiplication_interleaving:  # pylint: disable=invalid-name,missing-class-docstring
    def test_trace(self):
        """ The n sub-lattices interleave into the p-sum of ln(z0 + m). """
        trace, labels = multiplication_interleaving(0.5, 3, 30)
        assert labels[:4] == (1, 2, 3, 1)  # nosec assert_used
        assert len(labels) == 30  # nosec assert_used
        expected = mp.fsum(mp.log(0.5 + m) for m in range(1, 31))
        assert abs(trace.value_at(30) - expected) < 1e-12  # nosec assert_used

    def test_residual(self):
        """ The sub-lattice remainders add up to R+[ln](z0) + (z0 + 1/2)*ln n. """
        assert multiplication_interleaving_residual(Z0, 3) < 1e-10  # nosec assert_used
        assert multiplication_interleaving_residual(0.5, 2) < 1e-10  # nosec assert_used
        with pytest.raises(DomainError):
            multiplication_interleaving_residual(Z0, 0)
