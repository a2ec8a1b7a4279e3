""" This module defines the verification suites that can be grouped and run.

    A suite is a family of identities checked on a fixed list of cases, plus a few
    random ones drawn from the configured seed. Every case computes a residual that
    must stay below its tolerance. The cases run in case-id order, so that two runs
    with the same seed print the same report.
"""

import cmath
import dataclasses
import logging
import math
import random

from mpmath import mp

from geocesaro.cesaro_core import LimitProbe, clim
from geocesaro.config import RunConfig
from geocesaro.errors import CesaroError, NotCesaroSummable
from geocesaro.functional_equations import (bidirectional_log_closed_form, bidirectional_log_via_remainders, bidirectional_zeta_half_residual,
                                            verify_log_reflection, verify_minus_reflection, zeta_functional_equation_residual)
from geocesaro.invariance import (DILATION_CASES, dilation_invariance_check, log_grid, multiplication_interleaving_residual, q_tilde,
                                  scaling_commutation_power_residual, scaling_commutation_residual, scaling_eigen_residual)
from geocesaro.remainder_ops import DirectionSpec, Log, Power, remainder_sum, remainder_value
from geocesaro.special_functions import (b_derivative_residual, euler_gamma_cesaro, gamma_multiplication_residual, gamma_reflection_residual,
                                         gamma_staircase_derivative, gamma_staircase_trace, gamma_taylor_series, hurwitz_coprime_special_value,
                                         hurwitz_duplication_residual, hurwitz_integral_identity, hurwitz_prime_special_value,
                                         hurwitz_zeta, log_gamma, plain_log_constant, STAIRCASE_RESOLUTION)
from geocesaro.values import format_complex, precision_guard

# The staircase average at T is off by O(ln(T)/T), about 5e-4 at T = 10^4, whatever the tolerance.
STAIRCASE_T = 10 ** 4
STAIRCASE_BOUND = 1e-3


@dataclasses.dataclass(frozen=True)
class SuiteCase:
    """ One check of a suite: 'check' returns the residual. """
    case_id: str
    check: object
    tol: float


@dataclasses.dataclass(frozen=True)
class CaseResult:
    """ The outcome of one case. """
    suite: str
    case: str
    residual: float
    tol: float
    passed: bool

    def as_row(self):
        """ The JSON row of the case. """
        return {'suite': self.suite, 'case': self.case, 'residual': self.residual, 'tol': self.tol, 'pass': self.passed}


def relative_gap(value, expected):
    """ |value - expected| / max(1, |expected|). """
    return abs(value - expected) / max(1, abs(expected))


class VerificationSuite:
    """ The VerificationSuite class represents a configurable family of checks. """
    name = 'suite'
    description = ''

    def __init__(self):
        self.config = RunConfig()

    def reload(self, config):
        """ Store the config object in a config attribute.
            The next run() takes it into account. """
        self.config = config

    def random(self):
        """ A random generator seeded from the configuration, and from the suite name. """
        return random.Random(f'{self.config.seed}:{self.name}')

    def tolerance(self, scale=1):
        """ The tolerance of a case: the configured tol, scaled to the accuracy of the identity. """
        return self.config.tol * scale

    def probe(self):
        """ The LimitProbe of the configuration. """
        return LimitProbe(base=self.config.probe_base, levels=self.config.probe_levels, tol=self.config.tol)

    def cases(self):
        """ The SuiteCase list of the suite. """
        return []

    def run(self):
        """ Run every case, in case-id order, and return the CaseResult list. """
        results = []
        with precision_guard():
            for case in sorted(self.cases(), key=lambda case: case.case_id):
                try:
                    residual = float(case.check())
                except CesaroError as exp:
                    logging.error('%s/%s failed: %s', self.name, case.case_id, exp)
                    residual = float('inf')
                passed = residual <= case.tol
                logging.info('%s/%s: residual %.3e, tol %.1e, %s', self.name, case.case_id, residual, case.tol, 'pass' if passed else 'FAIL')
                results.append(CaseResult(self.name, case.case_id, residual, case.tol, passed))
        return results


class SuiteGroup(VerificationSuite):
    """ The SuiteGroup class is propagating its calls to all its children. """
    name = 'group'

    def __init__(self, *suites):
        VerificationSuite.__init__(self)
        self.suites = suites

    def reload(self, config):
        for suite in self.suites:
            suite.reload(config)
        VerificationSuite.reload(self, config)

    def run(self):
        results = []
        for suite in self.suites:
            results.extend(suite.run())
        return results


def _tag(value):
    return format_complex(value, 6).replace(' ', '')


def _in_disk(rng, radius):
    """ A point drawn uniformly in the disk |z| <= radius. """
    return mp.mpc(cmath.rect(radius * math.sqrt(rng.random()), rng.uniform(-math.pi, math.pi)))


class ZetaValuesSuite(VerificationSuite):
    """ zeta and zeta_H: known values, closed forms at s = 0 and s = -1, and mpmath. """
    name = 'zeta-values'
    description = 'zeta(s) at known points and trivial zeros, zeta_H(z0; 0) and zeta_H(z0; -1) in closed form, zeta_H against mpmath.zeta'

    def hurwitz(self, z0, s):
        """ zeta_H(z0; s) with the configured k and strip floor. """
        return hurwitz_zeta(z0, s, self.config.k_default, zeta_order=self.config.zeta_order).value

    def cases(self):
        known = [(-1, mp.mpf(-1) / 12), (0, mp.mpf(-1) / 2), (-3, mp.mpf(1) / 120), (2, mp.pi ** 2 / 6)]
        cases = [SuiteCase(f'zeta({s})', lambda s=s, e=e: relative_gap(self.hurwitz(0, s), e), self.tolerance(0.01)) for s, e in known]
        cases += [SuiteCase(f'zeta({s})=0', lambda s=s: abs(self.hurwitz(0, s)), self.tolerance(0.1)) for s in (-2, -4)]
        cases.append(SuiteCase('zeta_H(0.5;0)', lambda: relative_gap(self.hurwitz(0.5, 0), -1), self.tolerance(0.01)))
        rng = self.random()
        for index in range(20):
            z0 = _in_disk(rng, 3)
            cases.append(SuiteCase(f's=0:{index:02}', lambda z0=z0: abs(self.hurwitz(z0, 0) + z0 + mp.mpf(1) / 2), self.tolerance(0.1)))
            cases.append(SuiteCase(f's=-1:{index:02}', lambda z0=z0: abs(self.hurwitz(z0, -1) + z0 ** 2 / 2 + z0 / 2 + mp.mpf(1) / 12),
                                   self.tolerance(0.1)))
        for index in range(3):
            z0 = mp.mpc(rng.uniform(0, 2), rng.uniform(-1, 1))
            s = mp.mpc(rng.uniform(-3, 3), rng.uniform(-2, 2))
            cases.append(SuiteCase(f'mpmath-{index}', lambda z0=z0, s=s: relative_gap(self.hurwitz(z0, s), mp.zeta(s, z0 + 1)), self.tolerance(0.1)))
        return cases


class ReflectionSuite(VerificationSuite):
    """ Gamma(z)*Gamma(1-z) = pi/sin(pi*z) and the logarithmic reflections. """
    name = 'reflection'
    description = 'Gamma(z)*Gamma(1-z) = pi/sin(pi*z), and the reflections of R+,0[ln] and R-[ln]'

    def cases(self):
        rng = self.random()
        fixed = [mp.mpf(0.3), mp.mpf(0.5), mp.mpc(0.3, 0.7)]
        points = fixed + [mp.mpc(rng.uniform(-2.5, 2.5), rng.choice((-1, 1)) * rng.uniform(0.1, 1.5)) for _ in range(20)]
        strip = fixed + [mp.mpc(rng.uniform(0.05, 0.95), rng.uniform(0.1, 1.5)) for _ in range(20)]
        cases = [SuiteCase(f'gamma:{_tag(z)}', lambda z=z: gamma_reflection_residual(z), self.tolerance()) for z in points]
        for z in strip:
            cases.append(SuiteCase(f'log:{_tag(z)}', lambda z=z: verify_log_reflection(z), self.tolerance()))
            cases.append(SuiteCase(f'minus:{_tag(z)}', lambda z=z: verify_minus_reflection(z), self.tolerance()))
        return cases


class MultiplicationSuite(VerificationSuite):
    """ The Gauss multiplication formula of Gamma. """
    name = 'multiplication'
    description = '(2*pi)^((n-1)/2) * Gamma(z0+1) = n^(z0+1/2) * product of Gamma((z0+l)/n)'

    def cases(self):
        rng = self.random()
        cases = []
        for _ in range(10):
            z0 = mp.mpc(rng.uniform(-0.9, 3), rng.uniform(-2, 2))
            for n in (2, 3, 4):
                cases.append(SuiteCase(f'gamma:{_tag(z0)}:n={n}', lambda z0=z0, n=n: gamma_multiplication_residual(z0, n), self.tolerance()))
            cases.append(SuiteCase(f'interleave:{_tag(z0)}', lambda z0=z0: multiplication_interleaving_residual(z0, 2), self.tolerance()))
        return cases


class DuplicationSuite(VerificationSuite):
    """ The multiplication formula of zeta_H. """
    name = 'duplication'
    description = 'zeta_H(z; s) = n^-s * sum of zeta_H(z/n - (n-j)/n; s)'

    def cases(self):
        rng = self.random()
        cases = []
        for _ in range(10):
            z = mp.mpc(rng.uniform(0.1, 2), rng.uniform(0.1, 1))
            s = mp.mpc(1)
            while abs(s - 1) < 0.25:
                s = mp.mpc(rng.uniform(-2, 3), rng.uniform(-1, 1))
            for n in (2, 3):
                cases.append(SuiteCase(f'z={_tag(z)}:s={_tag(s)}:n={n}', lambda z=z, s=s, n=n: hurwitz_duplication_residual(z, s, n),
                                       self.tolerance()))
        return cases


class IntegralIdentitySuite(VerificationSuite):
    """ The integral of zeta_H(z; s) over [-1, 0] vanishes. """
    name = 'integral-identity'
    description = 'integral of zeta_H(z; s) over [-1, 0] = 0 for s != 1'

    def cases(self):
        return [SuiteCase(f's={_tag(s)}', lambda s=s: abs(hurwitz_integral_identity(s)), self.tolerance(100))
                for s in (mp.mpf(-2), mp.mpf(-1), mp.mpf(-0.5), mp.mpf(0), mp.mpf(0.5), mp.mpc(0.5, 0.5), mp.mpf(2), mp.mpc(1.5, 1))]


class KernelSuite(VerificationSuite):
    """ The bidirectional sums of z^n vanish. """
    name = 'kernel'
    description = 'R+,0,-[z^n](z0) = 0 for n = 0..4'

    def cases(self):
        rng = self.random()
        cases = []
        for _ in range(10):
            z0 = _in_disk(rng, 3)
            for n in range(5):
                cases.append(SuiteCase(f'z^{n}:{_tag(z0)}', lambda z0=z0, n=n: abs(
                    remainder_value(Power(-n), z0, DirectionSpec.BIDIRECTIONAL, self.config.k_default)), self.tolerance()))
        return cases


class FunctionalEquationSuite(VerificationSuite):
    """ The functional equation of zeta, through remainder sums and Fourier series. """
    name = 'functional-equation'
    description = 'zeta(1-s) = 2^(1-s)*pi^-s*cos(pi*s/2)*Gamma(s)*zeta(s), and its bidirectional form'

    def cases(self):
        points = [mp.mpc(0.5, 1), mp.mpf(2.5), mp.mpc(-0.5, 0.3), mp.mpf(3)]
        rng = self.random()
        while len(points) < 24:
            s = mp.mpc(rng.uniform(0.2, 3), rng.uniform(-3, 3))
            if abs(s) >= 1 and abs(s - 1) >= 1:
                points.append(s)
        cases = [SuiteCase(f'zeta:{_tag(s)}', lambda s=s: zeta_functional_equation_residual(s), self.tolerance(10)) for s in points]
        cases += [SuiteCase(f'half:{_tag(s)}', lambda s=s: bidirectional_zeta_half_residual(s), self.tolerance(100))
                  for s in (mp.mpf(2), mp.mpc(0.5, 0.5), mp.mpf(-1.5))]
        grid = [mp.mpc(x, y) for x in (0.1, 0.4, 0.7) for y in (0.2, 0.6)] + [mp.mpc(1.7, 0.3)]
        cases += [SuiteCase(f'log:{_tag(z0)}', lambda z0=z0: abs(bidirectional_log_via_remainders(z0) - bidirectional_log_closed_form(z0)),
                            self.tolerance()) for z0 in grid]
        return cases


class DilationSuite(VerificationSuite):
    """ The Cesaro limits are invariant under dilation. """
    name = 'dilation'
    description = 'the remainder sums recomputed on the dilated lattice r*(z0 + j)'

    def cases(self):
        return [SuiteCase(f'{case_id}:r={r}', lambda case_id=case_id, r=r: dilation_invariance_check(case_id, r), self.tolerance(0.1))
                for case_id in DILATION_CASES for r in (0.5, 2, 3)]


class ScalingSuite(VerificationSuite):
    """ The quasi-commutation of P with the scalings. """
    name = 'scaling'
    description = 'P o S_r = q~(P) o S_r o P, its powers, and the scaling of the eigenfunctions'

    def cases(self):
        cases = []
        for fn_id in ('identity', 'sqrt', 'oscillator', 't-log-t'):
            for r in (0.7, mp.log(2)):
                for t in (1, 10):
                    cases.append(SuiteCase(f'{fn_id}:r={mp.nstr(r, 4)}:t={t}',
                                           lambda fn_id=fn_id, r=r, t=t: scaling_commutation_residual(fn_id, r, t), self.tolerance(100)))
        cases.append(SuiteCase('oscillator:n=2', lambda: scaling_commutation_power_residual('oscillator', 0.5, 10, 2), self.tolerance(100)))
        rng = self.random()
        for index in range(10):
            r = rng.uniform(0.01, 5)
            cases.append(SuiteCase(f'q~(1):{index}', lambda r=r: abs(q_tilde(r, 1) - 1), self.tolerance(1e-17)))
        cases.append(SuiteCase('eigen', lambda: scaling_eigen_residual(mp.mpc(1.5, 0.5), 2, 0.7, log_grid(0.5, 50)), self.tolerance(0.01)))
        return cases


def _diverges_like_log(compute):
    """ 0 when 'compute' fails with NotCesaroSummable and a ln(t) growth, 1 otherwise. """
    try:
        compute()
    except NotCesaroSummable as exp:
        return 0 if exp.log_growth else 1
    return 1


def _naive_staircase():
    probe = LimitProbe()
    trace = gamma_staircase_trace(STAIRCASE_RESOLUTION, int(probe.reach()) + 2, naive=True)
    return clim(trace, max_power=1, probe=probe)


class StaircaseGammaSuite(VerificationSuite):
    """ -gamma as the Cesaro average of the staircase. """
    name = 'staircase-gamma'
    description = "Gamma'(1) = -gamma from the staircase p-sum"

    def cases(self):
        return [
            SuiteCase('clim', lambda: abs(euler_gamma_cesaro() + mp.euler), self.tolerance(10)),
            SuiteCase(f'P(T={STAIRCASE_T})', lambda: abs(gamma_staircase_derivative(STAIRCASE_RESOLUTION, STAIRCASE_T) + mp.euler), STAIRCASE_BOUND),
            SuiteCase('naive-diverges', lambda: _diverges_like_log(_naive_staircase), 0),
        ]


class GammaCollapseSuite(VerificationSuite):
    """ Gamma(n+1) = n! and the other known values, and the plain formula for c_z0. """
    name = 'gamma-collapse'
    description = 'Gamma(n+1) = n!, Gamma(1/2) = sqrt(pi), ln Gamma against mpmath.loggamma, c_z0 against the plain formula at k = 10^6'

    def log_gamma(self, z0):
        """ ln Gamma(z0 + 1) with the configured k and order. """
        return log_gamma(z0, self.config.k_default, self.config.order_default)

    def cases(self):
        cases = [SuiteCase(f'{n}!', lambda n=n: relative_gap(self.log_gamma(n).value, mp.factorial(n)), self.tolerance(0.01)) for n in range(11)]
        cases.append(SuiteCase('Gamma(1/2)', lambda: relative_gap(self.log_gamma(-0.5).value, mp.sqrt(mp.pi)), self.tolerance(0.01)))
        rng = self.random()
        for index in range(3):
            z0 = mp.mpc(rng.uniform(-0.9, 4), rng.uniform(-3, 3))
            cases.append(SuiteCase(f'mpmath-{index}', lambda z0=z0: relative_gap(self.log_gamma(z0).log_value, mp.loggamma(z0 + 1)),
                                   self.tolerance(0.01)))
        for index in range(10):
            z0 = mp.mpc(rng.uniform(-0.9, 4), rng.uniform(-3, 3))
            cases.append(SuiteCase(f'plain-{index}', lambda z0=z0: abs(self.log_gamma(z0).c_z0 - plain_log_constant(z0)), self.tolerance(0.01)))
        return cases


class TaylorSuite(VerificationSuite):
    """ The Taylor series of ln Gamma(z+1), its coefficients being -gamma and zeta(n). """
    name = 'taylor'
    description = 'ln Gamma(z+1) = -gamma*z + sum of (-1)^n*zeta(n)/n * z^n, 40 terms on |z| = 0.4'

    def cases(self):
        points = [mp.mpf(0.4) * mp.expjpi(mp.mpf(j) / 4) for j in range(8)]
        return [SuiteCase(f'z={_tag(z)}', lambda z=z: abs(gamma_taylor_series(z, 40) - mp.loggamma(1 + z)), self.tolerance(10))
                for z in points]


class SpecialValuesSuite(VerificationSuite):
    """ Sums of zeta_H over the rational points -j/p and -j/pq, and the derivative of b_n. """
    name = 'special-values'
    description = 'sum of zeta_H(-j/p; s) = (p^s - 1)*zeta(s), the coprime version, and b_n\' = (n-1)*(b_(n-1) - zeta(2-n))'

    def cases(self):
        cases = []
        for p in (2, 3, 5):
            for s in (mp.mpf(2), mp.mpf(-1), mp.mpc(0.5, 1)):
                cases.append(SuiteCase(f'p={p}:s={_tag(s)}', lambda p=p, s=s: relative_gap(
                    hurwitz_prime_special_value(p, s), (mp.power(p, s) - 1) * mp.zeta(s)), self.tolerance()))
        for s in (mp.mpf(2), mp.mpf(-1)):
            cases.append(SuiteCase(f'pq=6:s={_tag(s)}', lambda s=s: relative_gap(
                hurwitz_coprime_special_value(2, 3, s), (mp.power(6, s) - mp.power(2, s) - mp.power(3, s) + 1) * mp.zeta(s)), self.tolerance()))
        for n in (2, 3):
            cases.append(SuiteCase(f'b_{n}', lambda n=n: b_derivative_residual(n, mp.mpc(0.7, 0.4)), self.tolerance(100)))
        return cases


class CesaroEngineSuite(VerificationSuite):
    """ zeta_H and ln Gamma by clim of the stripped trace, against the Euler-Maclaurin constant. """
    name = 'cesaro-engine'
    description = 'zeta_H and ln Gamma by clim of the stripped p-sum trace, and the divergence of the parametric strip of ln z'

    def averaged(self):
        """ The keyword arguments of the 'cesaro' method, from the configuration. """
        return {'method': 'cesaro', 'probe': self.probe(), 'max_power': self.config.max_power}

    def cases(self):
        rng = self.random()
        cases = []
        for index in range(4):
            z0 = mp.mpc(rng.uniform(0, 2), rng.uniform(-1, 1))
            s = mp.mpc(1)
            while abs(s - 1) < 0.3:
                s = mp.mpc(rng.uniform(-2, 2.5), rng.uniform(-1, 1))
            cases.append(SuiteCase(f'zeta-{index}', lambda z0=z0, s=s: relative_gap(
                hurwitz_zeta(z0, s, **self.averaged()).value,
                hurwitz_zeta(z0, s, self.config.k_default, zeta_order=self.config.zeta_order).value), self.tolerance(10)))
        for index in range(3):
            z0 = mp.mpc(rng.uniform(0, 2), rng.uniform(-1, 1))
            cases.append(SuiteCase(f'log-gamma-{index}', lambda z0=z0: relative_gap(
                log_gamma(z0, order=self.config.order_default, **self.averaged()).c_z0,
                log_gamma(z0, self.config.k_default, self.config.order_default).c_z0), self.tolerance(10)))
        cases.append(SuiteCase('parametric-diverges', lambda: _diverges_like_log(
            lambda: remainder_sum(Log(), mp.mpc(0.3, 0.7), probe=self.probe(), max_power=self.config.max_power, method='parametric')), 0))
        return cases


SUITES = {suite.name: suite for suite in (
    ZetaValuesSuite, ReflectionSuite, MultiplicationSuite, DuplicationSuite, IntegralIdentitySuite, KernelSuite,
    FunctionalEquationSuite, DilationSuite, ScalingSuite, StaircaseGammaSuite, GammaCollapseSuite, TaylorSuite,
    SpecialValuesSuite, CesaroEngineSuite)}


def make_suite(name, config=None):
    """ Instantiate the registered suite 'name', or a SuiteGroup of all of them for 'all'. """
    if name == 'all':
        suite = SuiteGroup(*(cls() for cls in SUITES.values()))
    else:
        suite = SUITES[name]()
    suite.reload(RunConfig() if config is None else config)
    return suite
