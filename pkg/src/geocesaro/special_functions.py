""" The Hurwitz zeta function, the Riemann zeta function and the Gamma function,
    all defined as remainder sums, with the identities they satisfy.

        zeta_H(z0; s) = R+[z^-s](z0)            (summation from n = 1)
        ln Gamma(z0 + 1) = ln(2*pi)/2 - R+[ln z](z0)
"""

import cmath
import dataclasses
import functools
import logging
import math

from mpmath import mp

from geocesaro.cesaro_core import CesaroOutcome, Direction, LimitProbe, PSumTrace, Ray, apply_P_exact, clim
from geocesaro.asymptotics import DEFAULT_K, DEFAULT_ORDER, em_log_expansion
from geocesaro.errors import DomainError, ExcludedCaseError, PoleError
from geocesaro.remainder_ops import DEFAULT_ZETA_ORDER, DirectionSpec, Log, Power, remainder_sum, remainder_value, strip_index
from geocesaro.values import is_integer, precision_guard, to_complex

# Width h of the spikes of the staircase that gives the Euler-Mascheroni constant.
STAIRCASE_RESOLUTION = 1e-3

# How zeta_H and ln Gamma are evaluated: the Euler-Maclaurin constant, or clim of the stripped trace.
METHODS = ('accelerated', 'cesaro')

# Number of summands of the plain formula for c_z0, the independent check of the accelerated one.
PLAIN_K = 10 ** 6


@dataclasses.dataclass(frozen=True)
class HurwitzResult:
    """ zeta_H(z0; s), with the number of Bernoulli corrections used for the strip of s.
        'outcome' is the CesaroOutcome when the value comes from the averaged trace. """
    value: mp.mpc
    s: mp.mpc
    z0: mp.mpc
    strip_index: int
    outcome: CesaroOutcome = None


@dataclasses.dataclass(frozen=True)
class GammaResult:
    """ ln Gamma(z0 + 1) = ln(2*pi)/2 - c_z0, and its exponential. """
    log_value: mp.mpc
    value: mp.mpc
    c_z0: mp.mpc
    k_used: int
    order_used: int
    outcome: CesaroOutcome = None


def _check_method(method):
    if method not in METHODS:
        raise DomainError(f'unknown method {method!r}, expected one of {", ".join(METHODS)}')


def hurwitz_zeta(z0, s, k=None, order=None, zeta_order=DEFAULT_ZETA_ORDER,  # pylint: disable=too-many-arguments
                 method='accelerated', probe=None, max_power=None):
    """ zeta_H(z0; s) = (z0+1)^-s + (z0+2)^-s + ..., continued to every s != 1.
        The 'cesaro' method averages the stripped p-sum trace of z^-s with clim; the
        'accelerated' one reads the same limit from the Euler-Maclaurin constant. """
    _check_method(method)
    with precision_guard():
        z0, s = to_complex(z0), to_complex(s)
        if s == 1:
            raise PoleError('zeta_H(z0; s) has a pole at s = 1')
        strip = strip_index(s, zeta_order) if order is None else order
        if method == 'cesaro':
            outcome = remainder_sum(Power(s), z0, DirectionSpec.PLUS, probe, max_power, order=strip)
            logging.debug('zeta_H(%s; %s) = %s by P^%d', z0, s, outcome.limit, outcome.averaging_power)
            return HurwitzResult(outcome.limit, s, z0, strip, outcome)
        value = remainder_value(Power(s), z0, DirectionSpec.PLUS, DEFAULT_K if k is None else k, strip)
        logging.debug('zeta_H(%s; %s) = %s with %d corrections', z0, s, value, strip)
        return HurwitzResult(value, s, z0, strip)


def riemann_zeta(s):
    """ zeta(s) = zeta_H(0; s). """
    return hurwitz_zeta(0, s).value


def b_polynomial(n, z):
    """ b_n(z) = zeta(1-n) - zeta_H(z; 1-n): the sum of j^(n-1) for j = 1..z, extended to complex z. """
    if int(n) != n or n < 1:
        raise DomainError(f'n must be a positive integer, got {n}')
    with precision_guard():
        return riemann_zeta(1 - n) - hurwitz_zeta(z, 1 - n).value


def b_derivative_residual(n, z, h=1e-4):
    """ |b_n'(z) - (n-1)*(b_(n-1)(z) - zeta(2-n))|, the derivative taken by central difference. """
    if int(n) != n or n < 2:
        raise DomainError(f'n must be an integer >= 2, got {n}')
    if not 0 < h <= 1e-3:
        raise DomainError(f'the step h must be in (0, 1e-3], got {h}')
    with precision_guard():
        z, h = to_complex(z), mp.mpf(h)
        derivative = (b_polynomial(n, z + h) - b_polynomial(n, z - h)) / (2 * h)
        return abs(derivative - (n - 1) * (b_polynomial(n - 1, z) - riemann_zeta(2 - n)))


def log_gamma(z0, k=DEFAULT_K, order=DEFAULT_ORDER, method='accelerated', probe=None,  # pylint: disable=too-many-arguments
              max_power=None):
    """ ln Gamma(z0 + 1) from the Euler-Maclaurin constant of the sum of ln(z0 + j).
        When Re z0 is very negative, the explicit sum runs further (the recurrence
        Gamma(z+1) = z*Gamma(z) applied until z0 + k is well inside the right half-plane).
        The 'cesaro' method takes c_z0 = R+[ln z](z0) as clim of the stripped trace instead. """
    _check_method(method)
    with precision_guard():
        z0 = to_complex(z0)
        if is_integer(z0) and z0.real < 0:
            raise PoleError(f'Gamma(z0 + 1) has a pole at z0 = {int(z0.real)}')
        if method == 'cesaro':
            outcome = remainder_sum(Log(), z0, DirectionSpec.PLUS, probe, max_power, order=order)
            log_value = mp.log(2 * mp.pi) / 2 - outcome.limit
            return GammaResult(log_value, mp.exp(log_value), outcome.limit, DEFAULT_K, order, outcome)
        expansion = em_log_expansion(z0, order, k, Direction.POS_REAL)
        c_z0 = expansion.cesaro_value()
        log_value = mp.log(2 * mp.pi) / 2 - c_z0
        return GammaResult(log_value, mp.exp(log_value), c_z0, expansion.k, order)


def plain_log_constant(z0, k=PLAIN_K, head=8):
    """ c_z0 from the plain formula with k summands and no correction beyond the leading -1/(12*(z0 + k)):
            sum of ln(z0 + j), j = 1..k, - (z0 + k + 1/2)*ln(z0 + k) + (z0 + k) - 1/(12*(z0 + k))

        It runs in double precision, independently of mpmath. The first 'head' logarithms are summed
        directly, then every step adds d_j = ln w - F(w) + F(w - 1), w = z0 + j, F(w) = (w + 1/2)*ln w - w,
        taken from its series -sum of x^(2m)/(2m + 1), x = 1/(2w - 1), so that nothing large cancels. """
    if is_integer(to_complex(z0)) and to_complex(z0).real < 0:
        raise PoleError(f'Gamma(z0 + 1) has a pole at z0 = {z0}')
    z0 = complex(to_complex(z0))
    if not z0.real + head > 1:
        raise DomainError(f'the plain formula needs Re(z0) > {1 - head}, got {z0}')
    if k <= head:
        raise DomainError(f'k must exceed {head}, got {k}')

    def primitive(w):
        return (w + 0.5) * cmath.log(w) - w
    real, imag = [], []
    for j in range(1, head + 1):
        value = cmath.log(z0 + j)
        real.append(value.real)
        imag.append(value.imag)
    for j in range(head + 1, k + 1):
        x2 = (1 / (2 * (z0 + j) - 1)) ** 2
        term, step, n = x2, 0j, 3
        while abs(term) > 1e-20:
            step += term / n
            term *= x2
            n += 2
        real.append(-step.real)
        imag.append(-step.imag)
    tail = primitive(z0 + head) + 1 / (12 * (z0 + k))
    logging.debug('Plain constant at z0 = %s over %d summands', z0, k)
    return mp.mpc(math.fsum(real) - tail.real, math.fsum(imag) - tail.imag)


def gamma(z):
    """ Gamma(z) = exp(ln Gamma((z - 1) + 1)). """
    with precision_guard():
        z = to_complex(z)
        if is_integer(z) and z.real <= 0:
            raise PoleError(f'Gamma has a pole at z = {int(z.real)}')
        return log_gamma(z - 1).value


def gamma_staircase_trace(h, horizon, naive=False):
    """ The p-sum whose Cesaro average is -gamma: on [j, j+h) it holds ln(j)/h - H_(j-1),
        on [j+h, j+1) it holds -H_j, H being the harmonic numbers.
        The naive variant puts every summand at the integers, holding -H_j on [j, j+1):
        it diverges like -ln(t). """
    if not 0 < h < 1:
        raise DomainError(f'h must be in (0, 1), got {h}')
    with precision_guard(10):
        h = mp.mpf(h)
        harmonic = mp.mpf(0)
        jumps = []
        for j in range(1, int(horizon) + 1):
            if not naive:
                jumps.append((j, mp.log(j) / h - harmonic))
            harmonic += mp.mpf(1) / j
            jumps.append((j + h if not naive else j, -harmonic))
    return PSumTrace(Ray(0, Direction.POS_REAL), tuple(jumps))


def gamma_staircase_derivative(h, T):  # pylint: disable=invalid-name
    """ P of the staircase at T: tends to Gamma'(1) = -gamma with an error O(ln(T)/T) + O(h). """
    if T < 100:
        raise DomainError(f'T must be at least 100, got {T}')
    trace = gamma_staircase_trace(h, int(math.ceil(T)) + 1)
    return apply_P_exact(trace, T)


@functools.lru_cache(maxsize=None)
def _euler_gamma_cesaro(h, dps):  # pylint: disable=unused-argument
    probe = LimitProbe()
    trace = gamma_staircase_trace(h, int(probe.reach()) + 2)
    return clim(trace, max_power=2, probe=probe).limit


def euler_gamma_cesaro(h=STAIRCASE_RESOLUTION):
    """ -gamma, as the generalised Cesaro limit of the staircase. """
    with precision_guard():
        return _euler_gamma_cesaro(float(h), mp.dps)


@functools.lru_cache(maxsize=None)
def _gamma_taylor_coeff(n, dps):  # pylint: disable=unused-argument
    if n == 1:
        return euler_gamma_cesaro()
    return (-1) ** n * riemann_zeta(n) / n


def gamma_taylor_coeff(n):
    """ The coefficient of z^n in ln Gamma(z + 1) = -gamma*z + sum of (-1)^n*zeta(n)/n * z^n. """
    if int(n) != n or n < 1:
        raise DomainError(f'n must be a positive integer, got {n}')
    with precision_guard():
        return _gamma_taylor_coeff(int(n), mp.dps)


def gamma_taylor_series(z, terms=40):
    """ The Taylor series of ln Gamma(z + 1) at 0, truncated after 'terms' powers. Its radius is 1. """
    with precision_guard():
        z = to_complex(z)
        if abs(z) >= 1:
            raise DomainError(f'the series only converges for |z| < 1, got |z| = {abs(z)}')
        return mp.fsum(gamma_taylor_coeff(n) * z ** n for n in range(1, terms + 1))


def hurwitz_integral_identity(s, quad_points=32):
    """ The integral of zeta_H(z; s) over [-1, 0], which vanishes for every s != 1.
        The singular first summand (z+1)^-s integrates to 1/(1-s) in closed form, the
        rest is zeta_H(x; s) on [0, 1], smooth, integrated by Gauss-Legendre. """
    if quad_points < 16:
        raise DomainError(f'quad_points must be at least 16, got {quad_points}')
    with precision_guard():
        s = to_complex(s)
        if s == 1:
            raise ExcludedCaseError('the integral is not Cesaro convergent at s = 1')
        degree = int(math.ceil(math.log2(quad_points / 3))) + 1
        smooth = mp.quad(lambda x: hurwitz_zeta(x, s).value, [0, 1], method='gauss-legendre', maxdegree=degree)
        return 1 / (1 - s) + smooth


def _is_prime(p):
    if p < 2:
        return False
    return all(p % d for d in range(2, int(math.isqrt(p)) + 1))


def hurwitz_prime_special_value(p, s):
    """ The sum of zeta_H(-j/p; s) for j = 1..p-1, which equals (p^s - 1)*zeta(s). """
    if int(p) != p or not _is_prime(int(p)):
        raise DomainError(f'p must be prime, got {p}')
    with precision_guard():
        s = to_complex(s)
        return mp.fsum(hurwitz_zeta(-mp.mpf(j) / p, s).value for j in range(1, int(p)))


def hurwitz_coprime_special_value(p, q, s):
    """ The sum of zeta_H(-j/pq; s) over 1 <= j < pq coprime to pq, which equals
        ((pq)^s - p^s - q^s + 1)*zeta(s). j = 1 belongs to the sum. """
    for prime in (p, q):
        if int(prime) != prime or not _is_prime(int(prime)):
            raise DomainError(f'p and q must be prime, got {prime}')
    if p == q:
        raise DomainError('p and q must be distinct primes')
    with precision_guard():
        s = to_complex(s)
        product = int(p) * int(q)
        return mp.fsum(hurwitz_zeta(-mp.mpf(j) / product, s).value
                       for j in range(1, product) if math.gcd(j, product) == 1)


def gamma_recurrence_residual(z):
    """ |Gamma(z+1) - z*Gamma(z)| / |Gamma(z+1)|. """
    with precision_guard():
        z = to_complex(z)
        upper = log_gamma(z).value
        return abs(upper - z * gamma(z)) / abs(upper)


def gamma_reflection_residual(z):
    """ |Gamma(z)*Gamma(1-z)*sin(pi*z)/pi - 1|. """
    with precision_guard():
        z = to_complex(z)
        return abs(gamma(z) * gamma(1 - z) * mp.sin(mp.pi * z) / mp.pi - 1)


def gamma_multiplication_residual(z0, n):
    """ Relative residual of (2*pi)^((n-1)/2) * Gamma(z0+1) = n^(z0+1/2) * product of Gamma((z0+l)/n), l = 1..n. """
    if int(n) != n or n < 1:
        raise DomainError(f'n must be a positive integer, got {n}')
    with precision_guard():
        z0 = to_complex(z0)
        left = (2 * mp.pi) ** (mp.mpf(n - 1) / 2) * log_gamma(z0).value
        right = mp.power(n, z0 + mp.mpf(1) / 2) * mp.fprod(gamma((z0 + l) / n) for l in range(1, int(n) + 1))
        return abs(left / right - 1)


def hurwitz_duplication_residual(z, s, n):
    """ |zeta_H(z; s) - n^-s * sum of zeta_H(z/n - (n-j)/n; s), j = 1..n|, relative to max(1, |zeta_H(z; s)|). """
    if int(n) != n or n < 1:
        raise DomainError(f'n must be a positive integer, got {n}')
    with precision_guard():
        z, s = to_complex(z), to_complex(s)
        whole = hurwitz_zeta(z, s).value
        parts = mp.fsum(hurwitz_zeta(z / n - mp.mpf(n - j) / n, s).value for j in range(1, int(n) + 1))
        return abs(whole - mp.power(n, -s) * parts) / max(1, abs(whole))
