""" Bidirectional sums as periodic functions, their Fourier coefficients,
    and the functional equations they lead to.

    The Fourier transform convention is F[f](xi) = integral of f(x)*exp(-2*pi*i*x*xi) dx.
    R+,0,-[f](z0) is periodic of period 1 in z0, so that for Im z0 > 0 it expands as
    the sum of a_n * exp(2*pi*i*n*z0), with a_n = F[f](n).
"""

import dataclasses
import logging
import math

from mpmath import mp

from geocesaro.cesaro_core import Direction, LimitProbe, PSumTrace, Ray, ResidualSampler, clim
from geocesaro.errors import DomainError, ExcludedCaseError, UnsupportedSummandError
from geocesaro.remainder_ops import Const, DirectionSpec, Log, Power, remainder_value
from geocesaro.special_functions import gamma, log_gamma, riemann_zeta
from geocesaro.values import is_integer, precision_guard, to_complex


@dataclasses.dataclass(frozen=True)
class DistributionalEntry:
    """ A tempered distribution of xi: regular(xi) + delta_weight * delta(xi).
        Only the regular part has a value at xi != 0. """
    regular: object
    delta_weight: mp.mpc

    def at(self, xi):
        """ The value at xi != 0. """
        if xi == 0:
            raise ExcludedCaseError('a distribution with a delta part has no value at xi = 0')
        return self.regular(mp.mpf(xi))


# Transforms looked up from the standard tables, with the convention above.
TRANSFORMS = {
    'ln|z|': DistributionalEntry(lambda xi: -1 / (2 * abs(xi)), -(mp.euler + mp.log(2 * mp.pi))),
    '1': DistributionalEntry(lambda xi: mp.mpf(0), mp.mpf(1)),
    'u': DistributionalEntry(lambda xi: 1 / (2j * mp.pi * xi), mp.mpf(1) / 2),
}


@dataclasses.dataclass(frozen=True)
class FourierCoefficientTable:
    """ The coefficients a_n, for -n_range <= n <= n_range, of the bidirectional sum of 'kind'. """
    kind: object
    s_param: mp.mpc
    coeffs: dict
    n_range: int


def fourier_coeff_closed_form(kind, s=None, n=1):
    """ a_n of the bidirectional sum of 'kind'.
        Log: ln z = ln|z| + i*pi*(1 - u(z)) on the real line, so a_n = -1/n for n > 0, 0 otherwise.
        Power(s): a_n = F[z^-s](n) = (-2*pi*i)^s * n^(s-1) / Gamma(s) for n >= 1, 0 for n < 0. """
    with precision_guard():
        if isinstance(kind, Log):
            if n == 0:
                return mp.mpc(0)
            regular = TRANSFORMS['ln|z|'].at(n) + 1j * mp.pi * (TRANSFORMS['1'].at(n) - TRANSFORMS['u'].at(n))
            return mp.mpc(regular)
        if isinstance(kind, Power):
            s = kind.s if s is None else to_complex(s)
            if n == 0:
                if s.real <= 1:
                    raise ExcludedCaseError(f'a_0 needs Re(s) > 1, got s = {s}')
                return mp.mpc(0)
            if n < 0:
                return mp.mpc(0)
            return mp.exp(-1j * mp.pi * s / 2) * mp.power(2 * mp.pi, s) * mp.power(n, s - 1) / gamma(s)
        if isinstance(kind, Const):
            raise UnsupportedSummandError('the bidirectional sum of a constant vanishes, it has no Fourier table')
        raise UnsupportedSummandError(f'no Fourier table for {kind!r}')


def fourier_table(kind, s=None, n_range=10):
    """ The table of a_n for -n_range <= n <= n_range. a_0 is left out when it is excluded. """
    coeffs = {}
    for n in range(-n_range, n_range + 1):
        try:
            coeffs[n] = fourier_coeff_closed_form(kind, s, n)
        except ExcludedCaseError:
            continue
    s_param = to_complex(s) if s is not None else getattr(kind, 's', None)
    return FourierCoefficientTable(kind, s_param, coeffs, n_range)


def fourier_coeff_numeric(func, n, tau=0.5):
    """ The projection of a period-1 function on exp(2*pi*i*n*z), along the line Im z = tau. """
    with precision_guard():
        tau = mp.mpf(tau)

        def integrand(x):
            z = mp.mpc(x, tau)
            return func(z) * mp.exp(-2j * mp.pi * n * z)
        return mp.quad(integrand, [0, 0.5, 1])


def _upper_half_plane(z0):
    z0 = to_complex(z0)
    if z0.imag <= 0:
        raise DomainError(f'the Fourier expansion needs Im(z0) > 0, got {z0}')
    return z0


def bidirectional_log_closed_form(z0):
    """ R+,0,-[ln z](z0) = i*pi*(z0 - 1/2) + ln 2 + ln sin(pi*z0), for Im z0 > 0.
        z0 is first brought back to 0 <= Re z0 < 1, where the principal branches do not wrap. """
    with precision_guard():
        z0 = _upper_half_plane(z0)
        z0 -= mp.floor(z0.real)
        return 1j * mp.pi * (z0 - mp.mpf(1) / 2) + mp.log(2) + mp.log(mp.sin(mp.pi * z0))


def _series_terms(z0, growth=0):
    """ Number of terms after which |exp(2*pi*i*n*z0)| * n^growth drops below the working precision. """
    decay = 2 * math.pi * float(z0.imag)
    return int(math.ceil((mp.dps * math.log(10) + growth * 10) / decay)) + 10


def bidirectional_log_series(z0, terms=None):
    """ R+,0,-[ln z](z0) as its Fourier series: -sum of exp(2*pi*i*n*z0)/n. """
    with precision_guard():
        z0 = _upper_half_plane(z0)
        terms = _series_terms(z0) if terms is None else terms
        q = mp.exp(2j * mp.pi * z0)
        return -mp.fsum(q ** n / n for n in range(1, terms + 1))


def bidirectional_log_via_remainders(z0):
    """ R+,0,-[ln z](z0) as R+,0[ln z](z0) + R-[ln z](z0). """
    return remainder_value(Log(), z0, DirectionSpec.BIDIRECTIONAL)


def _reflection_domain(z0):
    z0 = to_complex(z0)
    if z0.imag < 0 or (z0.imag == 0 and not 0 < z0.real < 1):
        raise DomainError(f'the reflection is checked for Im(z0) > 0, or 0 < z0 < 1, got {z0}')
    return z0


def verify_log_reflection(z0):
    """ |R+,0[ln](z0) + R+,0[ln](1-z0) - ln 2 - ln sin(pi*z0)|, the remainder sums taken from
        ln Gamma through R+,0[ln](w) = ln(2*pi)/2 - ln Gamma(w).
        In the strip 0 < Re z0 < 1, z0, 1 - z0 and sin(pi*z0) all have a positive real part,
        so every logarithm stays on its principal branch and no multiple of 2*pi*i is allowed. """
    with precision_guard():
        z0 = to_complex(z0)
        if not 0 < z0.real < 1:
            raise DomainError(f'the reflection of ln Gamma is checked in the strip 0 < Re(z0) < 1, got {z0}')

        def plus_zero(w):
            return mp.log(2 * mp.pi) / 2 - log_gamma(w - 1).log_value
        return abs(plus_zero(z0) + plus_zero(1 - z0) - mp.log(2) - mp.log(mp.sin(mp.pi * z0)))


def verify_minus_reflection(z0):
    """ |R+,0[ln](1-z0) - R-[ln](z0) + i*pi*(z0 - 1/2)|. """
    with precision_guard():
        z0 = _reflection_domain(z0)
        left = remainder_value(Log(), 1 - z0, DirectionSpec.PLUS_ZERO)
        right = remainder_value(Log(), z0, DirectionSpec.MINUS) - 1j * mp.pi * (z0 - mp.mpf(1) / 2)
        return abs(left - right)


def _check_functional_domain(s):
    s = to_complex(s)
    if s == 1:
        raise ExcludedCaseError('zeta has a pole at s = 1')
    if is_integer(s) and s.real <= 0:
        raise ExcludedCaseError(f'Gamma has a pole at s = {int(s.real)}')
    return s


def zeta_functional_equation_residual(s):
    """ |zeta(1-s) - 2^(1-s) * pi^-s * cos(pi*s/2) * Gamma(s) * zeta(s)| / (1 + |zeta(1-s)|),
        with zeta and Gamma computed as remainder sums. """
    with precision_guard():
        s = _check_functional_domain(s)
        left = riemann_zeta(1 - s)
        right = mp.power(2, 1 - s) * mp.power(mp.pi, -s) * mp.cos(mp.pi * s / 2) * gamma(s) * riemann_zeta(s)
        return abs(left - right) / (1 + abs(left))


def alternating_series_closed_form(s):
    """ The value of the sum of (-1)^n * n^(s-1), n >= 1: (2^s - 1) * zeta(1-s),
        and -ln 2 at s = 0 where the series converges. """
    with precision_guard():
        s = to_complex(s)
        if s == 1:
            raise ExcludedCaseError('the alternating series is excluded at s = 1')
        if s == 0:
            return -mp.log(2)
        return (mp.power(2, s) - 1) * riemann_zeta(1 - s)


def alternating_series_clim(s, max_power=4, probe=None):
    """ The generalised Cesaro limit of the sum of (-1)^n * n^(s-1), n >= 1, from its p-sum trace.
        Sampled on even n, the averages drift like t^(s-2) and t^(s-3): these rates join the extrapolation. """
    with precision_guard():
        s = to_complex(s)
        if s == 1:
            raise ExcludedCaseError('the alternating series is excluded at s = 1')
        probe = LimitProbe() if probe is None else probe
        trace = alternating_series_trace(s, int(mp.ceil(probe.reach(2))) + 2)
        rates = tuple(s - j for j in (2, 3) if (s - j).real < 0 and not is_integer(s - j))
        outcome = clim(ResidualSampler(trace, rates=rates), max_power, probe)
        logging.debug('Alternating series at s = %s: %s with P^%d', s, outcome.limit, outcome.averaging_power)
        return outcome.limit


def alternating_series_trace(s, count):
    """ The p-sum trace of (-1)^n * n^(s-1), with period 2 so that probes land on even n. """
    with precision_guard(10):
        s = to_complex(s)
        total = mp.mpc(0)
        jumps = []
        for n in range(1, int(count) + 1):
            total += (-1) ** n * mp.power(n, s - 1)
            jumps.append((n, total))
    return PSumTrace(Ray(0, Direction.POS_REAL), tuple(jumps), period=2)


def bidirectional_power_fourier(z0, s, terms=None):
    """ The Fourier side of R+,0,-[z^-s](z0): (-2*pi*i)^s / Gamma(s) * sum of n^(s-1) * exp(2*pi*i*n*z0). """
    with precision_guard():
        z0 = _upper_half_plane(z0)
        s = _check_functional_domain(s)
        terms = _series_terms(z0, max(0, float(s.real) - 1)) if terms is None else terms
        q = mp.exp(2j * mp.pi * z0)
        series = mp.fsum(mp.power(n, s - 1) * q ** n for n in range(1, terms + 1))
        return mp.exp(-1j * mp.pi * s / 2) * mp.power(2 * mp.pi, s) / gamma(s) * series


def bidirectional_zeta_half_residual(s):
    """ At z0 = 1/2, R+,0,-[z^-s] = (1 + exp(-i*pi*s)) * (2^s - 1) * zeta(s). Its Fourier side
        is exp(-i*pi*s/2) * (2*pi)^s * (2^s - 1) * zeta(1-s) / Gamma(s), through the alternating series.
        Return the largest relative disagreement of the remainder route and the Fourier side. """
    with precision_guard():
        s = _check_functional_domain(s)
        expected = (1 + mp.exp(-1j * mp.pi * s)) * (mp.power(2, s) - 1) * riemann_zeta(s)
        remainders = remainder_value(Power(s), mp.mpf(1) / 2, DirectionSpec.BIDIRECTIONAL)
        fourier = mp.exp(-1j * mp.pi * s / 2) * mp.power(2 * mp.pi, s) * alternating_series_clim(s) / gamma(s)
        scale = max(1, abs(expected))
        return max(abs(remainders - expected), abs(fourier - expected)) / scale
