""" The remainder sums R+, R+,0, R-, R-,0 and R+,0,-, the remainder products,
    and the continuous extension of finite sums and products.

    R+[f](z0) is the generalised Cesaro value of f(z0+1) + f(z0+2) + ...
    R+,0[f](z0) also includes f(z0), R-[f](z0) sums f(z0-1) + f(z0-2) + ...
    The bidirectional sum is R+,0[f](z0) + R-[f](z0), two independent Cesaro sums.
"""

import dataclasses
import enum
import logging
import math

from mpmath import mp

from geocesaro.asymptotics import DEFAULT_K, DEFAULT_ORDER, em_const_expansion, em_log_expansion, em_power_expansion, falling_factorial
from geocesaro.cesaro_core import (CesaroOutcome, Direction, LimitProbe, PeriodicPolynomial, PSumTrace, Ray, ResidualSampler, clim,
                                   strip_geometric, strip_parametric)
from geocesaro.errors import DomainError, PoleError, UnsupportedSummandError
from geocesaro.values import parse_complex, precision_guard, to_complex

# Bernoulli corrections used for z^-s, before the strip of s requires more.
DEFAULT_ZETA_ORDER = 12


def strip_index(s, zeta_order=DEFAULT_ZETA_ORDER):
    """ Number of Bernoulli corrections for z^-s: z^n is summed exactly once 2*order-1 > n. """
    s = to_complex(s)
    return max(zeta_order, int(math.ceil((1 - s.real) / 2)) + 1)


class SummandKind:
    """ Base class of the supported summands. """
    label = 'summand'

    def value(self, z):
        """ f(z). """
        raise NotImplementedError

    def antiderivative(self, z):
        """ A primitive of f at z. """
        raise NotImplementedError

    def derivative(self, z, order=1):
        """ The derivative of f of the given order at z. """
        raise NotImplementedError

    def has_pole_at(self, z):  # pylint: disable=unused-argument
        """ True when f is not defined at z. """
        return False

    def default_order(self):
        """ Default number of Bernoulli corrections. """
        return DEFAULT_ORDER

    def em_expansion(self, z0, order=None, k=DEFAULT_K, direction=Direction.POS_REAL):
        """ The Euler-Maclaurin expansion of the partial sums of f along the ray. """
        raise NotImplementedError


@dataclasses.dataclass(frozen=True)
class Power(SummandKind):
    """ f(z) = z^-s, the summand of the Hurwitz zeta function. """
    s: mp.mpc = 0

    def __post_init__(self):
        object.__setattr__(self, 's', to_complex(self.s))

    @property
    def label(self):
        return f'power:{mp.nstr(self.s, 15)}'

    def value(self, z):
        if self.has_pole_at(z):
            raise PoleError(f'z^-{self.s} has a pole at z = 0')
        return mp.power(z, -self.s)

    def antiderivative(self, z):
        if self.s == 1:
            return mp.log(z)
        return mp.power(z, 1 - self.s) / (1 - self.s)

    def derivative(self, z, order=1):
        return falling_factorial(-self.s, order) * mp.power(z, -self.s - order)

    def has_pole_at(self, z):
        return z == 0 and self.s.real >= 0 and self.s != 0

    def default_order(self):
        return strip_index(self.s)

    def em_expansion(self, z0, order=None, k=DEFAULT_K, direction=Direction.POS_REAL):
        order = self.default_order() if order is None else order
        return em_power_expansion(z0, self.s, order, k, direction)


@dataclasses.dataclass(frozen=True)
class Log(SummandKind):
    """ f(z) = ln z, on the principal branch. """
    label = 'log'

    def value(self, z):
        if self.has_pole_at(z):
            raise PoleError('ln z has a pole at z = 0')
        return mp.log(z)

    def antiderivative(self, z):
        return z * mp.log(z) - z

    def derivative(self, z, order=1):
        return (-1) ** (order - 1) * mp.factorial(order - 1) * mp.power(z, -order)

    def has_pole_at(self, z):
        return z == 0

    def em_expansion(self, z0, order=None, k=DEFAULT_K, direction=Direction.POS_REAL):
        order = self.default_order() if order is None else order
        return em_log_expansion(z0, order, k, direction)


@dataclasses.dataclass(frozen=True)
class Const(SummandKind):
    """ f(z) = c. """
    c: mp.mpc = 1

    def __post_init__(self):
        object.__setattr__(self, 'c', to_complex(self.c))

    @property
    def label(self):
        return f'const:{mp.nstr(self.c, 15)}'

    def value(self, z):  # pylint: disable=unused-argument
        return self.c

    def antiderivative(self, z):
        return self.c * z

    def derivative(self, z, order=1):  # pylint: disable=unused-argument
        return mp.mpc(0)

    def default_order(self):
        return 0

    def em_expansion(self, z0, order=None, k=DEFAULT_K, direction=Direction.POS_REAL):
        return em_const_expansion(z0, self.c, k, direction)


# The multiplicative identity summand f(z) = z.
IDENTITY = Power(-1)


def parse_summand(text):
    """ Parse 'log', 'identity', 'const', 'const:c' or 'power:s' into a SummandKind. """
    name, _, parameter = str(text).strip().lower().partition(':')
    if name == 'log' and not parameter:
        return Log()
    if name == 'identity' and not parameter:
        return IDENTITY
    if name == 'const':
        return Const(parse_complex(parameter) if parameter else 1)
    if name == 'power' and parameter:
        return Power(parse_complex(parameter))
    raise ValueError(f'unknown summand {text!r}, expected log, identity, const[:c] or power:s')


class DirectionSpec(enum.Enum):
    """ Which summands a remainder sum includes, and in which direction it runs. """
    PLUS = 'plus'
    PLUS_ZERO = 'plus-zero'
    MINUS = 'minus'
    MINUS_ZERO = 'minus-zero'
    BIDIRECTIONAL = 'bidirectional'

    @property
    def direction(self):
        """ The ray the one-sided sums follow. """
        if self in (DirectionSpec.MINUS, DirectionSpec.MINUS_ZERO):
            return Direction.NEG_REAL
        return Direction.POS_REAL

    @property
    def includes_zero(self):
        """ True when f(z0) itself is part of the sum. """
        return self in (DirectionSpec.PLUS_ZERO, DirectionSpec.MINUS_ZERO)


def _one_sided(direction):
    if direction is DirectionSpec.BIDIRECTIONAL:
        raise DomainError('a bidirectional sum is made of two traces, ask for PLUS_ZERO and MINUS')


def psum_trace(kind, z0, direction, count):
    """ The p-sum trace of f along the ray of 'direction', over 'count' lattice cells.
        The jump at t = j holds the partial sum up to f(z0 + u*j). """
    _one_sided(direction)
    with precision_guard(10):
        z0 = to_complex(z0)
        ray = Ray(z0, direction.direction)
        unit = direction.direction.unit
        points = ([(0, z0)] if direction.includes_zero else []) + [(j, z0 + unit * j) for j in range(1, int(count) + 1)]
        for _, z in points:
            if kind.has_pole_at(z):
                raise PoleError(f'the summand {kind.label} has a pole at {mp.nstr(z, 15)}, on the summation ray')
        jumps = []
        total = mp.mpc(0)
        for t, z in points:
            total += kind.value(z)
            jumps.append((t, total))
    return PSumTrace(ray, tuple(jumps))


def stripping_start(z0, direction):
    """ The arc length from which the expansion is stripped: past the disk |z| < 2|z0| + 1. """
    escape = Ray(z0, direction.direction).escape_time(2 * abs(to_complex(z0)) + 1)
    return max(1, int(mp.ceil(escape)))


def probe_for(probe, start):
    """ The probe, its base doubled until the first probe lies at least twice past 'start'. """
    probe = LimitProbe() if probe is None else probe
    base = probe.base
    while base < 2 * start:
        base *= 2
    if base != probe.base:
        logging.debug('Probe base raised from %s to %s', probe.base, base)
        probe = dataclasses.replace(probe, base=base)
    return probe


def lattice_residual(kind, z0, direction, probe=None, k=None, order=None):  # pylint: disable=too-many-arguments
    """ The residual s_j - E(w_j) on the lattice, plus the periodic polynomial left by the
        geometric re-expansion of E. Its generalised Cesaro limit is the remainder sum. """
    _one_sided(direction)
    with precision_guard():
        z0 = to_complex(z0)
        start = stripping_start(z0, direction)
        probe = probe_for(probe, start)
        expansion = kind.em_expansion(z0, order, DEFAULT_K if k is None else k, direction.direction)
        trace = psum_trace(kind, z0, direction, int(mp.ceil(probe.reach())) + 2)
        unit = direction.direction.unit
        with mp.workdps(mp.dps + 10):
            jumps = [(t, value - expansion.lattice_value(z0 + unit * t)) if t >= start else (t, value)
                     for t, value in trace.jumps]
        residual = PSumTrace(trace.ray, tuple(jumps))
        periodic = PeriodicPolynomial(expansion.periodic, origin=start)
        return ResidualSampler(residual, periodic=periodic, start=start, expansion=expansion.smooth_part)


def remainder_sum(f, z0, direction=DirectionSpec.PLUS, probe=None, max_power=None,  # pylint: disable=too-many-arguments
                  method='geometric', order=None):
    """ The remainder sum as a generalised Cesaro limit: trace, Euler-Maclaurin expansion,
        geometric stripping, then clim. 'method' is 'geometric' or 'lattice'; 'parametric' strips
        the same terms in the arc length t and fails on every summand whose expansion has a z ln z term. """
    max_power = 4 if max_power is None else max_power
    with precision_guard():
        z0 = to_complex(z0)
        if direction is DirectionSpec.BIDIRECTIONAL:
            plus = remainder_sum(f, z0, DirectionSpec.PLUS_ZERO, probe, max_power, method, order)
            minus = remainder_sum(f, z0, DirectionSpec.MINUS, probe, max_power, method, order)
            return CesaroOutcome(plus.limit + minus.limit, max(plus.averaging_power, minus.averaging_power),
                                 plus.stripped, plus.tail_estimate + minus.tail_estimate, (plus, minus))
        logging.info('Remainder sum of %s at %s, %s, %s method', f.label, mp.nstr(z0, 15), direction.value, method)
        start = stripping_start(z0, direction)
        probe = probe_for(probe, start)
        if method not in ('geometric', 'lattice', 'parametric'):
            raise DomainError(f'unknown method {method!r}, expected geometric, lattice or parametric')
        if method == 'lattice':
            sampler = lattice_residual(f, z0, direction, probe, order=order)
        else:
            trace = psum_trace(f, z0, direction, int(mp.ceil(probe.reach())) + 2)
            expansion = f.em_expansion(z0, order, DEFAULT_K, direction.direction)
            if method == 'geometric':
                sampler = strip_geometric(trace, expansion.smooth_part, start=start, rates=expansion.rates)
            else:
                sampler = strip_parametric(trace, expansion.smooth_part, start=start)
        outcome = clim(sampler, max_power, probe)
        logging.info('Remainder sum = %s (P^%d)', mp.nstr(outcome.limit, 15), outcome.averaging_power)
        return outcome


def remainder_value(f, z0, direction=DirectionSpec.PLUS, k=None, order=None):
    """ The remainder sum from the Euler-Maclaurin constant and the mean of the periodic part,
        without building the trace. """
    with precision_guard():
        z0 = to_complex(z0)
        if direction is DirectionSpec.BIDIRECTIONAL:
            return (remainder_value(f, z0, DirectionSpec.PLUS_ZERO, k, order)
                    + remainder_value(f, z0, DirectionSpec.MINUS, k, order))
        expansion = f.em_expansion(z0, order, DEFAULT_K if k is None else k, direction.direction)
        value = expansion.cesaro_value()
        if direction.includes_zero:
            value += f.value(z0)
        return value


def finite_sum(f, upper, k=None):
    """ f(1) + ... + f(upper), extended to any complex upper as R+[f](0) - R+[f](upper). """
    with precision_guard():
        return remainder_value(f, 0, k=k) - remainder_value(f, upper, k=k)


def product_summand(f):
    """ The summand ln(f) of a remainder product: Log for the identity, Const(ln c) for a constant. """
    if isinstance(f, Power) and f.s == -1:
        return Log()
    if isinstance(f, Const):
        if f.c == 0:
            raise UnsupportedSummandError('ln 0 is not defined, the constant factor must be non-zero')
        return Const(mp.log(f.c))
    raise UnsupportedSummandError(f'ln of {getattr(f, "label", f)} is not a supported summand')


def remainder_product(f, z0, direction=DirectionSpec.PLUS):
    """ The remainder product, exp(R[ln f](z0)). """
    with precision_guard():
        return mp.exp(remainder_value(product_summand(f), z0, direction))


def finite_product(f, upper):
    """ f(1) * ... * f(upper), extended to any complex upper. """
    with precision_guard():
        return mp.exp(finite_sum(product_summand(f), upper))
