""" Euler-Maclaurin expansions of the partial sums of z^-s, ln z and constants along a ray,
    re-expressed in the geometric variable z through the binomial expansion.

    The partial sum s_k = sum of f(z0 + u*j) for j = 1..k reads, with w = z0 + u*k:
        s_k = E(w) + C + o(1)
        E(w) = F(w)/u + f(w)/2 + sum of B_2i/(2i)! * u^(2i-1) * f^(2i-1)(w), for i = 1..order
    where F is a primitive of f and C the constant of the expansion.
"""

import dataclasses
import functools
import logging
import math
from fractions import Fraction

from mpmath import mp

from geocesaro.cesaro_core import AsymptoticExpansion, AsymptoticTerm, Direction
from geocesaro.errors import DomainError, PoleError
from geocesaro.values import precision_guard, to_complex

DEFAULT_TABLE_SIZE = 30
DEFAULT_K = 64
DEFAULT_ORDER = 3

# The smooth part keeps the re-expanded terms above this power: the others average to o(1/t).
SMOOTH_POWER_FLOOR = -1


def bernoulli_numbers(n):
    """ Bernoulli numbers B_0..B_n as exact Fractions, with the Akiyama-Tanigawa algorithm.
        The convention is B_1 = +1/2. """
    if n < 0:
        raise DomainError(f'n must be >= 0, got {n}')
    row = [Fraction(0)] * (n + 1)
    numbers = []
    for m in range(n + 1):
        row[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            row[j - 1] = j * (row[j - 1] - row[j])
        numbers.append(row[0])
    return numbers


@dataclasses.dataclass(frozen=True)
class BernoulliTable:
    """ The exact Bernoulli numbers B_0..B_size. """
    values: tuple

    @property
    def size(self):
        """ Index of the last number of the table. """
        return len(self.values) - 1

    def exact(self, index):
        """ B_index as a Fraction. """
        if index > self.size:
            return bernoulli_table(index).exact(index)
        return self.values[index]

    def __getitem__(self, index):
        """ B_index at the working precision. """
        value = self.exact(index)
        return mp.mpf(value.numerator) / value.denominator


@functools.lru_cache(maxsize=None)
def bernoulli_table(size=DEFAULT_TABLE_SIZE):
    """ The shared table of the Bernoulli numbers, computed once per size. """
    return BernoulliTable(tuple(bernoulli_numbers(max(size, 2))))


def falling_factorial(x, m):
    """ x*(x-1)*...*(x-m+1), 1 when m = 0. """
    result = mp.mpc(1)
    for j in range(m):
        result *= x - j
    return result


def generalized_binomial(rho, i):
    """ The binomial coefficient C(rho, i) for any complex rho. """
    return falling_factorial(to_complex(rho), i) / mp.factorial(i)


@dataclasses.dataclass(frozen=True)
class CorrectionTerm:
    """ The Bernoulli term coeff * w^power that is added to (partial sum - leading part)
        to obtain the constant of the expansion. """
    order: int
    coeff: mp.mpc
    power: mp.mpc


@dataclasses.dataclass(frozen=True)
class EMExpansion:  # pylint: disable=too-many-instance-attributes
    """ The Euler-Maclaurin expansion of a partial sum along a ray.

        'lattice_terms' is E(w), written in the lattice variable w = z0 + u*k.
        'smooth_part' is E re-expanded in the geometric variable z = w + u*alpha, with every
        power of alpha replaced by its mean over a cell: the eigenfunctions to strip.
        'periodic' lists the coefficients of alpha^i in the power-zero part, whose Cesaro mean
        belongs to the limit. """
    smooth_part: AsymptoticExpansion
    constant: mp.mpc
    correction_terms: tuple
    truncation_order: int
    lattice_terms: AsymptoticExpansion
    periodic: tuple
    direction: Direction
    k: int

    def lattice_value(self, w):
        """ E(w). """
        return self.lattice_terms.evaluate(w)

    def cesaro_value(self):
        """ The generalised Cesaro limit of the remainder: C plus the mean of the periodic part. """
        return self.constant + mp.fsum(coeff / (i + 1) for i, coeff in enumerate(self.periodic))

    @property
    def rates(self):
        """ Exponents -1 < Re e < 0 of the alpha-dependent terms that are left in the residual. """
        rates = []
        for term in self.lattice_terms.terms:
            if mp.isint(term.power):
                continue
            j = 1
            while (term.power - j).real > -1:
                if (term.power - j).real < 0 and term.power - j not in rates:
                    rates.append(term.power - j)
                j += 1
        return tuple(rates)


def _series_product(left, right, depth):
    return [mp.fsum(left[a] * right[i - a] for a in range(i + 1)) for i in range(depth)]


def binomial_regeometrize(term, depth=None, direction=Direction.POS_REAL):
    """ Re-expand coeff * w^rho * (ln w)^m at w = z - u*alpha in descending powers of z.

        With x = u*alpha/z:
            (z - u*alpha)^rho = z^rho * sum of C(rho, i)*(-x)^i
            ln(z - u*alpha) = ln z - sum of x^j/j
        The default depth leaves a remainder O(z^(Re rho - depth)) with Re rho - depth < -1. """
    rho = term.power
    if depth is None:
        depth = int(math.floor(rho.real + 1)) + 1
    if depth < 1:
        raise DomainError(f'depth must be >= 1, got {depth}')
    unit = direction.unit
    binomial = [generalized_binomial(rho, i) * (-1) ** i for i in range(depth)]
    logarithm = [mp.mpc(0)] + [mp.mpc(-1) / j for j in range(1, depth)]
    terms = []
    # power_of_log[a] holds the series of (ln(1 - x))^a.
    power_of_log = [mp.mpc(1)] + [mp.mpc(0)] * (depth - 1)
    for a in range(term.log_power + 1):
        weight = mp.binomial(term.log_power, a)
        series = _series_product(binomial, power_of_log, depth)
        for i, coeff in enumerate(series):
            if coeff != 0:
                terms.append(AsymptoticTerm(term.coeff * weight * coeff * unit ** i, rho - i, term.log_power - a, i))
        power_of_log = _series_product(power_of_log, logarithm, depth)
    return AsymptoticExpansion(tuple(terms), geometric=True, remainder_power=rho - depth)


def _smooth_and_periodic(lattice_terms, direction):
    regeometrized = []
    for term in lattice_terms.terms:
        depth = max(1, int(math.floor(term.power.real)) + 3)
        regeometrized.extend(binomial_regeometrize(term, depth, direction).terms)
    degree = max((term.alpha_power for term in regeometrized), default=0)
    periodic = [mp.mpc(0)] * (degree + 1)
    averaged = []
    for term in regeometrized:
        if term.power == 0 and term.log_power == 0:
            periodic[term.alpha_power] += term.coeff
        elif term.power.real > SMOOTH_POWER_FLOOR and term.power != 0:
            averaged.append(AsymptoticTerm(term.coeff / (term.alpha_power + 1), term.power, term.log_power))
    while len(periodic) > 1 and periodic[-1] == 0:
        periodic.pop()
    smooth = AsymptoticExpansion(tuple(averaged), geometric=True, remainder_power=mp.mpc(SMOOTH_POWER_FLOOR))
    return smooth, tuple(periodic)


def effective_k(z0, k, direction=Direction.POS_REAL):
    """ k, raised so that w = z0 + u*k lies at least k steps past the origin along the ray. """
    along = (to_complex(z0) / direction.unit).real
    return int(k) + max(0, int(math.ceil(-along)))


def _check_lattice_pole(z0, direction, what):
    position = -to_complex(z0) / direction.unit
    if position.imag == 0 and mp.isint(position.real) and position.real >= 1:
        raise PoleError(f'{what} has a pole at z0 + u*{int(position.real)} = 0')


def _assemble(z0, k, order, direction, summand, leading, derivative_term, extra_dps=10):  # pylint: disable=too-many-arguments,too-many-locals
    """ Build the EMExpansion of the partial sums of 'summand', given its leading terms in w
        and 'derivative_term(m)' = (coeff, power) such that f^(m)(w) = coeff * w^power. """
    if k < 1:
        raise DomainError(f'k must be >= 1, got {k}')
    if order < 0:
        raise DomainError(f'order must be >= 0, got {order}')
    z0 = to_complex(z0)
    unit = direction.unit
    k_used = effective_k(z0, k, direction)
    table = bernoulli_table(max(DEFAULT_TABLE_SIZE, 2 * order))
    corrections = []
    terms = list(leading)
    for i in range(1, order + 1):
        if derivative_term is None:
            break
        coeff, power = derivative_term(2 * i - 1)
        coeff = table[2 * i] / mp.factorial(2 * i) * unit ** (2 * i - 1) * coeff
        corrections.append(CorrectionTerm(i, -coeff, power))
        terms.append(AsymptoticTerm(coeff, power))
    lattice_terms = AsymptoticExpansion(tuple(terms), geometric=False)
    w = z0 + unit * k_used
    with mp.workdps(mp.dps + extra_dps):
        partial_sum = mp.fsum(summand(z0 + unit * j) for j in range(1, k_used + 1))
        constant = partial_sum - lattice_terms.evaluate(w)
    smooth, periodic = _smooth_and_periodic(lattice_terms, direction)
    logging.debug('EM expansion at k = %d, order %d: constant %s, periodic %s', k_used, order, constant, periodic)
    return EMExpansion(smooth, +constant, tuple(corrections), order, lattice_terms, periodic, direction, k_used)


def em_log_expansion(z0, order=DEFAULT_ORDER, k=DEFAULT_K, direction=Direction.POS_REAL):
    """ The Euler-Maclaurin expansion of the sum of ln(z0 + u*j), j = 1..k.
        Its constant C gives ln Gamma(z0 + 1) = ln(2*pi)/2 - C. """
    with precision_guard():
        _check_lattice_pole(z0, direction, 'ln')
        unit = direction.unit
        leading = (AsymptoticTerm(1 / unit, 1, 1), AsymptoticTerm(-1 / unit, 1, 0), AsymptoticTerm(mp.mpf(1) / 2, 0, 1))

        def derivative_term(m):
            return (-1) ** (m - 1) * mp.factorial(m - 1), -m
        return _assemble(z0, k, order, direction, mp.log, leading, derivative_term)


def em_power_expansion(z0, s, order=DEFAULT_ORDER, k=DEFAULT_K, direction=Direction.POS_REAL):  # pylint: disable=too-many-arguments
    """ The Euler-Maclaurin expansion of the sum of (z0 + u*j)^-s, j = 1..k. """
    with precision_guard():
        s = to_complex(s)
        if s == 1:
            raise PoleError('the harmonic case s = 1 has a logarithmic leading term')
        if not (mp.isint(s) and s.real <= 0):
            _check_lattice_pole(z0, direction, f'z^-{s}')
        unit = direction.unit
        leading = (AsymptoticTerm(1 / (unit * (1 - s)), 1 - s), AsymptoticTerm(mp.mpf(1) / 2, -s))

        def derivative_term(m):
            return falling_factorial(-s, m), -s - m

        def summand(z):
            return mp.power(z, -s)
        extra = int(abs(s.real) * math.log10(effective_k(z0, k, direction) + 1)) + 10
        return _assemble(z0, k, order, direction, summand, leading, derivative_term, extra)


def em_const_expansion(z0, c=1, k=DEFAULT_K, direction=Direction.POS_REAL):
    """ The Euler-Maclaurin expansion of the sum of a constant c, k times: exact for any k. """
    with precision_guard():
        c = to_complex(c)
        unit = direction.unit
        leading = (AsymptoticTerm(c / unit, 1), AsymptoticTerm(c / 2, 0))
        return _assemble(z0, k, 0, direction, lambda z: c, leading, None)
