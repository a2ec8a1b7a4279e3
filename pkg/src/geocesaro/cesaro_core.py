""" This module holds the contours, the averaging operator P and the generalised Cesaro limit.

    A divergent series is summed along a ray t -> z0 + t*u (u in {1, -1, i, -i}) by:
        - building the piecewise constant p-sum function of its partial sums (PSumTrace),
        - subtracting the eigenfunctions a*z^rho*(ln z)^m of P in the geometric variable z (strip_geometric),
        - averaging the residual n times with P[h](t) = (1/t) * integral of h over [0, t],
        - reading the limit of P^n at large t (clim).

    Every average is exact: the trace is integrated segment by segment with closed-form
    moments, the smooth parts with closed-form primitives or Gauss-Legendre quadrature.
"""

import bisect
import dataclasses
import enum
import logging

from mpmath import mp

from geocesaro.errors import DomainError, GeometryMisuseError, NotCesaroSummable, SingularEigenvalueError
from geocesaro.values import ZERO_COEFF, precision_guard, to_complex

# Guard digits of the exact averages: the trace and the stripped terms are large, the residual is not.
AVERAGE_GUARD_DPS = 20


class Direction(enum.Enum):
    """ The four rays of the complex plane that contours may follow. """
    POS_REAL = (1, 0)
    NEG_REAL = (-1, 0)
    POS_IMAG = (0, 1)
    NEG_IMAG = (0, -1)

    @property
    def unit(self):
        """ The unit step of the ray, as a complex number. """
        return mp.mpc(*self.value)


@dataclasses.dataclass(frozen=True)
class Ray:
    """ The contour t -> base + t*unit, parametrised by arc length t >= 0. """
    base: mp.mpc
    direction: Direction = Direction.POS_REAL

    def __post_init__(self):
        object.__setattr__(self, 'base', to_complex(self.base))

    def point(self, t):
        """ Return the geometric point z = gamma(t). """
        if t == 0:
            return self.base
        return self.base + mp.mpf(t) * self.direction.unit

    def escape_time(self, radius):
        """ The arc length after which the ray stays outside the disk |z| < radius. """
        along = (self.base * mp.conj(self.direction.unit)).real
        across = (self.base * mp.conj(self.direction.unit)).imag
        discriminant = mp.mpf(radius) ** 2 - across ** 2
        if discriminant <= 0:
            return mp.mpf(0)
        return max(mp.mpf(0), -along + mp.sqrt(discriminant))


@dataclasses.dataclass(frozen=True)
class AsymptoticTerm:
    """ The term coeff * z^power * (ln z)^log_power * alpha^alpha_power.
        alpha is the fractional position inside the current lattice cell. """
    coeff: mp.mpc
    power: mp.mpc
    log_power: int = 0
    alpha_power: int = 0

    def __post_init__(self):
        object.__setattr__(self, 'coeff', to_complex(self.coeff))
        object.__setattr__(self, 'power', to_complex(self.power))
        if int(self.log_power) != self.log_power or self.log_power < 0:
            raise DomainError(f'log_power must be a non-negative integer, got {self.log_power}')
        if int(self.alpha_power) != self.alpha_power or self.alpha_power < 0:
            raise DomainError(f'alpha_power must be a non-negative integer, got {self.alpha_power}')

    @property
    def key(self):
        """ The merge key of the term. """
        return (self.power, self.log_power, self.alpha_power)

    @property
    def is_constant(self):
        """ A constant is the contribution of the term to the limit, it is never stripped. """
        return self.power == 0 and self.log_power == 0 and self.alpha_power == 0

    def evaluate(self, z, alpha=0):
        """ Value of the term at the geometric point z, with principal branches. """
        value = self.coeff
        if self.power != 0:
            value *= mp.power(z, self.power)
        if self.log_power:
            value *= mp.log(z) ** self.log_power
        if self.alpha_power:
            value *= mp.mpf(alpha) ** self.alpha_power
        return value


@dataclasses.dataclass(frozen=True)
class AsymptoticExpansion:
    """ A finite sum of AsymptoticTerm, merged on their (power, log_power, alpha_power) key.
        'geometric' tells whether the terms are functions of z = gamma(t) or of t itself.
        'remainder_power' describes the O(z^remainder_power) part that was left out. """
    terms: tuple = ()
    geometric: bool = True
    remainder_power: mp.mpc = None

    def __post_init__(self):
        merged = {}
        for term in self.terms:
            if term.key in merged:
                merged[term.key] = dataclasses.replace(merged[term.key], coeff=merged[term.key].coeff + term.coeff)
            else:
                merged[term.key] = term
        kept = tuple(term for term in merged.values() if abs(term.coeff) >= ZERO_COEFF)
        object.__setattr__(self, 'terms', kept)

    def evaluate(self, z, alpha=0):
        """ Sum of the terms at the geometric point z. """
        return mp.fsum(term.evaluate(z, alpha) for term in self.terms)

    def as_parametric(self):
        """ The same terms, read as functions of the arc length t. """
        return dataclasses.replace(self, geometric=False)

    @property
    def constant(self):
        """ The coefficient of the constant term, 0 if there is none. """
        return mp.fsum(term.coeff for term in self.terms if term.is_constant)


@dataclasses.dataclass(frozen=True)
class CesaroOutcome:
    """ A generalised Cesaro limit with its diagnostics. """
    limit: mp.mpc
    averaging_power: int
    stripped: AsymptoticExpansion
    tail_estimate: mp.mpf
    components: tuple = ()


def log_power_moment(power, log_power, u):
    """ The primitive of u^power * (ln u)^log_power that vanishes at u = 0, for integer power >= 0. """
    if u == 0:
        return mp.mpf(0)
    log_u = mp.log(u)
    scale = power + 1
    total = mp.mpf(0)
    for j in range(log_power + 1):
        total += (-1) ** (log_power - j) * mp.factorial(log_power) / mp.factorial(j) * log_u ** j / mp.mpf(scale) ** (log_power - j + 1)
    return mp.power(u, scale) * total


def _combine_moments(t, power, moments):
    """ P^power at t from the moments M_r(t) = integral over [0, t] of h(u)*(ln u)^r.
        P^n[h](t) = (1/((n-1)! t)) * integral of h(u)*ln(t/u)^(n-1), expanded binomially. """
    order = power - 1
    log_t = mp.log(t)
    total = mp.fsum(mp.binomial(order, r) * log_t ** (order - r) * (-1) ** r * moments[r] for r in range(order + 1))
    return total / (t * mp.factorial(order))


@dataclasses.dataclass(frozen=True)
class PSumTrace:
    """ The p-sum function along a ray: 'jumps' is a sequence of (t, value), the value
        holding on [t_i, t_i+1). The trace is 0 before the first jump.
        'period' is the lattice spacing of the jumps, used to align the probes. """
    ray: Ray
    jumps: tuple
    period: mp.mpf = mp.mpf(1)
    _cache: dict = dataclasses.field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        jumps = tuple((mp.mpf(t), to_complex(value)) for t, value in self.jumps)
        if not jumps:
            raise DomainError('a p-sum trace needs at least one jump')
        if jumps[0][0] < 0:
            raise DomainError(f'the first jump must be at t >= 0, got {jumps[0][0]}')
        for (t_a, _), (t_b, _) in zip(jumps, jumps[1:]):
            if not t_b > t_a:
                raise DomainError(f'jump positions must be strictly increasing, got {t_a} then {t_b}')
        object.__setattr__(self, 'jumps', jumps)
        object.__setattr__(self, 'period', mp.mpf(self.period))
        object.__setattr__(self, '_times', [t for t, _ in jumps])

    @property
    def horizon(self):
        """ Position of the last jump. """
        return self.jumps[-1][0]

    def _index(self, t):
        return bisect.bisect_right(self._times, t) - 1  # pylint: disable=no-member

    def value_at(self, t):
        """ The partial sum held at arc length t. """
        index = self._index(t)
        if index < 0:
            return mp.mpc(0)
        return self.jumps[index][1]

    def _prefix(self, log_power):
        key = (log_power, mp.prec)
        prefix = self._cache.get(key)
        if prefix is None:
            prefix = [mp.mpc(0)]
            primitives = [log_power_moment(0, log_power, t) for t in self._times]  # pylint: disable=no-member
            for index in range(len(self.jumps) - 1):
                prefix.append(prefix[-1] + self.jumps[index][1] * (primitives[index + 1] - primitives[index]))
            self._cache[key] = prefix
        return prefix

    def moment(self, t, log_power):
        """ Integral over [0, t] of the trace times (ln u)^log_power, in closed form. """
        index = self._index(t)
        if index < 0:
            return mp.mpc(0)
        start, value = self.jumps[index]
        partial = value * (log_power_moment(0, log_power, t) - log_power_moment(0, log_power, start))
        return self._prefix(log_power)[index] + partial

    def average_raw(self, t, power):
        """ P^power of the trace at t, at the current precision. """
        if power == 0:
            return self.value_at(t)
        return _combine_moments(t, power, [self.moment(t, r) for r in range(power)])

    def average(self, t, power=1):
        """ P^power of the trace at t, exactly. """
        t = mp.mpf(t)
        if t <= 0:
            raise DomainError(f'the average is defined for t > 0, got {t}')
        with mp.workdps(mp.dps + AVERAGE_GUARD_DPS):
            value = self.average_raw(t, power)
        return +value


class PeriodicPolynomial:
    """ The periodic function q(alpha) = sum of coeffs[i]*alpha^i, where alpha is the fractional
        position (t - origin)/period modulo 1. It vanishes before 'origin'. """
    def __init__(self, coeffs, origin=0, period=1):
        self.coeffs = tuple(to_complex(coeff) for coeff in coeffs)
        self.origin = mp.mpf(origin)
        self.period = mp.mpf(period)
        self.__prefix = {}

    @property
    def mean(self):
        """ The Cesaro mean of q, i.e. the integral of q over one period. """
        return mp.fsum(coeff / (i + 1) for i, coeff in enumerate(self.coeffs))

    @property
    def guard_dps(self):
        """ The binomial expansion of (u - a)^i cancels about i*log10(u) digits. """
        return 8 * max(1, len(self.coeffs) - 1) + 10

    def value(self, t):
        """ q(alpha(t)). """
        if t < self.origin:
            return mp.mpc(0)
        position = (mp.mpf(t) - self.origin) / self.period
        alpha = position - mp.floor(position)
        return mp.polyval(list(reversed(self.coeffs)), alpha)

    def _segment(self, log_power, cell_start, fraction):
        """ Integral of q(alpha)*(ln u)^log_power over [cell_start, cell_start + fraction*period]. """
        if log_power == 0:
            return self.period * mp.fsum(coeff * fraction ** (i + 1) / (i + 1) for i, coeff in enumerate(self.coeffs))
        end = cell_start + fraction * self.period
        total = mp.mpc(0)
        for i, coeff in enumerate(self.coeffs):
            if coeff == 0:
                continue
            inner = mp.mpf(0)
            for power in range(i + 1):
                inner += mp.binomial(i, power) * (-cell_start) ** (i - power) * (
                    log_power_moment(power, log_power, end) - log_power_moment(power, log_power, cell_start))
            total += coeff * inner / self.period ** i
        return total

    def moment(self, t, log_power):
        """ Integral over [0, t] of q(alpha(u))*(ln u)^log_power. """
        if t <= self.origin:
            return mp.mpc(0)
        position = (mp.mpf(t) - self.origin) / self.period
        cells = int(mp.floor(position))
        key = (log_power, mp.prec)
        prefix = self.__prefix.setdefault(key, [mp.mpc(0)])
        while len(prefix) <= cells:
            cell_start = self.origin + (len(prefix) - 1) * self.period
            prefix.append(prefix[-1] + self._segment(log_power, cell_start, mp.mpf(1)))
        partial = self._segment(log_power, self.origin + cells * self.period, position - cells)
        return prefix[cells] + partial

    def average_raw(self, t, power):
        """ P^power of q at t. """
        if power == 0:
            return self.value(t)
        with mp.workdps(mp.dps + self.guard_dps):
            average = _combine_moments(t, power, [self.moment(t, r) for r in range(power)])
        return +average


def _primitive(power, log_power, z):
    """ A primitive in z of z^power * (ln z)^log_power. """
    log_z = mp.log(z)
    if power == -1:
        return log_z ** (log_power + 1) / (log_power + 1)
    head = mp.power(z, power + 1) / (power + 1)
    primitive = head
    for m in range(1, log_power + 1):
        primitive = head * log_z ** m - m / (power + 1) * primitive
    return primitive


class ResidualSampler:  # pylint: disable=too-many-instance-attributes
    """ The function clim works on: trace + periodic polynomial - stripped terms.

        The stripped terms are evaluated at the geometric point z = gamma(t) (geometric=True),
        or at t itself (geometric=False, the parametric negative control).
        They only apply from arc length 'start' on, far enough from the origin for the
        principal branch of z^rho to stay continuous along the ray.
        'rates' lists the extra exponents e (t^e, -1 < Re e < 0) the tail decays with. """
    def __init__(self, trace, terms=(), periodic=None, start=0,  # pylint: disable=too-many-arguments
                 geometric=True, rates=(), expansion=None):
        self.trace = trace
        self.terms = tuple(terms)
        self.periodic = periodic
        self.start = mp.mpf(start)
        self.geometric = geometric
        self.rates = tuple(to_complex(rate) for rate in rates)
        self.expansion = expansion if expansion is not None else AsymptoticExpansion(self.terms, geometric)

    @property
    def period(self):
        """ Lattice spacing of the underlying trace. """
        return self.trace.period

    @property
    def horizon(self):
        """ Last arc length at which the trace is complete. """
        return self.trace.horizon

    def _geometric_point(self, t):
        if self.geometric:
            return self.trace.ray.point(t)
        return mp.mpc(t)

    def smooth(self, t):
        """ Value of the stripped terms at arc length t. """
        if t < self.start or not self.terms:
            return mp.mpc(0)
        z = self._geometric_point(t)
        return mp.fsum(term.evaluate(z) for term in self.terms)

    def value(self, t):
        """ Value of the residual at arc length t. """
        total = self.trace.value_at(t) - self.smooth(t)
        if self.periodic is not None:
            total += self.periodic.value(t)
        return total

    def _is_polynomial(self):
        return all(term.log_power == 0 and term.power.imag == 0 and term.power.real >= 0
                   and mp.isint(term.power) for term in self.terms)

    def _smooth_average(self, t, power):
        if t <= self.start or not self.terms:
            return mp.mpc(0)
        if power == 1:
            unit = self.trace.ray.direction.unit if self.geometric else mp.mpc(1)
            z_start = self._geometric_point(self.start)
            z_end = self._geometric_point(t)
            integral = mp.fsum(term.coeff * (_primitive(term.power, term.log_power, z_end)
                                             - _primitive(term.power, term.log_power, z_start))
                               for term in self.terms)
            return integral / unit / t
        if self._is_polynomial():
            return self._polynomial_average(t, power)
        order = power - 1
        nodes = [self.start]
        while nodes[-1] * 2 < t:
            nodes.append(nodes[-1] * 2)
        nodes.append(t)
        integral = mp.quad(lambda u: self.smooth(u) * mp.log(t / u) ** order, nodes, method='gauss-legendre')
        return integral / (t * mp.factorial(order))

    def _polynomial_average(self, t, power):
        """ P^power of integer powers of z = base + unit*u, through the exact moments of u^l (ln u)^r. """
        base = self.trace.ray.base if self.geometric else mp.mpc(0)
        unit = self.trace.ray.direction.unit if self.geometric else mp.mpc(1)
        moments = []
        for r in range(power):
            moment = mp.mpc(0)
            for term in self.terms:
                degree = int(term.power.real)
                for l in range(degree + 1):  # noqa: E741
                    weight = mp.binomial(degree, l) * base ** (degree - l) * unit ** l
                    moment += term.coeff * weight * (log_power_moment(l, r, t) - log_power_moment(l, r, self.start))
            moments.append(moment)
        return _combine_moments(t, power, moments)

    def average(self, t, power=1):
        """ P^power of the residual at arc length t. """
        t = mp.mpf(t)
        if t <= 0:
            raise DomainError(f'the average is defined for t > 0, got {t}')
        with mp.workdps(mp.dps + AVERAGE_GUARD_DPS):
            if power == 0:
                total = self.value(t)
            else:
                total = self.trace.average_raw(t, power) - self._smooth_average(t, power)
                if self.periodic is not None:
                    total += self.periodic.average_raw(t, power)
        return +total


@dataclasses.dataclass(frozen=True)
class LimitProbe:
    """ Where and how strictly the averaged residual is inspected.
        The probes are t = base * 2^i * period, for i in 0..levels-1; 'offsets' are the
        fractions of a period where the off-lattice oscillation is measured. """
    base: int = 64
    levels: int = 7
    tol: float = 1e-8
    window: int = 3
    offsets: tuple = (0.25, 0.5, 0.75)

    def __post_init__(self):
        if self.base <= 0:
            raise DomainError(f'the probe base must be positive, got {self.base}')
        if self.window < 1 or self.levels < self.window + 1:
            raise DomainError(f'{self.levels} probe levels cannot hold a window of {self.window}')
        if not self.tol > 0:
            raise DomainError(f'the probe tolerance must be positive, got {self.tol}')

    def points(self, period=1):
        """ The probe positions, aligned on the lattice of the trace. """
        return [mp.mpf(self.base) * 2 ** i * mp.mpf(period) for i in range(self.levels)]

    def reach(self, period=1):
        """ The largest arc length the probe evaluates. """
        return self.points(period)[-1] + max(self.offsets, default=0) * mp.mpf(period)


def apply_P_exact(trace, t, power=1):  # pylint: disable=invalid-name
    """ The exact average P^power of a p-sum trace at t > 0. """
    with precision_guard():
        return trace.average(t, power)


def eigenvalue_of_P(power):  # pylint: disable=invalid-name
    """ The eigenvalue 1/(power+1) of P on z^power. """
    with precision_guard():
        power = to_complex(power)
        if power == -1:
            raise SingularEigenvalueError('z^-1 is not an eigenfunction of P')
        return 1 / (power + 1)


def _strippable(expansion):
    terms = []
    for term in expansion.terms:
        if term.alpha_power:
            raise DomainError(f'the term {term} depends on the cell position and cannot be stripped')
        if term.is_constant:
            logging.debug('Constant term %s kept in the limit', term.coeff)
            continue
        if term.power == 0:
            raise DomainError(f'(ln z)^{term.log_power} has eigenvalue 1 and cannot be stripped')
        terms.append(term)
    return terms


def _default_start(trace):
    escape = trace.ray.escape_time(2 * abs(trace.ray.base) + 1)
    for t, _ in trace.jumps:
        if t >= escape and t > 0:
            return t
    raise DomainError(f'the trace ends before the ray leaves the origin behind (t = {escape})')


def strip_geometric(trace, expansion, start=None, rates=()):
    """ Subtract the eigenfunctions of 'expansion' from the trace, at the geometric point z = gamma(t). """
    if not expansion.geometric:
        raise GeometryMisuseError('the expansion is written in the arc length t, not in the geometric variable z')
    terms = _strippable(expansion)
    start = _default_start(trace) if start is None else start
    logging.debug('Stripping %d terms geometrically from t = %s', len(terms), start)
    return ResidualSampler(trace, terms, start=start, geometric=True, rates=rates, expansion=expansion)


def strip_parametric(trace, expansion, start=None):
    """ Subtract the same terms evaluated at the arc length t instead of z = gamma(t).
        This is not a valid summation method, it is kept to show why the geometry matters. """
    terms = _strippable(expansion)
    start = _default_start(trace) if start is None else start
    logging.debug('Stripping %d terms parametrically from t = %s', len(terms), start)
    return ResidualSampler(trace, terms, start=start, geometric=False, expansion=expansion.as_parametric())


def _basis(rates, power):
    basis = [lambda tau: mp.mpf(1)]
    basis += [lambda tau, rate=rate: mp.power(tau, rate) for rate in rates]
    basis += [lambda tau, j=j: mp.log(tau) ** j / tau for j in range(max(power, 1) + 1)]
    basis += [lambda tau: 1 / tau ** 2, lambda tau: 1 / tau ** 3]
    return basis


def _extrapolate(points, values, basis):
    """ Richardson extrapolation: fit the values on the basis, return the constant coefficient. """
    size = min(len(points), len(basis))
    points, values, basis = points[-size:], values[-size:], basis[:size]
    scale = points[0]
    matrix = mp.matrix(size, size)
    rhs = mp.matrix(size, 1)
    for i, (t, value) in enumerate(zip(points, values)):
        for j, function in enumerate(basis):
            matrix[i, j] = function(t / scale)
        rhs[i] = value
    return mp.lu_solve(matrix, rhs)[0]


def _grows_like_log(values, tol):
    differences = [b - a for a, b in zip(values, values[1:])]
    last = differences[-1]
    if abs(last) <= 10 * tol * max(1, abs(values[-1])):
        return False
    return all(abs(difference - last) <= abs(last) / 10 for difference in differences[-3:])


def _window_deviation(sampler, probe, points, values, power, limit):  # pylint: disable=too-many-arguments
    """ The largest |P^power - limit| over the last probe window, on and off the lattice. """
    deviation = mp.mpf(0)
    for t, value in zip(points[-probe.window:], values[-probe.window:]):
        deviation = max(deviation, abs(value - limit))
        for offset in probe.offsets:
            deviation = max(deviation, abs(sampler.average(t + offset * sampler.period, power) - limit))
    return deviation


def clim(sampler, max_power=4, probe=None):  # pylint: disable=too-many-locals
    """ The generalised Cesaro limit of a residual: the limit of P^n at large t, for the smallest n <= max_power that has one. """
    probe = LimitProbe() if probe is None else probe
    if isinstance(sampler, PSumTrace):
        sampler = ResidualSampler(sampler)
    if max_power < 0:
        raise DomainError(f'max_power must be non-negative, got {max_power}')
    with precision_guard():
        points = probe.points(sampler.period)
        if sampler.horizon + sampler.period < probe.reach(sampler.period):
            raise DomainError(f'the trace stops at t = {sampler.horizon}, before the last probe at {probe.reach(sampler.period)}')
        size = probe.levels - probe.window + 1
        diagnostics = []
        log_growth = False
        for power in range(max_power + 1):
            values = [sampler.average(t, power) for t in points]
            oscillations = []
            for t, value in ((points[0], values[0]), (points[-1], values[-1])):
                shifted = [sampler.average(t + offset * sampler.period, power) for offset in probe.offsets]
                oscillations.append(max((abs(other - value) for other in shifted), default=mp.mpf(0)))
            basis = _basis(sampler.rates, power)
            estimates = [_extrapolate(points[i:i + size], values[i:i + size], basis) for i in range(probe.window)]
            limit = estimates[-1]
            spread = max(abs(a - b) for a in estimates for b in estimates)
            bound = probe.tol * max(1, abs(limit))
            settled = spread <= bound
            damped = oscillations[-1] <= bound or 4 * oscillations[-1] <= oscillations[0]
            logging.debug('P^%d: probes %s, estimates %s, oscillations %s', power, values, estimates, oscillations)
            diagnostics.append({'power': power, 'limit': limit, 'spread': spread,
                                'oscillation': oscillations[-1], 'settled': settled, 'damped': damped})
            if settled and damped:
                tail = max(spread, _window_deviation(sampler, probe, points, values, power, limit))
                logging.info('Cesaro limit %s reached with P^%d (tail %s)', limit, power, mp.nstr(tail, 3))
                return CesaroOutcome(limit, power, sampler.expansion, tail)
            log_growth = log_growth or _grows_like_log(values, probe.tol)
        message = f'no power of P up to {max_power} gives a limit'
        if log_growth:
            message += ': the residual grows like ln(t)'
        raise NotCesaroSummable(message, diagnostics, log_growth)
