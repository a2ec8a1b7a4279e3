""" Dilation and scaling invariance of the generalised Cesaro limit, and the operator
    identities behind it:
        P^-1 = H_D + 1, with H_D = t d/dt the generator of the dilations t -> r*t
        H_S = t ln(t) d/dt, the generator of the scalings S_r[f](t) = f(t^(e^r))
        P o S_r = q~(P) o S_r o P, with q~(P) = (1 - e^-r)*P + e^-r
    The scalings are implemented on the positive real ray only.
"""

import dataclasses
import enum
import logging
import math

from mpmath import mp

from geocesaro.asymptotics import DEFAULT_K
from geocesaro.cesaro_core import AsymptoticExpansion, AsymptoticTerm, Direction, LimitProbe, PSumTrace, Ray, clim, strip_geometric
from geocesaro.errors import DomainError, ResolutionError
from geocesaro.remainder_ops import Const, DirectionSpec, Log, Power, probe_for, remainder_sum, remainder_value, stripping_start
from geocesaro.values import precision_guard, to_complex

# Grids of operator samples need at least this many points per decade.
POINTS_PER_DECADE = 5

# Digits of the nested quadratures of the commutation checks.
QUADRATURE_DPS = 20

DILATION_RANGE = (0.1, 10)


@dataclasses.dataclass(frozen=True)
class CorpusFunction:
    """ A registered test function of t > 0, with its derivative and its primitive vanishing at 0 when known. """
    fn_id: str
    value: object
    derivative: object = None
    antiderivative: object = None
    integrable_at_zero: bool = True

    def slope(self, t):
        """ f'(t), analytic when registered, numerical otherwise. """
        if self.derivative is not None:
            return self.derivative(t)
        return mp.diff(self.value, t)


CORPUS = {entry.fn_id: entry for entry in (
    CorpusFunction('const', lambda t: mp.mpf(5) / 2, lambda t: mp.mpf(0), lambda t: mp.mpf(5) / 2 * t),
    CorpusFunction('identity', lambda t: t, lambda t: mp.mpf(1), lambda t: t ** 2 / 2),
    CorpusFunction('square', lambda t: t ** 2, lambda t: 2 * t, lambda t: t ** 3 / 3),
    CorpusFunction('sqrt', mp.sqrt, lambda t: 1 / (2 * mp.sqrt(t)), lambda t: 2 * mp.power(t, 1.5) / 3),
    CorpusFunction('oscillator', lambda t: mp.cos(mp.log(t)), lambda t: -mp.sin(mp.log(t)) / t,
                   lambda t: t * (mp.cos(mp.log(t)) + mp.sin(mp.log(t))) / 2),
    CorpusFunction('t-log-t', lambda t: t * mp.log(t), lambda t: mp.log(t) + 1,
                   lambda t: t ** 2 * mp.log(t) / 2 - t ** 2 / 4),
    CorpusFunction('shifted-reciprocal', lambda t: 1 / (1 + t), antiderivative=lambda t: mp.log(1 + t)),
    CorpusFunction('reciprocal', lambda t: 1 / t, lambda t: -1 / t ** 2, integrable_at_zero=False),
)}


def corpus_function(fn_id):
    """ The registered function 'fn_id'. """
    try:
        return CORPUS[fn_id]
    except KeyError as error:
        raise DomainError(f'unknown corpus function {fn_id!r}, expected one of {", ".join(sorted(CORPUS))}') from error


def _check_grid(grid):
    if len(grid) < 2:
        raise DomainError('a grid needs at least two points')
    for a, b in zip(grid, grid[1:]):
        if not 0 < a < b:
            raise DomainError(f'grid points must be positive and strictly increasing, got {a} then {b}')
        if mp.log10(b / a) > mp.mpf(1) / POINTS_PER_DECADE:
            raise ResolutionError(f'the grid is too coarse between {a} and {b}: at least {POINTS_PER_DECADE} points per decade are needed')


def log_grid(low, high, per_decade=8):
    """ A geometric grid from low to high with 'per_decade' intervals per decade. """
    if not 0 < low < high:
        raise DomainError(f'a grid needs 0 < low < high, got {low} and {high}')
    count = max(2, int(math.ceil(math.log10(high / low) * per_decade)) + 1)
    ratio = (mp.mpf(high) / low) ** (mp.mpf(1) / (count - 1))
    return tuple(mp.mpf(low) * ratio ** i for i in range(count))


@dataclasses.dataclass(frozen=True)
class OperatorSample:
    """ The values of a function on a grid. 'source' names the chain of operators applied to
        the corpus function 'fn_id'; 'function' evaluates the result anywhere. """
    fn_id: str
    grid: tuple
    values: tuple
    source: str = ''
    function: object = dataclasses.field(default=None, compare=False, repr=False)
    derivative: object = dataclasses.field(default=None, compare=False, repr=False)
    antiderivative: object = dataclasses.field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, 'grid', tuple(mp.mpf(t) for t in self.grid))
        _check_grid(self.grid)
        if len(self.values) != len(self.grid):
            raise DomainError(f'{len(self.values)} values for {len(self.grid)} grid points')

    def slope(self, t):
        """ The derivative of the sampled function at t. """
        if self.derivative is not None:
            return self.derivative(t)
        return mp.diff(self.function, t)


def _derived(origin, source, function):
    with precision_guard():
        values = tuple(function(t) for t in origin.grid)
    return OperatorSample(origin.fn_id, origin.grid, values, source, function)


def sample(fn_id, grid):
    """ Sample the corpus function 'fn_id' on the grid. """
    entry = corpus_function(fn_id)
    with precision_guard():
        values = tuple(entry.value(mp.mpf(t)) for t in grid)
    return OperatorSample(fn_id, grid, values, fn_id, entry.value, entry.derivative, entry.antiderivative)


def apply_P_inverse(sample_in):  # pylint: disable=invalid-name
    """ P^-1[f](t) = t*f'(t) + f(t). """
    def inverse(t):
        return t * sample_in.slope(t) + sample_in.function(t)
    return _derived(sample_in, f'P^-1({sample_in.source})', inverse)


class Generator(enum.Enum):
    """ The generators of the dilations and of the scalings. """
    DILATION = 'dilation'
    SCALING = 'scaling'


def apply_generator(sample_in, which):
    """ H_D[f](t) = t*f'(t), H_S[f](t) = t*ln(t)*f'(t). """
    if which is Generator.DILATION:
        def generated(t):
            return t * sample_in.slope(t)
    else:
        def generated(t):
            return t * mp.log(t) * sample_in.slope(t)
    return _derived(sample_in, f'H_{which.value[0].upper()}({sample_in.source})', generated)


def _average(function, t, power):
    """ P^power[f](t) = integral over x > 0 of f(t*exp(-x)) * x^(power-1) * exp(-x) / (power-1)!. """
    if power == 0:
        return function(t)
    weight = mp.factorial(power - 1)
    return mp.quad(lambda x: function(t * mp.exp(-x)) * x ** (power - 1) * mp.exp(-x), [0, 1, mp.inf]) / weight


def apply_P(sample_in):  # pylint: disable=invalid-name
    """ P[f](t) = (1/t) * integral of f over [0, t], from the primitive when it is known. """
    entry = CORPUS.get(sample_in.source)
    if entry is not None and not entry.integrable_at_zero:
        raise DomainError(f'{entry.fn_id} is not integrable at 0')
    if sample_in.antiderivative is not None:
        def averaged(t):
            return sample_in.antiderivative(t) / t
    else:
        def averaged(t):
            return _average(sample_in.function, t, 1)
    return _derived(sample_in, f'P({sample_in.source})', averaged)


def q_tilde(r, p):
    """ q~(p) = (1 - e^-r)*p + e^-r, written p + e^-r*(1 - p) so that q~(1) = 1 exactly. """
    with precision_guard():
        decay = mp.exp(-mp.mpf(r))
        return p + decay * (1 - p)


def _entry_average(entry, t, power):
    if power == 1 and entry.antiderivative is not None:
        return entry.antiderivative(t) / t
    return _average(entry.value, t, power)


def scaling_commutation_power_residual(fn_id, r, t, n):
    """ |P^n[S_r f](t) - q~(P)^n[S_r P^n f](t)|, every P computed by quadrature. """
    if n not in (1, 2, 3):
        raise DomainError(f'n must be 1, 2 or 3, got {n}')
    if not t > 0:
        raise DomainError(f't must be positive, got {t}')
    entry = corpus_function(fn_id)
    if not entry.integrable_at_zero:
        raise DomainError(f'{fn_id} is not integrable at 0, P is not defined on it')
    with mp.workdps(QUADRATURE_DPS):
        r, t = mp.mpf(r), mp.mpf(t)
        exponent = mp.exp(r)
        decay = mp.exp(-r)
        left = _average(lambda u: entry.value(u ** exponent), t, n)

        def scaled_average(u):
            return _entry_average(entry, u ** exponent, n)
        right = mp.fsum(mp.binomial(n, k) * (1 - decay) ** k * decay ** (n - k) * _average(scaled_average, t, k)
                        for k in range(n + 1))
        logging.debug('P^%d o S_%s on %s at t = %s: %s against %s', n, r, fn_id, t, left, right)
        return abs(left - right)


def scaling_commutation_residual(fn_id, r, t):
    """ |P[S_r f](t) - q~(P)[S_r P f](t)|. """
    return scaling_commutation_power_residual(fn_id, r, t, 1)


def scaling_eigen_residual(rho, m, r, grid):
    """ The largest relative gap between z^rho*(ln z)^m composed with t -> t^r and r^m * z^(r*rho) * (ln z)^m on the grid. """
    _check_grid(tuple(mp.mpf(t) for t in grid))
    with precision_guard():
        rho, r = to_complex(rho), mp.mpf(r)
        worst = mp.mpf(0)
        for t in grid:
            t = mp.mpf(t)
            scaled = mp.power(t ** r, rho) * mp.log(t ** r) ** m
            expected = r ** m * mp.power(t, r * rho) * mp.log(t) ** m
            worst = max(worst, abs(scaled - expected) / max(1, abs(expected)))
        return worst


def hs_commutator_residual(fn_id, t, n):
    """ |P^-1 H_S^n f - H_S^n P^-1 f - ((H_S + 1)^n - H_S^n) H_D f| at t.
        With x = ln t, H_D = d/dx and H_S = x d/dx, so that n = 1 gives [P^-1, H_S] = H_D. """
    if n not in (1, 2, 3):
        raise DomainError(f'n must be 1, 2 or 3, got {n}')
    if not t > 0:
        raise DomainError(f't must be positive, got {t}')
    entry = corpus_function(fn_id)

    def dilation(function):
        return lambda u: u * mp.diff(function, u)

    def scaling(function):
        return lambda u: u * mp.log(u) * mp.diff(function, u)

    def inverse(function):
        return lambda u: u * mp.diff(function, u) + function(u)

    def power_of(operator, function, times):
        for _ in range(times):
            function = operator(function)
        return function
    with precision_guard():
        t = mp.mpf(t)
        left = inverse(power_of(scaling, entry.value, n))(t) - power_of(scaling, inverse(entry.value), n)(t)
        dilated = dilation(entry.value)
        right = mp.fsum(mp.binomial(n, k) * power_of(scaling, dilated, k)(t) for k in range(n))
        return abs(left - right)


@dataclasses.dataclass(frozen=True)
class DilationCase:
    """ A remainder sum R+[kind](z0) whose Cesaro limit is recomputed on the dilated lattice. """
    case_id: str
    kind: object
    z0: mp.mpc
    probe_tol: float = 1e-8


DILATION_CASES = {case.case_id: case for case in (
    DilationCase('zeta-s0', Power(0), mp.mpc(0.3, 0.4)),
    DilationCase('log-gamma', Log(), mp.mpf(0.5)),
)}


def _dilated_terms(expansion, r):
    """ a*z^rho*(ln z)^m written in Z = r*z: a * r^-rho * Z^rho * (ln Z - ln r)^m. """
    log_r = mp.log(r)
    terms = []
    for term in expansion.terms:
        scale = term.coeff * mp.power(r, -term.power)
        for a in range(term.log_power + 1):
            coeff = scale * mp.binomial(term.log_power, a) * (-log_r) ** (term.log_power - a)
            terms.append(AsymptoticTerm(coeff, term.power, a))
    return terms


def _homogeneity(kind, z0, r, limit, terms):
    """ The summands f(r*z) in terms of f(z): the expected limit, and the extra terms to strip. """
    if isinstance(kind, Power):
        factor = mp.power(r, -kind.s)
        return limit * factor, [dataclasses.replace(term, coeff=term.coeff * factor) for term in terms]
    if isinstance(kind, Log):
        # sum of ln r over k cells = (ln r)*(Z/r - z0 - alpha)
        log_r = mp.log(r)
        return limit - (z0 + mp.mpf(1) / 2) * log_r, terms + [AsymptoticTerm(log_r / r, 1)]
    if isinstance(kind, Const):
        return limit, terms
    raise DomainError(f'no dilation bookkeeping for {kind!r}')


def dilation_invariance_check(case, r):
    """ |L_dilated - L|: the remainder sum recomputed with summand j placed at r*(z0 + j),
        the trace running along Z = r*z0 + t with period r. """
    case = DILATION_CASES[case] if isinstance(case, str) else case
    if not DILATION_RANGE[0] <= r <= DILATION_RANGE[1]:
        raise DomainError(f'r must be in [{DILATION_RANGE[0]}, {DILATION_RANGE[1]}], got {r}')
    if r == 1:
        return mp.mpf(0)
    with precision_guard():
        r, z0 = mp.mpf(r), to_complex(case.z0)
        direction = DirectionSpec.PLUS
        start = stripping_start(z0, direction)
        probe = probe_for(LimitProbe(tol=case.probe_tol), start)
        limit = remainder_sum(case.kind, z0, direction, probe).limit
        count = int(mp.ceil(probe.reach())) + 2
        with mp.workdps(mp.dps + 10):
            total = mp.mpc(0)
            jumps = []
            for j in range(1, count + 1):
                total += case.kind.value(r * (z0 + j))
                jumps.append((r * j, total))
        trace = PSumTrace(Ray(r * z0, Direction.POS_REAL), tuple(jumps), period=r)
        expansion = case.kind.em_expansion(z0, None, DEFAULT_K, Direction.POS_REAL)
        expected, terms = _homogeneity(case.kind, z0, r, limit, _dilated_terms(expansion.smooth_part, r))
        dilated = AsymptoticExpansion(tuple(terms), geometric=True)
        sampler = strip_geometric(trace, dilated, start=r * start, rates=expansion.rates)
        outcome = clim(sampler, probe=probe)
        logging.info('Dilation by %s of %s: %s against %s', r, case.case_id, outcome.limit, expected)
        return abs(outcome.limit - expected)


def multiplication_interleaving(z0, n, count):
    """ The p-sum of ln(z0 + m), m = 1..count, rebuilt from the n sub-lattices (z0 + l)/n + j,
        l = 1..n, each dilated by n: ln(z0 + l + n*j) = ln n + ln((z0 + l)/n + j).
        Returns the trace and, for each jump, the sub-lattice l it came from. """
    if int(n) != n or n < 1:
        raise DomainError(f'n must be a positive integer, got {n}')
    with precision_guard(10):
        z0 = to_complex(z0)
        log_n = mp.log(n)
        points = []
        for l in range(1, int(n) + 1):  # noqa: E741
            base = (z0 + l) / n
            for j in range(0, (int(count) - l) // int(n) + 1):
                points.append((l + int(n) * j, l, log_n + mp.log(base + j)))
        points.sort()
        total = mp.mpc(0)
        jumps = []
        for t, _, value in points:
            total += value
            jumps.append((t, total))
    return PSumTrace(Ray(z0, Direction.POS_REAL), tuple(jumps)), tuple(l for _, l, _ in points)


def multiplication_interleaving_residual(z0, n):
    """ |sum of R+,0[ln]((z0 + l)/n), l = 1..n, - R+[ln](z0) - (z0 + 1/2)*ln n|. """
    if int(n) != n or n < 1:
        raise DomainError(f'n must be a positive integer, got {n}')
    with precision_guard():
        z0 = to_complex(z0)
        parts = mp.fsum(remainder_value(Log(), (z0 + l) / n, DirectionSpec.PLUS_ZERO) for l in range(1, int(n) + 1))
        whole = remainder_value(Log(), z0, DirectionSpec.PLUS)
        return abs(parts - whole - (z0 + mp.mpf(1) / 2) * mp.log(n))
