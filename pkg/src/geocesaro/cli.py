""" This module is the command-line entry point of geocesaro.

    It evaluates the functions built on remainder sums (eval), runs the verification
    suites (verify), and emits the p-sum traces behind the averaging pictures (trace).

    The settings come from a configuration file. See the -c | --config FILE option and
    the -g | --generate-config FILE option to write a documented one.
    The command-line options take precedence over the configuration file.

    Exit codes:
        0 success, 1 failed verification, 2 usage or configuration error,
        3 domain error (pole, precondition), 4 series not Cesaro summable.
"""

import argparse
import csv
import json
import logging
import sys

from mpmath import mp

from geocesaro.cesaro_core import LimitProbe
from geocesaro.config import OUTPUT_FORMATS, load_config, write_dummy_config
from geocesaro.errors import CesaroError, ConfigError, NotCesaroSummable
from geocesaro.invariance import multiplication_interleaving
from geocesaro.remainder_ops import DirectionSpec, Log, Power, finite_sum, parse_summand, psum_trace, remainder_sum, remainder_value
from geocesaro.special_functions import METHODS, STAIRCASE_RESOLUTION, gamma_staircase_trace, hurwitz_zeta, log_gamma
from geocesaro.suites import SUITES, make_suite
from geocesaro.values import format_complex, parse_complex, precision_guard, set_working_precision

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_NOT_SUMMABLE = 4

TRACE_COLUMNS = ('t', 'z_re', 'z_im', 'psum_re', 'psum_im', 'averaged_re', 'averaged_im')
METHOD_HELP = 'accelerated: the Euler-Maclaurin constant\ncesaro: clim of the stripped p-sum trace'


def parse_args(argv):
    """ Parse the program arguments.
        'argv' can be set to sys.argv, starting with the program name. """
    parser = argparse.ArgumentParser(
        prog='python3 -m geocesaro',
        description='Sum divergent series with the geometric generalised Cesaro method, and verify the Hurwitz zeta and Gamma functions built on it.',
        formatter_class=argparse.RawTextHelpFormatter,
        epilog="""Example:
        python3 -m geocesaro eval zeta --s -1
        python3 -m geocesaro eval gamma --z 3
        python3 -m geocesaro eval hzeta --z0=-0.5+1i --s 2
        python3 -m geocesaro eval rsum --kind log --z0 0.5 --dir plus
        python3 -m geocesaro --format json verify reflection
        python3 -m geocesaro trace staircase --range 0 100 --h 0.001 > staircase.csv

Complex numbers are written a+bi. A value starting with '-' must be attached
to its option with '=', eg. --z0=-0.5+1i.""")
    parser.add_argument('-v', '--verbose', default=0, action='count', help='increase output verbosity')
    parser.add_argument('-c', '--config', metavar='IFILE', help='configuration file, instead of $GEOCESARO_CONFIG or ./geocesaro.conf')
    parser.add_argument('-g', '--generate-config', type=str, metavar='OFILE', help='generate a dummy configuration file')
    parser.add_argument('--format', choices=OUTPUT_FORMATS, help='output format')
    parser.add_argument('--precision', type=int, metavar='DIGITS', help='working precision in decimal digits')
    parser.add_argument('--tol', type=float, help='stabilisation tolerance of the Cesaro limits')
    parser.add_argument('--seed', type=int, help='seed of the randomized verification cases')
    parser.add_argument('--k', type=int, help='number of explicit summands before the Euler-Maclaurin tail')
    parser.add_argument('--order', type=int, help='number of Bernoulli corrections of ln Gamma')
    commands = parser.add_subparsers(dest='command', metavar='COMMAND')

    evaluate = commands.add_parser('eval', help='evaluate a function or a remainder sum')
    functions = evaluate.add_subparsers(dest='function', metavar='FUNCTION', required=True)
    gamma = functions.add_parser('gamma', help='Gamma(z)')
    gamma.add_argument('--z', type=parse_complex, required=True)
    gamma.add_argument('--method', choices=METHODS, default='accelerated', help=METHOD_HELP)
    hzeta = functions.add_parser('hzeta', help='zeta_H(z0; s), summed from n = 1')
    hzeta.add_argument('--z0', type=parse_complex, required=True)
    hzeta.add_argument('--s', type=parse_complex, required=True)
    hzeta.add_argument('--method', choices=METHODS, default='accelerated', help=METHOD_HELP)
    zeta = functions.add_parser('zeta', help='zeta(s)')
    zeta.add_argument('--s', type=parse_complex, required=True)
    zeta.add_argument('--method', choices=METHODS, default='accelerated', help=METHOD_HELP)
    fsum = functions.add_parser('finite-sum', help='f(1) + ... + f(upper) for a complex upper')
    fsum.add_argument('--kind', type=parse_summand, required=True, help='log, identity, const[:c] or power:s (f(z) = z^-s)')
    fsum.add_argument('--upper', type=parse_complex, required=True)
    rsum = functions.add_parser('rsum', help='the remainder sum R[f](z0)')
    rsum.add_argument('--kind', type=parse_summand, required=True, help='log, identity, const[:c] or power:s (f(z) = z^-s)')
    rsum.add_argument('--z0', type=parse_complex, required=True)
    rsum.add_argument('--dir', choices=[spec.value for spec in DirectionSpec], default='plus')
    rsum.add_argument('--method', choices=('geometric', 'lattice', 'parametric', 'em'), default='geometric',
                      help='geometric: strip then average the p-sum trace\nlattice: the same on the lattice residual\n'
                           'parametric: strip in the arc length t, fails for ln z\nem: the Euler-Maclaurin constant only')

    verify = commands.add_parser('verify', help='run a verification suite')
    verify.add_argument('suite', nargs='?', choices=sorted(SUITES) + ['all'], metavar='SUITE', help='one of: ' + ', '.join(sorted(SUITES)) + ', all')
    verify.add_argument('--list', action='store_true', help='list the suites')

    trace = commands.add_parser('trace', help='emit a p-sum trace as CSV')
    trace.add_argument('kind', choices=('zeta0', 'staircase', 'lngamma', 'interleave'))
    trace.add_argument('--z0', type=parse_complex, default=mp.mpc(0))
    trace.add_argument('--range', nargs=2, type=float, required=True, metavar=('MIN', 'MAX'))
    trace.add_argument('--h', type=float, default=STAIRCASE_RESOLUTION, help='width of the spikes of the staircase')
    trace.add_argument('--step', type=float, default=0.25, help='spacing of the rows')
    trace.add_argument('--n', type=int, default=2, help='number of interleaved sub-lattices')
    args = parser.parse_args(argv[1:])

    if args.verbose > 1:
        logging.getLogger().setLevel(logging.DEBUG)
    elif args.verbose > 0:
        logging.getLogger().setLevel(logging.INFO)
    else:
        # The default level of the root logger is already WARNING.
        # See: https://docs.python.org/3/library/logging.html#logging.Logger.setLevel
        logging.getLogger().setLevel(logging.WARNING)

    logging.debug('args = %s', args)

    if args.command is None and not args.generate_config:
        parser.error('a command is required: eval, verify or trace')
    if args.command == 'verify' and not args.list and args.suite is None:
        parser.error('verify needs a SUITE, or --list')
    if args.command == 'trace':
        low, high = args.range
        if not high > low >= 0:
            parser.error(f'the range must satisfy MAX > MIN >= 0, got {low} {high}')
        if not args.step > 0:
            parser.error(f'the step must be positive, got {args.step}')
    return args


def _probe(config):
    return LimitProbe(base=config.probe_base, levels=config.probe_levels, tol=config.tol)


def _doubling_tail(compute, k):
    """ The value at k explicit summands, and its change when k doubles. """
    value = compute(k)
    return value, abs(compute(2 * k) - value)


def _emit_value(command, value, tail, output_format):
    if output_format == 'json':
        print(json.dumps({'command': command, 'value': format_complex(value), 're': float(value.real),
                          'im': float(value.imag), 'tail_estimate': float(tail)}))
    elif output_format == 'csv':
        writer = csv.writer(sys.stdout, lineterminator='\n')
        writer.writerow(('command', 're', 'im', 'tail_estimate'))
        writer.writerow((command, format(float(value.real), '.17g'), format(float(value.imag), '.17g'), format(float(tail), '.17g')))
    else:
        print(format_complex(value))
        print('tail_estimate:', mp.nstr(tail, 3))


def _special_value(args, config):
    """ gamma, hzeta or zeta, by the method asked for. """
    if args.function == 'gamma':
        def compute(k):
            return log_gamma(args.z - 1, k, config.order_default, args.method, _probe(config), config.max_power)
    else:
        z0 = args.z0 if args.function == 'hzeta' else 0

        def compute(k):
            return hurwitz_zeta(z0, args.s, k, zeta_order=config.zeta_order, method=args.method,
                                probe=_probe(config), max_power=config.max_power)
    if args.method == 'cesaro':
        result = compute(config.k_default)
        logging.info('Cesaro limit reached with P^%d', result.outcome.averaging_power)
        return result.value, result.outcome.tail_estimate
    return _doubling_tail(lambda k: compute(k).value, config.k_default)


def cmd_eval(args, config):
    """ Evaluate one function and print it with its tail estimate. """
    with precision_guard():
        if args.function in ('gamma', 'hzeta', 'zeta'):
            value, tail = _special_value(args, config)
        elif args.function == 'finite-sum':
            value, tail = _doubling_tail(lambda k: finite_sum(args.kind, args.upper, k), config.k_default)
        else:
            direction = DirectionSpec(args.dir)
            if args.method == 'em':
                value, tail = _doubling_tail(lambda k: remainder_value(args.kind, args.z0, direction, k), config.k_default)
            else:
                outcome = remainder_sum(args.kind, args.z0, direction, _probe(config), config.max_power, args.method)
                value, tail = outcome.limit, outcome.tail_estimate
                logging.info('Cesaro limit reached with P^%d', outcome.averaging_power)
        _emit_value(args.function, value, tail, config.output_format)
    return EXIT_OK


def cmd_verify(args, config):
    """ Run a suite, print one row per case, and fail when any case fails. """
    if args.list:
        for name in sorted(SUITES):
            print(f'{name}: {SUITES[name].description}')
        return EXIT_OK
    results = make_suite(args.suite, config).run()
    if config.output_format == 'json':
        for result in results:
            print(json.dumps(result.as_row()))
    elif config.output_format == 'csv':
        writer = csv.writer(sys.stdout, lineterminator='\n')
        writer.writerow(('suite', 'case', 'residual', 'tol', 'pass'))
        for result in results:
            writer.writerow((result.suite, result.case, format(result.residual, '.17g'), format(result.tol, '.17g'), result.passed))
    else:
        for result in results:
            print(f'{result.suite:20} {result.case:30} {result.residual:10.3e} {result.tol:8.1e} {"pass" if result.passed else "FAIL"}')
        failed = sum(1 for result in results if not result.passed)
        print(f'{len(results) - failed}/{len(results)} cases passed.')
    return EXIT_OK if all(result.passed for result in results) else EXIT_FAILED


def _trace_of(args, horizon):
    if args.kind == 'zeta0':
        return psum_trace(Power(0), args.z0, DirectionSpec.PLUS, horizon)
    if args.kind == 'lngamma':
        return psum_trace(Log(), args.z0, DirectionSpec.PLUS, horizon)
    if args.kind == 'interleave':
        trace, _ = multiplication_interleaving(args.z0, args.n, horizon)
        return trace
    return gamma_staircase_trace(args.h, horizon)


def cmd_trace(args, config):
    """ Emit the rows t, z, p-sum and its running average P over the range. """
    with precision_guard():
        low, high = mp.mpf(args.range[0]), mp.mpf(args.range[1])
        step = mp.mpf(args.step)
        trace = _trace_of(args, int(mp.ceil(high)) + 1)
        rows = []
        for i in range(int(mp.floor((high - low) / step)) + 1):
            t = low + i * step
            z = trace.ray.point(t)
            psum = trace.value_at(t)
            averaged = trace.average(t) if t > 0 else psum
            rows.append((t, z.real, z.imag, psum.real, psum.imag, averaged.real, averaged.imag))
    if config.output_format == 'json':
        for row in rows:
            print(json.dumps(dict(zip(TRACE_COLUMNS, (float(x) for x in row)))))
    else:
        writer = csv.writer(sys.stdout, lineterminator='\n')
        writer.writerow(TRACE_COLUMNS)
        for row in rows:
            writer.writerow(format(float(x), '.17g') for x in row)
    return EXIT_OK


COMMANDS = {'eval': cmd_eval, 'verify': cmd_verify, 'trace': cmd_trace}


def main(argv=None):
    """ Main entry point, returning the exit code. """
    logging.basicConfig(stream=sys.stderr, format='%(levelname)s: %(message)s')
    argv = sys.argv if argv is None else argv
    try:
        args = parse_args(argv)
    except SystemExit as exp:
        return exp.code if isinstance(exp.code, int) else EXIT_USAGE

    if args.generate_config:
        write_dummy_config(args.generate_config)
        print('Do not forget to edit the configuration file:', args.generate_config)
        if args.command is None:
            return EXIT_OK

    try:
        config = load_config(args.config, precision=args.precision, tol=args.tol, seed=args.seed,
                             k_default=args.k, order_default=args.order, output_format=args.format)
    except ConfigError as exp:
        logging.error(exp)
        print('You can run this command to generate a configuration file:')
        print('   python3 -m geocesaro --generate-config', args.config or 'geocesaro.conf')
        return EXIT_USAGE
    set_working_precision(config.precision)

    try:
        return COMMANDS[args.command](args, config)
    except NotCesaroSummable as exp:
        logging.error('Not Cesaro summable: %s', exp)
        for diagnostic in exp.diagnostics:
            logging.info('%s', diagnostic)
        return EXIT_NOT_SUMMABLE
    except ConfigError as exp:
        logging.error(exp)
        return EXIT_USAGE
    except CesaroError as exp:
        logging.error(exp)
        return EXIT_DOMAIN
