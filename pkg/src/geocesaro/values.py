""" Complex scalars at a configurable working precision.
    All numbers flowing through geocesaro are mpmath.mpc values.
"""

import re

import mpmath
from mpmath import mp

# Decimal digits used by every public operation, unless mp.dps is already higher.
WORKING_DPS = 30

# Coefficients below this magnitude are dropped from expansions.
ZERO_COEFF = mpmath.mpf('1e-14')

_NUMBER = r'(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?'
_IMAGINARY_RE = re.compile(rf'^([+-]?)({_NUMBER})?[ij]$')
_COMPLEX_RE = re.compile(rf'^([+-]?{_NUMBER})(?:([+-])({_NUMBER})?[ij])?$')


def set_working_precision(dps):
    """ Set the number of decimal digits used by the public operations. """
    global WORKING_DPS  # pylint: disable=global-statement
    WORKING_DPS = int(dps)


def precision_guard(extra=0):
    """ Context manager raising mp.dps to the working precision, plus 'extra' guard digits. """
    return mp.workdps(max(mp.dps, WORKING_DPS) + extra)


def to_complex(value):
    """ Convert an int, float, complex, string or mpmath number to an mpc. """
    return mp.mpc(mpmath.mpmathify(value))


def is_integer(value):
    """ True when the complex value is an exact integer. """
    return bool(mp.isint(to_complex(value)))


def parse_complex(text):
    """ Parse "a+bi", "a-bi", "bi", "a" or "i" (the 'j' suffix is accepted too).
        Raise ValueError on anything else, so that argparse reports a usage error. """
    compact = str(text).replace(' ', '')
    match = _IMAGINARY_RE.match(compact)
    if match:
        sign, digits = match.groups()
        imag = mp.mpf(digits) if digits else mp.mpf(1)
        return mp.mpc(0, -imag if sign == '-' else imag)
    match = _COMPLEX_RE.match(compact)
    if match:
        real, sign, digits = match.groups()
        if sign is None:
            return mp.mpc(mp.mpf(real), 0)
        imag = mp.mpf(digits) if digits else mp.mpf(1)
        return mp.mpc(mp.mpf(real), -imag if sign == '-' else imag)
    raise ValueError(f'not a complex number in the form a+bi: {text!r}')


def _format_real(value, digits):
    text = mp.nstr(value, digits)
    if text.endswith('.0'):
        text = text[:-2]
    return text


def format_complex(value, digits=15):
    """ Human readable form of a complex value, dropping a negligible imaginary part.
        Integral values are printed without a trailing ".0", eg. "6". """
    value = to_complex(value)
    scale = max(1, abs(value.real))
    if abs(value.imag) <= scale * mp.mpf(10) ** (-digits):
        return _format_real(value.real, digits)
    if abs(value.real) <= abs(value.imag) * mp.mpf(10) ** (-digits):
        return _format_real(value.imag, digits) + 'i'
    sign = '-' if value.imag < 0 else '+'
    return f'{_format_real(value.real, digits)}{sign}{_format_real(abs(value.imag), digits)}i'
