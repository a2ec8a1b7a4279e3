""" This module defines the exceptions raised by geocesaro.

    Every error derives from CesaroError, so that a caller can catch them all at once.
    The command line maps them to exit codes:
        - ConfigError to 2,
        - NotCesaroSummable to 4,
        - every other CesaroError to 3.
"""


class CesaroError(Exception):
    """ Base class of all the geocesaro errors. """


class DomainError(CesaroError, ValueError):
    """ A precondition on an argument is violated, eg. t <= 0, h outside (0, 1), p not prime. """


class PoleError(DomainError):
    """ A summand or a function is evaluated at one of its poles. """


class SingularEigenvalueError(DomainError):
    """ The averaging operator P has no eigenfunction of power -1. """


class ExcludedCaseError(DomainError):
    """ A closed form is requested outside the range where it holds. """


class ResolutionError(DomainError):
    """ A sampling grid is too coarse for the requested operator. """


class GeometryMisuseError(CesaroError):
    """ An expansion in the parameter t was handed where one in the geometric variable z was expected. """


class UnsupportedSummandError(CesaroError):
    """ The summand is not one of Power, Log or Const, or its logarithm is not. """


class ConfigError(CesaroError):
    """ The configuration file is missing, unreadable or holds invalid values. """


class NotCesaroSummable(CesaroError):
    """ No power of P up to the allowed maximum gives a stable limit.
        'diagnostics' holds one dictionary per averaging power that was tried.
        'log_growth' is set when the probe values grow like c*ln(t). """
    def __init__(self, message, diagnostics=(), log_growth=False):
        CesaroError.__init__(self, message)
        self.diagnostics = tuple(diagnostics)
        self.log_growth = log_growth
