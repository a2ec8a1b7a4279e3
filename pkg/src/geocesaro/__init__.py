""" Geometric generalised Cesaro summation of divergent series, and the Hurwitz zeta
    and Gamma functions defined as remainder sums. """

__version__ = '0.0.1'
