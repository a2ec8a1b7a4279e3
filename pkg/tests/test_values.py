""" Tests of geocesaro/values.py """
import pytest
from mpmath import mp

from geocesaro.values import format_complex, is_integer, parse_complex, precision_guard, to_complex


class Test_parse_complex:  # pylint: disable=invalid-name,missing-class-docstring
    def test_forms(self):
        """ Every documented form of a+bi is accepted. """
        assert parse_complex('1.5') == mp.mpc(1.5, 0)  # nosec assert_used
        assert parse_complex('-0.5+1i') == mp.mpc(-0.5, 1)  # nosec assert_used
        assert parse_complex('2-3i') == mp.mpc(2, -3)  # nosec assert_used
        assert parse_complex('i') == mp.mpc(0, 1)  # nosec assert_used
        assert parse_complex('-2.5j') == mp.mpc(0, -2.5)  # nosec assert_used
        assert parse_complex('1e-3+i') == mp.mpc(0.001, 1)  # nosec assert_used
        assert parse_complex(' 3 + 4i ') == mp.mpc(3, 4)  # nosec assert_used

    def test_rejects(self):
        """ Anything else is a ValueError, that argparse turns into a usage error. """
        for text in ('', 'abc', '1+', '1++2i', '3i4'):
            with pytest.raises(ValueError):
                parse_complex(text)


class Test_format_complex:  # pylint: disable=invalid-name,missing-class-docstring
    def test_integral(self):
        """ Integral values print without a trailing .0 """
        assert format_complex(mp.mpf(6)) == '6'  # nosec assert_used
        assert format_complex(mp.mpc(6, 1e-40)) == '6'  # nosec assert_used

    def test_complex(self):
        """ Both parts are printed when they matter. """
        assert format_complex(mp.mpc(1.5, -2)) == '1.5-2i'  # nosec assert_used
        assert format_complex(mp.mpc(0, 0.25)) == '0.25i'  # nosec assert_used
        assert format_complex(mp.mpf(-1) / 12).startswith('-0.08333333')  # nosec assert_used


class Test_helpers:  # pylint: disable=invalid-name,missing-class-docstring
    def test_to_complex(self):
        """ Every input becomes an mpc. """
        for value in (1, 2.5, 1 + 2j, '3', mp.mpf(4)):
            assert isinstance(to_complex(value), mp.mpc)  # nosec assert_used

    def test_is_integer(self):
        """ Only exact integers on the real axis are integers. """
        assert is_integer(-3)  # nosec assert_used
        assert not is_integer(0.5)  # nosec assert_used
        assert not is_integer(mp.mpc(1, 1))  # nosec assert_used

    def test_precision_guard(self):
        """ The guard raises mp.dps, and restores it. """
        before = mp.dps
        with precision_guard(5):
            assert mp.dps >= 35  # nosec assert_used
        assert mp.dps == before  # nosec assert_used
