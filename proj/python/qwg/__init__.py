"""Exact and interval-verified kernels for the quadratic Waring-Goldbach
constants: Gauss sums, singular series, powers-of-2 congruence counts, and
the named constants of the four-prime-squares problem."""

from qwg._core import *  # noqa: F401,F403
from qwg._core import __doc__ as _core_doc  # noqa: F401

__version__ = "0.1.0"
