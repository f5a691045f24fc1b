"""Equilibrium solvers for quadratic harvesting games with virtual-group reasoning.

Thin Python surface over the C++ core: finite-type fixed-point/extragradient
solvers, closed-form direct solves, continuum-of-types collocation, and
brute-force grid oracles.
"""

from ._core import *  # noqa: F401,F403
from . import _core

__version__ = "0.1.0"
__all__ = [name for name in dir(_core) if not name.startswith("_")]
