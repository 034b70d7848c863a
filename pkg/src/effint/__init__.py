"""Exact effective-invariant calculus for punctured R-maps."""

from .census import BasicIndex, count_basic, enumerate_basic
from .constraints import Vanishing, analyze, balancing, reduced_vdim, vanishing_check
from .genus1 import build_genus1, genus1_invariant
from .recursion import Token, reduce_to_basic
from .ring import GradedAlgebra, GradedElement, RingSpec, make_ring
from .series import LaurentSeries, expand_pole
from .target import PRESETS, DiscreteData, TargetSpec, load_target

__version__ = "0.1.0"
