"""Exact homological computations for cleft extensions of finite-dimensional algebras
over prime fields."""
from .algebra import Algebra, make_algebra, path_algebra, validate_algebra
from .cleft import CleftSuite, ThetaExtensionData, theta_extension, trivial_extension
from .homology import DimResult, ext_dims, inj_dimension, minimal_resolution, proj_dimension, tor_dims
from .modules import Bimodule, RightModule, iso_test
from .perfect import nilpotency_index, perfect_report

__version__ = "0.1.0"
