"""cycal: exact chain-level calculus for cyclic homology of group-graded algebras."""

from cycal.scalars import Scalar, exp_it, root_of_unity, d_dt, imag_unit

__all__ = ["Scalar", "exp_it", "root_of_unity", "d_dt", "imag_unit"]
__version__ = "0.1.0"
