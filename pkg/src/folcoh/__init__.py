"""Exact foliated cohomology of Williamson linear models and regular foliations."""

from .cohomology import cohomology_report, is_exact, normal_form_split, oracle_dimension
from .decompose import DeformationCochain, decompose, kernel_dependence, solve_deformation
from .foliated import FoliatedKForm, d_F, lie_derivative
from .kostant import ConnectionPotential, d_nabla, flat_section
from .polyring import CoordinateSystem, Polynomial
from .regular import RegularFoliatedForm, RegularModel, homotopy_I, primitive_regular
from .scalar import Scalar
from .williamson import WilliamsonBasis

__version__ = "0.1.0"

__all__ = [
    "Scalar",
    "CoordinateSystem",
    "Polynomial",
    "WilliamsonBasis",
    "decompose",
    "kernel_dependence",
    "DeformationCochain",
    "solve_deformation",
    "FoliatedKForm",
    "d_F",
    "lie_derivative",
    "cohomology_report",
    "oracle_dimension",
    "normal_form_split",
    "is_exact",
    "RegularModel",
    "RegularFoliatedForm",
    "homotopy_I",
    "primitive_regular",
    "ConnectionPotential",
    "d_nabla",
    "flat_section",
]
