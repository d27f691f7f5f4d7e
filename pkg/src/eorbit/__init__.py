"""Even Weyl group orbits, E-orbit functions and their discrete transforms."""

from .errors import EOrbitError
from .rootsystem import RootSystem, basis_convert, build, classical, parse_diagram, scalar_product
from .weylgroup import ChamberConfig, generate, reduce_to_dominant, reduce_to_even_dominant
from .orbits import branch_decompose, product_decompose, signed_orbit, w_orbit, we_orbit
from .efunctions import E, evaluate, laplacian_residual
from .transforms import analyze, grid_fm, grid_tm, synthesize

__all__ = [
    "EOrbitError", "RootSystem", "basis_convert", "build", "classical", "parse_diagram",
    "scalar_product", "ChamberConfig", "generate", "reduce_to_dominant",
    "reduce_to_even_dominant", "branch_decompose", "product_decompose", "signed_orbit",
    "w_orbit", "we_orbit", "E", "evaluate", "laplacian_residual", "analyze", "grid_fm",
    "grid_tm", "synthesize",
]
__version__ = "0.1.0"
