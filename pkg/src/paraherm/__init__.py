"""Parity-deformed calculus, deformed Hermite polynomials and parabose squeezed states."""
from .defcalc import (
    GaussPoly,
    MomentValue,
    deform_param,
    deformed_antiderivative,
    deformed_binomial_coeffs,
    deformed_definite_integral,
    deformed_derivative,
    deformed_exp_partial,
    deformed_factorial,
    deformed_number,
    gaussian_moment,
    integrate_gauss_poly,
    series_integral_oracle,
)
from .gaussrat import GaussRational
from .hermite import (
    hermite_explicit,
    hermite_from_generating,
    hermite_integral_rep,
    hermite_recursive,
    hermite_rodrigues,
    ode_residual,
    orthonormality_integral,
)
from .poly import Poly, X

__version__ = "0.1.0"
