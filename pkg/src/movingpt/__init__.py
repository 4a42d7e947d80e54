"""Supersymmetric Poschl-Teller partners in an infinite well with a moving wall."""
__version__ = "0.1.0"

from ._backend import BACKEND
from .dynamics import Fixed, InverseSqrtCosine, Sinusoidal, density, potential_xt, wavefunction
from .errors import (
    ConfigError,
    DegenerateParametersError,
    DomainError,
    InvalidParametersError,
    MovingPTError,
    OutOfBoxError,
    QuadratureError,
    SingularityError,
)
from .observables import avg_energy, delta_p, delta_x, uncertainty_product
from .quadrature import QuadratureSpec, moments
from .special import JacobiIndex, jacobi_eval, x1_jacobi_eval
from .stationary import PTParams, Sector, StationaryState, energy

__all__ = [
    "BACKEND", "ConfigError", "DegenerateParametersError", "DomainError", "Fixed",
    "InvalidParametersError", "InverseSqrtCosine", "JacobiIndex", "MovingPTError",
    "OutOfBoxError", "PTParams", "QuadratureError", "QuadratureSpec", "Sector",
    "Sinusoidal", "SingularityError", "StationaryState", "avg_energy", "delta_p",
    "delta_x", "density", "energy", "jacobi_eval", "moments", "potential_xt",
    "uncertainty_product", "wavefunction", "x1_jacobi_eval",
]
