"""Massless one-loop triangle in dimensional regularization via Appell F4."""

from .errors import (
    ConvergenceError,
    DegenerateParameterError,
    DomainError,
    PoleError,
    QuadratureError,
)
from .special_functions import (
    DEFAULT_CONTROL,
    F4Params,
    Point2,
    SeriesControl,
    SeriesResult,
    f4_continue,
    f4_series,
    gamma,
    gauss_2f1,
    pochhammer,
)
from .vertex import (
    Kinematics,
    OmegaParam,
    TriangleValue,
    pole_cancellation_probe,
    reduce_four_to_three,
    triangle_four_term,
    triangle_three_term_paper,
)
from .oracle import f4_raw, triangle_feynman_param
from .selfenergy import bubble, flying_saucer, sequential_composition_check
from .resistors import DeltaNetwork, LegCurrents, YNetwork, delta_to_y, y_to_delta

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
