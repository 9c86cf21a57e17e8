"""Matroid computations for excluded-minor arguments over small fields."""

from .catalog import get as matroid
from .connectivity import is_three_connected
from .constructions import delta_y, generalized_parallel_connection, grow_fan, representation, y_delta
from .fans import find_fans, is_fan
from .fields import get_field
from .isomorphism import is_isomorphic, isomorphism, verify_map
from .matroid import BasisMatroid, LinearMatroid, Matroid, MatroidError, UniformMatroid
from .minors import has_minor, in_ex_class

__all__ = [
    "BasisMatroid",
    "LinearMatroid",
    "Matroid",
    "MatroidError",
    "UniformMatroid",
    "delta_y",
    "find_fans",
    "generalized_parallel_connection",
    "get_field",
    "grow_fan",
    "has_minor",
    "in_ex_class",
    "is_fan",
    "is_isomorphic",
    "is_three_connected",
    "isomorphism",
    "matroid",
    "representation",
    "verify_map",
    "y_delta",
]
