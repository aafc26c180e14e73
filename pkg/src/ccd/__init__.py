"""Causal dynamics of port-graph encoded 2D complexes."""

from .portgraph import (Disk, PortGraph, apply_isomorphism, apply_r_star, apply_rotations,
                        canonical_form, consistent, disk, rotate, rotation_equivalent, union,
                        validate)
from .complex import interpret, euler_characteristic
from .paths import geometric_distance, is_bounded_star, max_monotonous_length
from .rules import LocalRule, builtin, evaluate, symmetrize
from .dynamics import run, step
from .deciders import decide_bounded_star_preserving, decide_rotation_commuting

__version__ = "0.1.0"
