"""Exact analysis of automorphism groups of affine toric varieties."""

import logging

from .automorphisms import (
    AutomorphismAnalysis,
    Status,
    admissible_permutations,
    class_admissible_permutations,
    class_blocks,
    component_group,
    connectedness_verdict,
    neutral_component_summary,
    remark_order_identity,
)
from .classgroup import ClassElement, ClassGroup, class_group, class_of
from .cone import Cone, build_cone, is_full_dimensional, split_degenerate
from .surface import remark_operator_check, surface_normal_form, surface_verdict

__version__ = "0.1.0"

logging.getLogger(__name__).addHandler(logging.NullHandler())
