"""Finite sets of numerical events with exact rational values.

Decides the closure conditions and class memberships of such families,
Boolean subalgebra containment, and state-based representations, and sweeps
small grids to check the relations between the classes.
"""

from importlib import resources

from .classify import (
    ClassificationReport,
    ConditionVerdict,
    PreconditionError,
    check_condition,
    classify,
    demorgan_check,
    is_algebra,
    is_boolean_algebra,
    is_boolean_poset,
    is_complemented,
    is_concrete_logic_form,
    is_gfe,
    is_lattice,
    is_orthomodular,
    is_orthoposet,
    is_varying,
    lattice_criterion,
)
from .core import (
    Event,
    EventFamily,
    PointwiseVector,
    complement,
    infimum_in,
    is_disjoint,
    is_orthogonal,
    leq,
    lower_bounds,
    pointwise_diff,
    pointwise_max,
    pointwise_min,
    pointwise_sum,
    supremum_in,
)
from .documents import parse_family, parse_poset
from .states import (
    AbstractBoundedPoset,
    StateTable,
    build_representation,
    canonical_states,
    check_pseudostate,
    check_specific_state,
    check_join_specific_states,
    check_theorem4_shape,
    is_full,
    is_uniform,
    two_valued_representation,
)
from .subalg import (
    SubsetSelection,
    boolean_subalgebra_oracle,
    commutes,
    is_infimum_faithful,
    pointwise_product,
    product_criterion,
)


def fixture_path(name: str):
    """Path of a bundled example document, e.g. ``fixture_path("example1.json")``."""
    return resources.files(__name__).joinpath("fixtures", name)
