"""Affine Weyl group, alcoves and facets."""

from .group import (
    AffineElement,
    AffineWeylGroup,
    Alcove,
    NotInAffineWeylGroup,
    affine_weyl_group,
    reset_groups,
)
from .geometry import (
    INDETERMINATE,
    Facet,
    Stabilizer,
    act_on_facet,
    alcove_containing,
    box_membership,
    check,
    conjugate_to_point,
    element_for_facet,
    enumerate_region,
    facet_from_J,
    facet_in_closure,
    facet_J,
    facet_of,
    facet_of_type,
    fundamental_facets,
    hat,
    hat_facet,
    in_rho_cone,
    interior_point,
    is_dominant_alcove,
    is_point,
    is_special,
    max_alcove_element,
    min_alcove_element,
    orbit_representative,
    periodic_leq,
    periodic_leq_by_translation,
    special_point_of_box,
    stabilizer,
    translate_alcove,
    w0_alcove,
    w_v,
)
