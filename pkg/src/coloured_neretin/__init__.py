"""Exact arithmetic for almost automorphisms of coloured regular trees.

The package models the dense finitely generated subgroup attached to a
permutation group of colours F <= Sym({0,...,d}): elements are tree pairs
with an orbit-respecting leaf bijection, composed, inverted and reduced
exactly.  On top of the element algebra it provides sign homomorphisms,
abelianization via Smith normal form of the orbit graph, the dictionary to
the one-sided shift of finite type on that graph, boundary translation
witnesses, and the exact ball counts, covolume bounds and interval-checked
inequalities behind the lattice (non-)existence results.
"""

from .permutations import (
    ColourGroup,
    DegreeMismatch,
    NotInvariant,
    Permutation,
    acts_freely,
    closure_enumerate,
    contains_alternating,
    cycle_string,
    from_cycles,
    identity,
    is_single_switch,
    orbit_partition,
    parse_cycles,
    stabilizer_restriction_in_alt,
    structure_report,
    trivial_group,
)
from .tree import (
    CompleteSubtree,
    IncompleteTree,
    PlaneOrder,
    admissible_child_colours,
    check_address,
    colour_of,
    is_complete_leafset,
    is_prefix,
    is_valid_address,
    plane_for,
    random_complete_tree,
    simple_expansion,
    sphere,
)
from .almost_automorphisms import (
    NotWellDefined,
    OrbitViolation,
    PrefixTooShort,
    SignValue,
    SizeMismatch,
    TreePairElement,
    apply_to_prefix,
    compose,
    element_from_dict,
    element_from_local_data,
    element_to_dict,
    expand_at,
    find_sign_violation,
    identity_element,
    inverse,
    is_sign_well_defined,
    make_element,
    purely_infinite_witness,
    random_element,
    reduce,
    sign,
    translation_element,
)
from .abelianization import (
    AbelianInvariants,
    Abelianization,
    IntMatrix,
    SftGraph,
    bareiss_determinant,
    build_sft_graph,
    dot_export,
    sft_graph_for_group,
    smith_normal_form,
    vf_abelianization,
)
from .shift_model import (
    Bisection,
    EdgePath,
    InvalidBisection,
    Omega,
    PathError,
    bisection_from_jsonable,
    bisection_to_element,
    bisection_to_jsonable,
    build_omega,
    check_path,
    compose_bisections,
    cylinder_mass,
    edge_length,
    element_to_bisection,
    identity_bisection,
    path_children,
    path_is_valid,
    random_bisection,
    root_paths,
    terminal_orbit,
    validate_bisection,
)
from .covolume import (
    AppendixCounts,
    BallCounts,
    CovolumeChain,
    DominantCompare,
    PrimeWindowReport,
    SmallestVerdict,
    XiClaimsReport,
    appendix_counts,
    ball_counts,
    compositions,
    covolume_chain,
    covolume_table_rows,
    dominant_coefficient_compare,
    integer_partitions,
    kernel_factor,
    log_ratio,
    ratio_slope,
    single_switch_covolume,
    smallest_log_sign,
    verify_prime_windows,
    verify_smallest_inequality,
    verify_xi_claims,
    window_prime_count,
    window_primes,
)
from .intervals import decide_sign, default_precision, interval_width

__version__ = "0.1.0"
