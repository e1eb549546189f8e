"""Finite groups, automorphisms, holomorphs and regular subgroups of Perm(G)."""

from .finite import (
    AutomorphismGroup,
    FiniteGroup,
    GroupError,
    GroupHom,
    automorphism_group,
    catalog,
    cyclic,
    dihedral,
    direct_product,
    elementary_abelian,
    find_isomorphism,
    holomorph,
    is_isomorphic,
    klein_four,
    make_group,
    parse_group,
    quaternion,
    quotient,
    symmetric,
    units_group,
)
from .perm import (
    PermSubgroup,
    QuotientEmbedding,
    centralizer_opp,
    compose,
    compute_W,
    conjugate,
    conjugation_action,
    cycle_string,
    cycles,
    enumerate_regular_subgroups,
    from_cycles,
    invert,
    lam,
    left_regular_rep,
    quotient_embedding,
    right_regular_rep,
)
