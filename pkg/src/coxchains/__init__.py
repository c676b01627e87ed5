"""Chain-orbit counts K(W) for finite Coxeter groups, three ways:
brute-force orbit counting on the intersection lattice, parabolic
recursion, and closed forms / generating series."""

__version__ = "0.1.0"

from .field import (
    FieldScalar,
    Subspace,
    apply_matrix,
    canonical_subspace,
    intersect,
    null_space,
)
from .graphs import (
    CoxeterGraph,
    DiagramAutomorphism,
    GroupSpecError,
    ClassificationError,
    TypeLabel,
    canonical_spec,
    classify_irreducible,
    connected_components,
    delete_vertex,
    longest_element_automorphism,
    parse_group_spec,
    standard_graph,
)
from .lattice import (
    ChainOrbitCount,
    GroupActionTable,
    IntersectionLattice,
    build_lattice,
    build_lattice_with_action,
    count_chain_orbits,
    count_chain_orbits_unionfind,
    count_maximal_chains,
    orbit_count_of_lines,
)
from .models import (
    GroupElement,
    ReflectionModel,
    UnsupportedModelError,
    build_model,
    fixed_space,
    generate_group,
    reflecting_hyperplanes,
)
from .recursion import KCalculator, KResult, k_bar, k_recursive
from .series import (
    EgfSeries,
    SequenceTable,
    bar_d_closed_form,
    euler_numbers,
    k_closed_form,
    verify_identities,
)
