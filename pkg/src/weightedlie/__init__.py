"""Weighted Lie algebras, their contractions, and commuting operator systems.

Exact arithmetic over Q and Q(i) throughout the symbolic layer; numerics are
confined to :mod:`weightedlie.spectrum` (abelian case only).
"""

from .errors import InputError, ValidationError, WeightedLieError
from .scalars import GaussRational, I
from .lie import (
    LieAlgebra,
    bracket,
    check_jacobi,
    descending_central_series,
    generated_subalgebra,
    guivarch_growth_degree,
)
from .grading import (
    Grading,
    dilate_vector,
    homogeneous_dimension,
    is_stratified,
    make_grading,
    quasiequivalence_report,
    rational_power,
    validate_grading,
)
from .weighted import (
    Contraction,
    Filtration,
    WeightedBasis,
    compute_filtration,
    contract,
    is_canonically_isomorphic,
    is_reduced_strict,
    is_reduced_weak,
    reduce_basis,
)
from .envelope import EnvElement, adjoint_env, apply_derivation, check_derivation, check_invariant, commutator, multiply
from .forms import Form, adjoint_form, form_degree, principal_part, realize
from .systems import (
    OperatorSystem,
    analyze_system,
    build_auxiliary_polynomials,
    build_homogeneous_delta,
    check_system,
    common_multiple,
    contracted_principal,
    even_degree_condition,
    homogeneity_degree,
    minimal_dominating_power,
)
from .products import concat_system, concat_weighted_bases, lift, product, product_form, product_operator
from .expr import parse_element, parse_form, parse_poly
from .catalog import catalog_get, catalog_list, dump_algebra, load_algebra

__version__ = "0.1.0"
