"""Exact symbolic calculator for curve-localized equivariant Burnside groups
of finite group actions on rationally connected threefolds."""

__version__ = "0.1.0"

from .catalog import (
    ActionCatalog,
    ActionLabel,
    CurveProfile,
    GroupShape,
    catalog_from_json,
    catalog_to_json,
    ensure_valid_catalog,
    induced_surface_action,
    jacobian_of_curve_action,
    validate_catalog,
)
from .errors import CatalogIncompleteError, ValidationError
from .groups import (
    FiniteGroup,
    QuotientGroup,
    Subgroup,
    abelian_subgroups_up_to_conjugacy,
    build_group,
    centralizer,
    conjugate_subgroup,
    normalizer,
    quotient,
    subgroups_up_to_conjugacy,
)
from .abelian import (
    AbelianStructure,
    Character,
    abelian_structure,
    character_kernel,
    character_span,
    dual_generated_check,
    restrict_character,
    transport_character,
)
from .normalforms import (
    IntegerLattice,
    cokernel_structure,
    hermite_normal_form,
    kernel_basis,
    smith_normal_form,
)
from .symbols import (
    BurnsideClass,
    Symbol,
    canonicalize,
    enumerate_symbols,
    text_form,
    validate_symbol,
)
from .relations import (
    FilterSpec,
    GroupStructure,
    RelationInstance,
    RelationLattice,
    classes_equal,
    filter_project,
    filtered_structure,
    generate_relations,
    phi_G,
    reduce,
    relation_lattice,
    structure,
)
from .models import (
    BlowupCenter,
    JacobianFactorDatum,
    ModelDescription,
    StratumDatum,
    VerdictReport,
    blowup,
    class_of_action,
    invariant_I,
    invariant_counts,
    validate_model,
    verdict,
    verify_blowup_invariance,
)

__all__ = [name for name in dir() if not name.startswith("_")]
