"""Blow-up relation instances, the relation lattice, quotient structure, class
equality, filter quotients, and the degree map to Z.

All linear algebra is exact; relation vectors are canonicalized and
deduplicated before the lattice is built (deduplication is cosmetic, the
lattice is unchanged).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .abelian import Character, abelian_structure, character_kernel, character_span, restrict_character, shape_name
from .catalog import ActionCatalog, GroupShape, ensure_valid_catalog
from .errors import ValidationError
from .groups import FiniteGroup, Subgroup, subgroups_up_to_conjugacy
from .normalforms import IntegerLattice, cokernel_structure
from .symbols import (
    KIND_CURVE,
    KIND_JAC,
    KIND_SURFACE,
    BurnsideClass,
    Symbol,
    canonicalize,
    carrier_quotient,
    enumerate_symbols,
    symbol_characters,
    text_form,
)


@dataclass(frozen=True)
class RelationInstance:
    """One asserted-zero combination of canonical symbols, with provenance."""

    vector: BurnsideClass
    rule: str
    params: tuple[tuple[str, str], ...]

    def describe(self, G: FiniteGroup) -> str:
        params = ", ".join(f"{k}={v}" for k, v in self.params)
        terms = " ".join(
            f"{'+' if c > 0 else '-'}{abs(c) if abs(c) != 1 else ''}{text_form(s, G)}"
            for s, c in self.vector.terms()
        )
        return f"{self.rule}({params}): {terms} = 0"


@dataclass(frozen=True)
class GroupStructure:
    """Cokernel shape: free rank plus torsion d1 | d2 | ... (no 1s)."""

    free_rank: int
    torsion: tuple[int, ...]

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}


def _y_as_jac_cosets(G: FiniteGroup, sym: Symbol) -> tuple[int, ...]:
    # move Y from Z_G(H)/H into N_G(H)/H (same subgroup of G upstairs)
    Qc = carrier_quotient(G, sym.h, sym.kind)
    Qj = carrier_quotient(G, sym.h, KIND_JAC)
    return Qj.image(Qc.reps[i] for i in sym.y)


def _jac_partner(G: FiniteGroup, catalog: ActionCatalog, sym: Symbol) -> Symbol:
    """(H, J(C) <- Y) for the curve symbol's residual action, via the catalog."""
    jac_label = catalog.jacobian_of_curve_action(sym.action)
    return canonicalize(Symbol(KIND_JAC, sym.h, _y_as_jac_cosets(G, sym), jac_label.id), G, catalog)


def _b2_terms(G: FiniteGroup, catalog: ActionCatalog, sym: Symbol) -> tuple[BurnsideClass, BurnsideClass]:
    """(Theta1, Theta2) for a canonical curve symbol."""
    H = Subgroup(G, sym.h)
    b1, b2 = symbol_characters(G, sym)
    theta1 = BurnsideClass.zero()
    if b1 != b2:
        for first, second in ((b1, b2 - b1), (b2, b1 - b2)):
            term = Symbol(KIND_CURVE, sym.h, sym.y, sym.action, tuple(sorted((first.coords, second.coords))))
            theta1 = theta1 + BurnsideClass.of(canonicalize(term, G, catalog))
    diff = b1 - b2
    if len(character_span(diff)) == H.order:
        return theta1, BurnsideClass.zero()
    h_bar = character_kernel(diff)
    label = catalog.induced_surface_action(
        abelian_structure(H).invariant_factors, sym.action, diff.order()
    )
    # the induced group: (preimage of Y in Z_G(H)) / ker(b1-b2), inside Z_G(ker)/ker
    Qc = carrier_quotient(G, sym.h, sym.kind)
    upstairs = Qc.preimage(sym.y)
    Qbar = carrier_quotient(G, h_bar.elements, KIND_SURFACE)
    y_bar = Qbar.image(upstairs)
    weight = restrict_character(b1, h_bar)
    term = Symbol(KIND_SURFACE, h_bar.elements, y_bar, label.id, (weight.coords,))
    problems = _validate_b2_surface(G, h_bar, weight)
    if problems:
        raise ValidationError(f"induced surface symbol is invalid: {'; '.join(problems)}")
    return theta1, BurnsideClass.of(canonicalize(term, G, catalog))


def _validate_b2_surface(G: FiniteGroup, h_bar: Subgroup, weight: Character) -> list[str]:
    # provable from the curve symbol's own validity; asserted at generation time
    problems = []
    if h_bar.is_trivial():
        problems.append("kernel of the weight difference is trivial")
    if not h_bar.is_cyclic():
        problems.append("kernel of the weight difference is not cyclic")
    if len(character_span(weight)) != h_bar.order:
        problems.append("restricted weight does not generate the kernel's dual")
    return problems


def generate_relations(G: FiniteGroup, catalog: ActionCatalog) -> tuple[RelationInstance, ...]:
    """All instances of the four blow-up relations over the declared catalog."""
    ensure_valid_catalog(catalog)
    symbols = enumerate_symbols(G, catalog)
    instances: list[RelationInstance] = []
    seen_vectors: set[BurnsideClass] = set()

    def emit(vector: BurnsideClass, rule: str, **params):
        if vector.is_zero() or vector in seen_vectors:
            return
        neg = -vector
        if neg in seen_vectors:
            return
        seen_vectors.add(vector)
        instances.append(RelationInstance(vector, rule, tuple(sorted((k, str(v)) for k, v in params.items()))))

    curve_syms = [s for s in symbols if s.kind == KIND_CURVE]
    jac_syms = [s for s in symbols if s.kind == KIND_JAC]

    for sym in curve_syms:
        b1, b2 = symbol_characters(G, sym)
        if (b1 + b2).is_trivial():
            vec = BurnsideClass.of(sym) + BurnsideClass.of(_jac_partner(G, catalog, sym))
            emit(vec, "B1", symbol=text_form(sym, G))

    for sym in curve_syms:
        theta1, theta2 = _b2_terms(G, catalog, sym)
        vec = BurnsideClass.of(sym) - theta1 - theta2 - BurnsideClass.of(_jac_partner(G, catalog, sym))
        emit(vec, "B2", symbol=text_form(sym, G))

    for rule in catalog.jacobian_rules:
        curve_label = catalog.label(rule.source)
        for Y in subgroups_up_to_conjugacy(G):
            if not curve_label.group_shape.matches(Y):
                continue
            Q = carrier_quotient(G, (0,), KIND_JAC)
            sym = Symbol(KIND_JAC, (0,), Q.image(Y.elements), rule.target)
            emit(
                BurnsideClass.of(canonicalize(sym, G, catalog)),
                "B3",
                curve_action=rule.source,
                y=shape_name(abelian_structure(Y).invariant_factors) if Y.is_abelian() else f"ord{Y.order}",
            )

    for rule in catalog.extension_rules:
        if rule.trivial_part == "none":
            continue  # Y1 = 1 makes the relation degenerate
        h_shape = GroupShape.abelian(rule.h_factors)
        target_shape = GroupShape.abelian(rule.target_h_factors)
        for sym in jac_syms:
            if sym.action != rule.source_label:
                continue
            H = Subgroup(G, sym.h)
            if not h_shape.matches(H):
                continue
            Q = carrier_quotient(G, sym.h, KIND_JAC)
            h1 = Subgroup(G, Q.preimage(sym.y))  # extension of Y1 = Y by H
            if not target_shape.matches(h1):
                raise ValidationError(
                    f"GenusOneExtensionRule({shape_name(rule.h_factors)},{rule.source_label}): "
                    f"computed extension has order {h1.order}, expected shape {target_shape}"
                )
            new_sym = Symbol(KIND_JAC, h1.elements, (0,), rule.target_label)
            vec = BurnsideClass.of(sym) - BurnsideClass.of(canonicalize(new_sym, G, catalog))
            emit(vec, "B4", symbol=text_form(sym, G))

    return tuple(instances)


class RelationLattice:
    """The integer lattice spanned by relation vectors over a fixed symbol index."""

    __slots__ = ("index", "position", "lattice")

    def __init__(self, index: tuple[Symbol, ...], vectors):
        self.index = tuple(index)
        self.position = {s: i for i, s in enumerate(self.index)}
        rows = [self._to_row(v) for v in vectors]
        self.lattice = IntegerLattice.from_rows(rows, len(self.index))

    def _to_row(self, cls: BurnsideClass) -> tuple[int, ...]:
        return cls.to_vector(self.position, len(self.index))

    def class_from_row(self, row) -> BurnsideClass:
        return BurnsideClass({s: c for s, c in zip(self.index, row)})

    def contains(self, cls: BurnsideClass) -> bool:
        return self.lattice.contains(self._to_row(cls))

    def reduce(self, cls: BurnsideClass) -> BurnsideClass:
        return self.class_from_row(self.lattice.reduce(self._to_row(cls)))

    @property
    def basis(self) -> tuple[tuple[int, ...], ...]:
        return self.lattice.basis


@lru_cache(maxsize=None)
def relation_lattice(G: FiniteGroup, catalog: ActionCatalog) -> RelationLattice:
    symbols = enumerate_symbols(G, catalog)
    relations = generate_relations(G, catalog)
    return RelationLattice(symbols, [r.vector for r in relations])


def structure(G: FiniteGroup, catalog: ActionCatalog) -> GroupStructure:
    """Free rank and torsion of the symbol group modulo all generated relations."""
    symbols = enumerate_symbols(G, catalog)
    relations = generate_relations(G, catalog)
    return structure_from(symbols, [r.vector for r in relations])


def structure_from(index, vectors) -> GroupStructure:
    index = tuple(index)
    position = {s: i for i, s in enumerate(index)}
    rows = [v.to_vector(position, len(index)) for v in vectors]
    free_rank, torsion = cokernel_structure(rows, len(index))
    return GroupStructure(free_rank, torsion)


def classes_equal(a: BurnsideClass, b: BurnsideClass, lattice: RelationLattice) -> bool:
    return lattice.contains(a - b)


def reduce(a: BurnsideClass, lattice: RelationLattice) -> BurnsideClass:
    """Canonical coset representative; idempotent and constant on cosets."""
    return lattice.reduce(a)


@dataclass(frozen=True)
class FilterSpec:
    """Admitted (H, Y) pairs up to conjugacy.

    Each pair is stored as (H elements, preimage-of-Y elements), both inside the
    ambient group, which makes matching independent of the symbol kind.
    """

    pairs: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]
    name: str = ""

    @classmethod
    def max_stabilizer(cls, G: FiniteGroup) -> "FilterSpec":
        full = tuple(G.elements())
        return cls(pairs=((full, full),), name="max-stabilizer")

    @classmethod
    def from_subgroups(cls, pairs) -> "FilterSpec":
        out = []
        for H, Y in pairs:
            Q = carrier_quotient(H.ambient, H.elements, KIND_JAC)
            out.append((H.elements, Q.preimage(Y.elements)))
        return cls(pairs=tuple(out))

    def admits(self, sym: Symbol, G: FiniteGroup) -> bool:
        Q = carrier_quotient(G, sym.h, sym.kind)
        upstairs = frozenset(Q.preimage(sym.y))
        h_set = frozenset(sym.h)
        for h_pair, p_pair in self.pairs:
            h_target, p_target = frozenset(h_pair), frozenset(p_pair)
            for g in G.elements():
                if {G.conj(g, x) for x in h_set} == h_target and {G.conj(g, x) for x in upstairs} == p_target:
                    return True
        return False


def check_filter_closure(f: FilterSpec, G: FiniteGroup, catalog: ActionCatalog, relations=None) -> None:
    """Refuse filters under which some generated relation mixes admitted and dropped symbols."""
    if relations is None:
        relations = generate_relations(G, catalog)
    for rel in relations:
        flags = [f.admits(s, G) for s in rel.vector.support()]
        if any(flags) and not all(flags):
            raise ValidationError(
                f"filter closure violation: relation {rel.rule}{dict(rel.params)} mixes admitted "
                "and non-admitted symbols"
            )


def filter_project(a: BurnsideClass, f: FilterSpec, G: FiniteGroup, catalog: ActionCatalog) -> BurnsideClass:
    """Drop all symbols outside the filter (after the closure check)."""
    check_filter_closure(f, G, catalog)
    return BurnsideClass({s: c for s, c in a.terms() if f.admits(s, G)})


def filtered_structure(G: FiniteGroup, catalog: ActionCatalog, f: FilterSpec) -> GroupStructure:
    symbols = enumerate_symbols(G, catalog)
    relations = generate_relations(G, catalog)
    check_filter_closure(f, G, catalog, relations)
    admitted = tuple(s for s in symbols if f.admits(s, G))
    vectors = [r.vector for r in relations if all(f.admits(s, G) for s in r.vector.support())]
    return structure_from(admitted, vectors)


def filtered_relation_vectors(G: FiniteGroup, catalog: ActionCatalog, f: FilterSpec) -> tuple[BurnsideClass, ...]:
    relations = generate_relations(G, catalog)
    check_filter_closure(f, G, catalog, relations)
    return tuple(r.vector for r in relations if all(f.admits(s, G) for s in r.vector.support()))


_PHI_WEIGHTS = {KIND_CURVE: -1, KIND_SURFACE: -2, KIND_JAC: 1}


def phi_G(a: BurnsideClass, G: FiniteGroup, catalog: ActionCatalog) -> int:
    """Degree map to Z on classes supported on maximal-stabilizer symbols.

    Curve symbols count -1, ruled-surface symbols -2, jacobian symbols +1.
    Defined for abelian G and genus >= 2 only.
    """
    if not G.is_abelian():
        raise ValidationError("the degree map requires an abelian group")
    if catalog.curve.genus < 2:
        raise ValidationError("the degree map requires a curve of genus >= 2")
    full = tuple(G.elements())
    total = 0
    for sym, coeff in a.terms():
        if sym.h != full:
            raise ValidationError("class must be projected to maximal-stabilizer symbols first")
        total += coeff * _PHI_WEIGHTS[sym.kind]
    return total
