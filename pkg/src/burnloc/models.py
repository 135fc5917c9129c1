"""Threefold models as curve-related stratification data, their classes, the
three blow-up moves, and the linearizability verdict.

A model records one datum per orbit: fixed curves (two nontrivial normal
weights), ruled divisors over the curve (one weight), and Jacobian-type factors
of the intermediate Jacobian.  Geometry enters only through this declared data.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .abelian import Character, abelian_structure, character_kernel, character_span, restrict_character
from .catalog import CURVE, ActionCatalog, ActionLabel, ensure_valid_catalog
from .errors import ValidationError
from .groups import FiniteGroup, Subgroup, all_subgroups
from .relations import RelationLattice, FilterSpec, classes_equal, filter_project, phi_G, relation_lattice
from .symbols import (
    KIND_CURVE,
    KIND_JAC,
    KIND_SURFACE,
    BurnsideClass,
    Symbol,
    canonicalize,
    carrier_quotient,
    text_form,
    validate_symbol,
)

FIXED_CURVE = "fixed_curve"
RULED_DIVISOR = "ruled_divisor"

OBSTRUCTED = "OBSTRUCTED (not linearizable, not projectively linearizable)"
NO_OBSTRUCTION = "NO OBSTRUCTION FROM THIS INVARIANT"


@dataclass(frozen=True)
class StratumDatum:
    kind: str
    stabilizer: tuple[int, ...]
    residual: str
    weights: tuple[tuple[int, ...], ...]
    residual_group: tuple[int, ...] | None = None


@dataclass(frozen=True)
class JacobianFactorDatum:
    stabilizer: tuple[int, ...]
    residual: str
    residual_group: tuple[int, ...] | None = None


@dataclass(frozen=True)
class ModelDescription:
    group: FiniteGroup
    catalog: ActionCatalog
    strata: tuple[StratumDatum, ...] = ()
    jacobian_factors: tuple[JacobianFactorDatum, ...] = ()
    counts: tuple[int, int, int] | None = None
    name: str = ""


def _resolve_residual_group(G: FiniteGroup, h: tuple[int, ...], kind: str,
                            label: ActionLabel, residual_group) -> tuple[int, ...]:
    """Concrete Y as coset indices: explicit generators, or the unique shape match."""
    Q = carrier_quotient(G, h, kind)
    if residual_group is not None:
        bad = [x for x in residual_group if x not in Q.coset_of]
        if bad:
            raise ValidationError(
                f"residual_group elements {bad} do not centralize/normalize the stabilizer {h}"
            )
        gens = Q.image(residual_group)
        return Subgroup.generated(Q.group, gens).elements
    matches = [S for S in all_subgroups(Q.group) if label.group_shape.matches(S)]
    if not matches:
        raise ValidationError(
            f"no residual subgroup of shape {label.group_shape} exists for stabilizer {h}"
        )
    if len(matches) > 1:
        raise ValidationError(
            f"residual group for label {label.id!r} over stabilizer {h} is ambiguous; "
            "declare residual_group explicitly"
        )
    return matches[0].elements


def stratum_symbol(m: ModelDescription, datum: StratumDatum) -> Symbol:
    if datum.kind not in (FIXED_CURVE, RULED_DIVISOR):
        raise ValidationError(f"unknown stratum kind {datum.kind!r}")
    kind = KIND_CURVE if datum.kind == FIXED_CURVE else KIND_SURFACE
    label = m.catalog.label(datum.residual)
    y = _resolve_residual_group(m.group, datum.stabilizer, kind, label, datum.residual_group)
    sym = Symbol(kind, datum.stabilizer, y, datum.residual, tuple(tuple(w) for w in datum.weights))
    problems = validate_symbol(sym, m.group, m.catalog)
    if problems:
        raise ValidationError(f"invalid stratum datum: {'; '.join(problems)}")
    return canonicalize(sym, m.group, m.catalog)


def factor_symbol(m: ModelDescription, datum: JacobianFactorDatum) -> Symbol:
    label = m.catalog.label(datum.residual)
    y = _resolve_residual_group(m.group, datum.stabilizer, KIND_JAC, label, datum.residual_group)
    sym = Symbol(KIND_JAC, datum.stabilizer, y, datum.residual)
    problems = validate_symbol(sym, m.group, m.catalog)
    if problems:
        raise ValidationError(f"invalid jacobian factor datum: {'; '.join(problems)}")
    return canonicalize(sym, m.group, m.catalog)


def validate_model(m: ModelDescription) -> list[str]:
    problems: list[str] = []
    try:
        ensure_valid_catalog(m.catalog)
    except ValidationError as exc:
        return [str(exc)]
    for i, datum in enumerate(m.strata):
        expected = 2 if datum.kind == FIXED_CURVE else 1
        if len(datum.weights) != expected:
            problems.append(f"stratum {i}: {datum.kind} data carry exactly {expected} weight(s)")
            continue
        try:
            stratum_symbol(m, datum)
        except ValidationError as exc:
            problems.append(f"stratum {i}: {exc}")
    for i, datum in enumerate(m.jacobian_factors):
        try:
            factor_symbol(m, datum)
        except ValidationError as exc:
            problems.append(f"jacobian factor {i}: {exc}")
    if m.counts is not None and not problems:
        derived = _derived_counts(m)
        if tuple(m.counts) != derived:
            problems.append(
                f"declared fixed-locus counts {tuple(m.counts)} disagree with model data {derived}"
            )
    return problems


def ensure_valid_model(m: ModelDescription) -> ModelDescription:
    problems = validate_model(m)
    if problems:
        raise ValidationError("invalid model:\n  " + "\n  ".join(problems))
    return m


def class_of_action(m: ModelDescription) -> BurnsideClass:
    """The sum of canonical symbols contributed by all model data."""
    ensure_valid_model(m)
    total = BurnsideClass.zero()
    for datum in m.strata:
        total = total + BurnsideClass.of(stratum_symbol(m, datum))
    for datum in m.jacobian_factors:
        total = total + BurnsideClass.of(factor_symbol(m, datum))
    return total


@dataclass(frozen=True)
class BlowupCenter:
    """Blow-up center data for the three cases.

    Case 1: orbit of a curve with trivial generic stabilizer; carries the curve
    action and Y (as ambient-group generators).  Case 2: a curve inside a
    stabilized divisor, with weight pattern (0, b); the divisor is named by a
    ruled stratum index or given explicitly as (stabilizer, weight) context.
    Case 3: a fixed-curve stratum, all data read from it.
    """

    case: int
    stratum: int | None = None
    curve_label: str | None = None
    y_reps: tuple[int, ...] = ()
    context_stabilizer: tuple[int, ...] | None = None
    context_weight: tuple[int, ...] | None = None


def _case2_divisor_data(m: ModelDescription, c: BlowupCenter) -> tuple[tuple[int, ...], tuple[int, ...]]:
    if (c.stratum is None) == (c.context_stabilizer is None):
        raise ValidationError("case-2 centers name either a ruled stratum or an explicit divisor context")
    if c.stratum is not None:
        if not (0 <= c.stratum < len(m.strata)):
            raise ValidationError(f"no stratum with index {c.stratum}")
        datum = m.strata[c.stratum]
        if datum.kind != RULED_DIVISOR:
            raise ValidationError("case-2 centers must reference a ruled_divisor stratum")
        return datum.stabilizer, datum.weights[0]
    if c.context_weight is None:
        raise ValidationError("explicit case-2 context needs both stabilizer and weight")
    return tuple(c.context_stabilizer), tuple(c.context_weight)


def blowup(m: ModelDescription, c: BlowupCenter) -> ModelDescription:
    """The model after blowing up the given center (orbit of a copy of the curve)."""
    ensure_valid_model(m)
    G = m.group
    catalog = m.catalog

    if c.case == 1:
        if c.curve_label is None:
            raise ValidationError("case-1 centers carry the curve action label")
        label = catalog.label(c.curve_label)
        if label.space != CURVE:
            raise ValidationError("case-1 centers need a curve-space action label")
        Y = Subgroup.generated(G, c.y_reps)
        if not label.group_shape.matches(Y):
            raise ValidationError(
                f"case-1 residual group of order {Y.order} does not match {label.group_shape}"
            )
        jac = catalog.jacobian_of_curve_action(c.curve_label)
        appended = JacobianFactorDatum(stabilizer=(0,), residual=jac.id, residual_group=Y.elements)
        return ensure_valid_model(replace(m, jacobian_factors=m.jacobian_factors + (appended,), counts=None))

    if c.case == 2:
        stabilizer, weight = _case2_divisor_data(m, c)
        if c.curve_label is None:
            raise ValidationError("case-2 centers carry the residual curve action label")
        H = Subgroup(G, stabilizer)
        if H.is_trivial():
            raise ValidationError("case-2 stabilizers are nontrivial")
        struct = abelian_structure(H)
        b = Character(struct, tuple(weight))
        if len(character_span(b)) != H.order:
            raise ValidationError("case-2 weight must generate the stabilizer's character group")
        label = catalog.label(c.curve_label)
        if label.space != CURVE:
            raise ValidationError("case-2 centers need a curve-space action label")
        y = _resolve_residual_group(G, H.elements, KIND_CURVE, label, c.y_reps or None)
        Q = carrier_quotient(G, H.elements, KIND_CURVE)
        upstairs = Q.preimage(y)
        jac = catalog.jacobian_of_curve_action(c.curve_label)
        new_stratum = StratumDatum(
            kind=FIXED_CURVE, stabilizer=H.elements, residual=c.curve_label,
            weights=(b.coords, (-b).coords), residual_group=upstairs,
        )
        new_factor = JacobianFactorDatum(stabilizer=H.elements, residual=jac.id, residual_group=upstairs)
        return ensure_valid_model(replace(
            m, strata=m.strata + (new_stratum,), jacobian_factors=m.jacobian_factors + (new_factor,),
            counts=None,
        ))

    if c.case == 3:
        if c.stratum is None or not (0 <= c.stratum < len(m.strata)):
            raise ValidationError(f"no stratum with index {c.stratum}")
        datum = m.strata[c.stratum]
        if datum.kind != FIXED_CURVE:
            raise ValidationError("case-3 centers must reference a fixed_curve stratum")
        H = Subgroup(G, datum.stabilizer)
        struct = abelian_structure(H)
        b1, b2 = (Character(struct, tuple(w)) for w in datum.weights)
        label = catalog.label(datum.residual)
        y = _resolve_residual_group(G, H.elements, KIND_CURVE, label, datum.residual_group)
        Q = carrier_quotient(G, H.elements, KIND_CURVE)
        upstairs = Q.preimage(y)
        strata = list(m.strata)
        del strata[c.stratum]
        if b1 != b2:
            for first, second in ((b1, b2 - b1), (b2, b1 - b2)):
                strata.append(StratumDatum(
                    kind=FIXED_CURVE, stabilizer=H.elements, residual=datum.residual,
                    weights=(first.coords, second.coords), residual_group=upstairs,
                ))
        diff = b1 - b2
        if len(character_span(diff)) != H.order:
            h_bar = character_kernel(diff)
            surface_label = catalog.induced_surface_action(
                struct.invariant_factors, datum.residual, diff.order(),
            )
            weight = restrict_character(b1, h_bar)
            strata.append(StratumDatum(
                kind=RULED_DIVISOR, stabilizer=h_bar.elements, residual=surface_label.id,
                weights=(weight.coords,), residual_group=upstairs,
            ))
        jac = catalog.jacobian_of_curve_action(datum.residual)
        new_factor = JacobianFactorDatum(stabilizer=H.elements, residual=jac.id, residual_group=upstairs)
        return ensure_valid_model(replace(
            m, strata=tuple(strata), jacobian_factors=m.jacobian_factors + (new_factor,),
            counts=None,
        ))

    raise ValidationError(f"blow-up case must be 1, 2 or 3, got {c.case}")


def verify_blowup_invariance(m: ModelDescription, c: BlowupCenter,
                             lattice: RelationLattice | None = None) -> bool:
    """Does the class survive the blow-up, modulo the relation lattice?"""
    if lattice is None:
        lattice = relation_lattice(m.group, m.catalog)
    return classes_equal(class_of_action(m), class_of_action(blowup(m, c)), lattice)


def _derived_counts(m: ModelDescription) -> tuple[int, int, int]:
    full = tuple(m.group.elements())
    i1 = sum(1 for d in m.strata if d.kind == FIXED_CURVE and d.stabilizer == full)
    i2 = sum(1 for d in m.strata if d.kind == RULED_DIVISOR and d.stabilizer == full)
    i3 = sum(1 for d in m.jacobian_factors if d.stabilizer == full)
    return (i1, i2, i3)


def invariant_counts(m: ModelDescription) -> tuple[int, int, int]:
    """(I1, I2, I3): declared counts when present (validated), else derived from the data."""
    if not m.group.is_abelian():
        raise ValidationError("fixed-locus counts require an abelian group")
    if m.catalog.curve.genus < 2:
        raise ValidationError("fixed-locus counts require a curve of genus >= 2")
    ensure_valid_model(m)
    return tuple(m.counts) if m.counts is not None else _derived_counts(m)


def invariant_I(i1: int, i2: int, i3: int) -> int:
    if min(i1, i2, i3) < 0:
        raise ValidationError("fixed-locus counts are nonnegative")
    return -i1 - 2 * i2 + i3


@dataclass(frozen=True)
class VerdictReport:
    model: str
    counts: tuple[int, int, int]
    invariant: int
    phi: int
    consistent: bool
    obstructed: bool
    verdict: str
    class_terms: tuple[tuple[str, int], ...]
    notes: tuple[str, ...]

    def to_json(self) -> dict:
        return {
            "model": self.model,
            "counts": {"I1": self.counts[0], "I2": self.counts[1], "I3": self.counts[2]},
            "invariant_I": self.invariant,
            "phi": self.phi,
            "consistent": self.consistent,
            "obstructed": self.obstructed,
            "verdict": self.verdict,
            "class": [{"symbol": s, "coeff": c} for s, c in self.class_terms],
            "notes": list(self.notes),
        }

    def to_text(self) -> str:
        i1, i2, i3 = self.counts
        lines = [
            f"model: {self.model}",
            f"class: {', '.join(f'{c}*{s}' for s, c in self.class_terms) or '0'}",
            f"counts: I1={i1} I2={i2} I3={i3}",
            f"I = -I1 - 2*I2 + I3 = {self.invariant}",
            f"phi(filtered class) = {self.phi}" + ("" if self.consistent else "  [INCONSISTENT]"),
            f"verdict: {self.verdict}",
        ]
        lines.extend(f"note: {n}" for n in self.notes)
        return "\n".join(lines)


def verdict(m: ModelDescription) -> VerdictReport:
    """Linearizability verdict from the counts invariant, cross-checked against the degree map."""
    counts = invariant_counts(m)
    value = invariant_I(*counts)
    cls = class_of_action(m)
    filt = FilterSpec.max_stabilizer(m.group)
    projected = filter_project(cls, filt, m.group, m.catalog)
    phi = phi_G(projected, m.group, m.catalog)
    consistent = phi == value
    notes: list[str] = []
    exotic = [
        s for s, _ in cls.terms()
        if s.kind == KIND_JAC and not m.catalog.label(s.action).from_curve
    ]
    if exotic and m.catalog.curve.genus >= 2:
        lattice = relation_lattice(m.group, m.catalog)
        reduced = lattice.reduce(cls)
        zero = "zero" if reduced.is_zero() else "nonzero"
        names = ", ".join(text_form(s, m.group) for s in exotic)
        notes.append(f"exotic Jacobian symbol present ({names}); class is {zero} after reduction")
    obstructed = value != 0
    return VerdictReport(
        model=m.name or "(unnamed)",
        counts=counts,
        invariant=value,
        phi=phi,
        consistent=consistent,
        obstructed=obstructed,
        verdict=OBSTRUCTED if obstructed else NO_OBSTRUCTION,
        class_terms=tuple((text_form(s, m.group), c) for s, c in cls.terms()),
        notes=tuple(notes),
    )


def model_from_json(data: dict, catalog_loader, name: str = "") -> ModelDescription:
    """Build a model from its JSON form.

    `catalog_loader` maps a catalog name to an ActionCatalog; inline catalog
    objects are accepted as well.
    """
    from .catalog import catalog_from_json
    from .groups import build_group

    try:
        group = build_group(data["group"])
        cat_ref = data["catalog"]
        catalog = catalog_loader(cat_ref) if isinstance(cat_ref, str) else catalog_from_json(cat_ref)
        declared_curve = data.get("curve")
        if declared_curve is not None and str(declared_curve.get("id")) != catalog.curve.id:
            raise ValidationError(
                f"model curve {declared_curve.get('id')!r} does not match the catalog's "
                f"curve {catalog.curve.id!r}"
            )
        strata = tuple(
            StratumDatum(
                kind=str(d["kind"]),
                stabilizer=tuple(int(x) for x in d["stabilizer"]),
                residual=str(d["residual"]),
                weights=tuple(tuple(int(c) for c in w) for w in d["weights"]),
                residual_group=(
                    tuple(int(x) for x in d["residual_group"]) if "residual_group" in d else None
                ),
            )
            for d in data.get("strata", [])
        )
        factors = tuple(
            JacobianFactorDatum(
                stabilizer=tuple(int(x) for x in d["stabilizer"]),
                residual=str(d["residual"]),
                residual_group=(
                    tuple(int(x) for x in d["residual_group"]) if "residual_group" in d else None
                ),
            )
            for d in data.get("jacobian_factors", [])
        )
        counts = tuple(int(x) for x in data["counts"]) if "counts" in data else None
        if counts is not None and len(counts) != 3:
            raise ValidationError("counts must be a triple [I1, I2, I3]")
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"malformed model JSON: {exc!r}") from exc
    return ModelDescription(
        group=group, catalog=catalog, strata=strata, jacobian_factors=factors,
        counts=counts, name=name or str(data.get("name", "")),
    )


def center_from_json(data: dict) -> BlowupCenter:
    try:
        case = int(data["case"])
        context = data.get("context") or {}
        return BlowupCenter(
            case=case,
            stratum=int(data["stratum"]) if "stratum" in data else None,
            curve_label=data.get("curve_label"),
            y_reps=tuple(int(x) for x in data.get("y_reps", [])),
            context_stabilizer=(
                tuple(int(x) for x in context["stabilizer"]) if "stabilizer" in context else None
            ),
            context_weight=tuple(int(c) for c in context["weight"]) if "weight" in context else None,
        )
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"malformed blow-up center JSON: {exc!r}") from exc
