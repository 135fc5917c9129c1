"""User-supplied ledger of a reference curve and the action classes that may
appear in symbol slots.

Actions on function fields and Jacobians are opaque labels with flags; the
relation engine consumes only group shape, faithfulness, from-curve provenance
and the declared rule identifications.  Labels are equal exactly when their ids
are equal -- the engine never guesses geometric isomorphisms, and a missing
rule is a hard error rather than a silent invention.
"""

from __future__ import annotations

from dataclasses import dataclass

from .abelian import abelian_structure, normalize_factors, shape_name
from .errors import CatalogIncompleteError, ValidationError
from .groups import Subgroup

CURVE = "curve"
RULED_SURFACE = "ruled_surface"
JACOBIAN = "jacobian"
SPACES = (CURVE, RULED_SURFACE, JACOBIAN)


@dataclass(frozen=True)
class GroupShape:
    """Declared isomorphism type of an acting group.

    Abelian shapes carry invariant factors; nonabelian ones are matched only by
    order (a deliberate coarse escape hatch, since no finer data is consumed).
    """

    factors: tuple[int, ...] | None
    order: int

    @classmethod
    def abelian(cls, factors) -> "GroupShape":
        fs = normalize_factors(factors)
        n = 1
        for d in fs:
            n *= d
        return cls(factors=fs, order=n)

    @classmethod
    def from_json(cls, data) -> "GroupShape":
        if isinstance(data, list):
            return cls.abelian(data)
        if isinstance(data, dict) and data.get("abelian") is False:
            return cls(factors=None, order=int(data["order"]))
        raise ValidationError(f"bad group_shape: {data!r}")

    def to_json(self):
        if self.factors is None:
            return {"order": self.order, "abelian": False}
        return list(self.factors)

    def matches(self, sub: Subgroup) -> bool:
        if sub.order != self.order:
            return False
        if self.factors is None:
            return not sub.is_abelian()
        return sub.is_abelian() and abelian_structure(sub).invariant_factors == self.factors

    def is_trivial(self) -> bool:
        return self.order == 1

    def __str__(self) -> str:
        if self.factors is None:
            return f"nonabelian:{self.order}"
        return shape_name(self.factors)


@dataclass(frozen=True)
class CurveProfile:
    id: str
    genus: int
    hyperelliptic: bool = False


@dataclass(frozen=True)
class ActionLabel:
    """One equivalence class of actions on k(C), k(C x P1) or J(C)."""

    id: str
    space: str
    group_shape: GroupShape
    faithful: bool = True
    trivial: bool = False
    from_curve: bool = False
    underlying_curve_action: str | None = None


@dataclass(frozen=True)
class InduceRule:
    """Declares the ruled-surface label produced by the action construction.

    Matches a stabilizer shape, a curve action, and a weight pattern: "equal"
    (the two weights coincide) or a positive diff_order (the order of their
    difference in the dual).
    """

    h_factors: tuple[int, ...]
    curve_label: str
    weights: str | int  # "equal" or diff order (int >= 2)
    target: str

    def pattern_str(self) -> str:
        return "equal" if self.weights == "equal" else f"diff_order={self.weights}"


@dataclass(frozen=True)
class JacobianOfCurveRule:
    source: str
    target: str


@dataclass(frozen=True)
class GenusOneExtensionRule:
    """Rewrites (H, J <- Y) to (H1, J <- Y/Y1) when Y1 <= Y acts trivially (genus 1).

    trivial_part is "all" (the label is a trivial action, Y1 = Y) or "none"
    (faithful label, Y1 = 1); those are the only cases a label determines.
    """

    h_factors: tuple[int, ...]
    source_label: str
    trivial_part: str
    target_h_factors: tuple[int, ...]
    target_label: str


@dataclass(frozen=True)
class ActionCatalog:
    curve: CurveProfile
    labels: tuple[ActionLabel, ...]
    induce_rules: tuple[InduceRule, ...] = ()
    jacobian_rules: tuple[JacobianOfCurveRule, ...] = ()
    extension_rules: tuple[GenusOneExtensionRule, ...] = ()
    name: str = ""

    def label(self, label_id: str) -> ActionLabel:
        for lab in self.labels:
            if lab.id == label_id:
                return lab
        raise ValidationError(f"unknown action label {label_id!r}")

    def has_label(self, label_id: str) -> bool:
        return any(lab.id == label_id for lab in self.labels)

    def labels_in(self, space: str) -> tuple[ActionLabel, ...]:
        return tuple(lab for lab in self.labels if lab.space == space)

    def jacobian_of_curve_action(self, curve_label: str) -> ActionLabel:
        """The declared J(C)-action label induced by a curve action."""
        for rule in self.jacobian_rules:
            if rule.source == curve_label:
                return self.label(rule.target)
        raise CatalogIncompleteError("JacobianOfCurveRule", curve_label=curve_label)

    def induced_surface_action(self, h_factors: tuple[int, ...], curve_label: str,
                               diff_order: int) -> ActionLabel:
        """The declared ruled-surface label for a (stabilizer, curve action, weight pattern)."""
        pattern = "equal" if diff_order == 1 else diff_order
        for rule in self.induce_rules:
            if rule.h_factors == h_factors and rule.curve_label == curve_label and rule.weights == pattern:
                return self.label(rule.target)
        raise CatalogIncompleteError(
            "InduceRule",
            h=shape_name(h_factors),
            curve_label=curve_label,
            weights="equal" if diff_order == 1 else f"diff_order={diff_order}",
        )


def induced_surface_action(catalog: ActionCatalog, H, Y, curve_label: str, b1, b2) -> ActionLabel:
    """Ruled-surface label for blowing up a curve symbol (H, Y, curve_label, (b1, b2)).

    Looks up the InduceRule for the stabilizer's shape and the weight pattern
    and cross-checks the declared target order against the constructed group
    order |Y| * ord(b1 - b2).
    """
    from .abelian import abelian_structure

    diff = b1 - b2
    label = catalog.induced_surface_action(
        abelian_structure(H).invariant_factors, curve_label, diff.order()
    )
    expected = Y.order * diff.order()
    if label.group_shape.order != expected:
        raise ValidationError(
            f"induced label {label.id!r} has group order {label.group_shape.order}, "
            f"but the construction yields order {expected}"
        )
    return label


def jacobian_of_curve_action(catalog: ActionCatalog, curve_label: str) -> ActionLabel:
    """The declared J(C)-action label induced by a curve action (from-curve flagged)."""
    return catalog.jacobian_of_curve_action(curve_label)


def validate_catalog(catalog: ActionCatalog) -> list[str]:
    """All structural invariants, returned as a list of violations (empty = valid)."""
    problems: list[str] = []
    curve = catalog.curve
    if curve.genus < 1:
        problems.append(f"curve {curve.id!r}: genus must be >= 1, got {curve.genus}")
    if curve.hyperelliptic and curve.genus < 2:
        problems.append(f"curve {curve.id!r}: hyperelliptic flag is only meaningful for genus >= 2")
    seen_ids = set()
    for lab in catalog.labels:
        if lab.id in seen_ids:
            problems.append(f"duplicate label id {lab.id!r}")
        seen_ids.add(lab.id)
        if lab.space not in SPACES:
            problems.append(f"label {lab.id!r}: unknown space {lab.space!r}")
            continue
        if lab.group_shape.is_trivial():
            if not lab.trivial or not lab.faithful:
                problems.append(f"label {lab.id!r}: the trivial group acts trivially and (vacuously) faithfully")
        elif lab.trivial and lab.faithful:
            problems.append(f"label {lab.id!r}: a trivial action of a nontrivial group is not faithful")
        if lab.space in (CURVE, RULED_SURFACE):
            if not lab.faithful:
                problems.append(f"label {lab.id!r}: {lab.space} actions must be faithful")
            if lab.from_curve or lab.underlying_curve_action:
                problems.append(f"label {lab.id!r}: from_curve data only applies to jacobian labels")
        else:
            if curve.genus == 1:
                if not lab.from_curve or lab.underlying_curve_action is None:
                    problems.append(
                        f"label {lab.id!r}: genus-1 jacobian actions must come from a declared curve action"
                    )
                elif not catalog.has_label(lab.underlying_curve_action):
                    problems.append(f"label {lab.id!r}: dangling underlying_curve_action")
                elif catalog.label(lab.underlying_curve_action).space != CURVE:
                    problems.append(f"label {lab.id!r}: underlying_curve_action must be a curve label")
            else:
                if not lab.faithful:
                    problems.append(f"label {lab.id!r}: genus >= 2 jacobian actions must be faithful")
                if lab.from_curve and lab.underlying_curve_action is not None:
                    if not catalog.has_label(lab.underlying_curve_action):
                        problems.append(f"label {lab.id!r}: dangling underlying_curve_action")

    def check_label(rule_desc: str, label_id: str, space: str):
        if not catalog.has_label(label_id):
            problems.append(f"{rule_desc}: dangling label {label_id!r}")
            return None
        lab = catalog.label(label_id)
        if lab.space != space:
            problems.append(f"{rule_desc}: label {label_id!r} must live on {space}, not {lab.space}")
            return None
        return lab

    for rule in catalog.induce_rules:
        desc = f"InduceRule({shape_name(rule.h_factors)},{rule.curve_label},{rule.pattern_str()})"
        src = check_label(desc, rule.curve_label, CURVE)
        tgt = check_label(desc, rule.target, RULED_SURFACE)
        if rule.weights != "equal" and (not isinstance(rule.weights, int) or rule.weights < 2):
            problems.append(f"{desc}: weight pattern must be 'equal' or an integer diff order >= 2")
            continue
        if src is not None and tgt is not None:
            index = 1 if rule.weights == "equal" else rule.weights
            h_order = 1
            for d in rule.h_factors:
                h_order *= d
            if h_order % index != 0:
                problems.append(f"{desc}: diff order {index} does not divide |H| = {h_order}")
            expected = src.group_shape.order * index
            if tgt.group_shape.order != expected:
                problems.append(
                    f"{desc}: target group order {tgt.group_shape.order} != |Y|*[H:ker] = {expected}"
                )
    for rule in catalog.jacobian_rules:
        desc = f"JacobianOfCurveRule({rule.source})"
        src = check_label(desc, rule.source, CURVE)
        tgt = check_label(desc, rule.target, JACOBIAN)
        if src is None or tgt is None:
            continue
        if src.group_shape != tgt.group_shape:
            problems.append(f"{desc}: target shape {tgt.group_shape} != source shape {src.group_shape}")
        if not tgt.from_curve:
            problems.append(f"{desc}: target {tgt.id!r} must be flagged from_curve")
        if catalog.curve.genus == 1 and tgt.underlying_curve_action != rule.source:
            problems.append(f"{desc}: genus-1 target must record {rule.source!r} as its underlying curve action")
    for rule in catalog.extension_rules:
        desc = f"GenusOneExtensionRule({shape_name(rule.h_factors)},{rule.source_label})"
        if catalog.curve.genus != 1:
            problems.append(f"{desc}: genus-1 extension rules need a genus-1 curve")
            continue
        src = check_label(desc, rule.source_label, JACOBIAN)
        tgt = check_label(desc, rule.target_label, JACOBIAN)
        if rule.trivial_part not in ("all", "none"):
            problems.append(f"{desc}: trivial_part must be 'all' or 'none'")
            continue
        if src is None or tgt is None:
            continue
        if rule.trivial_part == "all" and not src.trivial:
            problems.append(f"{desc}: trivial_part='all' needs a label declared trivial")
        if rule.trivial_part == "none" and not src.faithful:
            problems.append(f"{desc}: trivial_part='none' needs a faithful label")
        y1_order = src.group_shape.order if rule.trivial_part == "all" else 1
        h_order = 1
        for d in rule.h_factors:
            h_order *= d
        h1_order = 1
        for d in rule.target_h_factors:
            h1_order *= d
        if h1_order != h_order * y1_order:
            problems.append(f"{desc}: |H1| = {h1_order} != |H|*|Y1| = {h_order * y1_order}")
        if rule.trivial_part == "all" and not tgt.group_shape.is_trivial():
            problems.append(f"{desc}: Y/Y1 is trivial, so the target label must have trivial shape")
    return problems


def ensure_valid_catalog(catalog: ActionCatalog) -> ActionCatalog:
    problems = validate_catalog(catalog)
    if problems:
        raise ValidationError("invalid catalog:\n  " + "\n  ".join(problems))
    return catalog


def catalog_from_json(data: dict, name: str = "") -> ActionCatalog:
    try:
        curve = CurveProfile(
            id=str(data["curve"]["id"]),
            genus=int(data["curve"]["genus"]),
            hyperelliptic=bool(data["curve"].get("hyperelliptic", False)),
        )
        labels = tuple(
            ActionLabel(
                id=str(lab["id"]),
                space=str(lab["space"]),
                group_shape=GroupShape.from_json(lab["group_shape"]),
                faithful=bool(lab.get("faithful", True)),
                trivial=bool(lab.get("trivial", False)),
                from_curve=bool(lab.get("from_curve", False)),
                underlying_curve_action=lab.get("underlying_curve_action"),
            )
            for lab in data.get("labels", [])
        )
        rules = data.get("rules", {})
        induce = tuple(
            InduceRule(
                h_factors=normalize_factors(r["h"]),
                curve_label=str(r["curve_label"]),
                weights=("equal" if r["weights"] == "equal" else int(r["weights"]["diff_order"])),
                target=str(r["target"]),
            )
            for r in rules.get("induce", [])
        )
        jac = tuple(
            JacobianOfCurveRule(source=str(r["source"]), target=str(r["target"]))
            for r in rules.get("jacobian_of_curve", [])
        )
        ext = tuple(
            GenusOneExtensionRule(
                h_factors=normalize_factors(r["h"]),
                source_label=str(r["label"]),
                trivial_part=str(r["trivial_part"]),
                target_h_factors=normalize_factors(r["target_h"]),
                target_label=str(r["target_label"]),
            )
            for r in rules.get("genus_one_extension", [])
        )
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"malformed catalog JSON: {exc!r}") from exc
    return ActionCatalog(
        curve=curve, labels=labels, induce_rules=induce,
        jacobian_rules=jac, extension_rules=ext, name=name or str(data.get("name", "")),
    )


def catalog_to_json(catalog: ActionCatalog) -> dict:
    return {
        "name": catalog.name,
        "curve": {
            "id": catalog.curve.id,
            "genus": catalog.curve.genus,
            "hyperelliptic": catalog.curve.hyperelliptic,
        },
        "labels": [
            {
                "id": lab.id,
                "space": lab.space,
                "group_shape": lab.group_shape.to_json(),
                "faithful": lab.faithful,
                "trivial": lab.trivial,
                **({"from_curve": lab.from_curve} if lab.space == JACOBIAN else {}),
                **(
                    {"underlying_curve_action": lab.underlying_curve_action}
                    if lab.underlying_curve_action is not None
                    else {}
                ),
            }
            for lab in catalog.labels
        ],
        "rules": {
            "induce": [
                {
                    "h": list(r.h_factors),
                    "curve_label": r.curve_label,
                    "weights": "equal" if r.weights == "equal" else {"diff_order": r.weights},
                    "target": r.target,
                }
                for r in catalog.induce_rules
            ],
            "jacobian_of_curve": [{"source": r.source, "target": r.target} for r in catalog.jacobian_rules],
            "genus_one_extension": [
                {
                    "h": list(r.h_factors),
                    "label": r.source_label,
                    "trivial_part": r.trivial_part,
                    "target_h": list(r.target_h_factors),
                    "target_label": r.target_label,
                }
                for r in catalog.extension_rules
            ],
        },
    }
