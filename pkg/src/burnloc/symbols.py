"""The three symbol kinds, their validity conditions, canonical forms under
weight permutation and conjugation, and exhaustive enumeration.

A symbol is pure data: the stabilizer H as a sorted element tuple of the ambient
group, the residual group Y as a sorted tuple of coset indices in the carrier
quotient (centralizer mod H for curve/surface symbols, normalizer mod H for
jacobian symbols), an action label id, and character coordinate tuples.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .abelian import (
    Character,
    abelian_structure,
    all_characters,
    dual_generated_check,
    shape_name,
    transport_character,
)
from .catalog import CURVE, JACOBIAN, RULED_SURFACE, ActionCatalog
from .errors import ValidationError
from .groups import (
    FiniteGroup,
    QuotientGroup,
    Subgroup,
    abelian_subgroups_up_to_conjugacy,
    all_subgroups,
    centralizer,
    normalizer,
    quotient,
    subgroups_up_to_conjugacy,
)

KIND_CURVE = "curve"
KIND_SURFACE = "surface"
KIND_JAC = "jac"
_KIND_RANK = {KIND_CURVE: 0, KIND_SURFACE: 1, KIND_JAC: 2}
_KIND_SPACE = {KIND_CURVE: CURVE, KIND_SURFACE: RULED_SURFACE, KIND_JAC: JACOBIAN}


@dataclass(frozen=True, order=False)
class Symbol:
    kind: str
    h: tuple[int, ...]
    y: tuple[int, ...]
    action: str
    weights: tuple[tuple[int, ...], ...] = ()

    def key(self):
        return (_KIND_RANK[self.kind], len(self.h), self.h, self.y, self.action, self.weights)

    def __lt__(self, other: "Symbol") -> bool:
        return self.key() < other.key()


@lru_cache(maxsize=None)
def carrier_quotient(G: FiniteGroup, h: tuple[int, ...], kind: str) -> QuotientGroup:
    """The quotient housing Y: Z_G(H)/H for curve/surface symbols, N_G(H)/H for jacobian ones."""
    H = Subgroup(G, h)
    ambient = normalizer(G, H) if kind == KIND_JAC else centralizer(G, H)
    return quotient(ambient, H)


def y_subgroup(G: FiniteGroup, sym: Symbol) -> Subgroup:
    Q = carrier_quotient(G, sym.h, sym.kind)
    return Subgroup(Q.group, sym.y)


def symbol_characters(G: FiniteGroup, sym: Symbol) -> tuple[Character, ...]:
    struct = abelian_structure(Subgroup(G, sym.h))
    return tuple(Character(struct, w) for w in sym.weights)


def validate_symbol(sym: Symbol, G: FiniteGroup, catalog: ActionCatalog) -> list[str]:
    """Diagnostics for the kind-specific invariants; an empty list means valid."""
    problems: list[str] = []
    if sym.kind not in _KIND_RANK:
        return [f"unknown symbol kind {sym.kind!r}"]
    try:
        H = Subgroup(G, sym.h)
    except ValidationError as exc:
        return [f"stabilizer: {exc}"]
    if not catalog.has_label(sym.action):
        return [f"unknown action label {sym.action!r}"]
    label = catalog.label(sym.action)
    if label.space != _KIND_SPACE[sym.kind]:
        problems.append(f"label {label.id!r} lives on {label.space}, not {_KIND_SPACE[sym.kind]}")
    try:
        Y = y_subgroup(G, sym)
    except ValidationError as exc:
        return problems + [f"residual group: {exc}"]
    if not label.group_shape.matches(Y):
        problems.append(f"residual group of order {Y.order} does not match declared shape {label.group_shape}")

    if sym.kind == KIND_JAC:
        if sym.weights:
            problems.append("jacobian symbols carry no weights")
        if catalog.curve.genus >= 2 and not label.faithful:
            problems.append("genus >= 2 jacobian actions must be faithful")
        if catalog.curve.genus == 1 and not label.from_curve:
            problems.append("genus-1 jacobian actions must come from a curve action")
        return problems

    if H.is_trivial():
        problems.append("stabilizer must be nontrivial")
        return problems
    if not H.is_abelian():
        problems.append("stabilizer must be abelian")
        return problems
    struct = abelian_structure(H)
    expected = 2 if sym.kind == KIND_CURVE else 1
    if len(sym.weights) != expected:
        problems.append(f"{sym.kind} symbols carry exactly {expected} weight(s)")
        return problems
    try:
        chars = symbol_characters(G, sym)
    except ValidationError as exc:
        problems.append(f"weights: {exc}")
        return problems
    if any(b.is_trivial() for b in chars):
        problems.append("weights must be nontrivial characters")
        return problems
    if not dual_generated_check(*chars):
        problems.append("weights must generate the full character group of the stabilizer")
    if sym.kind == KIND_SURFACE and not H.is_cyclic():
        problems.append("surface symbols need a cyclic stabilizer")
    return problems


def transport_symbol(sym: Symbol, g: int, G: FiniteGroup) -> Symbol:
    """Conjugate all symbol data by g (labels denote abstract classes and stay put)."""
    H = Subgroup(G, sym.h)
    H2 = H.conjugate(g)
    Q1 = carrier_quotient(G, sym.h, sym.kind)
    Q2 = carrier_quotient(G, H2.elements, sym.kind)
    y2 = tuple(sorted({Q2.coset_of[G.conj(g, Q1.reps[i])] for i in sym.y}))
    if sym.weights:
        struct = abelian_structure(H)
        moved = [transport_character(g, Character(struct, w)) for w in sym.weights]
        weights2 = tuple(sorted(b.coords for b in moved))
    else:
        weights2 = ()
    return Symbol(sym.kind, H2.elements, y2, sym.action, weights2)


def canonicalize(sym: Symbol, G: FiniteGroup, catalog: ActionCatalog) -> Symbol:
    """Weight-sorted form, minimized over all conjugations.

    Idempotent, and constant on orbits of the weight-permutation and
    conjugation moves."""
    problems = validate_symbol(sym, G, catalog)
    if problems:
        raise ValidationError(f"cannot canonicalize invalid symbol: {'; '.join(problems)}")
    sorted_sym = Symbol(sym.kind, sym.h, sym.y, sym.action, tuple(sorted(sym.weights)))
    return min((transport_symbol(sorted_sym, g, G) for g in G.elements()), key=Symbol.key)


def _iter_y_options(G: FiniteGroup, h: tuple[int, ...], kind: str):
    Q = carrier_quotient(G, h, kind)
    for Y in all_subgroups(Q.group):
        yield Y


def iter_curve_data(G: FiniteGroup, catalog: ActionCatalog):
    """Raw (unconjugated) curve symbols over stabilizer representatives."""
    for H in abelian_subgroups_up_to_conjugacy(G):
        if H.is_trivial():
            continue
        struct = abelian_structure(H)
        if len(struct.invariant_factors) > 2:
            continue  # the dual cannot be generated by two characters
        nontrivial = [b for b in all_characters(struct) if not b.is_trivial()]
        for Y in _iter_y_options(G, H.elements, KIND_CURVE):
            for label in catalog.labels_in(CURVE):
                if not label.group_shape.matches(Y):
                    continue
                for i, b1 in enumerate(nontrivial):
                    for b2 in nontrivial[i:]:
                        if not dual_generated_check(b1, b2):
                            continue
                        yield Symbol(KIND_CURVE, H.elements, Y.elements, label.id, (b1.coords, b2.coords))


def iter_surface_data(G: FiniteGroup, catalog: ActionCatalog):
    for H in abelian_subgroups_up_to_conjugacy(G):
        if H.is_trivial() or not H.is_cyclic():
            continue
        struct = abelian_structure(H)
        generators = [b for b in all_characters(struct) if not b.is_trivial() and dual_generated_check(b)]
        for Y in _iter_y_options(G, H.elements, KIND_SURFACE):
            for label in catalog.labels_in(RULED_SURFACE):
                if not label.group_shape.matches(Y):
                    continue
                for b in generators:
                    yield Symbol(KIND_SURFACE, H.elements, Y.elements, label.id, (b.coords,))


def iter_jac_data(G: FiniteGroup, catalog: ActionCatalog):
    genus = catalog.curve.genus
    for H in subgroups_up_to_conjugacy(G):
        for Y in _iter_y_options(G, H.elements, KIND_JAC):
            for label in catalog.labels_in(JACOBIAN):
                if not label.group_shape.matches(Y):
                    continue
                if genus >= 2 and not label.faithful:
                    continue
                if genus == 1 and not label.from_curve:
                    continue
                yield Symbol(KIND_JAC, H.elements, Y.elements, label.id)


def enumerate_symbols(G: FiniteGroup, catalog: ActionCatalog) -> tuple[Symbol, ...]:
    """Every valid symbol for (G, catalog), canonicalized, deduplicated, in total order."""
    seen: set[Symbol] = set()
    for raw in (*iter_curve_data(G, catalog), *iter_surface_data(G, catalog), *iter_jac_data(G, catalog)):
        seen.add(canonicalize(raw, G, catalog))
    return tuple(sorted(seen, key=Symbol.key))


def _group_display(G: FiniteGroup, sub: Subgroup) -> str:
    if sub.is_abelian():
        return shape_name(abelian_structure(sub).invariant_factors)
    return f"ord{sub.order}"


def text_form(sym: Symbol, G: FiniteGroup) -> str:
    """Stable text rendering used in reports and golden files."""
    H = Subgroup(G, sym.h)
    Y = y_subgroup(G, sym)
    h_part = f"H={_group_display(G, H)}{{{','.join(map(str, sym.h))}}}"
    y_part = f"Y={_group_display(Y.ambient, Y)}{{{','.join(map(str, sym.y))}}}"
    parts = [h_part, y_part, f"act={sym.action}"]
    if sym.weights:
        parts.append("w=" + ",".join("(" + ",".join(map(str, w)) + ")" for w in sym.weights))
    return f"{sym.kind}[{';'.join(parts)}]"


class BurnsideClass:
    """A finitely supported integer combination of canonical symbols."""

    __slots__ = ("_terms",)

    def __init__(self, terms: dict[Symbol, int] | None = None):
        self._terms = {s: c for s, c in (terms or {}).items() if c != 0}

    @classmethod
    def zero(cls) -> "BurnsideClass":
        return cls()

    @classmethod
    def of(cls, sym: Symbol, coeff: int = 1) -> "BurnsideClass":
        return cls({sym: coeff})

    def terms(self) -> list[tuple[Symbol, int]]:
        return sorted(self._terms.items(), key=lambda t: t[0].key())

    def coefficient(self, sym: Symbol) -> int:
        return self._terms.get(sym, 0)

    def support(self) -> tuple[Symbol, ...]:
        return tuple(s for s, _ in self.terms())

    def is_zero(self) -> bool:
        return not self._terms

    def __add__(self, other: "BurnsideClass") -> "BurnsideClass":
        out = dict(self._terms)
        for s, c in other._terms.items():
            out[s] = out.get(s, 0) + c
        return BurnsideClass(out)

    def __neg__(self) -> "BurnsideClass":
        return BurnsideClass({s: -c for s, c in self._terms.items()})

    def __sub__(self, other: "BurnsideClass") -> "BurnsideClass":
        return self + (-other)

    def scale(self, k: int) -> "BurnsideClass":
        return BurnsideClass({s: k * c for s, c in self._terms.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, BurnsideClass) and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(tuple(sorted(((s, c) for s, c in self._terms.items()), key=lambda t: t[0].key())))

    def to_vector(self, index: dict[Symbol, int], length: int) -> tuple[int, ...]:
        vec = [0] * length
        for s, c in self._terms.items():
            pos = index.get(s)
            if pos is None:
                raise ValidationError(f"symbol outside index: {s}")
            vec[pos] = c
        return tuple(vec)

    def __repr__(self) -> str:
        if self.is_zero():
            return "BurnsideClass(0)"
        body = " + ".join(f"{c}*{s.kind}[{s.action}]" for s, c in self.terms())
        return f"BurnsideClass({body})"
