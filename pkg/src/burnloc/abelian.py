"""Invariant-factor coordinates on abelian subgroups and their character groups.

An AbelianStructure fixes, once per subgroup, a decomposition H = C_{d1} x ... x C_{dk}
with d1 | d2 | ... | dk and an explicit coordinate bijection.  Characters live in
those coordinates, so all character arithmetic is componentwise modular; rational
numbers appear only when a character is evaluated in Q/Z.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import gcd, lcm

from .errors import ValidationError
from .groups import Subgroup, subgroups_within


def normalize_factors(factors) -> tuple[int, ...]:
    """Canonical invariant-factor form (ascending divisibility, no 1s) of a cyclic-factor list."""
    primary: dict[int, list[int]] = {}
    for d in factors:
        d = int(d)
        if d < 1:
            raise ValidationError(f"cyclic factor must be positive, got {d}")
        p = 2
        while p * p <= d:
            if d % p == 0:
                e = 0
                while d % p == 0:
                    d //= p
                    e += 1
                primary.setdefault(p, []).append(e)
            p += 1
        if d > 1:
            primary.setdefault(d, []).append(1)
    for exps in primary.values():
        exps.sort(reverse=True)
    out: list[int] = []
    i = 0
    while any(i < len(e) for e in primary.values()):
        d = 1
        for p, exps in primary.items():
            if i < len(exps):
                d *= p ** exps[i]
        out.append(d)
        i += 1
    return tuple(reversed(out))


class AbelianStructure:
    """Invariant factors plus an explicit coordinate map for an abelian subgroup."""

    __slots__ = ("subgroup", "invariant_factors", "basis", "coords", "element_of")

    def __init__(self, H: Subgroup):
        if not H.is_abelian():
            raise ValidationError("abelian structure requires an abelian subgroup")
        G = H.ambient
        factors: list[int] = []
        basis: list[int] = []
        remaining = tuple(H.elements)
        # peel off a maximal-order cyclic direct factor until the group is exhausted
        while len(remaining) > 1:
            m, h = max((G.element_order(a), -a) for a in remaining)
            h = -h  # minimal element among those of maximal order
            cyc = frozenset(G.power(h, k) for k in range(m))
            target = len(remaining) // m
            complement = None
            for cand in subgroups_within(G, remaining):
                if len(cand) == target and len(frozenset(cand) & cyc) == 1:
                    complement = cand
                    break
            if complement is None:
                raise ValidationError("failed to split abelian subgroup (not a group?)")
            factors.append(m)
            basis.append(h)
            remaining = complement
        factors.reverse()
        basis.reverse()
        coords: dict[int, tuple[int, ...]] = {}
        for tup in product(*(range(d) for d in factors)) if factors else [()]:
            x = 0
            for a, h in zip(tup, basis):
                x = G.mul[x][G.power(h, a)]
            if x in coords:
                raise ValidationError("coordinate map is not a bijection")
            coords[x] = tup
        if len(coords) != H.order:
            raise ValidationError("coordinate map does not cover the subgroup")
        self.subgroup = H
        self.invariant_factors = tuple(factors)
        self.basis = tuple(basis)
        self.coords = coords
        self.element_of = {t: x for x, t in coords.items()}

    @property
    def order(self) -> int:
        return self.subgroup.order

    def __eq__(self, other) -> bool:
        return isinstance(other, AbelianStructure) and self.subgroup == other.subgroup

    def __hash__(self) -> int:
        return hash(self.subgroup)

    def __repr__(self) -> str:
        return f"AbelianStructure{self.invariant_factors}"


@lru_cache(maxsize=None)
def abelian_structure(H: Subgroup) -> AbelianStructure:
    return AbelianStructure(H)


def shape_name(factors: tuple[int, ...]) -> str:
    return "x".join(f"C{d}" for d in factors) if factors else "1"


@dataclass(frozen=True)
class Character:
    """A character of an abelian subgroup, as coordinates against its structure."""

    structure: AbelianStructure
    coords: tuple[int, ...]

    def __post_init__(self):
        ds = self.structure.invariant_factors
        if len(self.coords) != len(ds):
            raise ValidationError("character coordinates do not match the structure")
        object.__setattr__(self, "coords", tuple(c % d for c, d in zip(self.coords, ds)))

    def is_trivial(self) -> bool:
        return all(c == 0 for c in self.coords)

    def evaluate(self, element: int) -> Fraction:
        """Value in Q/Z, represented in [0, 1)."""
        a = self.structure.coords.get(element)
        if a is None:
            raise ValidationError(f"element {element} is not in the character's host subgroup")
        total = sum(Fraction(c * x, d) for c, x, d in zip(self.coords, a, self.structure.invariant_factors))
        return total - (total.numerator // total.denominator)

    def order(self) -> int:
        return lcm(*(d // gcd(c, d) for c, d in zip(self.coords, self.structure.invariant_factors))) if self.coords else 1

    def __add__(self, other: "Character") -> "Character":
        _same_host(self, other)
        return Character(self.structure, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Character":
        return Character(self.structure, tuple(-c for c in self.coords))

    def __sub__(self, other: "Character") -> "Character":
        return self + (-other)


def _same_host(a: Character, b: Character) -> None:
    if a.structure != b.structure:
        raise ValidationError("characters live on different host subgroups")


def trivial_character(struct: AbelianStructure) -> Character:
    return Character(struct, tuple(0 for _ in struct.invariant_factors))


def all_characters(struct: AbelianStructure):
    """All characters of the host, in lexicographic coordinate order."""
    for tup in product(*(range(d) for d in struct.invariant_factors)) if struct.invariant_factors else [()]:
        yield Character(struct, tup)


def character_kernel(b: Character) -> Subgroup:
    """Kernel of b, as a subgroup of the ambient group contained in the host."""
    H = b.structure.subgroup
    elems = tuple(x for x in H.elements if b.evaluate(x) == 0)
    return Subgroup(H.ambient, elems)


def character_span(*chars: Character) -> frozenset[Character]:
    """The subgroup of the dual generated by the given characters."""
    if not chars:
        raise ValidationError("character_span needs at least one character")
    struct = chars[0].structure
    for b in chars[1:]:
        _same_host(chars[0], b)
    seen = {trivial_character(struct)}
    frontier = [trivial_character(struct)]
    while frontier:
        nxt = []
        for b in frontier:
            for g in chars:
                c = b + g
                if c not in seen:
                    seen.add(c)
                    nxt.append(c)
        frontier = nxt
    return frozenset(seen)


def dual_generated_check(*chars: Character) -> bool:
    """Do the given characters generate the full dual group?"""
    return len(character_span(*chars)) == chars[0].structure.order


def _character_from_values(struct: AbelianStructure, value_at) -> Character:
    # reconstruct coordinates from values on the basis; denominators must fit
    coords = []
    for h, d in zip(struct.basis, struct.invariant_factors):
        v = value_at(h) * d
        if v.denominator != 1:
            raise ValidationError("values do not define a character in these coordinates")
        coords.append(int(v) % d)
    return Character(struct, tuple(coords))


def restrict_character(b: Character, K: Subgroup) -> Character:
    """Restriction of b to a subgroup K of its host."""
    host = b.structure.subgroup
    if not set(K.elements) <= set(host.elements):
        raise ValidationError("restriction target is not contained in the host subgroup")
    return _character_from_values(abelian_structure(K), b.evaluate)


def transport_character(g: int, b: Character) -> Character:
    """The character on gHg^-1 obtained by precomposing b with conjugation by g^-1."""
    H = b.structure.subgroup
    G = H.ambient
    H2 = H.conjugate(g)
    ginv = G.inv(g)
    return _character_from_values(abelian_structure(H2), lambda x: b.evaluate(G.conj(ginv, x)))
