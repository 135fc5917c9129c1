from itertools import combinations

import pytest

from burnloc.errors import ValidationError
from burnloc.groups import (
    Subgroup,
    abelian_subgroups_up_to_conjugacy,
    build_group,
    centralizer,
    conjugate_subgroup,
    full_subgroup,
    normalizer,
    quotient,
    subgroups_up_to_conjugacy,
    trivial_subgroup,
)


def test_cyclic_two_is_addition_mod_two(z2):
    assert z2.order == 2
    assert z2.mul == ((0, 1), (1, 0))
    assert z2.is_abelian()


def test_cyclic_three(z3):
    assert z3.order == 3
    assert all(z3.mul[a][b] == (a + b) % 3 for a in range(3) for b in range(3))


def brute_force_perm_closure(degree, gens):
    # oracle: scan all permutations, keep the sub-monoid generated by the gens
    gens = [tuple(g) for g in gens]
    elems = {tuple(range(degree))}
    grew = True
    while grew:
        grew = False
        for p in list(elems):
            for g in gens:
                q = tuple(p[g[i]] for i in range(degree))
                if q not in elems:
                    elems.add(q)
                    grew = True
    return elems


def test_permutation_generators_give_order_six(s3):
    oracle = brute_force_perm_closure(3, [[1, 0, 2], [1, 2, 0]])
    assert len(oracle) == 6
    assert s3.order == 6
    assert not s3.is_abelian()


def test_non_associative_table_rejected():
    # constant-row table: 0*(1*1)=0 but fails inverse/identity checks first;
    # use a latin square that is not associative instead
    table = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ]
    with pytest.raises(ValidationError, match="associative"):
        build_group({"kind": "table", "mul": table})


def test_identity_must_be_element_zero():
    # C2 written with the identity in slot 1
    with pytest.raises(ValidationError, match="identity"):
        build_group({"kind": "table", "mul": [[1, 0], [0, 1]]})


def test_order_bound_enforced():
    with pytest.raises(ValidationError, match="exceeds bound"):
        build_group({"kind": "cyclic", "n": 65})
    assert build_group({"kind": "cyclic", "n": 65}, bound=128).order == 65


def test_order_bound_env_override(monkeypatch):
    monkeypatch.setenv("BURNLOC_ORDER_BOUND", "4")
    with pytest.raises(ValidationError, match="exceeds bound 4"):
        build_group({"kind": "cyclic", "n": 8})
    monkeypatch.setenv("BURNLOC_ORDER_BOUND", "not-a-number")
    with pytest.raises(ValidationError, match="must be an integer"):
        build_group({"kind": "cyclic", "n": 2})


def test_abelian_kind():
    G = build_group({"kind": "abelian", "factors": [2, 4]})
    assert G.order == 8
    assert G.is_abelian()


def subgroup_oracle(G):
    # oracle: closures of all generating sets of size <= 3 (enough for order <= 24)
    seen = set()
    elems = list(G.elements())
    for k in (1, 2, 3):
        for gens in combinations(elems, k):
            seen.add(Subgroup.generated(G, gens).elements)
    seen.add((0,))
    return {s for s in seen if Subgroup(G, s).is_abelian()}


@pytest.mark.parametrize("spec", [
    {"kind": "cyclic", "n": 2},
    {"kind": "cyclic", "n": 3},
    {"kind": "cyclic", "n": 12},
    {"kind": "abelian", "factors": [2, 4]},
    {"kind": "perm", "degree": 3, "gens": [[1, 0, 2], [1, 2, 0]]},
    {"kind": "perm", "degree": 4, "gens": [[1, 2, 3, 0], [1, 0, 3, 2]]},          # D4
    {"kind": "perm", "degree": 4, "gens": [[1, 2, 0, 3], [0, 2, 3, 1]]},          # A4
])
def test_every_abelian_subgroup_has_exactly_one_representative(spec):
    G = build_group(spec)
    reps = abelian_subgroups_up_to_conjugacy(G)
    rep_sets = [frozenset(r.elements) for r in reps]
    for elems in subgroup_oracle(G):
        orbit = {frozenset(G.conj(g, a) for a in elems) for g in G.elements()}
        hits = [r for r in rep_sets if r in orbit]
        assert len(hits) == 1
    # representatives are pairwise non-conjugate and minimal in their orbit
    for r in reps:
        orbit = {tuple(sorted(G.conj(g, a) for a in r.elements)) for g in G.elements()}
        assert r.elements == min(orbit)


def test_trivial_and_full_for_cyclic_groups(z2, z3):
    for G in (z2, z3):
        reps = abelian_subgroups_up_to_conjugacy(G)
        assert [r.elements for r in reps] == [(0,), tuple(G.elements())]


def test_s3_abelian_subgroup_classes(s3):
    reps = abelian_subgroups_up_to_conjugacy(s3)
    assert [r.order for r in reps] == [1, 2, 3]


def test_returned_subgroups_are_closed(s3, d4):
    for G in (s3, d4):
        for H in subgroups_up_to_conjugacy(G):
            members = set(H.elements)
            assert 0 in members
            for a in members:
                assert G.inv(a) in members
                for b in members:
                    assert G.mul[a][b] in members


def test_centralizer_of_full_abelian_group(z2):
    assert centralizer(z2, full_subgroup(z2)).elements == (0, 1)


def test_normalizer_of_c3_in_s3_is_everything(s3):
    c3 = next(H for H in abelian_subgroups_up_to_conjugacy(s3) if H.order == 3)
    assert normalizer(s3, c3).is_full()
    # while the centralizer of a transposition is just itself
    c2 = next(H for H in abelian_subgroups_up_to_conjugacy(s3) if H.order == 2)
    assert centralizer(s3, c2).order == 2


def test_quotient_c4_by_c2(z4):
    h = Subgroup(z4, (0, 2))
    Q = quotient(full_subgroup(z4), h)
    assert Q.group.order == 2
    assert Q.group.mul == ((0, 1), (1, 0))
    assert Q.coset_of[0] == 0 and Q.coset_of[2] == 0
    assert Q.coset_of[1] == 1 and Q.coset_of[3] == 1
    assert Q.reps == (0, 1)


def test_quotient_requires_normality(s3):
    c2 = next(H for H in abelian_subgroups_up_to_conjugacy(s3) if H.order == 2)
    with pytest.raises(ValidationError, match="normal"):
        quotient(full_subgroup(s3), c2)


def test_conjugation_by_identity_and_central(z4, s3):
    h = Subgroup(z4, (0, 2))
    assert conjugate_subgroup(0, h).elements == h.elements
    for g in z4.elements():
        assert conjugate_subgroup(g, h).elements == h.elements  # central in abelian G
    c2 = next(H for H in abelian_subgroups_up_to_conjugacy(s3) if H.order == 2)
    threecycle = next(g for g in s3.elements() if s3.element_order(g) == 3)
    moved = conjugate_subgroup(threecycle, c2)
    assert moved.order == 2 and moved.elements != c2.elements


def test_subgroup_validation_rejects_junk(z4):
    with pytest.raises(ValidationError, match="identity"):
        Subgroup(z4, (1, 3))
    with pytest.raises(ValidationError, match="closed"):
        Subgroup(z4, (0, 1))


def test_valid_table_group():
    G = build_group({"kind": "table", "mul": [[0, 1], [1, 0]], "name": "C2"})
    assert G.order == 2 and G.is_abelian()


def test_perm_degree_capped_at_twelve():
    with pytest.raises(ValidationError, match="between 1 and 12"):
        build_group({"kind": "perm", "degree": 13, "gens": [list(range(1, 13)) + [0]]})
