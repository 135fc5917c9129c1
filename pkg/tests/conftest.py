import pytest

from burnloc.catalog import catalog_from_json, ensure_valid_catalog
from burnloc.fixtures import fixture_catalog
from burnloc.groups import build_group


@pytest.fixture(scope="session")
def z2():
    return build_group({"kind": "cyclic", "n": 2})


@pytest.fixture(scope="session")
def z3():
    return build_group({"kind": "cyclic", "n": 3})


@pytest.fixture(scope="session")
def z4():
    return build_group({"kind": "cyclic", "n": 4})


@pytest.fixture(scope="session")
def s3():
    # symmetric group on 3 points from transposition + 3-cycle
    return build_group({"kind": "perm", "degree": 3, "gens": [[1, 0, 2], [1, 2, 0]]})


@pytest.fixture(scope="session")
def d4():
    # dihedral group of order 8 as a permutation group on the square
    return build_group({"kind": "perm", "degree": 4, "gens": [[1, 2, 3, 0], [1, 0, 3, 2]]})


@pytest.fixture(scope="session")
def hyper_cat():
    return fixture_catalog("hyperelliptic-Z2")


@pytest.fixture(scope="session")
def nonhyp_cat():
    return fixture_catalog("nonhyperelliptic-Z2-exotic")


@pytest.fixture(scope="session")
def elliptic_cat():
    return fixture_catalog("elliptic-Z2")


@pytest.fixture(scope="session")
def z3_cat():
    return fixture_catalog("Z3-basic")


Z4_COMPOSITE = {
    "name": "Z4-composite",
    "curve": {"id": "C-z4", "genus": 2, "hyperelliptic": True},
    "labels": [
        {"id": "triv-C", "space": "curve", "group_shape": [], "faithful": True, "trivial": True},
        {"id": "triv-CxP1", "space": "ruled_surface", "group_shape": [], "faithful": True, "trivial": True},
        {"id": "halfturn-CxP1", "space": "ruled_surface", "group_shape": [2], "faithful": True, "trivial": False},
        {"id": "triv-J", "space": "jacobian", "group_shape": [], "faithful": True, "trivial": True,
         "from_curve": True, "underlying_curve_action": "triv-C"},
    ],
    "rules": {
        "induce": [
            {"h": [4], "curve_label": "triv-C", "weights": "equal", "target": "triv-CxP1"},
            {"h": [4], "curve_label": "triv-C", "weights": {"diff_order": 2}, "target": "halfturn-CxP1"},
            {"h": [2], "curve_label": "triv-C", "weights": "equal", "target": "triv-CxP1"},
        ],
        "jacobian_of_curve": [{"source": "triv-C", "target": "triv-J"}],
        "genus_one_extension": [],
    },
}


@pytest.fixture(scope="session")
def z4_cat():
    # composite cyclic stabilizer: exercises Theta1 + Theta2 together
    return ensure_valid_catalog(catalog_from_json(Z4_COMPOSITE, name="Z4-composite"))
