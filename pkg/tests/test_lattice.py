from itertools import combinations

import numpy as np
import pytest

from conftest import CORPUS, group, lattice
from igt.errors import ResourceLimitError
from igt.group import build, closure, is_solvable
from igt.lattice import (
    check_minimal_normal_elementary, enumerate_subgroups, frattini, is_elementary_abelian,
    lattice_to_dict, minimal_normal_subgroups, normalizer, product_formula_check,
    sylow_congruence_check,
)
from igt.numtheory import prime_factors

SMALL = [s for s in CORPUS if group(s).order <= 12] + [
    "D(10)", "D(12)", "C(8)", "C(11)", "Perm(4;(1 2 3),(2 3 4))", "C(2)*C(6)",
]


def brute_subgroups(G):
    """Every subset containing the identity that is closed under multiplication."""
    n = G.order
    mul = G.mul
    out = set()
    for r in range(n):
        for rest in combinations(range(1, n), r):
            s = (0,) + rest
            ss = set(s)
            if all(int(mul[a, b]) in ss for a in s for b in s):
                out.add(s)
    return out


@pytest.mark.parametrize("spec", SMALL)
def test_matches_subset_oracle(spec):
    G = build(spec)
    L = enumerate_subgroups(G)
    assert {s.members for s in L} == brute_subgroups(G)


@pytest.mark.parametrize("spec, count", [
    ("C(1)", 1), ("C(24)", 8), ("C(36)", 9), ("C(128)", 8), ("D(8)", 10), ("Dic(2)", 6),
    ("Dic(4)", 11), ("D(18)", 16), ("D(50)", 34), ("C(2)*C(2)*C(2)", 16), ("C(3)*C(3)", 6),
    ("C(9)*C(3)", 10), ("Perm(4;(1 2),(1 2 3 4))", 30), ("Perm(5;(1 2 3),(1 2 3 4 5))", 59),
    ("SDE(2,3,1)", 10),
])
def test_known_subgroup_counts(spec, count):
    assert len(lattice(spec)) == count


SOLVABLE_MID = [s for s in CORPUS if is_solvable(group(s)) and 1 < group(s).order <= 150]


@pytest.mark.parametrize("spec", SOLVABLE_MID)
def test_join_and_extension_agree(spec):
    G = group(spec)
    a = enumerate_subgroups(G, method="join")
    b = enumerate_subgroups(G, method="extension")
    assert [s.members for s in a] == [s.members for s in b]


def test_extension_refuses_non_solvable():
    with pytest.raises(ValueError):
        enumerate_subgroups(group("Perm(5;(1 2 3),(1 2 3 4 5))"), method="extension")


def test_subgroup_bound():
    with pytest.raises(ResourceLimitError):
        enumerate_subgroups(group("Perm(4;(1 2),(1 2 3 4))"), subgroup_bound=10)


@pytest.mark.parametrize("spec", CORPUS)
def test_every_subgroup_is_closed(spec):
    G = group(spec)
    for s in lattice(spec):
        assert closure(G, s.members) == frozenset(s.members)
        assert G.order % s.order == 0


def conjugacy_classes(G):
    seen, classes = set(), []
    for x in range(G.order):
        if x in seen:
            continue
        cls = {int(G.mul[G.mul[g, x], G.inv[g]]) for g in range(G.order)}
        seen |= cls
        classes.append(cls)
    return classes


@pytest.mark.parametrize("spec", [s for s in CORPUS if group(s).order <= 200])
def test_normal_iff_union_of_classes(spec):
    G = group(spec)
    classes = conjugacy_classes(G)
    for s in lattice(spec):
        members = set(s.members)
        union = all(c <= members or not (c & members) for c in classes)
        assert s.is_normal is union


@pytest.mark.parametrize("spec", [s for s in CORPUS if group(s).order <= 200])
def test_maximal_flags(spec):
    L = lattice(spec)
    subs = list(L)
    for h in subs:
        strictly_between = [k for k in subs if h.bits & ~k.bits == 0 and k is not h and k is not L.whole]
        assert h.is_maximal is (h is not L.whole and not strictly_between)


def test_frattini_examples():
    # Z9 x Z3: the subgroup generated by (3, 0); direct products index left-major
    phi = frattini(lattice("C(9)*C(3)"))
    assert phi.members == (0, 9, 18)
    assert frattini(lattice("C(2)*C(2)*C(2)")).order == 1
    assert frattini(lattice("Dic(2)")).order == 2
    assert frattini(lattice("C(1)")).order == 1


@pytest.mark.parametrize("spec", [s for s in CORPUS if group(s).order <= 200])
def test_frattini_normal_and_in_every_maximal(spec):
    L = lattice(spec)
    phi = frattini(L)
    assert phi.is_normal
    for m in L.maximal():
        assert phi.issubset(m)


def brute_normalizer(G, members):
    ms = set(members)
    return tuple(g for g in range(G.order)
                 if {int(G.mul[G.mul[g, h], G.inv[g]]) for h in members} == ms)


@pytest.mark.parametrize("spec", ["Perm(4;(1 2),(1 2 3 4))", "D(18)", "SDE(2,3,1)", "Dic(3)"])
def test_normalizer_matches_oracle(spec):
    G, L = group(spec), lattice(spec)
    for s in L:
        n = normalizer(G, s, L)
        assert n.members == brute_normalizer(G, s.members)
        assert s.issubset(n)


def test_normalizer_examples_s4():
    G, L = group("Perm(4;(1 2),(1 2 3 4))"), lattice("Perm(4;(1 2),(1 2 3 4))")
    assert {normalizer(G, s, L).order for s in L.of_order(3)} == {6}
    assert {normalizer(G, s, L).order for s in L.of_order(8)} == {8}


@pytest.mark.parametrize("spec", CORPUS)
def test_sylow_congruence(spec):
    L = lattice(spec)
    for p, e in prime_factors(L.group.order).items():
        for k in range(1, e + 1):
            assert sylow_congruence_check(L, p, k), (p, k)


@pytest.mark.parametrize("spec", CORPUS)
def test_product_formula_all_pairs(spec):
    G, L = group(spec), lattice(spec)
    subs = list(L)
    bad = [(x.id, y.id) for i, x in enumerate(subs) for y in subs[i:] if not product_formula_check(G, x, y)]
    assert bad == []


@pytest.mark.parametrize("spec, orders", [
    ("SDE(2,3,1)", [4]), ("C(12)", [2, 3]), ("Perm(4;(1 2),(1 2 3 4))", [4]),
    ("D(18)", [3]), ("Dic(2)", [2]), ("Perm(5;(1 2 3),(1 2 3 4 5))", [60]),
])
def test_minimal_normal_examples(spec, orders):
    assert sorted(s.order for s in minimal_normal_subgroups(lattice(spec))) == orders


@pytest.mark.parametrize("spec", CORPUS)
def test_minimal_normal_elementary_in_solvable(spec):
    assert check_minimal_normal_elementary(lattice(spec)) == []


def test_elementary_abelian_examples():
    G, L = group("C(2)*C(2)*C(2)"), lattice("C(2)*C(2)*C(2)")
    assert all(is_elementary_abelian(G, s) for s in L if s.order > 1)
    G, L = group("C(4)*C(2)"), lattice("C(4)*C(2)")
    assert not is_elementary_abelian(G, L.whole)


def test_lattice_dict_shape():
    d = lattice_to_dict(lattice("C(6)"))
    assert d["order"] == 6
    assert d["counts_by_order"] == {"1": 1, "2": 1, "3": 1, "6": 1}
    assert len(d["subgroups"]) == 4


def test_ids_are_sorted_by_order_then_members():
    L = lattice("Perm(4;(1 2),(1 2 3 4))")
    keys = [(s.order, s.members) for s in L]
    assert keys == sorted(keys)
    assert [s.id for s in L] == list(range(len(L)))
