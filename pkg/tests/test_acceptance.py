"""Exit criteria. A per-criterion PASS/FAIL line is printed in the terminal summary."""
import json
import random
import time
from itertools import combinations

import pytest

from conftest import CORPUS, graph, lattice
from igt.catalog import DEFAULT_NEGATIVE_CORPUS, MODULAR_27, classify, theorem_instances
from igt.cli import main
from igt.forbidden import find_clique, find_complete_bipartite, is_k33_free, validate_witness
from igt.group import build, is_abelian, is_solvable, order_profile
from igt.igraph import IntersectionGraph, build_intersection_graph
from igt.lattice import (
    check_minimal_normal_elementary, enumerate_subgroups, product_formula_check,
    sylow_congruence_check,
)
from igt.numtheory import find_beta, find_beta_of_order, prime_factors


def fresh_graph(spec):
    return build_intersection_graph(enumerate_subgroups(build(spec)))


@pytest.mark.acceptance(1, "Z24: 6 vertices, K5 not K6, order-3 vertex of degree 2, K3,3-free")
def test_criterion_1():
    start = time.perf_counter()
    g = fresh_graph("C(24)")
    assert len(g) == 6
    assert find_clique(g, 5) is not None
    assert find_clique(g, 6) is None
    (three,) = [v for v, o in zip(g.vertices, g.vertex_order) if o == 3]
    assert g.degree(three) == 2
    assert is_k33_free(g)
    assert time.perf_counter() - start < 1


@pytest.mark.acceptance(2, "Z36 contains K3,3 with a valid witness")
def test_criterion_2():
    start = time.perf_counter()
    g = fresh_graph("C(36)")
    w = find_complete_bipartite(g, 3, 3)
    assert w is not None and validate_witness(g, w)
    assert time.perf_counter() - start < 1


@pytest.mark.acceptance(3, "(Z2)^3: the 7 maximal subgroups form K7; contains K3,3")
def test_criterion_3():
    start = time.perf_counter()
    L = enumerate_subgroups(build("C(2)*C(2)*C(2)"))
    g = build_intersection_graph(L)
    maxes = [s.id for s in L.maximal()]
    assert len(maxes) == 7
    assert all(g.has_edge(a, b) for a, b in combinations(maxes, 2))
    assert find_clique(g, 8) is None
    w = find_complete_bipartite(g, 3, 3)
    assert w is not None and validate_witness(g, w)
    assert time.perf_counter() - start < 1


@pytest.mark.acceptance(4, "Q16 = Dic(4): 9 vertices, K9")
def test_criterion_4():
    start = time.perf_counter()
    g = fresh_graph("Dic(4)")
    assert len(g) == 9
    assert g.edge_count == 36
    assert find_clique(g, 9).side_a == tuple(g.vertices)
    assert time.perf_counter() - start < 1


@pytest.mark.acceptance(5, "Z9 x Z3: 8 vertices, K5 present, K3,3-free")
def test_criterion_5():
    start = time.perf_counter()
    g = fresh_graph("C(9)*C(3)")
    assert len(g) == 8
    assert find_clique(g, 5) is not None
    assert is_k33_free(g)
    assert time.perf_counter() - start < 1


@pytest.mark.acceptance(6, "D8, Q8, (Z3 x Z3) x| Z3, Z9 x| Z3 are K3,3-free")
def test_criterion_6():
    start = time.perf_counter()
    beta = find_beta_of_order(3, 3)
    heis = f"SDE(3,3,{beta})"
    groups = {s: build(s) for s in ["D(8)", "Dic(2)", heis, MODULAR_27]}
    # the two non-abelian groups of order 27, told apart by exponent
    assert order_profile(groups[heis]) == {1: 1, 3: 26}
    assert order_profile(groups[MODULAR_27]) == {1: 1, 3: 8, 9: 18}
    assert not is_abelian(groups[heis]) and not is_abelian(groups[MODULAR_27])
    for spec, G in groups.items():
        assert is_k33_free(build_intersection_graph(enumerate_subgroups(G))), spec
    assert time.perf_counter() - start < 5


@pytest.mark.acceptance(7, "igt verify --max-order 100 passes in < 60 s")
def test_criterion_7(tmp_path, capsys):
    start = time.perf_counter()
    path = tmp_path / "report.json"
    assert main(["verify", "--max-order", "100", "--report", str(path)]) == 0
    elapsed = time.perf_counter() - start
    assert capsys.readouterr().out.rstrip().splitlines()[-1].startswith("PASS")
    entries = {e["spec_text"]: e for e in json.loads(path.read_text())["entries"]}
    for spec in ["SDC(3,4,2)", "D(18)", "SDE(2,3,1)", "SDC(7,6,3)"]:
        assert entries[spec]["ok"] and entries[spec]["actual"] == "K33Free"
    for entry in DEFAULT_NEGATIVE_CORPUS:
        assert entries[entry.spec_text]["ok"] and entries[entry.spec_text]["actual"] == "ContainsK33"
    assert {i.item for i in theorem_instances(100) if i.spec_text == "SDC(7,6,3)"} == {6}
    g = fresh_graph("SDC(3,4,2)")
    (three,) = [v for v, o in zip(g.vertices, g.vertex_order) if o == 3]
    assert len(g) == 6 and g.degree(three) == 1
    assert elapsed < 60


@pytest.mark.acceptance(8, "SDC(17,8,2): 54 vertices, K3,3-free; SDE(17,9,beta) K3,3-free")
def test_criterion_8():
    start = time.perf_counter()
    c = classify("SDC(17,8,2)")
    assert c.verdict == "K33Free"
    assert c.vertices == 54
    # 17 Sylow 2-towers (orders 2, 4, 8) plus the normal Z17 and its two extensions
    assert c.counts_by_order == {1: 1, 2: 17, 4: 17, 8: 17, 17: 1, 34: 1, 68: 1, 136: 1}
    beta = find_beta(17, 9)
    c = classify(f"SDE(17,9,{beta})")
    assert c.order == 2601 and c.verdict == "K33Free"
    assert time.perf_counter() - start < 600


def lattice_corpus():
    specs = dict.fromkeys(CORPUS)
    specs.update(dict.fromkeys(i.spec_text for i in theorem_instances(100)))
    specs.update(dict.fromkeys(e.spec_text for e in DEFAULT_NEGATIVE_CORPUS))
    return list(specs)


@pytest.mark.acceptance(9, "product formula, Sylow counts 1 mod p, minimal normal elementary abelian")
def test_criterion_9():
    violations = []
    for spec in lattice_corpus():
        L = lattice(spec)
        G = L.group
        subs = list(L)
        for i, x in enumerate(subs):
            for y in subs[i:]:
                if not product_formula_check(G, x, y):
                    violations.append((spec, "product", x.id, y.id))
        for p, e in prime_factors(G.order).items():
            for k in range(1, e + 1):
                if not sylow_congruence_check(L, p, k):
                    violations.append((spec, "sylow", p, k))
        if is_solvable(G):
            violations += [(spec, "minimal normal", s.id) for s in check_minimal_normal_elementary(L)]
    assert violations == []


def naive_k33(n, edges):
    adj = {frozenset(e) for e in edges}
    for a in combinations(range(n), 3):
        common = [v for v in range(n) if all(frozenset((u, v)) in adj for u in a)]
        if len(common) >= 3:
            return a, tuple(common[:3])
    return None


def naive_clique(n, edges, k):
    adj = {frozenset(e) for e in edges}
    for c in combinations(range(n), k):
        if all(frozenset(p) in adj for p in combinations(c, 2)):
            return c
    return None


@pytest.mark.acceptance(10, "K3,3 and K<=6 searches agree with subset enumeration on 200 random + corpus graphs")
def test_criterion_10():
    start = time.perf_counter()
    rng = random.Random(10)
    cases = []
    for _ in range(200):
        n = rng.randint(1, 12)
        p = rng.choice([0.25, 0.5, 0.75, 0.9])
        cases.append((n, [(i, j) for i, j in combinations(range(n), 2) if rng.random() < p]))
    for spec in lattice_corpus():
        g = graph(spec)
        if len(g) <= 12:
            cases.append((len(g), [(g.position(u), g.position(v)) for u, v in g.edges()]))
    disagreements = 0
    for n, edges in cases:
        g = IntersectionGraph.from_edges(n, edges)
        w = find_complete_bipartite(g, 3, 3)
        if (None if w is None else (w.side_a, w.side_b)) != naive_k33(n, edges):
            disagreements += 1
        for k in range(1, 7):
            c = find_clique(g, k)
            if (None if c is None else c.side_a) != naive_clique(n, edges, k):
                disagreements += 1
    assert disagreements == 0
    assert time.perf_counter() - start < 30
