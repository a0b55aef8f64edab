import math
import random

import pytest

from helpers import NaiveTree, naive_frontier, naive_interest, naive_min_two_respect, rand_instance
from twocut.generators import random_graph
from twocut.graph import Graph, StructureError
from twocut.oracle import build_cut_oracle
from twocut.pipeline import extract_partition
from twocut.tree import binarize, centroid_decompose, heavy_path_decompose, root_tree
from twocut.tworespect import (
    CutCandidate,
    InterestingPair,
    SolveStats,
    build_interesting_pairs,
    compute_interest_frontiers,
    cross_path_min,
    pair_blocks,
    same_path_min,
    solve_tree,
    two_respect_min,
)

# frozen budget constants (calibrated on random graphs up to n = 2000)
FRONTIER_C = 2
PAIR_LIST_C = 2
SMAWK_C = 4
SAME_PATH_C = 4


def setup(g, tree, backend="merge"):
    t = root_tree(g, tree, 0)
    o = build_cut_oracle(g, t, backend=backend)
    hpd = heavy_path_decompose(t)
    cd = centroid_decompose(binarize(t))
    return t, o, hpd, cd


def naive_pairs(nt, t, hpd):
    """Interesting path pairs straight from the interest definitions."""
    reach = {}
    for e in nt.tree_edges:
        u = nt.lower[e]
        cross, down = naive_interest(nt, e)
        interested = set(cross) | set(down) | {t.parent_edge[a] for a in nt.ancestors(u)[1:] if a != nt.root}
        own = hpd.path_of[u][0]
        reach[u] = {hpd.path_of[nt.lower[f]][0] for f in interested} - {own}
    out = {}
    for u, targets in reach.items():
        p = hpd.path_of[u][0]
        for q in targets:
            out.setdefault((p, q), []).append(u)
    pairs = {}
    for (p, q), lst in out.items():
        if p < q and (q, p) in out:
            key = lambda v: hpd.path_of[v][1]
            pairs[(p, q)] = (sorted(lst, key=key), sorted(out[(q, p)], key=key))
    return pairs


def test_single_edge_path_has_no_same_path_pair():
    g = Graph(2, ((0, 1, 3),))
    t, o, hpd, _ = setup(g, [0])
    assert same_path_min(hpd.paths[0], o) is None


def test_p4_same_path():
    g = Graph(4, ((0, 1, 1), (1, 2, 1), (2, 3, 1)))
    t, o, hpd, _ = setup(g, [0, 1, 2])
    assert len(hpd.paths) == 1
    assert same_path_min(hpd.paths[0], o).value == 2


@pytest.mark.parametrize("seed", range(30))
def test_same_path_matches_naive(seed):
    rng = random.Random(seed)
    g, tree = rand_instance(rng, nmax=40, mmax=rng.choice([40, 200]), wmax=rng.choice([1, 100]))
    t, o, hpd, _ = setup(g, tree)
    nt = NaiveTree(g, tree)
    for path in hpd.paths:
        got = same_path_min(path, o)
        es = [t.parent_edge[v] for v in path]
        if len(es) < 2:
            assert got is None
            continue
        brute = min(nt.pair_value(es[i], es[j]) for i in range(len(es)) for j in range(i + 1, len(es)))
        assert got.value == brute
        assert nt.pair_value(*got.edges) == got.value


def test_rim_frontier():
    g = Graph(3, ((0, 1, 1), (0, 2, 1), (1, 2, 10)))
    t, o, hpd, cd = setup(g, [0, 1])
    fr = compute_interest_frontiers(o, cd)
    assert fr.cross[1] == 2 and fr.cross[2] == 1


def test_frontier_convention_without_interest():
    g = Graph(4, ((0, 1, 1), (1, 2, 1), (1, 3, 1)))
    t, o, hpd, cd = setup(g, [0, 1, 2])
    fr = compute_interest_frontiers(o, cd)
    assert fr.cross[2] == 1 and fr.cross[1] == 0
    assert fr.down[2] == 2
    assert fr.cross[0] == fr.down[0] == -1


@pytest.mark.parametrize("seed", range(40))
def test_frontiers_match_definitions(seed):
    rng = random.Random(seed)
    g, tree = rand_instance(rng, nmax=rng.choice([10, 40, 90]), mmax=rng.choice([20, 150, 400]),
                            wmax=rng.choice([1, 3, 100]))
    t, o, hpd, cd = setup(g, tree, backend="grid" if seed % 3 == 0 else "merge")
    nt = NaiveTree(g, tree)
    fr = compute_interest_frontiers(o, cd)
    for e in tree:
        u = nt.lower[e]
        assert (fr.cross[u], fr.down[u]) == naive_frontier(nt, e)


def test_no_mutual_interest_gives_no_pairs():
    g = Graph(5, tuple((0, i, 1) for i in range(1, 5)))
    t, o, hpd, cd = setup(g, [0, 1, 2, 3])
    assert build_interesting_pairs(compute_interest_frontiers(o, cd), hpd) == []


def test_two_stars_give_one_pair():
    # root 0; star centres 1 and 2 with leaves {3, 4} and {5, 6}; heavy rim 1-2 and 3-5
    edges = ((0, 1, 1), (0, 2, 1), (1, 3, 1), (1, 4, 1), (2, 5, 1), (2, 6, 1), (1, 2, 10), (3, 5, 10))
    g = Graph(7, edges)
    t, o, hpd, cd = setup(g, list(range(6)))
    pairs = build_interesting_pairs(compute_interest_frontiers(o, cd), hpd)
    assert len(pairs) == 1
    p = pairs[0]
    assert {hpd.paths[p.p][0], hpd.paths[p.q][0]} == {1, 2}
    nt = NaiveTree(g, list(range(6)))
    assert {(k, tuple(a), tuple(b)) for k, (a, b) in naive_pairs(nt, t, hpd).items()} == \
        {((p.p, p.q), tuple(p.p_edges), tuple(p.q_edges))}


@pytest.mark.parametrize("seed", range(30))
def test_pairs_match_definitions(seed):
    rng = random.Random(500 + seed)
    g, tree = rand_instance(rng, nmax=rng.choice([20, 60, 96]), mmax=rng.choice([60, 300]),
                            wmax=rng.choice([1, 100]))
    t, o, hpd, cd = setup(g, tree)
    nt = NaiveTree(g, tree)
    got = {(p.p, p.q): (p.p_edges, p.q_edges)
           for p in build_interesting_pairs(compute_interest_frontiers(o, cd), hpd)}
    assert got == naive_pairs(nt, t, hpd)


def test_singleton_pair_block():
    g = Graph(3, ((0, 1, 1), (0, 2, 1), (1, 2, 10)))
    t, o, hpd, cd = setup(g, [0, 1])
    pair = InterestingPair(hpd.path_of[1][0], hpd.path_of[2][0], [1], [2])
    best = cross_path_min([pair], o, hpd)
    assert best.value == o.cut_lower(1, 2) == 2


@pytest.mark.parametrize("seed", range(30))
def test_cross_path_matches_naive(seed):
    rng = random.Random(900 + seed)
    g, tree = rand_instance(rng, nmax=60, mmax=rng.choice([60, 250]), wmax=rng.choice([1, 100]))
    t, o, hpd, cd = setup(g, tree)
    nt = NaiveTree(g, tree)
    pairs = build_interesting_pairs(compute_interest_frontiers(o, cd), hpd)
    got = cross_path_min(pairs, o, hpd)
    vals = [nt.pair_value(t.parent_edge[a], t.parent_edge[b]) for p in pairs for a in p.p_edges for b in p.q_edges]
    assert (got.value if got else None) == (min(vals) if vals else None)


def inverse_minors_hold(rows):
    return all(rows[i][j] + rows[i + 1][j + 1] >= rows[i][j + 1] + rows[i + 1][j]
               for i in range(len(rows) - 1) for j in range(len(rows[0]) - 1))


@pytest.mark.parametrize("seed", range(15))
def test_pair_blocks_are_inverse_monge(seed):
    rng = random.Random(1300 + seed)
    g, tree = rand_instance(rng, nmax=80, mmax=300, wmax=rng.choice([1, 100]), nmin=20)
    t, o, hpd, cd = setup(g, tree)
    for pair in build_interesting_pairs(compute_interest_frontiers(o, cd), hpd):
        blocks = pair_blocks(pair, t, hpd)
        assert sorted(c for _, cols in blocks for c in cols) == sorted(
            pair.q_edges if set(blocks[0][0]) <= set(pair.p_edges) else pair.p_edges)
        for rows, cols in blocks:
            assert inverse_minors_hold([[o.cut_lower(r, c) for c in cols] for r in rows])


def test_c4_and_two_vertex_examples():
    c4 = Graph(4, ((0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1)))
    assert two_respect_min(c4, [0, 1, 2]).value == 2
    assert two_respect_min(c4, [0, 1, 2], backend="grid").value == 2
    g2 = Graph(2, ((0, 1, 7),))
    assert two_respect_min(g2, [0]) == CutCandidate((0,), 7)


def test_structural_errors():
    with pytest.raises(StructureError):
        two_respect_min(Graph(1, ()), [])
    g = Graph(4, ((0, 1, 1), (2, 3, 1), (1, 2, 1)))
    with pytest.raises(StructureError):
        two_respect_min(g, [0, 1])


def test_tie_break_prefers_fewer_edges_then_smaller_ids():
    g = Graph(3, ((0, 1, 1), (1, 2, 1), (0, 2, 1)))
    assert two_respect_min(g, [0, 1]) == CutCandidate((0,), 2)


@pytest.mark.parametrize("seed", range(60))
def test_two_respect_matches_exhaustive_enumeration(seed):
    rng = random.Random(2000 + seed)
    g, tree = rand_instance(rng, nmax=rng.choice([5, 12, 30]), mmax=rng.choice([10, 60, 150]),
                            wmax=rng.choice([1, 2, 100]))
    nt = NaiveTree(g, tree)
    for backend in ("merge", "grid"):
        got = two_respect_min(g, tree, backend=backend)
        assert got.value == naive_min_two_respect(nt)
        t = root_tree(g, tree, 0)
        assert g.boundary_weight(extract_partition(t, got)) == got.value


@pytest.mark.parametrize("n,mult", [(200, 2), (800, 5), (2000, 3)])
def test_counter_budgets(n, mult):
    g, tree = random_graph(n, n * mult, 100, seed=n, with_tree=True)
    s = solve_tree(g, tree).stats
    lg = math.log2(n)
    assert s.frontier_queries <= FRONTIER_C * n * lg * lg
    assert s.pair_list_total <= PAIR_LIST_C * n * lg
    assert s.smawk_evaluations <= SMAWK_C * n * lg
    assert s.smawk_evaluations <= 8 * s.pair_list_total
    assert s.same_path_evaluations <= SAME_PATH_C * n * lg
    assert s.smawk_worst_ratio <= 8


def test_stats_merge():
    a = SolveStats(oracle_queries=3, smawk_worst_ratio=1.5)
    a.merge(SolveStats(oracle_queries=4, smawk_worst_ratio=0.5))
    assert a.oracle_queries == 7 and a.smawk_worst_ratio == 1.5
