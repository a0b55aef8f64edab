import random
from itertools import accumulate

import pytest
from hypothesis import given, settings, strategies as st

from twocut.graph import Graph
from twocut.monge import (
    ImplicitMatrix,
    monge_global_min,
    naive_row_minima,
    smawk_row_minima,
    staircase_monge_min,
)
from twocut.oracle import build_cut_oracle
from twocut.tree import root_tree


def dense(rows):
    return ImplicitMatrix(len(rows), len(rows[0]) if rows else 0, lambda i, j: rows[i][j])


def random_monge(rng, r, c, vmax=20):
    """a_i + b_j + sum_{p<=i, q>j} density[p][q] with density >= 0 is Monge."""
    a = [rng.randint(-50, 50) for _ in range(r)]
    b = [rng.randint(-50, 50) for _ in range(c)]
    dens = [[rng.randint(0, vmax) if rng.random() < 0.5 else 0 for _ in range(c)] for _ in range(r)]
    # suffix over columns, prefix over rows
    tail = [list(accumulate(row[::-1]))[::-1] + [0] for row in dens]
    pref = [[0] * (c + 1)]
    for i in range(r):
        pref.append([pref[-1][j] + tail[i][j] for j in range(c + 1)])
    return [[a[i] + b[j] + pref[i + 1][j + 1] for j in range(c)] for i in range(r)]


def is_monge(rows):
    return all(rows[i][j] + rows[i + 1][j + 1] <= rows[i][j + 1] + rows[i + 1][j]
               for i in range(len(rows) - 1) for j in range(len(rows[0]) - 1))


def test_one_by_one():
    assert smawk_row_minima(dense([[5]])) == [(0, 5)]


def test_two_by_two_leftmost():
    assert smawk_row_minima(dense([[1, 2], [2, 2]])) == [(0, 1), (0, 2)]


def test_constant_matrix_global_min_is_origin():
    m = dense([[3] * 4 for _ in range(5)])
    assert monge_global_min(m, inverse=False) == (0, 0, 3)
    assert monge_global_min(m, inverse=True) == (0, 0, 3)


def test_generator_is_monge():
    rng = random.Random(0)
    for _ in range(20):
        assert is_monge(random_monge(rng, rng.randint(1, 9), rng.randint(1, 9)))


def test_smawk_200_by_300():
    rng = random.Random(1)
    rows = random_monge(rng, 200, 300, vmax=3)
    m = dense(rows)
    assert smawk_row_minima(m) == naive_row_minima(m)
    assert m.evaluations <= 8 * (200 + 300)


@pytest.mark.parametrize("seed", range(40))
def test_smawk_matches_naive(seed):
    rng = random.Random(seed)
    r, c = rng.randint(1, 40), rng.randint(1, 40)
    rows = random_monge(rng, r, c, vmax=rng.choice([0, 1, 5, 100]))
    m = dense(rows)
    assert smawk_row_minima(m) == naive_row_minima(m)
    assert m.evaluations <= 8 * (r + c)


@pytest.mark.parametrize("seed", range(40))
def test_global_min_both_orientations(seed):
    rng = random.Random(1000 + seed)
    r, c = rng.randint(1, 30), rng.randint(1, 30)
    rows = random_monge(rng, r, c, vmax=rng.choice([1, 10]))
    best = min((rows[i][j], i, j) for i in range(r) for j in range(c))
    assert monge_global_min(dense(rows), inverse=False) == (best[1], best[2], best[0])
    flipped = [row[::-1] for row in rows]   # satisfies the reversed inequality
    best = min((flipped[i][j], i, j) for i in range(r) for j in range(c))
    m = dense(flipped)
    assert monge_global_min(m, inverse=True) == (best[1], best[2], best[0])
    assert m.evaluations <= 8 * (r + c)


def test_planted_unique_minimum():
    rng = random.Random(3)
    noise = random_monge(rng, 25, 25, vmax=4)
    spread = max(map(max, noise)) - min(map(min, noise)) + 1
    i0, j0 = 17, 6
    # a separable bowl is Monge with equality, so the sum stays Monge
    rows = [[spread * ((i - i0) ** 2 + (j - j0) ** 2) + noise[i][j] for j in range(25)] for i in range(25)]
    assert is_monge(rows)
    assert monge_global_min(dense(rows), inverse=False) == (i0, j0, rows[i0][j0])


def test_empty_and_degenerate_shapes():
    assert monge_global_min(ImplicitMatrix(0, 3, lambda i, j: 0)) is None
    assert smawk_row_minima(dense([[4, 1, 1, 7]])) == [(1, 1)]
    assert smawk_row_minima(dense([[4], [2], [9]])) == [(0, 4), (0, 2), (0, 9)]


def test_staircase_two_by_two():
    m = dense([[None, 5], [5, None]])
    assert staircase_monge_min(m) == (0, 1, 5)
    assert staircase_monge_min(dense([[None]])) is None
    with pytest.raises(ValueError):
        staircase_monge_min(ImplicitMatrix(2, 3, lambda i, j: 0))


def test_staircase_on_p5():
    g = Graph(5, tuple((i, i + 1, 1) for i in range(4)))
    t = root_tree(g, list(range(4)), 0)
    o = build_cut_oracle(g, t)
    path = [1, 2, 3, 4]
    m = ImplicitMatrix(4, 4, lambda i, j: o.cut_lower(path[i], path[j]))
    i, j, v = staircase_monge_min(m)
    brute = min((o.cut_lower(path[a], path[b]), a, b) for a in range(4) for b in range(a + 1, 4))
    assert (v, i, j) == brute


def random_symmetric_partial(rng, n):
    """Symmetric matrix whose upper triangle is the negation of a random
    Monge matrix, so every all-off-diagonal minor satisfies the inverse
    inequality."""
    neg = random_monge(rng, n, n, vmax=rng.choice([1, 10]))
    rows = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            rows[i][j] = rows[j][i] = -neg[i][j]
    return rows


def satisfies_partial_inverse(rows):
    n = len(rows)
    return all(rows[i][j] + rows[i + 1][j + 1] >= rows[i][j + 1] + rows[i + 1][j]
               for i in range(n - 1) for j in range(n - 1)
               if len({i, i + 1} & {j, j + 1}) == 0)


@pytest.mark.parametrize("seed", range(30))
def test_staircase_random(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 60)
    rows = random_symmetric_partial(rng, n)
    assert satisfies_partial_inverse(rows)
    m = dense(rows)
    brute = min((rows[i][j], i, j) for i in range(n) for j in range(i + 1, n))
    assert staircase_monge_min(m) == (brute[1], brute[2], brute[0])


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 12), st.integers(1, 12), st.integers(0, 2**32), st.sampled_from([0, 1, 3, 50]))
def test_smawk_property(r, c, seed, vmax):
    rows = random_monge(random.Random(seed), r, c, vmax)
    m = dense(rows)
    assert smawk_row_minima(m) == naive_row_minima(m)
    assert m.evaluations <= 8 * (r + c)
