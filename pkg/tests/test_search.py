import time

import pytest
from hypothesis import given, strategies as st

from thoughtsearch.search import (
    ClosedListCorruption,
    PathStep,
    SearchLimits,
    SearchProblem,
    Status,
    bfs,
    dfs,
    reachable_states,
    reconstruct_path,
    replay,
    shortest_distance,
    validate_path,
)

from _checks import check_search_properties, crawl, layer_distance


def graph_problem(edges, start=0, goals=()):
    """Problem over integer nodes; ``edges`` maps node -> [(label, node)]."""
    goals = frozenset(goals)
    return SearchProblem(
        initial=start,
        successors=lambda n: list(edges.get(n, ())),
        is_goal=lambda n: n in goals,
        canonical_key=str,
    )


@st.composite
def graphs(draw, max_nodes=12):
    n = draw(st.integers(1, max_nodes))
    edges = {}
    for u in range(n):
        targets = draw(st.lists(st.integers(0, n - 1), max_size=4))
        edges[u] = [(f"{u}->{v}#{i}", v) for i, v in enumerate(targets)]
    goals = draw(st.sets(st.integers(0, n - 1), max_size=2))
    return edges, goals


DIAMOND = {0: [("a", 1), ("b", 2)], 1: [("c", 3)], 2: [("d", 3)], 3: [("e", 4)]}


def test_diamond_counts_duplicate_generation_once_per_edge():
    out = bfs(graph_problem(DIAMOND, goals={99}))
    assert out.status is Status.EXHAUSTED
    # node 3 generated twice (via 1 and via 2) but expanded once
    assert out.generated == 5
    assert out.expanded == 5


def test_diamond_shortest_path_and_labels():
    out = bfs(graph_problem(DIAMOND, goals={4}))
    assert out.solved
    assert [s.state for s in out.path] == [0, 1, 3, 4]
    assert out.actions == ["a", "c", "e"]
    assert out.plan_length == 3


def test_dfs_explores_last_emitted_first():
    out = dfs(graph_problem(DIAMOND, goals={4}))
    assert [s.state for s in out.path] == [0, 2, 3, 4]


@pytest.mark.parametrize("algo", [bfs, dfs])
def test_initial_goal(algo):
    out = algo(graph_problem(DIAMOND, goals={0}))
    assert out.solved
    assert out.path == (PathStep(None, 0),)
    assert (out.expanded, out.generated) == (0, 0)


def test_unreachable_goal_exhausts():
    out = bfs(graph_problem(DIAMOND, goals={7}))
    assert out.status is Status.EXHAUSTED
    assert out.path == ()


def test_expansion_limit():
    chain = {i: [("next", i + 1)] for i in range(1000)}
    out = bfs(graph_problem(chain, goals={1000}), SearchLimits(max_expansions=10))
    assert out.status is Status.LIMIT
    assert out.expanded == 10


def test_wall_time_limit():
    chain = {i: [("next", i + 1)] for i in range(10**6)}

    def slow(n):
        time.sleep(1e-4)
        return chain.get(n, [])

    p = SearchProblem(0, slow, lambda n: False, str)
    t0 = time.monotonic()
    out = dfs(p, SearchLimits(max_wall_time=0.05))
    assert out.status is Status.LIMIT
    assert time.monotonic() - t0 < 2


def test_negative_limits_rejected():
    with pytest.raises(ValueError):
        SearchLimits(max_expansions=-1)
    with pytest.raises(ValueError):
        SearchLimits(max_wall_time=-0.5)


def test_successor_error_propagates():
    def boom(n):
        raise KeyError("domain error")

    with pytest.raises(KeyError):
        bfs(SearchProblem(0, boom, lambda n: False, str))


def test_reconstruct_single():
    closed = {"s": (None, None)}
    assert reconstruct_path(closed, "s", {"s": "S"}) == [PathStep(None, "S")]


def test_reconstruct_chain():
    closed = {"i": (None, None), "a": ("i", "go-a"), "b": ("a", "go-b")}
    states = {"i": 0, "a": 1, "b": 2}
    assert reconstruct_path(closed, "b", states) == [
        PathStep(None, 0), PathStep("go-a", 1), PathStep("go-b", 2)]


def test_reconstruct_missing_goal():
    with pytest.raises(ClosedListCorruption):
        reconstruct_path({"i": (None, None)}, "zz", {"i": 0})


def test_reconstruct_broken_chain():
    closed = {"a": ("ghost", "x")}
    with pytest.raises(ClosedListCorruption):
        reconstruct_path(closed, "a", {"a": 1})


def test_validate_path_rejects_tampering():
    p = graph_problem(DIAMOND, goals={4})
    path = list(bfs(p).path)
    assert validate_path(p, path)
    swapped = path.copy()
    swapped[1] = PathStep("a", 2)
    assert not validate_path(p, swapped)
    assert not validate_path(p, path[:-1])
    relabelled = path.copy()
    relabelled[1] = PathStep("b", 1)
    assert not validate_path(p, relabelled)
    assert not validate_path(p, [])
    assert not validate_path(p, [PathStep(None, 1)] + path[2:])


def test_replay_follows_labels():
    p = graph_problem(DIAMOND, goals={4})
    path = replay(p, ["b", "d", "e"])
    assert [s.state for s in path] == [0, 2, 3, 4]
    assert validate_path(p, path)
    assert replay(p, ["b", "c"]) is None


def test_reachable_and_distance_helpers():
    p = graph_problem(DIAMOND, goals={4})
    assert set(reachable_states(p)) == {"0", "1", "2", "3", "4"}
    assert shortest_distance(p) == 3
    assert shortest_distance(graph_problem(DIAMOND, goals={9})) is None
    with pytest.raises(OverflowError):
        reachable_states(p, limit=2)


def _floyd(edges, n, start, goals):
    inf = float("inf")
    d = [[inf] * n for _ in range(n)]
    for u in range(n):
        d[u][u] = 0
        for _, v in edges.get(u, ()):
            d[u][v] = min(d[u][v], 1)
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if d[i][k] + d[k][j] < d[i][j]:
                    d[i][j] = d[i][k] + d[k][j]
    best = min((d[start][g] for g in goals), default=inf)
    return None if best == inf else best


@given(graphs())
def test_random_graph_properties(g):
    edges, goals = g
    p = graph_problem(edges, goals=goals)
    out = check_search_properties(p)
    n = len(edges)
    expected = _floyd(edges, n, 0, goals)
    assert layer_distance(p) == expected
    assert shortest_distance(p) == expected
    assert (out.plan_length if out.solved else None) == expected


@given(graphs())
def test_reachable_matches_crawl(g):
    edges, goals = g
    p = graph_problem(edges, goals=goals)
    assert set(reachable_states(p)) == set(crawl(p))
