from __future__ import annotations

import numpy as np
import pytest

from submatch import (
    DisconnectedQueryError,
    PartialEmbedding,
    build_graph,
    choose_order,
    label_filter,
    refine,
)

from helpers import brute_force_embeddings, random_labeled_graph, sample_walk_query


def _emb(*vertices: int) -> PartialEmbedding:
    emb = PartialEmbedding()
    for v in vertices:
        emb.push(v)
    return emb


def test_label_filter_basic():
    from submatch import LabelTable, parse_graph

    table = LabelTable()
    g = parse_graph("v 0 a\nv 1 b\nv 2 a", table)
    q = parse_graph("v 0 a", table)
    assert label_filter(q, g) == [(0, 2)]


def test_label_filter_no_match_is_empty():
    from submatch import LabelTable, parse_graph

    table = LabelTable()
    g = parse_graph("v 0 a\nv 1 a", table)
    q = parse_graph("v 0 z", table)
    assert label_filter(q, g) == [()]


def test_label_filter_fig1(fig1):
    g, q = fig1
    cands = label_filter(q, g)
    # The c-labeled query vertex admits exactly the three c-labeled data
    # vertices (file ids 5, 6, 7).
    assert [g.orig_ids[v] for v in cands[2]] == [5, 6, 7]
    assert cands == [(0, 7), (1, 2, 3), (4, 5, 6), (0, 7)]


def test_refine_empty_embedding_is_identity(fig1):
    g, q = fig1
    cands = label_filter(q, g)
    assert refine(cands, PartialEmbedding(), q, g) == cands


def test_refine_fig1_single_mapping(fig1):
    g, q = fig1
    cands = label_filter(q, g)
    result = refine(cands, _emb(0), q, g)
    assert result[0] == (0,)
    assert result[1] == (1, 2, 3)
    assert set(result[1]) <= set(g.neighbors(0))
    # Query vertices with no mapped neighbor keep their candidates.
    assert result[2] == cands[2]
    assert result[3] == cands[3]


def test_refine_empty_result_feeds_failure_handling(fig1):
    # Mapping the first query vertex onto the fresh a-vertex leaves the
    # b-labeled neighbor with no admissible candidate.
    g, q = fig1
    cands = label_filter(q, g)
    result = refine(cands, _emb(7), q, g)
    assert result[1] == ()


def test_refine_matches_direct_formula():
    rng = np.random.default_rng(23)
    for _ in range(40):
        g = random_labeled_graph(rng, 10, p=0.4)
        q = sample_walk_query(g, 4, rng)
        if q is None:
            continue
        cands = label_filter(q, g)
        for m in brute_force_embeddings(q, g)[:3]:
            mapping = dict(m)
            for k in range(q.vertex_count + 1):
                emb = _emb(*(mapping[u] for u in range(k)))
                got = refine(cands, emb, q, g)
                for u in range(q.vertex_count):
                    if u < k:
                        assert got[u] == (mapping[u],)
                        continue
                    expect = tuple(
                        v
                        for v in cands[u]
                        if all(
                            g.has_edge(v, mapping[w])
                            for w in q.neighbors(u)
                            if w < k
                        )
                    )
                    assert got[u] == expect


def test_refine_monotone_and_idempotent():
    rng = np.random.default_rng(29)
    for _ in range(30):
        g = random_labeled_graph(rng, 10, p=0.4)
        q = sample_walk_query(g, 4, rng)
        if q is None:
            continue
        embeddings = brute_force_embeddings(q, g)
        if not embeddings:
            continue
        mapping = dict(embeddings[0])
        cands = label_filter(q, g)
        for k in range(q.vertex_count + 1):
            emb = _emb(*(mapping[u] for u in range(k)))
            once = refine(cands, emb, q, g)
            assert all(set(once[u]) <= set(cands[u]) for u in range(q.vertex_count))
            assert refine(once, emb, q, g) == once


def test_refine_soundness_keeps_full_embeddings():
    # Any complete embedding extending the prefix survives refinement.
    rng = np.random.default_rng(31)
    checked = 0
    for _ in range(60):
        g = random_labeled_graph(rng, 9, p=0.4)
        q = sample_walk_query(g, 3, rng)
        if q is None:
            continue
        cands = label_filter(q, g)
        for m in brute_force_embeddings(q, g):
            mapping = dict(m)
            for k in range(q.vertex_count):
                emb = _emb(*(mapping[u] for u in range(k)))
                refined = refine(cands, emb, q, g)
                assert all(mapping[u] in refined[u] for u in range(q.vertex_count))
                checked += 1
    assert checked > 50


def test_choose_order_star_center_first():
    q = build_graph(["a", "b", "b", "b"], [(0, 1), (0, 2), (0, 3)])
    cands = [(9,), (1, 2), (3, 4), (5, 6)]
    order = choose_order(q, cands)
    assert order.order[0] == 0
    assert set(order.order) == {0, 1, 2, 3}


def test_choose_order_tie_breaks_by_id():
    q = build_graph(["a", "a", "a"], [(0, 1), (1, 2)])
    cands = [(1, 2), (3, 4), (5, 6)]
    order = choose_order(q, cands)
    assert order.order == (0, 1, 2)


def test_choose_order_fig1_starts_at_an_a_vertex(fig1):
    g, q = fig1
    cands = label_filter(q, g)
    order = choose_order(q, cands)
    assert order.order[0] in (0, 3)
    assert order.order == choose_order(q, cands).order


def test_choose_order_connected_prefix_property():
    rng = np.random.default_rng(37)
    for _ in range(40):
        g = random_labeled_graph(rng, 12, p=0.35)
        q = sample_walk_query(g, int(rng.integers(2, 7)), rng)
        if q is None:
            continue
        order = choose_order(q, label_filter(q, g))
        assert sorted(order.order) == list(range(q.vertex_count))
        assert all(order.order[order.inverse[u]] == u for u in range(q.vertex_count))
        seen = {order.order[0]}
        for u in order.order[1:]:
            assert any(w in seen for w in q.neighbors(u))
            seen.add(u)


def test_choose_order_rejects_disconnected():
    q = build_graph(["a", "a"], [])
    with pytest.raises(DisconnectedQueryError):
        choose_order(q, [(0,), (1,)])
