import networkx as nx
import numpy as np
import pytest

from hetn2v import (BiasParams, EmbeddingMatrix, HetMultigraph, SgnsConfig, WalkConfig, WalkCorpus,
                    build_vocab, cosine_neighbors, generate_walks, train)
from hetn2v.embedding import (cosine_matrix, cosine_similarity, init_vectors,
                              negative_distribution, sgns_grad, sgns_loss)


def corpus(walks, names):
    return WalkCorpus([np.array(w) for w in walks], names)


def planted(seed=0, n=100, p_in=0.2, p_out=0.01):
    G = nx.planted_partition_graph(2, n // 2, p_in, p_out, seed=seed)
    edges = list(G.edges())
    return HetMultigraph.from_edges([a for a, _ in edges], [b for _, b in edges],
                                    [0] * len(edges), [1.0] * len(edges), [0] * n)


def test_vocab_counts():
    assert list(build_vocab(corpus([[0, 1, 0]], ["a", "b"]))) == [2, 1]
    with pytest.raises(ValueError):
        build_vocab(corpus([], []))


def test_negative_distribution():
    assert np.allclose(negative_distribution(np.array([3, 3, 3])), 1 / 3)
    d = negative_distribution(np.array([16, 1]))
    assert d[0] / d[1] == pytest.approx(8.0, rel=1e-12)


def test_config_validation():
    with pytest.raises(ValueError):
        SgnsConfig(dims=0)
    with pytest.raises(ValueError):
        SgnsConfig(initial_lr=0.01, min_lr=0.1)


def test_initialisation():
    vin, vout = init_vectors(50, 16, 3)
    assert np.all(np.abs(vin) <= 0.5 / 16) and vin.std() > 0
    assert np.all(vout == 0)


def test_zero_epochs_keeps_initialisation():
    c = corpus([[0, 1, 2, 1]], list("abc"))
    m = train(c, SgnsConfig(dims=4, epochs=0, seed=5))
    vin, vout = init_vectors(3, 4, 5)
    assert np.array_equal(m.vectors, vin) and np.array_equal(m.context, vout)
    assert m.epoch_loss == []


def test_single_pair_learns_positive_score():
    m = train(corpus([[0, 1]], ["a", "b"]),
              SgnsConfig(dims=8, window=1, epochs=2000, dynamic_window=False))
    score = m.vectors[0] @ m.context[1]
    assert 1 / (1 + np.exp(-score)) > 0.9


def test_gradient_matches_finite_differences():
    rng = np.random.default_rng(0)
    u, v, negs = rng.normal(size=8), rng.normal(size=8), rng.normal(size=(3, 8))
    loss, gu, gv, gn = sgns_grad(u, v, negs)
    assert loss == pytest.approx(sgns_loss(u, v, negs), rel=1e-14)
    h = 1e-6
    for i in range(8):
        e = np.zeros(8)
        e[i] = h
        assert gu[i] == pytest.approx((sgns_loss(u + e, v, negs) - sgns_loss(u - e, v, negs)) / (2 * h),
                                      rel=1e-5, abs=1e-8)
        assert gv[i] == pytest.approx((sgns_loss(u, v + e, negs) - sgns_loss(u, v - e, negs)) / (2 * h),
                                      rel=1e-5, abs=1e-8)


def test_loss_is_stable_for_large_scores():
    u = np.full(4, 100.0)
    assert np.isfinite(sgns_loss(u, -u, u[None, :]))
    assert sgns_loss(u, u, -u[None, :]) == pytest.approx(0.0, abs=1e-12)


def test_loss_decreases():
    g = planted(1)
    c = generate_walks(g, BiasParams(), WalkConfig(30, 4, seed=1))
    m = train(c, SgnsConfig(dims=16, epochs=5, seed=2))
    assert len(m.epoch_loss) == 5
    assert m.epoch_loss[4] < m.epoch_loss[0]


def test_single_thread_is_deterministic():
    g = planted(2)
    c = generate_walks(g, BiasParams(), WalkConfig(10, 2, seed=1))
    a = train(c, SgnsConfig(dims=8, epochs=2, seed=4))
    b = train(c, SgnsConfig(dims=8, epochs=2, seed=4))
    assert np.array_equal(a.vectors, b.vectors)


def test_multi_thread_trains():
    g = planted(3)
    c = generate_walks(g, BiasParams(), WalkConfig(20, 4, seed=1))
    m = train(c, SgnsConfig(dims=16, epochs=3, threads=4))
    assert np.all(np.isfinite(m.vectors))
    assert m.epoch_loss[-1] < m.epoch_loss[0]


def test_cosine():
    a = np.array([1.0, 2.0, 3.0])
    assert cosine_similarity(a, a) == pytest.approx(1.0)
    assert cosine_similarity(np.array([1.0, 0]), np.array([0, 1.0])) == 0.0
    assert cosine_similarity(np.zeros(3), a) == 0.0
    sim = cosine_matrix(np.array([[1.0, 0], [0, 0], [2.0, 0]]))
    assert sim[0, 2] == pytest.approx(1.0) and sim[0, 1] == 0.0


def test_cosine_neighbors_excludes_self():
    vecs = np.array([[1.0, 0], [0.9, 0.1], [0, 1.0], [1.0, 0.01]])
    m = EmbeddingMatrix(vecs, np.zeros_like(vecs), list("abcd"))
    ranked = cosine_neighbors(m, 0, top_k=3)
    assert [i for i, _ in ranked] == [3, 1, 2]
    assert len(cosine_neighbors(m, 0, top_k=10)) == 3


def test_planted_partition_neighbours_intra_cluster():
    g = planted(4)
    c = generate_walks(g, BiasParams(), WalkConfig(40, 10, seed=4))
    m = train(c, SgnsConfig(dims=32, epochs=3, seed=4))
    hits = []
    for v in range(g.n_nodes):
        hits += [(i < 50) == (v < 50) for i, _ in cosine_neighbors(m, v, 5)]
    assert np.mean(hits) > 0.95
