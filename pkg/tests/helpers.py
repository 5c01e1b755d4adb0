import networkx as nx
import numpy as np

from hetn2v import HetMultigraph


def random_multigraph(rng, n_nodes, n_node_types, n_edge_types, density=0.15,
                      parallel=0.3, weighted=True, self_loops=False):
    """Random typed multigraph.  A spanning path keeps it connected; extra
    pairs get one edge, and with probability ``parallel`` a second edge of
    another type."""
    node_types = rng.integers(0, n_node_types, n_nodes)
    k = min(n_node_types, n_nodes)
    node_types[:k] = np.arange(k)
    edges = {}

    def add(u, v, t):
        key = (min(u, v), max(u, v), t)
        edges[key] = float(rng.uniform(0.2, 3.0)) if weighted else 1.0

    for i in range(n_nodes - 1):
        add(i, i + 1, i if i < n_edge_types else int(rng.integers(n_edge_types)))
    for u in range(n_nodes):
        for v in range(u + 1, n_nodes):
            if rng.random() < density:
                if parallel == 0 and any((u, v, t) in edges for t in range(n_edge_types)):
                    continue
                t = int(rng.integers(n_edge_types))
                add(u, v, t)
                if n_edge_types > 1 and rng.random() < parallel:
                    add(u, v, (t + 1 + int(rng.integers(n_edge_types - 1))) % n_edge_types)
        if self_loops and rng.random() < 0.05:
            add(u, u, int(rng.integers(n_edge_types)))
    keys = sorted(edges)
    return HetMultigraph.from_edges(
        [k[0] for k in keys], [k[1] for k in keys], [k[2] for k in keys],
        [edges[k] for k in keys], node_types,
    )


def to_networkx(g):
    """Simple weighted graph; parallel edges are not expected here."""
    G = nx.Graph()
    G.add_nodes_from(range(g.n_nodes))
    for u, v, t, w in g.edge_list():
        assert not G.has_edge(u, v)
        G.add_edge(u, v, weight=w)
    return G


def node2vec_reference(G, p, q, prev, cur):
    """Classic node2vec step distribution from a networkx graph."""
    probs = {}
    for x in G.neighbors(cur):
        w = G[cur][x]["weight"]
        if x == prev:
            probs[x] = w / p
        elif G.has_edge(x, prev):
            probs[x] = w
        else:
            probs[x] = w / q
    z = sum(probs.values())
    return {x: v / z for x, v in probs.items()}


def all_states(g):
    """Every valid (prev, arrival type, current) walker state."""
    for v in range(g.n_nodes):
        for x, t, _ in g.neighbors(v):
            yield v, t, x
