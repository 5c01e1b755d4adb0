"""Where a walk corpus spends its time, by node type and edge type."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import HetMultigraph
from .walks import WalkCorpus


@dataclass
class WalkReport:
    node_type_fractions: dict
    edge_type_fractions: dict
    node_switch_rate: float
    edge_switch_rate: float
    n_visits: int
    n_steps: int

    def rows(self) -> list[tuple[str, str]]:
        out = [("n_visits", str(self.n_visits)), ("n_steps", str(self.n_steps))]
        out += [(f"node_type_fraction.{k}", repr(v)) for k, v in self.node_type_fractions.items()]
        out += [(f"edge_type_fraction.{k}", repr(v)) for k, v in self.edge_type_fractions.items()]
        out += [("node_switch_rate", repr(self.node_switch_rate)),
                ("edge_switch_rate", repr(self.edge_switch_rate))]
        return out

    def to_tsv(self) -> str:
        return "".join(f"{k}\t{v}\n" for k, v in self.rows())

    def to_text(self) -> str:
        lines = [f"visits: {self.n_visits}   steps: {self.n_steps}", "node types:"]
        lines += [f"  {k:<20} {v:8.4f}" for k, v in self.node_type_fractions.items()]
        lines.append("edge types:")
        lines += [f"  {k:<20} {v:8.4f}" for k, v in self.edge_type_fractions.items()]
        lines.append(f"node switch rate: {self.node_switch_rate:.4f}")
        lines.append(f"edge switch rate: {self.edge_switch_rate:.4f}")
        return "\n".join(lines) + "\n"


def _step_type_distributions(g: HetMultigraph, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Edge-type distribution for each step ``a[i] -> b[i]``, splitting
    parallel edges in proportion to their weight."""
    out = np.zeros((len(a), g.n_edge_types))
    cache: dict[tuple[int, int], np.ndarray] = {}
    for i, (u, v) in enumerate(zip(a.tolist(), b.tolist())):
        d = cache.get((u, v))
        if d is None:
            lo, hi = g.offsets[u], g.offsets[u + 1]
            hit = g.targets[lo:hi] == v
            if not hit.any():
                raise ValueError(f"walk steps between non-adjacent nodes "
                                 f"{g.node_names[u]!r} and {g.node_names[v]!r}")
            d = np.bincount(g.etypes[lo:hi][hit], weights=g.weights[lo:hi][hit],
                            minlength=g.n_edge_types)
            d = d / d.sum()
            cache[(u, v)] = d
        out[i] = d
    return out


def walk_stats(corpus: WalkCorpus, g: HetMultigraph) -> WalkReport:
    """Visit fractions per node type, traversal fractions per edge type, and
    the share of steps that change node type or edge type.

    The edge type of a step is taken from the corpus when it was recorded
    during generation; otherwise it is inferred from the graph.
    """
    ids, offsets = corpus.flat()
    if list(corpus.node_names) != list(g.node_names):
        try:
            remap = np.array([g.node_id(s) for s in corpus.node_names], dtype=np.int64)
        except KeyError as exc:
            raise ValueError(f"corpus references {exc.args[0]}") from None
        ids = remap[ids] if len(ids) else ids
    if len(ids) and (ids.max() >= g.n_nodes or ids.min() < 0):
        raise ValueError("corpus references nodes outside the graph")
    types = g.node_types[ids]
    visits = np.bincount(types, minlength=g.n_node_types)
    n_visits = int(visits.sum())

    # step i goes from ids[i] to ids[i + 1] when both sit in the same walk
    inner = np.ones(len(ids), dtype=bool)
    inner[offsets[1:] - 1] = False
    inner = inner[:-1] if len(ids) else inner
    src = np.flatnonzero(inner)
    n_steps = len(src)
    node_switch = float(np.mean(types[src] != types[src + 1])) if n_steps else 0.0

    if corpus.edge_types is not None:
        et = (np.concatenate(corpus.edge_types).astype(np.int64)
              if corpus.edge_types else np.zeros(0, dtype=np.int64))
        if len(et) != n_steps:
            raise ValueError("recorded edge types do not match walk lengths")
        dist = np.zeros((n_steps, g.n_edge_types))
        dist[np.arange(n_steps), et] = 1.0
    else:
        dist = _step_type_distributions(g, ids[src], ids[src + 1])

    # consecutive steps: step j and j+1 both exist when the walk continues
    step_pos = np.full(len(ids), -1, dtype=np.int64)
    step_pos[src] = np.arange(n_steps)
    has_next = np.zeros(n_steps, dtype=bool)
    if n_steps:
        nxt = src + 1
        ok = nxt < len(inner)
        ok[ok] = inner[nxt[ok]]
        has_next = ok
    j = np.flatnonzero(has_next)
    if len(j):
        same = np.einsum("ij,ij->i", dist[j], dist[step_pos[src[j] + 1]])
        edge_switch = float(np.mean(1.0 - same))
    else:
        edge_switch = 0.0

    edge_frac = dist.sum(axis=0) / n_steps if n_steps else np.zeros(g.n_edge_types)
    return WalkReport(
        {name: float(visits[i] / n_visits) if n_visits else 0.0
         for i, name in enumerate(g.node_type_names)},
        {name: float(edge_frac[i]) for i, name in enumerate(g.edge_type_names)},
        node_switch,
        edge_switch,
        n_visits,
        n_steps,
    )
