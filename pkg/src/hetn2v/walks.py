"""Second-order type-aware random walks.

Transition weights are evaluated on the fly at every step; the per-step cost
is O(deg(v) log deg(r)).  Each walk draws from its own counter-based stream
keyed by ``(seed, start, replicate)``, so the corpus does not depend on how
walks are spread over threads.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np
from numba import njit

from .bias import BiasParams, KernelTables
from .graph import HetMultigraph
from .rng import as_seed, stream_key, uniform


class WalkerState(NamedTuple):
    prev: int
    arrival_etype: int
    current: int


@dataclass(frozen=True)
class WalkConfig:
    walk_length: int = 80
    walks_per_node: int = 10
    seed: int = 0
    threads: int = 1

    def __post_init__(self):
        for name in ("walk_length", "walks_per_node", "threads"):
            if int(getattr(self, name)) < 1:
                raise ValueError(f"{name} must be >= 1")


@dataclass(eq=False)
class WalkCorpus:
    """Walks as node-id arrays, plus the edge type taken at every step when known."""

    walks: list
    node_names: list
    edge_types: Optional[list] = None

    def __len__(self):
        return len(self.walks)

    def as_names(self) -> list[list[str]]:
        names = self.node_names
        return [[names[i] for i in w] for w in self.walks]

    def __eq__(self, other):
        if not isinstance(other, WalkCorpus):
            return NotImplemented
        return self.as_names() == other.as_names()

    def flat(self) -> tuple[np.ndarray, np.ndarray]:
        """Concatenated ids and ``len + 1`` walk offsets."""
        offsets = np.zeros(len(self.walks) + 1, dtype=np.int64)
        np.cumsum([len(w) for w in self.walks], out=offsets[1:])
        ids = (np.concatenate(self.walks).astype(np.int64) if self.walks
               else np.zeros(0, dtype=np.int64))
        return ids, offsets


# --- kernels -----------------------------------------------------------------

@njit(cache=True, nogil=True)
def _adjacent(targets, offsets, u, x):
    lo, hi = offsets[u], offsets[u + 1]
    i = lo + np.searchsorted(targets[lo:hi], x)
    return i < hi and targets[i] == x


@njit(cache=True, nogil=True)
def _step_weights(offsets, targets, etypes, weights, node_types,
                  base, node_tab, edge_tab, prev, arr_et, cur, out):
    """Unnormalised weight of every instance leaving ``cur``; returns their count."""
    lo, hi = offsets[cur], offsets[cur + 1]
    cur_t = node_types[cur]
    for i in range(lo, hi):
        x = targets[i]
        if x == prev:
            d = 0
        elif _adjacent(targets, offsets, prev, x):
            d = 1
        else:
            d = 2
        den = base[d] * node_tab[cur_t, node_types[x]] * edge_tab[arr_et, etypes[i]]
        out[i - lo] = weights[i] / den
    return hi - lo


@njit(cache=True, nogil=True)
def _pick(w, n, u):
    """Inverse-CDF choice among ``w[:n]``."""
    total = 0.0
    for i in range(n):
        total += w[i]
    target = u * total
    acc = 0.0
    for i in range(n):
        acc += w[i]
        if target < acc:
            return i
    # rounding left target at the top: take the last positive entry
    for i in range(n - 1, -1, -1):
        if w[i] > 0:
            return i
    return n - 1


@njit(cache=True, nogil=True)
def _first_choice(offsets, weights, start, u):
    lo, hi = offsets[start], offsets[start + 1]
    if hi == lo:
        return -1
    return lo + _pick(weights[lo:hi], hi - lo, u)


@njit(cache=True, nogil=True)
def _next_choice(offsets, targets, etypes, weights, node_types,
                 base, node_tab, edge_tab, prev, arr_et, cur, u, buf):
    n = _step_weights(offsets, targets, etypes, weights, node_types,
                      base, node_tab, edge_tab, prev, arr_et, cur, buf)
    if n == 0:
        return -1
    return offsets[cur] + _pick(buf, n, u)


@njit(cache=True, nogil=True)
def _walk_range(offsets, targets, etypes, weights, node_types,
                base, node_tab, edge_tab, seed, m, k, lo, hi,
                out_nodes, out_etypes, out_len):
    max_deg = 0
    for v in range(len(offsets) - 1):
        max_deg = max(max_deg, offsets[v + 1] - offsets[v])
    buf = np.empty(max(max_deg, 1), dtype=np.float64)
    for w in range(lo, hi):
        start = w // m
        key = stream_key(seed, start, w % m)
        out_nodes[w, 0] = start
        length = 1
        if k > 1:
            i = _first_choice(offsets, weights, start, uniform(key, 0))
            if i >= 0:
                prev = start
                cur = targets[i]
                et = etypes[i]
                out_nodes[w, 1] = cur
                out_etypes[w, 0] = et
                length = 2
                while length < k:
                    i = _next_choice(offsets, targets, etypes, weights, node_types,
                                     base, node_tab, edge_tab, prev, et, cur,
                                     uniform(key, length - 1), buf)
                    if i < 0:
                        break
                    prev = cur
                    cur = targets[i]
                    et = etypes[i]
                    out_nodes[w, length] = cur
                    out_etypes[w, length - 1] = et
                    length += 1
        out_len[w] = length


@njit(cache=True, nogil=True)
def _sample_batch(offsets, targets, etypes, weights, node_types,
                  base, node_tab, edge_tab, prev, arr_et, cur, seed, n):
    buf = np.empty(max(offsets[cur + 1] - offsets[cur], 1), dtype=np.float64)
    out = np.empty(n, dtype=np.int64)
    key = stream_key(seed, cur, prev)
    for j in range(n):
        out[j] = _next_choice(offsets, targets, etypes, weights, node_types,
                              base, node_tab, edge_tab, prev, arr_et, cur,
                              uniform(key, j), buf)
    return out


# --- public API --------------------------------------------------------------

def _tables(g: HetMultigraph, params: BiasParams) -> KernelTables:
    return params.tables(g.n_node_types, g.n_edge_types)


def _arrays(g: HetMultigraph):
    return g.offsets, g.targets, g.etypes, g.weights, g.node_types


def _check_state(g: HetMultigraph, state: WalkerState) -> WalkerState:
    state = WalkerState(*map(int, state))
    lo, hi = g.offsets[state.current], g.offsets[state.current + 1]
    hit = (g.targets[lo:hi] == state.prev) & (g.etypes[lo:hi] == state.arrival_etype)
    if not hit.any():
        raise ValueError(f"no edge of type {state.arrival_etype} joins {state.prev} and {state.current}")
    return state


def unnormalized_weights(g: HetMultigraph, params: BiasParams, state: WalkerState) -> np.ndarray:
    """Unnormalised weights aligned with ``g.neighbors(state.current)``."""
    state = _check_state(g, state)
    t = _tables(g, params)
    buf = np.empty(max(g.degree(state.current), 1))
    n = _step_weights(*_arrays(g), t.base, t.node, t.edge,
                      state.prev, state.arrival_etype, state.current, buf)
    return buf[:n].copy()


def transition_distribution(g: HetMultigraph, params: BiasParams,
                            state: WalkerState) -> list[tuple[tuple[int, int], float]]:
    """Exact next-step distribution over ``(neighbor, edge type)`` instances."""
    w = unnormalized_weights(g, params, state)
    if len(w) == 0:
        raise DeadEnd(state.current)
    probs = w / w.sum()
    lo = g.offsets[state.current]
    return [((int(g.targets[lo + i]), int(g.etypes[lo + i])), float(pr))
            for i, pr in enumerate(probs)]


class DeadEnd(Exception):
    """The walker sits on a node with no incident edges."""


def _as_uniform(rng) -> float:
    return float(rng.random())


def first_step(g: HetMultigraph, params: BiasParams, start: int, rng) -> WalkerState:
    """Weight-proportional first move; no bias applies without a previous node."""
    start = g.node_id(start) if isinstance(start, str) else int(start)
    g.degree(start)
    i = _first_choice(g.offsets, g.weights, start, _as_uniform(rng))
    if i < 0:
        raise DeadEnd(start)
    return WalkerState(start, int(g.etypes[i]), int(g.targets[i]))


def sample_next(g: HetMultigraph, params: BiasParams, state: WalkerState, rng) -> WalkerState:
    state = _check_state(g, state)
    t = _tables(g, params)
    buf = np.empty(max(g.degree(state.current), 1))
    i = _next_choice(*_arrays(g), t.base, t.node, t.edge,
                     state.prev, state.arrival_etype, state.current, _as_uniform(rng), buf)
    if i < 0:
        raise DeadEnd(state.current)
    return WalkerState(state.current, int(g.etypes[i]), int(g.targets[i]))


def sample_many(g: HetMultigraph, params: BiasParams, state: WalkerState,
                n: int, seed: int = 0) -> np.ndarray:
    """``n`` independent next-step draws from ``state`` with the walk kernel.

    Returns indices into ``g.neighbors(state.current)``.
    """
    state = _check_state(g, state)
    t = _tables(g, params)
    idx = _sample_batch(*_arrays(g), t.base, t.node, t.edge,
                        state.prev, state.arrival_etype, state.current, as_seed(seed), int(n))
    return idx - g.offsets[state.current]


def generate_walks(g: HetMultigraph, params: BiasParams, cfg: WalkConfig) -> WalkCorpus:
    """``walks_per_node`` walks of up to ``walk_length`` nodes from every node.

    Walks are ordered by (start node, replicate).
    """
    n, m, k = g.n_nodes, int(cfg.walks_per_node), int(cfg.walk_length)
    total = n * m
    t = _tables(g, params)
    nodes = np.full((total, k), -1, dtype=np.int64)
    ets = np.full((total, max(k - 1, 0)), -1, dtype=np.int64)
    lens = np.zeros(total, dtype=np.int64)
    seed = as_seed(cfg.seed)

    def run(lo, hi):
        _walk_range(*_arrays(g), t.base, t.node, t.edge, seed, m, k, lo, hi, nodes, ets, lens)

    threads = min(int(cfg.threads), max(total, 1))
    if threads == 1:
        run(0, total)
    else:
        bounds = np.linspace(0, total, threads + 1).astype(np.int64)
        with ThreadPoolExecutor(threads) as pool:
            list(pool.map(run, bounds[:-1], bounds[1:]))
    walks = [nodes[i, :lens[i]] for i in range(total)]
    steps = [ets[i, :lens[i] - 1] for i in range(total)]
    return WalkCorpus(walks, g.node_names, steps)
