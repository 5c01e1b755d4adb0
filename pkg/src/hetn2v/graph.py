"""Heterogeneous undirected multigraph in CSR form."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from numba import njit


class EdgeInstance(NamedTuple):
    endpoint: int
    etype: int
    weight: float


@njit(cache=True)
def _contains(targets, lo, hi, x):
    i = np.searchsorted(targets[lo:hi], x)
    return lo + i < hi and targets[lo + i] == x


@dataclass(frozen=True, eq=False)
class HetMultigraph:
    """Immutable typed multigraph.

    Each undirected edge instance ``(u, v, t, w)`` is stored twice, once in the
    slice of ``u`` and once in the slice of ``v``; a self-loop therefore appears
    twice in its own slice.  Slices are sorted by ``(endpoint, etype)``.
    """

    offsets: np.ndarray  # int64, n + 1
    targets: np.ndarray  # int64
    etypes: np.ndarray  # int64
    weights: np.ndarray  # float64
    node_types: np.ndarray  # int64, n
    node_names: list[str]
    node_type_names: list[str]
    edge_type_names: list[str]
    _node_index: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_node_index", {s: i for i, s in enumerate(self.node_names)})
        for a in (self.offsets, self.targets, self.etypes, self.weights, self.node_types):
            a.setflags(write=False)

    @classmethod
    def from_edges(
        cls,
        src,
        dst,
        etype,
        weight,
        node_types,
        node_names=None,
        node_type_names=None,
        edge_type_names=None,
    ) -> "HetMultigraph":
        """Build from undirected edge instances given as parallel id arrays."""
        src = np.asarray(src, dtype=np.int64)
        dst = np.asarray(dst, dtype=np.int64)
        etype = np.asarray(etype, dtype=np.int64)
        weight = np.asarray(weight, dtype=np.float64)
        node_types = np.asarray(node_types, dtype=np.int64)
        n = len(node_types)
        if not (len(src) == len(dst) == len(etype) == len(weight)):
            raise ValueError("edge arrays differ in length")
        if len(src) and (min(src.min(), dst.min()) < 0 or max(src.max(), dst.max()) >= n):
            raise ValueError("edge endpoint out of range")
        if np.any(~(weight > 0)):
            raise ValueError("edge weights must be positive")
        n_etypes = int(etype.max()) + 1 if len(etype) else 0
        n_ntypes = int(node_types.max()) + 1 if n else 0
        if node_names is None:
            node_names = [str(i) for i in range(n)]
        if node_type_names is None:
            node_type_names = [str(i) for i in range(n_ntypes)]
        if edge_type_names is None:
            edge_type_names = [str(i) for i in range(n_etypes)]
        if len(node_names) != n:
            raise ValueError("node_names length does not match node count")

        s = np.concatenate([src, dst])
        d = np.concatenate([dst, src])
        t = np.concatenate([etype, etype])
        w = np.concatenate([weight, weight])
        order = np.lexsort((t, d, s))
        s, d, t, w = s[order], d[order], t[order], w[order]
        offsets = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(s, minlength=n), out=offsets[1:])
        return cls(
            offsets, d, t, w, node_types,
            list(node_names), list(node_type_names), list(edge_type_names),
        )

    @property
    def n_nodes(self) -> int:
        return len(self.node_types)

    @property
    def n_node_types(self) -> int:
        return len(self.node_type_names)

    @property
    def n_edge_types(self) -> int:
        return len(self.edge_type_names)

    def node_id(self, name: str) -> int:
        try:
            return self._node_index[name]
        except KeyError:
            raise KeyError(f"unknown node {name!r}") from None

    def _check(self, v: int) -> int:
        v = int(v)
        if not 0 <= v < self.n_nodes:
            raise IndexError(f"invalid node id {v}")
        return v

    def degree(self, v: int) -> int:
        v = self._check(v)
        return int(self.offsets[v + 1] - self.offsets[v])

    def neighbors(self, v: int) -> list[EdgeInstance]:
        v = self._check(v)
        lo, hi = self.offsets[v], self.offsets[v + 1]
        return [
            EdgeInstance(int(x), int(t), float(w))
            for x, t, w in zip(self.targets[lo:hi], self.etypes[lo:hi], self.weights[lo:hi])
        ]

    def is_adjacent(self, u: int, x: int) -> bool:
        u, x = self._check(u), self._check(x)
        return bool(_contains(self.targets, self.offsets[u], self.offsets[u + 1], x))

    def distance_class(self, r: int, x: int) -> int:
        """0 if ``x`` is ``r``, 1 if they are adjacent through any edge type, else 2."""
        if int(r) == int(x):
            return 0
        return 1 if self.is_adjacent(r, x) else 2

    def edge_list(self) -> list[tuple[int, int, int, float]]:
        """Undirected instances ``(u, v, etype, weight)`` with ``u <= v``."""
        out = []
        for u in range(self.n_nodes):
            lo, hi = self.offsets[u], self.offsets[u + 1]
            loops = []
            for x, t, w in zip(self.targets[lo:hi], self.etypes[lo:hi], self.weights[lo:hi]):
                if u < x:
                    out.append((u, int(x), int(t), float(w)))
                elif u == x:
                    loops.append((u, u, int(t), float(w)))
            # each self-loop sits in the slice twice
            out.extend(sorted(loops)[::2])
        return out
