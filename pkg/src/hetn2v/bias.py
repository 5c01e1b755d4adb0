"""Type-aware second-order bias: node2vec's return/in-out terms times node and
edge switching factors.

A switching model holds the switching *values* (``s``, ``s_ij``, ``e`` ...);
the factor applied to a step is the reciprocal of the applicable value, and
1 for a step that stays on the same type.  The combined weight multiplier is

    gamma = 1 / (base(d) * node_value * edge_value),   base = (p, 1, q)

which covers plain node2vec, the node-switching walk (edge values all 1), the
edge-switching walk (node values all 1) and the combined walk.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from typing import Union

import numpy as np


def _check_positive(name, value):
    if not (value > 0 and np.isfinite(value)):
        raise ValueError(f"{name} must be positive and finite, got {value!r}")


@dataclass(frozen=True)
class Uniform:
    """One switching value for every change of type."""

    value: float = 1.0

    def __post_init__(self):
        _check_positive("switching value", self.value)

    def switch_value(self, src: int, dst: int) -> float:
        return 1.0 if src == dst else float(self.value)

    def value_matrix(self, n_types: int) -> np.ndarray:
        m = np.full((n_types, n_types), float(self.value))
        np.fill_diagonal(m, 1.0)
        return m


@dataclass(frozen=True, eq=False)
class PairwiseDirected:
    """Per ordered pair of types: ``matrix[i, j]`` applies to a move from i to j."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=np.float64)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("switching matrix must be square")
        off = m[~np.eye(len(m), dtype=bool)]
        if np.any(~(off > 0)) or not np.all(np.isfinite(off)):
            raise ValueError("switching values must be positive and finite")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def switch_value(self, src: int, dst: int) -> float:
        return 1.0 if src == dst else float(self.matrix[src, dst])

    def value_matrix(self, n_types: int) -> np.ndarray:
        if n_types > len(self.matrix):
            raise ValueError(f"switching matrix covers {len(self.matrix)} types, graph has {n_types}")
        m = self.matrix[:n_types, :n_types].copy()
        np.fill_diagonal(m, 1.0)
        return m


@dataclass(frozen=True, eq=False)
class PairwiseSymmetric(PairwiseDirected):
    """Like :class:`PairwiseDirected` but the same value in both directions."""

    def __post_init__(self):
        super().__post_init__()
        if not np.array_equal(self.matrix, self.matrix.T):
            raise ValueError("symmetric switching matrix is not symmetric")


@dataclass(frozen=True)
class SpecialSet:
    """Special/non-special partition of the types.

    Entering the special group uses ``to_special``, leaving it uses
    ``from_special``.  Moves inside either group, including between two
    distinct special types, are not penalised.
    """

    special: frozenset = field(default_factory=frozenset)
    to_special: float = 1.0
    from_special: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "special", frozenset(int(t) for t in self.special))
        _check_positive("to_special", self.to_special)
        _check_positive("from_special", self.from_special)

    def switch_value(self, src: int, dst: int) -> float:
        a, b = src in self.special, dst in self.special
        if b and not a:
            return float(self.to_special)
        if a and not b:
            return float(self.from_special)
        return 1.0

    def value_matrix(self, n_types: int) -> np.ndarray:
        return np.array([[self.switch_value(i, j) for j in range(n_types)] for i in range(n_types)],
                        dtype=np.float64).reshape(n_types, n_types)


SwitchModel = Union[Uniform, PairwiseDirected, PairwiseSymmetric, SpecialSet]
NodeSwitchModel = SwitchModel
EdgeSwitchModel = SwitchModel


def switch_factor(model: SwitchModel, src: int, dst: int) -> float:
    """Multiplier for a move from type ``src`` to type ``dst``."""
    return 1.0 / model.switch_value(int(src), int(dst))


node_switch_factor = switch_factor
edge_switch_factor = switch_factor


@dataclass(frozen=True)
class BiasParams:
    p: float = 1.0
    q: float = 1.0
    node_switch: SwitchModel = field(default_factory=Uniform)
    edge_switch: SwitchModel = field(default_factory=Uniform)

    def __post_init__(self):
        _check_positive("p", self.p)
        _check_positive("q", self.q)

    def base_value(self, d: int) -> float:
        if d == 0:
            return float(self.p)
        if d == 1:
            return 1.0
        if d == 2:
            return float(self.q)
        raise ValueError(f"distance class must be 0, 1 or 2, got {d!r}")

    def tables(self, n_node_types: int, n_edge_types: int) -> "KernelTables":
        return KernelTables(
            base=np.array([self.p, 1.0, self.q], dtype=np.float64),
            node=np.ascontiguousarray(self.node_switch.value_matrix(max(n_node_types, 1))),
            edge=np.ascontiguousarray(self.edge_switch.value_matrix(max(n_edge_types, 1))),
        )


@dataclass(frozen=True, eq=False)
class KernelTables:
    """Dense value tables consumed by the walk kernels; gamma = 1/(base*node*edge)."""

    base: np.ndarray
    node: np.ndarray
    edge: np.ndarray


def gamma(params: BiasParams, d: int, node_from: int, node_to: int,
          edge_arrived: int, edge_departing: int) -> float:
    """Unnormalised weight multiplier for one candidate step."""
    return 1.0 / (params.base_value(d)
                  * params.node_switch.switch_value(int(node_from), int(node_to))
                  * params.edge_switch.switch_value(int(edge_arrived), int(edge_departing)))


def load_switch_matrix(path, type_names: list[str]) -> PairwiseDirected:
    """Read ``from<TAB>to<TAB>value`` rows; pairs not listed get 1.0."""
    index = {name: i for i, name in enumerate(type_names)}
    m = np.ones((len(type_names), len(type_names)))
    with open(path, newline="", encoding="utf-8") as fh:
        for lineno, row in enumerate(csv.reader(fh, delimiter="\t"), 1):
            if not row or not row[0].strip() or row[0].startswith("#"):
                continue
            if len(row) != 3:
                raise ValueError(f"{path}:{lineno}: expected 3 tab-separated fields")
            a, b, v = row
            try:
                val = float(v)
            except ValueError:
                if lineno == 1:
                    continue  # header
                raise ValueError(f"{path}:{lineno}: bad value {v!r}") from None
            for name in (a, b):
                if name not in index:
                    raise ValueError(f"{path}:{lineno}: unknown type {name!r}")
            if not val > 0:
                raise ValueError(f"{path}:{lineno}: switching value must be positive")
            m[index[a], index[b]] = val
    return PairwiseDirected(m)


def special_set(names, type_names: list[str], to_special: float, from_special: float) -> SpecialSet:
    index = {name: i for i, name in enumerate(type_names)}
    missing = [n for n in names if n not in index]
    if missing:
        raise ValueError(f"unknown types: {', '.join(missing)}")
    return SpecialSet(frozenset(index[n] for n in names), to_special, from_special)
