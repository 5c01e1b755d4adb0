"""Typed edge lists in, walk corpora and embeddings out.

Edge file rows are ``src<TAB>dst<TAB>edge_type[<TAB>weight]``; node-type rows
are ``node<TAB>node_type``.  Lines starting with ``#`` and blank lines are
skipped, and a single leading header line is tolerated in each file.
"""

from __future__ import annotations

import hashlib
from pathlib import Path

import numpy as np

from .graph import HetMultigraph
from .walks import WalkCorpus

DEFAULT_NODE_TYPE = "default"
EDGE_HEADER = ("src", "dst", "edge_type")
NODE_HEADER = ("node", "node_type")


class ParseError(ValueError):
    def __init__(self, path, lineno, msg):
        super().__init__(f"{path}:{lineno}: {msg}")
        self.path, self.lineno = path, lineno


def _rows(path):
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\r\n")
            if not line.strip() or line.startswith("#"):
                continue
            yield lineno, line.split("\t")


def _is_header(fields, names):
    return tuple(f.strip().lower() for f in fields[: len(names)]) == names


def read_node_types(path) -> list[tuple[str, str]]:
    out = []
    first = True
    for lineno, f in _rows(path):
        if first and _is_header(f, NODE_HEADER):
            first = False
            continue
        first = False
        if len(f) != 2 or not f[0] or not f[1]:
            raise ParseError(path, lineno, "expected node<TAB>node_type")
        out.append((f[0], f[1]))
    return out


def read_edges(path) -> list[tuple[str, str, str, float]]:
    out = []
    first = True
    for lineno, f in _rows(path):
        if first and _is_header(f, EDGE_HEADER):
            first = False
            continue
        first = False
        if len(f) not in (3, 4) or not all(f[:3]):
            raise ParseError(path, lineno, "expected src<TAB>dst<TAB>edge_type[<TAB>weight]")
        if any(c.isspace() for c in f[0] + f[1]):
            raise ParseError(path, lineno, "node names may not contain whitespace")
        w = 1.0
        if len(f) == 4:
            try:
                w = float(f[3])
            except ValueError:
                raise ParseError(path, lineno, f"bad weight {f[3]!r}") from None
            if not (w > 0 and np.isfinite(w)):
                raise ParseError(path, lineno, f"weight must be positive, got {f[3]}")
        out.append((f[0], f[1], f[2], w))
    return out


def build_graph(edges, node_types=None) -> HetMultigraph:
    """Graph from name-level records.

    Node ids follow first appearance in the edge records, then any nodes only
    present in ``node_types``.  Node type ids follow first appearance in the
    type records; nodes without a record get type id 0, named ``default``
    unless a type file already claimed id 0.  Records repeating the same
    endpoints and edge type are merged by summing weights.
    """
    node_index: dict[str, int] = {}
    etype_index: dict[str, int] = {}
    merged: dict[tuple[int, int, int], float] = {}
    for a, b, t, w in edges:
        u = node_index.setdefault(a, len(node_index))
        v = node_index.setdefault(b, len(node_index))
        et = etype_index.setdefault(t, len(etype_index))
        key = (min(u, v), max(u, v), et)
        merged[key] = merged.get(key, 0.0) + w

    ntype_index: dict[str, int] = {}
    assigned: dict[str, int] = {}
    if node_types is not None:
        for name, tname in node_types:
            if name in assigned:
                raise ValueError(f"node {name!r} typed twice")
            assigned[name] = ntype_index.setdefault(tname, len(ntype_index))
        for name in assigned:
            node_index.setdefault(name, len(node_index))
    untyped = [n for n in node_index if n not in assigned]
    if untyped and not ntype_index:
        ntype_index[DEFAULT_NODE_TYPE] = 0
    ntypes = np.zeros(len(node_index), dtype=np.int64)
    for name, t in assigned.items():
        ntypes[node_index[name]] = t

    keys = list(merged)
    src = [k[0] for k in keys]
    dst = [k[1] for k in keys]
    ets = [k[2] for k in keys]
    return HetMultigraph.from_edges(
        src, dst, ets, [merged[k] for k in keys], ntypes,
        node_names=list(node_index),
        node_type_names=list(ntype_index) or [DEFAULT_NODE_TYPE],
        edge_type_names=list(etype_index),
    )


def load_graph(edge_path, node_type_path=None, strict_types: bool = True) -> HetMultigraph:
    edges = read_edges(edge_path)
    node_types = None
    if node_type_path is not None:
        node_types = read_node_types(node_type_path)
        if strict_types:
            seen = {a for a, _, _, _ in edges} | {b for _, b, _, _ in edges}
            for name, _ in node_types:
                if name not in seen:
                    raise ValueError(f"{node_type_path}: node {name!r} does not occur in {edge_path}")
    return build_graph(edges, node_types)


def write_walks(corpus: WalkCorpus, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for walk in corpus.as_names():
            fh.write(" ".join(walk))
            fh.write("\n")


def read_walks(path, graph: HetMultigraph | None = None) -> WalkCorpus:
    """Read a corpus.

    With ``graph``, names map to its node ids and unknown names are rejected.
    Without it, ids go to walk start nodes in line order, then to the
    remaining names by first appearance; for a corpus written from
    :func:`generate_walks` this reproduces the graph's id order.
    """
    with open(path, encoding="utf-8") as fh:
        lines = [(lineno, line.split()) for lineno, line in enumerate(fh, 1)]
    lines = [(lineno, toks) for lineno, toks in lines if toks]
    if graph is not None:
        names = graph.node_names
        lookup = graph.node_id
    else:
        index: dict[str, int] = {}
        for _, toks in lines:
            index.setdefault(toks[0], len(index))
        for _, toks in lines:
            for t in toks:
                index.setdefault(t, len(index))
        names = list(index)
        lookup = index.__getitem__
    walks = []
    for lineno, toks in lines:
        try:
            walks.append(np.array([lookup(t) for t in toks], dtype=np.int64))
        except KeyError as exc:
            raise ValueError(f"{path}:{lineno}: {exc.args[0]}") from None
    return WalkCorpus(walks, names)


def write_embeddings(vectors: np.ndarray, names, path) -> None:
    """``<rows> <dims>`` header, then ``<name> v1 ... vd`` in row order.

    Values use ``repr`` so they parse back to the same float64.
    """
    vectors = np.asarray(vectors, dtype=np.float64)
    if vectors.ndim != 2 or len(vectors) != len(names):
        raise ValueError("vectors must be a (len(names), dims) matrix")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"{vectors.shape[0]} {vectors.shape[1]}\n")
        for name, row in zip(names, vectors):
            fh.write(" ".join([name, *(_fmt(x) for x in row)]))
            fh.write("\n")


def _fmt(x: float) -> str:
    if x == 0:
        return "0"
    s = repr(float(x))
    return s[:-2] if s.endswith(".0") else s


def read_embeddings(path) -> tuple[list[str], np.ndarray]:
    with open(path, encoding="utf-8") as fh:
        n, d = map(int, fh.readline().split())
        names, rows = [], []
        for line in fh:
            toks = line.rstrip("\n").split(" ")
            if len(toks) != d + 1:
                raise ValueError(f"{path}: expected {d} values for {toks[0]!r}")
            names.append(toks[0])
            rows.append([float(t) for t in toks[1:]])
    if len(names) != n:
        raise ValueError(f"{path}: header says {n} rows, found {len(names)}")
    return names, np.array(rows, dtype=np.float64).reshape(n, d)


def file_digest(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()
