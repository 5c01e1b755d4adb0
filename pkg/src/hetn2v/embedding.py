"""Skip-gram with negative sampling over walk corpora.

Every (center, context) pair within the window contributes

    loss = -log sigmoid(u . v_ctx) - sum_k log sigmoid(-u . v_neg_k)

where ``u`` is the center's input vector and ``v`` are output vectors.  The
learning rate decays linearly from ``initial_lr`` to ``min_lr`` over all
epochs.  Random draws for a center token are keyed by (seed, epoch, token
position), so with one thread training is deterministic.  With more threads,
workers update the shared matrices without locks.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from numba import njit

from .rng import as_seed, stream_key, uniform
from .walks import WalkCorpus


@dataclass(frozen=True)
class SgnsConfig:
    dims: int = 64
    window: int = 5
    negatives: int = 5
    epochs: int = 5
    initial_lr: float = 0.025
    min_lr: float = 0.0001
    seed: int = 0
    dynamic_window: bool = True
    threads: int = 1

    def __post_init__(self):
        for name in ("dims", "window", "negatives", "threads"):
            if int(getattr(self, name)) < 1:
                raise ValueError(f"{name} must be >= 1")
        if self.epochs < 0:
            raise ValueError("epochs must be >= 0")
        if not 0 <= self.min_lr <= self.initial_lr or not self.initial_lr > 0:
            raise ValueError("need 0 <= min_lr <= initial_lr and initial_lr > 0")


@dataclass(eq=False)
class EmbeddingMatrix:
    vectors: np.ndarray  # input vectors, the published embedding
    context: np.ndarray  # output vectors
    names: list
    epoch_loss: list = field(default_factory=list)

    def __len__(self):
        return len(self.vectors)


def build_vocab(corpus: WalkCorpus) -> np.ndarray:
    """Occurrence count per node id; nodes never visited count 0."""
    ids, _ = corpus.flat()
    if len(ids) == 0:
        raise ValueError("empty corpus")
    return np.bincount(ids, minlength=len(corpus.node_names)).astype(np.int64)


def negative_distribution(counts: np.ndarray, power: float = 0.75) -> np.ndarray:
    w = np.asarray(counts, dtype=np.float64) ** power
    return w / w.sum()


def init_vectors(n: int, dims: int, seed: int) -> tuple[np.ndarray, np.ndarray]:
    rng = np.random.default_rng(seed)
    vin = rng.uniform(-0.5 / dims, 0.5 / dims, size=(n, dims))
    return vin, np.zeros((n, dims))


# --- kernels -----------------------------------------------------------------

@njit(cache=True, nogil=True, inline="always")
def _log_sigmoid(x):
    if x >= 0:
        return -np.log1p(np.exp(-x))
    return x - np.log1p(np.exp(x))


@njit(cache=True, nogil=True, inline="always")
def _sigmoid(x):
    if x >= 0:
        return 1.0 / (1.0 + np.exp(-x))
    z = np.exp(x)
    return z / (1.0 + z)


@njit(cache=True, nogil=True)
def sgns_loss(u, v_pos, v_negs):
    loss = -_log_sigmoid(np.dot(u, v_pos))
    for k in range(v_negs.shape[0]):
        loss -= _log_sigmoid(-np.dot(u, v_negs[k]))
    return loss


@njit(cache=True, nogil=True)
def sgns_grad(u, v_pos, v_negs):
    """Loss and its gradients with respect to ``u``, ``v_pos`` and each ``v_negs[k]``."""
    s = np.dot(u, v_pos)
    loss = -_log_sigmoid(s)
    g = _sigmoid(s) - 1.0
    g_u = g * v_pos
    g_pos = g * u
    g_negs = np.empty_like(v_negs)
    for k in range(v_negs.shape[0]):
        sk = np.dot(u, v_negs[k])
        loss -= _log_sigmoid(-sk)
        gk = _sigmoid(sk)
        g_u += gk * v_negs[k]
        g_negs[k] = gk * u
    return loss, g_u, g_pos, g_negs


@njit(cache=True, nogil=True)
def _draw(cdf, u):
    i = np.searchsorted(cdf, u * cdf[-1], side="right")
    return min(i, len(cdf) - 1)


@njit(cache=True, nogil=True)
def _train_range(ids, walk_of, offsets, tok_lo, tok_hi, vin, vout, cdf,
                 window, dynamic, negatives, lr0, lr_min, epoch, epochs, seed, stats):
    total = len(ids)
    dims = vin.shape[1]
    negs = np.empty((negatives, dims))
    neg_ids = np.empty(negatives, dtype=np.int64)
    loss_sum = 0.0
    pairs = 0
    for pos in range(tok_lo, tok_hi):
        progress = (epoch * total + pos) / (epochs * total)
        lr = lr0 - (lr0 - lr_min) * progress
        key = stream_key(seed, epoch, pos)
        draws = 0
        b = window
        if dynamic:
            b = 1 + int(uniform(key, draws) * window)
            draws += 1
        w = walk_of[pos]
        lo = max(offsets[w], pos - b)
        hi = min(offsets[w + 1], pos + b + 1)
        center = ids[pos]
        for cpos in range(lo, hi):
            if cpos == pos:
                continue
            ctx = ids[cpos]
            n = 0
            for _ in range(negatives):
                j = _draw(cdf, uniform(key, draws))
                draws += 1
                if j == ctx:
                    continue
                neg_ids[n] = j
                negs[n] = vout[j]
                n += 1
            loss, g_u, g_pos, g_negs = sgns_grad(vin[center], vout[ctx], negs[:n])
            for k in range(n):
                vout[neg_ids[k]] -= lr * g_negs[k]
            vout[ctx] -= lr * g_pos
            vin[center] -= lr * g_u
            loss_sum += loss
            pairs += 1
    stats[0] += loss_sum
    stats[1] += pairs


def train(corpus: WalkCorpus, cfg: SgnsConfig) -> EmbeddingMatrix:
    """One embedding row per entry of ``corpus.node_names``."""
    counts = build_vocab(corpus)
    n = len(counts)
    names = list(corpus.node_names)
    ids, offsets = corpus.flat()
    walk_of = np.repeat(np.arange(len(corpus), dtype=np.int64), np.diff(offsets))
    cdf = np.cumsum(negative_distribution(counts))
    vin, vout = init_vectors(n, cfg.dims, cfg.seed)
    seed = as_seed(cfg.seed)
    threads = min(int(cfg.threads), len(ids))
    bounds = np.linspace(0, len(ids), threads + 1).astype(np.int64)
    losses = []
    for epoch in range(cfg.epochs):
        stats = np.zeros((threads, 2))

        def run(i):
            _train_range(ids, walk_of, offsets, bounds[i], bounds[i + 1], vin, vout, cdf,
                         int(cfg.window), bool(cfg.dynamic_window), int(cfg.negatives),
                         float(cfg.initial_lr), float(cfg.min_lr), epoch, int(cfg.epochs),
                         seed, stats[i])

        if threads == 1:
            run(0)
        else:
            with ThreadPoolExecutor(threads) as pool:
                list(pool.map(run, range(threads)))
        total = stats.sum(axis=0)
        losses.append(float(total[0] / max(total[1], 1)))
    return EmbeddingMatrix(vin, vout, names, losses)


def cosine_similarity(a: np.ndarray, b: np.ndarray) -> float:
    na, nb = np.linalg.norm(a), np.linalg.norm(b)
    if na == 0 or nb == 0:
        return 0.0
    return float(np.dot(a, b) / (na * nb))


def cosine_matrix(vectors: np.ndarray) -> np.ndarray:
    norms = np.linalg.norm(vectors, axis=1)
    safe = np.where(norms == 0, 1.0, norms)
    unit = vectors / safe[:, None]
    sim = unit @ unit.T
    zero = norms == 0
    sim[zero, :] = 0.0
    sim[:, zero] = 0.0
    return sim


def cosine_neighbors(m: EmbeddingMatrix, v: int, top_k: int = 10) -> list[tuple[int, float]]:
    """The ``top_k`` most cosine-similar nodes to ``v``, excluding ``v``."""
    x = m.vectors
    norms = np.linalg.norm(x, axis=1)
    nv = norms[v]
    sims = np.zeros(len(x))
    ok = (norms > 0) & (nv > 0)
    sims[ok] = x[ok] @ x[v] / (norms[ok] * nv)
    sims[v] = -np.inf
    order = np.argsort(-sims, kind="stable")[: min(top_k, len(x) - 1)]
    return [(int(i), float(sims[i])) for i in order]
