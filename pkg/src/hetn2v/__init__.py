"""Type-aware second-order random walks (node and edge switching) and
skip-gram embeddings for heterogeneous multigraphs."""

from importlib.resources import files

from .bias import (BiasParams, PairwiseDirected, PairwiseSymmetric, SpecialSet, Uniform,
                   edge_switch_factor, gamma, node_switch_factor)
from .embedding import EmbeddingMatrix, SgnsConfig, build_vocab, cosine_neighbors, train
from .graph import EdgeInstance, HetMultigraph
from .io import load_graph, read_embeddings, read_walks, write_embeddings, write_walks
from .stats import WalkReport, walk_stats
from .walks import (DeadEnd, WalkConfig, WalkCorpus, WalkerState, first_step, generate_walks,
                    sample_many, sample_next, transition_distribution)


def demo_paths():
    """Edge and node-type files of the bundled gene/disease demo graph."""
    data = files(__name__) / "data"
    return str(data / "demo_edges.tsv"), str(data / "demo_node_types.tsv")
