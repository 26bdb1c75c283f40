"""Generation of the symmetric group by three prefix reversals, and the
cubic Cayley graphs they define."""

from .perm import Perm, ReversalWord, compose, identity, reversal, word_eval
from .grouptest import GeneratorSet, generates_sym, generator_set, group_order
from .classifier import (
    Status,
    Triple,
    Verdict,
    Witness,
    build_generates_witness,
    classify,
    verify_certificate,
    verify_witness,
)
from .cayley import (
    CubicPancakeGraph,
    GraphMetrics,
    bfs_levels,
    girth_classes,
    graph_metrics,
    hamiltonian_cycle,
)

__version__ = "0.1.0"

__all__ = [
    "Perm",
    "ReversalWord",
    "compose",
    "identity",
    "reversal",
    "word_eval",
    "GeneratorSet",
    "generator_set",
    "generates_sym",
    "group_order",
    "Status",
    "Triple",
    "Verdict",
    "Witness",
    "build_generates_witness",
    "classify",
    "verify_certificate",
    "verify_witness",
    "CubicPancakeGraph",
    "GraphMetrics",
    "bfs_levels",
    "girth_classes",
    "graph_metrics",
    "hamiltonian_cycle",
    "__version__",
]
