"""Desk-scale laboratory for size-Ramsey experiments: bounded cycles versus paths.

Core pieces: bitset graphs and boundary primitives (graphs), seeded random
models including the pairing model (randgraphs), edge colorings with the
blue-path grower and red-forest adversary strategies (coloring), exact
arrowing oracles and the two-round cycle closer (arrowing), and the
closed-form bound calculators (bounds). The command-line front end lives in
cli.
"""

__version__ = "0.1.0"

from .graphs import (  # noqa: F401
    Graph,
    MultiGraph,
    VertexSet,
    WorkBudgetError,
    edges_between,
    format_edge_list,
    greedy_max_independent,
    has_cycle_at_most,
    high_degree_set,
    is_forest,
    parse_edge_list,
    spanning_forest,
    square_graph,
)
from .randgraphs import (  # noqa: F401
    BipartiteGraph,
    Pairing,
    RandomSource,
    SamplingError,
    TwoRoundUnion,
    bipartite_gnp,
    gnp,
    project,
    random_pairing,
    random_regular,
    two_round_union,
)
from .coloring import (  # noqa: F401
    EdgeColoring,
    GrowerOutcome,
    SeparatorCertificate,
    TwoCaseOutcome,
    arrows_by_expansion,
    grow_blue_path,
    random_coloring,
    spanning_tree_strategy,
    star_strategy,
    two_case_strategy,
)
from .arrowing import (  # noqa: F401
    ArrowDecision,
    ArrowQuery,
    CycleWitness,
    ExpansionEstimate,
    GraphPattern,
    SizeRamseyBound,
    arrows_exact,
    chord_candidates,
    close_cycle,
    min_size_ramsey_exact,
    monte_carlo_expansion,
    ramsey_cycles_vs_clique,
    split_for_closing,
    subgraph_masks,
)
from . import bounds  # noqa: F401
