"""Certifying engine for spectral Turan-type stability.

Peel edges out of dense (r+1)-clique joints, then either exhibit a large
complete (r+1)-partite subgraph or an explicit edit set to the Turan graph.
Both outcomes come with an independent checker.
"""

from .cliques import CliqueStats, clique_stats, count_cliques, count_cliques_bruteforce, joints_number
from .edgelist import format_edge_list, parse_edge_list, read_edge_list, write_edge_list
from .errors import (
    BudgetExceeded,
    ConvergenceError,
    CountOverflowError,
    EdgeListParseError,
    ExtractionFailed,
    InvalidEditError,
    TooLargeError,
)
from .graph import (
    EditSet,
    Graph,
    apply_edits,
    complete_multipartite,
    min_edit_to_turan_bruteforce,
    random_graph_fixed_edges,
    random_graph_gnp,
    turan_graph,
    turan_part_sizes,
)
from .multipartite import (
    MultipartiteWitness,
    find_complete_multipartite,
    find_kr_s_t,
    verify_multipartite_witness,
)
from .spectral import SpectralResult, spectral_radius, sqrt_edge_bound, weyl_gap_check
from .stability import (
    ConditionA,
    ConditionB,
    Params,
    Verdict,
    check_certificate,
    derived_params,
    extract_rpartite,
    procedure_p,
    stability_dichotomy,
    trim_and_complete,
)

__version__ = "0.1.0"
