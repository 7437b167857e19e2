"""Verification and exploration toolkit for the poset of connected graphs
on a labeled vertex set, ordered by edge inclusion."""

from .graphs import (
    EdgeSet,
    LevelCensus,
    edge_slot,
    enumerate_level,
    is_connected,
    level_census,
    shadow,
    slot_count,
    slot_edge,
    upper_shadow,
)
from .connectivity import (
    MultiGraph,
    RemovabilityReport,
    Skeleton,
    bridges,
    contract_set,
    is_cactus,
    is_chorded_cycle_free,
    is_two_edge_connected,
    removable_edges,
    removal_condensation,
    skeleton,
)
from .poset import (
    ChainPartition,
    ChainPartitionError,
    MatchingResult,
    SpernerReport,
    WidthResult,
    adjacent_level_matching,
    chain_partition,
    sperner_verdict,
    width_dilworth,
)
from .bounds import (
    BoundReport,
    LogValue,
    appendix_property_check,
    binom_inverse,
    disconnected_report,
    ext_binom,
    i_r_census,
    lovasz_check,
    shadow_ratio_report,
    squares_check,
    tech_inequality_eval,
    technical_lemma_check,
)
from .quotient import (
    IsoClass,
    canonical_form,
    connected_classes,
    cprime_search,
    cprime_sperner,
    is_hamiltonian,
    property_poset_report,
    quotient_poset,
    quotient_sperner,
)
from .limits import BudgetExceededError

__version__ = "0.1.0"
