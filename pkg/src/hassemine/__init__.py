"""Mining partial-order concepts from event sequences."""

__version__ = "0.1.0"

from .errors import (
    CyclicInput,
    DimensionMismatch,
    EmptyInput,
    EmptyJ,
    EmptyRestriction,
    EmptyTerm,
    HassemineError,
    InvalidMode,
    InvalidPolicy,
    InvalidThreshold,
    LabelMismatch,
    LabelNotInUniverse,
    MissingClass,
    NotLayered,
    NotSimple,
    TooManyLabels,
    UnknownLabel,
)
from .graphs import (
    BoolMatrix,
    Digraph,
    LabelTable,
    is_dag,
    is_quasi_skeleton,
    path_matrix,
    r_set,
    restrict,
    to_dot,
    transitive_closure,
    transitive_reduction,
)
from .enumeration import (
    LABELED_POSET_COUNTS,
    MAX_LABELS,
    CategoryRJ,
    enumerate_category,
    generalizations,
    has_morphism,
)
from .sequences import (
    EventSequence,
    SubsetSequence,
    as_subset_sequence,
    flattenings,
    gts,
    is_consistent,
    restrict_sequence,
    stg,
)
from .mining import (
    ClusterOutput,
    OccurrenceIndex,
    RelevanceTable,
    common_matrix,
    hasse_cluster,
    relevance_scores,
    seq_to_matrix,
)
from .baselines import (
    Dendrogram,
    MatrixPointSet,
    cluster_common_matrices,
    cut,
    dbscan,
    hierarchical,
    l1_distance,
)
from .game import (
    Episode,
    GameConfig,
    V1_EVENTS,
    V2_EVENTS,
    corrupt,
    corrupt_sequences,
    extract_events,
    simulate,
    v1_config,
    v2_config,
)
from .io import (
    SequenceRecords,
    dump_sequences,
    episode_row,
    load_matrix_csv,
    load_sequences,
    parse_sequences,
    save_episodes,
    save_matrix_csv,
    save_sequences,
)
from .estimators import (
    AgglomerativeL1,
    HasseClustering,
    MatrixDBSCAN,
    ParamsMixin,
    RelevanceScorer,
    SequenceMatrixEncoder,
)

__all__ = [
    "BoolMatrix",
    "Digraph",
    "LabelTable",
    "is_dag",
    "is_quasi_skeleton",
    "path_matrix",
    "r_set",
    "restrict",
    "to_dot",
    "transitive_closure",
    "transitive_reduction",
    "LABELED_POSET_COUNTS",
    "MAX_LABELS",
    "CategoryRJ",
    "enumerate_category",
    "generalizations",
    "has_morphism",
    "EventSequence",
    "SubsetSequence",
    "as_subset_sequence",
    "flattenings",
    "gts",
    "is_consistent",
    "restrict_sequence",
    "stg",
    "ClusterOutput",
    "OccurrenceIndex",
    "RelevanceTable",
    "common_matrix",
    "hasse_cluster",
    "relevance_scores",
    "seq_to_matrix",
    "Dendrogram",
    "MatrixPointSet",
    "cluster_common_matrices",
    "cut",
    "dbscan",
    "hierarchical",
    "l1_distance",
    "Episode",
    "GameConfig",
    "V1_EVENTS",
    "V2_EVENTS",
    "corrupt",
    "corrupt_sequences",
    "extract_events",
    "simulate",
    "v1_config",
    "v2_config",
    "SequenceRecords",
    "dump_sequences",
    "episode_row",
    "load_matrix_csv",
    "load_sequences",
    "parse_sequences",
    "save_episodes",
    "save_matrix_csv",
    "save_sequences",
    "AgglomerativeL1",
    "HasseClustering",
    "MatrixDBSCAN",
    "ParamsMixin",
    "RelevanceScorer",
    "SequenceMatrixEncoder",
    "HassemineError",
    "CyclicInput",
    "DimensionMismatch",
    "EmptyInput",
    "EmptyJ",
    "EmptyRestriction",
    "EmptyTerm",
    "InvalidMode",
    "InvalidPolicy",
    "InvalidThreshold",
    "LabelMismatch",
    "LabelNotInUniverse",
    "MissingClass",
    "NotLayered",
    "NotSimple",
    "TooManyLabels",
    "UnknownLabel",
]
