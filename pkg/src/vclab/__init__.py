"""Inclusion graphs of set families: transforms, dimensions, density checks."""

from .errors import (
    BadElement,
    BadFormat,
    BadPair,
    BadParam,
    CapExceeded,
    CliqueBudgetExceeded,
    DuplicateSet,
    EmptyFamily,
    NotEvenFamily,
    PreconditionViolated,
    SearchBudgetExceeded,
    TableMismatch,
    VCLabError,
)
from .family import (
    WORD_CAP,
    FamilySummary,
    GroundSet,
    SetFamily,
    bit_values,
    classify_family,
    elements_of,
    family_from_json_obj,
    family_to_json_obj,
    format_word,
    lift,
    parse_family,
    serialize_family,
    twist,
    word_from_elements,
)
from .graphs import (
    CliqueClass,
    CliqueKind,
    EdgeKind,
    GraphMode,
    GraphStats,
    InclusionGraph,
    build_graph,
    classify_pointed_clique,
    degeneracy_order,
    edge_kind,
    graph_stats,
    graph_to_edge_list_text,
    graph_to_json_obj,
    make_halved_cube,
    make_johnson,
    max_clique,
)
from .shifting import (
    BouquetKind,
    BouquetPropertyReport,
    ShiftStep,
    ShiftTrace,
    bouquet_kind,
    check_bouquet_properties,
    complete_classical_shift,
    complete_d_shift,
    d_shift,
    is_downward_closed,
    is_halved_cube_bouquet,
    shift_classical,
    trace_to_json_obj,
)
from .dimensions import (
    CShatterWitness,
    DimensionReport,
    ProjectionContext,
    SShatterWitness,
    ShatterWitness,
    StarDimension,
    TwoVCWitness,
    VcsReport,
    compute_dimensions,
    is_c_shattered,
    is_s_shattered,
    project,
    report_to_json_obj,
    two_vc_dim,
    vccdim_pointed,
    vccdim_star,
    vcd,
    vcsdim_pointed,
    vcsdim_star,
)
from .lab import (
    DensityReport,
    ExploreConfig,
    ExplorationRecord,
    GenConfig,
    PropertyReport,
    TableReport,
    explore_questions,
    family_digest,
    gen_named,
    gen_random,
    reproduce_table,
    verify_bouquet_pipeline,
    verify_density,
    verify_shift_step,
)
from .rng import SplitMix64, derive_seed

__version__ = "0.1.0"
