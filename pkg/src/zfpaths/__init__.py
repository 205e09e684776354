"""Zero forcing, chain decompositions, parallel-path drawings, and maximum
nullity bounds for graphs of maximum degree three."""

from .graphs import (
    Graph,
    canonical_form,
    encode_graph6,
    enumerate_connected_subcubic,
    is_induced_path,
    parse_graph6,
)
from .forcing import ForcingOutcome, ForcingRun, closure, forcing_number, is_forcing_set, total_forcing_number
from .chains import (
    Chain,
    ChainSet,
    bad_vertices,
    chains_for,
    check_order_lemmas,
    eliminate_bad,
    eliminate_unfavorite,
    extract_chains,
    unfavorite_vertices,
)
from .drawing import (
    LadderDrawing,
    StandardDrawing,
    build_parallel_drawing,
    build_standard_drawing,
    ladder_drawing,
    leftmost_set,
    place_third,
    render,
    search_drawing,
    verify_drawing,
)
from .nullity import (
    Classification,
    NullityCertificate,
    PatternMatrix,
    classify,
    is_figure8,
    maximize_nullity,
    nullity_of,
    spectrum,
)
from .harness import SuiteReport, diff_reports, run_suite

__version__ = "0.1.0"
