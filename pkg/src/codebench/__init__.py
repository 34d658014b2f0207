"""Binary linear code workbench: minimum distance by revolving-door
enumeration and design-scheduled equivalence deduplication."""

__version__ = "0.1.0"

from .gf2core import (
    Codeword,
    GeneratorMatrix,
    WeightEnumerator,
    dual,
    inner_product,
    is_self_dual,
    is_self_orthogonal,
    rref,
    weight,
    weight_enumerator,
    xor_combine,
)
from .graygen import (
    ConstantWeightIterator,
    GrayState,
    SwapDelta,
    constant_weight_sequence,
    rank,
    swap_deltas,
    unrank,
)
from .mindist import (
    DistanceReport,
    min_distance_direct,
    min_distance_gray,
    min_distance_parallel,
)
from .equiv import CodeRecord, CodeSet, are_equivalent, eq_sets, find_equivalence, reduce_set
from .designsched import (
    Design,
    Schedule,
    fano_plane,
    make_schedule,
    naive_pair_count,
    run_dedup,
    validate_design,
)

__all__ = [
    "CodeRecord", "CodeSet", "Codeword", "ConstantWeightIterator", "Design", "DistanceReport",
    "GeneratorMatrix", "GrayState", "Schedule", "SwapDelta", "WeightEnumerator",
    "are_equivalent", "constant_weight_sequence", "dual", "eq_sets", "fano_plane",
    "find_equivalence", "inner_product", "is_self_dual", "is_self_orthogonal", "make_schedule",
    "min_distance_direct", "min_distance_gray", "min_distance_parallel", "naive_pair_count",
    "rank", "reduce_set", "rref", "run_dedup", "swap_deltas", "unrank", "validate_design",
    "weight", "weight_enumerator", "xor_combine",
]
