"""Cache-conscious reordering of tree nodes inside a slot arena."""

from .arena import (
    ArenaFull, MemoryRegion, NodeFormat, NodeView, SlotArena,
    NONE_LINK,
)
from .freq import AccessModel
from .trees import (
    AVLTree, BPlusTree, BSTree, Octree, TreeHandle,
    TREE_KINDS, make_format, new_tree,
)
from .reorder import (
    ALGORITHMS, MERGE_SORT_FAMILY, PATH_REORDER_FAMILY,
    CycleStats, ReorderMap,
    build_merge_sort_map, build_path_reorder_map, cycle_stats, invert_map,
    map_buffer_merge_sort, map_path_reorder, map_reorder,
    map_shell_merge_sort, native_buffer_merge_sort, native_path_reorder,
    native_shell_merge_sort,
)
from .policy import (
    PolicyConfig, ReorderReport, after_tree_op_hook,
    evaluate_access_threshold, evaluate_ratio_threshold,
)
from .bench import (
    RunMetrics, WorkloadSpec,
    bench_offline_potential, bench_online, bench_reorder_algorithms,
    build_tree, clone_state, emit_csv, generate_workload,
    online_threshold_sweep, profile_reads, shuffle_layout, two_region_split,
)

__version__ = "0.1.0"
