"""Exact counting and enumeration of arithmetic-progression partitions of Z_n."""

from .enumeration import (
    APBlock,
    APPartition,
    PartitionType,
    SeparationSpec,
    all_types,
    block_elements,
    count_ap_partitions,
    count_separated_subsets,
    enumerate_ap_partitions,
    enumerate_dissections,
    enumerate_separated_subsets,
    format_type,
    parse_type,
    partition_to_subset,
    residue_compose,
    residue_decompose,
    scale_partition,
    subset_to_partition,
)
from .formulas import (
    DeltaClassification,
    Method,
    NoClosedForm,
    boundary_rhs_x,
    clubsuit,
    count_auto,
    count_cor1,
    count_cor2,
    count_mansour_sun,
    count_subsets_auto,
    count_theorem_boundary,
    count_theorem_general,
    cwz_condition,
    delta_classify,
    general_x_sum,
    hwang_g,
    multi_sum_count,
)
from .identity import RMInstance, rm_check, rm_lhs, rm_random_suite, rm_rhs
from .numeric import (
    cyclic_multinomial,
    egcd,
    find_scaling_unit,
    gcd,
    gen_multinomial,
    guarded_cyclic_term,
    inverse_mod,
    limit0_multinomial,
    multinomial,
)

__version__ = "0.1.0"
