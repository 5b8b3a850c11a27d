"""Exact combinatorics for matchings of permutations with a fixed number of cycles."""

from .errors import CapacityError, CyclematchError, InvalidInputError
from .family import (
    AnchorSpec,
    Family,
    anchored_family,
    extremal_family,
    family_filter,
    family_intersection,
    family_union,
    shared_enumeration,
    union_size_pie,
)
from .matching import (
    DisjointnessGraph,
    Matching,
    avoid_cycles,
    enumerate_matchings,
    extend_matching,
    extend_matching_multi,
    is_matching,
    nu_p,
)
from .perms import (
    Cycle,
    CyclePerm,
    SnkEnumeration,
    canonicalize,
    contains_cycle,
    cycle_set,
    enumerate_snk,
    parse_perm,
    to_mapping,
)
from .search import EmcInstance, EmcResult, Limits, emc_exact, emc_exact_s1, is_extremal_form, sweep
from .stirling import (
    BoundValue,
    StirlingTable,
    binomial,
    check_alternating_lower_bound,
    check_lemma_ratio_diag,
    check_lemma_ratio_down,
    emc_bound,
    stirling_unsigned,
)

__version__ = "0.1.0"
