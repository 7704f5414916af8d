"""Coalition worth and core stability under differentiated Cournot competition."""

from ._core import (
    BeliefMode,
    BudgetExceeded,
    CoalitionStructure,
    DomainError,
    EquilibriumProfile,
    MarketParams,
    NumericError,
    ScanReport,
    StabilityVerdict,
    ThresholdReport,
    WorthReport,
    belief_verdict,
    closed_form_equilibrium,
    coalition_worth,
    core_check,
    enumerate_partitions,
    exhaustive_scan,
    grand_worth,
    make_structure,
    max_worth_partition,
    min_worth_partition,
    partition_count,
    solve_foc_system,
    threshold_gamma1,
    threshold_zeta,
    validate_params,
)

__all__ = [name for name in dir() if not name.startswith("_")]
