"""Cache-enabled uplink small-cell simulator."""

from ._upcache import (
    AggregateMetrics,
    ConfigError,
    ContractViolation,
    EpisodeMetrics,
    FileCatalog,
    InvariantViolation,
    PolicyKind,
    Selection,
    SimConfig,
    build_catalog,
    cbs,
    execute_command,
    run_episode,
    run_monte_carlo,
    solve_dp,
    solve_exhaustive,
    solve_greedy,
    zipf_pmf,
)

__all__ = [
    "AggregateMetrics",
    "ConfigError",
    "ContractViolation",
    "EpisodeMetrics",
    "FileCatalog",
    "InvariantViolation",
    "PolicyKind",
    "Selection",
    "SimConfig",
    "build_catalog",
    "cbs",
    "execute_command",
    "run_episode",
    "run_monte_carlo",
    "solve_dp",
    "solve_exhaustive",
    "solve_greedy",
    "zipf_pmf",
]
