"""Popularity in additively separable and fractional hedonic games."""

from .enumeration import bell_number, enumerate_partitions
from .errors import BudgetExceeded, InvalidArgument, ParseError, PreconditionError, SchemaError
from .falsify import falsify_popularity
from .gadgets import five_agent_noinstance, star_game
from .model import HedonicGame, Kind, Partition, Preference, compare, partition_utility, utility
from .popularity import (
    MarginBreakdown, Mode, PopularityReport, Verdict, find_pareto_improvement,
    find_popular, is_pareto_optimal, popularity_margin, verify_popular,
)
from .qsat import QDnfInstance, eval_dnf, qsat_solve

__all__ = [
    "BudgetExceeded", "HedonicGame", "InvalidArgument", "Kind", "MarginBreakdown", "Mode",
    "ParseError", "Partition", "PopularityReport", "PreconditionError", "Preference",
    "QDnfInstance", "SchemaError", "Verdict", "bell_number", "compare", "enumerate_partitions",
    "eval_dnf", "falsify_popularity", "find_pareto_improvement", "find_popular",
    "five_agent_noinstance", "is_pareto_optimal", "partition_utility", "popularity_margin",
    "qsat_solve", "star_game", "utility", "verify_popular",
]
