"""Parallel chip-firing games on finite connected graphs."""

from fractions import Fraction

from ._chipfire import (
    BudgetExceeded,
    Falsification,
    Graph,
    InputError,
    assignment,
    canonical_code,
    complement,
    conjugate,
    enumerate_connected,
    find_cycle,
    staircase,
    step,
    verify,
    verify_theorem2,
)

__all__ = [
    "BudgetExceeded",
    "Falsification",
    "Graph",
    "InputError",
    "activity",
    "assignment",
    "canonical_code",
    "complement",
    "conjugate",
    "enumerate_connected",
    "find_cycle",
    "staircase",
    "step",
    "verify",
    "verify_theorem2",
]


def activity(graph, sigma, **kwargs):
    """Exact fraction of (vertex, round) pairs that fire on the eventual cycle."""
    p, q = find_cycle(graph, sigma, **kwargs)["activity"]
    return Fraction(p, q)
