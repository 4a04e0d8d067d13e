"""Named instances for tests, benchmarks, and the command line."""

from __future__ import annotations

from functools import lru_cache

from . import groups
from .groups import ExploredBall, GeneratedSystem

#: name -> (system builder, default horizon)
_ENTRIES = {
    "z": (lambda: groups.free_abelian(1), 8),
    "z2": (lambda: groups.free_abelian(2), 6),
    "z3": (lambda: groups.free_abelian(3), 6),
    "f2": (lambda: groups.free_group(2), 6),
    "heisenberg": (lambda: groups.heisenberg(), 8),
    "c6": (lambda: groups.cyclic(6), 8),
    "c8": (lambda: groups.cyclic(8), 8),
    "c12": (lambda: groups.cyclic(12), 12),
    "c16": (lambda: groups.cyclic(16), 16),
    "c32": (lambda: groups.cyclic(32), 32),
    "c64": (lambda: groups.cyclic(64), 64),
    "q3": (lambda: groups.hypercube(3), 4),
    "q4": (lambda: groups.hypercube(4), 5),
    "q6": (lambda: groups.hypercube(6), 8),
    "d4": (lambda: groups.dihedral(4), 8),
    "d8": (lambda: groups.dihedral(8), 10),
    "s3": (lambda: groups.symmetric_group(3, "transpositions"), 6),
    "s4": (lambda: groups.symmetric_group(4, "adjacent"), 10),
    "s3_points": (
        lambda: groups.permutation_action("s3_points", [(1, 0, 2), (2, 1, 0), (0, 2, 1)]),
        4,
    ),
    "s4_points": (
        lambda: groups.permutation_action(
            "s4_points",
            [
                (1, 0, 2, 3),
                (2, 1, 0, 3),
                (3, 1, 2, 0),
                (0, 2, 1, 3),
                (0, 3, 2, 1),
                (0, 1, 3, 2),
            ],
        ),
        4,
    ),
}


def names() -> list[str]:
    return sorted(_ENTRIES)


def system(name: str) -> GeneratedSystem:
    try:
        builder, _ = _ENTRIES[name]
    except KeyError:
        raise KeyError(f"unknown instance {name!r}; known: {', '.join(names())}") from None
    return builder()


def default_horizon(name: str) -> int:
    return _ENTRIES[name][1]


@lru_cache(maxsize=None)
def build(name: str, horizon: int | None = None, max_vertices: int = 500_000) -> ExploredBall:
    """Explore a named instance, memoized per (name, horizon)."""
    if horizon is None:
        horizon = default_horizon(name)
    return groups.explore(system(name), horizon, max_vertices)
