"""Finitely generated systems and breadth first window exploration.

A :class:`GeneratedSystem` is a base state together with a symmetric tuple
of moves (state to state callables).  For a Cayley construction the states
are group elements and each move is left multiplication by a generator;
for a Schreier construction the states are points of an orbit and each
move applies a generator permutation.

:func:`explore` walks the system breadth first out to a horizon and
returns the induced graph on every state within that distance, stored in
CSR form.  Vertices are indexed in discovery order, the base state is
vertex 0.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Hashable, Sequence

import numpy as np


class ResourceCapError(RuntimeError):
    """Raised when exploration would exceed the configured vertex budget."""


@dataclass(frozen=True)
class GeneratedSystem:
    """Base state plus a symmetric tuple of generator moves.

    ``multiply``/``invert`` are optional and only present for group
    constructions where whole-group translation is meaningful.  For
    permutation actions ``acting_perms`` holds the generator permutations
    so the acting group can be enumerated on demand.
    """

    name: str
    base: Hashable
    moves: tuple[Callable[[Hashable], Hashable], ...]
    kind: str = "cayley"
    multiply: Callable[[Hashable, Hashable], Hashable] | None = None
    invert: Callable[[Hashable], Hashable] | None = None
    acting_perms: tuple[tuple[int, ...], ...] | None = None


class ExploredBall:
    """Window of a generated system: all states within ``horizon`` moves.

    ``complete`` is True when no unseen state exists beyond the horizon,
    i.e. the whole (finite) system was exhausted.  On an incomplete
    window only vertices with ``dist < horizon`` are guaranteed to carry
    their full neighborhood.
    """

    def __init__(self, name, horizon, dist, indptr, indices, complete, labels, regular=True):
        self.name = name
        self.horizon = int(horizon)
        self.dist = np.asarray(dist, np.int64)
        self.indptr = np.asarray(indptr, np.int64)
        self.indices = np.asarray(indices, np.int64)
        self.complete = bool(complete)
        self.labels = list(labels)
        self.base_index = 0
        # generated systems look the same from every state; explicit
        # edge lists carry no such promise
        self.regular = bool(regular)

    @property
    def num_vertices(self) -> int:
        return self.indptr.shape[0] - 1

    @property
    def num_edges(self) -> int:
        return self.indices.shape[0] // 2

    @cached_property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    @cached_property
    def rows(self) -> np.ndarray:
        """Row index of every CSR entry, for vectorized edge sums."""
        return np.repeat(np.arange(self.num_vertices), self.degrees)

    @cached_property
    def index_of(self) -> dict:
        return {lab: i for i, lab in enumerate(self.labels)}

    @cached_property
    def interior(self) -> np.ndarray:
        """Vertices whose whole neighborhood is inside the window."""
        if self.complete:
            return np.ones(self.num_vertices, np.bool_)
        return self.dist < self.horizon

    def interior_within(self, margin: int) -> np.ndarray:
        """Vertices all of whose ``margin``-neighbors are interior."""
        if self.complete:
            return np.ones(self.num_vertices, np.bool_)
        return self.dist < self.horizon - margin

    def __repr__(self):
        tag = "complete" if self.complete else "window"
        return (
            f"ExploredBall({self.name!r}, horizon={self.horizon}, "
            f"vertices={self.num_vertices}, edges={self.num_edges}, {tag})"
        )


def explore(system: GeneratedSystem, horizon: int, max_vertices: int = 500_000) -> ExploredBall:
    """Breadth first exploration of ``system`` out to ``horizon`` moves.

    Every state at distance <= horizon becomes a vertex; every edge whose
    endpoints both lie in the window is recorded once.  Self loops are
    dropped and parallel moves are collapsed.

    :param system: the generated system to walk.
    :param horizon: exploration radius, at least 1.
    :param max_vertices: hard budget; exceeding it raises
        :class:`ResourceCapError`.
    """
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    base = system.base
    index = {base: 0}
    labels = [base]
    dist = [0]
    edges: set[tuple[int, int]] = set()
    queue = deque([0])
    dropped = False
    while queue:
        iu = queue.popleft()
        du = dist[iu]
        u = labels[iu]
        for move in system.moves:
            v = move(u)
            if v == u:
                continue
            iv = index.get(v)
            if iv is None:
                if du >= horizon:
                    dropped = True
                    continue
                if len(labels) >= max_vertices:
                    raise ResourceCapError(
                        f"{system.name}: exploration exceeded {max_vertices} vertices"
                    )
                iv = len(labels)
                index[v] = iv
                labels.append(v)
                dist.append(du + 1)
                queue.append(iv)
            edges.add((iu, iv) if iu < iv else (iv, iu))
    n = len(labels)
    adj: list[list[int]] = [[] for _ in range(n)]
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    indptr = np.zeros(n + 1, np.int64)
    for v in range(n):
        adj[v].sort()
        indptr[v + 1] = indptr[v] + len(adj[v])
    indices = np.fromiter(
        (w for nbrs in adj for w in nbrs), np.int64, count=int(indptr[-1])
    )
    # Schreier quotients lose regularity when loops at fixed points drop out
    return ExploredBall(
        system.name, horizon, dist, indptr, indices, not dropped, labels,
        regular=system.kind == "cayley",
    )


def ball_from_edges(
    name: str,
    num_vertices: int,
    edges: Sequence[tuple[int, int]],
    base: int = 0,
    horizon: int | None = None,
) -> ExploredBall:
    """Build an explicit graph window from an edge list.

    The graph must be connected from ``base``; distances are computed by
    breadth first search and the window is marked complete.
    """
    dedup = {(min(a, b), max(a, b)) for a, b in edges if a != b}
    adj: list[list[int]] = [[] for _ in range(num_vertices)]
    for a, b in dedup:
        adj[a].append(b)
        adj[b].append(a)
    dist = np.full(num_vertices, -1, np.int64)
    dist[base] = 0
    queue = deque([base])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                queue.append(v)
    if (dist < 0).any():
        raise ValueError(f"{name}: graph is not connected from the base vertex")
    if base != 0:
        raise ValueError("base vertex must be index 0")
    indptr = np.zeros(num_vertices + 1, np.int64)
    for v in range(num_vertices):
        adj[v].sort()
        indptr[v + 1] = indptr[v] + len(adj[v])
    indices = np.fromiter(
        (w for nbrs in adj for w in nbrs), np.int64, count=int(indptr[-1])
    )
    if horizon is None:
        horizon = int(dist.max())
    return ExploredBall(
        name, max(horizon, 1), dist, indptr, indices, True,
        list(range(num_vertices)), regular=False,
    )


def distances_from(ball: ExploredBall, sources: Sequence[int]) -> np.ndarray:
    """Graph distance from the nearest source, breadth first, within the window."""
    n = ball.num_vertices
    dist = np.full(n, -1, np.int64)
    queue = deque()
    for s in sources:
        dist[s] = 0
        queue.append(int(s))
    indptr, indices = ball.indptr, ball.indices
    while queue:
        u = queue.popleft()
        for e in range(indptr[u], indptr[u + 1]):
            v = int(indices[e])
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def diameter(ball: ExploredBall) -> int:
    """Exact diameter of a complete window."""
    if not ball.complete:
        raise ValueError("diameter is only defined on a complete window")
    best = 0
    for v in range(ball.num_vertices):
        d = distances_from(ball, [v])
        best = max(best, int(d.max()))
    return best


def validate_ball(ball: ExploredBall) -> list[str]:
    """Structural sanity report; an empty list means no issue found."""
    issues: list[str] = []
    n = ball.num_vertices
    indptr, indices, dist = ball.indptr, ball.indices, ball.dist
    if dist[ball.base_index] != 0:
        issues.append("base vertex is not at distance 0")
    pairs = set()
    for v in range(n):
        row = indices[indptr[v] : indptr[v + 1]]
        if np.any(row == v):
            issues.append(f"vertex {v} carries a self loop")
        if np.any(np.diff(row) <= 0):
            issues.append(f"adjacency row of vertex {v} is not strictly sorted")
        for w in row:
            pairs.add((v, int(w)))
    for v, w in pairs:
        if (w, v) not in pairs:
            issues.append(f"edge {v}->{w} has no mirror entry")
        if abs(int(dist[v]) - int(dist[w])) > 1:
            issues.append(f"edge {v}-{w} skips a distance level")
    for v in range(n):
        if v == ball.base_index:
            continue
        row = indices[indptr[v] : indptr[v + 1]]
        if not np.any(dist[row] == dist[v] - 1):
            issues.append(f"vertex {v} has no neighbor one level closer to the base")
    if dist.max() > ball.horizon:
        issues.append("a vertex lies beyond the declared horizon")
    if ball.regular:
        interior_degs = set(int(d) for d in ball.degrees[ball.interior])
        if len(interior_degs) > 1:
            issues.append(f"interior degrees vary: {sorted(interior_degs)}")
    return issues


# ---------------------------------------------------------------------------
# Concrete constructions


def free_abelian(rank: int) -> GeneratedSystem:
    """Free abelian group of the given rank with standard generators."""

    def shift(i, s):
        def move(x):
            y = list(x)
            y[i] += s
            return tuple(y)

        return move

    moves = tuple(shift(i, s) for i in range(rank) for s in (1, -1))

    def mul(a, b):
        return tuple(x + y for x, y in zip(a, b))

    def inv(a):
        return tuple(-x for x in a)

    return GeneratedSystem(f"free_abelian_{rank}", (0,) * rank, moves, "cayley", mul, inv)


def free_group(rank: int) -> GeneratedSystem:
    """Free group on ``rank`` letters; states are reduced words.

    A word is a tuple of nonzero ints, letter ``i`` is ``i+1`` and its
    inverse ``-(i+1)``.
    """

    def prepend(letter):
        def move(w):
            if w and w[0] == -letter:
                return w[1:]
            return (letter,) + w

        return move

    letters = [i + 1 for i in range(rank)]
    moves = tuple(prepend(s * l) for l in letters for s in (1, -1))

    def mul(a, b):
        a = list(a)
        b = list(b)
        while a and b and a[-1] == -b[0]:
            a.pop()
            b.pop(0)
        return tuple(a) + tuple(b)

    def inv(a):
        return tuple(-x for x in reversed(a))

    return GeneratedSystem(f"free_group_{rank}", (), moves, "cayley", mul, inv)


def heisenberg() -> GeneratedSystem:
    """Discrete Heisenberg group as triples (a, b, c) of integers.

    (a, b, c) stands for the upper unitriangular matrix with a and b on
    the first diagonal and c in the corner, so
    (a1,b1,c1)*(a2,b2,c2) = (a1+a2, b1+b2, c1+c2+a1*b2).
    """

    def mul(x, y):
        return (x[0] + y[0], x[1] + y[1], x[2] + y[2] + x[0] * y[1])

    def inv(x):
        return (-x[0], -x[1], -x[2] + x[0] * x[1])

    gens = [(1, 0, 0), (0, 1, 0)]
    gens = gens + [inv(g) for g in gens]

    def left(g):
        return lambda x: mul(g, x)

    return GeneratedSystem("heisenberg", (0, 0, 0), tuple(left(g) for g in gens), "cayley", mul, inv)


def cyclic(n: int) -> GeneratedSystem:
    """Cyclic group of order n with generators +1 and -1."""
    if n < 2:
        raise ValueError("cyclic group needs order at least 2")

    def mul(a, b):
        return (a + b) % n

    def inv(a):
        return (-a) % n

    moves = (lambda x: (x + 1) % n, lambda x: (x - 1) % n)
    return GeneratedSystem(f"cyclic_{n}", 0, moves, "cayley", mul, inv)


def dihedral(n: int) -> GeneratedSystem:
    """Dihedral group of order 2n; states (r, s) mean rotation^r * flip^s."""
    if n < 2:
        raise ValueError("dihedral group needs n at least 2")

    def mul(x, y):
        # (r1, s1) * (r2, s2) with flip * rotation^r = rotation^-r * flip
        r1, s1 = x
        r2, s2 = y
        if s1 == 0:
            return ((r1 + r2) % n, s2)
        return ((r1 - r2) % n, 1 - s2)

    def inv(x):
        r, s = x
        if s == 0:
            return ((-r) % n, 0)
        return (r, 1)

    gens = [(1, 0), ((n - 1) % n, 0), (0, 1)]

    def left(g):
        return lambda x: mul(g, x)

    return GeneratedSystem(f"dihedral_{n}", (0, 0), tuple(left(g) for g in gens), "cayley", mul, inv)


def hypercube(dim: int) -> GeneratedSystem:
    """Elementary abelian 2-group on ``dim`` bits; the graph is the cube."""
    if dim < 1:
        raise ValueError("hypercube needs dimension at least 1")

    def mul(a, b):
        return a ^ b

    moves = tuple((lambda i: lambda x: x ^ (1 << i))(i) for i in range(dim))
    return GeneratedSystem(f"hypercube_{dim}", 0, moves, "cayley", mul, lambda a: a)


def _compose(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    # (p o q)(i) = p[q[i]]
    return tuple(p[q[i]] for i in range(len(q)))


def _perm_inverse(p: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def _transposition(n: int, i: int, j: int) -> tuple[int, ...]:
    p = list(range(n))
    p[i], p[j] = p[j], p[i]
    return tuple(p)


def symmetric_group(n: int, generators: str = "transpositions") -> GeneratedSystem:
    """Symmetric group on n symbols; states are permutation tuples.

    ``generators`` picks the generating set: every transposition, or the
    adjacent ones only.
    """
    if generators == "transpositions":
        gens = [_transposition(n, i, j) for i in range(n) for j in range(i + 1, n)]
    elif generators == "adjacent":
        gens = [_transposition(n, i, i + 1) for i in range(n - 1)]
    else:
        raise ValueError(f"unknown generator set {generators!r}")

    def left(g):
        return lambda x: _compose(g, x)

    return GeneratedSystem(
        f"symmetric_{n}_{generators}",
        tuple(range(n)),
        tuple(left(g) for g in gens),
        "cayley",
        _compose,
        _perm_inverse,
    )


def permutation_action(
    name: str, perms: Sequence[Sequence[int]], base_point: int = 0
) -> GeneratedSystem:
    """Orbit of a point under a set of permutations (Schreier construction).

    The generator list is symmetrized automatically.
    """
    npts = len(perms[0])
    gens: list[tuple[int, ...]] = []
    for p in perms:
        t = tuple(p)
        if len(t) != npts or sorted(t) != list(range(npts)):
            raise ValueError(f"{name}: {p!r} is not a permutation of 0..{npts - 1}")
        for q in (t, _perm_inverse(t)):
            if q not in gens:
                gens.append(q)

    def act(g):
        return lambda x: g[x]

    return GeneratedSystem(
        name,
        base_point,
        tuple(act(g) for g in gens),
        "schreier",
        None,
        None,
        tuple(gens),
    )


def acting_group_elements(system: GeneratedSystem) -> list[tuple[int, ...]]:
    """Enumerate the full group generated by ``acting_perms`` (word closure)."""
    if system.acting_perms is None:
        raise ValueError("system has no acting permutations")
    first = system.acting_perms[0]
    identity = tuple(range(len(first)))
    seen = {identity}
    order = [identity]
    queue = deque([identity])
    while queue:
        g = queue.popleft()
        for s in system.acting_perms:
            h = _compose(s, g)
            if h not in seen:
                seen.add(h)
                order.append(h)
                queue.append(h)
    return order
