"""Core graph types: digraphs, vertex bit sets, two-colored arcs,
undirected graphs with edge orientations, plus the basic predicates
(independence, kernel, semi-kernel), strongly connected components and
directed-cycle enumeration.

Vertices are dense 0-based integers everywhere; files and reports use the
same indices.  Vertex subsets are fixed-width bit sets so subset algebra,
equality tests and the exhaustive searches stay cheap.  Every type here is
immutable after construction and safe to share between workers.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Optional

from .errors import BoundsError, BudgetExceededError

__all__ = [
    "VertexSet",
    "Digraph",
    "UndirectedGraph",
    "EdgeDirection",
    "Orientation",
    "ArcColor",
    "ColoredDigraph",
    "SccResult",
    "is_independent",
    "is_kernel",
    "is_semi_kernel",
    "strongly_connected_components",
    "enumerate_directed_cycles",
    "bits_of",
]


def bits_of(mask: int) -> Iterator[int]:
    """Yield the set bit positions of `mask` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class VertexSet:
    """Immutable subset of {0, ..., universe-1} backed by an int bitmask."""

    __slots__ = ("universe", "mask")

    def __init__(self, universe: int, members: Iterable[int] = ()):
        mask = 0
        for v in members:
            if not 0 <= v < universe:
                raise BoundsError(f"vertex {v} outside [0, {universe})")
            mask |= 1 << v
        self.universe = universe
        self.mask = mask

    @classmethod
    def from_mask(cls, universe: int, mask: int) -> "VertexSet":
        if mask < 0 or mask >> universe:
            raise BoundsError(f"mask {mask:#x} does not fit universe {universe}")
        s = cls.__new__(cls)
        s.universe = universe
        s.mask = mask
        return s

    def members(self) -> tuple[int, ...]:
        return tuple(bits_of(self.mask))

    def __contains__(self, v: int) -> bool:
        return 0 <= v < self.universe and (self.mask >> v) & 1 == 1

    def __iter__(self) -> Iterator[int]:
        return bits_of(self.mask)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __bool__(self) -> bool:
        return self.mask != 0

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, VertexSet)
            and self.universe == other.universe
            and self.mask == other.mask
        )

    def __hash__(self) -> int:
        return hash((self.universe, self.mask))

    def _coerce(self, other: "VertexSet") -> int:
        if not isinstance(other, VertexSet) or other.universe != self.universe:
            raise ValueError("vertex sets live in different universes")
        return other.mask

    def __or__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet.from_mask(self.universe, self.mask | self._coerce(other))

    def __and__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet.from_mask(self.universe, self.mask & self._coerce(other))

    def __sub__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet.from_mask(self.universe, self.mask & ~self._coerce(other))

    def issubset(self, other: "VertexSet") -> bool:
        return self.mask & ~self._coerce(other) == 0

    def __repr__(self) -> str:
        return f"VertexSet({self.universe}, {{{', '.join(map(str, self.members()))}}})"


def _subset_mask(vertex_count: int, subset) -> int:
    """Coerce a VertexSet or an iterable of vertices to a bounds-checked mask."""
    if isinstance(subset, VertexSet):
        if subset.universe != vertex_count:
            raise BoundsError(
                f"vertex set over universe {subset.universe} used with a "
                f"{vertex_count}-vertex graph"
            )
        return subset.mask
    return VertexSet(vertex_count, subset).mask


class Digraph:
    """Directed graph with no loops and no parallel arcs.

    Opposite arcs (u, v) and (v, u) may coexist; an arc whose opposite is
    present is called reversible.
    """

    __slots__ = ("vertex_count", "arcs", "_out", "_in")

    def __init__(self, vertex_count: int, arcs: Iterable[tuple[int, int]] = ()):
        if vertex_count < 0:
            raise ValueError("vertex_count must be nonnegative")
        out = [0] * vertex_count
        inn = [0] * vertex_count
        seen: set[tuple[int, int]] = set()
        for u, v in arcs:
            if not 0 <= u < vertex_count or not 0 <= v < vertex_count:
                raise BoundsError(f"arc ({u}, {v}) outside [0, {vertex_count})")
            if u == v:
                raise ValueError(f"loop ({u}, {v}) not allowed")
            if (u, v) in seen:
                raise ValueError(f"duplicate arc ({u}, {v})")
            seen.add((u, v))
            out[u] |= 1 << v
            inn[v] |= 1 << u
        self.vertex_count = vertex_count
        self.arcs = frozenset(seen)
        self._out = out
        self._in = inn

    # -- neighborhoods -------------------------------------------------

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.vertex_count:
            raise BoundsError(f"vertex {v} outside [0, {self.vertex_count})")

    def out_mask(self, v: int) -> int:
        self._check_vertex(v)
        return self._out[v]

    def in_mask(self, v: int) -> int:
        self._check_vertex(v)
        return self._in[v]

    def out_neighbors(self, v: int) -> VertexSet:
        return VertexSet.from_mask(self.vertex_count, self.out_mask(v))

    def in_neighbors(self, v: int) -> VertexSet:
        return VertexSet.from_mask(self.vertex_count, self.in_mask(v))

    def closed_out_neighbors(self, v: int) -> VertexSet:
        return VertexSet.from_mask(self.vertex_count, self.out_mask(v) | (1 << v))

    def closed_in_neighbors(self, v: int) -> VertexSet:
        return VertexSet.from_mask(self.vertex_count, self.in_mask(v) | (1 << v))

    def out_neighborhood(self, subset) -> VertexSet:
        """Union of out-neighbors of the subset, excluding the subset itself."""
        m = _subset_mask(self.vertex_count, subset)
        acc = 0
        for v in bits_of(m):
            acc |= self._out[v]
        return VertexSet.from_mask(self.vertex_count, acc & ~m)

    def in_neighborhood(self, subset) -> VertexSet:
        """Union of in-neighbors of the subset, excluding the subset itself."""
        m = _subset_mask(self.vertex_count, subset)
        acc = 0
        for v in bits_of(m):
            acc |= self._in[v]
        return VertexSet.from_mask(self.vertex_count, acc & ~m)

    def has_arc(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        return (self._out[u] >> v) & 1 == 1

    def is_reversible(self, u: int, v: int) -> bool:
        return self.has_arc(u, v) and self.has_arc(v, u)

    def adjacency_mask(self, v: int) -> int:
        """Vertices joined to v by an arc in either direction."""
        self._check_vertex(v)
        return self._out[v] | self._in[v]

    # -- derived graphs ------------------------------------------------

    def induced(self, vertices: Iterable[int]) -> tuple["Digraph", tuple[int, ...]]:
        """Induced subdigraph plus the list mapping new indices to old ones."""
        labels = tuple(sorted(set(vertices)))
        index = {v: i for i, v in enumerate(labels)}
        for v in labels:
            self._check_vertex(v)
        arcs = [
            (index[u], index[v])
            for (u, v) in self.arcs
            if u in index and v in index
        ]
        return Digraph(len(labels), arcs), labels

    def underlying_graph(self) -> "UndirectedGraph":
        edges = {(min(u, v), max(u, v)) for (u, v) in self.arcs}
        return UndirectedGraph(self.vertex_count, edges)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Digraph)
            and self.vertex_count == other.vertex_count
            and self.arcs == other.arcs
        )

    def __hash__(self) -> int:
        return hash((self.vertex_count, self.arcs))

    def __repr__(self) -> str:
        return f"Digraph({self.vertex_count}, {sorted(self.arcs)})"


# -- predicates --------------------------------------------------------


def is_independent(digraph: Digraph, subset) -> bool:
    """True iff no arc in either direction joins two members of the subset."""
    m = _subset_mask(digraph.vertex_count, subset)
    for v in bits_of(m):
        if digraph._out[v] & m:
            return False
    return True


def is_kernel(digraph: Digraph, subset) -> bool:
    """True iff the subset is independent and every outside vertex has an
    arc into it."""
    m = _subset_mask(digraph.vertex_count, subset)
    if not is_independent(digraph, VertexSet.from_mask(digraph.vertex_count, m)):
        return False
    outside = ((1 << digraph.vertex_count) - 1) & ~m
    for v in bits_of(outside):
        if not digraph._out[v] & m:
            return False
    return True


def is_semi_kernel(digraph: Digraph, subset) -> bool:
    """True iff the subset is independent and every vertex receiving an arc
    from it sends an arc back into it."""
    m = _subset_mask(digraph.vertex_count, subset)
    if not is_independent(digraph, VertexSet.from_mask(digraph.vertex_count, m)):
        return False
    reached = 0
    for v in bits_of(m):
        reached |= digraph._out[v]
    for w in bits_of(reached & ~m):
        if not digraph._out[w] & m:
            return False
    return True


# -- strongly connected components --------------------------------------


@dataclass(frozen=True)
class SccResult:
    """SCC partition in topological order plus the condensation DAG.

    `condensation_arcs` holds (i, j) whenever some arc joins component i to
    component j; the topological order guarantees i < j for every arc.
    """

    components: tuple[tuple[int, ...], ...]
    component_of: tuple[int, ...]
    condensation_arcs: frozenset[tuple[int, int]]


def strongly_connected_components(digraph: Digraph) -> SccResult:
    """Tarjan's algorithm, iterative so deep graphs cannot blow the stack."""
    n = digraph.vertex_count
    out = digraph._out
    index_of = [-1] * n
    lowlink = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    sccs: list[list[int]] = []
    counter = 0

    for root in range(n):
        if index_of[root] != -1:
            continue
        work = [(root, iter(bits_of(out[root])))]
        index_of[root] = lowlink[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if index_of[w] == -1:
                    index_of[w] = lowlink[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, iter(bits_of(out[w]))))
                    advanced = True
                    break
                if on_stack[w]:
                    lowlink[v] = min(lowlink[v], index_of[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                lowlink[parent] = min(lowlink[parent], lowlink[v])
            if lowlink[v] == index_of[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                sccs.append(sorted(comp))

    # Tarjan finishes components in reverse topological order.
    sccs.reverse()
    component_of = [0] * n
    for i, comp in enumerate(sccs):
        for v in comp:
            component_of[v] = i
    cond = frozenset(
        (component_of[u], component_of[v])
        for (u, v) in digraph.arcs
        if component_of[u] != component_of[v]
    )
    return SccResult(
        components=tuple(tuple(c) for c in sccs),
        component_of=tuple(component_of),
        condensation_arcs=cond,
    )


# -- directed cycles -----------------------------------------------------


def enumerate_directed_cycles(
    digraph: Digraph,
    parity: str = "all",
    max_len: Optional[int] = None,
    budget: Optional[int] = None,
) -> list[tuple[int, ...]]:
    """All directed cycles up to `max_len`, one tuple per rotation class.

    Cycles are rotated so their smallest vertex comes first; two-cycles from
    opposite arcs count as directed cycles of length two.  `parity` selects
    "odd", "even" or "all" cycle lengths.  `budget` caps the number of path
    extension steps; exceeding it raises BudgetExceededError.
    """
    if parity not in ("odd", "even", "all"):
        raise ValueError(f"unknown parity {parity!r}")
    n = digraph.vertex_count
    if max_len is None or max_len > n:
        max_len = n
    out = digraph._out
    cycles: list[tuple[int, ...]] = []
    steps = 0

    def wanted(length: int) -> bool:
        if parity == "all":
            return True
        return (length % 2 == 1) == (parity == "odd")

    def extend(root: int, path: list[int], on_path: int) -> None:
        nonlocal steps
        v = path[-1]
        for w in bits_of(out[v]):
            if w < root:
                continue
            steps += 1
            if budget is not None and steps > budget:
                raise BudgetExceededError(
                    f"cycle enumeration exceeded budget of {budget} steps",
                    partial=list(cycles),
                )
            if w == root:
                if wanted(len(path)):
                    cycles.append(tuple(path))
            elif not (on_path >> w) & 1 and len(path) < max_len:
                path.append(w)
                extend(root, path, on_path | (1 << w))
                path.pop()

    if max_len >= 2:
        for root in range(n):
            extend(root, [root], 1 << root)
    return cycles


# -- undirected graphs and orientations ----------------------------------


class UndirectedGraph:
    """Simple undirected graph; edges stored as (min, max) pairs."""

    __slots__ = ("vertex_count", "edges", "_adj")

    def __init__(self, vertex_count: int, edges: Iterable[tuple[int, int]] = ()):
        if vertex_count < 0:
            raise ValueError("vertex_count must be nonnegative")
        adj = [0] * vertex_count
        seen: set[tuple[int, int]] = set()
        for u, v in edges:
            if not 0 <= u < vertex_count or not 0 <= v < vertex_count:
                raise BoundsError(f"edge ({u}, {v}) outside [0, {vertex_count})")
            if u == v:
                raise ValueError(f"self-edge ({u}, {v}) not allowed")
            e = (min(u, v), max(u, v))
            if e in seen:
                raise ValueError(f"duplicate edge {e}")
            seen.add(e)
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self.vertex_count = vertex_count
        self.edges = frozenset(seen)
        self._adj = adj

    def adjacency_mask(self, v: int) -> int:
        if not 0 <= v < self.vertex_count:
            raise BoundsError(f"vertex {v} outside [0, {self.vertex_count})")
        return self._adj[v]

    def neighbors(self, v: int) -> VertexSet:
        return VertexSet.from_mask(self.vertex_count, self.adjacency_mask(v))

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, UndirectedGraph)
            and self.vertex_count == other.vertex_count
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.vertex_count, self.edges))

    def __repr__(self) -> str:
        return f"UndirectedGraph({self.vertex_count}, {self.sorted_edges()})"


class EdgeDirection(Enum):
    """Direction of an oriented edge relative to its (min, max) endpoints."""

    FORWARD = "fwd"
    BACKWARD = "bwd"
    BOTH = "both"


class Orientation:
    """An undirected graph plus a direction for every edge.

    FORWARD points min -> max, BACKWARD the reverse, BOTH keeps the edge
    reversible.  An orientation is simple when no edge maps to BOTH.
    """

    __slots__ = ("base", "assignment")

    def __init__(self, base: UndirectedGraph, assignment):
        normalized: dict[tuple[int, int], EdgeDirection] = {}
        for edge, direction in dict(assignment).items():
            u, v = edge
            e = (min(u, v), max(u, v))
            if e not in base.edges:
                raise ValueError(f"assignment mentions non-edge {e}")
            if not isinstance(direction, EdgeDirection):
                direction = EdgeDirection(direction)
            normalized[e] = direction
        missing = base.edges - normalized.keys()
        if missing:
            raise ValueError(f"edges without direction: {sorted(missing)}")
        self.base = base
        self.assignment = normalized

    @property
    def is_simple(self) -> bool:
        return all(d is not EdgeDirection.BOTH for d in self.assignment.values())

    def arcs(self) -> Iterator[tuple[int, int]]:
        for (u, v) in self.base.sorted_edges():
            d = self.assignment[(u, v)]
            if d is not EdgeDirection.BACKWARD:
                yield (u, v)
            if d is not EdgeDirection.FORWARD:
                yield (v, u)

    def to_digraph(self) -> Digraph:
        return Digraph(self.base.vertex_count, self.arcs())

    @classmethod
    def from_digraph(cls, base: UndirectedGraph, digraph: Digraph) -> "Orientation":
        """Recover the per-edge assignment of a digraph that orients `base`."""
        if digraph.vertex_count != base.vertex_count:
            raise ValueError("vertex counts differ")
        assignment = {}
        for (u, v) in base.edges:
            fwd = digraph.has_arc(u, v)
            bwd = digraph.has_arc(v, u)
            if fwd and bwd:
                assignment[(u, v)] = EdgeDirection.BOTH
            elif fwd:
                assignment[(u, v)] = EdgeDirection.FORWARD
            elif bwd:
                assignment[(u, v)] = EdgeDirection.BACKWARD
            else:
                raise ValueError(f"edge ({u}, {v}) is not oriented by the digraph")
        extra = {
            (u, v)
            for (u, v) in digraph.arcs
            if (min(u, v), max(u, v)) not in base.edges
        }
        if extra:
            raise ValueError(f"digraph has arcs outside the base graph: {sorted(extra)}")
        return cls(base, assignment)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Orientation)
            and self.base == other.base
            and self.assignment == other.assignment
        )

    def __hash__(self) -> int:
        return hash((self.base, tuple(sorted((e, d.value) for e, d in self.assignment.items()))))

    def __repr__(self) -> str:
        parts = ", ".join(
            f"{u}-{v}:{self.assignment[(u, v)].value}" for u, v in self.base.sorted_edges()
        )
        return f"Orientation({self.base.vertex_count}, {parts})"


# -- colored digraphs ----------------------------------------------------


class ArcColor(Enum):
    BLUE = "b"
    RED = "r"


class ColoredDigraph:
    """A digraph whose every arc carries exactly one of two colors.

    Opposite arcs may have different colors; a single arc has one color.
    """

    __slots__ = ("digraph", "color", "_blue_out", "_red_out", "_blue_in", "_red_in")

    def __init__(self, digraph: Digraph, color):
        colors: dict[tuple[int, int], ArcColor] = {}
        for arc, c in dict(color).items():
            u, v = arc
            if (u, v) not in digraph.arcs:
                raise ValueError(f"color given for non-arc ({u}, {v})")
            if not isinstance(c, ArcColor):
                c = ArcColor(c)
            colors[(u, v)] = c
        missing = digraph.arcs - colors.keys()
        if missing:
            raise ValueError(f"arcs without a color: {sorted(missing)}")
        n = digraph.vertex_count
        blue_out = [0] * n
        red_out = [0] * n
        blue_in = [0] * n
        red_in = [0] * n
        for (u, v), c in colors.items():
            if c is ArcColor.BLUE:
                blue_out[u] |= 1 << v
                blue_in[v] |= 1 << u
            else:
                red_out[u] |= 1 << v
                red_in[v] |= 1 << u
        self.digraph = digraph
        self.color = colors
        self._blue_out = blue_out
        self._red_out = red_out
        self._blue_in = blue_in
        self._red_in = red_in

    @classmethod
    def from_colored_arcs(
        cls, vertex_count: int, arcs: Iterable[tuple[int, int, object]]
    ) -> "ColoredDigraph":
        pairs = []
        colors = {}
        for u, v, c in arcs:
            pairs.append((u, v))
            colors[(u, v)] = c if isinstance(c, ArcColor) else ArcColor(c)
        return cls(Digraph(vertex_count, pairs), colors)

    @property
    def vertex_count(self) -> int:
        return self.digraph.vertex_count

    def blue_out_mask(self, v: int) -> int:
        self.digraph._check_vertex(v)
        return self._blue_out[v]

    def red_out_mask(self, v: int) -> int:
        self.digraph._check_vertex(v)
        return self._red_out[v]

    def blue_in_mask(self, v: int) -> int:
        self.digraph._check_vertex(v)
        return self._blue_in[v]

    def red_in_mask(self, v: int) -> int:
        self.digraph._check_vertex(v)
        return self._red_in[v]

    def restriction(self, color: ArcColor) -> Digraph:
        """The digraph keeping only the arcs of one color."""
        return Digraph(
            self.vertex_count,
            [a for a, c in self.color.items() if c is color],
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ColoredDigraph)
            and self.digraph == other.digraph
            and self.color == other.color
        )

    def __hash__(self) -> int:
        return hash(
            (self.digraph, tuple(sorted((a, c.value) for a, c in self.color.items())))
        )

    def __repr__(self) -> str:
        arcs = ", ".join(
            f"{u}->{v}:{c.value}" for (u, v), c in sorted(self.color.items())
        )
        return f"ColoredDigraph({self.vertex_count}, {arcs})"
