"""Anti-hole generators, the seven-vertex counterexample orientation,
exhaustive enumeration of clique-acyclic orientations, and the solvability
verification machinery built on top of it.

The enumeration backtracks over edges in lexicographic (min, max) order; a
branch dies as soon as some clique whose edges are all decided has no
vertex receiving arcs from every other clique member.  "Fully decided" is
detected in O(1) per step from a precomputed list of cliques keyed by
their last edge, each with a lookup table over its edge-direction
patterns.

Anti-hole runs can reduce by symmetry: the dihedral group of the labeling
acts on edge-direction assignments, and only the lexicographically least
assignment of each orbit is emitted.  Long runs partition the backtracking
tree by a fixed-depth prefix of edge assignments into independent tasks
(the parallelism and checkpointing unit); counts and verdicts do not
depend on the partitioning or the worker count.
"""

from __future__ import annotations

import hashlib
import json
import time
from dataclasses import dataclass
from itertools import combinations, product
from pathlib import Path
from typing import Iterator, Optional

from .digraph import (
    Digraph,
    EdgeDirection,
    Orientation,
    UndirectedGraph,
)
from .errors import ContractError, InternalInvariantError, SizeCapError
from .oracle import (
    all_clique_masks,
    find_kernel_bruteforce,
    is_clique_acyclic,
    kernel_exists_masks,
)

__all__ = [
    "AntiholeLabeling",
    "SolvabilityVerdict",
    "SearchOutcome",
    "gen_antihole",
    "c7_counterexample",
    "enumerate_simple_clique_acyclic_orientations",
    "verify_kernel_solvable",
    "find_near_sink",
    "search_clique_acyclic_no_kernel",
    "dihedral_edge_actions",
    "orientation_digits",
    "digits_to_orientation",
    "canonical_digits",
    "orbit_digits",
    "canonical_orientation_key",
]

MAX_EDGES = 32
_DIGITS = (EdgeDirection.FORWARD, EdgeDirection.BACKWARD, EdgeDirection.BOTH)


@dataclass(frozen=True)
class AntiholeLabeling:
    """Canonical labeling of the complement of an n-cycle: vertex i is
    non-adjacent exactly to i-1 and i+1 (mod n)."""

    n: int

    def __post_init__(self):
        if self.n < 4:
            raise ContractError(f"anti-holes need at least 4 vertices, got {self.n}")

    def edges(self) -> list[tuple[int, int]]:
        n = self.n
        return sorted(
            (i, j)
            for i in range(n)
            for j in range(i + 1, n)
            if (j - i) % n not in (1, n - 1)
        )

    def graph(self) -> UndirectedGraph:
        return UndirectedGraph(self.n, self.edges())

    def vertex_maps(self) -> list[list[int]]:
        """The 2n dihedral symmetries of the labeling, identity first."""
        n = self.n
        maps = []
        for shift in range(n):
            maps.append([(i + shift) % n for i in range(n)])
        for shift in range(n):
            maps.append([(shift - i) % n for i in range(n)])
        return maps


def gen_antihole(n: int) -> tuple[UndirectedGraph, AntiholeLabeling]:
    """Complement of the n-cycle with its canonical labeling."""
    labeling = AntiholeLabeling(n)
    return labeling.graph(), labeling


def c7_counterexample() -> Digraph:
    """The simple clique-acyclic orientation of the 7-vertex anti-hole with
    no kernel: every vertex points at the vertices two and four ahead."""
    arcs = [(i, (i + 2) % 7) for i in range(7)] + [(i, (i + 4) % 7) for i in range(7)]
    digraph = Digraph(7, arcs)
    orientation = Orientation.from_digraph(AntiholeLabeling(7).graph(), digraph)
    assert orientation.is_simple
    assert is_clique_acyclic(digraph).holds
    assert not find_kernel_bruteforce(digraph).exists
    return digraph


# -- edge-direction assignments and the dihedral action ---------------------


def orientation_digits(orientation: Orientation, edges: list[tuple[int, int]]) -> tuple[int, ...]:
    return tuple(_DIGITS.index(orientation.assignment[e]) for e in edges)


def digits_to_orientation(
    digits: tuple[int, ...], base: UndirectedGraph, edges: list[tuple[int, int]]
) -> Orientation:
    return Orientation(base, {e: _DIGITS[d] for e, d in zip(edges, digits)})


def dihedral_edge_actions(labeling: AntiholeLabeling):
    """Per group element: (inverse edge permutation, direction flip) arrays.

    The image assignment y of x under an element is
    y[j] = x[inv[j]] ^ flip[j] for directed digits, with the reversible
    digit fixed.  The identity element is omitted.
    """
    edges = labeling.edges()
    eindex = {e: i for i, e in enumerate(edges)}
    actions = []
    for perm in labeling.vertex_maps():
        if perm == list(range(labeling.n)):
            continue
        inv = [0] * len(edges)
        flip = [0] * len(edges)
        for i, (u, v) in enumerate(edges):
            a, b = perm[u], perm[v]
            j = eindex[(min(a, b), max(a, b))]
            inv[j] = i
            flip[j] = 1 if a > b else 0
        actions.append((tuple(inv), tuple(flip)))
    return actions


def _apply_action(digits: tuple[int, ...], action) -> tuple[int, ...]:
    inv, flip = action
    return tuple(
        digits[inv[j]] if digits[inv[j]] == 2 else digits[inv[j]] ^ flip[j]
        for j in range(len(digits))
    )


def canonical_digits(digits: tuple[int, ...], actions) -> tuple[int, ...]:
    best = digits
    for action in actions:
        image = _apply_action(digits, action)
        if image < best:
            best = image
    return best


def orbit_digits(digits: tuple[int, ...], actions) -> set[tuple[int, ...]]:
    orbit = {digits}
    for action in actions:
        orbit.add(_apply_action(digits, action))
    return orbit


def canonical_orientation_key(orientation: Orientation, labeling: AntiholeLabeling) -> tuple[int, ...]:
    """Orbit representative of an orientation under the labeling's dihedral
    group, as the lexicographically least edge-direction string."""
    edges = labeling.edges()
    if orientation.base != labeling.graph():
        raise ContractError("orientation does not live on the labeled anti-hole")
    return canonical_digits(orientation_digits(orientation, edges), dihedral_edge_actions(labeling))


# -- clique tables and the backtracking core --------------------------------


def _clique_completions(graph: UndirectedGraph, num_values: int):
    """Per edge index: cliques whose last edge it is, each as
    (edge ids, positional weights, acceptance table over patterns)."""
    edges = graph.sorted_edges()
    eindex = {e: i for i, e in enumerate(edges)}
    n = graph.vertex_count
    adjacency = [graph.adjacency_mask(v) for v in range(n)]
    completions: list[list] = [[] for _ in edges]
    for clique in all_clique_masks(n, adjacency, min_size=3):
        eids = sorted(eindex[(a, b)] for a, b in combinations(clique, 2))
        k = len(eids)
        weights = tuple(num_values**p for p in range(k))
        table = bytearray(num_values**k)
        for pattern in range(len(table)):
            ins = {v: set() for v in clique}
            rest = pattern
            for p in range(k):
                digit = rest % num_values
                rest //= num_values
                u, v = edges[eids[p]]
                if digit != 1:
                    ins[v].add(u)
                if digit != 0:
                    ins[u].add(v)
            others = set(clique)
            table[pattern] = 1 if any(ins[x] >= others - {x} for x in clique) else 0
        completions[eids[-1]].append((tuple(eids), weights, bytes(table)))
    return edges, completions


def _enumerate_leaves(
    edge_count: int,
    completions,
    num_values: int,
    prefix: tuple[int, ...] = (),
    actions=None,
) -> Iterator[tuple[int, ...]]:
    """Yield accepted full assignments in lexicographic digit order.

    With `actions`, prefix comparisons against every group image prune
    assignments that provably exceed an orbit sibling, and a final
    canonicality filter keeps exactly one representative per orbit.
    """
    assign = [0] * edge_count
    value_range = tuple(range(num_values))

    def symmetric_prune(depth: int) -> bool:
        for inv, flip in actions:
            for j in range(depth + 1):
                i = inv[j]
                if i > depth:
                    break
                y = assign[i]
                if y != 2:
                    y ^= flip[j]
                x = assign[j]
                if x < y:
                    break
                if x > y:
                    return True
        return False

    def is_canonical() -> bool:
        for inv, flip in actions:
            for j in range(edge_count):
                y = assign[inv[j]]
                if y != 2:
                    y ^= flip[j]
                x = assign[j]
                if x < y:
                    break
                if x > y:
                    return False
        return True

    def rec(e: int) -> Iterator[tuple[int, ...]]:
        if e == edge_count:
            if actions is None or is_canonical():
                yield tuple(assign)
            return
        values = (prefix[e],) if e < len(prefix) else value_range
        for digit in values:
            assign[e] = digit
            ok = True
            for eids, weights, table in completions[e]:
                pattern = 0
                for p in range(len(eids)):
                    pattern += assign[eids[p]] * weights[p]
                if not table[pattern]:
                    ok = False
                    break
            if not ok:
                continue
            if actions is not None and symmetric_prune(e):
                continue
            yield from rec(e + 1)

    if edge_count == 0:
        yield ()
        return
    yield from rec(0)


def enumerate_simple_clique_acyclic_orientations(
    graph: UndirectedGraph,
    symmetry_reduction: bool = False,
    labeling: Optional[AntiholeLabeling] = None,
    prefix: tuple[int, ...] = (),
) -> Iterator[Orientation]:
    """Stream every simple clique-acyclic orientation of `graph`.

    `prefix` restricts the run to one subtree of the backtracking tree (the
    work-splitting hook).  Symmetry reduction needs the anti-hole labeling
    and emits one orientation per dihedral orbit.
    """
    if len(graph.edges) > MAX_EDGES:
        raise SizeCapError(
            f"{len(graph.edges)} edges exceed the enumeration cap of {MAX_EDGES}"
        )
    actions = None
    if symmetry_reduction:
        if labeling is None:
            raise ContractError("symmetry reduction needs the anti-hole labeling")
        if labeling.graph() != graph:
            raise ContractError("labeling does not match the graph")
        actions = dihedral_edge_actions(labeling)
    edges, completions = _clique_completions(graph, 2)
    for digits in _enumerate_leaves(len(edges), completions, 2, prefix, actions):
        yield digits_to_orientation(digits, graph, edges)


# -- solvability verification ------------------------------------------------


@dataclass(frozen=True)
class SolvabilityVerdict:
    graph_id: str
    mode: str
    verdict: str  # "solvable" | "counterexample" | "exhausted_budget"
    counterexample: Optional[Orientation]
    orientations_examined: int
    elapsed_seconds: float

    def to_json_obj(self) -> dict:
        from .io import to_json_obj

        obj = {
            "graph": self.graph_id,
            "mode": self.mode,
            "verdict": self.verdict,
            "orientations_examined": self.orientations_examined,
            "elapsed_ms": int(self.elapsed_seconds * 1000),
        }
        if self.counterexample is not None:
            obj["counterexample"] = to_json_obj(self.counterexample)
        return obj


@dataclass(frozen=True)
class SearchOutcome:
    status: str  # "witness" | "exhausted" | "unknown"
    orientation: Optional[Orientation]
    orientations_examined: int


def _graph_key(n: int, edges, mode: str, symmetry: bool, prefix_depth: int) -> str:
    payload = repr((n, tuple(edges), mode, symmetry, prefix_depth)).encode()
    return hashlib.sha256(payload).hexdigest()[:16]


def _oracle_masks(n: int, edges, digits) -> tuple[list[int], list[int]]:
    out = [0] * n
    adjacency = [0] * n
    for (u, v), digit in zip(edges, digits):
        adjacency[u] |= 1 << v
        adjacency[v] |= 1 << u
        if digit != 1:
            out[u] |= 1 << v
        if digit != 0:
            out[v] |= 1 << u
    return out, adjacency


def _verify_task(args) -> tuple[int, Optional[tuple[int, ...]], bool]:
    """Enumerate one prefix subtree; returns (examined, first kernel-free
    assignment or None, whether the leaf budget stopped the task)."""
    n, edges, num_values, symmetry, task_prefix, leaf_budget = args
    graph = UndirectedGraph(n, edges)
    _, completions = _clique_completions(graph, num_values)
    actions = (
        dihedral_edge_actions(AntiholeLabeling(n)) if symmetry else None
    )
    examined = 0
    for digits in _enumerate_leaves(
        len(edges), completions, num_values, tuple(task_prefix), actions
    ):
        examined += 1
        out, adjacency = _oracle_masks(n, edges, digits)
        if not kernel_exists_masks(n, out, adjacency):
            return examined, digits, False
        if leaf_budget is not None and examined >= leaf_budget:
            return examined, None, True
    return examined, None, False


def _load_checkpoint(path: Path, signature: str) -> Optional[dict]:
    if not path.exists():
        return None
    state = json.loads(path.read_text())
    if state.get("signature") != signature:
        raise ContractError(
            f"checkpoint {path} belongs to a different run "
            f"(signature {state.get('signature')!r}, expected {signature!r})"
        )
    return state


def verify_kernel_solvable(
    graph: UndirectedGraph,
    mode: str = "simple",
    symmetry_reduction: bool = False,
    labeling: Optional[AntiholeLabeling] = None,
    jobs: int = 1,
    budget: Optional[int] = None,
    checkpoint: Optional[str] = None,
    prefix_depth: Optional[int] = None,
    graph_id: str = "graph",
) -> SolvabilityVerdict:
    """Run the kernel oracle over every (simple) clique-acyclic orientation.

    Returns the first kernel-free orientation in enumeration order as a
    counterexample, or `solvable` after exhaustion.  The run is split into
    prefix tasks; `jobs` workers process them, results are consumed in task
    order, so counts and the verdict are identical for any worker count and
    any `prefix_depth`.  `budget` caps the number of orientations examined
    (budgeted runs execute sequentially); `checkpoint` names a JSON file
    updated after each completed task so an interrupted run resumes.
    """
    if mode not in ("simple", "general"):
        raise ContractError(f"unknown mode {mode!r}")
    if len(graph.edges) > MAX_EDGES:
        raise SizeCapError(
            f"{len(graph.edges)} edges exceed the enumeration cap of {MAX_EDGES}"
        )
    if symmetry_reduction:
        if labeling is None:
            raise ContractError("symmetry reduction needs the anti-hole labeling")
        if labeling.graph() != graph:
            raise ContractError("labeling does not match the graph")
    num_values = 2 if mode == "simple" else 3
    edges = tuple(graph.sorted_edges())
    n = graph.vertex_count
    if prefix_depth is None:
        prefix_depth = min(len(edges), 6 if num_values == 2 else 4)
    prefix_depth = min(prefix_depth, len(edges))
    signature = _graph_key(n, edges, mode, symmetry_reduction, prefix_depth)
    tasks = list(product(range(num_values), repeat=prefix_depth))

    start_task = 0
    examined = 0
    elapsed_before = 0.0
    checkpoint_path = Path(checkpoint) if checkpoint else None
    if checkpoint_path is not None:
        state = _load_checkpoint(checkpoint_path, signature)
        if state is not None:
            start_task = state["next_task"]
            examined = state["examined"]
            elapsed_before = state.get("elapsed_seconds", 0.0)
            if state.get("counterexample") is not None:
                digits = tuple(state["counterexample"])
                return _verdict_from_digits(
                    graph, edges, mode, digits, examined, elapsed_before, graph_id
                )
            if start_task >= len(tasks):
                return SolvabilityVerdict(
                    graph_id, mode, "solvable", None, examined, elapsed_before
                )

    started = time.monotonic()

    def save_checkpoint(next_task: int, count: int, counterexample=None) -> None:
        # `count` must cover completed tasks only, so a re-run of the task
        # under the cursor never double-counts after a resume
        if checkpoint_path is None:
            return
        checkpoint_path.write_text(
            json.dumps(
                {
                    "signature": signature,
                    "prefix_depth": prefix_depth,
                    "next_task": next_task,
                    "examined": count,
                    "elapsed_seconds": elapsed_before + time.monotonic() - started,
                    "counterexample": list(counterexample) if counterexample else None,
                }
            )
        )

    if budget is not None:
        jobs = 1

    def task_args(index: int, consumed: int):
        remaining = None if budget is None else budget - consumed
        return (n, edges, num_values, symmetry_reduction, tasks[index], remaining)

    total = examined
    counter_digits = None
    budget_hit = False
    if jobs <= 1:
        for index in range(start_task, len(tasks)):
            task_examined, digits, hit = _verify_task(task_args(index, total))
            total += task_examined
            if digits is not None:
                counter_digits = digits
                save_checkpoint(index + 1, total, digits)
                break
            if hit:
                budget_hit = True
                save_checkpoint(index, total - task_examined)
                break
            save_checkpoint(index + 1, total)
    else:
        import multiprocessing

        with multiprocessing.Pool(processes=jobs) as pool:
            args = [task_args(i, 0) for i in range(start_task, len(tasks))]
            for offset, (task_examined, digits, hit) in enumerate(
                pool.imap(_verify_task, args)
            ):
                total += task_examined
                if digits is not None:
                    counter_digits = digits
                    save_checkpoint(start_task + offset + 1, total, digits)
                    pool.terminate()
                    break
                save_checkpoint(start_task + offset + 1, total)

    elapsed = elapsed_before + time.monotonic() - started
    if counter_digits is not None:
        return _verdict_from_digits(
            graph, edges, mode, counter_digits, total, elapsed, graph_id
        )
    if budget_hit:
        return SolvabilityVerdict(
            graph_id, mode, "exhausted_budget", None, total, elapsed
        )
    save_checkpoint(len(tasks), total)
    return SolvabilityVerdict(graph_id, mode, "solvable", None, total, elapsed)


def _verdict_from_digits(
    graph, edges, mode, digits, examined, elapsed, graph_id
) -> SolvabilityVerdict:
    orientation = digits_to_orientation(digits, graph, list(edges))
    digraph = orientation.to_digraph()
    if mode == "simple" and not orientation.is_simple:
        raise InternalInvariantError("counterexample is not simple")
    if not is_clique_acyclic(digraph).holds:
        raise InternalInvariantError("counterexample is not clique-acyclic")
    if find_kernel_bruteforce(digraph).exists:
        raise InternalInvariantError("counterexample has a kernel")
    return SolvabilityVerdict(
        graph_id, mode, "counterexample", orientation, examined, elapsed
    )


def search_clique_acyclic_no_kernel(
    graph: UndirectedGraph, budget: Optional[int] = None
) -> SearchOutcome:
    """Hunt for a clique-acyclic orientation (reversible edges allowed)
    without a kernel.

    Edge values are tried reversible-last, so simple witnesses surface
    first where they exist.  Exhaustion without a witness certifies that
    the graph is kernel-solvable; running out of budget is reported as an
    explicitly unknown outcome.
    """
    if len(graph.edges) > MAX_EDGES:
        raise SizeCapError(
            f"{len(graph.edges)} edges exceed the enumeration cap of {MAX_EDGES}"
        )
    edges, completions = _clique_completions(graph, 3)
    n = graph.vertex_count
    examined = 0
    for digits in _enumerate_leaves(len(edges), completions, 3):
        examined += 1
        out, adjacency = _oracle_masks(n, edges, digits)
        if not kernel_exists_masks(n, out, adjacency):
            orientation = digits_to_orientation(digits, graph, edges)
            digraph = orientation.to_digraph()
            if not is_clique_acyclic(digraph).holds:
                raise InternalInvariantError("witness is not clique-acyclic")
            if find_kernel_bruteforce(digraph).exists:
                raise InternalInvariantError("witness has a kernel")
            return SearchOutcome("witness", orientation, examined)
        if budget is not None and examined >= budget:
            return SearchOutcome("unknown", None, examined)
    return SearchOutcome("exhausted", None, examined)


def find_near_sink(orientation: Orientation, labeling: Optional[AntiholeLabeling] = None) -> int:
    """Least vertex of an anti-hole orientation whose two distance-two
    edges both point at it.

    Requires a simple clique-acyclic orientation of an odd anti-hole on at
    least nine vertices; such a vertex always exists there, so not finding
    one is an internal invariant violation, not an input error.
    """
    n = orientation.base.vertex_count
    if labeling is None:
        labeling = AntiholeLabeling(n)
    if labeling.graph() != orientation.base:
        raise ContractError("orientation does not live on the labeled anti-hole")
    if labeling.n < 9 or labeling.n % 2 == 0:
        raise ContractError(
            f"the two-steps-inward argument needs an odd anti-hole with at "
            f"least 9 vertices, got {labeling.n}"
        )
    if not orientation.is_simple:
        raise ContractError("orientation is not simple")
    digraph = orientation.to_digraph()
    verdict = is_clique_acyclic(digraph)
    if not verdict.holds:
        raise ContractError(
            f"orientation is not clique-acyclic (clique {verdict.witness})"
        )
    for i in range(n):
        if digraph.has_arc((i - 2) % n, i) and digraph.has_arc((i + 2) % n, i):
            return i
    raise InternalInvariantError(
        "no vertex receives both distance-two edges: clique-acyclicity "
        "should force one"
    )
