"""Condition checkers, instance generators and the two constructive kernel
solvers for digraphs with blue and red arcs.

`solve_chain` handles digraphs whose colors satisfy the chain-closure
conditions (every monochromatic two-arc chain either closes in its own
color or is answered by the stated opposite-color pair).  It runs in
polynomial time: each improvement strictly raises an antichain of blue
strongly connected components, and no chain of antichains can be longer
than the component count plus one.

`solve_fixpoint` handles the path conditions (no monochromatic directed
cycle, and every red-arc/blue-arc path of length three induces another arc
not ending at its second vertex).  The same improvement loop applies but
no polynomial iteration bound is known, so it runs under an explicit
budget.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from .digraph import (
    ArcColor,
    ColoredDigraph,
    Digraph,
    VertexSet,
    _subset_mask,
    bits_of,
    is_independent,
    is_kernel,
    strongly_connected_components,
)
from .errors import (
    BudgetExceededError,
    ConditionsViolatedError,
    ContractError,
    InternalInvariantError,
)
from .poset import Comparison, Poset, compare_antichains

__all__ = [
    "RULE_BLUE_CHAIN",
    "RULE_RED_CHAIN",
    "RULE_MONO_CYCLE",
    "RULE_OPEN_PATH",
    "ConditionReport",
    "AntichainPotential",
    "SolveIteration",
    "SolveTrace",
    "check_chain_conditions",
    "check_path_conditions",
    "blue_component_order",
    "antichain_potential",
    "find_initial_independent",
    "improve_step",
    "solve_chain",
    "solve_fixpoint",
    "generate_ssw_instance",
    "generate_comparability_instance",
    "generate_chain_instance",
    "generate_path_instance",
]

RULE_BLUE_CHAIN = "blue-chain"
RULE_RED_CHAIN = "red-chain"
RULE_MONO_CYCLE = "mono-cycle"
RULE_OPEN_PATH = "open-path"


@dataclass(frozen=True)
class ConditionReport:
    """Checker verdict; each violation is (rule id, witness vertex tuple)."""

    satisfied: bool
    violations: tuple[tuple[str, tuple[int, ...]], ...]

    def __bool__(self) -> bool:
        return self.satisfied


def _report(violations: list) -> ConditionReport:
    return ConditionReport(satisfied=not violations, violations=tuple(violations))


def check_chain_conditions(
    cd: ColoredDigraph, first_only: bool = False
) -> ConditionReport:
    """Scan all vertex triples for the two chain-closure rules.

    blue rule: u -b-> v -b-> w requires u -b-> w, or w -r-> u and w -r-> v.
    red rule:  u -r-> v -r-> w requires u -r-> w, or v -b-> u and w -b-> u.
    The two rules are deliberately not mirror images of each other.  The
    three vertices are distinct: a monochromatic two-cycle is no chain, so
    opposite same-color arcs are fine on their own.
    """
    n = cd.vertex_count
    violations: list[tuple[str, tuple[int, ...]]] = []
    for v in range(n):
        for u in bits_of(cd._blue_in[v]):
            for w in bits_of(cd._blue_out[v]):
                if w == u or (cd._blue_out[u] >> w) & 1:
                    continue
                if (cd._red_out[w] >> u) & 1 and (cd._red_out[w] >> v) & 1:
                    continue
                violations.append((RULE_BLUE_CHAIN, (u, v, w)))
                if first_only:
                    return _report(violations)
        for u in bits_of(cd._red_in[v]):
            for w in bits_of(cd._red_out[v]):
                if w == u or (cd._red_out[u] >> w) & 1:
                    continue
                if (cd._blue_out[v] >> u) & 1 and (cd._blue_out[w] >> u) & 1:
                    continue
                violations.append((RULE_RED_CHAIN, (u, v, w)))
                if first_only:
                    return _report(violations)
    return _report(violations)


def _some_directed_cycle(digraph: Digraph) -> Optional[tuple[int, ...]]:
    """A directed cycle as a vertex tuple starting at its least vertex, or
    None when the digraph is acyclic; deterministic."""
    scc = strongly_connected_components(digraph)
    for comp in scc.components:
        if len(comp) < 2:
            continue
        comp_mask = 0
        for v in comp:
            comp_mask |= 1 << v
        root = comp[0]
        # BFS inside the component back to the root gives a shortest cycle.
        parent = {root: None}
        frontier = [root]
        while frontier:
            nxt = []
            for x in frontier:
                for y in bits_of(digraph._out[x] & comp_mask):
                    if y == root:
                        path = [x]
                        while parent[path[-1]] is not None:
                            path.append(parent[path[-1]])
                        path.reverse()
                        return tuple(path)
                    if y not in parent:
                        parent[y] = x
                        nxt.append(y)
            frontier = nxt
        raise InternalInvariantError("strongly connected component without a cycle")
    return None


def check_path_conditions(
    cd: ColoredDigraph, first_only: bool = False
) -> ConditionReport:
    """Check that no color contains a directed cycle and that every directed
    path (v1, v2, v3, v4) with a red first arc and a blue last arc (v4 = v1
    allowed) induces another arc not ending at v2."""
    n = cd.vertex_count
    d = cd.digraph
    violations: list[tuple[str, tuple[int, ...]]] = []
    for color in (ArcColor.BLUE, ArcColor.RED):
        cycle = _some_directed_cycle(cd.restriction(color))
        if cycle is not None:
            violations.append((RULE_MONO_CYCLE, cycle))
            if first_only:
                return _report(violations)

    def induces_extra_arc(quad: tuple[int, int, int, int]) -> bool:
        v1, v2, v3, v4 = quad
        vert_mask = (1 << v1) | (1 << v2) | (1 << v3) | (1 << v4)
        path_arcs = {(v1, v2), (v2, v3), (v3, v4)}
        for x in (v1, v2, v3, v4):
            for y in bits_of(d._out[x] & vert_mask):
                if y != v2 and (x, y) not in path_arcs:
                    return True
        return False

    for v2 in range(n):
        for v1 in bits_of(cd._red_in[v2]):
            for v3 in bits_of(d._out[v2]):
                if v3 == v1:
                    continue
                for v4 in bits_of(cd._blue_out[v3]):
                    if v4 == v2 or v4 == v3:
                        continue
                    quad = (v1, v2, v3, v4)
                    if not induces_extra_arc(quad):
                        violations.append((RULE_OPEN_PATH, quad))
                        if first_only:
                            return _report(violations)
    return _report(violations)


# -- the antichain potential ----------------------------------------------


@dataclass(frozen=True)
class AntichainPotential:
    """Which blue strongly connected components an independent set touches.

    `components` is the SCC partition of the blue restriction, `order` the
    blue-reachability partial order on component indices, and `antichain`
    the set of component indices the independent set intersects.
    """

    components: tuple[tuple[int, ...], ...]
    order: Poset
    antichain: frozenset[int]

    def representatives(self) -> tuple[int, ...]:
        """Smallest vertex of each touched component, sorted."""
        return tuple(sorted(self.components[i][0] for i in self.antichain))


def blue_component_order(cd: ColoredDigraph) -> tuple:
    """SCC partition of the blue restriction with its reachability order."""
    scc = strongly_connected_components(cd.restriction(ArcColor.BLUE))
    return scc, Poset(len(scc.components), scc.condensation_arcs)


def antichain_potential(
    cd: ColoredDigraph, independent, context=None
) -> AntichainPotential:
    """Potential of an independent set; raises ContractError when the
    touched components do not form an antichain (possible only when the
    chain conditions fail)."""
    scc, order = context if context is not None else blue_component_order(cd)
    mask = _subset_mask(cd.vertex_count, independent)
    hit = frozenset(scc.component_of[v] for v in bits_of(mask))
    if not order.is_antichain(hit):
        raise ContractError(
            f"components {sorted(hit)} touched by {list(bits_of(mask))} are "
            f"not an antichain of the blue component order"
        )
    return AntichainPotential(scc.components, order, hit)


# -- the improvement loop ---------------------------------------------------


def _family_violation(cd: ColoredDigraph, i_mask: int) -> Optional[int]:
    """Vertex w with a red arc from the set but no arc back, or None."""
    d = cd.digraph
    red_reach = 0
    for v in bits_of(i_mask):
        red_reach |= cd._red_out[v]
    for w in bits_of(red_reach & ~i_mask):
        if not d._out[w] & i_mask:
            return w
    return None


def _require_family(cd: ColoredDigraph, i_mask: int, label: str) -> None:
    if not is_independent(cd.digraph, VertexSet.from_mask(cd.vertex_count, i_mask)):
        raise ContractError(f"{label} is not independent")
    w = _family_violation(cd, i_mask)
    if w is not None:
        raise ContractError(
            f"{label} has a red arc to vertex {w} with no arc back",
            witness=w,
        )


def _unabsorbed_mask(d: Digraph, i_mask: int) -> int:
    """Vertices neither in the set nor sending an arc into it."""
    absorbed = 0
    for v in bits_of(i_mask):
        absorbed |= d._in[v]
    return ((1 << d.vertex_count) - 1) & ~(i_mask | absorbed)


def _init_vertex_within(cd: ColoredDigraph, u_mask: int) -> Optional[int]:
    """Least vertex of U whose unanswered red arcs within U are none."""
    d = cd.digraph
    for v in bits_of(u_mask):
        if not cd._red_out[v] & u_mask & ~d._in[v]:
            return v
    return None


def find_initial_independent(cd: ColoredDigraph) -> VertexSet:
    """Singleton of the least vertex all of whose red arcs are answered.

    Red arcs with no arc back form an acyclic digraph whenever the chain
    conditions hold; any sink of it qualifies.  A cycle in that digraph
    therefore reports the conditions as violated.
    """
    n = cd.vertex_count
    if n == 0:
        raise ContractError("empty digraph has no vertices to pick from")
    d = cd.digraph
    r_out = [cd._red_out[v] & ~d._in[v] for v in range(n)]
    unanswered = Digraph(
        n, [(v, w) for v in range(n) for w in bits_of(r_out[v])]
    )
    scc = strongly_connected_components(unanswered)
    for comp in scc.components:
        if len(comp) > 1:
            raise ConditionsViolatedError(
                f"unanswered red arcs contain a cycle through {comp}: "
                f"chain conditions violated"
            )
    v = min(x for x in range(n) if r_out[x] == 0)
    if cd._red_out[v] & ~d._in[v]:
        raise InternalInvariantError("chosen sink leaves a red arc unanswered")
    return VertexSet(n, [v])


def _apply_step(d: Digraph, i_mask: int, v: int) -> tuple[int, str]:
    if not d._in[v] & i_mask:
        return i_mask | (1 << v), "add"
    return (i_mask & ~d._in[v]) | (1 << v), "swap"


def improve_step(
    cd: ColoredDigraph, independent, check: bool = True
) -> tuple[VertexSet, str]:
    """One improvement: add or swap in the least qualifying unabsorbed
    vertex; the result is again independent with all red arcs answered.

    Preconditions (verified when `check`): the input is independent, all
    its red arcs are answered, and it is not yet a kernel.
    """
    d = cd.digraph
    n = cd.vertex_count
    i_mask = _subset_mask(n, independent)
    if check:
        _require_family(cd, i_mask, "input set")
        if is_kernel(d, VertexSet.from_mask(n, i_mask)):
            raise ContractError("input set is already a kernel")
    u_mask = _unabsorbed_mask(d, i_mask)
    if not u_mask:
        raise ContractError("input set is already a kernel")
    v = _init_vertex_within(cd, u_mask)
    if v is None:
        raise ConditionsViolatedError(
            "no unabsorbed vertex has all its red arcs answered within the "
            "unabsorbed set: chain conditions violated"
        )
    new_mask, action = _apply_step(d, i_mask, v)
    if check:
        try:
            _require_family(cd, new_mask, "improved set")
        except ContractError as exc:
            raise InternalInvariantError(
                f"improvement left the family: {exc}"
            ) from exc
    return VertexSet.from_mask(n, new_mask), action


@dataclass(frozen=True)
class SolveIteration:
    independent: VertexSet
    potential: Optional[AntichainPotential]
    action: str


@dataclass(frozen=True)
class SolveTrace:
    """Solver run: the visited independent sets and the kernel they reach."""

    iterations: tuple[SolveIteration, ...]
    result: VertexSet

    @property
    def improve_steps(self) -> int:
        return max(0, len(self.iterations) - 1)

    def to_json_obj(self) -> dict:
        return {
            "iterations": [
                {
                    "independent": list(it.independent.members()),
                    "potential": (
                        list(it.potential.representatives())
                        if it.potential is not None
                        else None
                    ),
                    "action": it.action,
                }
                for it in self.iterations
            ],
            "result": list(self.result.members()),
        }


def solve_chain(cd: ColoredDigraph, check: bool = True) -> SolveTrace:
    """Kernel solver for the chain-closure conditions.

    Starts from the initial singleton and improves until a kernel appears.
    The antichain potential strictly increases at every step, so at most
    vertex_count improvements can happen; exceeding that bound (or a
    non-increasing potential) is a bug, not an input error.
    """
    if check:
        report = check_chain_conditions(cd)
        if not report.satisfied:
            raise ConditionsViolatedError(
                f"chain conditions violated: {report.violations[0]}", report=report
            )
    n = cd.vertex_count
    if n == 0:
        return SolveTrace(iterations=(), result=VertexSet(0))
    d = cd.digraph
    context = blue_component_order(cd)
    current = find_initial_independent(cd)
    potential = antichain_potential(cd, current, context)
    iterations = [SolveIteration(current, potential, "init")]
    while not is_kernel(d, current):
        if len(iterations) > n:
            raise InternalInvariantError(
                f"more than {n} improvement steps: the antichain chain bound failed"
            )
        current, action = improve_step(cd, current, check=check)
        new_potential = antichain_potential(cd, current, context)
        verdict = compare_antichains(
            context[1], potential.antichain, new_potential.antichain
        )
        if verdict is not Comparison.LESS:
            raise InternalInvariantError(
                f"antichain potential did not strictly increase ({verdict.value})"
            )
        potential = new_potential
        iterations.append(SolveIteration(current, new_potential, action))
    return SolveTrace(iterations=tuple(iterations), result=current)


def solve_fixpoint(
    cd: ColoredDigraph, budget: Optional[int] = None, check: bool = True
) -> SolveTrace:
    """Kernel solver for the path conditions.

    Same improvement loop, but the new vertex is simply the least red-sink
    of the unabsorbed part, and termination rests on the acyclicity of the
    blue-step relation between independent sets, for which no polynomial
    bound is known.  `budget` caps the improvement count (default
    n * 2**n); exhausting it raises BudgetExceededError carrying the trace
    so far.
    """
    if check:
        report = check_path_conditions(cd)
        if not report.satisfied:
            raise ConditionsViolatedError(
                f"path conditions violated: {report.violations[0]}", report=report
            )
    n = cd.vertex_count
    if n == 0:
        return SolveTrace(iterations=(), result=VertexSet(0))
    if budget is None:
        budget = n * (1 << n)
    d = cd.digraph
    red_sinks = [v for v in range(n) if cd._red_out[v] == 0]
    if not red_sinks:
        raise ConditionsViolatedError(
            "every vertex has an outgoing red arc: red restriction is cyclic"
        )
    current = VertexSet(n, [red_sinks[0]])
    iterations = [SolveIteration(current, None, "init")]
    while not is_kernel(d, current):
        if len(iterations) - 1 >= budget:
            raise BudgetExceededError(
                f"no kernel after {budget} improvement steps",
                partial=tuple(iterations),
            )
        i_mask = current.mask
        u_mask = _unabsorbed_mask(d, i_mask)
        v = None
        for x in bits_of(u_mask):
            if not cd._red_out[x] & u_mask:
                v = x
                break
        if v is None:
            raise ConditionsViolatedError(
                "unabsorbed set has no red-sink: red restriction is cyclic"
            )
        new_mask, action = _apply_step(d, i_mask, v)
        if check:
            try:
                _require_family(cd, new_mask, "improved set")
            except ContractError as exc:
                raise InternalInvariantError(
                    f"improvement left the family: {exc}"
                ) from exc
        current = VertexSet.from_mask(n, new_mask)
        iterations.append(SolveIteration(current, None, action))
    return SolveTrace(iterations=tuple(iterations), result=current)


# -- instance generators ----------------------------------------------------


def _closure(reach: list[int]) -> list[int]:
    reach = reach[:]
    n = len(reach)
    changed = True
    while changed:
        changed = False
        for v in range(n):
            acc = reach[v]
            for w in bits_of(reach[v]):
                acc |= reach[w]
            if acc != reach[v]:
                reach[v] = acc
                changed = True
    return reach


def _random_transitive_masks(rng: random.Random, n: int, density: float) -> list[int]:
    order = list(range(n))
    rng.shuffle(order)
    out = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < density:
                out[order[i]] |= 1 << order[j]
    return _closure(out)


def generate_ssw_instance(seed: int, n: int, density: float = 0.35) -> ColoredDigraph:
    """Two transitive color classes on disjoint arc sets.

    Blue is the transitive closure of a random forward-sampled DAG.  Red is
    grown arc by arc, keeping its closure at every step and rejecting any
    candidate whose closure would collide with a blue arc, so both classes
    stay genuinely transitive.  Deterministic by seed; the output is
    re-verified against the chain conditions.
    """
    rng = random.Random(("ssw", seed, n, density).__repr__())
    blue = _random_transitive_masks(rng, n, density)
    order = list(range(n))
    rng.shuffle(order)
    candidates = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < density:
                candidates.append((order[i], order[j]))
    red = [0] * n
    for u, v in candidates:
        trial = red[:]
        trial[u] |= 1 << v
        trial = _closure(trial)
        if all(trial[x] & blue[x] == 0 for x in range(n)):
            red = trial
    rows = [(u, v, ArcColor.BLUE) for u in range(n) for v in bits_of(blue[u])]
    rows += [(u, v, ArcColor.RED) for u in range(n) for v in bits_of(red[u])]
    cd = ColoredDigraph.from_colored_arcs(n, rows)
    if not check_chain_conditions(cd, first_only=True).satisfied:
        raise InternalInvariantError("transitive-class instance fails the chain conditions")
    return cd


def generate_comparability_instance(
    seed: int, n: int, density: float = 0.45
) -> ColoredDigraph:
    """Color a reversible-triangle-free orientation of a comparability graph.

    A random partial order provides the transitive orientation; every
    comparability edge gets a random direction (occasionally both), then
    directed triangles with fewer than two reversible arcs are repaired by
    making one more arc reversible until none remain.  Arcs agreeing with
    the partial order are colored red, the others blue.
    """
    from .oracle import is_M_clique_acyclic  # local import to avoid a cycle

    rng = random.Random(("comparability", seed, n, density).__repr__())
    strict = _random_transitive_masks(rng, n, density)
    edges = [
        (u, v)
        for u in range(n)
        for v in range(u + 1, n)
        if (strict[u] >> v) & 1 or (strict[v] >> u) & 1
    ]
    assignment = {}
    for e in edges:
        roll = rng.random()
        if roll < 0.45:
            assignment[e] = "fwd"
        elif roll < 0.9:
            assignment[e] = "bwd"
        else:
            assignment[e] = "both"

    def arcs_of() -> list[tuple[int, int]]:
        arcs = []
        for (u, v), direction in assignment.items():
            if direction != "bwd":
                arcs.append((u, v))
            if direction != "fwd":
                arcs.append((v, u))
        return arcs

    while True:
        digraph = Digraph(n, arcs_of())
        verdict = is_M_clique_acyclic(digraph)
        if verdict.holds:
            break
        a, b, c = verdict.witness
        for (x, y) in ((a, b), (b, c), (c, a)):
            if not digraph.has_arc(y, x):
                assignment[(min(x, y), max(x, y))] = "both"
                break

    rows = []
    for u, v in digraph.arcs:
        agrees = (strict[u] >> v) & 1
        rows.append((u, v, ArcColor.RED if agrees else ArcColor.BLUE))
    cd = ColoredDigraph.from_colored_arcs(n, rows)
    if not check_chain_conditions(cd, first_only=True).satisfied:
        raise InternalInvariantError(
            "comparability coloring fails the chain conditions"
        )
    return cd


def generate_chain_instance(
    seed: int, n: int, budget: int = 400, density: float = 0.25
) -> Optional[ColoredDigraph]:
    """Random colored digraph repaired toward the chain conditions.

    Violations are fixed by forcing the first alternative (adding or
    recoloring the closing arc) or dropping one arc of an offending
    monochromatic two-cycle.  Gives up after `budget` repairs and returns
    None.
    """
    rng = random.Random(("chain", seed, n, density).__repr__())
    arcs: dict[tuple[int, int], ArcColor] = {}
    for u in range(n):
        for v in range(n):
            if u != v and rng.random() < density:
                arcs[(u, v)] = ArcColor.BLUE if rng.random() < 0.5 else ArcColor.RED
    for _ in range(budget):
        cd = ColoredDigraph.from_colored_arcs(
            n, [(u, v, c) for (u, v), c in arcs.items()]
        )
        report = check_chain_conditions(cd, first_only=True)
        if report.satisfied:
            return cd
        rule, (u, v, w) = report.violations[0]
        if u == w:
            del arcs[(v, u)]
        else:
            arcs[(u, w)] = ArcColor.BLUE if rule == RULE_BLUE_CHAIN else ArcColor.RED
    return None


def generate_path_instance(seed: int, n: int, density: float = 0.3) -> ColoredDigraph:
    """Random instance satisfying the path conditions.

    Each color is sampled forward along its own random vertex order, which
    rules out monochromatic cycles outright; remaining path violations are
    repaired by deleting the closing blue arc, which terminates because the
    arc count strictly decreases.
    """
    rng = random.Random(("path", seed, n, density).__repr__())
    position = {}
    for color in (ArcColor.BLUE, ArcColor.RED):
        order = list(range(n))
        rng.shuffle(order)
        position[color] = {v: i for i, v in enumerate(order)}
    arcs: dict[tuple[int, int], ArcColor] = {}
    for u in range(n):
        for v in range(n):
            if u == v or rng.random() >= density:
                continue
            color = ArcColor.BLUE if rng.random() < 0.5 else ArcColor.RED
            if position[color][u] < position[color][v]:
                arcs[(u, v)] = color
    while True:
        cd = ColoredDigraph.from_colored_arcs(
            n, [(u, v, c) for (u, v), c in arcs.items()]
        )
        report = check_path_conditions(cd, first_only=True)
        if report.satisfied:
            return cd
        rule, witness = report.violations[0]
        if rule != RULE_OPEN_PATH:
            raise InternalInvariantError(
                "forward-sampled colors produced a monochromatic cycle"
            )
        _, _, v3, v4 = witness
        del arcs[(v3, v4)]
