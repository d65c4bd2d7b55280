"""Chord taxonomy on directed cycles, the chord-rule condition checkers,
and the constructive kernel procedure they enable.

A chord of a directed cycle is an arc between cycle vertices that is not a
cycle arc.  Its span is the cycle distance from tail to head following the
cycle direction; a chord is odd when the span is odd and short when the
span is two.  The kernel-existence condition asks every odd directed cycle
for one of three chord patterns; checking it enumerates all odd cycles, so
everything here is exponential by design.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .digraph import (
    Digraph,
    VertexSet,
    _subset_mask,
    bits_of,
    enumerate_directed_cycles,
    is_kernel,
    is_semi_kernel,
)
from .errors import ConditionsViolatedError, ContractError, InternalInvariantError
from .oracle import kernel_via_semikernel_recursion

__all__ = [
    "RULE_CONSECUTIVE_HEADS",
    "RULE_TWO_ODD",
    "RULE_CROSSING_SHORT_ODD",
    "RULE_TWO_REVERSIBLE",
    "RULE_NONE",
    "Chord",
    "CycleReport",
    "ChordConditionReport",
    "classify_chord",
    "chords_of_cycle",
    "are_crossing",
    "are_nested",
    "have_consecutive_heads",
    "check_chord_conditions",
    "check_gsnl_condition",
    "check_duchet_condition",
    "alternating_path_semi_kernel",
    "chord_semi_kernel_strategy",
    "find_kernel_via_chords",
    "satisfied_rule",
]

RULE_CONSECUTIVE_HEADS = "consecutive-heads"
RULE_TWO_ODD = "two-odd-noncrossing-nonnested"
RULE_CROSSING_SHORT_ODD = "crossing-short-odd"
RULE_TWO_REVERSIBLE = "two-reversible-arcs"
RULE_NONE = "none"


@dataclass(frozen=True)
class Chord:
    """An arc between cycle vertices that is not a cycle arc."""

    tail: int
    head: int
    tail_pos: int
    head_pos: int
    span: int

    @property
    def is_odd(self) -> bool:
        return self.span % 2 == 1

    @property
    def is_short(self) -> bool:
        return self.span == 2


def classify_chord(digraph: Digraph, cycle: tuple[int, ...], arc: tuple[int, int]) -> Chord:
    """Validate and measure a chord of the given directed cycle."""
    position = {v: i for i, v in enumerate(cycle)}
    tail, head = arc
    if tail not in position or head not in position:
        raise ContractError(f"arc ({tail}, {head}) has an endpoint off the cycle")
    if not digraph.has_arc(tail, head):
        raise ContractError(f"({tail}, {head}) is not an arc of the digraph")
    length = len(cycle)
    span = (position[head] - position[tail]) % length
    if span == 1:
        raise ContractError(f"({tail}, {head}) is a cycle arc, not a chord")
    if span == 0:
        raise ContractError(f"({tail}, {head}) is a loop")
    return Chord(
        tail=tail,
        head=head,
        tail_pos=position[tail],
        head_pos=position[head],
        span=span,
    )


def chords_of_cycle(digraph: Digraph, cycle: tuple[int, ...]) -> list[Chord]:
    """Every chord of the cycle, ordered by (tail position, head position)."""
    position = {v: i for i, v in enumerate(cycle)}
    cycle_mask = 0
    for v in cycle:
        cycle_mask |= 1 << v
    found = []
    for tail in cycle:
        for head in bits_of(digraph._out[tail] & cycle_mask):
            span = (position[head] - position[tail]) % len(cycle)
            if span != 1:
                found.append(
                    Chord(tail, head, position[tail], position[head], span)
                )
    found.sort(key=lambda c: (c.tail_pos, c.head_pos))
    return found


def _cyclic_positions(anchor: int, others: tuple[int, ...], length: int) -> tuple[int, ...]:
    return tuple((p - anchor) % length for p in others)


def are_crossing(c1: Chord, c2: Chord, cycle_length: int) -> bool:
    """Endpoints (u, v) and (w, t) are distinct and appear around the cycle
    as u, w, v, t in one of the two rotational directions."""
    u, v, w, t = c1.tail_pos, c1.head_pos, c2.tail_pos, c2.head_pos
    if len({u, v, w, t}) != 4:
        return False
    rw, rv, rt = _cyclic_positions(u, (w, v, t), cycle_length)
    return rw < rv < rt or rt < rv < rw


def are_nested(c1: Chord, c2: Chord, cycle_length: int) -> bool:
    """Endpoints (u, v) and (w, t) are distinct and appear around the cycle
    as u, w, t, v in one of the two rotational directions."""
    u, v, w, t = c1.tail_pos, c1.head_pos, c2.tail_pos, c2.head_pos
    if len({u, v, w, t}) != 4:
        return False
    rw, rt, rv = _cyclic_positions(u, (w, t, v), cycle_length)
    return rw < rt < rv or rv < rt < rw


def have_consecutive_heads(c1: Chord, c2: Chord, cycle_length: int) -> bool:
    """Heads are distinct and sit on adjacent cycle positions, either order."""
    gap = (c1.head_pos - c2.head_pos) % cycle_length
    return gap in (1, cycle_length - 1)


def satisfied_rule(chords: list[Chord], length: int) -> str:
    """First chord rule the cycle meets, in the fixed rule order."""
    for i, c1 in enumerate(chords):
        for c2 in chords[i + 1 :]:
            if have_consecutive_heads(c1, c2, length):
                return RULE_CONSECUTIVE_HEADS
    for i, c1 in enumerate(chords):
        if not c1.is_odd:
            continue
        for c2 in chords[i + 1 :]:
            if (
                c2.is_odd
                and not are_crossing(c1, c2, length)
                and not are_nested(c1, c2, length)
            ):
                return RULE_TWO_ODD
    for c1 in chords:
        for c2 in chords:
            if c1.is_short and c2.is_odd and are_crossing(c1, c2, length):
                return RULE_CROSSING_SHORT_ODD
    return RULE_NONE


@dataclass(frozen=True)
class CycleReport:
    cycle: tuple[int, ...]
    chords: tuple[Chord, ...]
    rule: str


@dataclass(frozen=True)
class ChordConditionReport:
    """Per-odd-cycle rule tags plus the overall verdict."""

    satisfied: bool
    cycles: tuple[CycleReport, ...]
    first_failing: Optional[tuple[int, ...]]

    def __bool__(self) -> bool:
        return self.satisfied

    def to_json_obj(self) -> dict:
        return {
            "satisfied": self.satisfied,
            "cycles": [
                {"cycle": list(c.cycle), "rule": c.rule} for c in self.cycles
            ],
            "first_failing": list(self.first_failing) if self.first_failing else None,
        }


def check_chord_conditions(
    digraph: Digraph,
    max_len: Optional[int] = None,
    budget: Optional[int] = None,
    rules: tuple[str, ...] = (
        RULE_CONSECUTIVE_HEADS,
        RULE_TWO_ODD,
        RULE_CROSSING_SHORT_ODD,
    ),
) -> ChordConditionReport:
    """Tag every odd directed cycle with the first chord rule it satisfies.

    Rules are tried in a fixed order (consecutive heads, then two odd
    chords neither crossing nor nested, then a crossing short/odd pair) so
    tags are deterministic.  The verdict holds iff no cycle is tagged
    `none`.  `max_len` defaults to the vertex count: the condition
    quantifies over all odd directed cycles.
    """
    entries = []
    first_failing = None
    for cycle in enumerate_directed_cycles(digraph, parity="odd", max_len=max_len, budget=budget):
        chords = chords_of_cycle(digraph, cycle)
        rule = satisfied_rule(chords, len(cycle))
        if rule not in rules:
            rule = RULE_NONE
        entries.append(CycleReport(cycle=cycle, chords=tuple(chords), rule=rule))
        if rule == RULE_NONE and first_failing is None:
            first_failing = cycle
    return ChordConditionReport(
        satisfied=first_failing is None,
        cycles=tuple(entries),
        first_failing=first_failing,
    )


def check_gsnl_condition(
    digraph: Digraph, max_len: Optional[int] = None, budget: Optional[int] = None
) -> ChordConditionReport:
    """Restrict the check to the consecutive-heads rule alone."""
    return check_chord_conditions(
        digraph, max_len=max_len, budget=budget, rules=(RULE_CONSECUTIVE_HEADS,)
    )


def check_duchet_condition(
    digraph: Digraph, max_len: Optional[int] = None, budget: Optional[int] = None
) -> ChordConditionReport:
    """Every odd directed cycle must have at least two reversible arcs."""
    entries = []
    first_failing = None
    for cycle in enumerate_directed_cycles(digraph, parity="odd", max_len=max_len, budget=budget):
        length = len(cycle)
        reversible = sum(
            1
            for i in range(length)
            if digraph.has_arc(cycle[(i + 1) % length], cycle[i])
        )
        rule = RULE_TWO_REVERSIBLE if reversible >= 2 else RULE_NONE
        entries.append(
            CycleReport(cycle=cycle, chords=tuple(chords_of_cycle(digraph, cycle)), rule=rule)
        )
        if rule == RULE_NONE and first_failing is None:
            first_failing = cycle
    return ChordConditionReport(
        satisfied=first_failing is None,
        cycles=tuple(entries),
        first_failing=first_failing,
    )


# -- the constructive procedure ---------------------------------------------


def alternating_path_semi_kernel(digraph: Digraph, u: int, kernel_below) -> VertexSet:
    """Grow a semi-kernel from K' = K + {u} by alternating-path search.

    `kernel_below` must be a kernel K of the digraph minus the closed
    in-neighborhood of `u`, meeting N+(u).  The result is the set of K'
    vertices reachable from K ∩ N+(u) by a directed path that alternates
    between K' and non-K' vertices and never lets a non-final vertex shoot
    an arc back at an earlier K' vertex.  States are memoized on (current
    vertex, set of earlier K' vertices on the path): the back-arc rule only
    ever inspects that set, and revisits splice away, so walks and paths
    reach the same endpoints.

    Under the chord conditions the result is a semi-kernel excluding `u`;
    either failing is reported as an internal invariant violation, since it
    is exactly what the conditions guarantee.
    """
    n = digraph.vertex_count
    digraph._check_vertex(u)
    k_mask = _subset_mask(n, kernel_below)
    removed = digraph._in[u] | (1 << u)
    sub, labels = digraph.induced(bits_of(((1 << n) - 1) & ~removed))
    index = {v: i for i, v in enumerate(labels)}
    if k_mask & removed:
        raise ContractError("kernel_below intersects the closed in-neighborhood of u")
    if not is_kernel(sub, [index[v] for v in bits_of(k_mask)]):
        raise ContractError(
            "kernel_below is not a kernel of the digraph minus N-[u]"
        )
    start_mask = k_mask & digraph._out[u]
    if not start_mask:
        raise ContractError("kernel_below does not meet the out-neighborhood of u")

    out = digraph._out
    kprime = k_mask | (1 << u)
    result = start_mask
    seen = {(v, 0) for v in bits_of(start_mask)}
    stack = [(v, 0) for v in bits_of(start_mask)]
    while stack:
        vertex, before = stack.pop()
        # extending past `vertex` activates its back-arc constraint
        if out[vertex] & before:
            continue
        now_before = before | ((1 << vertex) & kprime)
        in_kprime = (kprime >> vertex) & 1
        for nxt in bits_of(out[vertex]):
            if ((kprime >> nxt) & 1) == in_kprime:
                continue
            state = (nxt, now_before)
            if state in seen:
                continue
            seen.add(state)
            if (kprime >> nxt) & 1:
                result |= 1 << nxt
            stack.append(state)

    semi = VertexSet.from_mask(n, result)
    if (result >> u) & 1:
        raise InternalInvariantError(
            "alternating-path set reached u: chord conditions must be violated"
        )
    if not is_semi_kernel(digraph, semi):
        raise InternalInvariantError(
            "alternating-path set is not a semi-kernel: chord conditions must be violated"
        )
    return semi


def chord_semi_kernel_strategy(digraph: Digraph) -> VertexSet:
    """Non-empty semi-kernel of a digraph satisfying the chord conditions.

    Usable as the strategy argument of kernel_via_semikernel_recursion: a
    least vertex u is set aside, the rest minus N-[u] is solved recursively,
    and either K + {u} already works or the alternating-path construction
    extracts the semi-kernel from K.
    """
    n = digraph.vertex_count
    if n == 1:
        return VertexSet(1, [0])
    u = 0
    removed = digraph._in[u] | (1 << u)
    keep = ((1 << n) - 1) & ~removed
    sub, labels = digraph.induced(bits_of(keep))
    k_sub = kernel_via_semikernel_recursion(sub, strategy=chord_semi_kernel_strategy)
    k_mask = 0
    for i in k_sub:
        k_mask |= 1 << labels[i]
    if not k_mask & digraph._out[u]:
        return VertexSet.from_mask(n, k_mask | (1 << u))
    return alternating_path_semi_kernel(digraph, u, VertexSet.from_mask(n, k_mask))


def find_kernel_via_chords(
    digraph: Digraph, max_len: Optional[int] = None, budget: Optional[int] = None
) -> VertexSet:
    """Kernel of a digraph whose odd cycles all satisfy a chord rule.

    The condition is checked first (up to the enumeration budget) and a
    failing cycle refuses the input.  The kernel is then assembled by the
    semi-kernel recursion, with the alternating-path construction supplying
    each level's semi-kernel; the condition is inherited by induced
    subdigraphs, so it is not re-checked per level.
    """
    report = check_chord_conditions(digraph, max_len=max_len, budget=budget)
    if not report.satisfied:
        raise ConditionsViolatedError(
            f"odd directed cycle {report.first_failing} satisfies no chord rule",
            report=report,
        )
    result = kernel_via_semikernel_recursion(digraph, strategy=chord_semi_kernel_strategy)
    assert is_kernel(digraph, result)
    return result
