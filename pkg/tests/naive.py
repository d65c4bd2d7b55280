"""Independent brute-force reference implementations.

Everything here works on plain (vertex_count, arc list) data with nothing
but the standard library, so library results can be cross-checked against
definitions rather than against the code under test.
"""

from itertools import combinations, permutations


def subsets(n):
    for mask in range(1 << n):
        yield [v for v in range(n) if (mask >> v) & 1]


def naive_is_independent(n, arcs, members):
    s = set(members)
    return not any(u in s and v in s for (u, v) in arcs)


def naive_is_kernel(n, arcs, members):
    s = set(members)
    if not naive_is_independent(n, arcs, members):
        return False
    for v in range(n):
        if v in s:
            continue
        if not any(u == v and w in s for (u, w) in arcs):
            return False
    return True


def naive_is_semi_kernel(n, arcs, members):
    s = set(members)
    if not naive_is_independent(n, arcs, members):
        return False
    reached = {w for (u, w) in arcs if u in s and w not in s}
    for w in reached:
        if not any(x == w and y in s for (x, y) in arcs):
            return False
    return True


def naive_kernels(n, arcs):
    return [frozenset(s) for s in subsets(n) if naive_is_kernel(n, arcs, s)]


def naive_nonempty_semi_kernels(n, arcs):
    return [
        frozenset(s)
        for s in subsets(n)
        if s and naive_is_semi_kernel(n, arcs, s)
    ]


def naive_cycles(n, arcs, parity="all", max_len=None):
    """All directed cycles as rotation classes, via raw sequence scanning."""
    arc_set = set(arcs)
    if max_len is None or max_len > n:
        max_len = n
    found = set()
    for length in range(2, max_len + 1):
        if parity == "odd" and length % 2 == 0:
            continue
        if parity == "even" and length % 2 == 1:
            continue
        for seq in permutations(range(n), length):
            if all(
                (seq[i], seq[(i + 1) % length]) in arc_set for i in range(length)
            ):
                start = seq.index(min(seq))
                found.add(seq[start:] + seq[:start])
    return found


def naive_reachable(n, arcs):
    reach = [[u == v for v in range(n)] for u in range(n)]
    for (u, v) in arcs:
        reach[u][v] = True
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if reach[i][k] and reach[k][j]:
                    reach[i][j] = True
    return reach


def naive_sccs(n, arcs):
    """Set of frozensets; mutual reachability classes."""
    reach = naive_reachable(n, arcs)
    return {
        frozenset(v for v in range(n) if reach[u][v] and reach[v][u])
        for u in range(n)
    }


def naive_has_odd_directed_cycle(n, arcs):
    return bool(naive_cycles(n, arcs, parity="odd"))


def naive_cliques(n, edges):
    """Every clique (any size >= 1) of an undirected edge set."""
    adj = {v: set() for v in range(n)}
    for (u, v) in edges:
        adj[u].add(v)
        adj[v].add(u)
    cliques = []
    for size in range(1, n + 1):
        for group in combinations(range(n), size):
            if all(b in adj[a] for a, b in combinations(group, 2)):
                cliques.append(group)
    return cliques


def naive_clique_acyclic(n, arcs):
    """Every clique of the underlying adjacency must have a vertex with
    arcs from all other clique members."""
    arc_set = set(arcs)
    edges = {(min(u, v), max(u, v)) for (u, v) in arcs}
    for clique in naive_cliques(n, edges):
        ok = any(
            all((y, x) in arc_set for y in clique if y != x) for x in clique
        )
        if not ok:
            return False
    return True


def naive_m_clique_acyclic(n, arcs):
    arc_set = set(arcs)
    for triple in permutations(range(n), 3):
        a, b, c = triple
        if (a, b) in arc_set and (b, c) in arc_set and (c, a) in arc_set:
            reversible = sum(
                1 for pair in ((b, a), (c, b), (a, c)) if pair in arc_set
            )
            if reversible < 2:
                return False
    return True


def naive_simple_orientations(n, edges):
    """All 2^m arc sets orienting each edge one way."""
    edges = sorted(edges)
    m = len(edges)
    for mask in range(1 << m):
        arcs = []
        for i, (u, v) in enumerate(edges):
            arcs.append((u, v) if (mask >> i) & 1 == 0 else (v, u))
        yield arcs
