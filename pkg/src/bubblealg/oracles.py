"""Independent reference computations used to validate the main engine.

Everything here is deliberately written against different algorithms
than the corresponding engine code: counts come from closed formulas,
diagram enumeration from a filter over all coloured Brauer matchings
with a pairwise chord-crossing test, and one-colour composition from
union-find contraction.  Tests compare engine output against these
routes; the command line check subcommand reuses them.
"""

from __future__ import annotations

from itertools import product
from math import comb
from typing import Iterator

# ---------------------------------------------------------------------------
# counting formulas


def catalan(n: int) -> int:
    if n < 0:
        return 0
    return comb(2 * n, n) // (n + 1)


def bubble_basis_count(n: int) -> int:
    """Closed form for the number of two-colour diagrams on n + n points."""
    return sum(comb(2 * n, 2 * k) * catalan(k) * catalan(n - k) for k in range(n + 1))


def tl_halfdiagram_count(n: int, defects: int) -> int:
    """Ballot count of one-colour half diagrams with the given defect number."""
    if defects < 0 or defects > n or (n - defects) % 2:
        return 0
    m = (n - defects) // 2
    return comb(n, m) - (comb(n, m - 1) if m >= 1 else 0)


# ---------------------------------------------------------------------------
# brute-force enumeration of coloured diagrams


def _circular(n_north: int, n_south: int) -> list[int]:
    return list(range(1, n_north + 1)) + [n_north + k for k in range(n_south, 0, -1)]


def _all_matchings(points: list[int]) -> Iterator[list[tuple[int, int]]]:
    if not points:
        yield []
        return
    first, rest = points[0], points[1:]
    for k, partner in enumerate(rest):
        sub = rest[:k] + rest[k + 1 :]
        for tail in _all_matchings(sub):
            yield [(first, partner)] + tail


def _chords_cross(order: dict[int, int], a: int, b: int, c: int, d: int) -> bool:
    # cut the circle at a; the chord a-b crosses c-d iff exactly one of
    # c, d falls strictly between a and b in the cut order
    pa, pb = order[a], order[b]
    if pa > pb:
        pa, pb = pb, pa
    inside = sum(1 for x in (order[c], order[d]) if pa < x < pb)
    return inside == 1


def brute_force_bubble_encodings(n_north: int, n_south: int | None = None) -> list[str]:
    """All valid coloured diagrams by exhaustive filter, as sorted encodings."""
    if n_south is None:
        n_south = n_north
    circ = _circular(n_north, n_south)
    order = {pid: k for k, pid in enumerate(circ)}
    out = []
    for matching in _all_matchings(list(range(1, n_north + n_south + 1))):
        m = len(matching)
        crossing_pairs = [
            (i, j)
            for i in range(m)
            for j in range(i + 1, m)
            if _chords_cross(order, *matching[i], *matching[j])
        ]
        for colours in product("rb", repeat=m):
            if any(colours[i] == colours[j] for i, j in crossing_pairs):
                continue
            body = ";".join(
                f"({min(p, q)},{max(p, q)},{c})"
                for (p, q), c in sorted(
                    zip(matching, colours), key=lambda t: min(t[0])
                )
            )
            out.append(f"D[{n_north},{n_south}]{{{body}}}")
    return sorted(out)


# ---------------------------------------------------------------------------
# one-colour half diagrams and their bilinear form


def tl_bras(n: int, defects: int) -> list[tuple[tuple[tuple[int, int], ...], tuple[int, ...]]]:
    """One-colour half diagrams on n points as (arcs, defect positions).

    A defect may not sit inside an arc, so it is only allowed while no
    arc is open.
    """
    results: list[tuple[tuple[tuple[int, int], ...], tuple[int, ...]]] = []

    def rec(pos: int, stack: list[int], arcs: list[tuple[int, int]], defs: list[int]) -> None:
        if pos > n:
            if not stack and len(defs) == defects:
                results.append((tuple(sorted(arcs)), tuple(defs)))
            return
        remaining = n - pos + 1
        if len(stack) + len(defs) > n:
            return
        # close the innermost open arc
        if stack:
            top = stack.pop()
            arcs.append((top, pos))
            rec(pos + 1, stack, arcs, defs)
            arcs.pop()
            stack.append(top)
        # place a defect; forbidden under an open arc
        if not stack and len(defs) < defects:
            defs.append(pos)
            rec(pos + 1, stack, arcs, defs)
            defs.pop()
        # open a new arc if it can still be closed
        if remaining - 1 >= len(stack) + 1:
            stack.append(pos)
            rec(pos + 1, stack, arcs, defs)
            stack.pop()

    rec(1, [], [], [])
    return sorted(results)


def tl_inner_exponent(
    x: tuple[tuple[tuple[int, int], ...], tuple[int, ...]],
    y: tuple[tuple[tuple[int, int], ...], tuple[int, ...]],
) -> int | None:
    """Loop exponent of the bilinear pairing of two half diagrams, None if zero.

    The two halves are glued point by point.  The pairing vanishes
    whenever a chain joins two defects of the same half; otherwise the
    value is the loop parameter raised to the number of closed cycles.
    """
    arcs_x, defs_x = x
    arcs_y, defs_y = y
    n = 2 * len(arcs_x) + len(defs_x)
    # nodes 1..n are x points, n+1..2n are y points
    parent = list(range(2 * n + 1))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a: int, b: int) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for p, q in arcs_x:
        union(p, q)
    for p, q in arcs_y:
        union(n + p, n + q)
    for p in range(1, n + 1):
        union(p, n + p)
    comp_defects: dict[int, list[int]] = {}
    for p in defs_x:
        comp_defects.setdefault(find(p), []).append(0)
    for p in defs_y:
        comp_defects.setdefault(find(n + p), []).append(1)
    for members in comp_defects.values():
        if sorted(members) != [0, 1]:
            return None
    loop_roots = set()
    for p in range(1, n + 1):
        r = find(p)
        if r not in comp_defects:
            loop_roots.add(r)
    return len(loop_roots)


def tl_gram_exponents(n: int, defects: int) -> list[list[int | None]]:
    """Pairing matrix of the one-colour half diagrams; entries are loop
    exponents, None for zero."""
    bras = tl_bras(n, defects)
    return [[tl_inner_exponent(x, y) for y in bras] for x in bras]


# ---------------------------------------------------------------------------
# one-colour full diagrams and union-find composition

TLDiagram = tuple[tuple[int, int], ...]


def tl_diagrams(n: int) -> list[TLDiagram]:
    """All one-colour diagrams on n + n points, sorted."""
    circ = _circular(n, n)
    order = {pid: k for k, pid in enumerate(circ)}
    out = []
    for matching in _all_matchings(list(range(1, 2 * n + 1))):
        m = len(matching)
        if any(
            _chords_cross(order, *matching[i], *matching[j])
            for i in range(m)
            for j in range(i + 1, m)
        ):
            continue
        out.append(tuple(sorted((min(p, q), max(p, q)) for p, q in matching)))
    return sorted(out)


def tl_compose(n: int, top: TLDiagram, bottom: TLDiagram) -> tuple[int, TLDiagram]:
    """Union-find contraction of two stacked one-colour diagrams.

    Returns (loop count, result diagram).  Node layout: the top
    diagram's points keep their ids, the bottom diagram's are shifted
    by n so its northern edge lands on the top one's southern edge.
    """
    parent = list(range(3 * n + 1))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a: int, b: int) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for p, q in top:
        union(p, q)
    for p, q in bottom:
        union(p + n, q + n)
    boundary: dict[int, list[int]] = {}
    for p in range(1, n + 1):
        boundary.setdefault(find(p), []).append(p)
    for p in range(2 * n + 1, 3 * n + 1):
        boundary.setdefault(find(p), []).append(p - n)
    pairs = []
    for members in boundary.values():
        assert len(members) == 2
        pairs.append((min(members), max(members)))
    middle_only = set()
    for p in range(n + 1, 2 * n + 1):
        r = find(p)
        if r not in boundary:
            middle_only.add(r)
    return len(middle_only), tuple(sorted(pairs))
