"""Basis enumeration, dimension counts, and half-diagram combinatorics.

Diagram bases are produced by an event recursion over the circular
boundary order: at each boundary point a strand either opens, closes
the innermost open strand of its colour, or (for half diagrams) leaves
the frame as a propagating line.  A feasibility bound on the remaining
positions makes the recursion free of dead ends.

Dimensions follow a two-dimensional lattice walk: the number of half
diagrams on n points with (i, j) propagating lines of the two colours
equals the number of n-step walks from the origin to (i, j) using unit
steps in the four axis directions while staying in the closed positive
quadrant.  The full diagram basis has size walk_count(2n, 0, 0).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .diagram import (
    BLUE,
    COLOUR_CHARS,
    RED,
    Diagram,
    circular_positions,
    make_diagram,
    propagating_index,
)

DEFAULT_MAX_N = 8


class ResourceLimitError(RuntimeError):
    """Requested computation exceeds the configured size guard."""


def _guard(points: int, max_n: int) -> None:
    if points > 2 * max_n:
        raise ResourceLimitError(
            f"{points} boundary points exceed the limit of {2 * max_n}; "
            "raise max_n explicitly to proceed"
        )


@lru_cache(maxsize=None)
def walk_count(n: int, i: int, j: int) -> int:
    """Quadrant walks of length n from the origin to (i, j), axis steps only."""
    if i < 0 or j < 0 or n < 0 or i + j > n or (n - i - j) % 2:
        return 0
    if n == 0:
        return 1
    return (
        walk_count(n - 1, i - 1, j)
        + walk_count(n - 1, i + 1, j)
        + walk_count(n - 1, i, j - 1)
        + walk_count(n - 1, i, j + 1)
    )


def standard_labels(n: int, n_colours: int = 2) -> list[tuple[int, ...]]:
    """Propagating-count labels with non-zero dimension, top of the
    filtration first."""
    if n_colours == 1:
        return [(k,) for k in range(n, -1, -1) if (n - k) % 2 == 0]
    out = []
    for total in range(n, -1, -1):
        if (n - total) % 2:
            continue
        for i in range(total, -1, -1):
            out.append((i, total - i))
    return out


# ---------------------------------------------------------------------------
# full diagram enumeration


def enumerate_basis(
    n_north: int,
    n_south: int | None = None,
    n_colours: int = 2,
    max_n: int = DEFAULT_MAX_N,
) -> list[Diagram]:
    """All diagrams on the given rectangle, sorted by their encoding."""
    if n_south is None:
        n_south = n_north
    _guard(n_north + n_south, max_n)
    circ = circular_positions(n_north, n_south)
    total = len(circ)
    results: list[Diagram] = []
    stacks: list[list[int]] = [[] for _ in range(n_colours)]
    pairs: list[tuple[int, int, int]] = []

    def rec(idx: int) -> None:
        if idx == total:
            results.append(make_diagram(n_north, n_south, list(pairs)))
            return
        pid = circ[idx]
        rem = total - idx - 1
        n_open = sum(len(s) for s in stacks)
        for c in range(n_colours):
            if stacks[c]:
                # closing keeps rem - (n_open - 1) parity automatically
                top = stacks[c].pop()
                pairs.append((top, pid, c))
                rec(idx + 1)
                pairs.pop()
                stacks[c].append(top)
            if rem >= n_open + 1:
                stacks[c].append(pid)
                rec(idx + 1)
                stacks[c].pop()

    if total % 2 == 0:
        rec(0)
    return sorted(results, key=Diagram.encode)


def enumerate_via_seeds(
    n_north: int,
    n_south: int | None = None,
    n_colours: int = 2,
    max_n: int = DEFAULT_MAX_N,
) -> list[Diagram]:
    """Second enumeration route: colour every uncoloured pair matching.

    Each matching of the boundary points is a seed.  Its strands are
    ordered by first clockwise appearance and coloured one at a time;
    a strand crossed by an already coloured strand must avoid that
    colour, everything else branches.  A seed whose crossing graph is
    not properly colourable contributes nothing.
    """
    if n_south is None:
        n_south = n_north
    _guard(n_north + n_south, max_n)
    circ = circular_positions(n_north, n_south)
    order = {pid: k for k, pid in enumerate(circ)}
    total = len(circ)
    results: list[Diagram] = []
    if total % 2:
        return results

    def matchings(points: tuple[int, ...]):
        if not points:
            yield ()
            return
        first = points[0]
        for k in range(1, len(points)):
            partner = points[k]
            rest = points[1:k] + points[k + 1 :]
            for tail in matchings(rest):
                yield ((first, partner),) + tail

    def crossing(a: tuple[int, int], b: tuple[int, int]) -> bool:
        pa, pb = sorted((order[a[0]], order[a[1]]))
        inside = sum(1 for x in (order[b[0]], order[b[1]]) if pa < x < pb)
        return inside == 1

    for seed in matchings(tuple(range(1, total + 1))):
        lines = sorted(seed, key=lambda pr: min(order[pr[0]], order[pr[1]]))
        m = len(lines)
        earlier_crossings = [
            [j for j in range(i) if crossing(lines[i], lines[j])] for i in range(m)
        ]
        colours = [0] * m

        def paint(i: int) -> None:
            if i == m:
                results.append(
                    make_diagram(
                        n_north,
                        n_south,
                        [(p, q, colours[k]) for k, (p, q) in enumerate(lines)],
                    )
                )
                return
            banned = {colours[j] for j in earlier_crossings[i]}
            for c in range(n_colours):
                if c in banned:
                    continue
                colours[i] = c
                paint(i + 1)

        paint(0)
    return sorted(results, key=Diagram.encode)


def stratify(diagrams: list[Diagram], n_colours: int = 2) -> dict[tuple[int, ...], list[Diagram]]:
    """Group diagrams by their per-colour propagating counts."""
    out: dict[tuple[int, ...], list[Diagram]] = {}
    for d in diagrams:
        out.setdefault(propagating_index(d, n_colours), []).append(d)
    return out


@dataclass(frozen=True)
class RankIdentity:
    """Comparison of the basis size with the sum of squared module dimensions."""

    n: int
    basis_size: int
    dim_square_sum: int
    walk_total: int

    @property
    def holds(self) -> bool:
        return self.basis_size == self.dim_square_sum == self.walk_total


def rank_identity(n: int, max_n: int = DEFAULT_MAX_N) -> RankIdentity:
    basis_size = len(enumerate_basis(n, n, max_n=max_n))
    squares = sum(walk_count(n, i, j) ** 2 for i, j in standard_labels(n))
    return RankIdentity(n, basis_size, squares, walk_count(2 * n, 0, 0))


# ---------------------------------------------------------------------------
# half diagrams


@dataclass(frozen=True)
class HalfDiagram:
    """Coloured half diagram: arcs above a framed edge plus propagating cuts.

    Points 1..n sit on the frame.  Arcs of the same colour never
    interleave, and a cut of some colour never sits strictly inside an
    arc of that colour; cuts of the other colour may.
    """

    n: int
    arcs: tuple[tuple[int, int, int], ...]
    red_cuts: tuple[int, ...]
    blue_cuts: tuple[int, ...]

    def __post_init__(self) -> None:
        used = [False] * (self.n + 1)
        prev = 0
        for p, q, c in self.arcs:
            if not (1 <= p < q <= self.n) or c not in (RED, BLUE):
                raise ValueError(f"bad arc ({p},{q},{c})")
            if p <= prev:
                raise ValueError("arcs not sorted by smaller endpoint")
            if used[p] or used[q]:
                raise ValueError("frame point used twice")
            used[p] = used[q] = True
            prev = p
        for cuts in (self.red_cuts, self.blue_cuts):
            for k, t in enumerate(cuts):
                if not 1 <= t <= self.n:
                    raise ValueError(f"cut position {t} out of range")
                if k and cuts[k - 1] >= t:
                    raise ValueError("cut positions not increasing")
                if used[t]:
                    raise ValueError("frame point used twice")
                used[t] = True
        if not all(used[1:]):
            raise ValueError("frame point left unmatched")
        for c, cuts in ((RED, self.red_cuts), (BLUE, self.blue_cuts)):
            stack: list[int] = []
            cutset = set(cuts)
            events: dict[int, tuple[str, int]] = {}
            for p, q, _ in (a for a in self.arcs if a[2] == c):
                events[p] = ("open", q)
                events[q] = ("close", p)
            for t in range(1, self.n + 1):
                if t in events:
                    kind, other = events[t]
                    if kind == "open":
                        stack.append(t)
                    else:
                        if not stack or stack[-1] != other:
                            raise ValueError("same-colour arcs interleave")
                        stack.pop()
                elif t in cutset and stack:
                    raise ValueError(
                        f"colour-{COLOUR_CHARS[c]} cut at {t} sits inside an arc of its colour"
                    )

    @property
    def propagating(self) -> tuple[int, int]:
        return (len(self.red_cuts), len(self.blue_cuts))

    def cuts(self, c: int) -> tuple[int, ...]:
        return self.red_cuts if c == RED else self.blue_cuts

    def encode(self) -> str:
        body = ";".join(f"({p},{q},{COLOUR_CHARS[c]})" for p, q, c in self.arcs)
        reds = ",".join(map(str, self.red_cuts))
        blues = ",".join(map(str, self.blue_cuts))
        return f"H[{self.n}]{{{body}}}{{r:{reds}}}{{b:{blues}}}"

    def __str__(self) -> str:
        return self.encode()


def make_half(n: int, arcs, red_cuts=(), blue_cuts=()) -> HalfDiagram:
    norm = tuple(sorted((min(p, q), max(p, q), c) for p, q, c in arcs))
    return HalfDiagram(n, norm, tuple(sorted(red_cuts)), tuple(sorted(blue_cuts)))


def enumerate_bras(n: int, i: int, j: int, max_n: int = DEFAULT_MAX_N) -> list[HalfDiagram]:
    """All half diagrams on n points with (i, j) propagating cuts, sorted."""
    _guard(n, max_n)
    results: list[HalfDiagram] = []
    if i < 0 or j < 0 or i + j > n or (n - i - j) % 2:
        return results
    stacks: dict[int, list[int]] = {RED: [], BLUE: []}
    arcs: list[tuple[int, int, int]] = []
    cuts: dict[int, list[int]] = {RED: [], BLUE: []}
    quota = {RED: i, BLUE: j}

    def rec(pos: int) -> None:
        if pos > n:
            results.append(
                make_half(n, list(arcs), tuple(cuts[RED]), tuple(cuts[BLUE]))
            )
            return
        rem = n - pos
        n_open = len(stacks[RED]) + len(stacks[BLUE])
        cuts_left = (quota[RED] - len(cuts[RED])) + (quota[BLUE] - len(cuts[BLUE]))
        for c in (RED, BLUE):
            if stacks[c] and rem >= n_open - 1 + cuts_left:
                top = stacks[c].pop()
                arcs.append((top, pos, c))
                rec(pos + 1)
                arcs.pop()
                stacks[c].append(top)
            if not stacks[c] and len(cuts[c]) < quota[c] and rem >= n_open + cuts_left - 1:
                cuts[c].append(pos)
                rec(pos + 1)
                cuts[c].pop()
            if rem >= n_open + 1 + cuts_left:
                stacks[c].append(pos)
                rec(pos + 1)
                stacks[c].pop()

    rec(1)
    return sorted(results, key=HalfDiagram.encode)


# ---------------------------------------------------------------------------
# cutting a diagram into halves and joining them back


def cut_diagram(d: Diagram) -> tuple[HalfDiagram, HalfDiagram]:
    """Split a diagram along its waist into a northern and a southern half.

    Propagating lines of one colour keep their left-to-right order, so
    the pairing of cuts is implicit and the split loses nothing.
    """
    nn = d.n_north
    north_arcs, south_arcs = [], []
    north_cuts: dict[int, list[int]] = {RED: [], BLUE: []}
    south_cuts: dict[int, list[int]] = {RED: [], BLUE: []}
    for p, q, c in d.pairs:
        if q <= nn:
            north_arcs.append((p, q, c))
        elif p > nn:
            south_arcs.append((p - nn, q - nn, c))
        else:
            north_cuts[c].append(p)
            south_cuts[c].append(q - nn)
    bra = make_half(nn, north_arcs, north_cuts[RED], north_cuts[BLUE])
    ket = make_half(d.n_south, south_arcs, south_cuts[RED], south_cuts[BLUE])
    return bra, ket


def join_halves(bra: HalfDiagram, ket: HalfDiagram) -> Diagram:
    """Rebuild the diagram whose northern half is ``bra`` and southern ``ket``."""
    if bra.propagating != ket.propagating:
        raise ValueError("halves have different propagating counts")
    nn = bra.n
    pairs = list(bra.arcs)
    pairs += [(p + nn, q + nn, c) for p, q, c in ket.arcs]
    for c in (RED, BLUE):
        pairs += [
            (p, q + nn, c) for p, q in zip(bra.cuts(c), ket.cuts(c))
        ]
    return make_diagram(nn, ket.n, pairs)


# ---------------------------------------------------------------------------
# one-point moves on half diagrams


def add_line(bra: HalfDiagram, c: int) -> HalfDiagram:
    """Append a frame point carrying a new cut of colour c."""
    red = bra.red_cuts + ((bra.n + 1,) if c == RED else ())
    blue = bra.blue_cuts + ((bra.n + 1,) if c == BLUE else ())
    return HalfDiagram(bra.n + 1, bra.arcs, red, blue)


def turn_back(bra: HalfDiagram, c: int) -> HalfDiagram:
    """Append a frame point and bend the last cut of colour c onto it."""
    cuts = bra.cuts(c)
    if not cuts:
        raise ValueError("no cut of that colour to turn back")
    t = cuts[-1]
    red = bra.red_cuts[:-1] if c == RED else bra.red_cuts
    blue = bra.blue_cuts[:-1] if c == BLUE else bra.blue_cuts
    arcs = tuple(sorted(bra.arcs + ((t, bra.n + 1, c),)))
    return HalfDiagram(bra.n + 1, arcs, red, blue)


def classify_rightmost(bra: HalfDiagram) -> tuple[int, str]:
    """Status of the last frame point: (colour, 'cut' or 'arc')."""
    n = bra.n
    if n in bra.red_cuts:
        return RED, "cut"
    if n in bra.blue_cuts:
        return BLUE, "cut"
    for p, q, c in bra.arcs:
        if q == n:
            return c, "arc"
    raise ValueError("empty half diagram has no rightmost point")


def restrict_bra(bra: HalfDiagram) -> tuple[tuple[int, int], HalfDiagram]:
    """Remove the last frame point; returns the neighbour label it lands in.

    Undoes add_line when the point carries a cut and turn_back when it
    closes an arc, so restriction is a bijection onto the union of the
    at most four neighbouring half-diagram sets one level down.
    """
    i, j = bra.propagating
    c, kind = classify_rightmost(bra)
    n = bra.n
    if kind == "cut":
        red = tuple(t for t in bra.red_cuts if t != n)
        blue = tuple(t for t in bra.blue_cuts if t != n)
        label = (i - 1, j) if c == RED else (i, j - 1)
        return label, HalfDiagram(n - 1, bra.arcs, red, blue)
    a = next(p for p, q, cc in bra.arcs if q == n and cc == c)
    arcs = tuple(x for x in bra.arcs if x[1] != n)
    red = tuple(sorted(bra.red_cuts + ((a,) if c == RED else ())))
    blue = tuple(sorted(bra.blue_cuts + ((a,) if c == BLUE else ())))
    label = (i + 1, j) if c == RED else (i, j + 1)
    return label, HalfDiagram(n - 1, arcs, red, blue)


def monochrome_straight_diagrams(n: int, n_colours: int = 2) -> list[Diagram]:
    """The all-propagating single-colour-per-strand diagrams, sorted."""
    out = []
    for word in product(range(n_colours), repeat=n):
        out.append(make_diagram(n, n, [(k + 1, n + k + 1, word[k]) for k in range(n)]))
    return sorted(out, key=Diagram.encode)
