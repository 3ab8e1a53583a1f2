"""Standard modules: diagram action on half diagrams, bilinear forms,
Gram determinants, restriction, and root location.

The module labelled (i, j) has the half diagrams with that propagating
count as basis.  A diagram acts by gluing its southern edge onto the
frame; chains that would bend a propagating line back are set to zero,
which realises the quotient by lower layers of the filtration.

The bilinear form glues two half diagrams frame to frame.  It is block
diagonal over the boundary colour word, and each block factorises as a
tensor product of two one-colour forms, which is what the determinant
and root machinery exploit.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .basis import (
    DEFAULT_MAX_N,
    HalfDiagram,
    enumerate_basis,
    enumerate_bras,
    make_half,
    restrict_bra,
    standard_labels,
    walk_count,
)
from .diagram import (
    BLUE,
    COLOUR_CHARS,
    RED,
    Diagram,
    Element,
    SizeMismatchError,
    _endpoint_arrays,
    white_generator,
)
from .exactpoly import ZERO, LaurentPoly, PolyMatrix, poly_det
from .oracles import tl_gram_exponents

# ---------------------------------------------------------------------------
# action of diagrams on half diagrams


def _frame_tables(bra: HalfDiagram):
    colour_at: dict[int, int] = {}
    arc_partner: dict[int, int] = {}
    slot_colour: dict[int, int] = {}
    for p, q, c in bra.arcs:
        colour_at[p] = colour_at[q] = c
        arc_partner[p] = q
        arc_partner[q] = p
    for c in (RED, BLUE):
        for t in bra.cuts(c):
            colour_at[t] = c
            slot_colour[t] = c
    return colour_at, arc_partner, slot_colour


def act_diagram(d: Diagram, bra: HalfDiagram) -> tuple[int, int, HalfDiagram] | None:
    """Glue d's southern edge onto the frame; None when the result is zero.

    Zero happens when strand colours disagree at a glued point or when a
    chain connects two propagating slots of the frame, which would drop
    the propagating count.
    """
    if d.n_south != bra.n:
        raise SizeMismatchError(
            f"diagram with {d.n_south} southern points cannot act on a frame of {bra.n}"
        )
    nn, ns = d.n_north, d.n_south
    pd, cd = _endpoint_arrays(d)
    colour_at, arc_partner, slot_colour = _frame_tables(bra)
    for k in range(1, ns + 1):
        if cd[nn + k] != colour_at[k]:
            return None
    visited_d = [False] * (nn + ns + 1)
    visited_f = [False] * (ns + 1)
    new_arcs: list[tuple[int, int, int]] = []
    reached: dict[int, list[tuple[int, int]]] = {RED: [], BLUE: []}
    loops = [0, 0]
    for p in range(1, nn + 1):
        if visited_d[p]:
            continue
        visited_d[p] = True
        q = pd[p]
        col = cd[p]
        visited_d[q] = True
        if q <= nn:
            new_arcs.append((p, q, col))
            continue
        k = q - nn
        while True:
            visited_f[k] = True
            if k in slot_colour:
                reached[slot_colour[k]].append((p, k))
                break
            k2 = arc_partner[k]
            visited_f[k2] = True
            dpt = nn + k2
            visited_d[dpt] = True
            q2 = pd[dpt]
            visited_d[q2] = True
            if q2 <= nn:
                new_arcs.append((p, q2, col))
                break
            k = q2 - nn
    for c in (RED, BLUE):
        for t in bra.cuts(c):
            if not visited_f[t]:
                # the slot chains to another slot: the image leaves the layer
                return None
    new_cuts: dict[int, tuple[int, ...]] = {}
    for c in (RED, BLUE):
        entries = sorted(reached[c])
        # planarity forces slot attachment to preserve left-to-right order
        assert [s for _, s in entries] == list(bra.cuts(c))
        new_cuts[c] = tuple(p for p, _ in entries)
    for k in range(1, ns + 1):
        if visited_f[k]:
            continue
        col = colour_at[k]
        cur = k
        while not visited_f[cur]:
            visited_f[cur] = True
            k2 = arc_partner[cur]
            visited_f[k2] = True
            dpt = nn + k2
            visited_d[dpt] = True
            q2 = pd[dpt]
            assert q2 > nn
            visited_d[q2] = True
            cur = q2 - nn
        loops[col] += 1
    half = make_half(nn, new_arcs, new_cuts[RED], new_cuts[BLUE])
    return loops[0], loops[1], half


ModuleVector = dict[HalfDiagram, LaurentPoly]


def act(x: Element | Diagram, bra: HalfDiagram) -> ModuleVector:
    """Linear extension of the diagram action; returns a sparse vector."""
    if isinstance(x, Diagram):
        x = Element.from_diagram(x)
    out: ModuleVector = {}
    for d, coeff in x.items():
        r = act_diagram(d, bra)
        if r is None:
            continue
        lr, lb, half = r
        c = coeff * LaurentPoly.monomial(lr, lb)
        acc = out.get(half, ZERO) + c
        if acc.is_zero:
            out.pop(half, None)
        else:
            out[half] = acc
    return out


def rep_matrix(
    x: Element | Diagram,
    n: int,
    i: int,
    j: int,
    bras: list[HalfDiagram] | None = None,
    max_n: int = DEFAULT_MAX_N,
) -> PolyMatrix:
    """Matrix of the action on the (i, j) module; column k is the image
    of the k-th basis half diagram."""
    if bras is None:
        bras = enumerate_bras(n, i, j, max_n=max_n)
    index = {b: r for r, b in enumerate(bras)}
    dim = len(bras)
    cols = []
    for b in bras:
        v = act(x, b)
        col = [ZERO] * dim
        for half, coeff in v.items():
            col[index[half]] = coeff
        cols.append(col)
    return PolyMatrix([[cols[k][r] for k in range(dim)] for r in range(dim)])


# ---------------------------------------------------------------------------
# bilinear form


def rb_word(bra: HalfDiagram) -> str:
    """Boundary colour word: the colour letter at each frame point."""
    colour_at, _, _ = _frame_tables(bra)
    return "".join(COLOUR_CHARS[colour_at[k]] for k in range(1, bra.n + 1))


def bra_inner(x: HalfDiagram, y: HalfDiagram) -> LaurentPoly:
    """Glue two half diagrams frame to frame; a monomial in the loop ring.

    Zero unless the colour words agree and every chain joins a
    propagating slot of one half to one of the other.
    """
    if x.n != y.n:
        raise SizeMismatchError("frames have different sizes")
    n = x.n
    cx, ax, sx = _frame_tables(x)
    cy, ay, sy = _frame_tables(y)
    if any(cx[k] != cy[k] for k in range(1, n + 1)):
        return ZERO
    vis_x = [False] * (n + 1)
    vis_y = [False] * (n + 1)
    for c in (RED, BLUE):
        for t0 in x.cuts(c):
            vis_x[t0] = True
            side, pt = "y", t0
            while True:
                if side == "y":
                    vis_y[pt] = True
                    if pt in sy:
                        break
                    p2 = ay[pt]
                    vis_y[p2] = True
                    side, pt = "x", p2
                else:
                    vis_x[pt] = True
                    if pt in sx:
                        return ZERO
                    p2 = ax[pt]
                    vis_x[p2] = True
                    side, pt = "y", p2
    for t in sy:
        if not vis_y[t]:
            return ZERO
    loops = [0, 0]
    for k in range(1, n + 1):
        if vis_x[k]:
            continue
        col = cx[k]
        cur = k
        while not vis_x[cur]:
            vis_x[cur] = True
            p2 = ax[cur]
            vis_x[p2] = True
            vis_y[p2] = True
            p3 = ay[p2]
            vis_y[p3] = True
            cur = p3
        loops[col] += 1
    assert all(vis_y[1:])
    return LaurentPoly.monomial(loops[0], loops[1])


def gram_matrix(
    n: int, i: int, j: int, bras: list[HalfDiagram] | None = None, max_n: int = DEFAULT_MAX_N
) -> PolyMatrix:
    if bras is None:
        bras = enumerate_bras(n, i, j, max_n=max_n)
    return PolyMatrix([[bra_inner(x, y) for y in bras] for x in bras])


# ---------------------------------------------------------------------------
# block structure over colour words


def split_by_colour(bra: HalfDiagram) -> tuple[
    tuple[tuple[tuple[int, int], ...], tuple[int, ...]],
    tuple[tuple[tuple[int, int], ...], tuple[int, ...]],
]:
    """One-colour halves of a bra in relabelled coordinates.

    The frame points of each colour are renumbered 1..n_c preserving
    order; each half is (arcs, defect positions), matching the shape the
    one-colour reference code uses.
    """
    colour_at, _, _ = _frame_tables(bra)
    out = []
    for c in (RED, BLUE):
        points = [k for k in range(1, bra.n + 1) if colour_at[k] == c]
        rank = {p: r + 1 for r, p in enumerate(points)}
        arcs = tuple(sorted((rank[p], rank[q]) for p, q, cc in bra.arcs if cc == c))
        defects = tuple(rank[t] for t in bra.cuts(c))
        out.append((arcs, defects))
    return out[0], out[1]


def tl_gram_poly(n_points: int, defects: int, colour: int) -> PolyMatrix:
    """One-colour Gram matrix as polynomials in that colour's loop parameter."""
    expo = tl_gram_exponents(n_points, defects)
    entry = lambda e: ZERO if e is None else (
        LaurentPoly.monomial(e, 0) if colour == RED else LaurentPoly.monomial(0, e)
    )
    return PolyMatrix([[entry(e) for e in row] for row in expo])


@dataclass(frozen=True)
class GramBlock:
    word: str
    indices: tuple[int, ...]
    matrix: PolyMatrix
    det: LaurentPoly


def gram_blocks(
    n: int, i: int, j: int, max_n: int = DEFAULT_MAX_N
) -> tuple[list[HalfDiagram], list[GramBlock]]:
    """Split the form by colour word; returns (basis, blocks).

    Off-block entries vanish because the form is zero across different
    colour words, so the blocks carry the whole matrix.
    """
    bras = enumerate_bras(n, i, j, max_n=max_n)
    groups: dict[str, list[int]] = {}
    for k, b in enumerate(bras):
        groups.setdefault(rb_word(b), []).append(k)
    blocks = []
    for word in sorted(groups):
        idx = groups[word]
        sub = PolyMatrix(
            [[bra_inner(bras[a], bras[b]) for b in idx] for a in idx]
        )
        blocks.append(GramBlock(word, tuple(idx), sub, poly_det(sub)))
    return bras, blocks


@dataclass(frozen=True)
class GramDetReport:
    n: int
    label: tuple[int, int]
    size: int
    det: LaurentPoly
    blocks: tuple[GramBlock, ...]
    cross_checked: bool


def gram_det_report(
    n: int, i: int, j: int, cross_check: bool | None = None, max_n: int = DEFAULT_MAX_N
) -> GramDetReport:
    """Gram determinant as the product of word-block determinants.

    When cross_check is on (default for sizes up to 36) the unfactored
    matrix goes through fraction-free elimination as well and the two
    values must agree exactly.
    """
    bras, blocks = gram_blocks(n, i, j, max_n=max_n)
    det = LaurentPoly.one()
    for blk in blocks:
        det = det * blk.det
    size = len(bras)
    if cross_check is None:
        cross_check = size <= 36
    if cross_check:
        full = poly_det(gram_matrix(n, i, j, bras=bras))
        if full != det:
            raise ArithmeticError(
                f"block determinant product disagrees with direct elimination at n={n}, label=({i},{j})"
            )
    return GramDetReport(n, (i, j), size, det, tuple(blocks), cross_check)


# ---------------------------------------------------------------------------
# restriction to one point fewer


@dataclass(frozen=True)
class RestrictionReport:
    n: int
    label: tuple[int, int]
    neighbour_sizes: dict[tuple[int, int], int]
    bijective: bool

    @property
    def holds(self) -> bool:
        total = sum(self.neighbour_sizes.values())
        return self.bijective and total == walk_count(self.n, *self.label)


def restriction_report(n: int, i: int, j: int, max_n: int = DEFAULT_MAX_N) -> RestrictionReport:
    """Classify every bra by its last frame point and check the drop maps
    hit each neighbouring basis exactly once."""
    buckets: dict[tuple[int, int], set[HalfDiagram]] = {}
    for bra in enumerate_bras(n, i, j, max_n=max_n):
        label, smaller = restrict_bra(bra)
        buckets.setdefault(label, set()).add(smaller)
    bijective = True
    sizes = {}
    for label, got in buckets.items():
        expect = set(enumerate_bras(n - 1, *label, max_n=max_n))
        sizes[label] = len(got)
        if got != expect:
            bijective = False
    return RestrictionReport(n, (i, j), sizes, bijective)


# ---------------------------------------------------------------------------
# generic-parameter ranks


def _generic_rank(rows: list[list[LaurentPoly]], rng: random.Random) -> int:
    """Numeric rank at two random generic parameter points; they must agree."""
    if not rows or not rows[0]:
        return 0
    ranks = []
    for _ in range(2):
        dr = rng.uniform(1.5, 3.5)
        db = rng.uniform(1.5, 3.5)
        m = np.array([[e.evaluate(dr, db) for e in row] for row in rows], dtype=complex)
        s = np.linalg.svd(m, compute_uv=False)
        ranks.append(int((s > 1e-9 * s[0]).sum()) if s.size and s[0] > 0 else 0)
    if ranks[0] != ranks[1]:
        raise ArithmeticError(f"generic rank estimates disagree: {ranks}")
    return ranks[0]


def cyclic_generator_bra(n: int, i: int, j: int) -> HalfDiagram:
    """Red cups at the left, then i red and j blue propagating lines."""
    m = (n - i - j) // 2
    arcs = [(2 * t + 1, 2 * t + 2, RED) for t in range(m)]
    red = tuple(range(2 * m + 1, 2 * m + i + 1))
    blue = tuple(range(2 * m + i + 1, n + 1))
    return make_half(n, arcs, red, blue)


@dataclass(frozen=True)
class SpanReport:
    n: int
    label: tuple[int, int] | None
    rank: int
    expected: int

    @property
    def holds(self) -> bool:
        return self.rank == self.expected


def cyclic_span_report(
    n: int, i: int, j: int, seed: int = 20260822, max_n: int = DEFAULT_MAX_N
) -> SpanReport:
    """Rank of the orbit of the standard generator under all diagrams."""
    gen = cyclic_generator_bra(n, i, j)
    bras = enumerate_bras(n, i, j, max_n=max_n)
    index = {b: k for k, b in enumerate(bras)}
    rows = []
    for d in enumerate_basis(n, max_n=max_n):
        r = act_diagram(d, gen)
        row = [ZERO] * len(bras)
        if r is not None:
            lr, lb, half = r
            row[index[half]] = LaurentPoly.monomial(lr, lb)
        rows.append(row)
    rank = _generic_rank(rows, random.Random(seed))
    return SpanReport(n, (i, j), rank, walk_count(n, i, j))


def localisation_report(n: int, seed: int = 20260822, max_n: int = DEFAULT_MAX_N) -> SpanReport:
    """Rank of the corner algebra cut out by one all-colours cup-cap.

    Sandwiching the basis between two copies of the leftmost cup-cap
    spans a space of dimension equal to the basis two sizes down.
    """
    if n < 2:
        raise ValueError("needs at least two strands")
    e = white_generator(n, 1)
    basis = enumerate_basis(n, max_n=max_n)
    index = {d: k for k, d in enumerate(basis)}
    rows = []
    for d in basis:
        v = e * Element.from_diagram(d) * e
        row = [ZERO] * len(basis)
        for dd, coeff in v.items():
            row[index[dd]] = coeff
        rows.append(row)
    rank = _generic_rank(rows, random.Random(seed))
    return SpanReport(n, None, rank, len(enumerate_basis(n - 2, max_n=max_n)))


# ---------------------------------------------------------------------------
# root location for Gram determinants


def _univariate(poly: LaurentPoly, var: int, other: Fraction) -> tuple[int, list[Fraction]]:
    """Specialise the other variable to an exact rational.

    Returns (lowest exponent, coefficient list from that exponent up).
    """
    acc: dict[int, Fraction] = {}
    for (a, b), coeff in poly.terms.items():
        e, oe = (a, b) if var == RED else (b, a)
        acc[e] = acc.get(e, Fraction(0)) + Fraction(coeff) * other**oe
    acc = {e: v for e, v in acc.items() if v}
    if not acc:
        return 0, []
    lo, hi = min(acc), max(acc)
    return lo, [acc.get(e, Fraction(0)) for e in range(lo, hi + 1)]


def _trim(p: list[Fraction]) -> list[Fraction]:
    while p and not p[-1]:
        p.pop()
    return p


def _poly_mod(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    r = list(a)
    while len(r) >= len(b) and _trim(r):
        f = r[-1] / b[-1]
        off = len(r) - len(b)
        for k in range(len(b)):
            r[off + k] -= f * b[k]
        r.pop()
        _trim(r)
    return r


def _poly_gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _poly_mod(a, b)
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


def _poly_divexact(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    r = list(a)
    while _trim(r) and len(r) >= len(b):
        f = r[-1] / b[-1]
        off = len(r) - len(b)
        q[off] = f
        for k in range(len(b)):
            r[off + k] -= f * b[k]
        r.pop()
    assert not _trim(r), "inexact division in square-free reduction"
    return _trim(q)


def _square_free(p: list[Fraction]) -> list[Fraction]:
    """Strip repeated factors exactly before any floating point touches them."""
    if len(p) <= 2:
        return list(p)
    deriv = [c * k for k, c in enumerate(p)][1:]
    g = _poly_gcd(p, deriv)
    if len(g) <= 1:
        return list(p)
    return _poly_divexact(p, g)


def match_special_value(z: complex, max_k: int, tol: float) -> tuple[int, int] | None:
    """Smallest k with |z - 2 cos(pi m / k)| inside tolerance, as (m, k)."""
    for k in range(1, max_k + 1):
        for m in range(k + 1):
            if abs(z - 2.0 * math.cos(math.pi * m / k)) <= tol:
                return (m, k)
    return None


@dataclass(frozen=True)
class RootRecord:
    value: complex
    matched: tuple[int, int] | None


@dataclass(frozen=True)
class SampleScan:
    other_value: Fraction
    degenerate: bool
    zero_root_multiplicity: int
    roots: tuple[RootRecord, ...]

    @property
    def all_matched(self) -> bool:
        return not self.degenerate and all(r.matched is not None for r in self.roots)


@dataclass(frozen=True)
class GramRootScan:
    n: int
    label: tuple[int, int]
    var: int
    det_is_zero: bool
    samples: tuple[SampleScan, ...]

    @property
    def all_matched(self) -> bool:
        return not self.det_is_zero and all(s.all_matched for s in self.samples)


def scan_gram_roots(
    n: int,
    i: int,
    j: int,
    var: int = RED,
    other_values: tuple[Fraction, ...] = (Fraction(7, 3), Fraction(5, 2)),
    tol: float = 1e-8,
    max_k: int | None = None,
    max_n: int = DEFAULT_MAX_N,
) -> GramRootScan:
    """Locate the roots of a Gram determinant in one loop parameter.

    The other parameter is pinned to exact rationals, repeated factors
    are removed by exact polynomial arithmetic, and only then does the
    numeric root finder run.  Every root must then lie within tolerance
    of twice a cosine of a rational angle with denominator at most 2n.
    """
    if max_k is None:
        max_k = 2 * n
    det = gram_det_report(n, i, j, cross_check=False, max_n=max_n).det
    if det.is_zero:
        return GramRootScan(n, (i, j), var, True, ())
    samples = []
    for other in other_values:
        lo, coeffs = _univariate(det, var, other)
        if not coeffs:
            samples.append(SampleScan(other, True, 0, ()))
            continue
        zero_mult = max(lo, 0)
        records = []
        if zero_mult:
            records.append(RootRecord(0.0, match_special_value(0.0, max_k, tol)))
        sq = _square_free(coeffs)
        if len(sq) > 1:
            roots = np.roots([float(c) for c in reversed(sq)])
            for z in sorted(roots, key=lambda w: (w.real, w.imag)):
                records.append(RootRecord(complex(z), match_special_value(complex(z), max_k, tol)))
        samples.append(SampleScan(other, False, zero_mult, tuple(records)))
    return GramRootScan(n, (i, j), var, False, tuple(samples))
