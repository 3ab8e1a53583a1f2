"""Two-colour diagram algebra: canonical diagrams, composition, elements.

A diagram is a perfect pair matching of the boundary points of a
rectangle, every pair carrying a colour tag.  Matchings are taken up to
sheet-wise deformation, whose normal form is exactly the data stored
here: pairs of the same colour never interleave in the circular boundary
order, while pairs of different colours may cross freely.  Endpoints are
numbered 1..n_north left to right along the northern edge and
n_north+1..n_north+n_south left to right along the southern edge; the
circular order runs clockwise from the top left corner, i.e. north left
to right followed by south right to left.

Composition stacks the left factor on top of the right one, gluing the
southern edge of the upper diagram to the northern edge of the lower.
The product is zero unless strand colours agree at every glued point;
closed loops created by the gluing are removed and counted per colour,
each contributing one loop-parameter factor at the algebra level.

The textual encoding of a diagram is
``D[n_north,n_south]{(p,q,c);...}`` with ``p < q``, pairs sorted by
smaller endpoint and ``c`` one of ``r``/``b``.  Canonical enumeration
order everywhere in the package is lexicographic on this encoding.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator, Mapping, Union

from .exactpoly import ZERO, LaurentPoly

RED = 0
BLUE = 1
COLOUR_CHARS = "rb"

_PAIR_RE = re.compile(r"^\((\d+),(\d+),([a-z])\)$")
_HEAD_RE = re.compile(r"^D\[(\d+),(\d+)\]\{(.*)\}$")


class SizeMismatchError(ValueError):
    """Composition of diagrams whose glued edges have different sizes."""


def _colour_char(c: int) -> str:
    if 0 <= c < len(COLOUR_CHARS):
        return COLOUR_CHARS[c]
    raise ValueError(f"no display character for colour index {c}")


def circular_positions(n_north: int, n_south: int) -> list[int]:
    """Endpoint ids in clockwise boundary order from the top left corner."""
    return list(range(1, n_north + 1)) + [n_north + k for k in range(n_south, 0, -1)]


@dataclass(frozen=True)
class Diagram:
    """Canonical coloured pair matching of a rectangle's boundary."""

    n_north: int
    n_south: int
    pairs: tuple[tuple[int, int, int], ...]

    def __post_init__(self) -> None:
        total = self.n_north + self.n_south
        if self.n_north < 0 or self.n_south < 0 or total % 2:
            raise ValueError("boundary size must be even and non-negative")
        if len(self.pairs) * 2 != total:
            raise ValueError("pair count does not match boundary size")
        seen = [False] * (total + 1)
        prev_p = 0
        for p, q, c in self.pairs:
            if not (1 <= p < q <= total):
                raise ValueError(f"endpoint pair ({p},{q}) out of range or unordered")
            if c < 0:
                raise ValueError("negative colour index")
            if p <= prev_p:
                raise ValueError("pairs not sorted by smaller endpoint")
            if seen[p] or seen[q]:
                raise ValueError("endpoint matched twice")
            seen[p] = seen[q] = True
            prev_p = p
        _check_planarity(self)

    def encode(self) -> str:
        body = ";".join(f"({p},{q},{_colour_char(c)})" for p, q, c in self.pairs)
        return f"D[{self.n_north},{self.n_south}]{{{body}}}"

    @classmethod
    def decode(cls, text: str) -> "Diagram":
        m = _HEAD_RE.match(text.strip())
        if m is None:
            raise ValueError(f"malformed diagram encoding: {text!r}")
        nn, ns, body = int(m.group(1)), int(m.group(2)), m.group(3)
        pairs = []
        if body:
            for part in body.split(";"):
                pm = _PAIR_RE.match(part)
                if pm is None:
                    raise ValueError(f"malformed pair: {part!r}")
                colour = COLOUR_CHARS.find(pm.group(3))
                if colour < 0:
                    raise ValueError(f"unknown colour letter {pm.group(3)!r}")
                pairs.append((int(pm.group(1)), int(pm.group(2)), colour))
        return make_diagram(nn, ns, pairs)

    def __str__(self) -> str:
        return self.encode()


def _check_planarity(d: Diagram) -> None:
    # same-colour pairs must close in bracket discipline along the circular
    # order; pairs of different colours are free to interleave
    pair_of: dict[int, tuple[int, int]] = {}
    for idx, (p, q, c) in enumerate(d.pairs):
        pair_of[p] = (idx, c)
        pair_of[q] = (idx, c)
    stacks: dict[int, list[int]] = {}
    opened: set[int] = set()
    for pid in circular_positions(d.n_north, d.n_south):
        idx, c = pair_of[pid]
        st = stacks.setdefault(c, [])
        if idx in opened:
            if not st or st[-1] != idx:
                raise ValueError(
                    f"same-colour pairs interleave at endpoint {pid} in {d.n_north},{d.n_south} diagram"
                )
            st.pop()
        else:
            opened.add(idx)
            st.append(idx)


PairInput = Union[Mapping[tuple[int, int], int], Iterable[tuple[int, int, int]]]


def make_diagram(n_north: int, n_south: int, pairs: PairInput) -> Diagram:
    """Validating constructor; normalises endpoint order and pair order."""
    if hasattr(pairs, "items"):
        it: Iterable[tuple[int, int, int]] = ((p, q, c) for (p, q), c in pairs.items())
    else:
        it = pairs
    norm = sorted((min(p, q), max(p, q), c) for p, q, c in it)
    return Diagram(n_north, n_south, tuple(norm))


def straight_diagram(word: Iterable[int]) -> Diagram:
    """All-propagating diagram with strand k coloured by word[k]."""
    w = list(word)
    n = len(w)
    return Diagram(n, n, tuple((k + 1, n + k + 1, w[k]) for k in range(n)))


def _endpoint_arrays(d: Diagram) -> tuple[list[int], list[int]]:
    total = d.n_north + d.n_south
    partner = [0] * (total + 1)
    colour = [0] * (total + 1)
    for p, q, c in d.pairs:
        partner[p] = q
        partner[q] = p
        colour[p] = c
        colour[q] = c
    return partner, colour


def compose(a: Diagram, b: Diagram) -> tuple[int, int, Diagram] | None:
    """Stack ``a`` on top of ``b``; returns (loops_r, loops_b, result).

    Returns None when the product is zero, i.e. when strand colours
    disagree at some glued point.  Raises SizeMismatchError when the glued
    edges have different sizes, which is distinct from the algebraic zero.
    """
    if a.n_south != b.n_north:
        raise SizeMismatchError(
            f"cannot glue {a.n_south} southern points to {b.n_north} northern points"
        )
    m = a.n_south
    pa, ca = _endpoint_arrays(a)
    pb, cb = _endpoint_arrays(b)
    na = a.n_north
    for k in range(1, m + 1):
        if ca[na + k] != cb[k]:
            return None
    seen_a = [False] * (na + m + 1)
    seen_b = [False] * (m + b.n_south + 1)
    new_pairs: list[tuple[int, int, int]] = []
    loops = [0, 0]

    def trace(side: str, start: int) -> tuple[str, int, int]:
        # follow the strand chain from a free end to the opposite free end
        s, p = side, start
        col = -1
        while True:
            if s == "a":
                q = pa[p]
                col = ca[p]
                seen_a[p] = seen_a[q] = True
                if q <= na:
                    return ("a", q, col)
                s, p = "b", q - na
            else:
                q = pb[p]
                col = cb[p]
                seen_b[p] = seen_b[q] = True
                if q > m:
                    return ("b", q, col)
                s, p = "a", na + q

    def result_id(side: str, point: int) -> int:
        return point if side == "a" else na + (point - m)

    for p in range(1, na + 1):
        if seen_a[p]:
            continue
        seen_a[p] = True
        side, end, col = trace("a", p)
        new_pairs.append((p, result_id(side, end), col))
    for p in range(m + 1, m + b.n_south + 1):
        if seen_b[p]:
            continue
        seen_b[p] = True
        side, end, col = trace("b", p)
        new_pairs.append((result_id("b", p), result_id(side, end), col))
    # anything left closes up into loops alternating between the factors
    for k in range(1, m + 1):
        if seen_a[na + k]:
            continue
        col = ca[na + k]
        cur = k
        while True:
            up = na + cur
            q = pa[up]
            seen_a[up] = seen_a[q] = True
            k2 = q - na
            q2 = pb[k2]
            seen_b[k2] = seen_b[q2] = True
            cur = q2
            if cur == k:
                break
        if col > 1:
            raise ValueError("loop colour outside the two-parameter ring")
        loops[col] += 1
    return loops[0], loops[1], make_diagram(na, b.n_south, new_pairs)


def propagating_index(d: Diagram, n_colours: int = 2) -> tuple[int, ...]:
    """Per-colour counts of propagating strands, as a tuple of length n_colours."""
    counts = [0] * n_colours
    for p, q, c in d.pairs:
        if p <= d.n_north < q:
            counts[c] += 1
    return tuple(counts)


class Element:
    """Finite linear combination of equal-shape diagrams over the loop ring."""

    __slots__ = ("n_north", "n_south", "_terms")

    def __init__(
        self,
        n_north: int,
        n_south: int,
        terms: Mapping[Diagram, LaurentPoly] | Iterable[tuple[Diagram, LaurentPoly]] | None = None,
    ) -> None:
        self.n_north = n_north
        self.n_south = n_south
        data: dict[Diagram, LaurentPoly] = {}
        if terms is not None:
            items = terms.items() if hasattr(terms, "items") else terms
            for d, coeff in items:
                if d.n_north != n_north or d.n_south != n_south:
                    raise SizeMismatchError("diagram shape differs from element shape")
                c = coeff if isinstance(coeff, LaurentPoly) else LaurentPoly.const(coeff)
                if c.is_zero:
                    continue
                acc = data.get(d, ZERO) + c
                if acc.is_zero:
                    data.pop(d, None)
                else:
                    data[d] = acc
        self._terms = data

    @classmethod
    def zero(cls, n_north: int, n_south: int) -> "Element":
        return cls(n_north, n_south)

    @classmethod
    def from_diagram(cls, d: Diagram, coeff: LaurentPoly | int = 1) -> "Element":
        return cls(d.n_north, d.n_south, [(d, coeff if isinstance(coeff, LaurentPoly) else LaurentPoly.const(coeff))])

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def items(self) -> Iterator[tuple[Diagram, LaurentPoly]]:
        return iter(self._terms.items())

    def diagrams(self) -> list[Diagram]:
        return list(self._terms)

    def coefficient(self, d: Diagram) -> LaurentPoly:
        return self._terms.get(d, ZERO)

    def __len__(self) -> int:
        return len(self._terms)

    def _check_shape(self, other: "Element") -> None:
        if self.n_north != other.n_north or self.n_south != other.n_south:
            raise SizeMismatchError("element shapes differ")

    def __add__(self, other: "Element") -> "Element":
        if not isinstance(other, Element):
            return NotImplemented
        self._check_shape(other)
        data = dict(self._terms)
        for d, c in other._terms.items():
            acc = data.get(d, ZERO) + c
            if acc.is_zero:
                data.pop(d, None)
            else:
                data[d] = acc
        out = Element(self.n_north, self.n_south)
        out._terms = data
        return out

    def __neg__(self) -> "Element":
        out = Element(self.n_north, self.n_south)
        out._terms = {d: -c for d, c in self._terms.items()}
        return out

    def __sub__(self, other: "Element") -> "Element":
        if not isinstance(other, Element):
            return NotImplemented
        return self + (-other)

    def scale(self, coeff: LaurentPoly | int) -> "Element":
        c = coeff if isinstance(coeff, LaurentPoly) else LaurentPoly.const(coeff)
        out = Element(self.n_north, self.n_south)
        if not c.is_zero:
            out._terms = {d: c0 * c for d, c0 in self._terms.items()}
        return out

    def __mul__(self, other):
        if isinstance(other, (LaurentPoly, int)):
            return self.scale(other)
        if isinstance(other, Diagram):
            other = Element.from_diagram(other)
        if not isinstance(other, Element):
            return NotImplemented
        if self.n_south != other.n_north:
            raise SizeMismatchError("element shapes cannot be composed")
        data: dict[Diagram, LaurentPoly] = {}
        for d1, c1 in self._terms.items():
            for d2, c2 in other._terms.items():
                r = compose(d1, d2)
                if r is None:
                    continue
                lr, lb, d = r
                coeff = c1 * c2 * LaurentPoly.monomial(lr, lb)
                acc = data.get(d, ZERO) + coeff
                if acc.is_zero:
                    data.pop(d, None)
                else:
                    data[d] = acc
        out = Element(self.n_north, other.n_south)
        out._terms = data
        return out

    def __rmul__(self, other):
        if isinstance(other, (LaurentPoly, int)):
            return self.scale(other)
        if isinstance(other, Diagram):
            return Element.from_diagram(other) * self
        return NotImplemented

    def __eq__(self, other) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return (
            self.n_north == other.n_north
            and self.n_south == other.n_south
            and self._terms == other._terms
        )

    def __repr__(self) -> str:
        if self.is_zero:
            return f"Element[{self.n_north},{self.n_south}](0)"
        body = " + ".join(
            f"({c})*{d.encode()}" for d, c in sorted(self._terms.items(), key=lambda t: t[0].encode())
        )
        return f"Element[{self.n_north},{self.n_south}]({body})"


def element_compose(x: Element, y: Element) -> Element:
    """Algebra product of two elements; alias for ``x * y``."""
    return x * y


def identity_element(n: int, n_colours: int = 2) -> Element:
    """Sum of all monochrome-strand straight diagrams; the unit of the algebra."""
    terms = []
    for word in product(range(n_colours), repeat=n):
        terms.append((straight_diagram(word), LaurentPoly.one()))
    return Element(n, n, terms)


def tensor_diagram(a: Diagram, b: Diagram) -> Diagram:
    """Place ``b`` to the right of ``a`` on a shared rectangle."""
    nn = a.n_north + b.n_north
    pairs = []

    def remap_a(p: int) -> int:
        return p if p <= a.n_north else nn + (p - a.n_north)

    def remap_b(p: int) -> int:
        return a.n_north + p if p <= b.n_north else nn + a.n_south + (p - b.n_north)

    for p, q, c in a.pairs:
        pairs.append((remap_a(p), remap_a(q), c))
    for p, q, c in b.pairs:
        pairs.append((remap_b(p), remap_b(q), c))
    return make_diagram(nn, a.n_south + b.n_south, pairs)


def pad_with_identity(x: Element, left: int, right: int, n_colours: int = 2) -> Element:
    """Tensor ``x`` with identity strands: ``left`` on the left, ``right`` on the right."""
    out_terms: list[tuple[Diagram, LaurentPoly]] = []
    for d, c in x.items():
        for lw in product(range(n_colours), repeat=left):
            left_d = straight_diagram(lw)
            mid = tensor_diagram(left_d, d) if left else d
            for rw in product(range(n_colours), repeat=right):
                full = tensor_diagram(mid, straight_diagram(rw)) if right else mid
                out_terms.append((full, c))
    return Element(x.n_north + left + right, x.n_south + left + right, out_terms)


def natural_inclusion(x: Element, n_colours: int = 2) -> Element:
    """Unital embedding that appends one identity strand on the right."""
    return pad_with_identity(x, 0, 1, n_colours)


def white_generator(n: int, i: int, n_colours: int = 2) -> Element:
    """Cup-cap at position i with every line summed over all colours."""
    if not 1 <= i <= n - 1:
        raise ValueError(f"generator position {i} out of range for n={n}")
    free = [k for k in range(1, n + 1) if k not in (i, i + 1)]
    terms = []
    for colours in product(range(n_colours), repeat=n):
        cup, cap, rest = colours[0], colours[1], colours[2:]
        pairs = [(i, i + 1, cup), (n + i, n + i + 1, cap)]
        pairs.extend((k, n + k, c) for k, c in zip(free, rest))
        terms.append((make_diagram(n, n, pairs), LaurentPoly.one()))
    return Element(n, n, terms)


def white_cupcap_chain(n: int, m: int, n_colours: int = 2) -> Element:
    """Chain of m adjacent cup-caps at the left, every line summed over colours.

    Equals the product of the cup-cap generators at positions 1, 3, ..., 2m-1.
    """
    if not 0 <= 2 * m <= n:
        raise ValueError(f"cannot fit {m} cup-caps into {n} strands")
    free = list(range(2 * m + 1, n + 1))
    terms = []
    for colours in product(range(n_colours), repeat=n):
        cups = colours[:m]
        caps = colours[m : 2 * m]
        rest = colours[2 * m :]
        pairs = [(2 * t + 1, 2 * t + 2, cups[t]) for t in range(m)]
        pairs += [(n + 2 * t + 1, n + 2 * t + 2, caps[t]) for t in range(m)]
        pairs += [(k, n + k, c) for k, c in zip(free, rest)]
        terms.append((make_diagram(n, n, pairs), LaurentPoly.one()))
    return Element(n, n, terms)


def module_generator(n: int, word: Iterable[int], cup_colour: int = RED) -> Diagram:
    """Single diagram with monochrome cup-caps at the left and strands coloured by ``word``.

    The word length fixes the number of propagating strands; n - len(word)
    must be even.
    """
    w = list(word)
    if (n - len(w)) % 2 or len(w) > n:
        raise ValueError(f"word of length {len(w)} has wrong parity for n={n}")
    m = (n - len(w)) // 2
    pairs = [(2 * t + 1, 2 * t + 2, cup_colour) for t in range(m)]
    pairs += [(n + 2 * t + 1, n + 2 * t + 2, cup_colour) for t in range(m)]
    pairs += [(2 * m + s + 1, n + 2 * m + s + 1, c) for s, c in enumerate(w)]
    return make_diagram(n, n, pairs)


def word_from_chars(chars: str) -> tuple[int, ...]:
    """Translate a colour word like ``'rrb'`` into colour indices."""
    out = []
    for ch in chars:
        idx = COLOUR_CHARS.find(ch)
        if idx < 0:
            raise ValueError(f"unknown colour letter {ch!r}")
        out.append(idx)
    return tuple(out)
