"""Spin-chain representation: each strand site carries four states.

A site holds a colour and a spin, ordered (r+, r-, b+, b-); a chain of
n sites lives in a 4^n dimensional space with the first site most
significant in the index.  A diagram with n_north outputs and n_south
inputs becomes a 4^n_north by 4^n_south matrix:

* a propagating line preserves colour and spin between its two sites;
* an arc forces its two sites to its colour with opposite spins and
  weighs t_c on (+,-) read left to right, 1/t_c on (-,+);
* entries multiply over the pairs of the diagram.

Closed loops removed during composition contribute delta_c = q_c + 1/q_c
with q_c = t_c^2, which is exactly how the matrices turn composition
into matrix product.  The sign of the square root chosen for t never
affects that, since arcs always pair t against 1/t.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from itertools import product

import numpy as np
from scipy import sparse

from .diagram import BLUE, RED, Diagram, Element
from .exactpoly import LaurentPoly

SITE_STATES = ("r+", "r-", "b+", "b-")

_CONSISTENCY_TOL = 1e-12


def _resolve(q: complex | None, t: complex | None, name: str) -> tuple[complex, complex]:
    if t is None:
        if q is None:
            raise ValueError(f"give q_{name} or t_{name}")
        t = cmath.sqrt(q)
    elif q is not None:
        scale = max(1.0, abs(q))
        if abs(t * t - q) > _CONSISTENCY_TOL * scale:
            raise ValueError(f"t_{name}^2 and q_{name} disagree beyond tolerance")
    if t == 0:
        raise ValueError(f"t_{name} must be invertible")
    # store the square of t so t*t == q holds exactly from here on
    return t * t, t


class NumericParams:
    """Numeric weights per colour; q_c is stored as t_c squared exactly."""

    __slots__ = ("q_r", "q_b", "t_r", "t_b")

    def __init__(
        self,
        q_r: complex | None = None,
        q_b: complex | None = None,
        t_r: complex | None = None,
        t_b: complex | None = None,
    ) -> None:
        self.q_r, self.t_r = _resolve(q_r, t_r, "r")
        self.q_b, self.t_b = _resolve(q_b, t_b, "b")

    @property
    def delta_r(self) -> complex:
        return self.q_r + 1 / self.q_r

    @property
    def delta_b(self) -> complex:
        return self.q_b + 1 / self.q_b

    def t(self, c: int) -> complex:
        return self.t_r if c == RED else self.t_b

    def evaluate(self, poly: LaurentPoly) -> complex:
        return poly.evaluate(self.delta_r, self.delta_b)

    def __repr__(self) -> str:
        return f"NumericParams(q_r={self.q_r!r}, q_b={self.q_b!r})"


def site_basis_order(n: int) -> list[tuple[str, ...]]:
    """State labels in index order; the first site is most significant."""
    return [tuple(s) for s in product(SITE_STATES, repeat=n)]


def state_index(states: tuple[int, ...]) -> int:
    idx = 0
    for s in states:
        idx = 4 * idx + s
    return idx


def _arc_weights(c: int, params: NumericParams) -> list[tuple[int, int, complex]]:
    # (left state, right state, weight) for an arc of colour c
    t = params.t(c)
    plus, minus = 2 * c, 2 * c + 1
    return [(plus, minus, t), (minus, plus, 1 / t)]


def arc_ket(c: int, params: NumericParams) -> np.ndarray:
    """Two-site column vector created by a northern arc of colour c."""
    v = np.zeros(16, dtype=complex)
    for s1, s2, w in _arc_weights(c, params):
        v[4 * s1 + s2] = w
    return v


def arc_bra(c: int, params: NumericParams) -> np.ndarray:
    """Two-site row vector a southern arc of colour c closes with."""
    return arc_ket(c, params)


def colour_block_indices(word: tuple[int, ...]) -> list[int]:
    """Indices whose sites carry the given colours, any spins."""
    ranges = [(2 * c, 2 * c + 1) for c in word]
    return [state_index(states) for states in product(*[(a, b) for a, b in ranges])]


def diagram_matrix(d: Diagram, params: NumericParams) -> np.ndarray:
    """Dense matrix of a diagram, 4^n_north rows by 4^n_south columns."""
    nn, ns = d.n_north, d.n_south
    pair_opts = []
    for p, q, c in d.pairs:
        opts = []
        if q <= nn:
            for s1, s2, w in _arc_weights(c, params):
                opts.append(((("out", p, s1), ("out", q, s2)), w))
        elif p > nn:
            for s1, s2, w in _arc_weights(c, params):
                opts.append(((("in", p - nn, s1), ("in", q - nn, s2)), w))
        else:
            for s in (0, 1):
                st = 2 * c + s
                opts.append(((("out", p, st), ("in", q - nn, st)), 1.0 + 0.0j))
        pair_opts.append(opts)
    m = np.zeros((4**nn, 4**ns), dtype=complex)
    for combo in product(*pair_opts):
        out_state = [0] * nn
        in_state = [0] * ns
        weight = 1.0 + 0.0j
        for assignments, w in combo:
            weight *= w
            for side, pos, st in assignments:
                if side == "out":
                    out_state[pos - 1] = st
                else:
                    in_state[pos - 1] = st
        m[state_index(tuple(out_state)), state_index(tuple(in_state))] += weight
    return m


def element_matrix(x: Element | Diagram, params: NumericParams) -> np.ndarray:
    """Matrix of a linear combination; loop coefficients evaluate through
    delta_c = q_c + 1/q_c."""
    if isinstance(x, Diagram):
        x = Element.from_diagram(x)
    m = np.zeros((4**x.n_north, 4**x.n_south), dtype=complex)
    for d, coeff in x.items():
        m += params.evaluate(coeff) * diagram_matrix(d, params)
    return m


# ---------------------------------------------------------------------------
# explicit two-site matrices, kept separate as a cross-check


def _two_site_kind(d: Diagram) -> tuple[str, int, int]:
    shape = tuple(sorted((p, q) for p, q, _ in d.pairs))
    colour = {(p, q): c for p, q, c in d.pairs}
    if shape == ((1, 3), (2, 4)):
        return "straight", colour[(1, 3)], colour[(2, 4)]
    if shape == ((1, 4), (2, 3)):
        return "crossing", colour[(1, 4)], colour[(2, 3)]
    if shape == ((1, 2), (3, 4)):
        return "cupcap", colour[(1, 2)], colour[(3, 4)]
    raise ValueError("not a two-strand square diagram")


def b2_matrix(d: Diagram, params: NumericParams) -> np.ndarray:
    """Hand-written 16x16 matrices for the ten two-strand diagrams.

    straight (c1, c2): identity on the block whose sites carry those
    colours; crossing with northern colours (cL, cR): the site swap
    from the (cR, cL) block onto the (cL, cR) block; cup over cap:
    outer product of the arc vectors.
    """
    if (d.n_north, d.n_south) != (2, 2):
        raise ValueError("b2_matrix needs a two-strand square diagram")
    kind, c1, c2 = _two_site_kind(d)
    m = np.zeros((16, 16), dtype=complex)
    if kind == "straight":
        for k in colour_block_indices((c1, c2)):
            m[k, k] = 1
    elif kind == "crossing":
        for s_left in (0, 1):
            for s_right in (0, 1):
                row = 4 * (2 * c1 + s_left) + (2 * c2 + s_right)
                col = 4 * (2 * c2 + s_right) + (2 * c1 + s_left)
                m[row, col] = 1
    else:
        m = np.outer(arc_ket(c1, params), arc_bra(c2, params))
    return m


# ---------------------------------------------------------------------------
# embedding into a longer chain


def embed(m: np.ndarray, k: int, n: int):
    """Place a two-site operator on sites k, k+1 of an n-site chain.

    Dense for two sites, compressed sparse rows from three sites up.
    """
    if not 1 <= k <= n - 1:
        raise ValueError(f"position {k} out of range for {n} sites")
    if n == 2:
        return np.asarray(m)
    out = sparse.csr_matrix(m)
    if k > 1:
        out = sparse.kron(sparse.identity(4 ** (k - 1), format="csr"), out, format="csr")
    if k < n - 1:
        out = sparse.kron(out, sparse.identity(4 ** (n - k - 1), format="csr"), format="csr")
    return out


# ---------------------------------------------------------------------------
# homomorphism validation


@dataclass(frozen=True)
class HomomorphismReport:
    n: int
    pairs_checked: int
    max_residual: float


def homomorphism_report(
    n: int,
    params: NumericParams,
    basis: list[Diagram] | None = None,
    pairs: list[tuple[Diagram, Diagram]] | None = None,
) -> HomomorphismReport:
    """Compare the matrix of every composed pair with the matrix product.

    With no explicit pair list every ordered pair of basis diagrams is
    tested; the report carries the worst absolute entry difference.
    """
    if basis is None:
        from .basis import enumerate_basis

        basis = enumerate_basis(n)
    mats = {d: diagram_matrix(d, params) for d in basis}
    if pairs is None:
        pairs = [(a, b) for a in basis for b in basis]
    worst = 0.0
    for a, b in pairs:
        prod = Element.from_diagram(a) * Element.from_diagram(b)
        lhs = element_matrix(prod, params)
        rhs = mats[a] @ mats[b]
        worst = max(worst, float(np.abs(lhs - rhs).max()))
    return HomomorphismReport(n, len(pairs), worst)
