"""Baxterised R-matrices, Yang-Baxter checks, and transfer matrices.

Two families are covered:

* the one-colour six-vertex solution on spin-1/2 sites, where
  ``R(u) = sin(lam - u)/sin(lam) * I + sin(u)/sin(lam) * E`` with ``E`` the
  4x4 nearest-neighbour cup-cap matrix at q = exp(i*lam);
* the two-colour solution on four-state sites, a ten-term combination of
  the n=2 diagram matrices with both colour parameters tied to
  q = -exp(i*lam).

All spectral parameters are real.  The coefficient functions have poles
where sin(lam) (one colour) or sin(lam)*sin(3*lam) (two colours)
vanishes, so lambda values within 1e-6 of those zeros are rejected.
"""

from __future__ import annotations

import cmath
import math
import random
import string
from dataclasses import dataclass

import numpy as np

from .diagram import BLUE, RED, Diagram, make_diagram
from .spinchain import NumericParams, b2_matrix

LAMBDA_EXCLUSION = 1e-6
PARAM_MATCH_TOL = 1e-12

TL_GROUPS = ("straight", "cupcap")
BUBBLE_GROUPS = (
    "straight_same",
    "straight_mixed",
    "cupcap_same",
    "cupcap_mixed",
    "crossing",
)

_SITE_DIM = {"tl": 2, "bubble": 4}


def _require_kind(kind: str) -> None:
    if kind not in _SITE_DIM:
        raise ValueError(f"unknown model kind {kind!r}; expected 'tl' or 'bubble'")


def site_dimension(kind: str) -> int:
    """Local state count: 2 for the one-colour chain, 4 for two colours."""
    _require_kind(kind)
    return _SITE_DIM[kind]


def validate_lambda(lam: float, kind: str = "bubble") -> None:
    """Reject lambda too close to a pole of the coefficient functions.

    Poles sit at integer multiples of pi (one colour) or pi/3 (two
    colours); "too close" means within LAMBDA_EXCLUSION.
    """
    _require_kind(kind)
    step = math.pi if kind == "tl" else math.pi / 3.0
    nearest = round(lam / step) * step
    if abs(lam - nearest) < LAMBDA_EXCLUSION:
        raise ValueError(
            f"lambda={lam} is within {LAMBDA_EXCLUSION} of the pole at {nearest}"
        )


def tl_e_matrix(lam: float) -> np.ndarray:
    """4x4 cup-cap generator on two spin-1/2 sites, q = exp(i*lam)."""
    validate_lambda(lam, "tl")
    q = cmath.exp(1j * lam)
    e = np.zeros((4, 4), dtype=complex)
    e[1, 1] = q
    e[1, 2] = 1.0
    e[2, 1] = 1.0
    e[2, 2] = 1.0 / q
    return e


def tl_coefficients(lam: float, u: float) -> dict[str, float]:
    """Coefficients of I and E in the one-colour R(u)."""
    validate_lambda(lam, "tl")
    s = math.sin(lam)
    return {
        "straight": math.sin(lam - u) / s,
        "cupcap": math.sin(u) / s,
    }


def rmatrix_tl(
    lam: float, u: float, coefficients: dict[str, float] | None = None
) -> np.ndarray:
    """One-colour 4x4 R(u); custom coefficients override the standard ones."""
    if coefficients is None:
        coefficients = tl_coefficients(lam, u)
    if set(coefficients) != set(TL_GROUPS):
        raise ValueError(f"coefficient keys must be {TL_GROUPS}")
    return coefficients["straight"] * np.eye(4, dtype=complex) + coefficients[
        "cupcap"
    ] * tl_e_matrix(lam)


def bubble_params(lam: float) -> NumericParams:
    """Both colour parameters pinned to q = -exp(2i*lam).

    The loop weight this induces, q + 1/q = -2*cos(2*lam), is the unique
    value for which the ten-term combination below closes under the
    Yang-Baxter identity: the loop-free constraint equations hold for any
    weight, and each loop-bearing one solves to exactly this function of
    lam (see the decision ledger for the derivation).
    """
    validate_lambda(lam, "bubble")
    q = -cmath.exp(2j * lam)
    return NumericParams(q_r=q, q_b=q)


def _group_of(d: Diagram) -> str:
    pairs = d.pairs
    if all(p + 2 == q for p, q, _ in pairs):
        colours = {c for _, _, c in pairs}
        return "straight_same" if len(colours) == 1 else "straight_mixed"
    if any(p == 1 and q == 2 for p, q, _ in pairs):
        top = next(c for p, q, c in pairs if (p, q) == (1, 2))
        bot = next(c for p, q, c in pairs if (p, q) == (3, 4))
        return "cupcap_same" if top == bot else "cupcap_mixed"
    return "crossing"


def _bubble_group_matrices(params: NumericParams) -> dict[str, np.ndarray]:
    mats = {g: np.zeros((16, 16), dtype=complex) for g in BUBBLE_GROUPS}
    for a in (RED, BLUE):
        for b in (RED, BLUE):
            straight = make_diagram(2, 2, [(1, 3, a), (2, 4, b)])
            mats[_group_of(straight)] += b2_matrix(straight, params)
            cupcap = make_diagram(2, 2, [(1, 2, a), (3, 4, b)])
            mats[_group_of(cupcap)] += b2_matrix(cupcap, params)
            if a != b:
                cross = make_diagram(2, 2, [(1, 4, a), (2, 3, b)])
                mats[_group_of(cross)] += b2_matrix(cross, params)
    return mats


def bubble_coefficients(lam: float, u: float) -> dict[str, float]:
    """Coefficients of the five diagram groups in the two-colour R(u)."""
    validate_lambda(lam, "bubble")
    s1 = math.sin(lam)
    s3 = math.sin(3.0 * lam)
    return {
        "straight_same": math.sin(lam - u) * math.sin(3.0 * lam - u) / (s1 * s3),
        "straight_mixed": math.sin(3.0 * lam - u) / s3,
        "cupcap_same": -math.sin(u) * math.sin(2.0 * lam - u) / (s1 * s3),
        "cupcap_mixed": math.sin(u) / s3,
        "crossing": math.sin(u) * math.sin(3.0 * lam - u) / (s1 * s3),
    }


def rmatrix_bubble(
    lam: float,
    u: float,
    coefficients: dict[str, float] | None = None,
    params: NumericParams | None = None,
) -> np.ndarray:
    """Two-colour 16x16 R(u).

    The construction only closes with both colour parameters equal to
    -exp(i*lam), so a caller-supplied ``params`` must match that value.
    """
    standard = bubble_params(lam)
    if params is None:
        params = standard
    else:
        if (
            abs(params.q_r - standard.q_r) > PARAM_MATCH_TOL
            or abs(params.q_b - standard.q_b) > PARAM_MATCH_TOL
        ):
            raise ValueError(
                "two-colour R-matrix needs q_r = q_b = -exp(i*lambda); "
                f"got q_r={params.q_r}, q_b={params.q_b}"
            )
    if coefficients is None:
        coefficients = bubble_coefficients(lam, u)
    if set(coefficients) != set(BUBBLE_GROUPS):
        raise ValueError(f"coefficient keys must be {BUBBLE_GROUPS}")
    mats = _bubble_group_matrices(params)
    out = np.zeros((16, 16), dtype=complex)
    for name in BUBBLE_GROUPS:
        out += coefficients[name] * mats[name]
    return out


def rmatrix(kind: str, lam: float, u: float) -> np.ndarray:
    """Dispatch to the one- or two-colour builder."""
    _require_kind(kind)
    if kind == "tl":
        return rmatrix_tl(lam, u)
    return rmatrix_bubble(lam, u)


def ybe_residual_matrices(
    r_u: np.ndarray, r_uv: np.ndarray, r_v: np.ndarray
) -> float:
    """Max-entry defect of the braided Yang-Baxter identity on three sites.

    Compares (R(u) x I)(I x R(u+v))(R(v) x I) with
    (I x R(v))(R(u+v) x I)(I x R(u)); all three inputs act on a pair of
    m-state sites.
    """
    m2 = r_u.shape[0]
    m = math.isqrt(m2)
    if m * m != m2 or r_u.shape != r_uv.shape or r_u.shape != r_v.shape:
        raise ValueError("R-matrices must share a square two-site shape")
    eye = np.eye(m, dtype=complex)
    left = np.kron(r_u, eye) @ np.kron(eye, r_uv) @ np.kron(r_v, eye)
    right = np.kron(eye, r_v) @ np.kron(r_uv, eye) @ np.kron(eye, r_u)
    return float(np.max(np.abs(left - right)))


def ybe_residual(lam: float, u: float, v: float, kind: str = "bubble") -> float:
    """Yang-Baxter defect of the standard R-matrices at (lam, u, v)."""
    build = rmatrix_tl if kind == "tl" else rmatrix_bubble
    _require_kind(kind)
    return ybe_residual_matrices(
        build(lam, u), build(lam, u + v), build(lam, v)
    )


def perturbed_ybe_residual(
    lam: float,
    u: float,
    v: float,
    group: str,
    eps: float = 1e-3,
    kind: str = "bubble",
) -> float:
    """Yang-Baxter defect after shifting one coefficient of R(u) by eps.

    Used as a sensitivity probe: the identity should fail once any single
    group coefficient is moved off its exact value.
    """
    _require_kind(kind)
    if kind == "tl":
        coeffs = tl_coefficients(lam, u)
        if group not in coeffs:
            raise ValueError(f"unknown coefficient group {group!r}")
        coeffs[group] += eps
        r_u = rmatrix_tl(lam, u, coefficients=coeffs)
        return ybe_residual_matrices(
            r_u, rmatrix_tl(lam, u + v), rmatrix_tl(lam, v)
        )
    coeffs = bubble_coefficients(lam, u)
    if group not in coeffs:
        raise ValueError(f"unknown coefficient group {group!r}")
    coeffs[group] += eps
    r_u = rmatrix_bubble(lam, u, coefficients=coeffs)
    return ybe_residual_matrices(
        r_u, rmatrix_bubble(lam, u + v), rmatrix_bubble(lam, v)
    )


def unitarity_residual(lam: float, u: float, kind: str = "bubble") -> float:
    """Distance of R(u)R(-u) from the nearest scalar multiple of I.

    The scalar is fitted by least squares, which for this distance is the
    normalised trace of the product.
    """
    r = rmatrix(kind, lam, u) @ rmatrix(kind, lam, -u)
    dim = r.shape[0]
    scale = np.trace(r) / dim
    return float(np.max(np.abs(r - scale * np.eye(dim, dtype=complex))))


def _swap_matrix(m: int) -> np.ndarray:
    p = np.zeros((m * m, m * m), dtype=complex)
    for a in range(m):
        for s in range(m):
            p[s * m + a, a * m + s] = 1.0
    return p


def transfer_matrix(lam: float, u: float, n: int, kind: str = "bubble") -> np.ndarray:
    """Row-to-row transfer matrix on n sites with periodic boundary.

    The auxiliary space is traced out of the ordered product of
    P * R(u) factors, one per site.  Contraction is a single einsum over
    the chain of auxiliary indices, so only the m^n by m^n result is ever
    materialised.
    """
    _require_kind(kind)
    if n < 1:
        raise ValueError("need at least one site")
    m = _SITE_DIM[kind]
    r4 = (_swap_matrix(m) @ rmatrix(kind, lam, u)).reshape(m, m, m, m)
    letters = string.ascii_letters
    if 3 * n > len(letters):
        raise ValueError("chain too long for the einsum contraction")
    aux = letters[:n]
    outs = letters[n : 2 * n]
    ins = letters[2 * n : 3 * n]
    terms = [aux[k % n] + outs[k - 1] + aux[k - 1] + ins[k - 1] for k in range(1, n + 1)]
    subscripts = ",".join(terms) + "->" + outs[::-1] + ins[::-1]
    t = np.einsum(subscripts, *([r4] * n), optimize=True)
    return t.reshape(m**n, m**n)


def transfer_commutator(
    lam: float, u: float, v: float, n: int, kind: str = "bubble"
) -> float:
    """Max-entry commutator defect of T(u) and T(v) on n sites."""
    t_u = transfer_matrix(lam, u, n, kind)
    t_v = transfer_matrix(lam, v, n, kind)
    return float(np.max(np.abs(t_u @ t_v - t_v @ t_u)))


@dataclass(frozen=True)
class SpectralPoint:
    """One sampled (lambda, u, v) triple."""

    lam: float
    u: float
    v: float


@dataclass(frozen=True)
class SweepReport:
    """Worst residual over a batch of sampled spectral points."""

    kind: str
    quantity: str
    count: int
    max_residual: float
    worst: SpectralPoint
    points: tuple[tuple[SpectralPoint, float], ...] = ()

    @property
    def residuals(self) -> list[float]:
        return [res for _, res in self.points]


LAMBDA_MARGIN = 0.1


def sample_lambda(rng: random.Random, kind: str = "bubble") -> float:
    """Draw lambda from (0, pi) at least LAMBDA_MARGIN from every pole."""
    _require_kind(kind)
    step = math.pi if kind == "tl" else math.pi / 3.0
    while True:
        lam = rng.uniform(LAMBDA_MARGIN, math.pi - LAMBDA_MARGIN)
        if abs(lam - round(lam / step) * step) >= LAMBDA_MARGIN:
            return lam


def ybe_sweep(
    kind: str = "bubble", count: int = 20, seed: int = 20260822, lam: float | None = None
) -> SweepReport:
    """Yang-Baxter residual maximised over seeded random spectral points.

    A fixed ``lam`` pins the spectral parameter for every point (it must
    clear the singularity exclusion); otherwise lambda is sampled too.
    """
    rng = random.Random(seed)
    if lam is not None:
        validate_lambda(lam, kind)
    worst = SpectralPoint(math.nan, math.nan, math.nan)
    worst_res = -1.0
    points = []
    for _ in range(count):
        point = SpectralPoint(
            sample_lambda(rng, kind) if lam is None else lam,
            rng.uniform(-1.5, 1.5),
            rng.uniform(-1.5, 1.5),
        )
        res = ybe_residual(point.lam, point.u, point.v, kind)
        points.append((point, res))
        if res > worst_res:
            worst_res = res
            worst = point
    return SweepReport(kind, "ybe", count, worst_res, worst, tuple(points))


def unitarity_sweep(
    kind: str = "bubble", count: int = 20, seed: int = 20260822, lam: float | None = None
) -> SweepReport:
    """Unitarity residual maximised over seeded random spectral points."""
    rng = random.Random(seed)
    if lam is not None:
        validate_lambda(lam, kind)
    worst = SpectralPoint(math.nan, math.nan, math.nan)
    worst_res = -1.0
    points = []
    for _ in range(count):
        cur = sample_lambda(rng, kind) if lam is None else lam
        u = rng.uniform(-1.5, 1.5)
        res = unitarity_residual(cur, u, kind)
        points.append((SpectralPoint(cur, u, -u), res))
        if res > worst_res:
            worst_res = res
            worst = SpectralPoint(cur, u, -u)
    return SweepReport(kind, "unitarity", count, worst_res, worst, tuple(points))


def transfer_sweep(
    n: int, kind: str = "bubble", count: int = 10, seed: int = 20260822, lam: float | None = None
) -> SweepReport:
    """Transfer-matrix commutator maximised over seeded random points."""
    rng = random.Random(seed)
    if lam is not None:
        validate_lambda(lam, kind)
    worst = SpectralPoint(math.nan, math.nan, math.nan)
    worst_res = -1.0
    points = []
    for _ in range(count):
        point = SpectralPoint(
            sample_lambda(rng, kind) if lam is None else lam,
            rng.uniform(-1.5, 1.5),
            rng.uniform(-1.5, 1.5),
        )
        res = transfer_commutator(point.lam, point.u, point.v, n, kind)
        points.append((point, res))
        if res > worst_res:
            worst_res = res
            worst = point
    return SweepReport(kind, f"transfer_commutator_n{n}", count, worst_res, worst, tuple(points))
