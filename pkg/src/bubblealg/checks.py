"""Cross-module property suite behind the `check` CLI subcommand.

Each check re-runs one of the package's verified invariants at a
configurable size and reports pass/fail with a short detail string.  A
crash inside a check is reported as a failure of that check rather than
aborting the suite.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .basis import enumerate_basis, monochrome_straight_diagrams, rank_identity, standard_labels
from .diagram import (
    BLUE,
    RED,
    Element,
    compose,
    identity_element,
    propagating_index,
    white_generator,
)
from .exactpoly import DB, DR, LaurentPoly, PolyMatrix, poly_det
from .oracles import bubble_basis_count
from .spinchain import NumericParams, homomorphism_report
from .stdmod import (
    cyclic_span_report,
    gram_blocks,
    gram_det_report,
    gram_matrix,
    localisation_report,
    restriction_report,
    scan_gram_roots,
    tl_gram_poly,
)
from .yangbaxter import (
    transfer_commutator,
    unitarity_sweep,
    ybe_sweep,
)

@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def all_passed(results: list[CheckResult]) -> bool:
    return all(r.passed for r in results)


def _check_basis_counts(size: int) -> CheckResult:
    for n in range(1, size + 1):
        got = len(enumerate_basis(n))
        want = bubble_basis_count(n)
        if got != want:
            return CheckResult(
                "basis_counts", False, f"n={n}: enumerated {got}, closed form {want}"
            )
    return CheckResult("basis_counts", True, f"counts match the closed form, n<={size}")


def _check_rank_identity(size: int) -> CheckResult:
    for n in range(1, size + 1):
        rep = rank_identity(n)
        if not rep.holds:
            return CheckResult(
                "rank_identity",
                False,
                f"n={n}: basis {rep.basis_size} != square sum {rep.dim_square_sum}",
            )
    return CheckResult("rank_identity", True, f"basis size equals square sum, n<={size}")


def _check_gram_identity_top(size: int) -> CheckResult:
    for n in range(1, size + 1):
        for i in range(n + 1):
            g = gram_matrix(n, i, n - i)
            if g != PolyMatrix.identity(g.rows):
                return CheckResult(
                    "gram_identity_top", False, f"G_{n}({i},{n - i}) is not the identity"
                )
    return CheckResult("gram_identity_top", True, f"full-cut forms are identities, n<={size}")


def _check_gram_g2_diagonal() -> CheckResult:
    g = gram_matrix(2, 0, 0)
    want = PolyMatrix.diagonal([DB, DR])
    if g != want:
        return CheckResult("gram_g2_diagonal", False, "G_2(0,0) mismatch")
    return CheckResult(
        "gram_g2_diagonal", True, "G_2(0,0) = diag(db, dr) in canonical bra order"
    )


def _check_gram_tl_blocks(size: int) -> CheckResult:
    checked = 0
    for n in range(2, size + 1):
        for i in range(n - 1):
            j = n - 2 - i
            _, blocks = gram_blocks(n, i, j)
            for blk in blocks:
                n_r = blk.word.count("r")
                n_b = blk.word.count("b")
                tl_r = tl_gram_poly(n_r, i, RED)
                tl_b = tl_gram_poly(n_b, j, BLUE)
                want = LaurentPoly.one()
                det_r, det_b = poly_det(tl_r), poly_det(tl_b)
                for _ in range(tl_b.rows):
                    want = want * det_r
                for _ in range(tl_r.rows):
                    want = want * det_b
                if blk.det != want:
                    return CheckResult(
                        "gram_tl_blocks",
                        False,
                        f"block {blk.word} of G_{n}({i},{j}) has wrong determinant",
                    )
                checked += 1
    return CheckResult(
        "gram_tl_blocks", True, f"{checked} word blocks match the one-colour oracle"
    )


def _check_gram_det_dual_route(size: int) -> CheckResult:
    labels = [(2, 0, 0), (3, 1, 0), (3, 0, 1)]
    if size >= 4:
        labels += [(4, 2, 0), (4, 1, 1), (4, 0, 0)]
    for n, i, j in labels:
        gram_det_report(n, i, j, cross_check=True)
    return CheckResult(
        "gram_det_dual_route", True, f"{len(labels)} determinants agree both routes"
    )


def _check_root_scan(size: int) -> CheckResult:
    jobs = [(3, 1, 0, RED), (3, 0, 1, BLUE)]
    if size >= 4:
        jobs.append((4, 0, 0, RED))
    for n, i, j, var in jobs:
        scan = scan_gram_roots(n, i, j, var=var)
        if not scan.all_matched:
            return CheckResult(
                "gram_root_scan",
                False,
                f"unmatched root in det G_{n}({i},{j}) scanning colour {var}",
            )
    return CheckResult(
        "gram_root_scan", True, f"{len(jobs)} scans hit only 2cos(pi m/k) points"
    )


def _check_white_idempotent(size: int) -> CheckResult:
    weight = DR + DB
    for n in range(2, size + 1):
        for pos in range(1, n):
            u = white_generator(n, pos)
            if u * u != u.scale(weight):
                return CheckResult(
                    "white_idempotent", False, f"U_{pos} at n={n} fails its square rule"
                )
    return CheckResult(
        "white_idempotent", True, f"U_i^2 = (dr+db) U_i for all positions, n<={size}"
    )


def _check_identity_decomposition(size: int) -> CheckResult:
    n = min(size, 3)
    straights = monochrome_straight_diagrams(n)
    total = Element.zero(n, n)
    for a in straights:
        total = total + Element.from_diagram(a)
        for b in straights:
            prod = Element.from_diagram(a) * Element.from_diagram(b)
            want = Element.from_diagram(a) if a == b else Element.zero(n, n)
            if prod != want:
                return CheckResult(
                    "identity_decomposition", False, f"straights not orthogonal at n={n}"
                )
    if total != identity_element(n):
        return CheckResult(
            "identity_decomposition", False, f"straights do not sum to 1 at n={n}"
        )
    return CheckResult(
        "identity_decomposition", True, f"2^{n} orthogonal idempotents sum to 1"
    )


def _check_filtration(size: int) -> CheckResult:
    n = min(size, 3)
    basis = enumerate_basis(n)
    pairs = 0
    for a in basis:
        pa = propagating_index(a)
        for b in basis:
            pb = propagating_index(b)
            res = compose(a, b)
            if res is None:
                continue
            pc = propagating_index(res[2])
            if pc[0] > min(pa[0], pb[0]) or pc[1] > min(pa[1], pb[1]):
                return CheckResult(
                    "filtration",
                    False,
                    f"{a.encode()} o {b.encode()} raises a propagating count",
                )
            pairs += 1
    return CheckResult(
        "filtration", True, f"propagating counts never grow over {pairs} products (n={n})"
    )


def _check_homomorphism(seed: int) -> CheckResult:
    rng = random.Random(seed)
    params = NumericParams(
        q_r=complex(rng.uniform(1.5, 3.5), rng.uniform(0.5, 1.5)),
        q_b=complex(rng.uniform(1.5, 3.5), rng.uniform(-1.5, -0.5)),
    )
    rep = homomorphism_report(2, params)
    if rep.max_residual >= 1e-12:
        return CheckResult(
            "spin_homomorphism", False, f"residual {rep.max_residual:.3e} at generic point"
        )
    return CheckResult(
        "spin_homomorphism",
        True,
        f"{rep.pairs_checked} products match, residual {rep.max_residual:.1e}",
    )


def _check_ybe(seed: int, count: int) -> CheckResult:
    tl = ybe_sweep("tl", count=count, seed=seed)
    bubble = ybe_sweep("bubble", count=count, seed=seed)
    if tl.max_residual >= 1e-12 or bubble.max_residual >= 1e-10:
        return CheckResult(
            "yang_baxter",
            False,
            f"tl {tl.max_residual:.3e}, bubble {bubble.max_residual:.3e}",
        )
    return CheckResult(
        "yang_baxter",
        True,
        f"tl {tl.max_residual:.1e}, bubble {bubble.max_residual:.1e} over {count} points",
    )


def _check_unitarity(seed: int, count: int) -> CheckResult:
    tl = unitarity_sweep("tl", count=count, seed=seed)
    bubble = unitarity_sweep("bubble", count=count, seed=seed)
    if tl.max_residual >= 1e-12 or bubble.max_residual >= 1e-10:
        return CheckResult(
            "unitarity",
            False,
            f"tl {tl.max_residual:.3e}, bubble {bubble.max_residual:.3e}",
        )
    return CheckResult("unitarity", True, "both families scalar to working precision")


def _check_transfer(seed: int) -> CheckResult:
    rng = random.Random(seed)
    worst = 0.0
    for kind, n in (("tl", 2), ("tl", 3), ("bubble", 2)):
        lam = rng.uniform(0.4, 0.9)
        u, v = rng.uniform(-1, 1), rng.uniform(-1, 1)
        worst = max(worst, transfer_commutator(lam, u, v, n, kind))
    if worst >= 1e-9:
        return CheckResult("transfer_commute", False, f"commutator {worst:.3e}")
    return CheckResult("transfer_commute", True, f"worst commutator {worst:.1e}")


def _check_localisation(size: int, seed: int) -> CheckResult:
    for n in range(2, min(size, 3) + 1):
        rep = localisation_report(n, seed=seed)
        if not rep.holds:
            return CheckResult(
                "localisation", False, f"n={n}: rank {rep.rank}, expected {rep.expected}"
            )
    return CheckResult("localisation", True, f"sandwich rank equals |B_(n-2)|, n<=3")


def _check_restriction(size: int) -> CheckResult:
    for n in range(2, size + 1):
        for i, j in standard_labels(n):
            rep = restriction_report(n, i, j)
            if not rep.holds:
                return CheckResult(
                    "restriction", False, f"n={n}, label ({i},{j}) fails the recursion"
                )
    return CheckResult(
        "restriction", True, f"walk recursion realised for every label, n<={size}"
    )


def _check_cyclic_span(size: int, seed: int) -> CheckResult:
    top = min(size, 3)
    for n in range(1, top + 1):
        for i, j in standard_labels(n):
            rep = cyclic_span_report(n, i, j, seed=seed)
            if not rep.holds:
                return CheckResult(
                    "cyclic_span",
                    False,
                    f"n={n}, label ({i},{j}): rank {rep.rank} != {rep.expected}",
                )
    return CheckResult(
        "cyclic_span", True, f"orbit rank equals walk dimension for every label, n<={top}"
    )


def run_checks(size: int = 4, seed: int = 20260822, quick: bool = False) -> list[CheckResult]:
    """Run the whole suite; `quick` trims sizes and sweep counts."""
    if size < 2:
        raise ValueError("check size must be at least 2")
    if quick:
        size = min(size, 3)
    sweep_count = 3 if quick else 5
    jobs = [
        ("basis_counts", lambda: _check_basis_counts(size)),
        ("rank_identity", lambda: _check_rank_identity(size)),
        ("gram_identity_top", lambda: _check_gram_identity_top(size)),
        ("gram_g2_diagonal", _check_gram_g2_diagonal),
        ("gram_tl_blocks", lambda: _check_gram_tl_blocks(size)),
        ("gram_det_dual_route", lambda: _check_gram_det_dual_route(size)),
        ("gram_root_scan", lambda: _check_root_scan(size)),
        ("white_idempotent", lambda: _check_white_idempotent(size)),
        ("identity_decomposition", lambda: _check_identity_decomposition(size)),
        ("filtration", lambda: _check_filtration(size)),
        ("spin_homomorphism", lambda: _check_homomorphism(seed)),
        ("yang_baxter", lambda: _check_ybe(seed, sweep_count)),
        ("unitarity", lambda: _check_unitarity(seed, sweep_count)),
        ("transfer_commute", lambda: _check_transfer(seed)),
        ("localisation", lambda: _check_localisation(size, seed)),
        ("restriction", lambda: _check_restriction(size)),
        ("cyclic_span", lambda: _check_cyclic_span(size, seed)),
    ]
    results = []
    for name, job in jobs:
        try:
            results.append(job())
        except Exception as exc:
            results.append(CheckResult(name, False, f"error: {exc!r}"))
    return results
