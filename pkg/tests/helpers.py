"""Shared test oracles, coded independently of the paths they check."""

from __future__ import annotations

import random

from bubblealg.exactpoly import LaurentPoly, PolyMatrix


def cofactor_det(m: PolyMatrix) -> LaurentPoly:
    """Determinant by first-row cofactor expansion (small sizes only)."""
    if m.rows != m.cols:
        raise ValueError("non-square")
    n = m.rows
    if n == 0:
        return LaurentPoly.one()
    if n == 1:
        return m[0, 0]
    acc = LaurentPoly.zero()
    for j in range(n):
        entry = m[0, j]
        if entry.is_zero:
            continue
        minor = PolyMatrix(
            [[m[i, k] for k in range(n) if k != j] for i in range(1, n)]
        )
        term = entry * cofactor_det(minor)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


def random_poly(rng: random.Random, max_terms: int = 4, span: int = 3) -> LaurentPoly:
    terms = {}
    for _ in range(rng.randrange(max_terms + 1)):
        exp = (rng.randrange(-span, span + 1), rng.randrange(-span, span + 1))
        terms[exp] = terms.get(exp, 0) + rng.randrange(-5, 6)
    return LaurentPoly(terms)


def random_monomial(rng: random.Random, span: int = 2) -> LaurentPoly:
    return LaurentPoly.monomial(
        rng.randrange(-span, span + 1),
        rng.randrange(-span, span + 1),
        rng.randrange(-4, 5),
    )


def brute_walk_count(n: int, i: int, j: int) -> int:
    """Count quadrant walks by enumerating all 4^n step sequences."""
    count = 0
    stack = [(0, 0, 0)]
    while stack:
        step, x, y = stack.pop()
        if step == n:
            count += x == i and y == j
            continue
        for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1)):
            x2, y2 = x + dx, y + dy
            if x2 >= 0 and y2 >= 0:
                stack.append((step + 1, x2, y2))
    return count
