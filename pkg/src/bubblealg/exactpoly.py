"""Exact arithmetic over the two-parameter loop ring.

Scalars of the diagram algebra live in the ring of integer Laurent
polynomials in the two loop parameters ``dr`` and ``db``, one per line
colour.  A polynomial is stored sparsely as a map from exponent pairs
``(a, b)``, standing for the monomial ``dr^a * db^b``, to nonzero integer
coefficients.  Coefficients are Python ints, so nothing overflows and
equality is exact.

The canonical term order, used for printing and for the textual form, is
graded lexicographic on the exponent pair, largest first.  The textual
form is a ``' + '``-joined list of ``c*dr^a*db^b`` terms, for example
``1*dr^1*db^1``; the zero polynomial prints as ``0``.

:class:`PolyMatrix` supplies the exact linear algebra needed by the
Gram-matrix layer: matrix product and a fraction-free determinant
(Bareiss elimination; every intermediate division is exact in the ring).
"""

from __future__ import annotations

import re
from typing import Iterable, Mapping, Union

Exponent = tuple[int, int]

_TERM_RE = re.compile(r"^(-?\d+)\*dr\^(-?\d+)\*db\^(-?\d+)$")


def _grlex_key(exp: Exponent) -> tuple[int, int, int]:
    a, b = exp
    return (a + b, a, b)


class LaurentPoly:
    """Immutable integer Laurent polynomial in ``dr`` and ``db``."""

    __slots__ = ("_terms",)

    def __init__(
        self,
        terms: Union[Mapping[Exponent, int], Iterable[tuple[Exponent, int]], None] = None,
    ) -> None:
        data: dict[Exponent, int] = {}
        if terms is not None:
            items = terms.items() if hasattr(terms, "items") else terms
            for (a, b), c in items:
                if not c:
                    continue
                key = (int(a), int(b))
                acc = data.get(key, 0) + int(c)
                if acc:
                    data[key] = acc
                elif key in data:
                    del data[key]
        self._terms = data

    @classmethod
    def _raw(cls, data: dict[Exponent, int]) -> "LaurentPoly":
        # internal fast path; caller guarantees no zero coefficients
        p = object.__new__(cls)
        p._terms = data
        return p

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls._raw({})

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls._raw({(0, 0): 1})

    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls._raw({(0, 0): int(c)} if c else {})

    @classmethod
    def monomial(cls, a: int, b: int, coeff: int = 1) -> "LaurentPoly":
        return cls._raw({(int(a), int(b)): int(coeff)} if coeff else {})

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def terms(self) -> dict[Exponent, int]:
        """Copy of the exponent-to-coefficient map."""
        return dict(self._terms)

    def sorted_terms(self) -> list[tuple[Exponent, int]]:
        """Terms in canonical order (graded lex, largest first)."""
        return sorted(self._terms.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True)

    # ring operations

    def _coerce(self, other) -> "LaurentPoly | None":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly.const(other)
        return None

    def __add__(self, other) -> "LaurentPoly":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        data = dict(self._terms)
        for exp, c in o._terms.items():
            acc = data.get(exp, 0) + c
            if acc:
                data[exp] = acc
            elif exp in data:
                del data[exp]
        return LaurentPoly._raw(data)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({exp: -c for exp, c in self._terms.items()})

    def __sub__(self, other) -> "LaurentPoly":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> "LaurentPoly":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other) -> "LaurentPoly":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        data: dict[Exponent, int] = {}
        for (a1, b1), c1 in self._terms.items():
            for (a2, b2), c2 in o._terms.items():
                key = (a1 + a2, b1 + b2)
                acc = data.get(key, 0) + c1 * c2
                if acc:
                    data[key] = acc
                elif key in data:
                    del data[key]
        return LaurentPoly._raw(data)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        out = LaurentPoly.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    # evaluation and text form

    def evaluate(self, dr: complex, db: complex) -> complex:
        """Substitute numbers for the generators, Horner-style per variable.

        Requires dr != 0 (resp. db != 0) whenever a negative dr (resp. db)
        exponent occurs, since the generators are invertible in the ring.
        """
        if not self._terms:
            return 0j
        if dr == 0 and any(a < 0 for a, _ in self._terms):
            raise ValueError("cannot substitute 0 for dr: negative dr exponents present")
        if db == 0 and any(b < 0 for _, b in self._terms):
            raise ValueError("cannot substitute 0 for db: negative db exponents present")
        by_a: dict[int, dict[int, int]] = {}
        for (a, b), c in self._terms.items():
            by_a.setdefault(a, {})[b] = c
        inner_vals: dict[int, complex] = {
            a: _horner(sorted(bs.items(), reverse=True), complex(db)) for a, bs in by_a.items()
        }
        return _horner(sorted(inner_vals.items(), reverse=True), complex(dr))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = [f"{c}*dr^{a}*db^{b}" for (a, b), c in self.sorted_terms()]
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        """Inverse of ``str``; accepts the canonical textual form."""
        text = text.strip()
        if text == "0":
            return cls.zero()
        data: dict[Exponent, int] = {}
        for part in text.split("+"):
            m = _TERM_RE.match(part.strip())
            if m is None:
                raise ValueError(f"malformed polynomial term: {part.strip()!r}")
            c, a, b = (int(g) for g in m.groups())
            key = (a, b)
            acc = data.get(key, 0) + c
            if acc:
                data[key] = acc
            elif key in data:
                del data[key]
        return cls._raw(data)


def _horner(pairs: list[tuple[int, complex]], x: complex):
    # pairs: (exponent, value) sorted by exponent descending; gaps are bridged
    # by powers, and a trailing negative exponent becomes a final division
    acc = 0j
    prev: int | None = None
    for exp, val in pairs:
        if prev is not None:
            acc *= x ** (prev - exp)
        acc += val
        prev = exp
    if prev:
        acc *= x**prev
    return acc


DR = LaurentPoly.monomial(1, 0)
DB = LaurentPoly.monomial(0, 1)
ONE = LaurentPoly.one()
ZERO = LaurentPoly.zero()


def _lead(terms: dict[Exponent, int]) -> Exponent:
    return max(terms, key=_grlex_key)


def divexact(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Exact division p / q in the Laurent ring.

    Raises ArithmeticError when q does not divide p; used by the Bareiss
    determinant, where every division is exact by construction.
    """
    if q.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    if p.is_zero:
        return ZERO
    rem = dict(p._terms)
    qt = q._terms
    qlead = _lead(qt)
    qlc = qt[qlead]
    quot: dict[Exponent, int] = {}
    # exact long division needs one step per quotient term; the generous cap
    # only guards against an inexact input looping forever
    for _ in range(200_000):
        if not rem:
            return LaurentPoly._raw(quot)
        plead = _lead(rem)
        plc = rem[plead]
        if plc % qlc:
            raise ArithmeticError("inexact polynomial division")
        tc = plc // qlc
        texp = (plead[0] - qlead[0], plead[1] - qlead[1])
        quot[texp] = tc
        for (a, b), c in qt.items():
            key = (a + texp[0], b + texp[1])
            acc = rem.get(key, 0) - tc * c
            if acc:
                rem[key] = acc
            elif key in rem:
                del rem[key]
    raise ArithmeticError("inexact polynomial division (no progress)")


class PolyMatrix:
    """Rectangular matrix with :class:`LaurentPoly` entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Iterable[Iterable]) -> None:
        rows = []
        for row in entries:
            rows.append(tuple(_as_poly(e) for e in row))
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged rows")
        self.entries: tuple[tuple[LaurentPoly, ...], ...] = tuple(rows)
        self.rows = len(rows)
        self.cols = len(rows[0]) if rows else 0

    @classmethod
    def identity(cls, k: int) -> "PolyMatrix":
        return cls([[ONE if i == j else ZERO for j in range(k)] for i in range(k)])

    @classmethod
    def diagonal(cls, diag: Iterable) -> "PolyMatrix":
        d = [_as_poly(x) for x in diag]
        return cls([[d[i] if i == j else ZERO for j in range(len(d))] for i in range(len(d))])

    def __getitem__(self, key: tuple[int, int]) -> LaurentPoly:
        i, j = key
        return self.entries[i][j]

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError("inner dimensions differ")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = ZERO
                for k in range(self.cols):
                    e = self.entries[i][k]
                    f = other.entries[k][j]
                    if not (e.is_zero or f.is_zero):
                        acc = acc + e * f
                row.append(acc)
            out.append(row)
        return PolyMatrix(out)

    def evaluate(self, dr: complex, db: complex) -> list[list[complex]]:
        return [[e.evaluate(dr, db) for e in row] for row in self.entries]

    def kron(self, other: "PolyMatrix") -> "PolyMatrix":
        """Kronecker product; the left factor indexes the coarse blocks."""
        out = []
        for i in range(self.rows):
            for r in range(other.rows):
                row = []
                for j in range(self.cols):
                    for s in range(other.cols):
                        row.append(self.entries[i][j] * other.entries[r][s])
                out.append(row)
        return PolyMatrix(out)

    def __repr__(self) -> str:
        body = "; ".join(", ".join(str(e) for e in row) for row in self.entries)
        return f"PolyMatrix[{self.rows}x{self.cols}]({body})"


def _as_poly(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly.const(x)
    raise TypeError(f"cannot use {type(x).__name__} as a matrix entry")


def poly_det(m: PolyMatrix) -> LaurentPoly:
    """Exact determinant via fraction-free (Bareiss) elimination.

    Row swaps handle zero pivots; the determinant of the empty matrix is 1.
    Raises ValueError on a non-square input.
    """
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return ONE
    work = [list(row) for row in m.entries]
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if work[k][k].is_zero:
            pivot_row = next((i for i in range(k + 1, n) if not work[i][k].is_zero), None)
            if pivot_row is None:
                return ZERO
            work[k], work[pivot_row] = work[pivot_row], work[k]
            sign = -sign
        pivot = work[k][k]
        for i in range(k + 1, n):
            row_i = work[i]
            head = row_i[k]
            for j in range(k + 1, n):
                num = pivot * row_i[j] - head * work[k][j]
                row_i[j] = divexact(num, prev)
            row_i[k] = ZERO
        prev = pivot
    det = work[n - 1][n - 1]
    return det if sign > 0 else -det
