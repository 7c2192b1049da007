"""Square minors of the Fourier matrix [omega^(tk)] and their ranks.

Minors are built WITHOUT the global p^{-1} factor of the transform matrix: it
is a nonzero scalar, so it changes determinants by (p^{-1})^m and never
changes rank or degeneracy.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Sequence

from .errors import HardAssertionFailure, IndexOutOfRange, NotSquare, SizeMismatch, ZeroDifference
from .field_core import FieldSpec
from .fourier import FourierContext
from .progressions import APSpec, SubsetOfZp, contains_ap

Matrix = list[list[int]]

FULL_ENUMERATION_LIMIT = 10 ** 6
DEFAULT_SAMPLES = 10 ** 5


@dataclass(frozen=True)
class MinorIndex:
    rows: tuple[int, ...]
    cols: tuple[int, ...]

    def validate(self, p: int) -> None:
        if len(self.rows) != len(self.cols):
            raise SizeMismatch(f"{len(self.rows)} rows but {len(self.cols)} columns")
        for name, idx in (("row", self.rows), ("column", self.cols)):
            if len(set(idx)) != len(idx):
                raise SizeMismatch(f"repeated {name} index in {list(idx)}")
            for i in idx:
                if not 0 <= i < p:
                    raise IndexOutOfRange(f"{name} index {i} not in [0, {p})")


def build_minor(ctx: FourierContext, rows: Sequence[int], cols: Sequence[int]) -> Matrix:
    """Entry (i, j) is omega^(rows[i] * cols[j])."""
    MinorIndex(tuple(rows), tuple(cols)).validate(ctx.p)
    w, p = ctx.omega_powers, ctx.p
    return [[w[t * k % p] for k in cols] for t in rows]


def _eliminate(field: FieldSpec, matrix: Matrix) -> tuple[Matrix, list[int], int]:
    """Reduced row echelon form; returns (rref, pivot columns, det of input)."""
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise NotSquare(f"matrix is not square: {n} rows, row lengths {[len(r) for r in matrix]}")
    if field.is_prime_field:
        return _eliminate_mod(field.q, matrix)
    a = [list(row) for row in matrix]
    mul, sub, inv = field.mul, field.sub, field.inv
    det = 1
    pivots: list[int] = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, n) if a[i][c]), None)
        if piv is None:
            det = 0
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
            det = field.neg(det)
        pv = a[r][c]
        det = mul(det, pv)
        s = inv(pv)
        a[r] = [mul(s, x) for x in a[r]]
        for i in range(n):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [sub(x, mul(f, y)) for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots, det


def _eliminate_mod(q: int, matrix: Matrix) -> tuple[Matrix, list[int], int]:
    # same pivot rule as _eliminate, on plain residues
    n = len(matrix)
    a = [list(row) for row in matrix]
    det = 1
    pivots: list[int] = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, n) if a[i][c]), None)
        if piv is None:
            det = 0
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
            det = -det % q
        pv = a[r][c]
        det = det * pv % q
        s = pow(pv, -1, q)
        a[r] = [s * x % q for x in a[r]]
        top = a[r]
        for i in range(n):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % q for x, y in zip(a[i], top)]
        pivots.append(c)
        r += 1
    return a, pivots, det


def rank_det(field: FieldSpec, matrix: Matrix) -> tuple[int, int]:
    """Exact rank and determinant by Gauss-Jordan elimination over ``field``.

    The pivot in each column is the first nonzero entry at or below the
    current row.
    """
    _, pivots, det = _eliminate(field, matrix)
    return len(pivots), det


def kernel_vector(field: FieldSpec, matrix: Matrix) -> list[int] | None:
    """A nonzero null vector (first free variable set to 1), or None at full rank."""
    rref, pivots, _ = _eliminate(field, matrix)
    n = len(matrix)
    free = [c for c in range(n) if c not in pivots]
    if not free:
        return None
    v = [0] * n
    v[free[0]] = 1
    for r, c in enumerate(pivots):
        v[c] = field.neg(rref[r][free[0]])
    return v


def mat_vec(field: FieldSpec, matrix: Matrix, v: Sequence[int]) -> list[int]:
    out = []
    for row in matrix:
        acc = 0
        for x, y in zip(row, v):
            acc = field.add(acc, field.mul(x, y))
        out.append(acc)
    return out


@dataclass(frozen=True)
class MinorReport:
    rows: tuple[int, ...]
    cols: tuple[int, ...]
    rank: int
    det: int
    is_degenerate: bool
    kernel_vector: tuple[int, ...] | None

    def to_json(self, field: FieldSpec) -> dict:
        enc = field.element_to_json
        return {
            "rows": list(self.rows),
            "cols": list(self.cols),
            "m": len(self.rows),
            "rank": self.rank,
            "det": enc(self.det),
            "is_degenerate": self.is_degenerate,
            "kernel_vector": None if self.kernel_vector is None else [enc(x) for x in self.kernel_vector],
            "prefactor": "omitted",
        }


def minor_report(ctx: FourierContext, rows: Sequence[int], cols: Sequence[int]) -> MinorReport:
    field = ctx.field
    matrix = build_minor(ctx, rows, cols)
    rank, det = rank_det(field, matrix)
    kv = None
    if rank < len(rows):
        kv = kernel_vector(field, matrix)
        if kv is None or any(mat_vec(field, matrix, kv)):
            raise HardAssertionFailure(f"kernel vector check failed for rows={rows} cols={cols}")
    return MinorReport(tuple(rows), tuple(cols), rank, det, rank < len(rows), None if kv is None else tuple(kv))


def vandermonde_det(ctx: FourierContext, ap: APSpec, cols: Sequence[int]) -> int:
    """Closed form for the minor with progression rows a, a+b, ..., a+(m-1)b.

    Returns prod_{i<j} (x_i - x_j) * prod_k omega^(a k) with x_i = omega^(b k_i).
    This differs from the elimination determinant by (-1)^(m(m-1)/2), because
    the standard Vandermonde product is prod_{i<j} (x_j - x_i).
    """
    p, field = ctx.p, ctx.field
    if len(cols) != ap.m:
        raise SizeMismatch(f"progression of length {ap.m} but {len(cols)} columns")
    if len(set(cols)) != len(cols):
        raise SizeMismatch(f"repeated column index in {list(cols)}")
    for k in cols:
        if not 0 <= k < p:
            raise IndexOutOfRange(f"column index {k} not in [0, {p})")
    if ap.b % p == 0:
        raise ZeroDifference("common difference is 0 mod p")
    w = ctx.omega_powers
    xs = [w[ap.b * k % p] for k in cols]
    out = 1
    for i in range(len(xs)):
        for j in range(i + 1, len(xs)):
            out = field.mul(out, field.sub(xs[i], xs[j]))
    for k in cols:
        out = field.mul(out, w[ap.a * k % p])
    return out


def vandermonde_sign(m: int) -> int:
    return -1 if (m * (m - 1) // 2) % 2 else 1


def degenerate_minor_search(ctx: FourierContext, m: int, budget: int | None = None,
                            seed: int = 0) -> list[MinorReport]:
    """All degenerate m x m minors found, sorted by (rows, cols).

    Enumerates every pair of increasing row/column index sets when
    C(p, m)^2 <= FULL_ENUMERATION_LIMIT (and within ``budget``), otherwise
    draws ``budget`` seeded random pairs.  Every reported minor is certified:
    kernel vector verified, and neither its rows nor its columns form an
    m-term progression.  A degenerate progression minor raises
    HardAssertionFailure.
    """
    p = ctx.p
    if not 1 <= m <= p:
        raise SizeMismatch(f"minor size {m} not in [1, {p}]")
    n_sets = comb(p, m)
    total = n_sets * n_sets
    if total <= FULL_ENUMERATION_LIMIT and (budget is None or budget >= total):
        sets = list(combinations(range(p), m))
        pairs = ((r, c) for r in sets for c in sets)
    else:
        pairs = _sample_pairs(p, m, DEFAULT_SAMPLES if budget is None else budget, seed)

    found = []
    for rows, cols in pairs:
        rep = minor_report(ctx, rows, cols)
        if not rep.is_degenerate:
            continue
        for name, idx in (("rows", rows), ("cols", cols)):
            ap = contains_ap(SubsetOfZp.of(p, idx), m)
            if ap is not None:
                raise HardAssertionFailure(f"degenerate minor with progression {name} {idx}: {ap}")
        found.append(rep)
    found.sort(key=lambda r: (r.rows, r.cols))
    return found


def _sample_pairs(p: int, m: int, count: int, seed: int):
    rng = random.Random(seed)
    seen = set()
    for _ in range(count):
        pair = (tuple(sorted(rng.sample(range(p), m))), tuple(sorted(rng.sample(range(p), m))))
        if pair not in seen:
            seen.add(pair)
            yield pair
