"""Arithmetic progressions in Z/p and the extremal function r_m(p).

Progressions wrap around modulo p: {a + k*b mod p : 0 <= k < m}, b != 0.
r_m(p) is the size of the largest subset of Z/p containing no m-term
progression.  Subsets are stored as int bitmasks (bit i set iff i is a member).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator

import numpy as np

from .errors import DomainTooSmall, LengthExceedsGroup
from .field_core import is_prime

DEFAULT_BUDGET = 10 ** 8
# the exhaustive oracle materializes all 2^p subsets
EXHAUSTIVE_MAX_P = 24


@dataclass(frozen=True)
class APSpec:
    a: int
    b: int
    m: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"progression length must be positive, got {self.m}")

    def elements(self, p: int) -> list[int]:
        """Members in progression order a, a+b, ..., a+(m-1)b (mod p)."""
        return [(self.a + k * self.b) % p for k in range(self.m)]

    def to_json(self) -> dict:
        return {"a": self.a, "b": self.b, "m": self.m}


@dataclass(frozen=True)
class SubsetOfZp:
    p: int
    mask: int = 0

    @classmethod
    def of(cls, p: int, members: Iterable[int]) -> "SubsetOfZp":
        mask = 0
        for x in members:
            if not 0 <= x < p:
                raise ValueError(f"{x} is not in Z/{p}")
            mask |= 1 << x
        return cls(p, mask)

    @property
    def members(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.p) if self.mask >> i & 1)

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __contains__(self, x: int) -> bool:
        return 0 <= x < self.p and bool(self.mask >> x & 1)

    def translate(self, c: int, d: int) -> "SubsetOfZp":
        """The image {c*x + d}."""
        return SubsetOfZp.of(self.p, ((c * x + d) % self.p for x in self.members))


def ap_elements(ap: APSpec, p: int) -> SubsetOfZp:
    if ap.m > p:
        raise LengthExceedsGroup(f"a progression of length {ap.m} does not fit in Z/{p}")
    if ap.b % p == 0:
        raise ValueError("common difference must be nonzero mod p")
    return SubsetOfZp.of(p, ap.elements(p))


@lru_cache(maxsize=256)
def ap_table(p: int, m: int) -> tuple[tuple[int, int, int], ...]:
    """(b, a, mask) for every progression, ordered by (b, a)."""
    if m > p:
        return ()
    out = []
    for b in range(1, p):
        for a in range(p):
            mask = 0
            for k in range(m):
                mask |= 1 << ((a + k * b) % p)
            out.append((b, a, mask))
    return tuple(out)


@lru_cache(maxsize=256)
def distinct_ap_masks(p: int, m: int) -> tuple[int, ...]:
    return tuple(sorted({mask for _, _, mask in ap_table(p, m)}))


def contains_ap_mask(mask: int, p: int, m: int) -> bool:
    return any(mask & ap == ap for ap in distinct_ap_masks(p, m))


def contains_ap(s: SubsetOfZp, m: int) -> APSpec | None:
    """An m-term progression inside ``s``, smallest (b, a) first, or None."""
    if m < 1:
        raise ValueError(f"progression length must be positive, got {m}")
    for b, a, ap in ap_table(s.p, m):
        if s.mask & ap == ap:
            return APSpec(a, b, m)
    return None


# ---------------------------------------------------------------------------
# r_m(p)
# ---------------------------------------------------------------------------

@dataclass
class APFreeResult:
    p: int
    m: int
    r_value: int
    witness: SubsetOfZp
    nodes_explored: int = 0
    proven_optimal: bool = True
    method: str = "branch_and_bound"

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "m": self.m,
            "r": self.r_value,
            "witness": list(self.witness.members),
            "proven": self.proven_optimal,
            "nodes": self.nodes_explored,
            "method": self.method,
        }


def _trivial_r(p: int, m: int) -> APFreeResult | None:
    if m == 1:
        r, members = 0, ()
    elif m > p:
        r, members = p, range(p)
    elif m == p:
        r, members = p - 1, range(p - 1)
    elif m == 2:
        r, members = 1, (0,)
    else:
        return None
    return APFreeResult(p, m, r, SubsetOfZp.of(p, members), 0, True, "closed_form")


def exact_r(p: int, m: int, budget: int = DEFAULT_BUDGET, method: str = "branch_and_bound",
            shortcut: bool = True) -> APFreeResult:
    """r_m(p) with the lexicographically least optimal witness.

    ``method`` is ``"branch_and_bound"`` or ``"exhaustive"`` (all 2^p subsets,
    p <= 24).  Budget exhaustion in branch and bound returns the best set
    found with ``proven_optimal=False``.  ``shortcut=False`` forces the search
    even where a closed form is known.
    """
    if not is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    if m < 1:
        raise ValueError(f"progression length must be positive, got {m}")
    if shortcut:
        trivial = _trivial_r(p, m)
        if trivial is not None:
            return trivial
    if method == "exhaustive":
        return _exhaustive(p, m)
    if method != "branch_and_bound":
        raise ValueError(f"unknown method {method!r}")
    return _branch_and_bound(p, m, budget)


class _BudgetExhausted(Exception):
    pass


def _branch_and_bound(p: int, m: int, budget: int) -> APFreeResult:
    # Including elements in increasing order, the progressions to test when i
    # joins are exactly those whose largest member is i.
    by_max: list[list[int]] = [[] for _ in range(p)]
    for ap in distinct_ap_masks(p, m):
        by_max[ap.bit_length() - 1].append(ap)

    best_mask, best_size = 0, 0
    nodes = 0

    def visit(i: int, mask: int, size: int) -> None:
        nonlocal best_mask, best_size, nodes
        if nodes >= budget:
            raise _BudgetExhausted
        nodes += 1
        if size > best_size:
            best_mask, best_size = mask, size
        if i == p or size + (p - i) <= best_size:
            return
        grown = mask | 1 << i
        if all(grown & ap != ap for ap in by_max[i]):
            visit(i + 1, grown, size + 1)
        if size + (p - i - 1) > best_size:
            visit(i + 1, mask, size)

    proven = True
    try:
        if contains_ap_mask(1, p, m):
            visit(0, 0, 0)
        else:
            # Translation invariance: some optimum contains 0, and the
            # lexicographically least optimum always does.
            visit(1, 1, 1)
    except _BudgetExhausted:
        proven = False
    return APFreeResult(p, m, best_size, SubsetOfZp(p, best_mask), nodes, proven, "branch_and_bound")


def _exhaustive(p: int, m: int) -> APFreeResult:
    if p > EXHAUSTIVE_MAX_P:
        raise ValueError(f"exhaustive enumeration supports p <= {EXHAUSTIVE_MAX_P}, got {p}")
    masks = np.arange(1 << p, dtype=np.int64)
    bad = np.zeros(masks.shape, dtype=bool)
    for ap in distinct_ap_masks(p, m):
        bad |= (masks & ap) == ap
    sizes = np.zeros(masks.shape, dtype=np.int64)
    for i in range(p):
        sizes += (masks >> i) & 1
    sizes[bad] = -1
    r = int(sizes.max())
    best = min((int(x) for x in np.flatnonzero(sizes == r)),
               key=lambda x: SubsetOfZp(p, x).members)
    return APFreeResult(p, m, r, SubsetOfZp(p, best), 1 << p, True, "exhaustive")


def r_by_combinations(p: int, m: int) -> int:
    """Smallest-first enumeration: r is the largest k admitting an AP-free k-set.

    Plain and slow; used as a third opinion in tests.
    """
    aps = distinct_ap_masks(p, m)
    r = 0
    for k in range(1, p + 1):
        found = False
        for combo in combinations(range(p), k):
            mask = sum(1 << x for x in combo)
            if all(mask & ap != ap for ap in aps):
                found = True
                break
        if not found:
            break
        r = k
    return r


# ---------------------------------------------------------------------------
# Gowers bound r_m(p) <= p / (log log p)^(2^(-2^(m+9)))
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BoundReport:
    p: int
    m: int
    log_base: str
    log2_exponent: float       # exact integer -2^(m+9) unless overridden
    exponent_overridden: bool
    loglog: float
    bound: float               # rounds to p when the deficit is below float resolution
    log2_bound: float
    log2_deficit: float        # log2(p - bound)
    vacuous: bool              # bound >= p - 1

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "m": self.m,
            "log_base": self.log_base,
            "log2_exponent": self.log2_exponent if self.exponent_overridden
            else {"exact_int": int(self.log2_exponent)},
            "exponent_overridden": self.exponent_overridden,
            "loglog": self.loglog,
            "bound": self.bound,
            "log2_bound": {"log2": self.log2_bound},
            "log2_deficit": {"log2": self.log2_deficit},
            "vacuous": self.vacuous,
        }


def gowers_bound(p: int, m: int, exponent_override: float | None = None,
                 log_base: str = "e") -> BoundReport:
    """Evaluate the Gowers upper bound on r_m(p) in the log domain.

    With exponent e and L = log log p, the bound is p * exp(-x) where
    x = e * ln L.  The deficit p - bound = p * (1 - exp(-x)) is carried as a
    base-2 logarithm so that e = 2^(-2^(m+9)) never has to be formed.
    """
    if m < 1:
        raise ValueError(f"progression length must be positive, got {m}")
    if log_base == "e":
        lg = math.log
    elif log_base == "2":
        lg = math.log2
    else:
        raise ValueError(f"log_base must be 'e' or '2', got {log_base!r}")
    if p <= 1 or lg(p) <= 1 or lg(lg(p)) <= 1:
        raise DomainTooSmall(f"log log {p} <= 1 (base {log_base})")
    loglog = lg(lg(p))

    if exponent_override is not None:
        if exponent_override <= 0:
            raise ValueError("exponent override must be positive")
        log2_e = math.log2(exponent_override)
    else:
        k = m + 9
        log2_e = -float(2 ** k) if k < 1000 else -math.inf
    log2_x = log2_e + math.log2(math.log(loglog))
    x = 2.0 ** log2_x if log2_x > -1074 else 0.0
    # 1 - exp(-x) = x (1 - x/2 + ...), so below 2^-60 log2 x is exact to double precision
    log2_frac = log2_x if log2_x < -60 else math.log2(-math.expm1(-x))
    log2_deficit = math.log2(p) + log2_frac
    return BoundReport(
        p=p,
        m=m,
        log_base=log_base,
        log2_exponent=log2_e,
        exponent_overridden=exponent_override is not None,
        loglog=loglog,
        bound=p * math.exp(-x),
        log2_bound=math.log2(p) - x / math.log(2),
        log2_deficit=log2_deficit,
        vacuous=log2_deficit <= 0.0,
    )


__all__ = [
    "APFreeResult",
    "APSpec",
    "BoundReport",
    "DEFAULT_BUDGET",
    "SubsetOfZp",
    "ap_elements",
    "contains_ap",
    "contains_ap_mask",
    "exact_r",
    "gowers_bound",
    "r_by_combinations",
]
