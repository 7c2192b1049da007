"""Support profiles of f and fhat, the uncertainty inequalities, and scans.

For a nonzero f : Z/p -> F_q with m = |supp f| the package checks

  classical:   m * |supp fhat| >= p
  strong:      m + |supp fhat| >= p          (may fail over F_q; a finding)
  theorem:     |supp fhat| >= p - r_m(p)
  zero set:    Z = complement of supp fhat contains no m-term progression

The classical inequality, the zero-set statement and the theorem (with an
exact r_m(p)) are proven facts; a failure of any of them is a bug.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, product
from math import comb
from typing import Sequence

from .errors import CapExceeded, MismatchedParameters, ZeroFunction
from .field_core import FieldSpec
from .fourier import FourierContext, forward, support
from .progressions import DEFAULT_BUDGET, APFreeResult, contains_ap_mask, exact_r

DEFAULT_CAP = 10 ** 7
MAX_STORED_COUNTEREXAMPLES = 1000


@dataclass(frozen=True)
class SupportProfile:
    p: int
    field: FieldSpec
    f: tuple[int, ...]
    f_hat: tuple[int, ...]
    S: tuple[int, ...]
    supp_hat: tuple[int, ...]
    Z: tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.S)

    def summary(self) -> dict:
        enc = self.field.element_to_json
        return {
            "f": [enc(v) for v in self.f],
            "f_hat": [enc(v) for v in self.f_hat],
            "support": list(self.S),
            "m": self.m,
            "spectrum_support": list(self.supp_hat),
            "spectrum_support_size": len(self.supp_hat),
            "zero_set": list(self.Z),
        }


def profile(ctx: FourierContext, f: Sequence[int]) -> SupportProfile:
    f_hat = forward(ctx, f)
    S = support(f)
    if not S:
        raise ZeroFunction("the zero function has no uncertainty profile")
    supp_hat = support(f_hat)
    hat = set(supp_hat)
    Z = tuple(t for t in range(ctx.p) if t not in hat)
    return SupportProfile(ctx.p, ctx.field, tuple(f), tuple(f_hat), S, supp_hat, Z)


def check_classical(pr: SupportProfile) -> bool:
    return pr.m * len(pr.supp_hat) >= pr.p


def is_classical_tight(pr: SupportProfile) -> bool:
    """Equality in the classical bound; over Z/p only deltas and constants qualify."""
    return pr.m * len(pr.supp_hat) == pr.p


def check_strong(pr: SupportProfile) -> bool:
    return pr.m + len(pr.supp_hat) >= pr.p


def r_provenance(r: APFreeResult | int) -> str:
    if isinstance(r, APFreeResult):
        return "exact" if r.proven_optimal else "assumed"
    return "assumed"


def check_theorem(pr: SupportProfile, r: APFreeResult | int) -> bool:
    """|supp fhat| >= p - r, for r = r_m(p) given exactly or as an assumed value."""
    if isinstance(r, APFreeResult):
        if (r.p, r.m) != (pr.p, pr.m):
            raise MismatchedParameters(f"r computed for (p={r.p}, m={r.m}), profile has (p={pr.p}, m={pr.m})")
        r = r.r_value
    return len(pr.supp_hat) >= pr.p - r


def check_zero_set_apfree(pr: SupportProfile) -> bool:
    mask = 0
    for t in pr.Z:
        mask |= 1 << t
    return not contains_ap_mask(mask, pr.p, pr.m)


@dataclass(frozen=True)
class VerificationReport:
    profile: SupportProfile
    classical_ok: bool
    classical_tight: bool
    strong_ok: bool
    theorem_ok: bool
    zero_set_apfree: bool
    r_used: int
    r_provenance: str

    @property
    def hard_failure(self) -> bool:
        return (not self.classical_ok or not self.zero_set_apfree
                or (not self.theorem_ok and self.r_provenance == "exact"))

    def to_json(self) -> dict:
        return {
            "profile": self.profile.summary(),
            "classical_ok": self.classical_ok,
            "classical_tight": self.classical_tight,
            "strong_ok": self.strong_ok,
            "theorem_ok": self.theorem_ok,
            "zero_set_apfree": self.zero_set_apfree,
            "r_used": self.r_used,
            "r_provenance": self.r_provenance,
        }


def verify(pr: SupportProfile, r: APFreeResult | int) -> VerificationReport:
    return VerificationReport(
        profile=pr,
        classical_ok=check_classical(pr),
        classical_tight=is_classical_tight(pr),
        strong_ok=check_strong(pr),
        theorem_ok=check_theorem(pr, r),
        zero_set_apfree=check_zero_set_apfree(pr),
        r_used=r.r_value if isinstance(r, APFreeResult) else r,
        r_provenance=r_provenance(r),
    )


# ---------------------------------------------------------------------------
# Extremal scans
# ---------------------------------------------------------------------------

@dataclass
class ExtremalScan:
    p: int
    field: FieldSpec
    omega: int
    m: int
    mode: str
    seed: int | None
    min_spectrum_support: int | None = None
    witness: tuple[int, ...] | None = None
    instances_checked: int = 0
    skipped: int = 0
    r_used: int = 0
    r_provenance: str = "assumed"
    classical_failures: int = 0
    theorem_failures: int = 0
    zero_set_failures: int = 0
    strong_failures: int = 0
    counterexamples: list[dict] = field(default_factory=list)

    @property
    def hard_failures(self) -> int:
        n = self.classical_failures + self.zero_set_failures
        if self.r_provenance == "exact":
            n += self.theorem_failures
        return n

    def to_json(self) -> dict:
        enc = self.field.element_to_json
        return {
            "p": self.p,
            "field": self.field.to_json(),
            "omega": enc(self.omega),
            "m": self.m,
            "mode": self.mode,
            "seed": self.seed,
            "min_spectrum_support": self.min_spectrum_support,
            "witness": None if self.witness is None else [enc(v) for v in self.witness],
            "instances_checked": self.instances_checked,
            "skipped": self.skipped,
            "r_used": self.r_used,
            "r_provenance": self.r_provenance,
            "theorem_lower_bound": self.p - self.r_used,
            "classical_failures": self.classical_failures,
            "theorem_failures": self.theorem_failures,
            "zero_set_failures": self.zero_set_failures,
            "strong_failures": self.strong_failures,
            "counterexamples_stored": len(self.counterexamples),
            "hard_failures": self.hard_failures,
        }


@dataclass
class _Partial:
    best: int | None = None
    witness: tuple[int, ...] | None = None
    checked: int = 0
    classical: int = 0
    theorem: int = 0
    zero_set: int = 0
    strong: int = 0
    counterexamples: list[dict] = field(default_factory=list)

    def visit(self, ctx: FourierContext, f: list[int], r: int) -> None:
        pr = profile(ctx, f)
        self.checked += 1
        size = len(pr.supp_hat)
        if self.best is None or size < self.best:
            self.best, self.witness = size, pr.f
        if not check_classical(pr):
            self.classical += 1
        if not check_theorem(pr, r):
            self.theorem += 1
        if not check_zero_set_apfree(pr):
            self.zero_set += 1
        if not check_strong(pr):
            self.strong += 1
            if len(self.counterexamples) < MAX_STORED_COUNTEREXAMPLES:
                self.counterexamples.append(pr.summary())

    def merge(self, other: "_Partial") -> None:
        # ``other`` comes later in canonical order, so ties keep our witness
        if other.best is not None and (self.best is None or other.best < self.best):
            self.best, self.witness = other.best, other.witness
        self.checked += other.checked
        self.classical += other.classical
        self.theorem += other.theorem
        self.zero_set += other.zero_set
        self.strong += other.strong
        room = MAX_STORED_COUNTEREXAMPLES - len(self.counterexamples)
        self.counterexamples.extend(other.counterexamples[:max(room, 0)])


def _scan_supports(ctx: FourierContext, m: int, supports: list[tuple[int, ...]], r: int) -> _Partial:
    part = _Partial()
    nonzero = ctx.field.nonzero()
    for S in supports:
        # projective representatives: leading coefficient 1, the rest nonzero
        for tail in product(nonzero, repeat=m - 1):
            f = [0] * ctx.p
            f[S[0]] = 1
            for z, c in zip(S[1:], tail):
                f[z] = c
            part.visit(ctx, f, r)
    return part


def exhaustive_size(p: int, q: int, m: int) -> int:
    """C(p, m) * (q^m - 1)/(q - 1): projective vectors over all m-subsets."""
    return comb(p, m) * (q ** m - 1) // (q - 1)


def extremal_scan(ctx: FourierContext, m: int, mode: str = "exhaustive", *,
                  samples: int = 1000, seed: int = 0, cap: int = DEFAULT_CAP,
                  r: APFreeResult | int | None = None, budget: int = DEFAULT_BUDGET,
                  workers: int = 1) -> ExtremalScan:
    """Minimum |supp fhat| over functions with |supp f| = m, checking every instance.

    ``mode="exhaustive"`` visits every m-subset S and every coefficient
    vector on S up to a nonzero scalar (first coordinate normalized to 1);
    vectors with a zero coordinate on S have smaller support and are skipped
    but counted.  ``mode="random"`` draws ``samples`` supports and nonzero
    coefficients uniformly from a ``seed``-ed generator.

    When ``r`` is not given it is computed with ``exact_r(p, m, budget)``;
    an unproven value is labelled "assumed" and theorem failures against it
    are not hard failures.
    """
    p, q = ctx.p, ctx.field.q
    if not 1 <= m <= p:
        raise ValueError(f"support size m = {m} not in [1, {p}]")
    if r is None:
        r = exact_r(p, m, budget)
    r_value = r.r_value if isinstance(r, APFreeResult) else r
    if isinstance(r, APFreeResult) and (r.p, r.m) != (p, m):
        raise MismatchedParameters(f"r computed for (p={r.p}, m={r.m}), scan has (p={p}, m={m})")

    scan = ExtremalScan(p, ctx.field, ctx.omega, m, mode, seed if mode == "random" else None,
                        r_used=r_value, r_provenance=r_provenance(r))
    total = _Partial()
    if mode == "exhaustive":
        size = exhaustive_size(p, q, m)
        if size > cap:
            raise CapExceeded(f"exhaustive scan needs {size} instances, cap is {cap}")
        supports = list(combinations(range(p), m))
        scan.skipped = len(supports) * ((q ** m - 1) // (q - 1) - (q - 1) ** (m - 1))
        if workers > 1 and len(supports) > 1:
            n = min(workers, len(supports))
            chunks = [supports[i * len(supports) // n:(i + 1) * len(supports) // n] for i in range(n)]
            with ProcessPoolExecutor(max_workers=n) as pool:
                parts = list(pool.map(_scan_supports, [ctx] * n, [m] * n, chunks, [r_value] * n))
        else:
            parts = [_scan_supports(ctx, m, supports, r_value)]
        for part in parts:
            total.merge(part)
    elif mode == "random":
        rng = random.Random(seed)
        for _ in range(samples):
            S = sorted(rng.sample(range(p), m))
            f = [0] * p
            for z in S:
                f[z] = rng.randrange(1, q)
            total.visit(ctx, f, r_value)
    else:
        raise ValueError(f"unknown mode {mode!r}")

    scan.min_spectrum_support = total.best
    scan.witness = total.witness
    scan.instances_checked = total.checked
    scan.classical_failures = total.classical
    scan.theorem_failures = total.theorem
    scan.zero_set_failures = total.zero_set
    scan.strong_failures = total.strong
    scan.counterexamples = total.counterexamples
    return scan
