"""The Fourier transform on Z/p with values in F_q (p | q - 1).

Convention: with omega a principal p-th root of unity,

    forward:  fhat(t) = p^{-1} * sum_z f(z) omega^{tz}
    inverse:  f(z)    =          sum_t fhat(t) omega^{-tz}

Signals and spectra are plain sequences of int-encoded field elements of
length p (see ``field_core``).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .errors import BadRootOverride, ElementNotCanonical, FieldError, IndexOutOfRange, LengthMismatch
from .field_core import FieldSpec, is_prime, multiplicative_order, principal_root, root_of_unity

Signal = Sequence[int]
Spectrum = Sequence[int]


@dataclass(frozen=True)
class FourierContext:
    p: int
    field: FieldSpec
    omega: int
    p_inv: int
    omega_powers: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "field": self.field.to_json(),
            "omega": self.field.element_to_json(self.omega),
            "p_inv": self.field.element_to_json(self.p_inv),
        }

    @cached_property
    def _rader(self) -> "_RaderPlan":
        return _RaderPlan.build(self)


def make_context(p: int, field: FieldSpec, omega: int | None = None) -> FourierContext:
    """Transform context for Z/p over ``field``.

    ``omega`` defaults to the principal root g^((q-1)/p) of the canonical
    generator g; an override must have multiplicative order exactly p.
    """
    if not is_prime(p):
        raise FieldError(f"p = {p} is not prime")
    if omega is None:
        omega = principal_root(field, p)
    else:
        try:
            omega = field.element(omega)
        except ElementNotCanonical as exc:
            raise BadRootOverride(str(exc)) from None
        root_of_unity(field, p)  # raises OrderNotDivisible first if p does not divide q - 1
        if omega == 0 or multiplicative_order(field, omega) != p:
            raise BadRootOverride(f"{field.format(omega)} does not have order {p} in {field}")
    powers = [1] * p
    for i in range(1, p):
        powers[i] = field.mul(powers[i - 1], omega)
    p_inv = field.inv(field.from_int(p))
    return FourierContext(p, field, omega, p_inv, tuple(powers))


def _check(ctx: FourierContext, values: Sequence[int]) -> list[int]:
    if len(values) != ctx.p:
        raise LengthMismatch(f"expected {ctx.p} values, got {len(values)}")
    q = ctx.field.q
    for v in values:
        if isinstance(v, bool) or not isinstance(v, int) or not 0 <= v < q:
            raise ElementNotCanonical(f"{v!r} is not an element of {ctx.field}")
    return list(values)


def _transform(ctx: FourierContext, values: Sequence[int], sign: int, scale: int) -> list[int]:
    p, field = ctx.p, ctx.field
    w = ctx.omega_powers
    nz = [(z, v) for z, v in enumerate(values) if v]
    out = []
    if field.is_prime_field:
        q = field.q
        for t in range(p):
            st = sign * t
            acc = sum(v * w[st * z % p] for z, v in nz)
            out.append(acc % q * scale % q)
        return out
    add, mul = field.add, field.mul
    for t in range(p):
        st = sign * t
        acc = 0
        for z, v in nz:
            acc = add(acc, mul(v, w[st * z % p]))
        out.append(mul(acc, scale))
    return out


def forward(ctx: FourierContext, f: Signal, strategy: str = "naive") -> list[int]:
    """fhat = F f with F = p^{-1} [omega^{tz}]."""
    if strategy == "rader":
        return forward_rader(ctx, f)
    if strategy != "naive":
        raise ValueError(f"unknown strategy {strategy!r}")
    return _transform(ctx, _check(ctx, f), 1, ctx.p_inv)


def inverse(ctx: FourierContext, s: Spectrum) -> list[int]:
    return _transform(ctx, _check(ctx, s), -1, 1)


# ---------------------------------------------------------------------------
# Rader reindexing
# ---------------------------------------------------------------------------

def _dft(field: FieldSpec, a: list[int], root: int) -> list[int]:
    """Mixed-radix DFT of length len(a); ``root`` must have order len(a).

    Decimation in time on the smallest prime factor r of n; prime lengths are
    evaluated directly.
    """
    n = len(a)
    if n == 1:
        return list(a)
    r = next(d for d in range(2, n + 1) if n % d == 0)
    add, mul = field.add, field.mul
    if r == n:
        pw = [1] * n
        for i in range(1, n):
            pw[i] = mul(pw[i - 1], root)
        out = []
        for k in range(n):
            acc = 0
            for j, x in enumerate(a):
                if x:
                    acc = add(acc, mul(x, pw[j * k % n]))
            out.append(acc)
        return out
    m = n // r
    sub_root = field.pow(root, r)
    subs = [_dft(field, a[s::r], sub_root) for s in range(r)]
    out = []
    tw = 1  # root^k
    for k in range(n):
        acc = subs[0][k % m]
        twk = tw
        for s in range(1, r):
            acc = add(acc, mul(twk, subs[s][k % m]))
            twk = mul(twk, tw)
        out.append(acc)
        tw = mul(tw, root)
    return out


@dataclass(frozen=True)
class _RaderPlan:
    gen: int                    # primitive root mod p
    gather: tuple[int, ...]     # gather[j] = gen^j mod p
    scatter: tuple[int, ...]    # scatter[i] = gen^(-i) mod p
    kernel: tuple[int, ...]     # kernel[n] = omega^(gen^(-n))
    inner_root: int | None      # order p-1 root when (p-1) | (q-1)
    kernel_hat: tuple[int, ...] | None
    n_inv: int | None

    @classmethod
    def build(cls, ctx: FourierContext) -> "_RaderPlan":
        p, field = ctx.p, ctx.field
        n = p - 1
        gen = FieldSpec(p).generator
        gather = [pow(gen, j, p) for j in range(n)]
        scatter = [pow(gen, -i, p) for i in range(n)]
        kernel = [ctx.omega_powers[scatter[i]] for i in range(n)]
        inner_root = kernel_hat = n_inv = None
        if (field.q - 1) % n == 0:
            inner_root = root_of_unity(field, n)
            kernel_hat = tuple(_dft(field, kernel, inner_root))
            n_inv = field.inv(field.from_int(n))
        return cls(gen, tuple(gather), tuple(scatter), tuple(kernel), inner_root, kernel_hat, n_inv)

    def convolve(self, field: FieldSpec, a: list[int]) -> list[int]:
        """Cyclic convolution of ``a`` with the kernel."""
        n = len(a)
        mul, add = field.mul, field.add
        if self.inner_root is not None:
            ahat = _dft(field, a, self.inner_root)
            prod = [mul(x, y) for x, y in zip(ahat, self.kernel_hat)]
            res = _dft(field, prod, field.inv(self.inner_root))
            return [mul(x, self.n_inv) for x in res]
        c = self.kernel
        nz = [(j, x) for j, x in enumerate(a) if x]
        if field.is_prime_field:
            q = field.q
            return [sum(x * c[(i - j) % n] for j, x in nz) % q for i in range(n)]
        out = []
        for i in range(n):
            acc = 0
            for j, x in nz:
                acc = add(acc, mul(x, c[(i - j) % n]))
            out.append(acc)
        return out


def forward_rader(ctx: FourierContext, f: Signal) -> list[int]:
    """Same result as ``forward``, via a length p-1 cyclic convolution.

    With g a primitive root mod p, fhat(g^-i) = p^{-1} (f(0) + sum_j f(g^j) omega^(g^(j-i))),
    and the sum is the cyclic convolution of a_j = f(g^j) with c_n = omega^(g^-n).
    """
    f = _check(ctx, f)
    field, plan = ctx.field, ctx._rader
    add, mul = field.add, field.mul
    total = 0
    for v in f:
        total = add(total, v)
    out = [0] * ctx.p
    out[0] = mul(total, ctx.p_inv)
    conv = plan.convolve(field, [f[i] for i in plan.gather])
    x0 = f[0]
    for i, t in enumerate(plan.scatter):
        out[t] = mul(add(x0, conv[i]), ctx.p_inv)
    return out


# ---------------------------------------------------------------------------
# Characters, supports and simple signal operations
# ---------------------------------------------------------------------------

def character(ctx: FourierContext, t: int) -> list[int]:
    """The character z -> omega^(tz)."""
    if not 0 <= t < ctx.p:
        raise IndexOutOfRange(f"t = {t} not in [0, {ctx.p})")
    return [ctx.omega_powers[t * z % ctx.p] for z in range(ctx.p)]


def delta(p: int, index: int = 0, value: int = 1) -> list[int]:
    out = [0] * p
    out[index % p] = value
    return out


def support(values: Sequence[int]) -> tuple[int, ...]:
    return tuple(i for i, v in enumerate(values) if v)


def shift(values: Sequence[int], s: int) -> list[int]:
    """g(z) = f(z - s)."""
    p = len(values)
    return [values[(z - s) % p] for z in range(p)]


def reflect(values: Sequence[int]) -> list[int]:
    """g(z) = f(-z)."""
    p = len(values)
    return [values[-z % p] for z in range(p)]


# ---------------------------------------------------------------------------
# File format
# ---------------------------------------------------------------------------

def vector_to_json(ctx: FourierContext, values: Sequence[int], kind: str = "signal") -> dict:
    field = ctx.field
    doc = {
        "kind": kind,
        "p": ctx.p,
        "field": field.to_json(),
        "omega": field.element_to_json(ctx.omega),
        "values": [field.element_to_json(v) for v in values],
    }
    if kind == "spectrum":
        supp = support(values)
        doc["support"] = list(supp)
        doc["support_size"] = len(supp)
    return doc


def vector_from_json(doc: dict) -> tuple[int, FieldSpec, list[int]]:
    """Parse a signal/spectrum document into (p, field, values)."""
    if not isinstance(doc, dict):
        raise ValueError("signal document must be a JSON object")
    for key in ("p", "field", "values"):
        if key not in doc:
            raise ValueError(f"signal document is missing {key!r}")
    p = doc["p"]
    if not isinstance(p, int) or not is_prime(p):
        raise FieldError(f"p = {p!r} is not prime")
    field = FieldSpec.from_json(doc["field"])
    values = doc["values"]
    if not isinstance(values, list):
        raise ValueError("'values' must be a list")
    if len(values) != p:
        raise LengthMismatch(f"expected {p} values, got {len(values)}")
    return p, field, [field.element_from_json(v) for v in values]
