"""Exact arithmetic in finite fields F_q, q = l^k.

Field elements are plain ``int`` values in ``[0, q)``.  The element with
coefficient list ``[c0, c1, ..., c_{k-1}]`` (constant term first, reduced
modulo the field's modulus polynomial) is encoded as

    c0 + c1*l + ... + c_{k-1}*l^(k-1)

so for prime fields the encoding is the residue itself.  Integer order of the
encoding is the canonical element order used for every "smallest" choice in
the package (highest-degree coefficient most significant).

Prime fields use modular integer arithmetic.  Extension fields build
exponent/logarithm/Zech tables once, on first use, from the canonical
generator; after that every operation is a table lookup.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .errors import (
    DivisionByZero,
    ElementNotCanonical,
    FieldError,
    FieldTooLarge,
    OrderNotDivisible,
    ZeroElement,
)

# q - 1 is factored by trial division, so q is bounded.
MAX_ORDER = 1 << 40
# Extension fields keep three tables of size q.
MAX_EXTENSION_ORDER = 1 << 20

# Deterministic Miller-Rabin: these bases are exact for n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of ``n >= 1`` by trial division."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


# ---------------------------------------------------------------------------
# Polynomials over F_l: lists of ints, constant term first, no trailing zeros.
# ---------------------------------------------------------------------------

def _strip(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_sub(a: list[int], b: list[int], l: int) -> list[int]:
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % l for i in range(n)]
    return _strip(out)


def _poly_mul(a: list[int], b: list[int], l: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _strip([c % l for c in out])


def _poly_divmod(a: list[int], f: list[int], l: int) -> tuple[list[int], list[int]]:
    a = list(a)
    df = len(f) - 1
    if df < 0:
        raise DivisionByZero("polynomial division by zero")
    inv_lead = pow(f[-1], -1, l)
    quot = [0] * max(len(a) - df, 0)
    for i in range(len(a) - 1, df - 1, -1):
        c = a[i] * inv_lead % l
        if c:
            quot[i - df] = c
            for j in range(df + 1):
                a[i - df + j] = (a[i - df + j] - c * f[j]) % l
    return _strip(quot), _strip(a[:df])


def _poly_mod(a: list[int], f: list[int], l: int) -> list[int]:
    return _poly_divmod(a, f, l)[1]


def _poly_gcd(a: list[int], b: list[int], l: int) -> list[int]:
    a, b = _strip(list(a)), _strip(list(b))
    while b:
        a, b = b, _poly_mod(a, b, l)
    if a:
        inv = pow(a[-1], -1, l)
        a = [c * inv % l for c in a]
    return a


def _poly_powmod(base: list[int], e: int, f: list[int], l: int) -> list[int]:
    result = [1]
    base = _poly_mod(base, f, l)
    while e:
        if e & 1:
            result = _poly_mod(_poly_mul(result, base, l), f, l)
        base = _poly_mod(_poly_mul(base, base, l), f, l)
        e >>= 1
    return result


def is_irreducible(modulus: Sequence[int], l: int) -> bool:
    """Irreducibility of a polynomial over F_l (Ben-Or test).

    ``modulus`` is a coefficient list, constant term first.  f of degree k is
    irreducible iff gcd(x^(l^i) - x, f) = 1 for every 1 <= i <= k/2.
    """
    f = _strip([c % l for c in modulus])
    k = len(f) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    x = [0, 1]
    h = x
    for _ in range(k // 2):
        h = _poly_powmod(h, l, f, l)
        if len(_poly_gcd(f, _poly_sub(h, x, l), l)) > 1:
            return False
    return True


def find_irreducible(l: int, k: int, seed: int = 0) -> tuple[int, ...]:
    """A monic irreducible polynomial of degree ``k`` over F_l.

    Monic candidates are indexed by the integer encoding of their lower
    coefficients; the scan starts at ``seed mod l^k`` and wraps around, so the
    result is a deterministic function of the seed (seed 0 gives the smallest
    irreducible in canonical order).  For ``k == 1`` the trivial modulus ``()``
    is returned.
    """
    if not is_prime(l):
        raise FieldError(f"characteristic {l} is not prime")
    if k < 1:
        raise FieldError(f"degree must be positive, got {k}")
    if k == 1:
        return ()
    count = l ** k
    start = seed % count
    for step in range(count):
        idx = (start + step) % count
        low = [(idx // l ** i) % l for i in range(k)]
        if low[0] == 0:
            continue  # divisible by x
        cand = low + [1]
        if is_irreducible(cand, l):
            return tuple(cand)
    raise AssertionError("unreachable: irreducible polynomials exist in every degree")


# ---------------------------------------------------------------------------
# Fields
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FieldSpec:
    """The field F_q with q = char ** deg.

    ``modulus`` is the monic irreducible defining polynomial, constant term
    first, of length ``deg + 1``; it is the empty tuple for prime fields.
    """

    char: int
    deg: int = 1
    modulus: tuple[int, ...] = ()

    def __post_init__(self):
        if not isinstance(self.char, int) or not is_prime(self.char):
            raise FieldError(f"characteristic {self.char!r} is not prime")
        if not isinstance(self.deg, int) or self.deg < 1:
            raise FieldError(f"degree must be a positive integer, got {self.deg!r}")
        object.__setattr__(self, "modulus", tuple(self.modulus))
        q = self.char ** self.deg
        if q > MAX_ORDER:
            raise FieldTooLarge(f"q = {q} exceeds the supported maximum {MAX_ORDER}")
        if self.deg == 1:
            if self.modulus:
                raise FieldError("prime fields take no modulus")
            return
        if q > MAX_EXTENSION_ORDER:
            raise FieldTooLarge(f"extension field order {q} exceeds {MAX_EXTENSION_ORDER}")
        mod = self.modulus
        if len(mod) != self.deg + 1 or mod[-1] != 1:
            raise FieldError(f"modulus must be monic of degree {self.deg}: {list(mod)}")
        if any(not isinstance(c, int) or not 0 <= c < self.char for c in mod):
            raise FieldError(f"modulus coefficients must lie in [0, {self.char}): {list(mod)}")
        if not is_irreducible(mod, self.char):
            raise FieldError(f"modulus {list(mod)} is reducible over F_{self.char}")

    @classmethod
    def extension(cls, char: int, deg: int, seed: int = 0) -> "FieldSpec":
        return cls(char, deg, find_irreducible(char, deg, seed))

    # -- basic data ---------------------------------------------------------

    @property
    def q(self) -> int:
        return self.char ** self.deg

    @property
    def is_prime_field(self) -> bool:
        return self.deg == 1

    zero = 0
    one = 1

    def __str__(self) -> str:
        if self.deg == 1:
            return f"F_{self.char}"
        return f"F_{self.q}[{poly_str(self.modulus)}]"

    # -- element conversion ---------------------------------------------------

    def element(self, value) -> int:
        """Validate and return a canonical element.

        Accepts an int encoding in ``[0, q)`` or a coefficient sequence of
        length ``deg`` with entries in ``[0, char)``.
        """
        if isinstance(value, bool):
            raise ElementNotCanonical(f"{value!r} is not a field element")
        if isinstance(value, int):
            if 0 <= value < self.q:
                return value
            raise ElementNotCanonical(f"{value} is not in [0, {self.q})")
        try:
            coeffs = list(value)
        except TypeError:
            raise ElementNotCanonical(f"{value!r} is not a field element") from None
        if len(coeffs) != self.deg or any(
            isinstance(c, bool) or not isinstance(c, int) or not 0 <= c < self.char for c in coeffs
        ):
            raise ElementNotCanonical(
                f"{coeffs!r} is not a length-{self.deg} coefficient list over F_{self.char}"
            )
        return self.from_coeffs(coeffs)

    def from_coeffs(self, coeffs: Sequence[int]) -> int:
        """Encode a coefficient list of length <= deg (reduced mod char)."""
        x = 0
        for c in reversed(coeffs):
            x = x * self.char + c % self.char
        return x

    def coeffs(self, x: int) -> list[int]:
        out = []
        for _ in range(self.deg):
            x, c = divmod(x, self.char)
            out.append(c)
        return out

    def from_int(self, n: int) -> int:
        """Image of the integer ``n`` under Z -> F_q."""
        return n % self.char

    def elements(self) -> range:
        """All elements in canonical order."""
        return range(self.q)

    def nonzero(self) -> range:
        return range(1, self.q)

    def format(self, x: int) -> str:
        if self.deg == 1:
            return str(x)
        return poly_str(self.coeffs(x))

    # -- serialization --------------------------------------------------------

    def to_json(self) -> dict:
        out = {"char": self.char, "deg": self.deg}
        if self.deg > 1:
            out["modulus"] = list(self.modulus)
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "FieldSpec":
        if not isinstance(obj, dict) or "char" not in obj:
            raise FieldError(f"field object needs a 'char' key: {obj!r}")
        deg = obj.get("deg", 1)
        modulus = obj.get("modulus")
        if deg > 1 and modulus is None:
            raise FieldError("extension field object needs a 'modulus'")
        return cls(obj["char"], deg, tuple(modulus or ()))

    def element_to_json(self, x: int):
        return x if self.deg == 1 else self.coeffs(x)

    def element_from_json(self, obj) -> int:
        if self.deg == 1 and isinstance(obj, list):
            raise ElementNotCanonical(f"prime-field elements serialize as integers, got {obj!r}")
        if self.deg > 1 and not isinstance(obj, list):
            raise ElementNotCanonical(f"extension-field elements serialize as lists, got {obj!r}")
        return self.element(obj)

    # -- arithmetic -----------------------------------------------------------
    # These methods trust their inputs; ``field_arith`` validates them.

    def add(self, x: int, y: int) -> int:
        if self.deg == 1:
            return (x + y) % self.char
        if x == 0:
            return y
        if y == 0:
            return x
        exp, log, zech = self._tables
        n = self.q - 1
        lx = log[x]
        z = zech[(log[y] - lx) % n]
        return 0 if z < 0 else exp[(lx + z) % n]

    def neg(self, x: int) -> int:
        if self.deg == 1:
            return -x % self.char
        if x == 0 or self.char == 2:
            return x
        exp, log, _ = self._tables
        n = self.q - 1
        return exp[(log[x] + n // 2) % n]

    def sub(self, x: int, y: int) -> int:
        if self.deg == 1:
            return (x - y) % self.char
        return self.add(x, self.neg(y))

    def mul(self, x: int, y: int) -> int:
        if self.deg == 1:
            return x * y % self.char
        if x == 0 or y == 0:
            return 0
        exp, log, _ = self._tables
        return exp[(log[x] + log[y]) % (self.q - 1)]

    def inv(self, x: int) -> int:
        if x == 0:
            raise DivisionByZero(f"0 has no inverse in {self}")
        if self.deg == 1:
            return pow(x, -1, self.char)
        exp, log, _ = self._tables
        return exp[-log[x] % (self.q - 1)]

    def div(self, x: int, y: int) -> int:
        return self.mul(x, self.inv(y))

    def pow(self, x: int, e: int) -> int:
        if e < 0:
            x, e = self.inv(x), -e
        if x == 0:
            return 1 if e == 0 else 0
        if self.deg == 1:
            return pow(x, e, self.char)
        exp, log, _ = self._tables
        return exp[log[x] * e % (self.q - 1)]

    def scale(self, c: int, xs: Sequence[int]) -> list[int]:
        return [self.mul(c, x) for x in xs]

    # -- polynomial-basis arithmetic (used before the tables exist) ----------

    def _poly_mulmod(self, x: int, y: int) -> int:
        prod = _poly_mul(self.coeffs(x), self.coeffs(y), self.char)
        return self.from_coeffs(_poly_mod(prod, list(self.modulus), self.char))

    def _poly_pow(self, x: int, e: int) -> int:
        res = _poly_powmod(_strip(self.coeffs(x)), e, list(self.modulus), self.char)
        return self.from_coeffs(res)

    def _slow_pow(self, x: int, e: int) -> int:
        if self.deg == 1:
            return pow(x, e, self.char)
        return self._poly_pow(x, e)

    # -- group structure ------------------------------------------------------

    @cached_property
    def group_order_factors(self) -> tuple[int, ...]:
        """Distinct primes dividing q - 1, ascending."""
        return tuple(sorted(factorize(self.q - 1)))

    @cached_property
    def generator(self) -> int:
        """Smallest element (canonical order) of multiplicative order q - 1."""
        n = self.q - 1
        for g in range(1, self.q):
            if all(self._slow_pow(g, n // r) != 1 for r in self.group_order_factors):
                return g
        raise AssertionError("unreachable: F_q^* is cyclic")

    @cached_property
    def _tables(self) -> tuple[list[int], list[int], list[int]]:
        # exp[i] = g^i, log[exp[i]] = i, zech[i] = log(1 + g^i) or -1 when 1 + g^i = 0.
        n = self.q - 1
        g = self.generator
        exp = [0] * n
        log = [0] * self.q
        x = 1
        for i in range(n):
            exp[i] = x
            log[x] = i
            x = self._poly_mulmod(x, g)
        l = self.char
        zech = [0] * n
        for i in range(n):
            y = exp[i]
            # adding 1 only touches the constant coefficient (least significant digit)
            y = y - (l - 1) if y % l == l - 1 else y + 1
            zech[i] = -1 if y == 0 else log[y]
        return exp, log, zech


def poly_str(coeffs: Sequence[int], var: str = "x") -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        mono = "" if i == 0 else var if i == 1 else f"{var}^{i}"
        if not mono:
            terms.append(str(c))
        else:
            terms.append(mono if c == 1 else f"{c}*{mono}")
    return "+".join(terms) or "0"


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------

_OPS = ("add", "sub", "mul", "div", "neg", "pow")


def field_arith(spec: FieldSpec, op: str, x, y=None) -> int:
    """Validated arithmetic entry point.

    ``x`` and ``y`` may be int encodings or coefficient lists.  For ``pow``
    the second argument is an integer exponent (negative allowed for nonzero
    bases); ``neg`` ignores it.
    """
    if op not in _OPS:
        raise ValueError(f"unknown operation {op!r}; expected one of {_OPS}")
    x = spec.element(x)
    if op == "neg":
        return spec.neg(x)
    if op == "pow":
        if isinstance(y, bool) or not isinstance(y, int):
            raise TypeError(f"exponent must be an int, got {y!r}")
        return spec.pow(x, y)
    y = spec.element(y)
    if op == "div" and y == 0:
        raise DivisionByZero(f"division by zero in {spec}")
    return getattr(spec, op)(x, y)


def multiplicative_order(spec: FieldSpec, x) -> int:
    x = spec.element(x)
    if x == 0:
        raise ZeroElement("0 has no multiplicative order")
    n = spec.q - 1
    for r in spec.group_order_factors:
        while n % r == 0 and spec.pow(x, n // r) == 1:
            n //= r
    return n


def find_generator(spec: FieldSpec) -> int:
    return spec.generator


def root_of_unity(spec: FieldSpec, n: int) -> int:
    """g^((q-1)/n) for the canonical generator g: an element of order exactly n."""
    if n < 1 or (spec.q - 1) % n:
        raise OrderNotDivisible(f"{n} does not divide q - 1 = {spec.q - 1}")
    return spec.pow(spec.generator, (spec.q - 1) // n)


def principal_root(spec: FieldSpec, p: int) -> int:
    """The principal p-th root of unity g^((q-1)/p)."""
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    return root_of_unity(spec, p)


def field_for(p: int, char: int | None = None, deg: int = 1, modulus=None, seed: int = 0) -> FieldSpec:
    """Build a field, or search the smallest prime q = 1 mod p when ``char`` is None."""
    if char is None:
        q = p + 1
        while not is_prime(q):
            q += p
        return FieldSpec(q)
    if deg == 1:
        return FieldSpec(char)
    if modulus is None:
        return FieldSpec.extension(char, deg, seed)
    return FieldSpec(char, deg, tuple(modulus))


__all__ = [
    "FieldSpec",
    "MAX_ORDER",
    "MAX_EXTENSION_ORDER",
    "field_arith",
    "field_for",
    "factorize",
    "find_generator",
    "find_irreducible",
    "is_irreducible",
    "is_prime",
    "multiplicative_order",
    "poly_str",
    "principal_root",
    "root_of_unity",
]
