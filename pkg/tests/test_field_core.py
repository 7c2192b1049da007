import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from ffuncertainty.errors import (
    DivisionByZero,
    ElementNotCanonical,
    FieldError,
    FieldTooLarge,
    OrderNotDivisible,
    ZeroElement,
)
from ffuncertainty.field_core import (
    FieldSpec,
    factorize,
    field_arith,
    field_for,
    find_generator,
    find_irreducible,
    is_irreducible,
    is_prime,
    multiplicative_order,
    principal_root,
    root_of_unity,
)

F4 = FieldSpec(2, 2, (1, 1, 1))
F7 = FieldSpec(7)
F11 = FieldSpec(11)

# every field with q <= 64, extension fields with their default modulus
SMALL_FIELDS = [FieldSpec(q) for q in range(2, 65) if is_prime(q)] + [
    FieldSpec.extension(l, k) for l, k in [(2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (3, 2), (3, 3), (5, 2), (7, 2)]
]


# ---- independent oracles ----------------------------------------------------

def sieve(n):
    flags = [True] * (n + 1)
    flags[0] = flags[1] = False
    for i in range(2, int(n ** 0.5) + 1):
        if flags[i]:
            flags[i * i::i] = [False] * len(flags[i * i::i])
    return flags


def schoolbook_mulmod(a, b, modulus, l):
    """Multiply coefficient lists and reduce by the monic modulus, by hand."""
    k = len(modulus) - 1
    prod = [0] * (2 * k)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] += x * y
    for d in range(len(prod) - 1, k - 1, -1):
        c = prod[d] % l
        if c:
            for j in range(k + 1):
                prod[d - k + j] -= c * modulus[j]
    return [c % l for c in prod[:k]]


def trial_division_irreducible(poly, l):
    """No monic factor of degree 1..k//2, checked by long division."""
    k = len(poly) - 1
    for d in range(1, k // 2 + 1):
        for low in itertools.product(range(l), repeat=d):
            g = list(low) + [1]
            rem = list(poly)
            for i in range(len(rem) - 1, d - 1, -1):
                c = rem[i] % l
                if c:
                    for j in range(d + 1):
                        rem[i - d + j] = (rem[i - d + j] - c * g[j]) % l
            if not any(c % l for c in rem[:d]):
                return False
    return True


def order_by_powers(field, x):
    y, n = x, 1
    while y != 1:
        y = field.mul(y, x)
        n += 1
    return n


# ---- primality and factoring --------------------------------------------------

def test_is_prime_matches_sieve():
    flags = sieve(20000)
    assert [n for n in range(20001) if is_prime(n)] == [n for n in range(20001) if flags[n]]


@pytest.mark.parametrize("n", [2 ** 31 - 1, 2 ** 61 - 1, 1000003, 4007])
def test_is_prime_large_primes(n):
    assert is_prime(n)


@pytest.mark.parametrize("n", [3215031751, 2152302898747, 3474749660383, 341550071728321, 2 ** 32 + 1])
def test_is_prime_rejects_strong_pseudoprimes(n):
    assert not is_prime(n)


@pytest.mark.parametrize("n", [1, 2, 12, 97, 360, 1000002, 2 ** 20 - 1])
def test_factorize_reconstructs(n):
    fac = factorize(n)
    prod = 1
    for r, e in fac.items():
        assert is_prime(r)
        prod *= r ** e
    assert prod == n


# ---- spec examples --------------------------------------------------------------

def test_arith_examples():
    assert field_arith(F7, "mul", 3, 5) == 1
    assert field_arith(F7, "div", 1, 1) == 1
    # x * x = x + 1 under x^2 + x + 1; x encodes as 2, x + 1 as 3
    assert field_arith(F4, "mul", [0, 1], [0, 1]) == F4.element([1, 1]) == 3


def test_arith_all_ops_prime_field():
    assert field_arith(F7, "add", 5, 4) == 2
    assert field_arith(F7, "sub", 2, 5) == 4
    assert field_arith(F7, "neg", 3) == 4
    assert field_arith(F7, "pow", 3, 6) == 1
    assert field_arith(F7, "pow", 3, -1) == 5
    assert field_arith(F7, "pow", 0, 0) == 1
    assert field_arith(F7, "div", 6, 3) == 2


def test_arith_errors():
    with pytest.raises(DivisionByZero):
        field_arith(F7, "div", 1, 0)
    with pytest.raises(DivisionByZero):
        field_arith(F7, "pow", 0, -1)
    with pytest.raises(ElementNotCanonical):
        field_arith(F7, "add", 7, 1)
    with pytest.raises(ElementNotCanonical):
        field_arith(F7, "add", -1, 1)
    with pytest.raises(ElementNotCanonical):
        field_arith(F4, "mul", [0, 2], [1, 0])
    with pytest.raises(ElementNotCanonical):
        field_arith(F4, "mul", [0, 1, 0], [1, 0])
    with pytest.raises(ElementNotCanonical):
        field_arith(F7, "add", True, 1)
    with pytest.raises(ValueError):
        field_arith(F7, "frobnicate", 1, 1)


def test_find_irreducible_examples():
    assert all(find_irreducible(2, 2, seed) == (1, 1, 1) for seed in range(10))
    assert find_irreducible(2, 1) == ()
    poly = find_irreducible(3, 2, seed=0)
    assert len(poly) == 3 and poly[-1] == 1
    assert trial_division_irreducible(poly, 3)


@pytest.mark.parametrize("x, expected", [(1, 1), (2, 3), (3, 6), (6, 2)])
def test_order_f7(x, expected):
    assert multiplicative_order(F7, x) == expected == order_by_powers(F7, x)


def test_order_f11_example():
    assert multiplicative_order(F11, 4) == 5 == order_by_powers(F11, 4)


def test_order_of_zero():
    with pytest.raises(ZeroElement):
        multiplicative_order(F7, 0)


def test_generator_examples():
    assert find_generator(F7) == 3
    assert find_generator(F4) == F4.element([0, 1])
    assert find_generator(F11) == 2
    for field in (F7, F4, F11):
        assert order_by_powers(field, find_generator(field)) == field.q - 1


def test_generator_is_smallest():
    for field in SMALL_FIELDS:
        g = find_generator(field)
        assert order_by_powers(field, g) == field.q - 1
        assert all(order_by_powers(field, x) != field.q - 1 for x in range(1, g))


def test_principal_root_examples():
    assert principal_root(F7, 3) == 2
    assert F7.pow(2, 3) == 1
    assert principal_root(F11, 5) == 4
    assert F11.pow(4, 5) == 1
    with pytest.raises(OrderNotDivisible):
        principal_root(F7, 5)
    with pytest.raises(FieldError):
        principal_root(F7, 6)


# ---- invariants -------------------------------------------------------------------

@pytest.mark.parametrize("field", SMALL_FIELDS, ids=str)
def test_fermat_and_inverses_exhaustive(field):
    for x in field.nonzero():
        assert field.pow(x, field.q - 1) == 1
        assert field.mul(x, field.inv(x)) == 1
        assert field_arith(field, "pow", x, -3) == field.inv(field.pow(x, 3))


@pytest.mark.parametrize("field", [f for f in SMALL_FIELDS if not f.is_prime_field], ids=str)
def test_extension_tables_match_schoolbook(field):
    l = field.char
    for x in field.elements():
        cx = field.coeffs(x)
        for y in field.elements():
            cy = field.coeffs(y)
            assert field.coeffs(field.mul(x, y)) == schoolbook_mulmod(cx, cy, field.modulus, l)
            assert field.coeffs(field.add(x, y)) == [(a + b) % l for a, b in zip(cx, cy)]
            assert field.coeffs(field.sub(x, y)) == [(a - b) % l for a, b in zip(cx, cy)]


@pytest.mark.parametrize("field", SMALL_FIELDS, ids=str)
@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13, 31])
def test_principal_root_has_exact_order(field, p):
    if (field.q - 1) % p:
        with pytest.raises(OrderNotDivisible):
            principal_root(field, p)
        return
    w = principal_root(field, p)
    assert w == field.pow(find_generator(field), (field.q - 1) // p)
    assert field.pow(w, p) == 1
    assert all(field.pow(w, j) != 1 for j in range(1, p))


@pytest.mark.parametrize("l, k", [(2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (2, 7), (2, 8), (3, 2), (3, 3), (3, 4), (5, 2), (5, 3), (7, 2)])
def test_is_irreducible_matches_trial_division(l, k):
    for low in itertools.product(range(l), repeat=k):
        poly = list(low) + [1]
        assert is_irreducible(poly, l) == trial_division_irreducible(poly, l), poly


@pytest.mark.parametrize("l, k", [(2, 9), (2, 10), (2, 12), (3, 5), (3, 7), (5, 5), (7, 4), (11, 3), (13, 3), (17, 2), (61, 2)])
def test_find_irreducible_passes_oracle(l, k):
    assert l ** k <= 4096
    for seed in (0, 1, 17, 12345):
        poly = find_irreducible(l, k, seed)
        assert len(poly) == k + 1 and poly[-1] == 1
        assert trial_division_irreducible(poly, l)
    assert find_irreducible(l, k, 99) == find_irreducible(l, k, 99)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(SMALL_FIELDS), st.data())
def test_field_axioms(field, data):
    el = st.integers(0, field.q - 1)
    x, y, z = data.draw(el), data.draw(el), data.draw(el)
    add, mul = field.add, field.mul
    assert add(x, y) == add(y, x)
    assert mul(x, y) == mul(y, x)
    assert mul(x, add(y, z)) == add(mul(x, y), mul(x, z))
    assert add(add(x, y), z) == add(x, add(y, z))
    assert mul(mul(x, y), z) == mul(x, mul(y, z))
    assert add(x, field.neg(x)) == 0
    assert field.sub(x, y) == add(x, field.neg(y))
    if y:
        assert mul(field.div(x, y), y) == x


def test_random_inverses_medium_fields():
    rng = random.Random(5)
    for field in (FieldSpec(1000003), FieldSpec(4007), FieldSpec.extension(3, 7), FieldSpec.extension(2, 11)):
        for _ in range(200):
            x = rng.randrange(1, field.q)
            assert field.mul(x, field.inv(x)) == 1


# ---- construction and serialization ---------------------------------------------------

def test_fieldspec_validation():
    with pytest.raises(FieldError):
        FieldSpec(9)
    with pytest.raises(FieldError):
        FieldSpec(2, 2, (1, 0, 1))  # x^2 + 1 = (x + 1)^2
    with pytest.raises(FieldError):
        FieldSpec(2, 2, (1, 1, 0))
    with pytest.raises(FieldError):
        FieldSpec(7, 1, (0, 1))
    with pytest.raises(FieldError):
        FieldSpec(2, 0)
    with pytest.raises(FieldTooLarge):
        FieldSpec(2 ** 61 - 1)
    with pytest.raises(FieldTooLarge):
        FieldSpec.extension(2, 24)


def test_json_roundtrip():
    for field in SMALL_FIELDS:
        doc = field.to_json()
        assert ("modulus" in doc) == (field.deg > 1)
        assert FieldSpec.from_json(doc) == field
        for x in range(min(field.q, 20)):
            enc = field.element_to_json(x)
            assert isinstance(enc, int if field.deg == 1 else list)
            assert field.element_from_json(enc) == x
    assert F4.to_json() == {"char": 2, "deg": 2, "modulus": [1, 1, 1]}
    assert F4.element_to_json(3) == [1, 1]
    with pytest.raises(ElementNotCanonical):
        F4.element_from_json(3)
    with pytest.raises(ElementNotCanonical):
        F7.element_from_json([3])


def test_field_for_search():
    assert field_for(3) == F7
    assert field_for(2003) == FieldSpec(4007)
    assert field_for(5, 2, 4) == FieldSpec.extension(2, 4)


def test_root_of_unity_orders():
    field = FieldSpec(53)
    for n in (1, 2, 4, 13, 26, 52):
        assert multiplicative_order(field, root_of_unity(field, n)) == n
