import random

import pytest
from hypothesis import given, settings, strategies as st

from ffuncertainty.errors import BadRootOverride, ElementNotCanonical, IndexOutOfRange, LengthMismatch, OrderNotDivisible
from ffuncertainty.field_core import FieldSpec
from ffuncertainty.fourier import (
    character,
    delta,
    forward,
    forward_rader,
    inverse,
    make_context,
    reflect,
    shift,
    support,
    vector_from_json,
    vector_to_json,
)

F7 = FieldSpec(7)
F4 = FieldSpec(2, 2, (1, 1, 1))
CTX3 = make_context(3, F7)

CONTEXTS = [
    make_context(p, f)
    for p, f in [
        (2, FieldSpec(3)),
        (3, F7),
        (3, F4),
        (5, FieldSpec(11)),
        (5, FieldSpec.extension(2, 4)),
        (7, FieldSpec(29)),
        (7, FieldSpec.extension(2, 3)),
        (11, FieldSpec(23)),
        (13, FieldSpec(53)),
        (13, FieldSpec.extension(3, 3)),
    ]
]
ids = [f"p{c.p}-{c.field}" for c in CONTEXTS]


def matrix_oracle(ctx, f):
    """Build p^{-1}[omega^(tz)] entry by entry with repeated multiplication."""
    field = ctx.field
    out = []
    for t in range(ctx.p):
        acc = 0
        for z in range(ctx.p):
            entry = 1
            for _ in range(t * z):
                entry = field.mul(entry, ctx.omega)
            acc = field.add(acc, field.mul(entry, f[z]))
        out.append(field.mul(acc, ctx.p_inv))
    return out


def rand_signal(ctx, rng):
    return [rng.randrange(ctx.field.q) for _ in range(ctx.p)]


def test_context_examples():
    assert (CTX3.omega, CTX3.p_inv) == (2, 5)
    c = make_context(3, F4)
    assert c.omega == F4.element([0, 1])
    assert c.p_inv == 1
    with pytest.raises(OrderNotDivisible):
        make_context(5, F7)


def test_context_invariants():
    for ctx in CONTEXTS:
        f = ctx.field
        w = ctx.omega_powers
        assert f.pow(ctx.omega, ctx.p) == 1 and ctx.omega != 1
        assert f.mul(ctx.p_inv, f.from_int(ctx.p)) == 1
        for i in range(ctx.p):
            for j in range(ctx.p):
                assert f.mul(w[i], w[j]) == w[(i + j) % ctx.p]


def test_root_override():
    c = make_context(3, F7, omega=4)
    assert c.omega == 4
    with pytest.raises(BadRootOverride):
        make_context(3, F7, omega=1)
    with pytest.raises(BadRootOverride):
        make_context(3, F7, omega=3)  # order 6
    with pytest.raises(BadRootOverride):
        make_context(3, F7, omega=9)


def test_forward_examples():
    assert forward(CTX3, [1, 0, 0]) == [5, 5, 5]
    assert forward(CTX3, [1, 1, 1]) == [1, 0, 0]
    assert forward(CTX3, [0, 1, 0]) == [5, 3, 6]


def test_inverse_examples():
    assert inverse(CTX3, [5, 5, 5]) == [1, 0, 0]
    assert inverse(CTX3, [1, 0, 0]) == [1, 1, 1]
    assert inverse(CTX3, [5, 3, 6]) == [0, 1, 0]


def test_rader_example():
    assert forward_rader(CTX3, [1, 0, 0]) == [5, 5, 5]


def test_character_examples():
    assert character(CTX3, 0) == [1, 1, 1]
    assert character(CTX3, 1) == [1, 2, 4]
    assert character(CTX3, 2) == [1, 4, 2]
    with pytest.raises(IndexOutOfRange):
        character(CTX3, 3)


def test_support_examples():
    assert support([1, 0, 0]) == (0,)
    assert support([0, 0, 0]) == ()
    assert support([5, 3, 6]) == (0, 1, 2)


def test_length_and_element_checks():
    with pytest.raises(LengthMismatch):
        forward(CTX3, [1, 0])
    with pytest.raises(LengthMismatch):
        inverse(CTX3, [1, 0, 0, 0])
    with pytest.raises(LengthMismatch):
        forward_rader(CTX3, [1])
    with pytest.raises(ElementNotCanonical):
        forward(CTX3, [7, 0, 0])
    with pytest.raises(ValueError):
        forward(CTX3, [1, 0, 0], strategy="fft")


@pytest.mark.parametrize("ctx", CONTEXTS, ids=ids)
def test_forward_matches_matrix_oracle(ctx):
    rng = random.Random(ctx.p)
    for _ in range(10):
        f = rand_signal(ctx, rng)
        assert forward(ctx, f) == matrix_oracle(ctx, f)


@pytest.mark.parametrize("ctx", CONTEXTS, ids=ids)
def test_roundtrip_and_rader(ctx):
    rng = random.Random(1)
    for _ in range(50):
        f = rand_signal(ctx, rng)
        fh = forward(ctx, f)
        assert inverse(ctx, fh) == f
        assert forward_rader(ctx, f) == fh


def test_roundtrip_exhaustive_small():
    for ctx in CONTEXTS[:3]:
        q = ctx.field.q
        for n in range(q ** ctx.p):
            f = [(n // q ** i) % q for i in range(ctx.p)]
            assert inverse(ctx, forward(ctx, f)) == f


@pytest.mark.parametrize("ctx", CONTEXTS, ids=ids)
def test_character_transforms_to_delta(ctx):
    for t in range(ctx.p):
        assert forward(ctx, character(ctx, t)) == delta(ctx.p, -t)


@pytest.mark.parametrize("ctx", CONTEXTS, ids=ids)
def test_double_transform_is_scaled_reflection(ctx):
    rng = random.Random(2)
    for _ in range(20):
        f = rand_signal(ctx, rng)
        assert forward(ctx, forward(ctx, f)) == ctx.field.scale(ctx.p_inv, reflect(f))


@pytest.mark.parametrize("ctx", CONTEXTS, ids=ids)
def test_shift_covariance(ctx):
    rng = random.Random(3)
    field = ctx.field
    for _ in range(20):
        f = rand_signal(ctx, rng)
        s = rng.randrange(ctx.p)
        fh, gh = forward(ctx, f), forward(ctx, shift(f, s))
        assert gh == [field.mul(ctx.omega_powers[t * s % ctx.p], fh[t]) for t in range(ctx.p)]
        assert support(gh) == support(fh)


@pytest.mark.parametrize("ctx", CONTEXTS, ids=ids)
def test_scale_invariance_of_supports(ctx):
    rng = random.Random(4)
    field = ctx.field
    for _ in range(20):
        f = rand_signal(ctx, rng)
        c = rng.randrange(1, field.q)
        cf = field.scale(c, f)
        assert support(cf) == support(f)
        assert support(forward(ctx, cf)) == support(forward(ctx, f))


@pytest.mark.parametrize("ctx", [c for c in CONTEXTS if c.p <= 13], ids=lambda c: f"p{c.p}-{c.field}")
def test_root_choice_dilates_spectrum(ctx):
    rng = random.Random(6)
    field, p = ctx.field, ctx.p
    signals = [rand_signal(ctx, rng) for _ in range(5)]
    for c in range(1, p):
        other = make_context(p, field, omega=field.pow(ctx.omega, c))
        for f in signals:
            fh, fc = forward(ctx, f), forward(other, f)
            assert fc == [fh[c * t % p] for t in range(p)]
            assert len(support(fc)) == len(support(fh))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(CONTEXTS), st.data())
def test_rader_equals_naive_property(ctx, data):
    f = data.draw(st.lists(st.integers(0, ctx.field.q - 1), min_size=ctx.p, max_size=ctx.p))
    assert forward_rader(ctx, f) == forward(ctx, f)
    assert inverse(ctx, forward(ctx, f)) == f


@pytest.mark.parametrize("p, q", [(7, 43), (11, 331), (13, 157), (5, 41)])
def test_rader_inner_transform_path(p, q):
    ctx = make_context(p, FieldSpec(q))
    assert ctx._rader.inner_root is not None
    rng = random.Random(p)
    for _ in range(50):
        f = rand_signal(ctx, rng)
        assert forward_rader(ctx, f) == forward(ctx, f)


def test_rader_inner_transform_extension_field():
    ctx = make_context(5, FieldSpec.extension(3, 4))  # q = 81, 4 | 80
    assert ctx._rader.inner_root is not None
    rng = random.Random(0)
    for _ in range(50):
        f = rand_signal(ctx, rng)
        assert forward_rader(ctx, f) == forward(ctx, f)


def test_rader_large_examples():
    for p, q, n in [(13, 53, 100), (251, 503, 3)]:
        ctx = make_context(p, FieldSpec(q))
        rng = random.Random(p)
        for _ in range(n):
            f = rand_signal(ctx, rng)
            assert forward_rader(ctx, f) == forward(ctx, f)


def test_json_roundtrip():
    for ctx in CONTEXTS:
        f = rand_signal(ctx, random.Random(9))
        doc = vector_to_json(ctx, f)
        assert doc["kind"] == "signal"
        p, field, values = vector_from_json(doc)
        assert (p, field, values) == (ctx.p, ctx.field, f)
        spec = vector_to_json(ctx, forward(ctx, f), "spectrum")
        assert spec["support"] == list(support(forward(ctx, f)))
        assert spec["support_size"] == len(spec["support"])
        assert spec["omega"] == ctx.field.element_to_json(ctx.omega)


def test_json_errors():
    with pytest.raises(ValueError):
        vector_from_json({"p": 3, "field": {"char": 7}})
    with pytest.raises(LengthMismatch):
        vector_from_json({"p": 3, "field": {"char": 7}, "values": [1, 0]})
    with pytest.raises(ValueError):
        vector_from_json({"p": 4, "field": {"char": 7}, "values": [1, 0, 0, 0]})
    with pytest.raises(ElementNotCanonical):
        vector_from_json({"p": 3, "field": {"char": 7}, "values": [1, 0, 9]})
