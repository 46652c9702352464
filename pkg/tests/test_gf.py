import itertools
import pickle

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from combnet.gf import (
    FieldError,
    add,
    default_primitive_poly,
    extension,
    field_ctx,
    gf,
    inv,
    is_primitive_poly,
    mul,
    prime_power,
    prime_powers,
    primitive_power,
)


def clmul_mod(a, b, poly_bits, m):
    """Carry-less product reduced mod a binary polynomial (independent GF(2^m) oracle)."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a >> m & 1:
            a ^= poly_bits
    return r


def polymul_mod_p(a, b, p, poly):
    """Schoolbook product of coefficient lists mod (p, poly); poly monic, low degree first."""
    m = len(poly) - 1
    prod = [0] * (2 * m - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % p
    for d in range(len(prod) - 1, m - 1, -1):
        c = prod[d]
        if c:
            for k in range(m + 1):
                prod[d - m + k] = (prod[d - m + k] - c * poly[k]) % p
    return prod[:m]


def digits(v, p, m):
    return [(v // p**i) % p for i in range(m)]


def test_beta_relation_gf16():
    F = field_ctx(2, 4, (1, 1, 0, 0, 1))
    beta = F.primitive_power(1)
    assert beta * beta**3 == F.from_digits((1, 1, 0, 0))
    assert primitive_power(F, 4) == beta + 1
    assert primitive_power(F, 15) == F.one


def test_gf4_examples():
    F = field_ctx(2, 2, (1, 1, 1))
    a = F.primitive_power(1)
    assert a * a == a + 1
    assert a**3 == 1
    assert primitive_power(F, 2) == a + 1
    assert a * a.inv() == F.one
    assert F(1) + F(1) == F.zero


def test_gf2_elements():
    F = field_ctx(2, 1)
    assert [e.value for e in F.elements()] == [0, 1]
    assert add(F(1), F(1)) == 0


@pytest.mark.parametrize("p,m,poly_bits", [(2, 4, 0b11001), (2, 5, None), (2, 8, None)])
def test_binary_multiplication_matches_clmul(p, m, poly_bits):
    F = field_ctx(p, m)
    bits = sum(c << i for i, c in enumerate(F.poly))
    if poly_bits is not None:
        assert bits == poly_bits  # x^4 + x^3 + 1 is the smallest primitive quartic
    pairs = itertools.product(range(F.q), repeat=2) if F.q <= 32 else [(a, (a * 37 + 11) % F.q) for a in range(F.q)]
    for a, b in pairs:
        assert F.mul(a, b) == clmul_mod(a, b, bits, m)


@pytest.mark.parametrize("p,m", [(3, 2), (3, 3), (5, 2), (7, 2)])
def test_odd_extension_matches_polynomial_arithmetic(p, m):
    F = field_ctx(p, m)
    for a in range(F.q):
        for b in range(0, F.q, max(1, F.q // 17)):
            want = polymul_mod_p(digits(a, p, m), digits(b, p, m), p, F.poly)
            assert F.digits(F.mul(a, b)) == tuple(want)
            s = [(x + y) % p for x, y in zip(digits(a, p, m), digits(b, p, m))]
            assert F.digits(F.add(a, b)) == tuple(s)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 49, 64, 81, 128, 256])
def test_primitive_element_has_full_order(q):
    F = gf(q)
    seen = {F.exp(i) for i in range(q - 1)}
    assert len(seen) == q - 1 and 0 not in seen
    assert all(F.log(F.exp(i)) == i for i in range(q - 1))


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 16])
def test_field_axioms_exhaustive(q):
    F = gf(q)
    E = range(q)
    for a, b, c in itertools.product(E, repeat=3):
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
        assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
    for a in E:
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1


@pytest.mark.parametrize("q", [4, 8, 9, 16, 25, 27])
def test_frobenius_exhaustive(q):
    F = gf(q)
    p = F.p
    for a, b in itertools.product(range(q), repeat=2):
        assert F.pow(F.add(a, b), p) == F.add(F.pow(a, p), F.pow(b, p))


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([243, 343, 512, 625, 1024, 2187, 4096]), st.data())
def test_field_axioms_random_large(q, data):
    F = gf(q)
    a, b, c = (data.draw(st.integers(0, q - 1)) for _ in range(3))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.sub(F.add(a, b), b) == a
    if b:
        assert F.mul(F.div(a, b), b) == a


def test_default_polynomials_are_smallest_primitive():
    for p, m in [(2, 2), (2, 3), (2, 4), (3, 2), (5, 2), (2, 6)]:
        base = field_ctx(p, 1)
        poly = default_primitive_poly(base, m)
        assert is_primitive_poly(base, poly)
        smaller = [c + (1,) for c in itertools.product(range(p), repeat=m) if c + (1,) < poly]
        assert not any(is_primitive_poly(base, c) for c in smaller)
    assert field_ctx(2, 4).poly == (1, 0, 0, 1, 1)
    assert field_ctx(3, 2).poly == (2, 1, 1)


def test_tower_extension_over_gf4():
    F4 = gf(4)
    F16 = extension(F4, default_primitive_poly(F4, 2))
    assert F16.q == 16 and F16.base is F4
    assert len({F16.exp(i) for i in range(15)}) == 15
    for a, b in itertools.product(range(16), repeat=2):
        assert F16.mul(a, b) == F16.mul(b, a)


def test_errors():
    with pytest.raises(FieldError):
        field_ctx(6, 1)
    with pytest.raises(FieldError):
        field_ctx(2, 2, (1, 0, 1))  # x^2 + 1 = (x+1)^2
    with pytest.raises(FieldError):
        field_ctx(2, 30)
    with pytest.raises(FieldError):
        gf(12)
    with pytest.raises(FieldError):
        mul(gf(4)(1), gf(8)(1))
    with pytest.raises(ZeroDivisionError):
        inv(gf(9)(0))
    with pytest.raises(FieldError):
        gf(4)(4)


def test_contexts_are_cached_and_picklable():
    assert field_ctx(2, 1) is field_ctx(2, 1, (1, 1))
    assert gf(16) is field_ctx(2, 4)
    F = field_ctx(2, 4, (1, 1, 0, 0, 1))
    assert pickle.loads(pickle.dumps(F)) is F


def test_prime_power_helpers():
    assert prime_power(81) == (3, 4)
    assert prime_power(1) is None and prime_power(10) is None
    it = prime_powers()
    assert [next(it) for _ in range(10)] == [2, 3, 4, 5, 7, 8, 9, 11, 13, 16]
