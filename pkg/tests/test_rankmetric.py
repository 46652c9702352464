import itertools
import random

import pytest

from combnet.gf import gf
from combnet.linalg import Mat, rank
from combnet.rankmetric import (
    CodeError,
    companion_code,
    companion_matrix,
    gabidulin_code,
    gabidulin_codeword,
    min_rank_distance,
    rank_profile,
)


def test_companion_matrix_examples():
    F = gf(2)
    assert companion_matrix(F, (1, 1, 1)) == Mat(F, [[0, 1], [1, 1]])
    C3 = companion_matrix(F, (1, 1, 0, 1))
    assert C3 == Mat(F, [[0, 1, 0], [0, 0, 1], [1, 1, 0]])
    assert C3**7 == Mat.identity(F, 3)
    with pytest.raises(CodeError):
        companion_matrix(F, (1, 0, 1))


def test_companion_last_row_is_negated_over_gf3():
    F = gf(3)
    C = companion_matrix(F, (2, 1, 1))  # x^2 + x + 2
    assert C.row(1) == (1, 2)


@pytest.mark.parametrize("q,t", [(2, 1), (2, 2), (2, 3), (3, 2), (2, 4), (4, 2)])
def test_companion_code_is_mrd(q, t):
    code = companion_code(q, t)
    assert len(code) == q**t
    assert len(set(code.members)) == q**t
    assert code.C ** (q**t - 1) == Mat.identity(code.base, t)
    for a, b in itertools.combinations(code.members, 2):
        assert rank(a - b) == t


def test_companion_code_small_members():
    F = gf(2)
    assert companion_code(2, 1).members == (Mat(F, [[0]]), Mat(F, [[1]]))
    code = companion_code(3, 2)
    for a, b in itertools.product(code.members, repeat=2):
        assert a @ b == b @ a
    n = 3**2 - 1
    for i, j in itertools.product(range(n), repeat=2):
        assert code.power(i) @ code.power(j) == code.power((i + j) % n)


@pytest.mark.parametrize("q,t", [(2, 2), (2, 3), (3, 2), (2, 6), (4, 2)])
def test_isomorphism_field_to_companion_powers(q, t):
    code = companion_code(q, t)
    F = code.field
    assert F.q == q**t
    for a, b in itertools.product(range(F.q), repeat=2):
        A, B = code.element_matrix(a), code.element_matrix(b)
        assert code.element_matrix(F.add(a, b)) == A + B
        assert code.element_matrix(F.mul(a, b)) == A @ B
    for i in range(len(code)):
        assert code.element_matrix(code.member_element(i)) == code[i]


def test_gabidulin_sizes_and_examples():
    c = gabidulin_code(2, 2, 1)
    assert c.size == 16 and c.k == 2
    words = list(c.codewords())
    assert len(set(words)) == 16
    assert min_rank_distance(words) == 1
    assert sum(rank(w) == 2 for w in words) == 6  # GF(2)^{2x2} has 6 invertible matrices
    assert gabidulin_codeword(c, 0) == Mat.zeros(c.base, 2, 2)
    assert gabidulin_codeword(c, 1) == Mat.identity(c.base, 2)  # f(x) = x
    assert gabidulin_code(3, 3, 2).size == 3 ** (3 * 2)


def test_gabidulin_full_distance_is_companion_code():
    g = list(gabidulin_code(2, 2, 2).codewords())
    comp = companion_code(2, 2)
    assert g == list(comp.members)
    assert rank_profile(g) == rank_profile(comp.members)
    # beyond t = 2 the index encodes a field element rather than a power, so only the sets agree
    g3 = set(gabidulin_code(2, 3, 3).codewords())
    assert g3 == set(companion_code(2, 3).members)


@pytest.mark.parametrize("q,n,delta", [(2, 2, 1), (2, 3, 2), (3, 2, 1), (2, 3, 1), (3, 2, 2)])
def test_gabidulin_is_linear_and_mrd(q, n, delta):
    code = gabidulin_code(q, n, delta)
    words = list(code.codewords())
    assert len(words) == q ** (n * (n - delta + 1))
    lookup = set(words)
    assert len(lookup) == len(words)
    rng = random.Random(q * 100 + n * 10 + delta)
    for _ in range(200):
        a, b = rng.choice(words), rng.choice(words)
        assert a + b in lookup
    assert min_rank_distance(words) == delta
    assert min_rank_distance(words, linear=True) == delta


def test_errors():
    with pytest.raises(CodeError):
        gabidulin_code(2, 2, 3)
    with pytest.raises(CodeError):
        gabidulin_code(2, 2, 0)
    with pytest.raises(CodeError):
        gabidulin_code(2, 2, 2).codeword(4)
    with pytest.raises(CodeError):
        companion_code(2, 20)
    with pytest.raises(CodeError):
        min_rank_distance([Mat.identity(gf(2), 2)])
    zero, one = Mat.zeros(gf(2), 3, 3), Mat.identity(gf(2), 3)
    assert min_rank_distance([zero, one]) == 3
