import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from combnet.gf import gf
from combnet.linalg import LinAlgError, Mat, _rref_rows, block, hstack, inverse, rank, rref, solve, vstack
from combnet.rankmetric import companion_code, gabidulin_code


def span_size(ctx, rows, n):
    """Number of vectors in the row space, by brute-force enumeration of combinations."""
    seen = set()
    for coeffs in itertools.product(range(ctx.q), repeat=len(rows)):
        v = [0] * n
        for c, r in zip(coeffs, rows):
            v = [ctx.add(a, ctx.mul(c, b)) for a, b in zip(v, r)]
        seen.add(tuple(v))
    return len(seen)


def matrices(q, max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(0, q - 1), min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


@settings(max_examples=150, deadline=None)
@given(st.sampled_from([2, 3, 4, 5]), st.data())
def test_rank_matches_span_count(q, data):
    F = gf(q)
    rows = data.draw(matrices(q, 3, 4))
    m = Mat(F, rows)
    assert q ** rank(m) == span_size(F, rows, m.cols)


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_packed_gf2_agrees_with_generic(data):
    F = gf(2)
    rows = data.draw(matrices(2, 6, 7))
    m = Mat(F, rows)
    red, piv = rref(m)
    g_rows, g_piv = _rref_rows(F, rows, m.cols)
    assert piv == g_piv
    assert [list(r) for r in red.data] == g_rows


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([2, 3, 4, 7]), st.data())
def test_rref_properties(q, data):
    F = gf(q)
    m = Mat(F, data.draw(matrices(q, 5, 5)))
    red, piv = rref(m)
    assert rref(red) == (red, piv)
    assert piv == sorted(set(piv)) and len(piv) == red.rows == rank(m)
    for i, pc in enumerate(piv):
        assert [red[k, pc] for k in range(red.rows)] == [int(k == i) for k in range(red.rows)]
        assert all(red[i, j] == 0 for j in range(pc))
    assert rank(vstack([m, red])) == rank(m)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([2, 3, 4]), st.data())
def test_rank_inequalities(q, data):
    F = gf(q)
    a = Mat(F, data.draw(matrices(q, 4, 3)))
    k = a.cols
    b = Mat(F, data.draw(st.lists(st.lists(st.integers(0, q - 1), min_size=3, max_size=3), min_size=k, max_size=k)))
    assert rank(a @ b) <= min(rank(a), rank(b))
    c = Mat(F, data.draw(st.lists(st.lists(st.integers(0, q - 1), min_size=k, max_size=k), min_size=1, max_size=4)))
    assert rank(vstack([a, c])) >= max(rank(a), rank(c))


def test_examples():
    F = gf(2)
    assert rank(Mat.identity(F, 5)) == 5
    assert rank(Mat.zeros(F, 3, 3)) == 0
    assert rank(Mat(F, [[1, 1], [1, 1]])) == 1
    I = Mat.identity(gf(3), 3)
    assert rref(I) == (I, [0, 1, 2])
    red, piv = rref(Mat.zeros(F, 2, 3))
    assert red.rows == 0 and piv == []
    m = Mat(F, [[1, 1, 0], [0, 0, 1]])
    assert rref(m) == (m, [0, 2])


@pytest.mark.parametrize("n", [2, 3])
def test_solve_exhaustive_gf2(n):
    F = gf(2)
    count = 0
    for flat in itertools.product((0, 1), repeat=n * n):
        a = Mat(F, [flat[i * n:(i + 1) * n] for i in range(n)])
        if rank(a) < n:
            with pytest.raises(LinAlgError):
                solve(a, Mat.zeros(F, n, 1))
            continue
        count += 1
        for x in itertools.product((0, 1), repeat=n):
            xc = Mat(F, [[v] for v in x])
            assert solve(a, a @ xc) == xc
        assert a @ inverse(a) == Mat.identity(F, n)
    assert count == {2: 6, 3: 168}[n]


def test_solve_gf4_random_invertible():
    import random

    F = gf(4)
    rng = random.Random(5)
    done = 0
    while done < 20:
        a = Mat(F, [[rng.randrange(4) for _ in range(4)] for _ in range(4)])
        if rank(a) < 4:
            continue
        x0 = Mat(F, [[rng.randrange(4)] for _ in range(4)])
        assert solve(a, a @ x0) == x0
        done += 1


def test_solve_tall_and_inconsistent():
    F = gf(3)
    a = Mat(F, [[1, 0], [0, 1], [1, 1]])
    x = Mat(F, [[2], [1]])
    assert solve(a, a @ x) == x
    with pytest.raises(LinAlgError, match="inconsistent"):
        solve(a, Mat(F, [[1], [1], [0]]))
    with pytest.raises(LinAlgError):
        solve(a, Mat(F, [[1], [1]]))


def test_blocks_and_errors():
    F = gf(2)
    I, Z = Mat.identity(F, 2), Mat.zeros(F, 2, 2)
    assert block([[I, Z], [Z, I]]) == Mat.identity(F, 4)
    rows = [Mat(F, [[1, 0, 1]]), Mat(F, [[0, 1, 1]])]
    assert vstack(rows).shape == (2, 3)
    code = companion_code(2, 2)
    for ci, cj in itertools.combinations(code.members, 2):
        assert rank(block([[I, ci], [I, cj]])) == 4  # companion differences are invertible
    mrd = list(gabidulin_code(2, 2, 1).codewords())  # MRD[2t x 2t, t] at t = 1
    for ci, cj in itertools.combinations(mrd, 2):
        assert rank(block([[I, ci], [I, cj]])) >= 3
    with pytest.raises(LinAlgError):
        hstack([I, Mat.zeros(F, 3, 1)])
    with pytest.raises(LinAlgError):
        vstack([I, Mat.identity(gf(3), 2)])
    with pytest.raises(LinAlgError):
        Mat(F, [[1, 2]])
    with pytest.raises(LinAlgError):
        I @ Mat.zeros(F, 3, 3)


def test_text_roundtrip():
    F = gf(9)
    m = Mat(F, [[0, 8, 3], [4, 1, 0]])
    assert m.to_text() == "2 3\n0 8 3\n4 1 0\n"
    assert Mat.from_text(F, m.to_text()) == m
    with pytest.raises(LinAlgError):
        Mat.from_text(F, "2 2\n1 2 3")
    with pytest.raises(LinAlgError):
        Mat.from_text(F, "1 1\n1 5")


def test_power_and_packing():
    F = gf(2)
    C = companion_code(2, 3).C
    assert C**7 == Mat.identity(F, 3)
    assert C ** -1 @ C == Mat.identity(F, 3)
    m = Mat(F, [[1, 0, 1], [0, 1, 1]])
    assert m.packed() == (0b101, 0b011)
    assert Mat.from_packed(F, m.packed(), 3) == m
    with pytest.raises(LinAlgError):
        Mat.identity(gf(3), 2).packed()
