import itertools
import random

import pytest

from combnet.gf import gf
from combnet.linalg import Mat, rank, vstack
from combnet.rankmetric import companion_code
from combnet.solver import (
    Assignment,
    read_assignment,
    scalar_blocks_solution,
    scalar_mds_solution,
    vector_construction1,
    vector_construction2,
    write_assignment,
)
from combnet.verify import VerifyError, block_vandermonde, check_all, simulate, transfer_matrix


def random_messages(rng, a):
    return [[rng.randrange(a.q) for _ in range(a.t)] for _ in range(a.spec.h)]


def test_check_all_report():
    a = vector_construction1(3, 2, 2, 5)
    rep = check_all(a)
    assert rep.ok and rep.checked == rep.total == 10 and rep.target == 6
    assert next(rep.lines()) == "receiver 0 rank 6 pass"
    assert rep.summary().endswith("10/10 pass")


def test_zeroed_node_fails_exactly_its_receivers():
    a = vector_construction2(2, 1, 8)
    bad = list(a.nodes)
    bad[3] = Mat.zeros(a.ctx, *bad[3].shape)
    broken = Assignment(a.spec, a.ctx, a.t, tuple(bad))
    rep = check_all(broken)
    failing = {j for j, _ in rep.failures}
    expect = {j for j, nodes in enumerate(itertools.combinations(range(8), 2)) if 3 in nodes}
    assert failing == expect
    assert "failing receivers" in rep.summary()


def test_sampling_is_seeded():
    a = scalar_blocks_solution(2, 2, 35)
    r1, r2 = check_all(a, sample=50, seed=4), check_all(a, sample=50, seed=4)
    assert r1.results == r2.results and r1.sampled and r1.checked == 50
    assert [j for j, _ in r1.results] == sorted(j for j, _ in r1.results)
    assert check_all(a, sample=10**6).checked == 595


def test_transfer_matrix_shape():
    a = vector_construction2(2, 2, 10)
    A = transfer_matrix(a, (1, 7))
    assert A.shape == (2 * 4 + 2, 8)
    assert transfer_matrix(a, a.spec.receiver_index((1, 7))) == A


def test_simulate_decodes_random_messages():
    rng = random.Random(7)
    for a in (vector_construction1(3, 2, 2, 5), vector_construction2(2, 1, 12), scalar_mds_solution(4, 6, 5)):
        for _ in range(20):
            x = random_messages(rng, a)
            res = simulate(a, x)
            assert all(d.ok and [list(v) for v in d.decoded] == x for d in res)


def test_simulate_zero_message_and_tamper():
    a = vector_construction1(3, 2, 2, 5)
    zero = [[0, 0]] * 3
    assert all(d.ok for d in simulate(a, zero))
    x = [[1, 0], [0, 1], [1, 1]]
    res = simulate(a, x, receivers=[0, 1], tamper={1: 2})
    assert res[0].ok and not res[1].ok and res[1].decoded is not None
    with pytest.raises(VerifyError):
        simulate(a, [[1, 0]])
    with pytest.raises(VerifyError):
        simulate(a, [[2, 0], [0, 0], [0, 0]])


def test_simulate_reports_undecodable_receiver():
    a = vector_construction1(2, 2, 1, 3)
    broken = Assignment(a.spec, a.ctx, 1, (a.nodes[0], a.nodes[0], a.nodes[2]))
    res = simulate(broken, [[1], [0]], receivers=[0])
    assert not res[0].ok and res[0].decoded is None and res[0].error


def test_loaded_assignment_matches_in_memory():
    a = vector_construction2(2, 1, 10)
    b = read_assignment(write_assignment(a))
    assert check_all(a).results == check_all(b).results
    x = [[1], [0], [1], [1]]
    assert simulate(a, x) == simulate(b, x)


def test_block_vandermonde_basics():
    code = companion_code(2, 2)
    assert block_vandermonde([code[2]], 1) == Mat.identity(code.base, 2)
    rep = block_vandermonde([code[1], code[2], code[1]], 3)
    assert rank(rep) < 6
    with pytest.raises(VerifyError):
        block_vandermonde([], 2)


@pytest.mark.parametrize("q,t", [(2, 2), (2, 3), (3, 2), (2, 4)])
def test_block_vandermonde_subsets_full_rank(q, t):
    code = companion_code(q, t)
    mem = list(code.members)
    for h in (2, 3, 4):
        for combo in itertools.combinations(mem, h):
            assert rank(block_vandermonde(list(combo), h)) == h * t
        # offset block-column windows need invertible members
        nonzero = mem[1:]
        for combo in itertools.islice(itertools.combinations(nonzero, h), 200):
            for k in (1, 2):
                rows = [c**k @ block_vandermonde([c], h) for c in combo]
                assert rank(vstack(rows)) == h * t
