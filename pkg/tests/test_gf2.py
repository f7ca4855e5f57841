import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from smallcover.gf2 import (
    CapacityError,
    DimensionError,
    Gf2Matrix,
    dot,
    enumerate_row_space,
    from_support,
    in_row_space,
    kernel_basis,
    ones,
    rank_of,
    rref,
    span,
    support,
)

EX55 = Gf2Matrix.from_columns([1, 2, 1, 2, 7, 4, 8, 4, 8], 4)


def test_support_round_trip():
    assert support(from_support([0, 3, 7])) == [0, 3, 7]
    assert from_support([]) == 0


def test_column_codes_round_trip():
    assert EX55.column_codes() == [1, 2, 1, 2, 7, 4, 8, 4, 8]
    assert [support(r) for r in EX55.rows] == [[0, 2, 4], [1, 3, 4], [4, 5, 7], [6, 8]]


def test_rref_identity_and_zero():
    R, r, piv = rref(Gf2Matrix.identity(4))
    assert R == Gf2Matrix.identity(4) and r == 4 and piv == [0, 1, 2, 3]
    R, r, piv = rref(Gf2Matrix.zero(4, 10))
    assert R.rows == () and r == 0 and piv == []


def test_rref_example_golden():
    # eliminated by hand: pivot columns 0, 1, 4, 6
    R, r, piv = rref(EX55)
    assert r == 4 and piv == [0, 1, 4, 6]
    assert [support(x) for x in R.rows] == [[0, 2, 5, 7], [1, 3, 5, 7], [4, 5, 7], [6, 8]]
    assert R.column_codes() == [1, 2, 1, 2, 4, 7, 8, 7, 8]


def test_in_row_space_examples():
    assert in_row_space(EX55, ones(9))
    assert not in_row_space(EX55, from_support(range(5)))
    assert in_row_space(EX55, 0)
    with pytest.raises(DimensionError):
        in_row_space(EX55, 1 << 9)


def test_kernel_basis_example():
    ker = kernel_basis(EX55)
    assert len(ker) == 5 and rank_of(ker) == 5
    assert all(EX55.apply(v) == 0 for v in ker)
    chi1 = from_support(range(5))
    assert any(dot(chi1, g) for g in span(ker))


def test_kernel_of_identity_is_empty():
    assert kernel_basis(Gf2Matrix.identity(4)) == []


def test_row_space_enumeration():
    assert list(enumerate_row_space(Gf2Matrix.zero(3, 5))) == [0]
    ws = list(enumerate_row_space(EX55))
    assert ws[0] == 0 and len(ws) == len(set(ws)) == 16
    assert from_support([0, 2, 5, 7]) in ws
    assert all(in_row_space(EX55, w) for w in ws)


def test_row_space_guard():
    big = Gf2Matrix.identity(25)
    with pytest.raises(CapacityError):
        next(iter(enumerate_row_space(big)))


def _random_matrix(rng, m, n):
    return Gf2Matrix(tuple(rng.getrandbits(m) for _ in range(n)), m)


def test_rref_idempotent_random():
    rng = random.Random(1)
    for _ in range(10_000):
        M = _random_matrix(rng, rng.randint(1, 16), rng.randint(1, 8))
        R = rref(M)[0]
        assert rref(R)[0] == R
        assert rank_of(R.rows) == rank_of(M.rows)


def test_row_kernel_duality_random():
    rng = random.Random(2)
    for _ in range(10_000):
        m = rng.randint(1, 20)
        M = _random_matrix(rng, m, rng.randint(1, 8))
        u = rng.getrandbits(m)
        ker = kernel_basis(M)
        witness = any(dot(u, g) for g in span(ker))
        assert in_row_space(M, u) != witness


def test_row_kernel_duality_exhaustive_small():
    # every vector u for a spread of matrices up to m = 12
    rng = random.Random(3)
    for m in range(1, 13):
        for _ in range(3):
            M = _random_matrix(rng, m, rng.randint(1, min(m, 6)))
            ker = list(span(kernel_basis(M)))
            row = set(enumerate_row_space(M))
            for u in range(1 << m):
                assert (u in row) == (not any(dot(u, g) for g in ker))


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 12), st.lists(st.integers(0, 2**12 - 1), min_size=1, max_size=6))
def test_row_space_size(m, rows):
    M = Gf2Matrix(tuple(r & ones(m) for r in rows), m)
    ws = list(enumerate_row_space(M))
    assert len(ws) == 2 ** M.rank() == len(set(ws))
