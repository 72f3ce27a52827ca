"""Exact linear algebra over prime fields."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from smallhom.linalg import (
    FieldSpec,
    FpMatrix,
    block,
    direct_sum,
    hstack,
    is_prime,
    kronecker,
    quotient_by_subspace,
)


def test_fieldspec_rejects_composites():
    with pytest.raises(ValueError):
        FieldSpec(4)
    with pytest.raises(ValueError):
        FieldSpec(1)
    assert FieldSpec(2).p == 2
    assert FieldSpec(3).inv(2) == 2


def test_is_prime_small():
    assert [n for n in range(2, 20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]


def test_rank_identity_and_zero():
    assert FpMatrix.identity(3, 5).rank() == 5
    assert FpMatrix.zeros(3, 4, 7).rank() == 0
    assert FpMatrix.zeros(3, 4, 7).kernel_basis().cols == 7


def test_kernel_of_row_vector():
    m = FpMatrix(3, [[1, 1]])
    k = m.kernel_basis()
    assert k.cols == 1
    assert (m @ k).is_zero()
    # spanned by (1, -1) up to scale
    assert (k.a[0, 0] + k.a[1, 0]) % 3 == 0 and k.a[:, 0].any()


def test_kernel_of_identity_is_empty():
    assert FpMatrix.identity(5, 4).kernel_basis().cols == 0


def test_solve_identity_and_inconsistent():
    b = FpMatrix(3, [[1], [2], [0]])
    assert FpMatrix.identity(3, 3).solve(b) == b
    assert FpMatrix.zeros(3, 2, 2).solve(FpMatrix(3, [[1], [0]])) is None


def test_solve_underdetermined_witness():
    m = FpMatrix(3, [[1, 0], [0, 0]])
    b = FpMatrix(3, [[1], [0]])
    x = m.solve(b)
    assert x is not None and (m @ x) == b


def test_solve_shape_mismatch_is_error():
    with pytest.raises(ValueError):
        FpMatrix.identity(3, 3).solve(FpMatrix.zeros(3, 2, 1))


def test_kron_scalars_and_identities():
    two = FpMatrix(3, [[2]])
    assert kronecker(two, two) == FpMatrix(3, [[1]])
    assert direct_sum(FpMatrix.identity(3, 2), FpMatrix.identity(3, 3)) == FpMatrix.identity(3, 5)
    assert kronecker(FpMatrix.identity(3, 3), FpMatrix.identity(3, 4)) == FpMatrix.identity(3, 12)


def test_kron_index_pairing_is_row_major():
    a = FpMatrix(5, [[0, 1], [0, 0]])
    b = FpMatrix(5, [[2]])
    k = a.kron(b)
    # entry (i*1 + 0, j*1 + 0) = a[i, j] * b[0, 0]
    assert k.a[0, 1] == 2 and k.a[1, 0] == 0


@pytest.mark.parametrize("p", [2, 3, 5])
def test_rank_nullity_and_kron_rank_random(p):
    rng = np.random.RandomState(11 + p)
    for _ in range(40):
        r, c = rng.randint(0, 7), rng.randint(0, 7)
        m = FpMatrix(p, rng.randint(0, p, size=(r, c)))
        k = m.kernel_basis()
        assert m.rank() + k.cols == c
        if k.cols:
            assert (m @ k).is_zero()
    for _ in range(15):
        a = FpMatrix(p, rng.randint(0, p, size=(rng.randint(1, 4), rng.randint(1, 4))))
        b = FpMatrix(p, rng.randint(0, p, size=(rng.randint(1, 4), rng.randint(1, 4))))
        assert a.kron(b).rank() == a.rank() * b.rank()


@settings(max_examples=60, deadline=None)
@given(
    st.integers(min_value=0, max_value=4),
    st.integers(min_value=0, max_value=4),
    st.randoms(use_true_random=False),
)
def test_rref_is_projection_and_solve_verifies(rows, cols, rnd):
    p = 3
    data = np.array([rnd.randrange(p) for _ in range(rows * cols)], dtype=np.int64)
    m = FpMatrix(p, data.reshape(rows, cols))
    red, pivots = m.rref()
    red2, pivots2 = red.rref()
    assert red2 == red and pivots2 == pivots
    xdata = np.array([rnd.randrange(p) for _ in range(cols)], dtype=np.int64)
    x = FpMatrix(p, xdata.reshape(cols, 1))
    b = m @ x
    sol = m.solve(b)
    assert sol is not None and (m @ sol) == b


def test_column_space_is_echelonized_and_spans():
    m = FpMatrix(3, [[1, 2, 0], [2, 4, 0], [0, 0, 0]])
    cs = m.column_space()
    assert cs.cols == m.rank() == 1
    assert cs.solve(FpMatrix(3, [[1], [2], [0]])) is not None


def test_quotient_by_subspace_splitting():
    sub = FpMatrix(3, [[1], [1], [0]])
    q, s = quotient_by_subspace(3, sub)
    assert (q @ s) == FpMatrix.identity(3, 2)
    v = FpMatrix(3, [[2], [0], [1]])
    residual = v - s @ (q @ v)
    assert sub.solve(residual) is not None  # residual lies in the subspace


def test_block_assembly():
    i2 = FpMatrix.identity(3, 2)
    m = block(3, [[i2, None], [None, i2.scale(2)]], [2, 2], [2, 2])
    assert m.a[0, 0] == 1 and m.a[2, 2] == 2 and m.a[0, 2] == 0


def test_dump_format():
    m = FpMatrix(3, [[0, 2], [1, 0]])
    assert m.dump() == "2 2 3\n0 1 2\n1 0 1\n"


def test_immutability():
    m = FpMatrix.identity(3, 2)
    with pytest.raises(ValueError):
        m.a[0, 0] = 2
