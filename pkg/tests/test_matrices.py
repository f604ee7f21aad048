import numpy as np
import pytest

from bhcodes.matrices import (CirculantSpec, RingMatrix, build_circulant, check_amicable,
                              circulant_array, expand_symmetric_half, identity, is_identity,
                              is_symmetric, lambda_circulant, lambda_shift, mat_add, mat_mul,
                              mat_transpose, shift_matrix, zeros)
from bhcodes.rings import MUL_TABLE, Ring, RingElement, RingMismatchError, as_vector

F2, F2U, F4U = Ring.F2, Ring.F2U, Ring.F4U
RNG = np.random.default_rng(5)


def rand_row(ring, n):
    return as_vector(RNG.choice(ring.elements(), n).tolist(), ring)


def test_lambda_shift_examples():
    one = RingElement(1, F2)
    assert lambda_shift(one, as_vector("100", F2)).entries.tolist() == [0, 1, 0]
    lam = RingElement(3, F2U)
    assert lambda_shift(lam, as_vector("00u", F2U)).entries.tolist() == [2, 0, 0]
    lam = RingElement(9, F4U)
    assert lambda_shift(lam, as_vector("6", F4U)).entries.tolist() == [int(MUL_TABLE[9, 6])]


def test_circulant_rows_are_iterated_shifts():
    for ring, lam in ((F2U, 3), (F4U, 9), (F4U, 11), (F2, 1)):
        r = rand_row(ring, 6)
        lam_e = RingElement(lam, ring)
        m = lambda_circulant(r, lam_e)
        row = r
        for i in range(6):
            assert m.row(i) == row
            row = lambda_shift(lam_e, row)


def test_permutation_matrix_T():
    T = build_circulant(CirculantSpec(F2, RingElement(1, F2), as_vector("010", F2)))
    assert T == shift_matrix(3, F2)
    assert is_identity(mat_mul(T, mat_mul(T, T)))


def test_circulant_is_polynomial_in_T():
    a, b, c = 1, 0, 1
    M = lambda_circulant(as_vector([a, b, c], F2))
    T = shift_matrix(3, F2)
    I = identity(3, F2)
    assert M == mat_add(I, mat_mul(T, T))
    # lambda-twisted version over F4U, 10^3 random trials with n <= 12
    for _ in range(1000):
        n = int(RNG.integers(1, 13))
        lam = RingElement(int(RNG.choice([1, 3, 9, 11])), F4U)
        r = rand_row(F4U, n)
        T = shift_matrix(n, F4U, lam)
        acc = np.zeros((n, n), dtype=np.uint8)
        P = np.eye(n, dtype=np.uint8)
        for i in range(n):
            acc ^= MUL_TABLE[r.entries[i]][P]
            P = mat_mul(RingMatrix(F4U, P), T).entries
        assert np.array_equal(acc, lambda_circulant(r, lam).entries)


def test_shift_matrix_acts_as_lambda_shift():
    lam = RingElement(9, F4U)
    T = shift_matrix(5, F4U, lam)
    r = rand_row(F4U, 5)
    assert (RingMatrix(F4U, r.entries[None, :]) @ T).row(0) == lambda_shift(lam, r)
    assert shift_matrix(1, F4U, lam).entries.tolist() == [[9]]


@pytest.mark.parametrize("ring,lams", [(F2, [1]), (F2U, [1, 3]), (F4U, [1, 3, 9, 11])])
def test_lambda_circulants_commute(ring, lams):
    for _ in range(1000 // len(lams)):
        for lam in lams:
            n = int(RNG.integers(1, 7))
            lam_e = RingElement(lam, ring)
            A = lambda_circulant(rand_row(ring, n), lam_e)
            B = lambda_circulant(rand_row(ring, n), lam_e)
            assert A @ B == B @ A


def test_circulants_commute_n5():
    A = lambda_circulant(rand_row(F4U, 5))
    B = lambda_circulant(rand_row(F4U, 5))
    assert A @ B == B @ A


def test_expand_symmetric_half():
    assert expand_symmetric_half(as_vector("11011", F2), 9).entries.tolist() == [1, 1, 0, 1, 1, 1, 1, 0, 1]
    assert not expand_symmetric_half(as_vector("00000", F2), 9).entries.any()
    assert expand_symmetric_half(as_vector("10000", F2), 9).entries.tolist() == [1] + [0] * 8
    with pytest.raises(ValueError):
        expand_symmetric_half(as_vector("110", F2), 4)
    with pytest.raises(ValueError):
        expand_symmetric_half(as_vector("11", F2), 9)
    for _ in range(100):
        full = expand_symmetric_half(rand_row(F4U, 4), 7)
        assert is_symmetric(lambda_circulant(full))


def test_symmetric_spec_invariants():
    with pytest.raises(ValueError):
        CirculantSpec(F2, RingElement(1, F2), as_vector("110", F2), symmetric=True)
    with pytest.raises(ValueError):
        CirculantSpec(F2U, RingElement(3, F2U), as_vector("011", F2U), symmetric=True)
    with pytest.raises(ValueError):
        CirculantSpec(F2U, RingElement(2, F2U), as_vector("011", F2U))
    CirculantSpec(F2, RingElement(1, F2), as_vector("011", F2), symmetric=True)


def test_amicable():
    A = lambda_circulant(as_vector("001101000", F2))
    B = lambda_circulant(as_vector("100100100", F2))
    assert check_amicable(A, B)
    assert check_amicable(A, A)
    S1 = lambda_circulant(expand_symmetric_half(as_vector("11010", F2), 9))
    S2 = lambda_circulant(expand_symmetric_half(as_vector("01101", F2), 9))
    assert check_amicable(S1, S2)
    X = lambda_circulant(as_vector("1B", F4U), RingElement(3, F4U))
    Y = lambda_circulant(as_vector("7C", F4U), RingElement(3, F4U))
    assert not check_amicable(X, Y)


def test_matrix_algebra_errors():
    I = identity(3, F2)
    assert mat_mul(I, I) == I
    assert mat_transpose(mat_transpose(lambda_circulant(rand_row(F2U, 3)))).ring is F2U
    with pytest.raises(ValueError):
        mat_mul(I, identity(2, F2))
    with pytest.raises(RingMismatchError):
        mat_add(I, identity(3, F2U))
    with pytest.raises(ValueError):
        RingMatrix(F2, np.array([[2]]))
    assert zeros(2, 3, F2).is_zero()


def test_batched_circulant_matches_single():
    rows = RNG.choice(F4U.elements(), (7, 4)).astype(np.uint8)
    batch = circulant_array(rows, 9)
    for i in range(7):
        assert np.array_equal(batch[i], circulant_array(rows[i], 9))


def test_packed_rows():
    m = RingMatrix(F2, np.array([[1, 0, 1], [0, 1, 1]]))
    assert m.packed_rows == [0b101, 0b110]
    with pytest.raises(ValueError):
        _ = RingMatrix(F2U, np.array([[1]])).packed_rows
