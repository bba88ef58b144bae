import numpy as np
import pytest

from wamcyl.densela import (
    PivotRecord,
    cond_2,
    cond_inf,
    lu_row_pivot,
    qr_col_pivot,
    solve,
)
from wamcyl.errors import RankDeficiencyError, SingularMatrixError


def test_qr_identity_tie_break():
    rec = qr_col_pivot(np.eye(3))
    np.testing.assert_array_equal(rec.order, [0, 1, 2])


def test_qr_hand_computed_pivots():
    # column norms 1, 2, 3 -> first pivot 2; the residual of column 1 is
    # untouched by the first reflector, so it is picked second
    A = np.array([[1.0, 0.0, 3.0], [0.0, 2.0, 0.0]])
    rec = qr_col_pivot(A)
    assert list(rec.order[:2]) == [2, 1]
    np.testing.assert_allclose(rec.magnitudes, [3.0, 2.0])


def test_qr_row_of_ones():
    rec = qr_col_pivot(np.ones((1, 7)))
    assert rec.order[0] == 0


def test_qr_steps_limits_the_checked_pivots():
    # rank-1 matrix: fine for one step, rank-deficient after two
    A = np.outer([1.0, 2.0], [3.0, 1.0, 2.0])
    rec = qr_col_pivot(A, steps=1)
    assert rec.order[0] == 0
    with pytest.raises(RankDeficiencyError):
        qr_col_pivot(A, steps=2)


def test_qr_requires_wide_matrix():
    with pytest.raises(ValueError):
        qr_col_pivot(np.ones((3, 2)))


def test_qr_pivot_magnitudes_nonincreasing():
    rng = np.random.default_rng(0)
    for _ in range(30):
        m = rng.integers(2, 40)
        A = rng.standard_normal((m, m + rng.integers(0, 40)))
        mags = qr_col_pivot(A).magnitudes
        assert np.all(mags[1:] <= mags[:-1] * (1 + 1e-12))


def test_lu_identity_and_max_row():
    np.testing.assert_array_equal(lu_row_pivot(np.eye(4)).order, np.arange(4))
    rec = lu_row_pivot(np.array([[1.0], [-5.0], [3.0]]))
    assert rec.order[0] == 1
    assert rec.magnitudes[0] == 5.0


def test_lu_prefix_property_random():
    # pivots on a leading column block equal the leading pivots on the
    # full matrix, bitwise
    rng = np.random.default_rng(1)
    for _ in range(200):
        m = int(rng.integers(3, 51))
        n = int(rng.integers(2, min(m, 30) + 1))
        A = rng.standard_normal((m, n))
        k = int(rng.integers(1, n))
        full = lu_row_pivot(A).order[:k]
        part = lu_row_pivot(A[:, :k]).order[:k]
        np.testing.assert_array_equal(full, part)


def test_lu_singularity():
    with pytest.raises(SingularMatrixError):
        lu_row_pivot(np.zeros((3, 2)))
    A = np.ones((4, 2))  # second column dependent
    with pytest.raises(SingularMatrixError):
        lu_row_pivot(A)


def test_lu_requires_tall_matrix():
    with pytest.raises(ValueError):
        lu_row_pivot(np.ones((2, 3)))


def test_solve_identity_and_diag():
    B = np.array([[1.0, 2.0], [3.0, 4.0]])
    np.testing.assert_array_equal(solve(np.eye(2), B), B)
    np.testing.assert_allclose(solve(np.array([[2.0]]), np.array([4.0])), [2.0])


def test_solve_reconstructs_known_solution():
    rng = np.random.default_rng(2)
    A = rng.standard_normal((10, 10)) + 5 * np.eye(10)
    X = rng.standard_normal((10, 3))
    got = solve(A, A @ X)
    assert np.abs(got - X).max() < 1e-10


def test_solve_singular():
    with pytest.raises(SingularMatrixError):
        solve(np.zeros((2, 2)), np.ones(2))


def test_cond_inf_values():
    assert cond_inf(np.eye(5)) == pytest.approx(1.0)
    assert cond_inf(np.diag([1.0, 10.0])) == pytest.approx(10.0)
    assert cond_2(np.diag([1.0, 10.0])) == pytest.approx(10.0)


def test_cond_at_extracted_nodes_magnitude():
    # the reference tables' value for this configuration is 18.2; the
    # spectral condition number reproduces it, the infinity-norm one runs
    # an order of magnitude higher
    from wamcyl import extract, meshgen, polybasis

    sel = extract.select_afp(meshgen.wam1(5), 5, ortho_steps=0)
    V = polybasis.vandermonde(polybasis.enumerate_basis(5), sel.nodes)
    assert 18.2 / 3 <= cond_2(V) <= 18.2 * 3
    assert cond_inf(V) > 3 * 18.2


def test_factorizations_bit_deterministic():
    rng = np.random.default_rng(3)
    A = rng.standard_normal((12, 20))
    r1, r2 = qr_col_pivot(A), qr_col_pivot(A.copy())
    np.testing.assert_array_equal(r1.order, r2.order)
    assert r1.magnitudes.tobytes() == r2.magnitudes.tobytes()
    B = rng.standard_normal((20, 12))
    l1, l2 = lu_row_pivot(B), lu_row_pivot(B.copy())
    np.testing.assert_array_equal(l1.order, l2.order)


def test_pivot_record_rejects_non_permutation():
    with pytest.raises(ValueError):
        PivotRecord(order=np.array([0, 0, 1]), magnitudes=np.ones(3))


def test_lu_kernels_bitwise_identical():
    # the jitted elimination and the vectorized numpy one perform the same
    # IEEE operations per entry; ties included, results must agree bitwise
    from wamcyl import densela

    if densela._lu_eliminate_fast is None:
        pytest.skip("numba not available")
    rng = np.random.default_rng(6)
    mats = [rng.standard_normal((25, 12)) for _ in range(5)]
    sym = rng.standard_normal((9, 6))
    mats.append(np.vstack([sym, sym[::-1]]))  # exact tied magnitudes
    for A in mats:
        u1 = np.array(A, order="C")
        u2 = np.array(A, order="C")
        p1 = np.arange(A.shape[0])
        p2 = p1.copy()
        m1 = np.empty(A.shape[1])
        m2 = np.empty(A.shape[1])
        r1 = densela._lu_eliminate_fast(u1, p1, m1, 0.0)
        r2 = densela._lu_eliminate_numpy(u2, p2, m2, 0.0)
        assert r1 == r2
        np.testing.assert_array_equal(p1, p2)
        assert m1.tobytes() == m2.tobytes()
