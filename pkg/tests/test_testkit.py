"""Self-checks for the test support module: oracles, generators, fixtures."""

import itertools

import numpy as np
import pytest
from numpy.testing import assert_allclose

from compound_kit import (
    DEFAULT_POLICY,
    IndexTuple,
    InvalidArgumentError,
    compound,
    indexof_tuple,
    lex_tuples,
)
from compound_kit.testkit import (
    MAX_ORACLE_GRADE,
    Fixture,
    fixture_checks,
    indexof_by_search,
    load_fixtures,
    random_rank_r,
    reference_compound,
    run_fixture_checks,
)
from compound_kit.testkit import _ascending_tuples, _cofactor_det


# ---------------------------------------------------------------------------
# exact oracles


def test_cofactor_det_matches_hand_values():
    assert _cofactor_det([[5]]) == 5
    assert _cofactor_det([[1, 2], [3, 4]]) == -2
    assert _cofactor_det([[2, 0, 0], [0, 3, 0], [0, 0, 4]]) == 24
    # integer arithmetic stays exact where floats would round
    big = [[10**8, 1], [1, 10**8]]
    assert _cofactor_det(big) == 10**16 - 1


def test_ascending_tuples_matches_itertools():
    for n in range(1, 7):
        for k in range(1, n + 1):
            assert list(_ascending_tuples(n, k)) == list(
                itertools.combinations(range(n), k)
            )


def test_reference_compound_exact_on_integers():
    X = np.array([[2, 0, 1], [1, 3, 0], [0, 1, 4]])
    C = reference_compound(X, 2)
    # hand-computed 2x2 minors, lex order (12),(13),(23) by rows and columns
    expected = np.array(
        [
            [6, -1, -3],
            [2, 8, -1],
            [1, 4, 12],
        ],
        dtype=float,
    )
    assert_allclose(C, expected, rtol=0, atol=0)


def test_reference_compound_agrees_with_batched_on_floats():
    rng = np.random.default_rng(3)
    X = rng.standard_normal((5, 4))
    assert_allclose(reference_compound(X, 3), compound(X, 3), rtol=1e-12, atol=1e-13)


def test_reference_compound_grade_cap():
    X = np.eye(6)
    with pytest.raises(InvalidArgumentError):
        reference_compound(X, MAX_ORACLE_GRADE + 1)


def test_indexof_by_search_is_position_in_lex_order():
    assert indexof_by_search(IndexTuple((1, 3, 4), ambient=5)) == 4
    assert indexof_by_search(IndexTuple((1, 2), ambient=4)) == 1
    assert indexof_by_search(IndexTuple((3, 4), ambient=4)) == 6


def test_indexof_by_search_agrees_with_closed_form():
    for n in range(2, 7):
        for k in range(1, n + 1):
            for t in lex_tuples(n, k):
                assert indexof_by_search(t) == indexof_tuple(t)


# ---------------------------------------------------------------------------
# random instance generator


@pytest.mark.parametrize("n,m,r", [(4, 4, 3), (6, 5, 4), (5, 7, 2), (3, 3, 3)])
def test_random_rank_r_has_requested_rank(n, m, r):
    A = random_rank_r(n, m, r, seed=17)
    assert A.shape == (n, m)
    s = np.linalg.svd(A, compute_uv=False)
    assert np.sum(s > 1e-10 * s[0] * max(n, m)) == r


def test_random_rank_r_is_deterministic_per_seed():
    A = random_rank_r(5, 4, 3, seed=9)
    B = random_rank_r(5, 4, 3, seed=9)
    C = random_rank_r(5, 4, 3, seed=10)
    assert_allclose(A, B, rtol=0, atol=0)
    assert not np.allclose(A, C)


def test_random_rank_r_default_spectrum_is_separated():
    for seed in range(8):
        A = random_rank_r(6, 6, 4, seed=seed)
        s = np.linalg.svd(A, compute_uv=False)[:4]
        gaps = (s[:-1] - s[1:]) / s[0]
        assert np.all(gaps >= 10 * DEFAULT_POLICY.gap_rtol)


def test_random_rank_r_honors_explicit_spectrum():
    A = random_rank_r(5, 5, 3, seed=2, spectrum=(7.0, 3.0, 1.0))
    s = np.linalg.svd(A, compute_uv=False)
    assert_allclose(s[:3], [7.0, 3.0, 1.0], rtol=1e-12, atol=1e-12)


def test_random_rank_r_zero_rank():
    A = random_rank_r(4, 3, 0, seed=0)
    assert_allclose(A, np.zeros((4, 3)), rtol=0, atol=0)


# ---------------------------------------------------------------------------
# fixtures


def test_load_fixtures_names_and_markers():
    fixtures = load_fixtures()
    assert set(fixtures) == {"recovery-4x4", "rank-one-3x3", "non-decomposable-q"}
    for name, f in fixtures.items():
        assert isinstance(f, Fixture)
        assert f.name == name
        marker = f.origin.split(":")[0]
        assert marker in {"reference-values", "identity", "oracle"}


def test_recovery_fixture_is_consistent():
    fx = load_fixtures()["recovery-4x4"]
    A = fx.inputs["A"]
    M = fx.inputs["M"]
    assert A.shape == (4, 4)
    assert M.shape == (6, 6)
    # the stored compound matches the stored source matrix exactly: both are
    # integer-valued and the minors stay within exact float range
    assert_allclose(compound(A, 2), M, rtol=0, atol=1e-9)
    # printed factors reproduce A to the printing precision (2 decimals)
    V, sigma, W = fx.expected["V"], fx.expected["sigma"], fx.expected["W"]
    assert np.linalg.norm(V @ np.diag(sigma.ravel()) @ W.T - A) < 0.05 * np.linalg.norm(A)


def test_rank_one_fixture_preimages_have_equal_compound():
    fx = load_fixtures()["rank-one-3x3"]
    A, B, M = fx.inputs["A"], fx.inputs["B"], fx.inputs["M"]
    assert_allclose(compound(A, 2), M, rtol=0, atol=1e-12)
    assert_allclose(compound(B, 2), M, rtol=0, atol=1e-12)
    assert np.linalg.matrix_rank(M) == 1


def test_fixture_checks_all_pass():
    checks = fixture_checks()
    assert len(checks) == 8
    results = run_fixture_checks()
    failed = [name for name, ok, detail in results if not ok]
    assert failed == [], f"fixture checks failed: {failed}"


def test_fixture_checks_report_names_and_details():
    for name, ok, detail in run_fixture_checks():
        assert isinstance(name, str) and name
        assert isinstance(detail, str)
        assert ok is True
