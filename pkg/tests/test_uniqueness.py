import random

import pytest
from hypothesis import given, settings

from oracles import all_matrices, binary_h_solutions, census_brute
from semiring_rank.errors import DomainError, Limits, ResourceError, ShapeError
from semiring_rank.matrix import BinaryMatrix
from semiring_rank.search import boolean_rank
from semiring_rank.uniqueness import (boundary_close, canonical_pieces, census_candidates, cone_census,
                                      count_h_solutions, unique_h_boolean, unique_w_boolean, uniqueness_report)
from test_matrix import binary_matrices


def census_sets(census):
    return sorted(sorted(g) for g in census.cones)


def test_census_unique_w(mats):
    X = mats["uniqueW"]
    ok, census = unique_w_boolean(X)
    assert ok
    # [DERIVED] the single cone is generated by the first three columns of X
    assert census_sets(census) == [[3, 9, 14]]
    assert sorted(census.as_matrices()[0].columns) == sorted(mats["uniqueW_W"].columns)


def test_census_c_has_two_cones(mats):
    ok, census = unique_w_boolean(mats["C"])
    assert not ok
    assert census_sets(census) == [[1, 2, 4, 8], [3, 5, 10, 12]]


def test_census_rejects_wrong_order(mats):
    with pytest.raises(ValueError):
        cone_census(mats["C"], R=3)


def test_census_of_zero_matrix():
    census = cone_census(BinaryMatrix.zeros(3, 2))
    assert census.target_order == 0 and len(census) == 1


def test_census_exhaustive_3x3():
    for X in all_matrices(3, 3):
        R = boolean_rank(X)[0]
        if R == 0:
            continue
        assert census_sets(cone_census(X)) == sorted(sorted(g) for g in census_brute(X, R))


def test_census_random_4x4():
    rng = random.Random(4)
    for _ in range(40):
        X = BinaryMatrix(4, 4, tuple(rng.getrandbits(4) for _ in range(4)))
        R = boolean_rank(X)[0]
        if R == 0:
            continue
        assert census_sets(cone_census(X)) == sorted(sorted(g) for g in census_brute(X, R))


def test_census_budget_keeps_partial(mats):
    # the rank search needs no nodes on C (isolation bound meets greedy cover)
    with pytest.raises(ResourceError) as err:
        cone_census(mats["C"], limits=Limits(max_nodes=5))
    assert err.value.partial.exhausted is False


def test_candidates_are_dominated_by_a_column(mats):
    X = mats["B"]
    for c in census_candidates(X):
        assert any(c & ~col == 0 for col in X.columns)


def test_unique_h_examples(mats):
    X, W = mats["uniqueW"], mats["uniqueW_W"]
    ok, detail = unique_h_boolean(X, W)
    assert not ok
    assert [d.independent for d in detail] == [True, True, True, False]
    assert detail[3].dominated == (0, 1, 2)
    assert count_h_solutions(X, W) == [1, 1, 1, 3]
    # complement of the identity, factored by itself
    A = mats["complement3"]
    ok, _ = unique_h_boolean(A, A)
    assert ok
    assert [len(s) for s in binary_h_solutions(A, A)] == [1, 1, 1]


def test_unique_h_requires_containment(mats):
    with pytest.raises(DomainError):
        unique_h_boolean(mats["C"], BinaryMatrix.from_rows([[1], [1], [0], [0]]))
    with pytest.raises(ShapeError):
        unique_h_boolean(mats["C"], BinaryMatrix.identity(3))


@settings(max_examples=200)
@given(binary_matrices(max_side=4), binary_matrices(max_side=4))
def test_unique_h_matches_counts(W, Hseed):
    if W.n_rows == 0 or W.n_cols == 0:
        return
    # X = W ∧ H for some H, so containment holds by construction
    rows = [Hseed.rows[k % max(Hseed.n_rows, 1)] if Hseed.n_rows else 0 for k in range(W.n_cols)]
    m = max(Hseed.n_cols, 1)
    rows = [r & ((1 << m) - 1) for r in rows]
    X_rows = []
    for r in W.rows:
        acc = 0
        for k in range(W.n_cols):
            if (r >> k) & 1:
                acc |= rows[k]
        X_rows.append(acc)
    X = BinaryMatrix(W.n_rows, m, tuple(X_rows))
    ok, _ = unique_h_boolean(X, W)
    assert ok == all(c == 1 for c in count_h_solutions(X, W))


def test_count_limit():
    with pytest.raises(ResourceError):
        count_h_solutions(BinaryMatrix.zeros(2, 1), BinaryMatrix.zeros(2, 21))


def test_boundary_close():
    assert boundary_close(BinaryMatrix.identity(3))
    assert not boundary_close(BinaryMatrix.from_rows([[1, 1], [0, 1]]))
    assert not boundary_close(BinaryMatrix.from_rows([[1, 1], [1, 1]]))
    assert boundary_close(BinaryMatrix.from_rows([[1, 0], [0, 1], [1, 1]]))


def test_canonical_pieces_ignore_order():
    W = BinaryMatrix.from_rows([[1, 0], [0, 1]])
    H = BinaryMatrix.from_rows([[1, 1], [0, 1]])
    Wp = BinaryMatrix.from_rows([[0, 1], [1, 0]])
    Hp = BinaryMatrix.from_rows([[0, 1], [1, 1]])
    assert canonical_pieces(W, H) == canonical_pieces(Wp, Hp)


def test_report_unique_w_not_h(mats):
    rep = uniqueness_report(mats["uniqueW"])
    assert (rep.boolean_rank, rep.boolean_column_rank) == (3, 2)
    assert rep.unique_w and not rep.unique_h_given_w
    assert rep.boundary_close
    # crk < rk, so full uniqueness needs unique H too
    assert not rep.fully_unique


def test_report_identity_is_fully_unique(mats):
    rep = uniqueness_report(mats["I4"])
    assert rep.unique_w and rep.unique_h_given_w and rep.fully_unique
    d = rep.to_dict(include_census=True)
    assert len(d["census"]) == 1


def test_report_c(mats):
    rep = uniqueness_report(mats["C"])
    assert rep.cone_census_size == 2
    assert not rep.unique_w and not rep.fully_unique


def test_report_invariants_3x3():
    for X in all_matrices(3, 3):
        rep = uniqueness_report(X)
        assert rep.boolean_column_rank <= rep.boolean_rank
        assert rep.cone_census_size >= 1
        if rep.fully_unique:
            assert rep.unique_w
        if rep.unique_w and rep.representative_w is not None and rep.boolean_rank > 1:
            assert rep.boundary_close


def test_zero_generator_makes_h_free():
    W = BinaryMatrix.from_rows([[1, 0], [0, 0]])
    X = BinaryMatrix.from_rows([[1], [0]])
    ok, detail = unique_h_boolean(X, W)
    assert not ok and detail[0].dominated == (0, 1)
    assert count_h_solutions(X, W) == [2]
