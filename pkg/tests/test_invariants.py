from fractions import Fraction
from itertools import product as iproduct

import pytest
import sympy

from cigram.exact import ExactMatrix, inverse
from cigram.hypergroup import build_data, generators
from cigram.invariants import (
    invariance_constraints,
    invariant_space,
    is_invariant,
    proportionality,
    verify_invariance,
    verify_first_column_relations,
    verify_spanned_by_gram,
)
from cigram.ktheory import collection_matrices, restricted_gram

from conftest import CATALOG, random_cases


def xbar_of(data):
    return restricted_gram(data, collection_matrices(data)).Xbar


def solve(q, d):
    data = build_data(q, d)
    gens = generators(data)
    return data, gens, invariant_space(gens), xbar_of(data)


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_catalog_line_spanned_by_gram(name):
    data, gens, space, xbar = solve(*CATALOG[name])
    assert space.dimension == 1
    report = verify_spanned_by_gram(space, xbar)
    assert report.passed and report.scalar != 0
    assert all(is_invariant(h, space.normalized_generator) for h in gens.as_dict().values())


def test_quintic_generator_and_scalar():
    _, _, space, xbar = solve((1,) * 5, (5,))
    g = space.normalized_generator
    assert g.to_int_rows()[0] == [0, 1, -2, 2, -1]  # first nonzero entry positive
    assert xbar == g.scale(-5)
    assert verify_spanned_by_gram(space, xbar).scalar == -5


def test_k3_generator_symmetric():
    _, _, space, xbar = solve((1, 1, 1, 1), (4,))
    g = space.normalized_generator
    assert g == g.T
    assert proportionality(xbar, g) is not None


def test_rank_one_case():
    data = build_data((1,), (1,))
    space = invariant_space(generators(data))
    assert space.dimension == 1
    assert space.normalized_generator == ExactMatrix.identity(1)
    # Y is empty here: Xbar = 0 and the zero guard reports it
    report = verify_spanned_by_gram(space, xbar_of(data))
    assert not report.passed and "Xbar is zero" in report.failures


def test_perturbed_gram_not_proportional():
    _, _, space, xbar = solve((1,) * 5, (5,))
    rows = xbar.to_rows()
    rows[0][1] += 1
    bad = ExactMatrix.from_rows(rows)
    assert proportionality(bad, space.normalized_generator) is None
    assert not verify_spanned_by_gram(space, bad).passed
    assert not verify_invariance(generators(build_data((1,) * 5, (5,))), bad).passed


def test_zero_matrix_guard():
    _, _, space, _ = solve((1,) * 5, (5,))
    assert not verify_spanned_by_gram(space, ExactMatrix.zeros(5)).passed


def group_words(gens, length):
    letters = []
    for h in gens.as_dict().values():
        letters += [h, inverse(h)]
    for k in range(1, length + 1):
        for word in iproduct(letters, repeat=k):
            m = word[0]
            for h in word[1:]:
                m = m @ h
            yield m


@pytest.mark.parametrize("q, d", [((1,) * 5, (5,)), ((1, 1, 2), (4,))])
def test_gram_invariant_under_short_words(q, d):
    data, gens, _, xbar = solve(q, d)
    count = 0
    for w in group_words(gens, 3):
        assert is_invariant(w, xbar)
        count += 1
    assert count == 6 + 36 + 216


def sympy_invariant_dimension(gens):
    """Nullspace of (h (x) h - I) stacked over all three generators, by sympy."""
    Q = gens.h0.rows
    blocks = []
    for h in gens.as_dict().values():
        H = sympy.Matrix(h.to_int_rows())
        blocks.append(sympy.kronecker_product(H, H) - sympy.eye(Q * Q))
    return sympy.Matrix.vstack(*blocks).nullspace()


@pytest.mark.parametrize("q, d", [
    ((1, 1, 1), (3,)), ((1, 1, 2), (4,)), ((1, 1, 1, 1), (2, 2)),
    ((1, 2, 2), (5,)), ((1, 1, 1, 2), (5,)), ((1, 1, 3), (2, 3)),
])
def test_against_sympy_nullspace(q, d):
    data, gens, space, xbar = solve(q, d)
    null = sympy_invariant_dimension(gens)
    assert len(null) == space.dimension == 1
    Q = data.Q
    v = [Fraction(int(x.p), int(x.q)) for x in null[0]]
    oracle = ExactMatrix(Q, Q, v)
    assert proportionality(oracle, space.normalized_generator) is not None


def test_constraint_rows_are_kron_minus_identity():
    gens = generators(build_data((1, 2), (3,)))
    C = invariance_constraints([gens.h0], 3)
    H = sympy.Matrix(gens.h0.to_int_rows())
    expected = sympy.kronecker_product(H, H) - sympy.eye(9)
    assert C.to_int_rows() == [[int(x) for x in expected.row(i)] for i in range(9)]


def test_equal_multisets_exception():
    # Y is empty: the whole group is trivial or reducible and Xbar vanishes
    data, gens, space, xbar = solve((1, 2), (1, 2))
    assert space.dimension > 1
    assert xbar.is_zero()
    assert not verify_spanned_by_gram(space, xbar).passed


@pytest.mark.parametrize("q, d", random_cases(10, max_q=10, seed=11))
def test_spanned_by_gram_randomized(q, d):
    _, gens, space, xbar = solve(q, d)
    assert space.dimension == 1
    assert verify_spanned_by_gram(space, xbar).passed
    assert verify_invariance(gens, xbar).passed


# first-column relations


def test_k3_even_relation():
    data, gens, space, _ = solve((1, 1, 1, 1), (4,))
    X = space.normalized_generator
    for i in range(1, 4):
        assert X[i, 0] == -Fraction(1, 2) * gens.h1[i, 0] * X[0, 0]
    assert verify_first_column_relations(gens, space, data.n).passed


def test_quintic_odd_relation():
    data, gens, space, _ = solve((1,) * 5, (5,))
    assert space.normalized_generator[0, 0] == 0
    assert verify_first_column_relations(gens, space, data.n).passed


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_first_column_catalog(name):
    data, gens, space, _ = solve(*CATALOG[name])
    assert verify_first_column_relations(gens, space, data.n).passed


def test_first_column_rank_one_vacuous():
    data = build_data((1,), (1,))
    gens = generators(data)
    assert verify_first_column_relations(gens, invariant_space(gens), data.n).passed


def test_first_column_detects_bad_matrix():
    data, gens, space, _ = solve((1, 1, 1, 1), (4,))
    rows = space.normalized_generator.to_rows()
    rows[1][0] += 1
    from cigram.invariants import InvariantSpace
    fake = InvariantSpace(1, space.basis, ExactMatrix.from_rows(rows), space.constraint_rank)
    assert not verify_first_column_relations(gens, fake, data.n).passed
