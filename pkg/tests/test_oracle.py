"""Brute-force graded-algebra oracle: word bases, relation rows, exact ranks."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fourfold import (
    DomainError,
    ResourceLimit,
    Word,
    canonical_relation,
    enumerate_words,
    euler_identity_check,
    ideal_degree_dim,
    koszul_leading_monomial_check,
    quotient_dims_oracle,
    quotient_series,
    tensor_series,
)


def test_word_degree_and_rendering():
    # letters 0..k-1 are the degree-1 x's, k..2k-1 the degree-2 y's
    w = Word((0, 3, 1), k=2)
    assert w.degree == 1 + 2 + 1
    assert str(w) == "x1*y2*x2"
    assert str(Word((), 2)) == "1"


def test_word_rejects_foreign_letters():
    with pytest.raises(DomainError):
        Word((4,), k=2)


def test_word_count_matches_recurrence():
    for k in (1, 2, 3, 4):
        counts = [len(enumerate_words(k, n)) for n in range(8)]
        assert counts[0] == 1
        assert counts[1] == k
        for n in range(2, 8):
            assert counts[n] == k * (counts[n - 1] + counts[n - 2])


def test_word_count_matches_tensor_series():
    for k in (1, 2, 3):
        s = tensor_series({1: k, 2: k}, 7)
        for n in range(8):
            assert len(enumerate_words(k, n)) == s.coefficient(n)


@given(st.integers(min_value=1, max_value=4), st.integers(min_value=0, max_value=6))
def test_enumeration_is_sorted_and_duplicate_free(k, n):
    ws = enumerate_words(k, n)
    assert ws == sorted(ws)
    assert len(set(ws)) == len(ws)
    assert all(w.degree == n for w in ws)


def test_canonical_relation_shape():
    r = canonical_relation(3)
    assert len(r.terms) == 6
    assert sorted(c for c, _ in r.terms) == [-1, -1, -1, 1, 1, 1]
    assert {w.degree for _, w in r.terms} == {3}
    rendered = {(c, str(w)) for c, w in r.terms}
    assert (1, "x1*y1") in rendered
    assert (-1, "y1*x1") in rendered


def test_ideal_dims_low_degrees():
    # degree < 3 cannot meet a degree-3 relation
    assert ideal_degree_dim(2, 0) == 0
    assert ideal_degree_dim(2, 2) == 0
    assert ideal_degree_dim(2, 3) == 1
    assert ideal_degree_dim(2, 4) == 4
    assert ideal_degree_dim(2, 5) == 16
    assert ideal_degree_dim(3, 8) == 3339


def test_single_relation_spans_one_dimension():
    for k in (1, 2, 3, 4):
        assert ideal_degree_dim(k, 3) == 1


def test_oracle_report_matches_closed_form():
    for k, N in ((1, 8), (2, 8), (3, 6)):
        rep = quotient_dims_oracle(k, N)
        assert rep.all_ok, (k, rep)
        assert rep.quotient_dims.dims == tuple(quotient_series(k, N).as_int_list())


def test_oracle_degenerate_parameter_one():
    # the quotient collapses to the commutative algebra on one x and one y
    rep = quotient_dims_oracle(1, 8)
    assert rep.quotient_dims.dims == (1, 1, 2, 2, 3, 3, 4, 4, 5)


def test_euler_identity_on_oracle_dims():
    for k, N in ((1, 8), (2, 8), (3, 7)):
        rep = quotient_dims_oracle(k, N)
        flags = euler_identity_check(rep)
        assert all(flags), (k, flags)
        assert flags == rep.euler_ok


def test_report_internal_consistency_fields():
    rep = quotient_dims_oracle(2, 5)
    for n in range(6):
        assert (
            rep.tensor_dims[n] - rep.ideal_dims[n] == rep.quotient_dims[n]
        )
    assert rep.field_used.startswith("prime ")


def test_resource_limit_names_the_budget():
    with pytest.raises(ResourceLimit) as exc:
        ideal_degree_dim(4, 7, budget=1000)
    assert "budget" in str(exc.value)


def test_budget_applies_to_full_oracle_run():
    with pytest.raises(ResourceLimit):
        quotient_dims_oracle(4, 8, budget=2000)
    # same degrees fit comfortably when the cap is lifted
    rep = quotient_dims_oracle(4, 5, budget=3000)
    assert rep.all_ok


def test_oracle_is_deterministic():
    a = quotient_dims_oracle(2, 6)
    b = quotient_dims_oracle(2, 6)
    assert a.to_json_dict() == b.to_json_dict()


@settings(deadline=None, max_examples=10)
@given(st.integers(min_value=1, max_value=3), st.integers(min_value=3, max_value=6))
def test_ideal_dim_agrees_with_series_difference(k, n):
    expected = tensor_series({1: k, 2: k}, n).coefficient(n) - quotient_series(
        k, n
    ).coefficient(n)
    assert ideal_degree_dim(k, n) == expected


def test_koszul_leading_monomial_for_small_alphabets():
    for k in range(1, 6):
        ok, lead = koszul_leading_monomial_check(k)
        assert ok, k
        assert str(lead) == f"y{k}*x{k}"


def test_koszul_leading_monomial_is_maximal_term():
    k = 3
    r = canonical_relation(k)
    top = max(w for _, w in r.terms)
    assert str(top) == "y3*x3"
    # unique: strictly above every other term
    assert sum(1 for _, w in r.terms if w == top) == 1
