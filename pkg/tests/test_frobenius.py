import math

import pytest
from hypothesis import assume, given, strategies as st

from conftest import coin_table, oracle_frobenius, oracle_g_exact
from kfrob.errors import InvalidInstanceError
from kfrob.frobenius import (
    frobenius_numbers,
    g_exact,
    gcd_reduce_g,
    k_frobenius,
    two_var_closed_form,
    verify_g0_lt_g1,
)

small_coprime = st.lists(st.integers(1, 12), min_size=2, max_size=3).filter(lambda a: math.gcd(*a) == 1)


def test_known_values():
    assert k_frobenius((3, 5), 1).f_k == 7
    assert k_frobenius((3, 5), 2).f_k == 22
    assert k_frobenius((1, 1), 3).f_k == 1
    assert k_frobenius((2, 3), 1).f_k == 1
    assert k_frobenius((1, 2), 1).f_k == -1
    assert k_frobenius((1,), 1).f_k == -1
    assert g_exact((3, 5, 8), 14).g_k == 52
    assert g_exact((3, 5, 8), 15).g_k == 51
    assert g_exact((3, 5), 0).g_k == 7


def test_result_fields():
    res = k_frobenius((3, 5, 8), 15, with_g_values=True)
    assert res.f_k == 52 and res.f_k < res.max_rhs_scanned
    assert res.g_values[14] == 52
    assert res.f_k == max(res.g_values.values())
    ex = g_exact((3, 5, 8), 14)
    assert ex.exists and ex.max_rhs_scanned >= 52


def test_exists_flag():
    # (1, 2): b = 1 has one representation but b = 0 is not counted
    ex = g_exact((1, 2), 1)
    assert ex.exists and ex.g_k == 1
    ex = g_exact((1, 2), 0)
    assert not ex.exists and ex.g_k == 0


def test_errors():
    with pytest.raises(InvalidInstanceError, match="gcd"):
        k_frobenius((4, 6), 1)
    with pytest.raises(InvalidInstanceError):
        k_frobenius((3, 5), 0)
    with pytest.raises(InvalidInstanceError):
        k_frobenius((0, 5), 1)
    with pytest.raises(InvalidInstanceError):
        k_frobenius((1,), 2)
    with pytest.raises(InvalidInstanceError):
        two_var_closed_form(4, 6, 1)


def test_closed_form_examples():
    assert two_var_closed_form(3, 5, 1) == 7
    assert two_var_closed_form(2, 3, 5) == 25
    assert two_var_closed_form(1, 1, 1) == -1


@given(st.integers(1, 60), st.integers(1, 60), st.integers(1, 12))
def test_closed_form_agreement(a1, a2, k):
    assume(math.gcd(a1, a2) == 1)
    assert k_frobenius((a1, a2), k).f_k == two_var_closed_form(a1, a2, k)


@given(small_coprime, st.integers(1, 6))
def test_matches_full_table_oracle(a, k):
    assert k_frobenius(a, k).f_k == oracle_frobenius(a, k)


@given(small_coprime, st.integers(0, 5))
def test_g_exact_matches_oracle(a, k):
    assume(not (k == 1 and a == [1]))
    assert g_exact(a, k).g_k == oracle_g_exact(a, k)


@given(small_coprime, st.integers(1, 8))
def test_definition_consistency(a, k):
    res = k_frobenius(a, k)
    table = coin_table(a, res.max_rhs_scanned + 3 * max(a))
    below = [b for b, c in enumerate(table) if c < k]
    assert res.f_k == (below[-1] if below else -1)
    # everything past F_k is >= k-feasible on the scanned window
    assert all(c >= k for c in table[res.f_k + 1:])


@given(small_coprime, st.integers(1, 10))
def test_monotone_in_k(a, k):
    assert k_frobenius(a, k).f_k <= k_frobenius(a, k + 1).f_k


@given(small_coprime, st.lists(st.integers(1, 9), min_size=1, max_size=4))
def test_frobenius_numbers_batch(a, ks):
    got = frobenius_numbers(a, ks)
    assert got == {k: k_frobenius(a, k).f_k for k in ks}


@given(st.integers(2, 20), st.integers(1, 8), st.integers(1, 8), st.integers(2, 4), st.integers(0, 6))
def test_lemma11_identity(a1, p, q, d, j):
    a2, a3 = p * d, q * d
    assume(math.gcd(a1, a2, a3) == 1)
    direct = g_exact((a1, a2, a3), j).g_k
    assert gcd_reduce_g(a1, a2, a3, j) == direct


def test_lemma11_examples():
    assert gcd_reduce_g(3, 10, 14, 0) == 2 * g_exact((3, 5, 7), 0).g_k + 3 == g_exact((3, 10, 14), 0).g_k
    assert gcd_reduce_g(5, 6, 9, 0) == 13 == g_exact((5, 6, 9), 0).g_k
    assert g_exact((2, 3, 5), 0).g_k == 1
    assert gcd_reduce_g(3, 5, 8, 14) == 52


def test_g0_g1_small():
    rep = verify_g0_lt_g1(10)
    assert rep.triples_checked > 0 and rep.violations == []
    assert g_exact((3, 5, 8), 0).g_k == 7 < g_exact((3, 5, 8), 1).g_k
    assert verify_g0_lt_g1(3).triples_checked == 1
    with pytest.raises(InvalidInstanceError):
        verify_g0_lt_g1(2)


def test_g0_g1_workers_agree():
    assert verify_g0_lt_g1(14, workers=2) == verify_g0_lt_g1(14)


def test_duplicates_accepted():
    # the stopping rule never needs strict order
    assert k_frobenius((2, 2, 3), 2).f_k == oracle_frobenius((2, 2, 3), 2)
