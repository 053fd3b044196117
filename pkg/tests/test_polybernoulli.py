from fractions import Fraction

import pytest

from polycosec import polybernoulli as pb
from polycosec.combinatorics import bernoulli

F = Fraction


def test_explicit_examples():
    assert pb.pb_explicit("B", 1, 1) == F(1, 2)
    assert pb.pb_explicit("C", 1, 1) == F(-1, 2)
    # single surviving term i = 1: -(-1 * 1! * {1|1} * 2)
    assert pb.pb_explicit("B", 1, -1) == 2


def test_k_one_gives_bernoulli_numbers():
    b = pb.pb_series_oracle("B", 1, 16)
    c = pb.pb_series_oracle("C", 1, 16)
    assert b.as_list() == [bernoulli(n) for n in range(17)]
    assert c[1] == F(-1, 2)
    assert all(c[n] == b[n] for n in range(2, 17))


@pytest.mark.parametrize("k", [-5, -2, 0, 3])
def test_leading_term_is_one(k):
    assert pb.pb_series_oracle("B", k, 3)[0] == 1
    assert pb.pb_explicit("C", 0, k) == 1


@pytest.mark.parametrize("kind", ["B", "C"])
@pytest.mark.parametrize("k", range(-4, 5))
def test_explicit_matches_series(kind, k):
    assert pb.pb_table(kind, k, 14).as_list() == pb.pb_series_oracle(kind, k, 14).as_list()


def test_duality_examples():
    # B_2^(-1) = sum_i (-1)^i i! {2|i} (i+1) = -2 + 6
    assert pb.pb_explicit("B", 2, -1) == 4 == pb.pb_explicit("B", 1, -2)
    assert pb.pb_explicit("C", 1, -1) == 1 == pb.pb_explicit("C", 0, -2)


@pytest.mark.parametrize("kind", ["B", "C"])
def test_duality_grids(kind):
    rep = pb.pb_duality_report(kind, 9, 9)
    assert rep.passed and len(rep.cells) == 100


def test_negative_index_values_are_integers():
    for n in range(8):
        for k in range(8):
            assert pb.pb_explicit("B", n, -k).denominator == 1


def test_c_generating_function():
    assert pb.c_generating_function(0, 0)[0, 0] == 1
    rep = pb.c_gf_check(6)
    assert rep.passed


def test_table_routes():
    assert pb.pb_table("C", 2, 4).route(3) == "explicit"
    assert pb.pb_table("C", 2, 4, "series").route(3) == "series"
    with pytest.raises(ValueError):
        pb.pb_table("B", 2, 4, "formula1")
    with pytest.raises(ValueError):
        pb.pb_explicit("D", 1, 1)
