import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import pytest

from polycosec import combinatorics as cb
from polycosec.combinatorics import (
    bernoulli,
    binomial,
    get_table,
    stirling1_unsigned,
    stirling2,
    tangent_higher,
)
from polycosec.powerseries import UniSeries, divide, elementary


# -- brute-force oracles ------------------------------------------------------


def set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1 :]


def count_partitions(n, m):
    return sum(1 for p in set_partitions(list(range(n))) if len(p) == m)


def cycle_count(perm):
    seen, cycles = set(), 0
    for start in range(len(perm)):
        if start in seen:
            continue
        cycles += 1
        j = start
        while j not in seen:
            seen.add(j)
            j = perm[j]
    return cycles


def count_cycles(n, m):
    return sum(1 for p in itertools.permutations(range(n)) if cycle_count(p) == m)


# -- binomial -----------------------------------------------------------------


def test_binomial_examples():
    assert binomial(5, 3) == 10
    assert all(binomial(n, 0) == 1 for n in range(12))
    assert binomial(4, 7) == 0
    assert binomial(4, -1) == 0


def test_binomial_matches_math_comb():
    for n in range(40):
        for k in range(-2, n + 3):
            assert binomial(n, k) == (math.comb(n, k) if k >= 0 else 0)


def test_negative_n_rejected():
    with pytest.raises(ValueError):
        binomial(-1, 0)
    with pytest.raises(ValueError):
        stirling2(-1, 0)


# -- Stirling numbers ---------------------------------------------------------


def test_stirling2_examples():
    assert stirling2(3, 2) == 3
    assert stirling2(0, 0) == 1
    assert stirling2(4, 2) == 7


def test_stirling1_examples():
    assert stirling1_unsigned(3, 1) == 2
    assert stirling1_unsigned(3, 2) == 3
    assert all(stirling1_unsigned(n, n) == 1 for n in range(15))


@pytest.mark.parametrize("n", range(7))
def test_stirling_against_enumeration(n):
    for m in range(-1, n + 2):
        assert stirling2(n, m) == (count_partitions(n, m) if m >= 0 else 0)
        assert stirling1_unsigned(n, m) == (count_cycles(n, m) if m >= 0 else 0)


def test_stirling1_row_sums():
    for n in range(16):
        assert sum(stirling1_unsigned(n, m) for m in range(n + 1)) == math.factorial(n)


def test_stirling_tables_nonnegative_integers():
    for kind in ("stirling1_unsigned", "stirling2"):
        for row in get_table(kind).ensure(25):
            assert all(isinstance(v, int) and v >= 0 for v in row)


# -- Bernoulli numbers --------------------------------------------------------


def test_bernoulli_examples():
    assert bernoulli(0) == 1
    assert bernoulli(1) == Fraction(1, 2)
    assert bernoulli(2) == Fraction(1, 6)


def test_bernoulli_against_generating_function():
    # n! [t^n] of t e^t / (e^t - 1)
    order = 31
    e = elementary("exp", order + 1)
    num = (UniSeries.variable(order + 1) * e)
    q = divide(num, e - 1)
    assert q.egf_coefficients() == [bernoulli(n) for n in range(order + 1)]


def test_bernoulli_odd_vanish_and_even_signs():
    for j in range(1, 16):
        assert bernoulli(2 * j + 1) == 0
    for j in range(1, 16):
        assert (bernoulli(2 * j) > 0) == (j % 2 == 1)


# -- higher-order tangent numbers ----------------------------------------------


def test_tangent_examples():
    assert tangent_higher(1, 1) == 1
    assert tangent_higher(2, 1) == 0
    assert tangent_higher(3, 1) == 2


def test_tangent_vanishing_pattern():
    for n in range(20):
        for m in range(1, 22):
            if n < m or (n - m) % 2:
                assert tangent_higher(n, m) == 0


def test_tangent_against_tan_powers():
    order = 30
    tan = elementary("tan", order)
    power = UniSeries.constant(1, order)
    for m in range(1, order + 1):
        power = power * tan
        from_table = UniSeries.from_egf([math.factorial(m) * tangent_higher(j, m) for j in range(order + 1)])
        assert from_table == power, m


def test_tangent_rejects_m_zero():
    with pytest.raises(ValueError):
        tangent_higher(3, 0)


# -- operator identity x^n (d/dx)^n = sum (-1)^(n-m) [n|m] (x d/dx)^m ---------


@pytest.mark.parametrize("n", range(1, 9))
def test_falling_power_operator_identity(n):
    order = 20
    f = divide(UniSeries.constant(1, order), UniSeries([1, 1], order))
    lhs = f
    for _ in range(n):
        lhs = lhs.derivative()
    lhs = lhs.shift_up(n)
    rhs = UniSeries.constant(0, order)
    g = f
    for m in range(1, n + 1):
        g = g.euler()
        rhs = rhs + g.scale((-1) ** (n - m) * stirling1_unsigned(n, m))
    assert lhs == rhs


# -- memoization and concurrency -----------------------------------------------


def test_tables_grow_on_demand():
    cb.reset_tables()
    assert get_table("stirling2").max_index == -1
    stirling2(5, 2)
    assert get_table("stirling2").max_index == 5
    stirling2(3, 1)
    assert get_table("stirling2").max_index == 5
    stirling2(9, 4)
    assert get_table("stirling2").max_index == 9


def test_concurrent_extension_is_deterministic():
    expected = {(n, m): count for n in range(40) for m in range(n + 1) for count in [stirling2(n, m)]}
    exp_b = [bernoulli(n) for n in range(40)]
    cb.reset_tables()
    cells = list(expected)[::-1]

    def work(cell):
        n, m = cell
        return stirling2(n, m), bernoulli(n)

    with ThreadPoolExecutor(max_workers=8) as pool:
        results = list(pool.map(work, cells))
    assert [r[0] for r in results] == [expected[c] for c in cells]
    assert [r[1] for r in results] == [exp_b[n] for n, _ in cells]


def test_unknown_kind():
    with pytest.raises(ValueError):
        cb.CombTable("lah", lambda t, n: ())
