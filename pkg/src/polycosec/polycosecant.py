"""Poly-cosecant numbers ``D_n^(k)`` and their multi-index generalization.

``D_n^(k)`` is ``n!`` times the ``t^n`` coefficient of
``A_k(tanh(t/2)) / sinh(t)``.  Four independent ways of computing it live
here:

* ``definition_series`` - expand the generating function directly;
* ``recurrence`` - walk the binomial recurrence away from the trivial
  ``k = 0`` row (``D_0^(0) = 1``, everything else 0);
* ``formula1`` - closed sum over Stirling numbers of both kinds and
  Bernoulli numbers;
* ``formula2`` - closed sum over second-kind Stirling numbers only.

The recurrence is the canonical route for tables; the others are oracles.
The second half of the module carries the bivariate generating functions
of ``D_n^(-k)`` and the two coefficient families used to prove the duality
``D_{2n}^(-2k-1) == D_{2k}^(-2n-1)``.
"""
from __future__ import annotations

import enum
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Sequence

from .combinatorics import bernoulli, binomial, stirling1_unsigned, stirling2
from .powerseries import (
    BiSeries,
    IndexVector,
    UniSeries,
    a_multi_series,
    a_series,
    bi_from_rational,
    compose,
    divide,
    elementary,
)
from .verification import Report, fmt

_ZERO = Fraction(0)
_ONE = Fraction(1)


class DRoute(str, enum.Enum):
    DEFINITION_SERIES = "definition_series"
    RECURRENCE = "recurrence"
    FORMULA1 = "formula1"
    FORMULA2 = "formula2"
    BIVARIATE_F = "bivariate_f"
    BIVARIATE_CAP_F = "bivariate_F"

    def __str__(self) -> str:
        return self.value


@dataclass
class SequenceTable:
    """Values of one family at fixed indices, each tagged with the route
    that produced it."""

    family: str
    indices: tuple
    values: dict = field(default_factory=dict)

    def put(self, n: int, value, route) -> None:
        self.values[n] = (Fraction(value), str(route))

    def __getitem__(self, n: int) -> Fraction:
        return self.values[n][0]

    def __len__(self) -> int:
        return len(self.values)

    def route(self, n: int) -> str:
        return self.values[n][1]

    def as_list(self) -> list:
        return [self.values[n][0] for n in sorted(self.values)]

    def parity_violations(self) -> list:
        """Indices ``n`` whose value must vanish by parity but does not."""
        if self.family == "D":
            bad_parity = 1
        elif self.family == "D_multi":
            bad_parity = len(self.indices) % 2
        else:
            return []
        return [n for n, (v, _) in self.values.items() if n % 2 == bad_parity and v != 0]


def _odd_weight(m: int, e: int) -> Fraction:
    """``1 / m^e`` for any integer ``e``."""
    return Fraction(1, m**e) if e >= 0 else Fraction(m ** (-e))


@lru_cache(maxsize=None)
def half_tanh(order: int) -> UniSeries:
    """``tanh(t/2)``."""
    th = elementary("tanh", order)
    return UniSeries._raw([c / (1 << i) for i, c in enumerate(th.coeffs)])


@lru_cache(maxsize=None)
def _sinh(order: int) -> UniSeries:
    return elementary("sinh", order)


def _gf_quotient(numerator_a: UniSeries, n_max: int) -> UniSeries:
    """``numerator_a(tanh(t/2)) / sinh(t)`` with coefficients up to ``t^n_max``."""
    order = n_max + 1
    return divide(compose(numerator_a, half_tanh(order)), _sinh(order))


# -- route 1: the generating function ----------------------------------------


def d_via_series(k: int, n_max: int) -> SequenceTable:
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    q = _gf_quotient(a_series(k, n_max + 1), n_max)
    table = SequenceTable("D", (k,))
    for n, v in enumerate(q.egf_coefficients()):
        table.put(n, v, DRoute.DEFINITION_SERIES)
    return table


# -- route 2: the recurrence --------------------------------------------------

_rows: dict = {}
_rows_lock = threading.Lock()


def _lower_row(upper: Sequence[Fraction]) -> tuple:
    # D_n^(k-1) = sum_m C(n+1, 2m+1) D_{n-2m}^(k)
    return tuple(
        sum((binomial(n + 1, 2 * m + 1) * upper[n - 2 * m] for m in range(n // 2 + 1)), _ZERO)
        for n in range(len(upper))
    )


def _raise_row(lower: Sequence[Fraction]) -> tuple:
    # (n+1) D_n^(k) = D_n^(k-1) - sum_{m>=1} C(n+1, 2m+1) D_{n-2m}^(k)
    row = [_ONE]
    for n in range(1, len(lower)):
        s = lower[n]
        for m in range(1, n // 2 + 1):
            s -= binomial(n + 1, 2 * m + 1) * row[n - 2 * m]
        row.append(s / (n + 1))
    return tuple(row)


def d_row(k: int, n_max: int) -> tuple:
    """``(D_0^(k), ..., D_{n_max}^(k))`` by the recurrence, memoized per ``k``."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    need = n_max + 1
    row = _rows.get(k)
    if row is not None and len(row) >= need:
        return row[:need]
    with _rows_lock:
        step = 1 if k > 0 else -1
        j = k
        while j != 0 and len(_rows.get(j, ())) < need:
            j -= step
        if j == 0:
            cur = (_ONE,) + (_ZERO,) * n_max
            if len(_rows.get(0, ())) < need:
                _rows[0] = cur
        else:
            cur = _rows[j][:need]
        while j != k:
            j += step
            cur = _raise_row(cur) if step > 0 else _lower_row(cur)
            if len(_rows.get(j, ())) < need:
                _rows[j] = cur
        return cur


def d_via_recurrence(k: int, n_max: int) -> SequenceTable:
    table = SequenceTable("D", (k,))
    for n, v in enumerate(d_row(k, n_max)):
        table.put(n, v, DRoute.RECURRENCE)
    return table


def poly_cosecant(n: int, k: int) -> Fraction:
    """``D_n^(k)`` via the canonical route."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return d_row(k, n)[n]


# -- routes 3 and 4: explicit sums ------------------------------------------


@lru_cache(maxsize=None)
def _formula1_inner(n: int, m: int) -> Fraction:
    s = _ZERO
    for p in range(1, 2 * m + 2):
        s1 = stirling1_unsigned(2 * m + 1, p)
        for q in range(0, n - 2 * m + 1):
            j = p + q + 1
            if j % 2:  # B_j = 0 for odd j >= 3, and j >= 2 here
                continue
            s += (2**j - 1) * binomial(n, q) * s1 * stirling2(n - q, 2 * m) * bernoulli(j) / j
    return s


def d_via_formula1(k: int, n: int) -> Fraction:
    if n < 0:
        raise ValueError("n must be >= 0")
    return 4 * sum((_formula1_inner(n, m) * _odd_weight(2 * m + 1, k + 1) for m in range(n // 2 + 1)), _ZERO)


@lru_cache(maxsize=None)
def _formula2_inner(n: int, m: int) -> Fraction:
    s = _ZERO
    for p in range(2 * m, n + 1):
        term = Fraction(factorial(p + 1) * binomial(p, 2 * m) * stirling2(n + 1, p + 1), 1 << p)
        s += -term if p % 2 else term
    return s


def d_via_formula2(k: int, n: int) -> Fraction:
    if n < 0:
        raise ValueError("n must be >= 0")
    return sum((_formula2_inner(n, m) * _odd_weight(2 * m + 1, k + 1) for m in range(n // 2 + 1)), _ZERO)


def _table_from(fn, k: int, n_max: int, route: DRoute) -> SequenceTable:
    table = SequenceTable("D", (k,))
    for n in range(n_max + 1):
        table.put(n, fn(k, n), route)
    return table


def d_table(k: int, n_max: int, route: str = "recurrence") -> SequenceTable:
    """``D_0^(k) .. D_{n_max}^(k)`` along the named route."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    route = DRoute(route)
    if route is DRoute.RECURRENCE:
        return d_via_recurrence(k, n_max)
    if route is DRoute.DEFINITION_SERIES:
        return d_via_series(k, n_max)
    if route is DRoute.FORMULA1:
        return _table_from(d_via_formula1, k, n_max, route)
    if route is DRoute.FORMULA2:
        return _table_from(d_via_formula2, k, n_max, route)
    if route is DRoute.BIVARIATE_F:
        return d_via_bivariate_f(k, n_max)
    return d_via_bivariate_cap_f(k, n_max)


def routes_report(k_values, n_max: int) -> Report:
    """All four routes agree cell by cell, and odd-index values vanish."""
    rep = Report("routes-D")
    for k in k_values:
        series = d_via_series(k, n_max)
        rec = d_row(k, n_max)
        for n in range(n_max + 1):
            vals = (series[n], rec[n], d_via_formula1(k, n), d_via_formula2(k, n))
            ok = len(set(vals)) == 1 and (n % 2 == 0 or vals[0] == 0)
            detail = fmt(vals[0]) if ok else " / ".join(fmt(v) for v in vals)
            rep.check(f"k={k} n={n}", ok, detail)
    return rep


# -- bivariate generating functions ------------------------------------------


@lru_cache(maxsize=None)
def _exp2(order_x: int, order_y: int, sx: int, sy: int) -> BiSeries:
    """``exp(sx*x + sy*y)`` on the grid, ``sx, sy`` in ``{-1, 0, 1}``."""

    def axis(s: int, order: int) -> tuple:
        if s == 0:
            return UniSeries.constant(1, order).coeffs
        e = elementary("exp", order)
        return (e if s > 0 else e.reflect()).coeffs

    ex, ey = axis(sx, order_x), axis(sy, order_y)
    return BiSeries._raw([[u * v for v in ey] for u in ex])


def f_bivariate_closed(order_x: int, order_y: int) -> BiSeries:
    """The rational closed form for ``sum D_n^(-k) x^n/n! y^k/k!``."""
    _check_orders(order_x, order_y)
    ex, emx = _exp2(order_x, order_y, 1, 0), _exp2(order_x, order_y, -1, 0)
    ey = _exp2(order_x, order_y, 0, 1)
    exy, emxy = _exp2(order_x, order_y, 1, 1), _exp2(order_x, order_y, -1, 1)
    ey1 = ey - 1
    first = bi_from_rational(ex * ey1, 1 + ex + ey - exy)
    second = bi_from_rational(emx * ey1, 1 + emx + ey - emxy)
    return first + second


def f_bivariate_definitional(order_x: int, order_y: int) -> BiSeries:
    """``sum D_n^(-k) x^n/n! y^k/k!`` assembled from generating-function rows."""
    _check_orders(order_x, order_y)
    cols = [d_via_series(-k, order_x).as_list() for k in range(order_y + 1)]
    return BiSeries.from_egf([[cols[k][n] for k in range(order_y + 1)] for n in range(order_x + 1)])


def big_g(order_x: int, order_y: int) -> BiSeries:
    """``G(x, y) = e^(x+y) / (1 + e^x + e^y - e^(x+y))^2``."""
    _check_orders(order_x, order_y)
    ex, ey = _exp2(order_x, order_y, 1, 0), _exp2(order_x, order_y, 0, 1)
    exy = _exp2(order_x, order_y, 1, 1)
    den = 1 + ex + ey - exy
    return bi_from_rational(exy, den * den)


def f_cap(order_x: int, order_y: int) -> BiSeries:
    """``F = G(x,y) + G(x,-y) + G(-x,y) + G(-x,-y)``; its
    ``x^(2n)/(2n)! y^(2k)/(2k)!`` coefficient is ``D_{2n}^(-2k-1)``."""
    g = big_g(order_x, order_y)
    return g + g.reflect(y=True) + g.reflect(x=True) + g.reflect(x=True, y=True)


def _check_orders(*orders: int) -> None:
    if any(o < 0 for o in orders):
        raise ValueError("orders must be >= 0")


def d_via_bivariate_f(k: int, n_max: int) -> SequenceTable:
    """Read ``D_n^(k)`` for ``k <= -1`` off the closed form of ``f``."""
    if k > -1:
        raise ValueError("the closed form of f only covers k <= -1")
    grid = f_bivariate_closed(n_max, -k).egf_grid()
    table = SequenceTable("D", (k,))
    for n in range(n_max + 1):
        table.put(n, grid[n][-k], DRoute.BIVARIATE_F)
    return table


def d_via_bivariate_cap_f(k: int, n_max: int) -> SequenceTable:
    """Read ``D_n^(k)`` for odd negative ``k`` off ``F``."""
    if k > -1 or k % 2 == 0:
        raise ValueError("F only covers odd k <= -1")
    j = -k - 1
    grid = f_cap(n_max, j).egf_grid()
    table = SequenceTable("D", (k,))
    for n in range(n_max + 1):
        table.put(n, grid[n][j], DRoute.BIVARIATE_CAP_F)
    return table


def duality_grid_from_f_cap(n_max: int, k_max: int) -> list:
    """``grid[n][k] = D_{2n}^(-2k-1)`` extracted from ``F``."""
    g = f_cap(2 * n_max, 2 * k_max).egf_grid()
    return [[g[2 * n][2 * k] for k in range(k_max + 1)] for n in range(n_max + 1)]


def duality_report(n_max: int, k_max: int) -> Report:
    """``D_{2n}^(-2k-1) == D_{2k}^(-2n-1)`` via the recurrence."""
    _check_orders(n_max, k_max)
    rep = Report("duality-D")
    top = 2 * max(n_max, k_max)
    for n in range(n_max + 1):
        for k in range(k_max + 1):
            lhs = d_row(-2 * k - 1, top)[2 * n]
            rhs = d_row(-2 * n - 1, top)[2 * k]
            rep.compare(f"D_{2 * n}^({-2 * k - 1}) = D_{2 * k}^({-2 * n - 1})", lhs, rhs)
    return rep


def f_cap_report(n_max: int, k_max: int) -> Report:
    """The ``F`` grid matches the recurrence, is symmetric, and has only
    even-even coefficients."""
    rep = Report("F-grid")
    F = f_cap(2 * n_max, 2 * k_max)
    odd = [(a, b) for a, b in F.nonzero_offsets() if a % 2 or b % 2]
    rep.check("F even in x and y", not odd, f"{len(odd)} odd coefficients" if odd else "")
    grid = F.egf_grid()
    top = 2 * max(n_max, k_max)
    for n in range(n_max + 1):
        for k in range(k_max + 1):
            rep.compare(f"F[{2 * n},{2 * k}] = D_{2 * n}^({-2 * k - 1})", grid[2 * n][2 * k], d_row(-2 * k - 1, top)[2 * n])
    return rep


def f_constant_report(order: int) -> tuple:
    """Compare the definitional and closed forms of ``f``.

    Returns ``(report, constant)``: the report checks that every nonconstant
    coefficient of the difference vanishes, ``constant`` is the measured
    constant term of ``f_definitional - f_closed``.
    """
    diff = f_bivariate_definitional(order, order) - f_bivariate_closed(order, order)
    rep = Report("f-constant")
    nonconst = [(a, b) for a, b in diff.nonzero_offsets() if a or b]
    for a, b in nonconst:
        rep.check(f"[x^{a} y^{b}]", False, fmt(diff[a, b]))
    rep.check(f"nonconstant difference on {order + 1}x{order + 1} grid is zero", not nonconst)
    constant = diff[0, 0]
    rep.note(f"constant difference f_def - f_closed = {fmt(constant)}")
    return rep, constant


# -- sinh-operator coefficients behind the duality ------------------------------


@dataclass(frozen=True)
class DualCoeffs:
    """``a[m][i]`` for ``0 <= i <= m`` and ``btilde[m][n]`` for ``0 <= n <= m``."""

    a: tuple
    btilde: tuple


def dual_coeffs(m_max: int) -> DualCoeffs:
    if m_max < 0:
        raise ValueError("m_max must be >= 0")

    def at(row, i):
        return row[i] if 0 <= i < len(row) else _ZERO

    a = [(_ONE,)]
    bt = [(_ONE,)]
    for m in range(1, m_max + 1):
        pa, pb = a[-1], bt[-1]
        a.append(
            tuple(
                (i * (2 * i - 1) * at(pa, i - 1) - (2 * i + 1) ** 2 * at(pa, i) + (i + 1) * (2 * i + 3) * at(pa, i + 1))
                / 2
                for i in range(m + 1)
            )
        )
        # coefficient of the middle term is (2n+1), not its square
        bt.append(
            tuple(
                Fraction(2 * n + 1, 2) * (n * at(pb, n - 1) - (2 * n + 1) * at(pb, n) + (n + 1) * at(pb, n + 1))
                for n in range(m + 1)
            )
        )
    return DualCoeffs(tuple(a), tuple(bt))


def btilde_by_extraction(m_max: int) -> list:
    """``2 * (d/dx)^(2m+1) tanh(x/2)^(2n+1)`` at ``x = 0``, straight from the
    series of ``tanh(x/2)``; an oracle for the ``btilde`` recursion."""
    order = 2 * m_max + 1
    th = half_tanh(order)
    sq = th * th
    power = th
    cols = []
    for n in range(m_max + 1):
        cols.append(power)
        power = power * sq
    return [[2 * factorial(2 * m + 1) * cols[n][2 * m + 1] for n in range(m + 1)] for m in range(m_max + 1)]


def _scaled(name: str, c: int, order: int) -> UniSeries:
    """``sinh(c x)`` or ``cosh(c x)``."""
    base = elementary(name, order).coeffs
    return UniSeries._raw([v * c**i for i, v in enumerate(base)])


def sinh_operator_power(m: int, order: int) -> UniSeries:
    """``(sinh x * d/dx)^(2m) sinh x`` up to ``x^order``."""
    start = order + 2 * m
    sh = elementary("sinh", start)
    s = sh
    for _ in range(2 * m):
        d = s.derivative()
        s = d * sh.truncate(d.order)
    return s


def gh_crosscheck(m_max: int, order: int) -> Report:
    """Cross-check the sinh-operator coefficients against the duality.

    (i) the operator identity ``(sinh x d/dx)^(2m) sinh x = sum a_i sinh((2i+1)x)``,
    (ii) ``(2i+1) a_i == btilde_i`` for the two recursions,
    (iii) ``g_m(x)``, the ``y^(2m)`` part of ``F``, computed three ways: by the
    operator, by its cosh expansion, and read off ``F`` itself; likewise
    ``h_m(y)`` against the ``x^(2m)`` part of ``F``.
    """
    _check_orders(m_max, order)
    rep = Report("gh")
    dc = dual_coeffs(m_max)
    F = f_cap(order, max(order, 2 * m_max)).egf_grid()
    for m in range(m_max + 1):
        op = sinh_operator_power(m, order + 1)
        expansion = sum((_scaled("sinh", 2 * i + 1, order + 1).scale(dc.a[m][i]) for i in range(m + 1)),
                        UniSeries.constant(0, order + 1))
        rep.check(f"(i) m={m} operator identity", op == expansion)
        for i in range(m + 1):
            rep.compare(f"(ii) m={m} i={i} (2i+1)a = btilde", (2 * i + 1) * dc.a[m][i], dc.btilde[m][i])
        g_op = op.derivative().egf_coefficients()
        g_cosh = sum(
            (_scaled("cosh", 2 * i + 1, order).scale((2 * i + 1) * dc.a[m][i]) for i in range(m + 1)),
            UniSeries.constant(0, order),
        ).egf_coefficients()
        g_from_f = [F[a][2 * m] for a in range(order + 1)]
        rep.check(f"(iii) m={m} g_m operator = cosh expansion", g_op == g_cosh)
        rep.check(f"(iii) m={m} g_m = y^{2 * m} part of F", g_cosh == g_from_f)
        d_col = d_row(-2 * m - 1, order)
        rep.check(f"(iii) m={m} g_m = D_n^({-2 * m - 1}) row", g_cosh == list(d_col))
        if 2 * m <= order:
            h = sum(
                (_scaled("cosh", 2 * n + 1, order).scale(dc.btilde[m][n]) for n in range(m + 1)),
                UniSeries.constant(0, order),
            ).egf_coefficients()
            rep.check(f"(iii) m={m} h_m = x^{2 * m} part of F", h == [F[2 * m][b] for b in range(order + 1)])
    return rep


def dual_report(m_max: int, op_m_max: int, op_order: int, extract_m_max: int) -> Report:
    """All sinh-operator coefficient checks, at acceptance bounds."""
    rep = Report("dual-coeffs")
    dc = dual_coeffs(m_max)
    for m in range(m_max + 1):
        for i in range(m + 1):
            rep.compare(f"m={m} i={i} (2i+1)a = btilde", (2 * i + 1) * dc.a[m][i], dc.btilde[m][i])
    for m in range(op_m_max + 1):
        op = sinh_operator_power(m, op_order)
        expansion = sum(
            (_scaled("sinh", 2 * i + 1, op_order).scale(dc.a[m][i]) for i in range(m + 1)),
            UniSeries.constant(0, op_order),
        )
        rep.check(f"m={m} operator identity at order {op_order}", op == expansion)
    extracted = btilde_by_extraction(extract_m_max)
    for m in range(extract_m_max + 1):
        for n in range(m + 1):
            rep.compare(f"m={m} n={n} extracted btilde", extracted[m][n], dc.btilde[m][n])
    return rep


# -- multi-index ------------------------------------------------------------


def d_multi_via_series(k: Sequence[int], n_max: int) -> SequenceTable:
    """``D_n^(k_1..k_r)`` from ``A(k_1..k_r; tanh(t/2)) / sinh t``."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    k = IndexVector(k)
    q = _gf_quotient(a_multi_series(k, n_max + 1), n_max)
    table = SequenceTable("D_multi", tuple(k))
    for n, v in enumerate(q.egf_coefficients()):
        table.put(n, v, DRoute.DEFINITION_SERIES)
    return table


def d_multi_recurrence_check(k: Sequence[int], n_max: int) -> Report:
    """``D_n^(k_1..k_r - 1) == sum_m C(n+1, 2m+1) D_{n-2m}^(k_1..k_r)``."""
    k = IndexVector(k)
    lower = d_multi_via_series(k.lowered(), n_max)
    upper = d_multi_via_series(k, n_max)
    rep = Report("multi-recurrence")
    label = ",".join(map(str, k))
    for n in range(n_max + 1):
        rhs = sum((binomial(n + 1, 2 * m + 1) * upper[n - 2 * m] for m in range(n // 2 + 1)), _ZERO)
        rep.compare(f"k=({label}) n={n}", lower[n], rhs)
    return rep
