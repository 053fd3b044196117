"""Poly-Bernoulli numbers ``B_n^(k)`` and ``C_n^(k)``.

``B`` comes from ``Li_k(1 - e^-t) / (1 - e^-t)`` and ``C`` from
``Li_k(1 - e^-t) / (e^t - 1)``.  Both are computed from the Stirling-number
sums (route ``explicit``) and, as an oracle, from the generating function
itself (route ``series``).  Since ``1 - e^-t`` has no constant term, the
polylogarithm truncates to a finite sum for any integer ``k``.
"""
from __future__ import annotations

import enum
from fractions import Fraction
from math import factorial

from .combinatorics import stirling2
from .polycosecant import SequenceTable
from .powerseries import BiSeries, UniSeries, bi_from_rational, divide, elementary
from .verification import Report

_ZERO = Fraction(0)


class PolyBernoulliKind(str, enum.Enum):
    B = "B"
    C = "C"

    def __str__(self) -> str:
        return self.value


def _weight(i: int, k: int) -> Fraction:
    """``1 / i^k``."""
    return Fraction(1, i**k) if k >= 0 else Fraction(i ** (-k))


def pb_explicit(kind, n: int, k: int) -> Fraction:
    kind = PolyBernoulliKind(kind)
    if n < 0:
        raise ValueError("n must be >= 0")
    total = _ZERO
    for i in range(n + 1):
        s = stirling2(n, i) if kind is PolyBernoulliKind.B else stirling2(n + 1, i + 1)
        if s:
            term = factorial(i) * s * _weight(i + 1, k)
            total += -term if i % 2 else term
    return -total if n % 2 else total


def polylog_composed(k: int, order: int) -> UniSeries:
    """``Li_k(1 - e^-t)`` up to ``t^order``."""
    u = 1 - elementary("exp", order).reflect()
    acc = UniSeries.constant(0, order)
    power = u
    for m in range(1, order + 1):
        acc = acc + power.scale(_weight(m, k))
        power = power * u
    return acc


def pb_series_oracle(kind, k: int, n_max: int) -> SequenceTable:
    kind = PolyBernoulliKind(kind)
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    order = n_max + 1
    e = elementary("exp", order)
    den = (1 - e.reflect()) if kind is PolyBernoulliKind.B else (e - 1)
    q = divide(polylog_composed(k, order), den)
    table = SequenceTable(kind.value, (k,))
    for n, v in enumerate(q.egf_coefficients()):
        table.put(n, v, "series")
    return table


def pb_table(kind, k: int, n_max: int, route: str = "explicit") -> SequenceTable:
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    if route == "series":
        return pb_series_oracle(kind, k, n_max)
    if route != "explicit":
        raise ValueError(f"unknown route {route!r} for poly-Bernoulli numbers")
    kind = PolyBernoulliKind(kind)
    table = SequenceTable(kind.value, (k,))
    for n in range(n_max + 1):
        table.put(n, pb_explicit(kind, n, k), "explicit")
    return table


def pb_duality_report(kind, n_max: int, k_max: int) -> Report:
    """``B_n^(-k) == B_k^(-n)`` or ``C_n^(-k-1) == C_k^(-n-1)``."""
    kind = PolyBernoulliKind(kind)
    shift = 0 if kind is PolyBernoulliKind.B else 1
    rep = Report(f"duality-{kind.value}")
    for n in range(n_max + 1):
        for k in range(k_max + 1):
            lhs = pb_explicit(kind, n, -k - shift)
            rhs = pb_explicit(kind, k, -n - shift)
            rep.compare(f"{kind.value}_{n}^({-k - shift}) = {kind.value}_{k}^({-n - shift})", lhs, rhs)
    return rep


def c_generating_function(order_x: int, order_y: int) -> BiSeries:
    """``e^(x+y) / (e^x + e^y - e^(x+y))^2``."""
    ex = elementary("exp", order_x)
    ey = elementary("exp", order_y)
    bx, by = BiSeries.from_x(ex, order_y), BiSeries.from_y(ey, order_x)
    exy = bx * by
    den = bx + by - exy
    return bi_from_rational(exy, den * den)


def c_gf_check(order: int) -> Report:
    """Generating function of ``C_n^(-k-1)`` against the explicit sums on
    an ``(order+1) x (order+1)`` grid, plus its symmetry."""
    if order < 0:
        raise ValueError("order must be >= 0")
    grid = c_generating_function(order, order).egf_grid()
    rep = Report("c-gf")
    for n in range(order + 1):
        for k in range(order + 1):
            rep.compare(f"C_{n}^({-k - 1})", grid[n][k], pb_explicit("C", n, -k - 1))
    asym = [(n, k) for n in range(order + 1) for k in range(n) if grid[n][k] != grid[k][n]]
    rep.check("generating function symmetric in x, y", not asym, f"{len(asym)} asymmetric cells" if asym else "")
    return rep


def explicit_vs_series_report(k_values, n_max: int) -> Report:
    rep = Report("pb-routes")
    for kind in PolyBernoulliKind:
        for k in k_values:
            oracle = pb_series_oracle(kind, k, n_max)
            for n in range(n_max + 1):
                rep.compare(f"{kind.value}_{n}^({k})", pb_explicit(kind, n, k), oracle[n])
    return rep
