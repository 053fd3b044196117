"""The acceptance criteria as runnable checks.

Each criterion returns a :class:`~polycosec.verification.Report`; ``run``
times it against its budget.  ``quick=True`` shrinks the bounds for a fast
smoke run (used by ``polycosec selftest --quick``).
"""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from fractions import Fraction

from . import polybernoulli as pb
from . import polycosecant as pc
from .powerseries import a_series, compose, elementary
from .verification import Report, fmt


def criterion_1(quick: bool = False) -> Report:
    expected = [[1], [1, 1], [1, 2, 1], [1, 4, 4, 1], [1, 8, 13, 8, 1]]
    grid = pc.big_g(4, 4).egf_grid()
    rep = Report("4G grid through total degree 4")
    for s, row in enumerate(expected):
        got = [4 * grid[a][s - a] for a in range(s, -1, -1)]
        rep.check(f"degree {s}", got == row, ",".join(fmt(v) for v in got))
    return rep


def criterion_2(quick: bool = False) -> Report:
    order = 20 if quick else 50
    lhs = compose(a_series(0, order), pc.half_tanh(order))
    rep = Report("A_0(tanh(t/2)) = sinh t")
    rep.check(f"through order {order}", lhs == elementary("sinh", order))
    return rep


def criterion_3(quick: bool = False) -> Report:
    k_max, n_max = (3, 12) if quick else (8, 30)
    return pc.routes_report(range(-k_max, k_max + 1), n_max)


def criterion_4(quick: bool = False) -> Report:
    n_dual, n_grid = (6, 4) if quick else (15, 10)
    rep = Report("duality")
    rep.extend(pc.duality_report(n_dual, n_dual))
    rep.extend(pc.f_cap_report(n_grid, n_grid))
    return rep


def criterion_5(quick: bool = False) -> Report:
    if quick:
        return pc.dual_report(6, 4, 12, 3)
    return pc.dual_report(12, 8, 20, 6)


def criterion_6(quick: bool = False) -> Report:
    rep, _constant = pc.f_constant_report(9 if quick else 19)
    return rep


def criterion_7(quick: bool = False) -> Report:
    k_max, n_max, dual, cgf = (3, 10, 6, 4) if quick else (6, 20, 11, 7)
    rep = Report("poly-Bernoulli")
    rep.extend(pb.explicit_vs_series_report(range(-k_max, k_max + 1), n_max))
    rep.extend(pb.pb_duality_report("B", dual, dual))
    rep.extend(pb.pb_duality_report("C", dual, dual))
    rep.extend(pb.c_gf_check(cgf))
    return rep


def criterion_8(quick: bool = False) -> Report:
    r_max, n_max = (2, 10) if quick else (3, 16)
    rep = Report("multi-index recurrence")
    for r in range(1, r_max + 1):
        for k in itertools.product(range(3), repeat=r):
            rep.extend(pc.d_multi_recurrence_check(k, n_max))
    for k in range(3):
        multi = pc.d_multi_via_series((k,), n_max).as_list()
        rep.check(f"r=1 k={k} equals single-index series", multi == pc.d_via_series(k, n_max).as_list())
        rep.check(f"r=1 k={k} equals recurrence rows", multi == list(pc.d_row(k, n_max)))
    return rep


def criterion_9(quick: bool = False) -> Report:
    rep = Report("spot values")
    rep.compare("D_2^(1)", pc.poly_cosecant(2, 1), Fraction(-1, 3))
    rep.compare("D_4^(1)", pc.poly_cosecant(4, 1), Fraction(7, 15))
    rep.compare("D_4^(1) by series", pc.d_via_series(1, 4)[4], Fraction(7, 15))
    rep.compare("D_2^(-3)", pc.poly_cosecant(2, -3), 13)
    for k in range(-12, 13):
        rep.compare(f"D_0^({k})", pc.poly_cosecant(0, k), 1)
    for k in range(-12, 13):
        row = pc.d_row(k, 30)
        odd = [n for n in range(1, 31, 2) if row[n]]
        rep.check(f"D_odd^({k}) = 0 for n <= 30", not odd)
    return rep


@dataclass(frozen=True)
class Criterion:
    number: int
    title: str
    check: object
    budget: float  # seconds


CRITERIA = (
    Criterion(1, "4G coefficient grid", criterion_1, 1.0),
    Criterion(2, "A_0(tanh(t/2)) = sinh t", criterion_2, 1.0),
    Criterion(3, "four-route agreement for D", criterion_3, 30.0),
    Criterion(4, "duality and F grid", criterion_4, 20.0),
    Criterion(5, "sinh-operator coefficients", criterion_5, 20.0),
    Criterion(6, "f definitional vs closed form", criterion_6, 10.0),
    Criterion(7, "poly-Bernoulli routes and dualities", criterion_7, 15.0),
    Criterion(8, "multi-index recurrence", criterion_8, 30.0),
    Criterion(9, "spot values", criterion_9, 5.0),
)

SELFTEST_BUDGET = 180.0


@dataclass(frozen=True)
class Outcome:
    criterion: Criterion
    report: Report
    seconds: float

    @property
    def in_budget(self) -> bool:
        return self.seconds < self.criterion.budget

    @property
    def passed(self) -> bool:
        return self.report.passed and self.in_budget

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        c = self.criterion
        extra = "" if self.report.passed else f" ({len(self.report.failures)} failed cells)"
        if not self.in_budget:
            extra += " (over budget)"
        return (
            f"{status} criterion {c.number}: {c.title} - {len(self.report.cells)} checks, "
            f"{self.seconds:.2f}s / {c.budget:.0f}s{extra}"
        )


def run(criterion: Criterion, quick: bool = False) -> Outcome:
    start = time.perf_counter()
    rep = criterion.check(quick)
    return Outcome(criterion, rep, time.perf_counter() - start)
