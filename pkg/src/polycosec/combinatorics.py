"""Memoized exact tables: binomials, Stirling numbers, Bernoulli numbers and
higher-order tangent numbers.

Every table is grown by recurrence and kept per process.  Readers always see
an immutable snapshot; growing a table happens under a lock and swaps in a
new snapshot, so concurrent lookups never observe a half-built row.

Conventions:

* ``stirling1_unsigned(n, m)`` counts permutations of ``n`` with ``m`` cycles,
  ``stirling2(n, m)`` counts set partitions into ``m`` blocks.  Both are 1 at
  ``(0, 0)`` and 0 outside ``0 <= m <= n``.
* ``bernoulli(1) == 1/2``, i.e. the numbers generated by ``t e^t / (e^t - 1)``.
"""
from __future__ import annotations

import threading
from fractions import Fraction
from math import factorial
from typing import Callable, Sequence

__all__ = [
    "CombTable",
    "KINDS",
    "binomial",
    "stirling1_unsigned",
    "stirling2",
    "bernoulli",
    "tangent_higher",
    "get_table",
    "reset_tables",
]

KINDS = ("binomial", "stirling1_unsigned", "stirling2", "bernoulli", "tangent_higher")


def _pascal_row(prev: Sequence[int], n: int) -> tuple:
    return tuple((prev[m - 1] if m > 0 else 0) + (prev[m] if m < n else 0) for m in range(n + 1))


def _stirling2_row(prev: Sequence[int], n: int) -> tuple:
    # {n|m} = m {n-1|m} + {n-1|m-1}
    row = [0] * (n + 1)
    for m in range(1, n + 1):
        row[m] = (m * prev[m] if m < n else 0) + prev[m - 1]
    return tuple(row)


def _stirling1_row(prev: Sequence[int], n: int) -> tuple:
    # [n|m] = (n-1) [n-1|m] + [n-1|m-1]
    row = [0] * (n + 1)
    for m in range(1, n + 1):
        row[m] = ((n - 1) * prev[m] if m < n else 0) + prev[m - 1]
    return tuple(row)


def _tangent_row(n: int) -> tuple:
    """Row ``T_{n,0..n}`` from the Stirling-number closed form.

    Index 0 is unused (m >= 1) and kept as 0 so rows stay triangular.
    """
    row = [0] * (n + 1)
    for m in range(1, n + 1):
        if (n - m) % 2:
            continue
        total = 0
        for p in range(m, n + 1):
            total += (-2) ** (n - p) * factorial(p) * binomial(p - 1, m - 1) * stirling2(n, p)
        q, r = divmod(total, factorial(m))
        if r:
            raise ArithmeticError(f"T_({n},{m}) is not an integer: {Fraction(total, factorial(m))}")
        row[m] = q if ((n - m) // 2) % 2 == 0 else -q
    return tuple(row)


class CombTable:
    """One growable table of exact numbers.

    ``entries`` is a tuple of rows for the triangular kinds and a tuple of
    values for ``bernoulli``.  ``max_index`` is the largest ``n`` stored.
    """

    def __init__(self, kind: str, grow: Callable[["CombTable", int], tuple]):
        if kind not in KINDS:
            raise ValueError(f"unknown table kind {kind!r}")
        self.kind = kind
        self._grow = grow
        self._entries: tuple = ()
        self._lock = threading.Lock()

    @property
    def max_index(self) -> int:
        return len(self._entries) - 1

    @property
    def entries(self) -> tuple:
        return self._entries

    def ensure(self, n: int) -> tuple:
        """Return a snapshot holding at least indices ``0..n``."""
        snap = self._entries
        if len(snap) > n:
            return snap
        with self._lock:
            if len(self._entries) <= n:
                self._entries = self._grow(self, n)
            return self._entries

    def seed(self, entries: Sequence) -> None:
        """Install precomputed entries (from the on-disk cache)."""
        with self._lock:
            if len(entries) > len(self._entries):
                self._entries = tuple(tuple(r) if isinstance(r, (list, tuple)) else r for r in entries)

    def clear(self) -> None:
        with self._lock:
            self._entries = ()


def _grow_rows(step):
    def grow(table: CombTable, n: int) -> tuple:
        rows = list(table._entries)
        if not rows:
            rows.append((1,))
        for i in range(len(rows), n + 1):
            rows.append(step(rows[-1], i))
        return tuple(rows)

    return grow


def _grow_bernoulli(table: CombTable, n: int) -> tuple:
    # with B_1 = +1/2:  sum_{j=0}^{i} C(i+1, j) B_j = i + 1
    vals = list(table._entries)
    for i in range(len(vals), n + 1):
        if i == 0:
            vals.append(Fraction(1))
            continue
        if i >= 3 and i % 2:
            vals.append(Fraction(0))
            continue
        s = sum((binomial(i + 1, j) * vals[j] for j in range(i)), Fraction(0))
        vals.append((i + 1 - s) / (i + 1))
    return tuple(vals)


def _grow_tangent(table: CombTable, n: int) -> tuple:
    rows = list(table._entries)
    for i in range(len(rows), n + 1):
        rows.append(_tangent_row(i))
    return tuple(rows)


_TABLES = {
    "binomial": CombTable("binomial", _grow_rows(_pascal_row)),
    "stirling2": CombTable("stirling2", _grow_rows(_stirling2_row)),
    "stirling1_unsigned": CombTable("stirling1_unsigned", _grow_rows(_stirling1_row)),
    "bernoulli": CombTable("bernoulli", _grow_bernoulli),
    "tangent_higher": CombTable("tangent_higher", _grow_tangent),
}


def get_table(kind: str) -> CombTable:
    return _TABLES[kind]


def reset_tables() -> None:
    """Drop every memoized table (mostly for tests and cache rebuilds)."""
    for t in _TABLES.values():
        t.clear()


def _tri(kind: str, n: int, m: int) -> int:
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if m < 0 or m > n:
        return 0
    return _TABLES[kind].ensure(n)[n][m]


def binomial(n: int, k: int) -> int:
    """C(n, k), zero when k is outside 0..n."""
    return _tri("binomial", n, k)


def stirling2(n: int, m: int) -> int:
    return _tri("stirling2", n, m)


def stirling1_unsigned(n: int, m: int) -> int:
    return _tri("stirling1_unsigned", n, m)


def bernoulli(n: int) -> Fraction:
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    return _TABLES["bernoulli"].ensure(n)[n]


def tangent_higher(n: int, m: int) -> int:
    """``T_{n,m}``, the coefficients of ``tan(t)^m / m!`` in the ``t^n/n!`` basis."""
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if n < m or (n - m) % 2:
        return 0
    return _TABLES["tangent_higher"].ensure(n)[n][m]
