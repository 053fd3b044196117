"""Truncated formal power series with exact rational coefficients.

A :class:`UniSeries` of order ``N`` keeps the coefficients of ``t^0..t^N``;
everything above ``N`` is unknown rather than zero.  Binary operations on
series of different orders therefore truncate to the smaller order.
:class:`BiSeries` is the same idea on a rectangular grid ``x^a y^b`` with
``a <= order_x`` and ``b <= order_y``.

Nothing here ever converges or evaluates; the only numbers are
:class:`fractions.Fraction`.

    >>> t = UniSeries.variable(5)
    >>> (1 + t) * (1 - t)
    UniSeries([1, 0, -1, 0, 0, 0])
"""
from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Iterable, Sequence, Union

__all__ = [
    "DivisionByNonUnit",
    "CompositionAtUnit",
    "UniSeries",
    "BiSeries",
    "IndexVector",
    "compose",
    "elementary",
    "a_series",
    "a_multi_series",
    "bi_from_rational",
]

Scalar = Union[int, Fraction]
_ZERO = Fraction(0)


class DivisionByNonUnit(ArithmeticError):
    """The divisor cannot be inverted at the retained truncation order."""


class CompositionAtUnit(ValueError):
    """Composition ``f(g)`` requested with ``g(0) != 0``."""


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"series coefficients must be int or Fraction, not {type(c).__name__}")


class UniSeries:
    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[Scalar], order: int | None = None):
        c = [_frac(x) for x in coeffs]
        if order is not None:
            if order < 0:
                raise ValueError("order must be >= 0")
            c = c[: order + 1] + [_ZERO] * (order + 1 - len(c))
        if not c:
            raise ValueError("a series needs at least one coefficient")
        self._c = tuple(c)

    @classmethod
    def _raw(cls, coeffs: Sequence[Fraction]) -> "UniSeries":
        s = object.__new__(cls)
        s._c = tuple(coeffs)
        return s

    @classmethod
    def constant(cls, value: Scalar, order: int) -> "UniSeries":
        return cls([value], order)

    @classmethod
    def variable(cls, order: int) -> "UniSeries":
        return cls([0, 1], order)

    @classmethod
    def from_egf(cls, values: Iterable[Scalar], order: int | None = None) -> "UniSeries":
        """Series with ``t^n`` coefficient ``values[n] / n!``."""
        return cls((Fraction(v) / factorial(n) for n, v in enumerate(values)), order)

    @property
    def order(self) -> int:
        return len(self._c) - 1

    @property
    def coeffs(self) -> tuple:
        return self._c

    def __getitem__(self, i: int) -> Fraction:
        if i < 0 or i > self.order:
            raise IndexError(f"coefficient {i} is beyond order {self.order}")
        return self._c[i]

    def __len__(self) -> int:
        return len(self._c)

    def valuation(self) -> int:
        """Index of the first nonzero coefficient, ``order + 1`` if none."""
        for i, c in enumerate(self._c):
            if c:
                return i
        return len(self._c)

    def truncate(self, order: int) -> "UniSeries":
        if order > self.order:
            raise ValueError(f"cannot raise order {self.order} to {order}")
        return UniSeries._raw(self._c[: order + 1])

    def egf_coefficients(self) -> list:
        """``n! * [t^n]`` for every retained ``n``."""
        return [c * factorial(n) for n, c in enumerate(self._c)]

    # ring operations ------------------------------------------------------

    def _coerce(self, other) -> "UniSeries | None":
        if isinstance(other, UniSeries):
            return other
        if isinstance(other, (int, Fraction)):
            return UniSeries.constant(other, self.order)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = min(len(self._c), len(o._c))
        return UniSeries._raw([a + b for a, b in zip(self._c[:n], o._c[:n])])

    __radd__ = __add__

    def __neg__(self):
        return UniSeries._raw([-a for a in self._c])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, s: Scalar) -> "UniSeries":
        s = _frac(s)
        return UniSeries._raw([s * a for a in self._c])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, UniSeries):
            return NotImplemented
        a, b = self._c, other._c
        n = min(len(a), len(b))
        out = [_ZERO] * n
        # skip zero coefficients: most series here are odd or even
        nz_b = [(j, y) for j, y in enumerate(b[:n]) if y]
        for i in range(n):
            x = a[i]
            if not x:
                continue
            for j, y in nz_b:
                if i + j >= n:
                    break
                out[i + j] += x * y
        return UniSeries._raw(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "UniSeries":
        if not isinstance(e, int) or e < 0:
            return NotImplemented
        result = UniSeries.constant(1, self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("series divided by zero scalar")
            return self.scale(1 / _frac(other))
        if not isinstance(other, UniSeries):
            return NotImplemented
        return divide(self, other)

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return divide(UniSeries.constant(other, self.order), self)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, UniSeries):
            return self._c == other._c
        return NotImplemented

    def __hash__(self):
        return hash(self._c)

    def __repr__(self):
        return "UniSeries([" + ", ".join(str(c) for c in self._c) + "])"

    # calculus ---------------------------------------------------------------

    def derivative(self) -> "UniSeries":
        if self.order == 0:
            raise ValueError("derivative of an order-0 series has no retained coefficients")
        return UniSeries._raw([i * self._c[i] for i in range(1, len(self._c))])

    def euler(self) -> "UniSeries":
        """Apply ``t d/dt``; the order is preserved."""
        return UniSeries._raw([i * c for i, c in enumerate(self._c)])

    def shift_up(self, k: int) -> "UniSeries":
        """Multiply by ``t^k``; the order grows by ``k``."""
        return UniSeries._raw([_ZERO] * k + list(self._c))

    def shift_down(self, k: int) -> "UniSeries":
        """Divide by ``t^k``; the first ``k`` coefficients must vanish."""
        if any(self._c[:k]):
            raise DivisionByNonUnit(f"series has valuation {self.valuation()} < {k}")
        if k > self.order:
            raise DivisionByNonUnit("no coefficients left after the shift")
        return UniSeries._raw(self._c[k:])

    def reflect(self) -> "UniSeries":
        """``f(-t)``."""
        return UniSeries._raw([-c if i % 2 else c for i, c in enumerate(self._c)])

    def compose(self, inner: "UniSeries") -> "UniSeries":
        return compose(self, inner)


def divide(f: UniSeries, g: UniSeries) -> UniSeries:
    """``h`` with ``h * g == f`` up to truncation.

    Common powers of ``t`` are cancelled first, which lowers the order of the
    quotient by ``valuation(g)``.
    """
    v = g.valuation()
    if v > g.order:
        raise DivisionByNonUnit("divisor vanishes at every retained order")
    if f.valuation() < v:
        raise DivisionByNonUnit(f"dividend valuation {f.valuation()} < divisor valuation {v}")
    n = min(f.order, g.order) - v
    if n < 0:
        raise DivisionByNonUnit("no coefficients survive cancelling the common valuation")
    num = f._c[v : v + n + 1]
    den = g._c[v : v + n + 1]
    lead = den[0]
    out = [_ZERO] * (n + 1)
    nz = [(j, d) for j, d in enumerate(den) if d and j]
    for i in range(n + 1):
        s = num[i]
        for j, d in nz:
            if j > i:
                break
            s -= d * out[i - j]
        out[i] = s / lead
    return UniSeries._raw(out)


def compose(f: UniSeries, g: UniSeries) -> UniSeries:
    """``f(g(t))`` by Horner's rule; needs ``g(0) == 0``."""
    if g._c[0] != 0:
        raise CompositionAtUnit(f"inner series has constant term {g._c[0]}")
    n = min(f.order, g.order)
    g = g.truncate(n)
    acc = UniSeries.constant(f._c[n], n)
    for i in range(n - 1, -1, -1):
        acc = acc * g
        if f._c[i]:
            acc = UniSeries._raw((acc._c[0] + f._c[i],) + acc._c[1:])
    return acc


def _exp_coeffs(order: int, sign: int = 1) -> list:
    out, c = [], Fraction(1)
    for i in range(order + 1):
        out.append(c if sign > 0 or i % 2 == 0 else -c)
        c = c / (i + 1)
    return out


def elementary(name: str, order: int) -> UniSeries:
    """Maclaurin truncation of ``exp``, ``sinh``, ``cosh``, ``tanh``, ``sin``,
    ``cos`` or ``tan``.  The two tangents are quotients of the sine/cosine
    pair, not tabulated separately."""
    if order < 0:
        raise ValueError("order must be >= 0")
    e = _exp_coeffs(order)
    if name == "exp":
        return UniSeries._raw(e)
    if name == "sinh":
        return UniSeries._raw([c if i % 2 else _ZERO for i, c in enumerate(e)])
    if name == "cosh":
        return UniSeries._raw([_ZERO if i % 2 else c for i, c in enumerate(e)])
    if name == "sin":
        return UniSeries._raw([(c if i % 4 == 1 else -c) if i % 2 else _ZERO for i, c in enumerate(e)])
    if name == "cos":
        return UniSeries._raw([_ZERO if i % 2 else (c if i % 4 == 0 else -c) for i, c in enumerate(e)])
    if name == "tanh":
        return divide(elementary("sinh", order), elementary("cosh", order))
    if name == "tan":
        return divide(elementary("sin", order), elementary("cos", order))
    raise ValueError(f"unknown elementary function {name!r}")


def _odd_power(m: int, k: int) -> Fraction:
    return Fraction(1, m**k) if k >= 0 else Fraction(m ** (-k))


def a_series(k: int, order: int) -> UniSeries:
    """``A_k(z) = 2 * sum_n z^(2n+1) / (2n+1)^k`` up to ``z^order``."""
    if order < 0:
        raise ValueError("order must be >= 0")
    return UniSeries._raw([2 * _odd_power(i, k) if i % 2 else _ZERO for i in range(order + 1)])


class IndexVector(tuple):
    """Nonempty tuple of integer indices ``(k_1, ..., k_r)``."""

    def __new__(cls, entries: Iterable[int]):
        entries = tuple(entries)
        if not entries:
            raise ValueError("an index vector needs at least one entry")
        for k in entries:
            if not isinstance(k, int) or isinstance(k, bool):
                raise TypeError(f"indices must be integers, got {k!r}")
        return super().__new__(cls, entries)

    @classmethod
    def parse(cls, text: str) -> "IndexVector":
        """Parse ``"1,2,-1"``."""
        parts = [p.strip() for p in text.split(",")]
        if not text.strip() or any(p == "" for p in parts):
            raise ValueError(f"empty entry in index vector {text!r}")
        return cls(int(p) for p in parts)

    @property
    def depth(self) -> int:
        return len(self)

    def lowered(self) -> "IndexVector":
        """The same vector with the last entry decreased by one."""
        return IndexVector(self[:-1] + (self[-1] - 1,))

    def __repr__(self):
        return f"IndexVector({tuple(self)!r})"


def a_multi_series(k: Sequence[int], order: int) -> UniSeries:
    """``A(k_1..k_r; z) = 2^r sum z^{m_r} / (m_1^k_1 ... m_r^k_r)`` over
    ``0 < m_1 < ... < m_r`` with ``m_i = i (mod 2)``.

    Built depth by depth: ``w[m]`` holds the total weight of admissible
    chains ending at ``m``, and a running prefix sum feeds the next depth.
    """
    k = IndexVector(k)
    if order < 0:
        raise ValueError("order must be >= 0")
    w = [_ZERO] * (order + 1)
    for m in range(1, order + 1, 2):
        w[m] = _odd_power(m, k[0])
    for depth in range(2, len(k) + 1):
        nxt = [_ZERO] * (order + 1)
        prefix = _ZERO
        for m in range(1, order + 1):
            if m % 2 == depth % 2 and prefix:
                nxt[m] = prefix * _odd_power(m, k[depth - 1])
            prefix += w[m]
        w = nxt
    scale = 2 ** len(k)
    return UniSeries._raw([scale * c for c in w])


class BiSeries:
    """Grid-truncated series in ``x`` and ``y``; ``coeffs[a][b]`` is ``[x^a y^b]``."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Sequence[Sequence[Scalar]]):
        rows = [tuple(_frac(c) for c in row) for row in coeffs]
        if not rows or not rows[0]:
            raise ValueError("a bivariate series needs at least one coefficient")
        if any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("coefficient grid must be rectangular")
        self._c = tuple(rows)

    @classmethod
    def _raw(cls, rows) -> "BiSeries":
        s = object.__new__(cls)
        s._c = tuple(tuple(r) for r in rows)
        return s

    @classmethod
    def zeros(cls, order_x: int, order_y: int) -> "BiSeries":
        return cls._raw([[_ZERO] * (order_y + 1) for _ in range(order_x + 1)])

    @classmethod
    def constant(cls, value: Scalar, order_x: int, order_y: int) -> "BiSeries":
        rows = [[_ZERO] * (order_y + 1) for _ in range(order_x + 1)]
        rows[0][0] = _frac(value)
        return cls._raw(rows)

    @classmethod
    def from_x(cls, f: UniSeries, order_y: int) -> "BiSeries":
        """Embed a series in ``x`` (constant in ``y``)."""
        z = [_ZERO] * order_y
        return cls._raw([(c, *z) for c in f.coeffs])

    @classmethod
    def from_y(cls, f: UniSeries, order_x: int) -> "BiSeries":
        zero_row = (_ZERO,) * len(f.coeffs)
        return cls._raw([f.coeffs] + [zero_row] * order_x)

    @classmethod
    def from_egf(cls, grid: Sequence[Sequence[Scalar]]) -> "BiSeries":
        """Series whose ``x^a y^b`` coefficient is ``grid[a][b] / (a! b!)``."""
        return cls._raw(
            [[Fraction(v) / (factorial(a) * factorial(b)) for b, v in enumerate(row)] for a, row in enumerate(grid)]
        )

    @property
    def order_x(self) -> int:
        return len(self._c) - 1

    @property
    def order_y(self) -> int:
        return len(self._c[0]) - 1

    @property
    def coeffs(self) -> tuple:
        return self._c

    def __getitem__(self, ab) -> Fraction:
        a, b = ab
        return self._c[a][b]

    def truncate(self, order_x: int, order_y: int) -> "BiSeries":
        if order_x > self.order_x or order_y > self.order_y:
            raise ValueError("cannot raise truncation orders")
        return BiSeries._raw([r[: order_y + 1] for r in self._c[: order_x + 1]])

    def egf_grid(self) -> list:
        """``a! b! [x^a y^b]`` for the whole grid."""
        return [[c * factorial(a) * factorial(b) for b, c in enumerate(r)] for a, r in enumerate(self._c)]

    def _coerce(self, other) -> "BiSeries | None":
        if isinstance(other, BiSeries):
            return other
        if isinstance(other, (int, Fraction)):
            return BiSeries.constant(other, self.order_x, self.order_y)
        return None

    def _dims(self, other: "BiSeries"):
        return min(self.order_x, other.order_x) + 1, min(self.order_y, other.order_y) + 1

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        nx, ny = self._dims(o)
        return BiSeries._raw([[self._c[a][b] + o._c[a][b] for b in range(ny)] for a in range(nx)])

    __radd__ = __add__

    def __neg__(self):
        return BiSeries._raw([[-c for c in r] for r in self._c])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, s: Scalar) -> "BiSeries":
        s = _frac(s)
        return BiSeries._raw([[s * c for c in r] for r in self._c])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, BiSeries):
            return NotImplemented
        nx, ny = self._dims(other)
        out = [[_ZERO] * ny for _ in range(nx)]
        nz_o = [(a2, b2, c) for a2 in range(nx) for b2 in range(ny) if (c := other._c[a2][b2])]
        for a1 in range(nx):
            r1 = self._c[a1]
            for b1 in range(ny):
                c1 = r1[b1]
                if not c1:
                    continue
                for a2, b2, c2 in nz_o:
                    if a1 + a2 < nx and b1 + b2 < ny:
                        out[a1 + a2][b1 + b2] += c1 * c2
        return BiSeries._raw(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(1 / _frac(other))
        if not isinstance(other, BiSeries):
            return NotImplemented
        return bi_from_rational(self, other)

    def __eq__(self, other):
        if isinstance(other, BiSeries):
            return self._c == other._c
        return NotImplemented

    def __hash__(self):
        return hash(self._c)

    def __repr__(self):
        return f"BiSeries(order_x={self.order_x}, order_y={self.order_y})"

    def derivative(self, var: str) -> "BiSeries":
        if var == "x":
            if self.order_x == 0:
                raise ValueError("no x-coefficients left after differentiation")
            return BiSeries._raw([[a * c for c in self._c[a]] for a in range(1, len(self._c))])
        if var == "y":
            if self.order_y == 0:
                raise ValueError("no y-coefficients left after differentiation")
            return BiSeries._raw([[b * r[b] for b in range(1, len(r))] for r in self._c])
        raise ValueError(f"unknown variable {var!r}")

    def reflect(self, x: bool = False, y: bool = False) -> "BiSeries":
        """Substitute ``x -> -x`` and/or ``y -> -y``."""
        return BiSeries._raw(
            [[-c if ((a % 2) * x + (b % 2) * y) % 2 else c for b, c in enumerate(r)] for a, r in enumerate(self._c)]
        )

    def column(self, b: int) -> UniSeries:
        """The ``y^b`` coefficient as a series in ``x``."""
        return UniSeries._raw([r[b] for r in self._c])

    def row(self, a: int) -> UniSeries:
        """The ``x^a`` coefficient as a series in ``y``."""
        return UniSeries._raw(self._c[a])

    def nonzero_offsets(self):
        return [(a, b) for a, r in enumerate(self._c) for b, c in enumerate(r) if c]


def bi_from_rational(num: BiSeries, den: BiSeries) -> BiSeries:
    """Grid-truncated ``num / den``; ``den`` needs a nonzero constant term."""
    lead = den._c[0][0]
    if not lead:
        raise DivisionByNonUnit("bivariate divisor has zero constant term")
    nx, ny = num._dims(den)
    out = [[_ZERO] * ny for _ in range(nx)]
    nz = [(a, b, c) for a in range(nx) for b in range(ny) if (a or b) and (c := den._c[a][b])]
    for a in range(nx):
        for b in range(ny):
            s = num._c[a][b]
            for a2, b2, c in nz:
                if a2 <= a and b2 <= b:
                    s -= c * out[a - a2][b - b2]
            out[a][b] = s / lead
    return BiSeries._raw(out)
