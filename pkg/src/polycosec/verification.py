"""Pass/fail bookkeeping shared by every identity check."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction


def fmt(q) -> str:
    """Exact rendering: ``p/q`` in lowest terms, ``p`` when the denominator is 1."""
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class Cell:
    label: str
    ok: bool
    detail: str = ""


@dataclass
class Report:
    name: str
    cells: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def check(self, label: str, ok: bool, detail: str = "") -> bool:
        self.cells.append(Cell(label, bool(ok), detail))
        return bool(ok)

    def compare(self, label: str, lhs, rhs) -> bool:
        ok = lhs == rhs
        detail = fmt(lhs) if ok else f"{fmt(lhs)} != {fmt(rhs)}"
        return self.check(label, ok, detail)

    def note(self, text: str) -> None:
        self.notes.append(text)

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.cells:
            self.cells.append(Cell(prefix + c.label, c.ok, c.detail))
        self.notes.extend(other.notes)

    @property
    def failures(self) -> list:
        return [c for c in self.cells if not c.ok]

    @property
    def passed(self) -> bool:
        return bool(self.cells) and not self.failures

    def summary(self) -> str:
        if not self.cells:
            return "FAIL: 0 (nothing checked)"
        return "PASS" if self.passed else f"FAIL: {len(self.failures)}"

    def lines(self, verbose: bool = True):
        if verbose:
            for c in self.cells:
                status = "ok  " if c.ok else "FAIL"
                yield f"{status} {c.label}" + (f"  {c.detail}" if c.detail else "")
        for n in self.notes:
            yield f"note: {n}"
        yield self.summary()
