"""Validation reports returned by the checkers."""
from __future__ import annotations

from collections import Counter
from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Any

from .exceptions import NotComposable, NotInvertible, TruncationExceeded


def to_plain(value: Any) -> Any:
    """Convert nested tuples into lists so reports serialize cleanly."""
    if isinstance(value, (tuple, list)):
        return [to_plain(item) for item in value]
    return value


@dataclass(frozen=True)
class Violation:
    """A single violated equation instance."""

    kind: str
    instance: tuple
    detail: str = ""

    def to_dict(self) -> dict:
        """Convert a class instance to a dictionary."""
        result: dict = {"kind": self.kind, "instance": to_plain(self.instance)}
        if self.detail:
            result["detail"] = self.detail
        return result


@dataclass
class ValidationReport:
    """Every violated instance of a family of equations, plus instance counts.

    An empty report means every evaluated instance held.
    """

    subject: str
    violations: list[Violation] = field(default_factory=list)
    counts: Counter = field(default_factory=Counter)

    @property
    def ok(self) -> bool:
        """Return whether no instance was violated."""
        return not self.violations

    def check(self, kind: str, instance: tuple, holds: bool, detail: str = "") -> bool:
        """Count one evaluated instance and record it if it failed."""
        self.counts[kind] += 1
        if not holds:
            self.violations.append(Violation(kind, tuple(instance), detail))
        return holds

    def fail(self, kind: str, instance: tuple, detail: str = "") -> None:
        """Record an instance that could not be evaluated at all."""
        self.check(kind, instance, False, detail)

    def evaluate(
        self, kind: str, instance: tuple, sides: Callable[[], tuple[int, int]]
    ) -> None:
        """Evaluate both sides of one equation instance and record the outcome.

        Instances leaving a partial tensor are skipped; ill-typed composites
        count as violations.
        """
        try:
            left, right = sides()
        except TruncationExceeded:
            return
        except (NotComposable, NotInvertible) as err:
            self.fail(kind, instance, str(err))
            return
        self.check(kind, instance, left == right)

    def merge(self, other: ValidationReport) -> ValidationReport:
        """Absorb the violations and counts of another report."""
        self.violations.extend(other.violations)
        self.counts.update(other.counts)
        return self

    def kinds(self) -> set[str]:
        """Return the kinds of the violated instances."""
        return {violation.kind for violation in self.violations}

    def of_kind(self, kind: str) -> list[Violation]:
        """Return the violations of one kind."""
        return [violation for violation in self.violations if violation.kind == kind]

    def to_dict(self) -> dict:
        """Convert a class instance to a dictionary."""
        return {
            "subject": self.subject,
            "ok": self.ok,
            "counts": dict(sorted(self.counts.items())),
            "violations": [violation.to_dict() for violation in self.violations],
        }

    def __str__(self) -> str:
        """Return a one-line summary."""
        state = "ok" if self.ok else f"{len(self.violations)} violations"
        return f"{self.subject}: {state} ({sum(self.counts.values())} instances)"
