"""Exceptions raised by noncanon."""
from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from .report import ValidationReport


class NoncanonError(Exception):
    """Base class for every error raised by the package."""


class IndexOutOfRange(NoncanonError):
    """A table entry references a missing object or morphism."""


class NotComposable(NoncanonError):
    """Two morphisms, functors or transformations do not compose."""


class ComponentTypeMismatch(NoncanonError):
    """A component of a family has the wrong source or target."""


class NotInvertible(NoncanonError):
    """A morphism required to be an isomorphism has no inverse."""


class InvalidParameter(NoncanonError):
    """A size or truncation parameter is outside its allowed range."""


class SearchSpaceTooLarge(NoncanonError):
    """An exhaustive search would exceed the configured bound."""

    def __init__(self, size: int, bound: int, what: str = "search") -> None:
        """Construct a new instance.

        Args:
            size: The number of candidates the search would visit.
            bound: The configured bound.
            what: What was being searched.
        """
        super().__init__(f"{what}: {size} candidates exceed the bound {bound}")
        self.size = size
        self.bound = bound


class MissingBraiding(NoncanonError):
    """A braiding was required but the monoidal structure carries none."""


class TruncationExceeded(NoncanonError):
    """A tensor or coproduct falls outside the truncated fragment."""


class MissingCoproduct(TruncationExceeded):
    """A coproduct choice lacks a pair that is needed."""


class HypothesisViolated(NoncanonError):
    """A premise of a construction does not hold."""

    def __init__(self, which: str, report: ValidationReport | None = None) -> None:
        """Construct a new instance.

        Args:
            which: The name of the failed premise.
            report: The report that shows the failure, if any.
        """
        super().__init__(f"hypothesis violated: {which}")
        self.which = which
        self.report = report


class NotAnFIsomorphism(NoncanonError):
    """A candidate family fails the f-isomorphism check."""

    def __init__(self, report: ValidationReport) -> None:
        """Construct a new instance."""
        super().__init__(
            f"not an f-isomorphism: {len(report.violations)} violated instances"
        )
        self.report = report


class InternalProofMismatch(NoncanonError):
    """A constructed witness failed its own verification."""


class ParseError(NoncanonError):
    """A fixture document does not match its schema."""

    def __init__(self, key: str, message: str) -> None:
        """Construct a new instance.

        Args:
            key: The offending key path.
            message: A description of the problem.
        """
        super().__init__(f"{key}: {message}")
        self.key = key


class ValidationError(NoncanonError):
    """A loaded fixture fails its module's validator."""

    def __init__(self, document: str, report: ValidationReport) -> None:
        """Construct a new instance."""
        first = report.violations[0] if report.violations else None
        super().__init__(f"{document}: invalid ({first})")
        self.document = document
        self.report = report


class UnresolvedReference(NoncanonError):
    """A fixture references a name that is neither defined nor built in."""

    def __init__(self, name: str) -> None:
        """Construct a new instance."""
        super().__init__(f"unresolved reference: {name}")
        self.name = name


class UnknownCommand(NoncanonError):
    """The runner was asked for a command it does not know."""

    def __init__(self, command: str) -> None:
        """Construct a new instance."""
        super().__init__(f"unknown command: {command}")
        self.command = command
