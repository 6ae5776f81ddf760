"""Command line interface for noncanon."""
from __future__ import annotations

from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
import functools
import json
import logging
import time
from typing import Optional

import click

from . import __version__
from .const import (
    DEFAULT_MAX_FAMILY_LEN,
    DEFAULT_MAX_WORD_LEN,
    DEFAULT_SEARCH_BOUND,
    ENV_THREADS,
    LOGGER,
    REPORT_SCHEMA,
)
from .exceptions import (
    InvalidParameter,
    NoncanonError,
    UnknownCommand,
    UnresolvedReference,
)
from .famf import (
    AlphaPrime,
    beta_criterion,
    build_alpha_prime,
    check_coproduct_choice,
    enumerate_binary_isos,
    kz_shortcut,
    preserves_binary_coproducts,
    search_beta,
    search_kz,
)
from .fincat import check_category, check_functor, check_naturality
from .fixtures import FixtureBundle, load_fixture
from .freemono import check_lax_algebra, check_lax_morphism
from .models import KIND_ALPHA, KIND_PHI, KIND_PSI
from .monoidal import (
    check_braiding,
    check_monoidal_category,
    check_monoidal_functor,
    is_strong,
)
from .report import ValidationReport, to_plain
from .strongify import (
    NON_EXISTENCE,
    STRONG,
    CandidatePsi,
    search_f_isomorphisms,
    strongify_end_to_end,
)

_LOGGER = logging.getLogger(__name__)

REPORT_TEXT = "text"
REPORT_STRUCTURED = "structured"

PASS = "pass"
FAIL = "fail"
EXISTS = "exists"


@dataclass
class RunOptions:
    """What a command runs on and at which truncation."""

    max_word_len: int = DEFAULT_MAX_WORD_LEN
    max_family_len: int = DEFAULT_MAX_FAMILY_LEN
    search_bound: int = DEFAULT_SEARCH_BOUND
    threads: int = 1
    categories: Sequence[str] = ()
    monoidal: Sequence[str] = ()
    functors: Sequence[str] = ()
    transformations: Sequence[str] = ()
    coproducts: Sequence[str] = ()
    functor: Optional[str] = None
    phi: Optional[str] = None
    psi: Optional[str] = None
    alpha: Optional[str] = None
    beta: Optional[str] = None
    search: bool = False

    def to_dict(self) -> dict:
        """Convert the options that affect results to a dictionary."""
        return {
            "max_word_len": self.max_word_len,
            "max_family_len": self.max_family_len,
            "search_bound": self.search_bound,
        }


@dataclass
class Section:
    """The verdict on one named object."""

    name: str
    kind: str
    passed: bool
    verdict: str
    reports: list[ValidationReport] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        """Convert a class instance to a dictionary."""
        return {
            "name": self.name,
            "kind": self.kind,
            "passed": self.passed,
            "verdict": self.verdict,
            "reports": [report.to_dict() for report in self.reports],
            "details": self.details,
        }


def _section(name: str, kind: str, reports: list[ValidationReport]) -> Section:
    passed = all(report.ok for report in reports)
    return Section(name, kind, passed, PASS if passed else FAIL, reports)


@dataclass
class Report:
    """The outcome of a command."""

    command: str
    options: RunOptions
    sections: list[Section]
    elapsed: float = 0.0
    fixtures: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        """Return whether every section passed."""
        return all(section.passed for section in self.sections)

    def to_dict(self) -> dict:
        """Convert a class instance to a dictionary.

        Wall time is left out so that repeated runs serialize identically.
        """
        return {
            "schema": REPORT_SCHEMA,
            "command": self.command,
            "options": self.options.to_dict(),
            "passed": self.passed,
            "sections": [section.to_dict() for section in self.sections],
            "fixtures": self.fixtures,
        }

    def render(self, report_format: str = REPORT_TEXT) -> str:
        """Render the report as text or as a JSON document."""
        if report_format == REPORT_STRUCTURED:
            return json.dumps(self.to_dict(), sort_keys=True, ensure_ascii=False, indent=2)
        options = self.options
        lines = [
            f"noncanon {self.command} (max word length {options.max_word_len}, "
            f"max family length {options.max_family_len})"
        ]
        for section in self.sections:
            state = "PASS" if section.passed else "FAIL"
            lines.append(f"  {state}  {section.kind} {section.name}: {section.verdict}")
            lines.extend(f"        {report}" for report in section.reports)
            for report in section.reports:
                lines.extend(
                    f"          {violation.kind} at {to_plain(violation.instance)}"
                    for violation in report.violations[:5]
                )
            for key, value in sorted(section.details.items()):
                if isinstance(value, (bool, int, str)) or value is None:
                    lines.append(f"        {key}: {value}")
        lines.append(f"{'passed' if self.passed else 'failed'} in {self.elapsed:.3f}s")
        return "\n".join(lines)


def _check_monoidal(bundle: FixtureBundle, name: str, options: RunOptions) -> Section:
    M = bundle.monoidal_structure(name)
    reports = [check_category(M.base), check_monoidal_category(M)]
    if M.braiding is not None:
        reports.append(check_braiding(M))
    reports.append(check_lax_algebra(M, options.max_word_len, bound=options.search_bound))
    return _section(name, "monoidal", reports)


def _check_functor(bundle: FixtureBundle, name: str, options: RunOptions) -> Section:
    try:
        F = bundle.monoidal_functor(name)
    except UnresolvedReference:
        return _section(name, "functor", [check_functor(bundle.functor(name))])
    reports = [check_monoidal_functor(F), check_lax_morphism(F, options.max_word_len)]
    section = _section(name, "monoidal functor", reports)
    strength = is_strong(F)
    section.details["strong"] = strength.holds
    return section


def _check_jobs(bundle: FixtureBundle, options: RunOptions) -> list[Callable[[], Section]]:
    jobs: list[Callable[[], Section]] = []
    for name in options.categories:
        jobs.append(
            lambda name=name: _section(
                name, "category", [check_category(bundle.category(name))]
            )
        )
    for name in options.monoidal:
        jobs.append(functools.partial(_check_monoidal, bundle, name, options))
    for name in options.functors:
        jobs.append(functools.partial(_check_functor, bundle, name, options))
    for name in options.transformations:
        jobs.append(
            lambda name=name: _section(
                name, "transformation", [check_naturality(bundle.transformation(name))]
            )
        )
    for name in options.coproducts:
        jobs.append(
            lambda name=name: _section(
                name, "coproducts", [check_coproduct_choice(bundle.coproducts(name))]
            )
        )
    return jobs


def run_check(bundle: FixtureBundle, options: RunOptions) -> list[Section]:
    """Validate every named object; sections keep the order of the options."""
    jobs = _check_jobs(bundle, options)
    if not jobs:
        raise InvalidParameter("check needs at least one object to check")
    # Built-ins are resolved here, before any worker thread runs.
    for name in options.categories:
        bundle.category(name)
    for name in options.monoidal:
        bundle.monoidal_structure(name)
    for name in options.functors:
        bundle.functor(name)
    for name in options.transformations:
        bundle.transformation(name)
    for name in options.coproducts:
        bundle.coproducts(name)
    if options.threads <= 1:
        return [job() for job in jobs]
    with ThreadPoolExecutor(max_workers=options.threads) as executor:
        return list(executor.map(lambda job: job(), jobs))


def run_strongify(bundle: FixtureBundle, options: RunOptions) -> list[Section]:
    """Certify strength of a monoidal functor from φ, from ψ, or by search."""
    name = _require(options.functor, "--functor")
    F = bundle.monoidal_functor(name)
    phi = psi = None
    if options.phi is not None:
        phi = bundle.family(KIND_PHI, name, options.phi)
    elif options.psi is not None:
        psi = CandidatePsi(
            F, options.max_word_len, bundle.family(KIND_PSI, name, options.psi)
        )
    witness = strongify_end_to_end(
        F, phi, psi, options.max_word_len, options.search_bound
    )
    reports = [witness.report] if witness.report is not None else []
    details = witness.to_dict()
    details.pop("report", None)
    _LOGGER.info("%s: %s", name, witness.verdict)
    return [Section(name, "strength", witness.holds, witness.verdict, reports, details)]


def _extension_section(name: str, alpha_prime: AlphaPrime) -> Section:
    details = alpha_prime.to_dict()
    details.pop("report")
    extended = alpha_prime.natural and alpha_prime.preservation.binary
    return Section(
        name,
        "extension",
        extended,
        PASS if extended else FAIL,
        [alpha_prime.report],
        details,
    )


def run_famf(bundle: FixtureBundle, options: RunOptions) -> list[Section]:
    """Decide coproduct preservation from α, β, ψ, or by search."""
    name = _require(options.functor, "--functor")
    F = bundle.functor(name)
    source, target = bundle.choice_for(F.source), bundle.choice_for(F.target)
    preservation = preserves_binary_coproducts(F, source, target)
    sections = [
        Section(
            name,
            "preservation",
            preservation.binary,
            PASS if preservation.binary else FAIL,
            details=preservation.to_dict(),
        )
    ]
    N = options.max_family_len
    if options.alpha is not None:
        alpha = bundle.family(KIND_ALPHA, name, options.alpha)
        alpha_prime = build_alpha_prime(F, alpha, source, target, N)
        sections.append(_extension_section(options.alpha, alpha_prime))
    elif options.beta is not None:
        verdict = beta_criterion(F, bundle.transformation(options.beta), source, target)
        sections.append(
            Section(
                options.beta,
                "beta",
                verdict.holds,
                PASS if verdict.holds else FAIL,
                details={
                    "failing_pair": to_plain(verdict.failing_pair),
                    "induced": [[list(k), v] for k, v in sorted(verdict.induced.items())],
                },
            )
        )
    elif options.psi is not None:
        psi = bundle.family(KIND_PSI, name, options.psi)
        verdict = kz_shortcut(F, psi, source, target, N)
        sections.append(
            Section(
                options.psi,
                "shortcut",
                verdict.holds,
                PASS if verdict.holds else FAIL,
                [verdict.report],
            )
        )
    else:
        found, searched = search_kz(F, source, target, N, options.search_bound)
        details: dict = {"found": len(found), "searched": searched}
        if found:
            details["psi"] = [
                [to_plain(family), m]
                for family, m in sorted(found[0].items(), key=lambda i: (len(i[0]), i[0]))
            ]
        sections.append(
            Section(
                name,
                "search",
                bool(found),
                EXISTS if found else NON_EXISTENCE,
                details=details,
            )
        )
    return sections


def run_search(bundle: FixtureBundle, options: RunOptions) -> list[Section]:
    """Run every exhaustive search on a functor and check that the verdicts agree."""
    name = _require(options.functor, "--functor")
    sections = []
    try:
        F = bundle.monoidal_functor(name)
    except UnresolvedReference:
        F = None
    if F is not None:
        found, searched = search_f_isomorphisms(
            F, options.max_word_len, options.search_bound
        )
        strong = is_strong(F).holds
        sections.append(
            Section(
                name,
                "strength",
                bool(found) == strong,
                STRONG if found else NON_EXISTENCE,
                details={"found": len(found), "searched": searched, "strong": strong},
            )
        )
    U = bundle.functor(name)
    try:
        source, target = bundle.choice_for(U.source), bundle.choice_for(U.target)
    except UnresolvedReference:
        if F is None:
            raise
        return sections
    bound, N = options.search_bound, options.max_family_len
    preservation = preserves_binary_coproducts(U, source, target)
    betas, searched = search_beta(U, source, target, bound)
    psis, _ = search_kz(U, source, target, N, bound)
    isos = enumerate_binary_isos(U, source, target, bound)
    agree = bool(psis) == bool(betas) == preservation.binary
    sections.append(
        Section(
            name,
            "coproducts",
            agree,
            EXISTS if psis else NON_EXISTENCE,
            details={
                "preserves": preservation.binary,
                "betas": len(betas),
                "shortcuts": len(psis),
                "binary_isos": len(isos),
                "searched": searched,
            },
        )
    )
    return sections


def _require(value: Optional[str], flag: str) -> str:
    if value is None:
        raise InvalidParameter(f"{flag} is required")
    return value


COMMANDS: dict[str, Callable[[FixtureBundle, RunOptions], list[Section]]] = {
    "check": run_check,
    "strongify": run_strongify,
    "famf": run_famf,
    "search": run_search,
}


def run(command: str, bundle: FixtureBundle, options: RunOptions) -> Report:
    """Run a command on a bundle.

    Args:
        command: One of `check`, `strongify`, `famf` and `search`.
        bundle: The fixtures the command refers to.
        options: Names and truncations.

    Returns:
        The report; it passed iff every verdict is positive.
    """
    if (runner := COMMANDS.get(command)) is None:
        raise UnknownCommand(command)
    started = time.perf_counter()
    sections = runner(bundle, options)
    report = Report(
        command,
        options,
        sections,
        time.perf_counter() - started,
        list(bundle.documents),
    )
    _LOGGER.info("%s %s", command, "passed" if report.passed else "failed")
    return report


class CommandFailed(click.ClickException):
    """A command stopped on an error rather than a verdict."""

    exit_code = 2


def _common_options(func):
    """Attach the fixture, truncation and report options."""
    decorators = [
        click.option(
            "--fixture",
            "--base",
            "fixtures",
            multiple=True,
            help="Fixture file or built-in name to load first.",
        ),
        click.option(
            "--max-word-len",
            type=click.IntRange(min=1),
            default=DEFAULT_MAX_WORD_LEN,
            show_default=True,
        ),
        click.option(
            "--max-family-len",
            type=click.IntRange(min=2),
            default=DEFAULT_MAX_FAMILY_LEN,
            show_default=True,
        ),
        click.option(
            "--search-bound",
            type=click.IntRange(min=1),
            default=DEFAULT_SEARCH_BOUND,
            show_default=True,
        ),
        click.option(
            "--report",
            "report_format",
            type=click.Choice([REPORT_TEXT, REPORT_STRUCTURED]),
            default=REPORT_TEXT,
            show_default=True,
        ),
        click.option(
            "--threads",
            type=click.IntRange(min=1),
            default=1,
            envvar=ENV_THREADS,
            show_envvar=True,
        ),
    ]
    for decorator in reversed(decorators):
        func = decorator(func)
    return func


def _invoke(command: str, fixtures: Sequence[str], report_format: str, **kwargs) -> None:
    options = RunOptions(**kwargs)
    try:
        bundle = FixtureBundle()
        for source in fixtures:
            load_fixture(source, bundle)
        report = run(command, bundle, options)
    except NoncanonError as err:
        raise CommandFailed(str(err)) from err
    click.echo(report.render(report_format))
    click.get_current_context().exit(0 if report.passed else 1)


@click.group()
@click.version_option(__version__, prog_name="noncanon")
@click.option("-v", "--verbose", count=True, help="Log progress; repeat for debug output.")
def main(verbose: int) -> None:
    """Check coherence and decide strength of finite monoidal functors."""
    level = logging.WARNING
    if verbose == 1:
        level = logging.INFO
    elif verbose > 1:
        level = logging.DEBUG
    logging.basicConfig(format="%(levelname)s %(name)s: %(message)s")
    LOGGER.setLevel(level)


@main.command()
@_common_options
@click.option("--category", "categories", multiple=True)
@click.option("--monoidal", multiple=True)
@click.option("--functor", "functors", multiple=True)
@click.option("--transformation", "transformations", multiple=True)
@click.option("--coproducts", multiple=True)
def check(fixtures, report_format, **kwargs) -> None:
    """Run the coherence checkers on named objects."""
    _invoke("check", fixtures, report_format, **kwargs)


@main.command()
@_common_options
@click.option("--functor", required=True)
@click.option("--phi", help="Build ψ from a named binary isomorphism.")
@click.option("--psi", help="Check a named candidate family.")
@click.option("--search", is_flag=True, help="Search every candidate (default).")
def strongify(fixtures, report_format, **kwargs) -> None:
    """Certify that a monoidal functor is strong, or show that no witness exists."""
    if sum(bool(kwargs[key]) for key in ("phi", "psi", "search")) > 1:
        raise click.UsageError("--phi, --psi and --search are exclusive")
    _invoke("strongify", fixtures, report_format, **kwargs)


@main.command()
@_common_options
@click.option("--functor", required=True)
@click.option("--alpha", help="Extend a named binary isomorphism to all families.")
@click.option("--beta", help="Test a named natural automorphism.")
@click.option("--psi", help="Test a named family over families.")
@click.option("--search", is_flag=True, help="Search every candidate (default).")
def famf(fixtures, report_format, **kwargs) -> None:
    """Decide whether a functor preserves the chosen binary coproducts."""
    if sum(bool(kwargs[key]) for key in ("alpha", "beta", "psi", "search")) > 1:
        raise click.UsageError("--alpha, --beta, --psi and --search are exclusive")
    _invoke("famf", fixtures, report_format, **kwargs)


@main.command()
@_common_options
@click.option("--functor", required=True)
def search(fixtures, report_format, **kwargs) -> None:
    """Run every exhaustive search on a functor and compare the verdicts."""
    _invoke("search", fixtures, report_format, **kwargs)
