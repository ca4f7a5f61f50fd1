"""
Tab-separated result, verification and bench files with a ``#`` header block.

Result file::

    # ecii-results v1
    # kb.sha256=<hex>
    # time.parse=<ms>          (one line per phase)
    # materializer.invocations=<n>
    # summary.alpha3.top=<x>   (only when α3 was computed)
    rank<TAB>alpha2<TAB>length<TAB>expression[<TAB>alpha3]
"""

from fractions import Fraction
from typing import Iterable

from ..core.exceptions import ConfigException
from ..models.report import (
    BenchRow,
    PhaseTimings,
    ResultReport,
    SolutionRow,
    VerificationRow,
)

RESULTS_HEADER = "# ecii-results v1"
VERIFY_HEADER = "# ecii-verify v1"
BENCH_HEADER = "# ecii-bench v1"

BENCH_COLUMNS = (
    "size",
    "reps",
    *(f"{phase}_ms" for phase in PhaseTimings.PHASES),
    "best_alpha2",
    "invocations_ok",
    "single_sample",
)


def format_score(value: Fraction) -> str:
    return str(float(value))


def parse_score(text: str) -> Fraction:
    return Fraction(text)


def format_ms(value: float) -> str:
    return f"{value:.3f}"


def render_report(report: ResultReport) -> str:
    lines = [RESULTS_HEADER, f"# kb.sha256={report.kb_hash}"]
    for phase in PhaseTimings.PHASES:
        lines.append(f"# time.{phase}={format_ms(getattr(report.timings, phase))}")
    lines.append(f"# materializer.invocations={report.materializer_invocations}")
    if report.alpha3_top is not None:
        lines.append(f"# summary.alpha3.top={format_score(report.alpha3_top)}")
    for row in report.solutions:
        fields = [
            str(row.rank),
            format_score(row.alpha2),
            str(row.length),
            row.expression,
        ]
        if row.alpha3 is not None:
            fields.append(format_score(row.alpha3))
        lines.append("\t".join(fields))
    return "".join(f"{line}\n" for line in lines)


def parse_report(text: str) -> ResultReport:
    """
    Read a result file back.

    Raises:
        ConfigException: missing or wrong header, malformed rows
    """
    lines = text.splitlines()
    if not lines or lines[0].strip() != RESULTS_HEADER:
        raise ConfigException("not an ecii result file (missing header)")

    kb_hash = ""
    timings: dict[str, float] = {}
    invocations = 0
    alpha3_top: Fraction | None = None
    rows: list[SolutionRow] = []

    for number, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        try:
            if line.startswith("#"):
                key, _, value = line[1:].strip().partition("=")
                if key == "kb.sha256":
                    kb_hash = value
                elif key.startswith("time."):
                    timings[key[len("time."):]] = float(value)
                elif key == "materializer.invocations":
                    invocations = int(value)
                elif key == "summary.alpha3.top":
                    alpha3_top = parse_score(value)
                continue
            fields = line.split("\t")
            if len(fields) not in (4, 5):
                raise ValueError(f"expected 4 or 5 fields, got {len(fields)}")
            rows.append(
                SolutionRow(
                    rank=int(fields[0]),
                    alpha2=parse_score(fields[1]),
                    length=int(fields[2]),
                    expression=fields[3],
                    alpha3=parse_score(fields[4]) if len(fields) == 5 else None,
                )
            )
        except ValueError as exc:
            raise ConfigException(f"malformed result line: {exc}", number) from exc

    if not kb_hash:
        raise ConfigException("result file lacks the kb.sha256 header")
    try:
        return ResultReport(
            kb_hash=kb_hash,
            solutions=rows,
            timings=PhaseTimings(**timings),
            materializer_invocations=invocations,
            alpha3_top=alpha3_top,
        )
    except ValueError as exc:
        raise ConfigException(f"invalid result file: {exc}") from exc


def strip_timings(text: str) -> str:
    """Drop the ``# time.*`` lines, the only part that varies between runs."""
    return "".join(
        line for line in text.splitlines(keepends=True) if not line.startswith("# time.")
    )


def render_verification(kb_hash: str, rows: Iterable[VerificationRow]) -> str:
    lines = [VERIFY_HEADER, f"# kb.sha256={kb_hash}"]
    lines.append("# candidate\talpha2\talpha3\tagree")
    for row in rows:
        lines.append(
            "\t".join(
                [
                    row.candidate,
                    format_score(row.alpha2),
                    format_score(row.alpha3),
                    "yes" if row.agree else "no",
                ]
            )
        )
    return "".join(f"{line}\n" for line in lines)


def render_bench(rows: Iterable[BenchRow]) -> str:
    lines = [BENCH_HEADER, "# " + "\t".join(BENCH_COLUMNS)]
    for row in rows:
        fields = [str(row.size), str(row.repetitions)]
        fields += [format_ms(getattr(row.mean, phase)) for phase in PhaseTimings.PHASES]
        fields += [
            format_score(row.best_alpha2),
            "yes" if row.invocations_ok else "no",
            "yes" if row.single_sample else "no",
        ]
        lines.append("\t".join(fields))
    return "".join(f"{line}\n" for line in lines)
