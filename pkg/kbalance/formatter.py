import csv
import io
import logging

from kbalance.schemas import LemmaResult, MetricName, MetricReport

logger = logging.getLogger(__name__)

CSV_HEADER = ("metric", "letter", "n", "value")
FORMATS = ("csv", "json", "table")


class ReportFormatter:
    """Renders metric reports and lemma results as CSV, JSON or a text table"""

    @staticmethod
    def to_csv(report: MetricReport) -> str:
        """Header row then one row per record; empty cells for absent letter or n"""
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for record in report.records:
            writer.writerow((
                record.metric.value,
                "" if record.letter is None else record.letter,
                "" if record.n is None else record.n,
                record.value,
            ))
        return buffer.getvalue()

    @staticmethod
    def to_json(report: MetricReport) -> str:
        return report.model_dump_json(indent=2) + "\n"

    @staticmethod
    def generate_table(report: MetricReport) -> str:
        lines = []

        # Header
        lines.append("=" * 90)
        lines.append(report.title.upper())
        lines.append("=" * 90)

        if report.notes:
            lines.append("")
            for note in report.notes:
                lines.append(f"  {note}")

        # Scalars first, then the per-n series grouped by metric
        scalars = [r for r in report.records if r.n is None]
        series = [r for r in report.records if r.n is not None]
        if scalars:
            lines.append("")
            lines.append("=== SUMMARY ===")
            lines.append("-" * 90)
            for record in scalars:
                label = record.metric.value if record.letter is None else f"{record.metric.value}[{record.letter}]"
                lines.append(f"  {label:<28} {record.value}")

        for metric in MetricName:
            rows = [r for r in series if r.metric == metric]
            if not rows:
                continue
            lines.append("")
            lines.append(f"=== {metric.value.upper()} ===")
            lines.append("-" * 90)
            letters = sorted({r.letter for r in rows if r.letter is not None})
            if letters:
                lines.append(f"  {'n':>6}  " + "  ".join(f"{letter:>8}" for letter in letters))
                by_n = {}
                for r in rows:
                    by_n.setdefault(r.n, {})[r.letter] = r.value
                for n in sorted(by_n):
                    lines.append(f"  {n:>6}  " + "  ".join(f"{by_n[n].get(letter, ''):>8}" for letter in letters))
            else:
                lines.append(f"  {'n':>6}  {'value':>12}")
                for r in rows:
                    lines.append(f"  {r.n:>6}  {r.value:>12}")

        # Footer
        lines.append("")
        lines.append("=" * 90)
        return "\n".join(lines) + "\n"

    @staticmethod
    def render(report: MetricReport, fmt: str) -> str:
        if fmt == "csv":
            return ReportFormatter.to_csv(report)
        if fmt == "json":
            return ReportFormatter.to_json(report)
        if fmt == "table":
            return ReportFormatter.generate_table(report)
        raise ValueError(f"unknown output format {fmt!r}; choose from {FORMATS}")

    @staticmethod
    def format_lemma(result: LemmaResult, max_failures: int = 10) -> str:
        lines = []
        status = "PASSED" if result.passed else "FAILED"
        lines.append(f"{result.lemma}: {status} ({result.trials} trials, {result.duration_ms:.0f}ms)")
        if result.max_measured_k is not None:
            lines.append(f"  max measured k: {result.max_measured_k}")
        for failure in result.failures[:max_failures]:
            lines.append(f"  - {failure}")
        if len(result.failures) > max_failures:
            lines.append(f"  ... {len(result.failures) - max_failures} more")
        return "\n".join(lines) + "\n"
