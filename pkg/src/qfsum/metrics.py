"""Evaluation formulas (opinion score, summarization ratio, precision,
latency rates) and the labeled-query harness that renders them as TSV."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ConfigError, DomainError, EmptyScores, NoUsableLatencies

DECIMALS = 4


@dataclass(frozen=True)
class RunRecord:
    query_id: str
    category: str
    doc_extraction_latency: tuple[float, ...] = ()
    info_retrieval_latency: tuple[float, ...] = ()
    summary_lines: int = 0
    original_lines: int = 0
    relevant: bool = False
    fault_docs: int = 0
    opinion_scores: tuple[float, ...] = ()
    answered: bool = False
    doc_ratios: tuple[float, ...] = ()
    status: str = "ok"

    def __post_init__(self):
        if len(self.doc_extraction_latency) != len(self.info_retrieval_latency):
            raise ValueError("latency lists must have equal length")
        if any(x < 0 for x in self.doc_extraction_latency + self.info_retrieval_latency):
            raise ValueError("latencies must be nonnegative")
        if self.summary_lines > self.original_lines:
            raise ValueError("summary_lines cannot exceed original_lines")

    @property
    def effective_ratio(self) -> float | None:
        if self.doc_ratios:
            return effective_ratio(self.doc_ratios)
        if self.original_lines:
            return summarization_ratio(self.summary_lines, self.original_lines)
        return None


@dataclass(frozen=True)
class Rates:
    mean_doc_extraction_rate: float | None
    mean_info_retrieval_rate: float | None
    mean_retrieval_latency_minutes: float
    excluded_zero_latencies: int = 0


@dataclass(frozen=True)
class MetricsReport:
    category: str
    queries: int
    results_obtained: int
    precision: float
    mos: float | None
    summarization_ratio: float
    mean_doc_extraction_rate: float | None
    mean_info_retrieval_rate: float | None
    mean_retrieval_latency_minutes: float | None
    fault_count: int
    excluded_zero_latencies: int = 0


def mos(scores) -> float:
    scores = list(scores)
    if not scores:
        raise EmptyScores("no opinion scores")
    if any(not 0 <= s <= 10 for s in scores):
        raise DomainError("opinion scores must lie in [0, 10]")
    return math.fsum(scores) / len(scores)


def summarization_ratio(summary_lines: int, original_lines: int) -> float:
    if original_lines < 1 or not 0 <= summary_lines <= original_lines:
        raise DomainError(f"need 0 <= summary ({summary_lines}) <= original ({original_lines}), original >= 1")
    return summary_lines / original_lines


def effective_ratio(ratios) -> float:
    """Multi-document ratio: the mean of the per-document ratios."""
    ratios = list(ratios)
    if not ratios:
        raise DomainError("no per-document ratios")
    return math.fsum(ratios) / len(ratios)


def precision(relevant_retrieved: int, total_retrieved: int) -> float:
    if total_retrieved < 1 or not 0 <= relevant_retrieved <= total_retrieved:
        raise DomainError(f"need 0 <= relevant ({relevant_retrieved}) <= total ({total_retrieved}), total >= 1")
    return relevant_retrieved / total_retrieved


def mean_rates(records) -> Rates:
    """Reciprocal-latency means and mean total latency in minutes, pooled over
    every document of every record. Zero latencies are left out of the
    reciprocal sums and counted in ``excluded_zero_latencies``."""
    doc, info = [], []
    for r in records:
        doc.extend(r.doc_extraction_latency)
        info.extend(r.info_retrieval_latency)
    if not doc or not any(x > 0 for x in doc + info):
        raise NoUsableLatencies("no positive latencies to average")

    def reciprocal_mean(values):
        positive = [1.0 / v for v in values if v > 0]
        return math.fsum(positive) / len(positive) if positive else None

    excluded = sum(1 for v in doc if v <= 0) + sum(1 for v in info if v <= 0)
    total_minutes = math.fsum(d + i for d, i in zip(doc, info)) / len(doc) / 60.0
    return Rates(reciprocal_mean(doc), reciprocal_mean(info), total_minutes, excluded)


def build_report(category: str, records) -> MetricsReport:
    records = list(records)
    if not records:
        raise DomainError(f"no records for category {category!r}")
    obtained = sum(1 for r in records if r.answered and r.relevant)
    scores = [s for r in records for s in r.opinion_scores]
    ratios = [r.effective_ratio for r in records if r.effective_ratio is not None]
    try:
        rates = mean_rates(records)
    except NoUsableLatencies:
        rates = Rates(None, None, None, 0)
    return MetricsReport(
        category=category,
        queries=len(records),
        results_obtained=obtained,
        precision=precision(obtained, len(records)),
        mos=mos(scores) if scores else None,
        summarization_ratio=effective_ratio(ratios) if ratios else 0.0,
        mean_doc_extraction_rate=rates.mean_doc_extraction_rate,
        mean_info_retrieval_rate=rates.mean_info_retrieval_rate,
        mean_retrieval_latency_minutes=rates.mean_retrieval_latency_minutes,
        fault_count=sum(r.fault_docs for r in records),
        excluded_zero_latencies=rates.excluded_zero_latencies,
    )


REPORT_COLUMNS = [
    "Query Category",
    "No. of Queries",
    "Results obtained queries",
    "precision",
    "Mean Opinion Score(10)",
    "Summarization ratio",
    "Mean Doc. Extraction Rate(1/s)",
    "Mean Info. Retrieval Rate(1/s)",
    "Mean Latency Time(Min)",
    "Fault Count",
    "Zero latencies excluded",
]


def _fmt(value) -> str:
    if value is None:
        return "NA"
    if isinstance(value, float):
        return f"{value:.{DECIMALS}f}"
    return str(value)


def render_tsv(reports) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, delimiter="\t", lineterminator="\n")
    writer.writerow(REPORT_COLUMNS)
    for r in reports:
        writer.writerow([_fmt(v) for v in (
            r.category, r.queries, r.results_obtained, r.precision, r.mos, r.summarization_ratio,
            r.mean_doc_extraction_rate, r.mean_info_retrieval_rate, r.mean_retrieval_latency_minutes,
            r.fault_count, r.excluded_zero_latencies,
        )])
    return buf.getvalue()


RECORD_COLUMNS = [
    "query_id", "category", "status", "answered", "relevant", "summary_lines", "original_lines",
    "doc_ratios", "fault_docs", "doc_extraction_latency", "info_retrieval_latency", "opinion_scores",
]


def _floats(values) -> str:
    return ",".join(repr(float(v)) for v in values)


def render_records_tsv(records) -> str:
    """Per-query dump with full-precision floats, for independent recomputation."""
    buf = io.StringIO()
    writer = csv.writer(buf, delimiter="\t", lineterminator="\n")
    writer.writerow(RECORD_COLUMNS)
    for r in records:
        writer.writerow([
            r.query_id, r.category, r.status, int(r.answered), int(r.relevant), r.summary_lines,
            r.original_lines, _floats(r.doc_ratios), r.fault_docs, _floats(r.doc_extraction_latency),
            _floats(r.info_retrieval_latency), _floats(r.opinion_scores),
        ])
    return buf.getvalue()


# --- harness ---------------------------------------------------------------

@dataclass(frozen=True)
class LabeledQuery:
    query_id: str
    text: str
    category: str
    relevant: bool
    opinion_scores: tuple[float, ...] = field(default_factory=tuple)


def load_labels(path: str | Path) -> list[LabeledQuery]:
    try:
        fh = Path(path).open(encoding="utf-8", newline="")
    except OSError as exc:
        raise ConfigError(f"cannot read labels file {path}: {exc}") from exc
    out = []
    with fh:
        for lineno, row in enumerate(csv.reader(fh, delimiter="\t"), 1):
            if not row or row[0].startswith("#") or row[0] == "query_id":
                continue
            if len(row) not in (4, 5):
                raise ConfigError(f"{path}:{lineno}: expected 4 or 5 tab-separated columns")
            if row[3] not in ("0", "1"):
                raise ConfigError(f"{path}:{lineno}: expected_relevant must be 0 or 1")
            try:
                scores = tuple(float(s) for s in row[4].split(",") if s.strip()) if len(row) == 5 else ()
            except ValueError:
                raise ConfigError(f"{path}:{lineno}: bad opinion scores {row[4]!r}") from None
            if any(not 0 <= s <= 10 for s in scores):
                raise ConfigError(f"{path}:{lineno}: opinion scores must lie in [0, 10]")
            out.append(LabeledQuery(row[0], row[1], row[2], row[3] == "1", scores))
    return out


def evaluate(labels, config, categories=None):
    """Run the pipeline over every labeled query.

    Returns ``(reports, records)``: one report per category in order of first
    appearance, then an ``ALL`` row when more than one category is present.
    """
    from .pipeline import run_query

    if isinstance(labels, (str, Path)):
        labels = load_labels(labels)
    if categories:
        wanted = {c.lower() for c in categories}
        labels = [q for q in labels if q.category.lower() in wanted]
    records = [run_query(q.text, config).record(q.query_id, q.category, q.relevant, q.opinion_scores)
               for q in labels]
    order = list(dict.fromkeys(r.category for r in records))
    reports = [build_report(c, [r for r in records if r.category == c]) for c in order]
    if len(order) > 1:
        reports.append(build_report("ALL", records))
    return reports, records
