"""End-to-end query answering: front-end, retrieval, and either the
keyword-search answer path or the concept-wise summarization path."""

from __future__ import annotations

import configparser
import logging
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path

from . import concept_tree as ct
from .aggregation import DedupConfig, Summary, ThresholdMode, aggregate
from .errors import (AllDocumentsFaulty, BackendUnavailable, ConfigError, EmptyKeywords,
                     EmptySummary, NoAnswer, NoResults)
from .extraction import DEFAULT_COMPONENT_SIZE, SelectionMode, SelectionPolicy, extract_all
from .frontend import Lexicon, Query, QueryCategory, load_lexicon, parse_query
from .keyword_search import ScoredSentence, answer_with_context, best_answer, score_sentence
from .metrics import RunRecord, summarization_ratio
from .retrieval import (DEFAULT_RESULTS_PER_QUERY, Document, FixtureBackend, LatencyModel,
                        LiveBackend, fetch_all, search)

log = logging.getLogger(__name__)


def bundled_corpus() -> Path:
    return Path(str(resources.files("qfsum.data").joinpath("corpus")))


def bundled_path(name: str) -> Path:
    return Path(str(resources.files("qfsum.data").joinpath(name)))


@dataclass(frozen=True)
class PipelineConfig:
    backend: str = "fixture"  # "fixture" or "live"
    fixture_path: Path | None = None  # None means the bundled corpus
    endpoint_url: str = ""
    result_selector: str = "a"
    timeout_seconds: float = 10.0
    results_per_query: int = DEFAULT_RESULTS_PER_QUERY
    component_size: int = DEFAULT_COMPONENT_SIZE
    policy: SelectionPolicy = field(default_factory=SelectionPolicy)
    dedup: DedupConfig = field(default_factory=DedupConfig)
    lexicon_path: Path | None = None
    tree_path: Path | None = None
    extra_wh_words: tuple[str, ...] = ()
    default_concepts: tuple[str, ...] | None = None
    answer_context: int = 0
    timing: str = "wall"  # "wall" or "modeled"
    speak: str | None = None
    workers: int = 4

    def __post_init__(self):
        if self.backend not in ("fixture", "live"):
            raise ConfigError(f"unknown backend {self.backend!r}")
        if self.backend == "fixture" and self.fixture_path is not None and not Path(self.fixture_path).is_dir():
            raise ConfigError(f"fixture corpus {self.fixture_path} does not exist")
        if self.backend == "live" and not self.endpoint_url:
            raise ConfigError("live backend needs search.endpoint_url")
        if self.results_per_query < 1:
            raise ConfigError("results_per_query must be >= 1")
        if self.component_size < 1:
            raise ConfigError("component_size must be >= 1")
        if self.timing not in ("wall", "modeled"):
            raise ConfigError(f"unknown timing mode {self.timing!r}")

    def make_backend(self):
        if self.backend == "live":
            return LiveBackend(self.endpoint_url, self.result_selector, self.timeout_seconds)
        return FixtureBackend(self.fixture_path or bundled_corpus())

    def load_lexicon(self) -> Lexicon:
        lexicon = load_lexicon(self.lexicon_path)
        return lexicon.with_wh_words(self.extra_wh_words) if self.extra_wh_words else lexicon

    def load_tree(self) -> ct.ConceptTree:
        return ct.load_tree(self.tree_path)

    @property
    def latency_model(self) -> LatencyModel | None:
        return LatencyModel() if self.timing == "modeled" else None


def parse_backend(value: str, base: Path | None = None) -> dict:
    """``fixture:PATH``, ``fixture`` (bundled corpus) or ``live``."""
    if value == "live":
        return {"backend": "live"}
    if value == "fixture":
        return {"backend": "fixture", "fixture_path": None}
    if value.startswith("fixture:"):
        path = Path(value[len("fixture:"):]).expanduser()
        if base is not None and not path.is_absolute():
            path = base / path
        return {"backend": "fixture", "fixture_path": path}
    raise ConfigError(f"bad backend {value!r}; expected fixture:PATH or live")


def _words(value: str) -> tuple[str, ...]:
    return tuple(w.strip().lower() for w in value.replace(",", " ").split() if w.strip())


def config_overrides(values: dict, base: Path | None = None) -> dict:
    """Translate flat ``key = value`` settings into PipelineConfig fields."""

    def path(v):
        p = Path(v).expanduser()
        return p if base is None or p.is_absolute() else base / p

    out: dict = {}
    policy: dict = {}
    dedup: dict = {}
    try:
        for key, value in values.items():
            if value is None:
                continue
            value = str(value).strip()
            if key == "backend":
                out.update(parse_backend(value, base))
            elif key == "search.endpoint_url":
                out["endpoint_url"] = value
            elif key == "search.result_selector":
                out["result_selector"] = value
            elif key == "search.timeout_seconds":
                out["timeout_seconds"] = float(value)
            elif key in ("search.results_per_query", "results_per_query"):
                out["results_per_query"] = int(value)
            elif key == "extraction.component_size":
                out["component_size"] = int(value)
            elif key == "extraction.policy":
                policy["mode"] = SelectionMode(value)
            elif key == "extraction.k":
                policy["k"] = int(value)
            elif key == "dedup.overlap_fraction":
                dedup["overlap_fraction"] = float(value)
            elif key == "dedup.threshold_mode":
                dedup["threshold_mode"] = ThresholdMode(value)
            elif key == "dedup.fixed_threshold":
                dedup["fixed_threshold"] = float(value)
            elif key == "lexicon":
                out["lexicon_path"] = path(value)
            elif key == "tree":
                out["tree_path"] = path(value)
            elif key == "frontend.extra_wh_words":
                out["extra_wh_words"] = _words(value)
            elif key == "tree.default_concepts":
                out["default_concepts"] = _words(value)
            elif key == "keyword.context":
                out["answer_context"] = int(value)
            elif key == "timing":
                out["timing"] = value
            elif key == "speak":
                out["speak"] = value or None
            elif key == "workers":
                out["workers"] = int(value)
            else:
                raise ConfigError(f"unknown config key {key!r}")
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    if policy:
        out["policy"] = policy
    if dedup:
        out["dedup"] = dedup
    return out


def apply_overrides(config: PipelineConfig, overrides: dict) -> PipelineConfig:
    overrides = dict(overrides)
    try:
        if "policy" in overrides:
            overrides["policy"] = replace(config.policy, **overrides["policy"])
        if "dedup" in overrides:
            overrides["dedup"] = replace(config.dedup, **overrides["dedup"])
        return replace(config, **overrides)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def read_config_file(path: str | Path) -> dict:
    path = Path(path)
    parser = configparser.ConfigParser(interpolation=None, delimiters=("=",),
                                       comment_prefixes=("#",), inline_comment_prefixes=None)
    parser.optionxform = str
    try:
        parser.read_string("[config]\n" + path.read_text(encoding="utf-8"), source=str(path))
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except configparser.Error as exc:
        raise ConfigError(f"malformed config {path}: {exc}") from exc
    return dict(parser["config"])


def load_config(path: str | Path | None = None, **flags) -> PipelineConfig:
    """Defaults, then the config file, then flag values (``None`` flags are ignored)."""
    config = PipelineConfig()
    if path is not None:
        config = apply_overrides(config, config_overrides(read_config_file(path), Path(path).parent))
    return apply_overrides(config, config_overrides(flags))


# --- running a query ---------------------------------------------------------

@dataclass
class AskResult:
    query: Query | None
    status: str  # ok | no_answer | empty_summary | no_keywords | error
    text: str = ""
    message: str = ""
    documents: list[Document] = field(default_factory=list)
    answer: ScoredSentence | None = None
    summary: Summary | None = None
    concept_queries: tuple[tuple[str, str], ...] = ()
    fault_docs: int = 0
    summary_lines: int = 0
    doc_ratios: tuple[float, ...] = ()

    @property
    def ok(self) -> bool:
        return self.status == "ok"

    @property
    def original_lines(self) -> int:
        return sum(len(d.sentences) for d in self.documents)

    def record(self, query_id: str, category: str, relevant: bool, opinion_scores=()) -> RunRecord:
        return RunRecord(
            query_id=query_id,
            category=category,
            doc_extraction_latency=tuple(d.fetch_latency for d in self.documents),
            info_retrieval_latency=tuple(d.convert_latency for d in self.documents),
            summary_lines=self.summary_lines,
            original_lines=self.original_lines,
            relevant=relevant,
            fault_docs=self.fault_docs,
            opinion_scores=tuple(opinion_scores),
            answered=self.ok,
            doc_ratios=self.doc_ratios,
            status=self.status,
        )


def _unmatched(doc: Document, keywords) -> bool:
    return not any(score_sentence(s, keywords) for s in doc.sentences)


def _keyword_path(query: Query, config: PipelineConfig, backend) -> AskResult:
    search_string = " ".join(query.keywords.all)
    result = AskResult(query, "ok")
    try:
        top = search(search_string, backend, 1)
    except NoResults as exc:
        result.status, result.message = "no_answer", str(exc)
        return result
    result.documents = fetch_all(top, backend, config.latency_model, 1)
    doc = result.documents[0]
    try:
        best = best_answer(doc, query.keywords)
    except NoAnswer as exc:
        result.status, result.message, result.fault_docs = "no_answer", str(exc), 1
        return result
    result.answer = best
    lo = max(0, best.index - config.answer_context)
    hi = min(len(doc.sentences), best.index + config.answer_context + 1)
    result.summary_lines = hi - lo
    result.doc_ratios = (summarization_ratio(hi - lo, len(doc.sentences)),)
    result.text = answer_with_context(doc, best, config.answer_context) + "\n"
    return result


def _concept_path(query: Query, config: PipelineConfig, backend, lexicon) -> AskResult:
    tree = config.load_tree()
    concepts = ct.lookup(query.keywords, tree, config.default_concepts)
    expanded = ct.expand(query.keywords, concepts)
    result = AskResult(query, "ok", concept_queries=expanded.concept_queries)
    concept_of: dict[str, str] = {}
    results = []
    for concept, search_string in expanded.concept_queries:
        try:
            found = search(search_string, backend, config.results_per_query)
        except NoResults:
            log.info("no results for concept query %r", search_string)
            continue
        results.extend(found)
        for r in found:
            concept_of[r.query_string] = concept
    result.documents = fetch_all(results, backend, config.latency_model, config.workers)
    docs = result.documents
    result.fault_docs = sum(1 for d in docs if d.fault or _unmatched(d, expanded.keywords))
    try:
        components = extract_all(docs, expanded.keywords, config.policy, config.component_size)
        summary = aggregate(components, config.dedup, lexicon)
    except (AllDocumentsFaulty, EmptySummary) as exc:
        result.status, result.message = "empty_summary", str(exc)
        result.doc_ratios = tuple(0.0 for d in docs if not d.fault)
        return result
    result.summary = summary
    result.summary_lines = len(summary.lines)
    kept: dict[str, int] = {}
    for line in summary.lines:
        kept[line.origin[0]] = kept.get(line.origin[0], 0) + 1
    result.doc_ratios = tuple(
        summarization_ratio(kept.get(d.doc_id, 0), len(d.sentences)) for d in docs if not d.fault
    )
    doc_by_id = {d.doc_id: d for d in docs}
    sections: dict[str, list[str]] = {c: [] for c, _ in expanded.concept_queries}
    for line in summary.lines:
        concept = concept_of[doc_by_id[line.origin[0]].source.query_string]
        sections[concept].append(line.text)
    blocks = [f"[{c}]\n" + "\n".join(lines) for c, lines in sections.items() if lines]
    result.text = "\n\n".join(blocks) + "\n"
    return result


def run_query(text: str, config: PipelineConfig = PipelineConfig(), lexicon: Lexicon | None = None,
              backend=None) -> AskResult:
    """Answer one query. Outcome problems (no keywords, no answer, empty
    summary, unreachable backend) come back as a status; configuration and
    corpus errors raise."""
    lexicon = lexicon or config.load_lexicon()
    backend = backend or config.make_backend()
    try:
        query = parse_query(text, lexicon)
    except EmptyKeywords as exc:
        return AskResult(None, "no_keywords", message=str(exc))
    try:
        if query.category is QueryCategory.KEYWORD_SEARCH:
            return _keyword_path(query, config, backend)
        return _concept_path(query, config, backend, lexicon)
    except BackendUnavailable as exc:
        return AskResult(query, "error", message=str(exc))
