"""Search backends, HTML-to-text conversion and sentence segmentation."""

from __future__ import annotations

import csv
import logging
import re
import time
import urllib.parse
import urllib.request
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from html import unescape
from html.parser import HTMLParser
from pathlib import Path
from typing import Protocol

from .errors import BackendUnavailable, CorpusError, NoResults

log = logging.getLogger(__name__)

DEFAULT_RESULTS_PER_QUERY = 10


@dataclass(frozen=True)
class SearchResult:
    query_string: str
    rank: int
    location: str
    title: str = ""


@dataclass(frozen=True)
class Document:
    source: SearchResult
    sentences: tuple[str, ...]
    fetch_latency: float = 0.0
    convert_latency: float = 0.0
    fault: bool = False
    error: str = ""

    @property
    def doc_id(self) -> str:
        return f"{self.source.query_string}#{self.source.rank}"


class Backend(Protocol):
    def search(self, query_string: str, k: int) -> list[SearchResult]: ...

    def fetch(self, location: str) -> bytes: ...


def normalize_query(query_string: str) -> str:
    return " ".join(query_string.lower().split())


class FixtureBackend:
    """Offline backend over a directory holding ``manifest.tsv`` and the
    pages it references."""

    def __init__(self, root: str | Path):
        self.root = Path(root)
        self._index = self._load_manifest(self.root / "manifest.tsv")

    @staticmethod
    def _load_manifest(path: Path) -> dict[str, list[SearchResult]]:
        try:
            fh = path.open(encoding="utf-8", newline="")
        except OSError as exc:
            raise CorpusError(f"cannot read manifest {path}: {exc}") from exc
        index: dict[str, list[SearchResult]] = {}
        with fh:
            for lineno, row in enumerate(csv.reader(fh, delimiter="\t"), 1):
                if not row or row[0].startswith("#") or row[0] == "query_string":
                    continue
                if len(row) not in (3, 4):
                    raise CorpusError(f"{path}:{lineno}: expected 3 or 4 columns")
                try:
                    rank = int(row[1])
                except ValueError:
                    raise CorpusError(f"{path}:{lineno}: rank {row[1]!r} is not an integer") from None
                key = normalize_query(row[0])
                title = row[3] if len(row) == 4 else ""
                index.setdefault(key, []).append(SearchResult(key, rank, row[2], title))
        for key, results in index.items():
            results.sort(key=lambda r: r.rank)
            if [r.rank for r in results] != list(range(1, len(results) + 1)):
                raise CorpusError(f"{path}: ranks for {key!r} are not contiguous from 1")
        return index

    def queries(self) -> list[str]:
        return list(self._index)

    def search(self, query_string: str, k: int) -> list[SearchResult]:
        return self._index.get(normalize_query(query_string), [])[:k]

    def fetch(self, location: str) -> bytes:
        try:
            return (self.root / location).read_bytes()
        except OSError as exc:
            raise BackendUnavailable(f"cannot read {location}: {exc}") from exc


class LiveBackend:
    """Thin HTTP client: queries an HTML search endpoint and scrapes result
    links with a CSS selector. ``endpoint_url`` may contain ``{query}``;
    otherwise ``q=<query>`` is appended."""

    def __init__(self, endpoint_url: str, result_selector: str = "a", timeout_seconds: float = 10.0):
        self.endpoint_url = endpoint_url
        self.result_selector = result_selector
        self.timeout_seconds = timeout_seconds

    def _url(self, query_string: str) -> str:
        q = urllib.parse.quote_plus(query_string)
        if "{query}" in self.endpoint_url:
            return self.endpoint_url.replace("{query}", q)
        sep = "&" if "?" in self.endpoint_url else "?"
        return f"{self.endpoint_url}{sep}q={q}"

    def _get(self, url: str) -> bytes:
        req = urllib.request.Request(url, headers={"User-Agent": "qfsum/0.1"})
        try:
            with urllib.request.urlopen(req, timeout=self.timeout_seconds) as resp:
                return resp.read()
        except (OSError, ValueError) as exc:
            raise BackendUnavailable(f"GET {url} failed: {exc}") from exc

    def parse_results(self, query_string: str, page: bytes | str, base_url: str, k: int):
        from bs4 import BeautifulSoup

        soup = BeautifulSoup(page, "html.parser")
        results, seen = [], set()
        for el in soup.select(self.result_selector):
            link = el if el.name == "a" else el.find("a")
            href = link.get("href") if link is not None else None
            if not href:
                continue
            href = urllib.parse.urljoin(base_url, href)
            if href in seen:
                continue
            seen.add(href)
            title = " ".join(link.get_text(" ").split())
            results.append(SearchResult(query_string, len(results) + 1, href, title))
            if len(results) == k:
                break
        return results

    def search(self, query_string: str, k: int) -> list[SearchResult]:
        url = self._url(query_string)
        return self.parse_results(query_string, self._get(url), url, k)

    def fetch(self, location: str) -> bytes:
        return self._get(location)


def search(query_string: str, backend: Backend, k: int = DEFAULT_RESULTS_PER_QUERY) -> list[SearchResult]:
    if k < 1:
        raise ValueError("k must be >= 1")
    results = list(backend.search(query_string, k))[:k]
    if not results:
        raise NoResults(f"no results for {query_string!r}")
    return results


# --- HTML to text ---------------------------------------------------------

_SKIP_TAGS = {"script", "style", "head", "noscript", "template", "svg", "iframe", "object"}
_BLOCK_TAGS = {
    "address", "article", "aside", "blockquote", "br", "caption", "dd", "div", "dl", "dt",
    "fieldset", "figcaption", "figure", "footer", "form", "h1", "h2", "h3", "h4", "h5", "h6",
    "header", "hr", "li", "main", "nav", "ol", "p", "pre", "section", "table", "tbody",
    "td", "tfoot", "th", "thead", "title", "tr", "ul", "body", "html",
}
_BREAK = "\x00"
_TAG_LIKE = re.compile(r"<[A-Za-z!/?]")


class _TextExtractor(HTMLParser):
    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.parts: list[str] = []
        self.skip_depth = 0

    def handle_starttag(self, tag, attrs):
        if tag in _SKIP_TAGS:
            self.skip_depth += 1
        elif tag in _BLOCK_TAGS:
            self.parts.append(_BREAK)

    def handle_startendtag(self, tag, attrs):
        if tag in _BLOCK_TAGS:
            self.parts.append(_BREAK)

    def handle_endtag(self, tag):
        if tag in _SKIP_TAGS:
            self.skip_depth = max(0, self.skip_depth - 1)
        elif tag in _BLOCK_TAGS:
            self.parts.append(_BREAK)

    def handle_data(self, data):
        if not self.skip_depth:
            self.parts.append(data)


def _clean_blocks(blocks) -> str:
    out = []
    for block in blocks:
        block = " ".join(block.replace("<", " ").replace(">", " ").split())
        if block:
            out.append(block)
    return "\n\n".join(out)


def _regex_strip(html: str) -> str:
    s = re.sub(r"(?is)<(script|style|head)\b.*?</\1\s*>", " ", html)
    s = re.sub(r"(?s)<!--.*?(-->|$)", " ", s)
    s = re.sub(r"(?i)</?(?:%s)\b[^>]*>" % "|".join(sorted(_BLOCK_TAGS)), _BREAK, s)
    s = re.sub(r"<[A-Za-z/!?][^<>]*(>|$)", "", s)
    return _clean_blocks(unescape(s).split(_BREAK))


def html_to_text(html: bytes | str) -> str:
    """Visible text of an HTML page, one block element per paragraph.

    Input without any markup is treated as plain text and only has its
    whitespace normalized. Never raises on malformed markup: when the parser
    recovers no text, or leaves tags behind as text (an unclosed ``<title>``
    swallows the page, for instance), a regex tag stripper is used instead.
    """
    if isinstance(html, bytes):
        try:
            html = html.decode("utf-8")
        except UnicodeDecodeError:
            html = html.decode("latin-1")
    if not _TAG_LIKE.search(html):
        return _clean_blocks(re.split(r"\n\s*\n", html))
    parser = _TextExtractor()
    try:
        parser.feed(html)
        parser.close()
        raw = "".join(parser.parts)
        # tag text surviving as data means the parser lost sync (RCDATA runaway)
        text = "" if _TAG_LIKE.search(raw) else _clean_blocks(raw.split(_BREAK))
    except Exception:
        log.warning("HTML parser failed, falling back to regex tag stripping")
        text = ""
    return text or _regex_strip(html)


# --- sentences --------------------------------------------------------------

ABBREVIATIONS = frozenset(
    "mr. mrs. ms. dr. vs. v. st. jr. sr. prof. capt. col. gen. lt. mt. e.g. i.e. approx.".split()
)
_TERMINATOR = re.compile(r"[.!?]+[\"'”’)\]]*(?=\s|$)")


def segment_sentences(text: str) -> list[str]:
    sentences = []
    for para in re.split(r"\n\s*\n", text):
        para = " ".join(para.split())
        start = 0
        for m in _TERMINATOR.finditer(para):
            last_word = para[start:m.end()].rsplit(" ", 1)[-1].lower()
            if last_word in ABBREVIATIONS:
                continue
            sentences.append(para[start:m.end()].strip())
            start = m.end()
        sentences.append(para[start:].strip())
    return [s for s in sentences if s]


# --- documents -------------------------------------------------------------

@dataclass(frozen=True)
class LatencyModel:
    """Deterministic stand-in for wall-clock timing, used for golden runs.
    Latencies grow linearly with page size and sentence count."""

    fetch_base: float = 0.5
    bytes_per_second: float = 250_000.0
    convert_base: float = 0.02
    seconds_per_sentence: float = 0.004

    def latencies(self, n_bytes: int, n_sentences: int) -> tuple[float, float]:
        return (
            self.fetch_base + n_bytes / self.bytes_per_second,
            self.convert_base + n_sentences * self.seconds_per_sentence,
        )


def fetch_document(result: SearchResult, backend: Backend, latency_model: LatencyModel | None = None,
                   clock=time.perf_counter) -> Document:
    """Fetch, convert and segment one result. Failures come back as fault
    documents instead of exceptions."""
    t0 = clock()
    try:
        raw = backend.fetch(result.location)
    except Exception as exc:
        log.info("fetch failed for %s: %s", result.location, exc)
        return Document(result, (), 0.0, 0.0, fault=True, error=str(exc))
    t1 = clock()
    try:
        sentences = tuple(segment_sentences(html_to_text(raw)))
    except Exception as exc:
        return Document(result, (), max(0.0, t1 - t0), 0.0, fault=True, error=f"conversion failed: {exc}")
    t2 = clock()
    if latency_model is not None:
        fetch_latency, convert_latency = latency_model.latencies(len(raw), len(sentences))
    else:
        fetch_latency, convert_latency = max(0.0, t1 - t0), max(0.0, t2 - t1)
    if not sentences:
        return Document(result, (), fetch_latency, convert_latency, fault=True, error="no text")
    return Document(result, sentences, fetch_latency, convert_latency)


def fetch_all(results, backend: Backend, latency_model: LatencyModel | None = None,
              max_workers: int = 4) -> list[Document]:
    """Fetch documents concurrently; output order follows ``results``."""
    results = list(results)
    if max_workers <= 1 or len(results) <= 1:
        return [fetch_document(r, backend, latency_model) for r in results]
    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        return list(pool.map(lambda r: fetch_document(r, backend, latency_model), results))
