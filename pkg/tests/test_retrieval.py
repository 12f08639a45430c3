import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qfsum.errors import BackendUnavailable, CorpusError, NoResults
from qfsum.retrieval import (Document, FixtureBackend, LatencyModel, LiveBackend, SearchResult,
                             fetch_all, fetch_document, html_to_text, search, segment_sentences)

from .conftest import GOLDEN


@pytest.fixture(scope="module")
def backend(corpus):
    return FixtureBackend(corpus)


@pytest.mark.parametrize("html, text", [
    ("<p>Hello <b>world</b></p>", "Hello world"),
    ("<script>x()</script>Visible", "Visible"),
    ("<html><head><title>T</title><style>p{}</style></head><body>Body</body></html>", "Body"),
    ("<p>a &amp; b &lt;c&gt; &quot;d&quot; &apos;e&apos; &#8217;f&#x41;</p>", "a & b c \"d\" 'e' ’fA"),
    ("<div>one</div><div>two</div>", "one\n\ntwo"),
    ("line<br>break", "line\n\nbreak"),
    ("plain   text\nno markup", "plain text no markup"),
    ("", ""),
])
def test_html_to_text_examples(html, text):
    assert html_to_text(html) == text


def test_html_to_text_bytes_and_latin1():
    assert html_to_text("<p>café</p>".encode()) == "café"
    assert html_to_text("<p>café</p>".encode("latin-1")) == "café"


def test_unclosed_title_falls_back_to_stripping():
    assert html_to_text("<title>broken<p>Still here.</p>") == "broken\n\nStill here."


def test_golden_page_text(corpus):
    expected = (GOLDEN / "dc_career_1.txt").read_text().rstrip("\n")
    assert html_to_text((corpus / "dc_career_1.html").read_bytes()) == expected


html_fragments = st.lists(st.one_of(
    st.sampled_from(["<p>", "</p>", "<b>", "</b>", "<div>", "<br/>", "<script>", "</script>",
                     "<title>", "<!--", "-->", "&amp;", "&#65;", "<", ">", "&", "\n\n", ". ", "<a href='x'>"]),
    st.text(max_size=8),
), max_size=30).map("".join)


@settings(max_examples=300)
@given(html_fragments)
def test_html_to_text_idempotent_and_markup_free(html):
    text = html_to_text(html)
    assert html_to_text(text) == text
    assert "<" not in text and ">" not in text
    for s in segment_sentences(text):
        assert s.strip() == s and s


@pytest.mark.parametrize("text, expected", [
    ("A. B! C?", ["A.", "B!", "C?"]),
    ("", []),
    ("He scored 100 vs. Australia. Next match.", ["He scored 100 vs. Australia.", "Next match."]),
    ("Dr. Rao spoke.\n\nNew para without stop", ["Dr. Rao spoke.", "New para without stop"]),
    ('He said "Go." Then left.', ['He said "Go."', "Then left."]),
    ("Scored 3.5 runs. Ok", ["Scored 3.5 runs.", "Ok"]),
    ("Wait... what?! Yes.", ["Wait...", "what?!", "Yes."]),
])
def test_segment_sentences(text, expected):
    assert segment_sentences(text) == expected


def test_fixture_search(backend):
    results = search("dhyan chand career", backend, k=10)
    assert [r.rank for r in results] == list(range(1, 11))
    assert results[0].location.endswith("dc_career_1.html")
    assert results[-1].location.endswith("ch_malformed.html")
    assert search("Dhyan  Chand CAREER", backend, k=10) == results
    assert search("dhyan chand career", backend, k=1) == results[:1]
    assert search("dhyan chand career", backend, k=50) == results
    with pytest.raises(NoResults):
        search("not in the manifest", backend)
    with pytest.raises(ValueError):
        search("dhyan chand career", backend, k=0)


def test_manifest_errors(tmp_path):
    with pytest.raises(CorpusError):
        FixtureBackend(tmp_path)
    (tmp_path / "manifest.tsv").write_text("q\t1\ta.html\nq\t3\tb.html\n")
    with pytest.raises(CorpusError, match="contiguous"):
        FixtureBackend(tmp_path)
    (tmp_path / "manifest.tsv").write_text("q\tone\ta.html\n")
    with pytest.raises(CorpusError):
        FixtureBackend(tmp_path)


def test_fetch_document_healthy_and_faulty(backend):
    good = fetch_document(search("dhyan chand career", backend, k=1)[0], backend)
    assert not good.fault and good.sentences
    assert good.fetch_latency >= 0 and good.convert_latency >= 0
    missing = fetch_document(SearchResult("q", 1, "nope.html"), backend)
    assert missing.fault and missing.sentences == () and missing.error
    empty = fetch_document(search("childhood dhyan chand personal", backend)[2], backend)
    assert empty.fault and empty.error == "no text"
    broken = fetch_document(search("dhyan chand career", backend)[9], backend)
    assert not broken.fault and "Chepauk hosted a world cup match in 1996." in broken.sentences


def test_fetch_error_type(backend):
    with pytest.raises(BackendUnavailable):
        backend.fetch("missing.html")


def test_modeled_latency_is_deterministic(backend):
    model = LatencyModel()
    r = search("dhyan chand career", backend, k=1)[0]
    a, b = fetch_document(r, backend, model), fetch_document(r, backend, model)
    assert (a.fetch_latency, a.convert_latency) == (b.fetch_latency, b.convert_latency)
    n_bytes = len(backend.fetch(r.location))
    assert a.fetch_latency == pytest.approx(0.5 + n_bytes / 250_000)
    assert a.convert_latency == pytest.approx(0.02 + 0.004 * len(a.sentences))


def test_fetch_all_preserves_order_and_counts_faults(backend):
    results = search("dhyan chand career", backend) + search("childhood dhyan chand achievements", backend)
    docs = fetch_all(results, backend, max_workers=8)
    assert [d.source for d in docs] == results
    model = LatencyModel()
    assert fetch_all(results, backend, model, max_workers=8) == fetch_all(results, backend, model, max_workers=1)
    assert sum(d.fault for d in docs) == 1
    for d in docs:
        assert math.isfinite(d.fetch_latency) and math.isfinite(d.convert_latency)
        assert d.fetch_latency >= 0 and d.convert_latency >= 0
        assert d.fault or all(s.strip() and "<" not in s and ">" not in s for s in d.sentences)


def test_doc_id():
    assert Document(SearchResult("q", 2, "x"), ()).doc_id == "q#2"


def test_live_backend_parsing_without_network():
    page = """<html><body>
      <div class="r"><a href="/one">First <b>hit</b></a></div>
      <div class="r"><a href="http://other.example/two">Second</a></div>
      <div class="r"><a href="/one">Duplicate</a></div>
      <div class="ad"><a href="/ad">Ad</a></div>
      <div class="r">no link</div></body></html>"""
    live = LiveBackend("http://search.example/find", "div.r")
    results = live.parse_results("q", page, "http://search.example/find?q=q", k=10)
    assert [(r.rank, r.location, r.title) for r in results] == [
        (1, "http://search.example/one", "First hit"),
        (2, "http://other.example/two", "Second"),
    ]
    assert len(live.parse_results("q", page, "http://search.example/", k=1)) == 1
    assert live._url("a b") == "http://search.example/find?q=a+b"
    assert LiveBackend("http://s.example/?x={query}")._url("a b") == "http://s.example/?x=a+b"


def test_live_backend_unreachable():
    live = LiveBackend("http://127.0.0.1:9/", timeout_seconds=0.5)
    with pytest.raises(BackendUnavailable):
        live.search("q", 3)
    doc = fetch_document(SearchResult("q", 1, "http://127.0.0.1:9/page"), live)
    assert doc.fault
