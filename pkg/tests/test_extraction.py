import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qfsum.errors import AllDocumentsFaulty, EmptyDocument
from qfsum.extraction import (Component, SelectionMode, SelectionPolicy, extract_all, segment, select,
                              weigh)
from qfsum.frontend import KeywordSet
from qfsum.retrieval import Document, FixtureBackend, SearchResult, fetch_document

TOPK = SelectionPolicy(SelectionMode.TOP_K, 3)
ABOVE = SelectionPolicy(SelectionMode.ABOVE_AVERAGE)


def doc(n, name="d", fault=False):
    return Document(SearchResult(name, 1, name), tuple(f"s{i}." for i in range(n)), fault=fault)


def comps(*ws):
    # weight w realised as w/2 nouns plus w%2 pronouns
    return [Component("d", i * 10, ("x",), N=w // 2, Pn=w % 2) for i, w in enumerate(ws)]


def test_segment_examples():
    assert [len(c.sentences) for c in segment(doc(25))] == [10, 10, 5]
    assert len(segment(doc(10))) == 1
    assert [c.start_index for c in segment(doc(25))] == [0, 10, 20]
    with pytest.raises(EmptyDocument):
        segment(doc(0))
    with pytest.raises(ValueError):
        segment(doc(3), 0)


def test_segment_count_all_lengths():
    for n in range(1, 201):
        parts = segment(doc(n))
        assert len(parts) == math.ceil(n / 10)
        assert sum((c.sentences for c in parts), ()) == doc(n).sentences
        assert all(1 <= len(c.sentences) <= 10 for c in parts)


def test_weigh_examples():
    kw = KeywordSet(("dhyan", "chand"), ("he",))
    c = weigh(Component("d", 0, ("Dhyan Chand played.", "He was Dhyan.", "He won.")), kw)
    assert (c.N, c.Pn, c.W) == (3, 2, 8)
    c = weigh(Component("d", 0, ("Nothing here.",)), kw)
    assert (c.N, c.Pn, c.W) == (0, 0, 0)
    # distinct per sentence, counted again in each sentence
    c = weigh(Component("d", 0, ("Chand chand chand.", "Chand.")), kw)
    assert c.N == 2


def test_weigh_golden_fixture_block(corpus):
    d = fetch_document(SearchResult("q", 1, "dc_career_1.html"), FixtureBackend(corpus))
    first = segment(d)[0]
    # frozen from a character-loop token scan of the first ten sentences
    c = weigh(first, KeywordSet(("dhyan", "chand", "career"), ("he",)))
    assert (c.N, c.Pn, c.W) == (10, 4, 24)


def test_select_examples():
    assert [c.W for c in select(comps(5, 9, 9, 1), TOPK)] == [9, 9, 5]
    assert [c.start_index for c in select(comps(5, 9, 9, 1), TOPK)] == [10, 20, 0]
    assert select(comps(4, 4, 4), ABOVE) == []
    assert [c.W for c in select(comps(0, 10, 2), ABOVE)] == [10]
    assert select([], TOPK) == [] and select([], ABOVE) == []


def test_singleton_edge():
    only = comps(7)
    assert select(only, TOPK) == only
    assert select(only, ABOVE) == []


def test_policy_validation():
    with pytest.raises(ValueError):
        SelectionPolicy(SelectionMode.TOP_K, 0)
    assert SelectionPolicy("above_average", 0).mode is SelectionMode.ABOVE_AVERAGE


def test_extract_all():
    docs = [doc(25, f"d{i}") for i in range(9)]
    kw = KeywordSet(("s1",))
    out = extract_all(docs, kw, TOPK)
    assert len(out) <= 27
    assert [c.doc_ref for c in out] == sorted(c.doc_ref for c in out)
    out = extract_all([doc(5, "bad", fault=True), doc(12, "ok")], kw, TOPK)
    assert {c.doc_ref for c in out} == {"ok#1"}
    with pytest.raises(AllDocumentsFaulty):
        extract_all([doc(0, "a", fault=True), doc(3, "b", fault=True)], kw)


weights = st.lists(st.integers(0, 40), min_size=1, max_size=15)


@given(weights, st.integers(1, 6))
def test_selection_sizes_and_threshold(ws, k):
    cs = comps(*ws)
    assert len(select(cs, SelectionPolicy(SelectionMode.TOP_K, k))) == min(k, len(cs))
    mean = sum(ws) / len(ws)
    assert all(c.W > mean for c in select(cs, ABOVE))


@given(st.lists(st.sampled_from(["he", "a", "b", "zz"]), max_size=8))
def test_weigh_monotone(words):
    kw = KeywordSet(("a", "b"), ("he",))
    base = weigh(Component("d", 0, (" ".join(words) + ".",)), kw)
    plus_noun = weigh(Component("d", 0, base.sentences + ("a.",)), kw)
    plus_pron = weigh(Component("d", 0, base.sentences + ("he.",)), kw)
    assert plus_noun.W == base.W + 2 and plus_pron.W == base.W + 1


@given(st.lists(st.text(min_size=1, max_size=5), min_size=1, max_size=40), st.integers(1, 12))
def test_segment_concatenation_identity(sents, size):
    d = Document(SearchResult("q", 1, "x"), tuple(sents))
    assert sum((c.sentences for c in segment(d, size)), ()) == d.sentences

