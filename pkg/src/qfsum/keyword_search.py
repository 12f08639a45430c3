"""Single-document answer selection by keyword match count."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NoAnswer
from .frontend import KeywordSet, tokenize
from .retrieval import Document


@dataclass(frozen=True)
class ScoredSentence:
    index: int
    text: str
    match_count: int


def sentence_terms(sentence: str) -> set[str]:
    return {t.lower() for t in tokenize(sentence)}


def score_sentence(sentence: str, keywords: KeywordSet) -> int:
    """Number of distinct keywords present as whole tokens (case-insensitive)."""
    terms = sentence_terms(sentence)
    return sum(1 for k in set(keywords.all) if k in terms)


def score_document(doc: Document, keywords: KeywordSet) -> list[ScoredSentence]:
    return [ScoredSentence(i, s, score_sentence(s, keywords)) for i, s in enumerate(doc.sentences)]


def best_answer(doc: Document, keywords: KeywordSet) -> ScoredSentence:
    """Highest-scoring sentence, earliest on ties. Raises NoAnswer if nothing matches."""
    if doc.fault:
        raise NoAnswer(f"document {doc.doc_id} is a fault document")
    best = None
    for scored in score_document(doc, keywords):
        if best is None or scored.match_count > best.match_count:
            best = scored
    if best is None or best.match_count == 0:
        raise NoAnswer(f"no sentence of {doc.doc_id} matches the query keywords")
    return best


def answer_with_context(doc: Document, best: ScoredSentence, context: int = 0) -> str:
    """The answer sentence joined with up to ``context`` neighbours on each side."""
    lo = max(0, best.index - context)
    hi = min(len(doc.sentences), best.index + context + 1)
    return " ".join(doc.sentences[lo:hi])
