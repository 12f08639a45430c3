"""Component extraction: fixed-size sentence blocks weighted by keyword
matches, W = 2*N + Pn, and per-document selection of the heaviest blocks."""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, replace

from .errors import AllDocumentsFaulty, EmptyDocument
from .frontend import KeywordSet
from .keyword_search import sentence_terms
from .retrieval import Document

log = logging.getLogger(__name__)

DEFAULT_COMPONENT_SIZE = 10
NOUN_WEIGHT = 2
PRONOUN_WEIGHT = 1


@dataclass(frozen=True)
class Component:
    doc_ref: str
    start_index: int
    sentences: tuple[str, ...]
    N: int = 0
    Pn: int = 0

    @property
    def W(self) -> int:
        return NOUN_WEIGHT * self.N + PRONOUN_WEIGHT * self.Pn


class SelectionMode(str, enum.Enum):
    TOP_K = "topk"
    ABOVE_AVERAGE = "above_average"


@dataclass(frozen=True)
class SelectionPolicy:
    mode: SelectionMode = SelectionMode.TOP_K
    k: int = 3

    def __post_init__(self):
        object.__setattr__(self, "mode", SelectionMode(self.mode))
        if self.mode is SelectionMode.TOP_K and self.k < 1:
            raise ValueError("k must be >= 1 for top-k selection")


def segment(doc: Document, component_size: int = DEFAULT_COMPONENT_SIZE) -> list[Component]:
    if component_size < 1:
        raise ValueError("component_size must be >= 1")
    if not doc.sentences:
        raise EmptyDocument(f"document {doc.doc_id} has no sentences")
    return [
        Component(doc.doc_id, i, tuple(doc.sentences[i:i + component_size]))
        for i in range(0, len(doc.sentences), component_size)
    ]


def weigh(component: Component, keywords: KeywordSet) -> Component:
    """Set N and Pn; each sentence adds the number of distinct noun
    (pronoun) keywords it contains."""
    nouns, pronouns = set(keywords.nouns), set(keywords.pronouns)
    n = pn = 0
    for sentence in component.sentences:
        terms = sentence_terms(sentence)
        n += len(terms & nouns)
        pn += len(terms & pronouns)
    return replace(component, N=n, Pn=pn)


def select(components, policy: SelectionPolicy = SelectionPolicy()) -> list[Component]:
    components = list(components)
    if not components:
        return []
    if policy.mode is SelectionMode.TOP_K:
        return sorted(components, key=lambda c: (-c.W, c.start_index))[:policy.k]
    total = sum(c.W for c in components)
    # W > total/n, kept in integers
    return [c for c in components if c.W * len(components) > total]


def extract_document(doc: Document, keywords: KeywordSet, policy: SelectionPolicy = SelectionPolicy(),
                     component_size: int = DEFAULT_COMPONENT_SIZE) -> list[Component]:
    weighed = [weigh(c, keywords) for c in segment(doc, component_size)]
    return select(weighed, policy)


def extract_all(docs, keywords: KeywordSet, policy: SelectionPolicy = SelectionPolicy(),
                component_size: int = DEFAULT_COMPONENT_SIZE) -> list[Component]:
    docs = list(docs)
    usable = [d for d in docs if not d.fault]
    if not usable:
        raise AllDocumentsFaulty(f"all {len(docs)} documents are faulty")
    if len(usable) < len(docs):
        log.info("skipped %d fault documents", len(docs) - len(usable))
    out: list[Component] = []
    for doc in usable:
        out.extend(extract_document(doc, keywords, policy, component_size))
    return out
