"""Redundancy removal over the concatenated extracted components.

Two passes run in order. The overlap pass drops a later line whose keyword
set repeats an earlier one (equal size with at least ``overlap_fraction``
shared, or strict subset/superset). The probabilistic pass scores each
reference line against the remaining lines with

    PRO = (1/C) * (P/C)**P * (1 - P/C)**(C - P)

where P is the number of matching lines and C the number compared, and
drops the reference line when PRO exceeds the threshold.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, EmptySummary
from .frontend import Lexicon, default_lexicon, keyword_set, tag, tokenize

# absorbs float noise when comparing PRO against a mean of PRO values
_EPS = 1e-12


class ThresholdMode(str, enum.Enum):
    FIXED = "fixed"
    DOC_AVERAGE = "doc_average"


@dataclass(frozen=True)
class DedupConfig:
    overlap_fraction: float = 0.75
    threshold_mode: ThresholdMode = ThresholdMode.FIXED
    fixed_threshold: float = 0.5

    def __post_init__(self):
        object.__setattr__(self, "threshold_mode", ThresholdMode(self.threshold_mode))
        if not 0 < self.overlap_fraction <= 1:
            raise ValueError("overlap_fraction must be in (0, 1]")
        if not 0 < self.fixed_threshold <= 1:
            raise ValueError("fixed_threshold must be in (0, 1]")


@dataclass(frozen=True)
class LineKeywords:
    line_index: int
    text: str
    keywords: tuple[str, ...]
    origin: tuple[str, int] | None = None  # (doc_ref, sentence index in that document)


@dataclass(frozen=True)
class Summary:
    lines: tuple[LineKeywords, ...]
    input_lines: int

    @property
    def sentences(self) -> list[str]:
        return [line.text for line in self.lines]


def _line(index, text, lexicon, origin=None) -> LineKeywords:
    kw = keyword_set(tag(tokenize(text), lexicon))
    return LineKeywords(index, text, kw.all, origin)


def line_keywords(sentences, lexicon: Lexicon | None = None) -> list[LineKeywords]:
    lexicon = lexicon or default_lexicon()
    return [_line(i, s, lexicon) for i, s in enumerate(sentences)]


def _overlap_redundant(ref: set, other: set, fraction: float) -> bool:
    if not ref or not other:
        return False
    if len(ref) == len(other):
        return len(ref & other) >= fraction * len(ref)
    small, large = (ref, other) if len(ref) < len(other) else (other, ref)
    return small <= large


def overlap_dedup(lines, cfg: DedupConfig = DedupConfig()) -> list[LineKeywords]:
    kept: list[LineKeywords] = []
    kept_sets: list[set] = []
    for line in lines:
        ks = set(line.keywords)
        if any(_overlap_redundant(ref, ks, cfg.overlap_fraction) for ref in kept_sets):
            continue
        kept.append(line)
        kept_sets.append(ks)
    return kept


def pro_score(P: int, C: int) -> float:
    if C < 1 or P < 0 or P > C:
        raise DomainError(f"pro_score needs 0 <= P <= C and C >= 1, got P={P}, C={C}")
    p = P / C
    # Python evaluates 0.0 ** 0 as 1.0, the convention wanted here
    return (1 / C) * p ** P * (1 - p) ** (C - P)


def _match_matrix(lines, fraction: float) -> np.ndarray:
    sets = [set(line.keywords) for line in lines]
    n = len(sets)
    m = np.zeros((n, n), dtype=bool)
    for i in range(n):
        for j in range(i + 1, n):
            a, b = sets[i], sets[j]
            if a and b and len(a & b) >= fraction * min(len(a), len(b)):
                m[i, j] = m[j, i] = True
    return m


def _sweep(match: np.ndarray, alive: np.ndarray, cfg: DedupConfig) -> np.ndarray:
    alive = alive.copy()
    idx = np.flatnonzero(alive)
    if len(idx) < 2:
        return alive
    if cfg.threshold_mode is ThresholdMode.FIXED:
        threshold = cfg.fixed_threshold
    else:
        c = len(idx) - 1
        scores = [pro_score(int(match[r, idx].sum()), c) for r in idx]
        threshold = math.fsum(scores) / len(scores)
    for r in idx:
        others = alive.copy()
        others[r] = False
        C = int(others.sum())
        if C == 0:
            break
        P = int((match[r] & others).sum())
        if P >= 1 and pro_score(P, C) > threshold + _EPS:
            alive[r] = False
    return alive


def probabilistic_dedup(lines, cfg: DedupConfig = DedupConfig()) -> list[LineKeywords]:
    """Repeat the scoring sweep until it removes nothing more.

    Only lines with at least one match can be dropped. With a fixed 0.5
    threshold this fires only when exactly two matching lines remain,
    since PRO never exceeds 1/C.
    """
    lines = list(lines)
    match = _match_matrix(lines, cfg.overlap_fraction)
    alive = np.ones(len(lines), dtype=bool)
    while True:
        nxt = _sweep(match, alive, cfg)
        if nxt.sum() == alive.sum():
            break
        alive = nxt
    return [line for line, a in zip(lines, alive) if a]


def aggregate(components, cfg: DedupConfig = DedupConfig(), lexicon: Lexicon | None = None) -> Summary:
    lexicon = lexicon or default_lexicon()
    lines = []
    for comp in components:
        for offset, sentence in enumerate(comp.sentences):
            origin = (comp.doc_ref, comp.start_index + offset)
            lines.append(_line(len(lines), sentence, lexicon, origin))
    survivors = probabilistic_dedup(overlap_dedup(lines, cfg), cfg)
    if not survivors:
        raise EmptySummary(f"all {len(lines)} lines were eliminated")
    return Summary(tuple(survivors), len(lines))
