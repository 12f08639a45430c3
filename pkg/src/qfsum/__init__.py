"""Query-focused multi-document extractive summarization for the cricket and
hockey domains.

A query is tagged with a small lexicon. Queries holding a wh-word are
answered from the top search result by keyword overlap; entity queries are
expanded through a concept tree, summarized across many documents by
weighted component extraction, and deduplicated.
"""

from .aggregation import (DedupConfig, ThresholdMode, aggregate, line_keywords, overlap_dedup, pro_score,
                          probabilistic_dedup)
from .concept_tree import expand, load_tree, lookup, render
from .extraction import SelectionMode, SelectionPolicy, extract_all, segment, select, weigh
from .frontend import (KeywordSet, QueryCategory, Tag, categorize, default_lexicon, extract_keywords, parse_query,
                       tag, tokenize)
from .keyword_search import best_answer, score_sentence
from .pipeline import PipelineConfig, bundled_corpus, bundled_path, load_config, run_query
from .retrieval import FixtureBackend, LiveBackend, fetch_document, html_to_text, search, segment_sentences

__version__ = "0.1.0"
