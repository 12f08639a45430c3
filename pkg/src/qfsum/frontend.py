"""Query front-end: tokenizing, lexicon tagging, keyword extraction and
query categorization."""

from __future__ import annotations

import enum
import functools
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .errors import EmptyKeywords, LexiconMissing

_TOKEN_RE = re.compile(r"[^\W_]+(?:['’][^\W_]+)*")

LEXICON_TAGS = {"WH", "PRON", "NOUN", "STOP"}
# higher wins when one token carries several lexicon tags
_PRECEDENCE = {"WH": 3, "PRON": 2, "NOUN": 1, "STOP": 0}


class Tag(str, enum.Enum):
    NOUN = "Noun"
    PRONOUN = "Pronoun"
    WH_WORD = "WhWord"
    OTHER = "Other"


class QueryCategory(str, enum.Enum):
    KEYWORD_SEARCH = "KeywordSearch"
    CONCEPT_WISE = "ConceptWise"


@dataclass(frozen=True)
class TaggedToken:
    surface: str
    tag: Tag

    @property
    def normalized(self) -> str:
        return self.surface.lower()


@dataclass(frozen=True)
class KeywordSet:
    """Ordered, deduplicated noun and pronoun keywords (normalized forms)."""

    nouns: tuple[str, ...] = ()
    pronouns: tuple[str, ...] = ()

    def __post_init__(self):
        nouns = tuple(dict.fromkeys(self.nouns))
        pronouns = tuple(dict.fromkeys(self.pronouns))
        if "" in nouns or "" in pronouns:
            raise ValueError("keywords must be nonempty strings")
        if set(nouns) & set(pronouns):
            raise ValueError("nouns and pronouns must be disjoint")
        object.__setattr__(self, "nouns", nouns)
        object.__setattr__(self, "pronouns", pronouns)

    @property
    def all(self) -> tuple[str, ...]:
        return self.nouns + self.pronouns

    def __len__(self) -> int:
        return len(self.nouns) + len(self.pronouns)

    def __bool__(self) -> bool:
        return len(self) > 0


@dataclass(frozen=True)
class Query:
    raw: str
    tokens: tuple[TaggedToken, ...]
    keywords: KeywordSet
    category: QueryCategory


@dataclass(frozen=True)
class Lexicon:
    """Closed-class word list. ``entries`` maps a lowercased token to one of
    ``WH``, ``PRON``, ``NOUN`` or ``STOP``."""

    entries: dict[str, str] = field(default_factory=dict)

    @property
    def wh_words(self) -> frozenset[str]:
        return frozenset(t for t, tag in self.entries.items() if tag == "WH")

    def with_wh_words(self, words) -> "Lexicon":
        entries = dict(self.entries)
        for w in words:
            entries[w.lower()] = "WH"
        return Lexicon(entries)

    def lookup(self, normalized: str) -> str | None:
        return self.entries.get(normalized)


def parse_lexicon(text: str, source: str = "<string>") -> Lexicon:
    entries: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2 or parts[1] not in LEXICON_TAGS:
            raise LexiconMissing(f"{source}:{lineno}: expected '<token> <tag>', got {line!r}")
        token, tag = parts[0].lower(), parts[1]
        old = entries.get(token)
        if old is None or _PRECEDENCE[tag] > _PRECEDENCE[old]:
            entries[token] = tag
    return Lexicon(entries)


def load_lexicon(path: str | Path | None = None) -> Lexicon:
    """Load a lexicon file; ``None`` loads the bundled one."""
    if path is None:
        return default_lexicon()
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise LexiconMissing(f"cannot read lexicon {path}: {exc}") from exc
    return parse_lexicon(text, str(path))


@functools.lru_cache(maxsize=1)
def default_lexicon() -> Lexicon:
    text = resources.files("qfsum.data").joinpath("lexicon.txt").read_text(encoding="utf-8")
    return parse_lexicon(text, "lexicon.txt")


def tokenize(raw: str) -> list[str]:
    return _TOKEN_RE.findall(raw)


def tag(tokens, lexicon: Lexicon) -> list[TaggedToken]:
    out = []
    for surface in tokens:
        entry = lexicon.lookup(surface.lower())
        if entry == "WH":
            t = Tag.WH_WORD
        elif entry == "PRON":
            t = Tag.PRONOUN
        elif entry == "NOUN":
            t = Tag.NOUN
        elif entry == "STOP":
            t = Tag.OTHER
        elif surface[:1].isupper() or surface[:1].isdigit():
            t = Tag.NOUN
        else:
            t = Tag.OTHER
        out.append(TaggedToken(surface, t))
    return out


def categorize(tokens) -> QueryCategory:
    if any(t.tag is Tag.WH_WORD for t in tokens):
        return QueryCategory.KEYWORD_SEARCH
    return QueryCategory.CONCEPT_WISE


def keyword_set(tokens) -> KeywordSet:
    """Like :func:`extract_keywords` but returns an empty set instead of raising."""
    nouns = [t.normalized for t in tokens if t.tag is Tag.NOUN]
    pronouns = [t.normalized for t in tokens if t.tag is Tag.PRONOUN]
    return KeywordSet(tuple(nouns), tuple(pronouns))


def extract_keywords(tokens) -> KeywordSet:
    kw = keyword_set(tokens)
    if not kw:
        raise EmptyKeywords("query contains no noun or pronoun keywords")
    return kw


def parse_query(raw: str, lexicon: Lexicon | None = None) -> Query:
    """Run the whole front-end. Raises EmptyKeywords for keyword-less input."""
    lexicon = lexicon or default_lexicon()
    tokens = tuple(tag(tokenize(raw), lexicon))
    return Query(raw, tokens, extract_keywords(tokens), categorize(tokens))
