"""Concept hierarchy used to expand entity queries into concept searches.

Tree files are a strict subset of JSON: every node is an object with a
``label`` and optional ``aliases``, ``concepts`` and ``children``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .errors import TreeParseError, TreeValidationError
from .frontend import KeywordSet

_FIELDS = {"label", "aliases", "concepts", "children"}


@dataclass(frozen=True)
class ConceptNode:
    label: str
    aliases: tuple[str, ...] = ()
    concepts: tuple[str, ...] = ()
    children: tuple["ConceptNode", ...] = ()

    def names(self) -> tuple[str, ...]:
        return (self.label,) + self.aliases

    def walk(self, depth=0, parents=()):
        """Pre-order traversal yielding ``(node, depth, ancestors)``."""
        yield self, depth, parents
        for child in self.children:
            yield from child.walk(depth + 1, parents + (self,))


@dataclass(frozen=True)
class ConceptTree:
    root: ConceptNode

    @property
    def default_concepts(self) -> tuple[str, ...]:
        return self.root.concepts


@dataclass(frozen=True)
class ExpandedQuery:
    base_keywords: KeywordSet
    concept_queries: tuple[tuple[str, str], ...]
    keywords: KeywordSet = field(default_factory=KeywordSet)


def _string_list(obj, key, where):
    value = obj.get(key, [])
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise TreeParseError(f"{where}: '{key}' must be a list of strings")
    return value


def _build(obj, where="root") -> ConceptNode:
    if not isinstance(obj, dict):
        raise TreeParseError(f"{where}: node must be an object")
    unknown = set(obj) - _FIELDS
    if unknown:
        raise TreeParseError(f"{where}: unknown field(s) {sorted(unknown)}")
    label = obj.get("label")
    if not isinstance(label, str):
        raise TreeParseError(f"{where}: missing string 'label'")
    children = obj.get("children", [])
    if not isinstance(children, list):
        raise TreeParseError(f"{where}: 'children' must be a list")
    return ConceptNode(
        label=_norm(label),
        aliases=tuple(_norm(a) for a in _string_list(obj, "aliases", where)),
        concepts=tuple(_norm(c) for c in _string_list(obj, "concepts", where)),
        children=tuple(_build(c, f"{where}/{label}") for c in children),
    )


def _norm(text: str) -> str:
    return " ".join(text.lower().split())


def validate(tree: ConceptTree) -> None:
    """Raise TreeValidationError on the first violated tree invariant."""

    def visit(node, path, ancestors):
        if id(node) in ancestors:
            raise TreeValidationError(f"cycle at {'/'.join(path)}")
        for name in node.names():
            if not name or name != name.lower():
                raise TreeValidationError(f"bad label or alias {name!r} at {'/'.join(path)}")
        if len(set(node.concepts)) != len(node.concepts):
            raise TreeValidationError(f"duplicate concept words at {'/'.join(path)}")
        seen = set()
        for child in node.children:
            if child.label in seen:
                raise TreeValidationError(
                    f"duplicate sibling label {child.label!r} under {'/'.join(path)}"
                )
            seen.add(child.label)
            visit(child, path + [child.label], ancestors | {id(node)})

    visit(tree.root, [tree.root.label], frozenset())


def parse_tree(text: str) -> ConceptTree:
    if not text.strip():
        raise TreeParseError("empty tree file")
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TreeParseError(f"malformed tree: {exc}") from exc
    tree = ConceptTree(_build(obj))
    validate(tree)
    return tree


def load_tree(path: str | Path | None = None) -> ConceptTree:
    """Load and validate a tree file; ``None`` loads the bundled tree."""
    if path is None:
        text = resources.files("qfsum.data").joinpath("cricket_hockey.tree").read_text("utf-8")
    else:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise TreeParseError(f"cannot read {path}: {exc}") from exc
    return parse_tree(text)


def _node_dict(node: ConceptNode) -> dict:
    d = {"label": node.label}
    if node.aliases:
        d["aliases"] = list(node.aliases)
    if node.concepts:
        d["concepts"] = list(node.concepts)
    if node.children:
        d["children"] = [_node_dict(c) for c in node.children]
    return d


def serialize(tree: ConceptTree) -> str:
    return json.dumps(_node_dict(tree.root), indent=2) + "\n"


def _matches(name: str, words: set[str]) -> bool:
    return all(w in words for w in name.split())


def lookup(keywords: KeywordSet, tree: ConceptTree, default=None) -> list[str]:
    """Concept words for the deepest node named by the noun keywords.

    A multi-word label matches only when all of its words are keywords. Ties
    at equal depth go to the node met first in pre-order. A matched node
    without concepts inherits them from its nearest ancestor that has some;
    with no match at all ``default`` (or the root's concepts) is returned.
    """
    words = set(keywords.nouns)
    best = None
    best_depth = -1
    for node, depth, parents in tree.root.walk():
        if depth > best_depth and any(_matches(n, words) for n in node.names()):
            best, best_depth = (node, parents), depth
    if best is not None:
        node, parents = best
        for candidate in (node,) + tuple(reversed(parents)):
            if candidate.concepts:
                return list(candidate.concepts)
    return list(default if default is not None else tree.default_concepts)


def expand(keywords: KeywordSet, concepts) -> ExpandedQuery:
    """One search string per concept word, plus the keyword set updated with
    the concept words (counted as nouns)."""
    concepts = list(dict.fromkeys(concepts))
    base = " ".join(keywords.nouns)
    pairs = tuple((c, f"{base} {c}".strip()) for c in concepts)
    extra = [c for c in concepts if c not in keywords.pronouns]
    updated = KeywordSet(keywords.nouns + tuple(extra), keywords.pronouns)
    return ExpandedQuery(keywords, pairs, updated)


def render(tree: ConceptTree) -> str:
    lines = []
    for node, depth, _ in tree.root.walk():
        text = "  " * depth + node.label
        if node.aliases:
            text += " (" + ", ".join(node.aliases) + ")"
        if node.concepts:
            text += " [" + ", ".join(node.concepts) + "]"
        lines.append(text)
    return "\n".join(lines) + "\n"
