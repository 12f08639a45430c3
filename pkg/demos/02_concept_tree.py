"""
Concept tree lookup and query expansion
=======================================
"""

from qfsum import KeywordSet, expand, load_tree, lookup, render

tree = load_tree()  # bundled cricket and hockey tree
print(render(tree))

kw = KeywordSet(("childhood", "dhyan", "chand"))
concepts = lookup(kw, tree)          # deepest matching node wins
print(concepts)

expanded = expand(kw, concepts)      # one search string per concept
for concept, search_string in expanded.concept_queries:
    print(f"{concept:13s} -> {search_string!r}")

# no entity in the query: fall back to the root concepts
print(lookup(KeywordSet(("weather",)), tree))
