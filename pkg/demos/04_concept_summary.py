"""
Multi-document summary for an entity query
==========================================

Documents are cut into ten-sentence components, each weighted by
W = 2*N + Pn, the heavy ones kept and the survivors deduplicated.
"""

from qfsum import bundled_path, load_config, run_query
from qfsum.extraction import segment, weigh

config = load_config(bundled_path("fixture.conf"))
result = run_query("Childhood of Dhyan chand", config)

print(result.concept_queries)
for d in result.documents:
    print(f"{d.doc_id:45s} fault={d.fault!s:5s} sentences={len(d.sentences)} {d.error}")

# component weights of the first healthy document
doc = next(d for d in result.documents if not d.fault)
for c in segment(doc):
    c = weigh(c, result.query.keywords)
    print(c.start_index, c.N, c.Pn, c.W)

print(result.text)
print("per-document ratios:", [round(r, 3) for r in result.doc_ratios])
print("faults:", result.fault_docs)
