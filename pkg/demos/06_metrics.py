"""
Evaluation harness
==================
"""

from qfsum import bundled_path, load_config
from qfsum.metrics import RunRecord, evaluate, mean_rates, mos, precision, render_tsv, summarization_ratio

print(precision(341, 370), precision(137, 150))
print(mos([8, 7, 9]), summarization_ratio(12, 40))

# latencies in seconds, one entry per document
rec = RunRecord("demo", "score", doc_extraction_latency=(1.0, 4.0), info_retrieval_latency=(2.0, 2.0))
print(mean_rates([rec]))

config = load_config(bundled_path("fixture.conf"))
reports, records = evaluate(bundled_path("labels.tsv"), config)
print(render_tsv(reports))
for r in records:
    print(r.query_id, r.status, r.fault_docs, r.effective_ratio)
