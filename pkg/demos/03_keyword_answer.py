"""
Answering a wh-question from the top document
=============================================
"""

from qfsum import FixtureBackend, best_answer, bundled_corpus, fetch_document, parse_query, search
from qfsum.keyword_search import score_document

backend = FixtureBackend(bundled_corpus())
q = parse_query("What is the score of sachin tendulkar in world cup 2007?")

# keywords joined in query order form the search string; only rank 1 is read
top = search(" ".join(q.keywords.all), backend, k=1)[0]
doc = fetch_document(top, backend)
print(top.title, "-", len(doc.sentences), "sentences")

for s in score_document(doc, q.keywords):
    print(s.match_count, s.text)

print("answer:", best_answer(doc, q.keywords).text)
