"""
Tagging queries and picking a search path
=========================================

A query with a wh-word goes down the keyword path; anything else is
treated as an entity query and expanded through the concept tree.
"""

from qfsum import default_lexicon, parse_query

lexicon = default_lexicon()

for text in ["What is the score of sachin tendulkar in world cup 2007?",
             "When is the next hockey world cup?",
             "Dhanraj pillai",
             "Childhood of Dhyan chand"]:
    q = parse_query(text, lexicon)
    print(f"{q.category.value:14s} {text}")
    print("   tags:", " ".join(f"{t.surface}/{t.tag.value}" for t in q.tokens))
    print("   nouns:", q.keywords.nouns, "pronouns:", q.keywords.pronouns)

# "How" is not a wh-word by default; the lexicon can be widened
q = parse_query("How many goals did Dhyan Chand score", lexicon.with_wh_words(["how"]))
print(q.category.value)
