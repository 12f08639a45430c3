"""
Redundancy removal
==================
"""

import numpy as np

from qfsum import DedupConfig, line_keywords, overlap_dedup, pro_score, probabilistic_dedup

lines = line_keywords([
    "Dhyan Chand joined the army in 1922 when he was sixteen.",
    "Dhyan Chand joined the army in 1922 at the age of sixteen.",
    "India won gold at Amsterdam.",
    "Roop Singh was his brother.",
])
for l in lines:
    print(l.line_index, l.keywords)

# second line's keywords are a subset of the first: dropped
print([l.line_index for l in overlap_dedup(lines)])

# the score never exceeds 1/C, so a 0.5 threshold only bites at C = 1
C = np.arange(1, 9)
table = np.array([[pro_score(P, c) if P <= c else np.nan for c in C] for P in range(9)])
np.set_printoptions(precision=3, suppress=True)
print(table)
print(np.nanmax(table, axis=0) * C)  # all ones

# two identical lines: the first (the reference) goes
twins = line_keywords(["Eden Gardens is in Kolkata.", "Eden Gardens is in Kolkata."])
print([l.line_index for l in probabilistic_dedup(twins, DedupConfig())])
