"""Fault Symptom Similarity Matcher

Indexes short automotive fault texts and ranks stored faults against a
queried symptom with a weighted tf-idf cosine measure. Edit distances,
PageRank and k-means are shipped alongside as reference algorithms.
"""

__version__ = "1.0.0"
