"""Toolkit for enriching an ontology with terms mined from a text corpus.

The pipeline mines n-grams from corpus text, splits them into terms the
ontology already knows and terms it is missing, filters the missing ones by
document hit counts, ranks missing/known term pairs with a normalized
co-occurrence distance, arbitrates a relation per pair from surface-pattern
hit counts, and finally places the surviving terms into the ontology
hierarchy.
"""

__version__ = "0.1.0"
