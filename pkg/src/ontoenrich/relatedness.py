"""Statistical relatedness between missing terms and ontology terms.

The building block is a normalized co-occurrence distance between two terms,
computed from their individual document frequencies f1, their joint frequency
f2, and the collection size N (all counts come from a hit-count provider):

    distance(a, b) = (max(log f1(a), log f1(b)) - log f2(a, b))
                     / (log N - min(log f1(a), log f1(b)))

The distance is 0 when two terms always occur together and grows as they
share fewer documents. It is a ratio of log differences, so the log base
cancels. When f2 is 0 the expression is undefined and a configurable cap is
substituted (default 1.0, the practical upper range on real corpora).

Relatedness then normalizes each pair's distance by the sum of distances
over the whole batch of (missing term, ontology term) pairs in a run:

    relatedness(m, t) = 1 - distance(m, t) / sum over all batch pairs

which lands every cell in [0, 1]; 1 means maximally related.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .hitcounts import HitCountProvider
from .textpipe import NGram

logger = logging.getLogger(__name__)


class DegenerateDenominatorError(ValueError):
    """A term occurs in at least as many documents as the collection holds."""


@dataclass(frozen=True)
class DistanceConfig:
    zero_cooccurrence_cap: float = 1.0

    def __post_init__(self):
        if self.zero_cooccurrence_cap < 0:
            raise ValueError("zero co-occurrence cap must be >= 0")


def normalized_distance(
    a: str,
    b: str,
    provider: HitCountProvider,
    cfg: DistanceConfig = DistanceConfig(),
) -> float:
    """Co-occurrence distance between two terms; see the module docstring."""
    fa, fb = provider.hits(a), provider.hits(b)
    if fa <= 0 or fb <= 0:
        raise ValueError(f"distance needs positive hit counts, got {a!r}={fa}, {b!r}={fb}")
    n = provider.total_docs()
    if n <= max(fa, fb):
        raise DegenerateDenominatorError(
            f"collection size {n} must exceed the hit counts of {a!r} and {b!r}"
        )
    f2 = provider.pair_hits(a, b)
    if f2 == 0:
        return cfg.zero_cooccurrence_cap
    if f2 > min(fa, fb):
        raise ValueError(
            f"provider reports joint count {f2} above min individual count "
            f"for ({a!r}, {b!r})"
        )
    numerator = max(math.log(fa), math.log(fb)) - math.log(f2)
    denominator = math.log(n) - min(math.log(fa), math.log(fb))
    return numerator / denominator


def ngram_hits_filter(missing: Iterable[NGram], provider: HitCountProvider) -> list[NGram]:
    """Keep exactly the n-grams with a positive hit count, in lexicographic order."""
    ordered = sorted(missing, key=lambda g: g.key)
    return [gram for gram in ordered if provider.hits(gram.surface) > 0]


def drop_unusable_terms(
    terms: Iterable[str], provider: HitCountProvider
) -> tuple[list[str], list[str]]:
    """Split terms into usable (0 < hits < N) and dropped, warning per drop."""
    kept, dropped = [], []
    n = provider.total_docs()
    for term in sorted(set(terms), key=str.lower):
        count = provider.hits(term)
        if 0 < count < n:
            kept.append(term)
        else:
            dropped.append(term)
            logger.warning(
                "dropping term %r from the relatedness batch (hits=%d, total docs=%d)",
                term, count, n,
            )
    return kept, dropped


@dataclass(frozen=True)
class RelatednessMatrix:
    missing_terms: tuple[str, ...]
    ontology_terms: tuple[str, ...]
    cells: tuple[tuple[float, ...], ...]
    denominator: float

    def value(self, missing_term: str, ontology_term: str) -> float:
        row = self.missing_terms.index(missing_term)
        col = self.ontology_terms.index(ontology_term)
        return self.cells[row][col]

    def row(self, missing_term: str) -> dict[str, float]:
        idx = self.missing_terms.index(missing_term)
        return dict(zip(self.ontology_terms, self.cells[idx]))


def _sorted_unique(terms: Iterable[str], side: str) -> tuple[str, ...]:
    ordered = sorted(set(terms), key=lambda t: (t.lower(), t))
    lowered = [t.lower() for t in ordered]
    if len(set(lowered)) != len(lowered):
        raise ValueError(f"{side} terms contain case-duplicate surfaces")
    if not ordered:
        raise ValueError(f"{side} term set is empty")
    return tuple(ordered)


def relatedness_matrix(
    missing_terms: Iterable[str],
    ontology_terms: Iterable[str],
    provider: HitCountProvider,
    cfg: DistanceConfig = DistanceConfig(),
) -> RelatednessMatrix:
    """Batch relatedness: one row per missing term, one column per known term.

    All terms must already satisfy 0 < hits < total docs; the shared
    denominator is the ordered sum of the batch's pairwise distances.
    """
    rows = _sorted_unique(missing_terms, "missing")
    cols = _sorted_unique(ontology_terms, "ontology")
    distances = [
        [normalized_distance(miss, term, provider, cfg) for term in cols] for miss in rows
    ]
    denominator = 0.0
    for row in distances:
        for value in row:
            denominator += value
    if len(rows) * len(cols) == 1:
        logger.warning(
            "single-pair batch: relatedness is 0 by construction for (%r, %r)",
            rows[0], cols[0],
        )
    if denominator == 0.0:
        cells = tuple(tuple(1.0 for _ in cols) for _ in rows)
    else:
        cells = tuple(
            tuple(1.0 - value / denominator for value in row) for row in distances
        )
    return RelatednessMatrix(rows, cols, cells, denominator)


@dataclass(frozen=True)
class SelectionConfig:
    """Candidate selection knobs: relatedness threshold and per-term cap."""

    threshold: float = 0.5
    top_k: int | None = None

    def __post_init__(self):
        if not 0.0 <= self.threshold <= 1.0:
            raise ValueError("threshold must be in [0, 1]")
        if self.top_k is not None and self.top_k < 1:
            raise ValueError("top_k must be >= 1")


@dataclass(frozen=True)
class CandidateSet:
    """Per missing term: ontology terms at or above the threshold, best first."""

    per_term: Mapping[str, tuple[tuple[str, float], ...]]
    threshold: float

    def pairs(self) -> list[tuple[str, str]]:
        return [
            (miss, term)
            for miss in self.per_term
            for term, _ in self.per_term[miss]
        ]


def select_candidates(matrix: RelatednessMatrix, cfg: SelectionConfig) -> CandidateSet:
    per_term = {}
    for i, miss in enumerate(matrix.missing_terms):
        scored = [
            (term, matrix.cells[i][j])
            for j, term in enumerate(matrix.ontology_terms)
            if matrix.cells[i][j] >= cfg.threshold
        ]
        scored.sort(key=lambda pair: (-pair[1], pair[0].lower(), pair[0]))
        if cfg.top_k is not None:
            scored = scored[: cfg.top_k]
        per_term[miss] = tuple(scored)
    return CandidateSet(per_term, cfg.threshold)


def write_matrix(matrix: RelatednessMatrix, path: str | Path) -> None:
    """Tab-separated export: header row of column terms, one row per missing term."""
    lines = ["\t".join(["term", *matrix.ontology_terms])]
    for miss, row in zip(matrix.missing_terms, matrix.cells):
        lines.append("\t".join([miss, *(f"{value:.6f}" for value in row)]))
    Path(path).write_text("".join(line + "\n" for line in lines), encoding="utf-8")
