"""Independent oracles used to freeze and cross-check expected values.

Everything here recounts from first principles (document scans, set algebra,
base-2 logs) so the implementations under test share no code path with it.
"""

from __future__ import annotations

import math


def scan_phrase_docs(doc_tokens: dict[str, list[str]], phrase: str) -> set[str]:
    """Documents containing the phrase as a contiguous token run (brute force)."""
    needle = phrase.lower().split()
    n = len(needle)
    found = set()
    for doc_id, tokens in doc_tokens.items():
        lowered = [t.lower() for t in tokens]
        if any(lowered[i : i + n] == needle for i in range(len(lowered) - n + 1)):
            found.add(doc_id)
    return found


def scan_hits(doc_tokens: dict[str, list[str]], phrase: str) -> int:
    return len(scan_phrase_docs(doc_tokens, phrase))


def scan_pair_hits(doc_tokens: dict[str, list[str]], a: str, b: str) -> int:
    return len(scan_phrase_docs(doc_tokens, a) & scan_phrase_docs(doc_tokens, b))


def log2_distance(fa: int, fb: int, f2: int, n: int, cap: float = 1.0) -> float:
    """Co-occurrence distance recomputed with base-2 logs."""
    if f2 == 0:
        return cap
    numerator = max(math.log2(fa), math.log2(fb)) - math.log2(f2)
    denominator = math.log2(n) - min(math.log2(fa), math.log2(fb))
    return numerator / denominator


def oracle_matrix(
    doc_tokens: dict[str, list[str]],
    missing: list[str],
    known: list[str],
    cap: float = 1.0,
) -> dict[tuple[str, str], float]:
    """Full relatedness matrix recounted by document scans and base-2 logs."""
    n = len(doc_tokens)
    distances = {}
    for miss in missing:
        for term in known:
            fa = scan_hits(doc_tokens, miss)
            fb = scan_hits(doc_tokens, term)
            f2 = scan_pair_hits(doc_tokens, miss, term)
            distances[(miss, term)] = log2_distance(fa, fb, f2, n, cap)
    denominator = sum(distances.values())
    if denominator == 0:
        return {pair: 1.0 for pair in distances}
    return {pair: 1.0 - d / denominator for pair, d in distances.items()}


def naive_placement_matches(system: list, expert: list, require_relation: bool = True) -> int:
    """O(n*m) pairwise matcher for placement precision."""
    count = 0
    for placed in system:
        for gold in expert:
            same = (
                placed.term == gold.term
                and placed.target == gold.target
                and placed.sense == gold.sense
            )
            if same and (not require_relation or placed.relation == gold.relation):
                count += 1
                break
    return count
