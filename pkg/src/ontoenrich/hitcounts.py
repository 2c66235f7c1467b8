"""Document hit-count providers: the substrate for all statistics.

Two interchangeable implementations of one contract:

* ``CorpusIndex`` answers exact contiguous-phrase queries over a local corpus
  (counts are document frequencies, not raw occurrence counts).
* ``SnapshotTable`` replays counts recorded in a file, so runs against
  external engines stay reproducible offline. Absent keys count 0.

Snapshot file format (UTF-8, tab-separated):

    N  <total-documents>
    H  <query string>  <count>

Pair co-occurrence entries use the key ``"<a>" "<b>"`` with both phrases
normalized and sorted, e.g. ``H\t"jawa" "java"\t480000``.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Protocol, runtime_checkable

from .ontology import normalize_label
from .textpipe import Corpus, Stoplist, split_spans

DEFAULT_MAX_PHRASE_LEN = 3

# Punctuation treated as phrase boundaries when no stoplist is given.
# "|" must stay a boundary: the index file format separates spans with it.
DEFAULT_PUNCTUATION = frozenset('():,.;!?"[]{}|')


class EmptyCorpusError(ValueError):
    """An index cannot be built over zero documents."""


@runtime_checkable
class HitCountProvider(Protocol):
    def hits(self, phrase: str) -> int: ...

    def pair_hits(self, a: str, b: str) -> int: ...

    def pattern_hits(self, query: str) -> int: ...

    def total_docs(self) -> int: ...


def pair_key(a: str, b: str) -> str:
    """Canonical snapshot key for a co-occurrence query (symmetric)."""
    first, second = sorted((normalize_label(a), normalize_label(b)))
    return f'"{first}" "{second}"'


def _phrase_tokens(query: str, punctuation: frozenset[str]) -> tuple[str, ...] | None:
    """Normalized token tuple, or None when the query spans punctuation."""
    stoplist = Stoplist(words=frozenset(), punctuation=punctuation)
    spans = split_spans(query, stoplist)
    if len(spans) != 1:
        return None
    return tuple(token.lower() for token in spans[0])


class CorpusIndex:
    """Inverted index of contiguous token phrases over a document corpus.

    Phrases up to ``max_phrase_len`` tokens are answered from posting lists;
    longer queries (pattern strings) intersect unigram postings and verify
    adjacency against the stored token spans.
    """

    def __init__(
        self,
        doc_spans: Mapping[str, tuple[tuple[str, ...], ...]],
        max_phrase_len: int = DEFAULT_MAX_PHRASE_LEN,
        punctuation: frozenset[str] = DEFAULT_PUNCTUATION,
    ):
        if not doc_spans:
            raise EmptyCorpusError("cannot index an empty corpus")
        if max_phrase_len < 3:
            raise ValueError("max_phrase_len must be at least 3")
        self._doc_spans = {doc_id: doc_spans[doc_id] for doc_id in sorted(doc_spans)}
        self._max_phrase_len = max_phrase_len
        self._punctuation = punctuation
        self._postings: dict[tuple[str, ...], set[str]] = {}
        for doc_id, spans in self._doc_spans.items():
            for span in spans:
                for length in range(1, max_phrase_len + 1):
                    for start in range(len(span) - length + 1):
                        phrase = span[start : start + length]
                        self._postings.setdefault(phrase, set()).add(doc_id)

    @classmethod
    def build(
        cls,
        corpus: Corpus,
        max_phrase_len: int = DEFAULT_MAX_PHRASE_LEN,
        punctuation: frozenset[str] = DEFAULT_PUNCTUATION,
    ) -> "CorpusIndex":
        if len(corpus) == 0:
            raise EmptyCorpusError("cannot index an empty corpus")
        stoplist = Stoplist(words=frozenset(), punctuation=punctuation)
        doc_spans = {
            doc.id: tuple(
                tuple(token.lower() for token in span)
                for span in split_spans(doc.text, stoplist)
            )
            for doc in corpus.documents
        }
        return cls(doc_spans, max_phrase_len, punctuation)

    def _scan_long_phrase(self, tokens: tuple[str, ...]) -> set[str]:
        candidates: set[str] | None = None
        for token in set(tokens):
            docs = self._postings.get((token,), set())
            candidates = docs if candidates is None else candidates & docs
            if not candidates:
                return set()
        assert candidates is not None
        matched = set()
        n = len(tokens)
        for doc_id in candidates:
            for span in self._doc_spans[doc_id]:
                if any(span[i : i + n] == tokens for i in range(len(span) - n + 1)):
                    matched.add(doc_id)
                    break
        return matched

    def doc_ids(self, phrase: str) -> set[str]:
        tokens = _phrase_tokens(phrase, self._punctuation)
        if not tokens:
            return set()
        if len(tokens) <= self._max_phrase_len:
            return self._postings.get(tokens, set())
        return self._scan_long_phrase(tokens)

    def hits(self, phrase: str) -> int:
        return len(self.doc_ids(phrase))

    def pair_hits(self, a: str, b: str) -> int:
        return len(self.doc_ids(a) & self.doc_ids(b))

    def pattern_hits(self, query: str) -> int:
        return self.hits(query)

    def total_docs(self) -> int:
        return len(self._doc_spans)

    # ---- serialization ----------------------------------------------------

    def to_text(self) -> str:
        lines = [f"N\t{self.total_docs()}", f"M\t{self._max_phrase_len}"]
        for doc_id, spans in self._doc_spans.items():
            rendered = "|".join(" ".join(span) for span in spans)
            lines.append(f"D\t{doc_id}\t{rendered}")
        return "".join(line + "\n" for line in lines)

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.to_text(), encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "CorpusIndex":
        doc_spans: dict[str, tuple[tuple[str, ...], ...]] = {}
        max_phrase_len = DEFAULT_MAX_PHRASE_LEN
        for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
            if not raw.strip() or raw.startswith("#"):
                continue
            fields = raw.split("\t")
            if fields[0] == "N":
                continue  # implied by the D records
            if fields[0] == "M":
                max_phrase_len = int(fields[1])
            elif fields[0] == "D":
                if len(fields) != 3:
                    raise ValueError(f"{path}: line {lineno}: D record needs 3 fields")
                spans = tuple(
                    tuple(span.split(" ")) for span in fields[2].split("|") if span
                )
                doc_spans[fields[1]] = spans
            else:
                raise ValueError(f"{path}: line {lineno}: unknown record {fields[0]!r}")
        return cls(doc_spans, max_phrase_len)


@dataclass(frozen=True)
class SnapshotTable:
    """Replayable hit counts keyed by normalized query string."""

    entries: Mapping[str, int]
    declared_total: int

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[str, int]], total_docs: int) -> "SnapshotTable":
        entries = {}
        for query, count in pairs:
            if count < 0:
                raise ValueError(f"negative count for {query!r}")
            entries[normalize_label(query)] = count
        return cls(entries, total_docs)

    @classmethod
    def load(cls, path: str | Path) -> "SnapshotTable":
        total = None
        pairs = []
        for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
            line = raw.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            fields = line.split("\t")
            if fields[0] == "N" and len(fields) == 2:
                total = int(fields[1])
            elif fields[0] == "H" and len(fields) == 3:
                try:
                    pairs.append((fields[1], int(fields[2])))
                except ValueError:
                    raise ValueError(f"{path}: line {lineno}: bad count {fields[2]!r}") from None
            else:
                raise ValueError(f"{path}: line {lineno}: expected N or H record")
        if total is None:
            raise ValueError(f"{path}: missing N header record")
        return cls.from_pairs(pairs, total)

    def save(self, path: str | Path) -> None:
        lines = [f"N\t{self.declared_total}"]
        for query in sorted(self.entries):
            lines.append(f"H\t{query}\t{self.entries[query]}")
        Path(path).write_text("".join(line + "\n" for line in lines), encoding="utf-8")

    def hits(self, phrase: str) -> int:
        return self.entries.get(normalize_label(phrase), 0)

    def pair_hits(self, a: str, b: str) -> int:
        return self.entries.get(pair_key(a, b), 0)

    def pattern_hits(self, query: str) -> int:
        return self.entries.get(normalize_label(query), 0)

    def total_docs(self) -> int:
        return self.declared_total


def build_index(corpus: Corpus, max_phrase_len: int = DEFAULT_MAX_PHRASE_LEN) -> CorpusIndex:
    return CorpusIndex.build(corpus, max_phrase_len)
