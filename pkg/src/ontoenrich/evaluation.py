"""Precision measurement against expert judgments.

Both the expert gold standard and a system's output use the same file format
(UTF-8, tab-separated):

    E  <domain>  <verdict: eliminated|retained>  <term>
    X  <domain>  <term>  <target-concept-id>  <sense>  <relation>

Three precision figures per domain: eliminated-term precision, retained-term
precision, and placement precision (a placement matches when term, target and
sense agree; relation agreement is required by default but can be waived).
Empty system sets leave a metric undefined; undefined is reported as a
marker, never as 0 or 1.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping

from .ontology import normalize_label

logger = logging.getLogger(__name__)

UNDEFINED = "undefined"


@dataclass(frozen=True)
class Placement:
    term: str
    target: str
    sense: int
    relation: str


@dataclass(frozen=True)
class DomainJudgments:
    eliminated: frozenset[str]
    retained: frozenset[str]
    placements: frozenset[Placement]

    def __post_init__(self):
        overlap = self.eliminated & self.retained
        if overlap:
            raise ValueError(
                f"terms judged both eliminated and retained: {sorted(overlap)[:5]}"
            )


@dataclass(frozen=True)
class Judgments:
    domains: Mapping[str, DomainJudgments]

    @classmethod
    def load(cls, path: str | Path) -> "Judgments":
        eliminated: dict[str, set[str]] = {}
        retained: dict[str, set[str]] = {}
        placements: dict[str, set[Placement]] = {}
        for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
            line = raw.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            fields = line.split("\t")
            if fields[0] == "E" and len(fields) == 4:
                _, domain, verdict, term = fields
                term = normalize_label(term)
                if verdict == "eliminated":
                    eliminated.setdefault(domain, set()).add(term)
                elif verdict == "retained":
                    retained.setdefault(domain, set()).add(term)
                else:
                    raise ValueError(f"{path}: line {lineno}: unknown verdict {verdict!r}")
            elif fields[0] == "X" and len(fields) == 6:
                _, domain, term, target, sense_text, relation = fields
                try:
                    sense = int(sense_text)
                except ValueError:
                    raise ValueError(f"{path}: line {lineno}: bad sense {sense_text!r}") from None
                placements.setdefault(domain, set()).add(
                    Placement(normalize_label(term), target, sense, relation)
                )
            else:
                raise ValueError(f"{path}: line {lineno}: expected E or X record")
        domains = sorted(set(eliminated) | set(retained) | set(placements))
        return cls(
            {
                domain: DomainJudgments(
                    frozenset(eliminated.get(domain, ())),
                    frozenset(retained.get(domain, ())),
                    frozenset(placements.get(domain, ())),
                )
                for domain in domains
            }
        )


def _set_precision(system: Iterable[str], expert: Iterable[str]) -> float | None:
    system, expert = frozenset(system), frozenset(expert)
    if not system:
        return None
    return len(system & expert) / len(system)


def elimination_precision(system_eliminated, expert_eliminated) -> float | None:
    """Share of system-eliminated terms the expert also eliminated."""
    return _set_precision(system_eliminated, expert_eliminated)


def retention_precision(system_retained, expert_retained) -> float | None:
    """Share of system-retained terms the expert also retained."""
    return _set_precision(system_retained, expert_retained)


def enrichment_precision(
    system_placements: Iterable[Placement],
    expert_placements: Iterable[Placement],
    require_relation: bool = True,
) -> float | None:
    """Share of system placements that agree with an expert placement."""
    system = frozenset(system_placements)
    if not system:
        return None
    if require_relation:
        expert_keys = {(p.term, p.target, p.sense, p.relation) for p in expert_placements}
        matches = sum(
            1 for p in system if (p.term, p.target, p.sense, p.relation) in expert_keys
        )
    else:
        expert_keys = {(p.term, p.target, p.sense) for p in expert_placements}
        matches = sum(1 for p in system if (p.term, p.target, p.sense) in expert_keys)
    return matches / len(system)


@dataclass(frozen=True)
class DomainPrecision:
    domain: str
    expert_eliminated: int
    system_eliminated: int
    elimination: float | None
    expert_retained: int
    system_retained: int
    retention: float | None
    expert_placements: int
    system_placements: int
    enrichment: float | None

    @property
    def elimination_error_rate(self) -> float | None:
        if self.elimination is None:
            return None
        return 1.0 - self.elimination


def precision_report(
    system: Judgments, expert: Judgments, require_relation: bool = True
) -> list[DomainPrecision]:
    """Per-domain metrics for every domain the expert file covers."""
    for domain in sorted(set(system.domains) - set(expert.domains)):
        logger.warning("system output covers domain %r the expert file does not", domain)
    rows = []
    empty = DomainJudgments(frozenset(), frozenset(), frozenset())
    for domain in sorted(expert.domains):
        gold = expert.domains[domain]
        mine = system.domains.get(domain, empty)
        rows.append(
            DomainPrecision(
                domain=domain,
                expert_eliminated=len(gold.eliminated),
                system_eliminated=len(mine.eliminated),
                elimination=elimination_precision(mine.eliminated, gold.eliminated),
                expert_retained=len(gold.retained),
                system_retained=len(mine.retained),
                retention=retention_precision(mine.retained, gold.retained),
                expert_placements=len(gold.placements),
                system_placements=len(mine.placements),
                enrichment=enrichment_precision(
                    mine.placements, gold.placements, require_relation
                ),
            )
        )
    return rows


def _fmt(value: float | None) -> str:
    return UNDEFINED if value is None else f"{value:.2f}"


def write_precision_report(rows: list[DomainPrecision], path: str | Path) -> None:
    lines = ["# elimination", "domain\texpert\tsystem\tprecision\terror_rate"]
    for row in rows:
        lines.append(
            f"{row.domain}\t{row.expert_eliminated}\t{row.system_eliminated}"
            f"\t{_fmt(row.elimination)}\t{_fmt(row.elimination_error_rate)}"
        )
    lines += ["# retention", "domain\texpert\tsystem\tprecision"]
    for row in rows:
        lines.append(
            f"{row.domain}\t{row.expert_retained}\t{row.system_retained}"
            f"\t{_fmt(row.retention)}"
        )
    lines += ["# placement", "domain\texpert\tsystem\tprecision"]
    for row in rows:
        lines.append(
            f"{row.domain}\t{row.expert_placements}\t{row.system_placements}"
            f"\t{_fmt(row.enrichment)}"
        )
    Path(path).write_text("".join(line + "\n" for line in lines), encoding="utf-8")
