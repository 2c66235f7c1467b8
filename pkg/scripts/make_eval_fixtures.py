#!/usr/bin/env python3
"""Regenerate the golden evaluation fixtures under fixtures/eval/.

Encodes per-domain counts whose precision ratios are fixed targets:

  animals elimination  3546 / 4221 = 0.84
  animals retention    1025 / 1798 = 0.57
  animals placement      81 /  100 = 0.81
  sports  elimination  2785 / 2901 = 0.96
  sports  retention     210 /  323 = 0.65

The eliminated and retained universes per domain use distinct id prefixes,
so each ratio can be encoded independently. Terms are synthetic ids; the
fixtures exercise the metric arithmetic, nothing else.
"""

from __future__ import annotations

from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
EVAL_DIR = ROOT / "fixtures" / "eval"

# domain -> (expert count, shared with system, system-only count)
ELIMINATION = {
    "animals": (4989, 3546, 675),   # system 4221, precision 0.84
    "sports": (3011, 2785, 116),    # system 2901, precision 0.96
}
RETENTION = {
    "animals": (1030, 1025, 773),   # system 1798, precision 0.57
    "sports": (213, 210, 113),      # system 323, precision 0.65
}
# domain -> (matching placements, expert-only, system-only)
PLACEMENTS = {
    "animals": (81, 19, 19),        # system 100, precision 0.81
}


def ids(prefix: str, count: int) -> list[str]:
    return [f"{prefix}-{i:04d}" for i in range(1, count + 1)]


def main() -> None:
    EVAL_DIR.mkdir(parents=True, exist_ok=True)
    expert_lines, system_lines = [], []

    for domain, (expert_n, shared, system_only) in sorted(ELIMINATION.items()):
        expert = ids(f"{domain}-x", expert_n)
        system = expert[:shared] + ids(f"{domain}-xs", system_only)
        expert_lines += [f"E\t{domain}\teliminated\t{term}" for term in expert]
        system_lines += [f"E\t{domain}\teliminated\t{term}" for term in system]

    for domain, (expert_n, shared, system_only) in sorted(RETENTION.items()):
        expert = ids(f"{domain}-r", expert_n)
        system = expert[:shared] + ids(f"{domain}-rs", system_only)
        expert_lines += [f"E\t{domain}\tretained\t{term}" for term in expert]
        system_lines += [f"E\t{domain}\tretained\t{term}" for term in system]

    for domain, (matching, expert_only, system_only) in sorted(PLACEMENTS.items()):
        for term in ids(f"{domain}-p", matching):
            line = f"X\t{domain}\t{term}\tmammal\t1\trelated-to"
            expert_lines.append(line)
            system_lines.append(line)
        for term in ids(f"{domain}-pe", expert_only):
            expert_lines.append(f"X\t{domain}\t{term}\tmammal\t1\trelated-to")
        for term in ids(f"{domain}-pe", system_only):
            # same terms and target as the expert extras, wrong sense
            system_lines.append(f"X\t{domain}\t{term}\tmammal\t2\trelated-to")

    (EVAL_DIR / "expert.tsv").write_text("".join(l + "\n" for l in expert_lines), "utf-8")
    (EVAL_DIR / "system.tsv").write_text("".join(l + "\n" for l in system_lines), "utf-8")
    print(f"wrote {EVAL_DIR / 'expert.tsv'} ({len(expert_lines)} lines)")
    print(f"wrote {EVAL_DIR / 'system.tsv'} ({len(system_lines)} lines)")


if __name__ == "__main__":
    main()
