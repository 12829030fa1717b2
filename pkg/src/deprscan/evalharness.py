"""Run extraction over library sources and compare against published counts.

The manifest is a JSON array of entries:
  {"name": "seaborn", "path": "/src/seaborn", "expected_detected": 31}
Optional keys: "version", "expected_ground_truth".

Detected counts are unique fully qualified names (an element deprecated by
two strategies counts once). Comparisons are reported as deltas, never
pass/fail: the published counts come from unpinned library versions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .extractor import ExtractorConfig, extract_library

# (detected by the algorithm, elements counted in source) for the six
# libraries of the original evaluation.
PAPER_TABLE: dict[str, tuple[int, int]] = {
    "scikit-learn": (487, 438),
    "matplotlib": (169, 254),
    "numpy": (39, 36),
    "pandas": (66, 59),
    "scipy": (46, 49),
    "seaborn": (31, 35),
}


@dataclass
class EvalRow:
    library: str
    version_used: str
    detected: Optional[int]  # None when the source path is absent
    paper_detected: int
    paper_ground_truth: Optional[int]
    delta: Optional[int]

    @property
    def absent(self) -> bool:
        return self.detected is None


def load_manifest(path) -> list[dict]:
    with open(path, "r", encoding="utf-8") as fh:
        entries = json.load(fh)
    if not isinstance(entries, list):
        raise ValueError(f"{path}: manifest must be a JSON array")
    return entries


def run_eval(entries: list[dict], cfg: ExtractorConfig = ExtractorConfig(),
             db_dir=None) -> list[EvalRow]:
    rows: list[EvalRow] = []
    for entry in entries:
        name = entry["name"]
        path = Path(entry["path"])
        paper_detected = int(entry.get("expected_detected",
                                       PAPER_TABLE.get(name, (0, 0))[0]))
        ground_truth = entry.get("expected_ground_truth")
        if ground_truth is None and name in PAPER_TABLE:
            ground_truth = PAPER_TABLE[name][1]

        if not path.is_dir():
            rows.append(EvalRow(name, "absent", None, paper_detected, ground_truth, None))
            continue

        records = extract_library(path, name, entry.get("version"), cfg)
        detected = len({r.fqn for r in records})
        version = records[0].library_version if records else entry.get("version")
        if db_dir is not None:
            from .depdb import DeprecationDb, save_db
            from .extractor import build_alias_table

            aliases = build_alias_table(path, records)
            db = DeprecationDb.from_records(records, name, version, aliases)
            Path(db_dir).mkdir(parents=True, exist_ok=True)
            save_db(db, Path(db_dir) / f"{name}.json")
        rows.append(
            EvalRow(name, version or "unknown", detected, paper_detected,
                    ground_truth, detected - paper_detected)
        )
    return rows


def render_table(rows: list[EvalRow]) -> str:
    """Tab-delimited report, one row per library."""
    header = "library\tversion\tdetected\tpaper_detected\tpaper_ground_truth\tdelta"
    lines = [header]
    for r in rows:
        detected = "absent" if r.absent else str(r.detected)
        delta = "-" if r.delta is None else str(r.delta)
        gt = "-" if r.paper_ground_truth is None else str(r.paper_ground_truth)
        lines.append(f"{r.library}\t{r.version_used}\t{detected}\t{r.paper_detected}\t{gt}\t{delta}")
    return "\n".join(lines) + "\n"


def plot_rows(rows: list[EvalRow], out_path) -> None:
    """Grouped bar chart of detected vs published counts, saved to a file."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    present = [r for r in rows if not r.absent]
    if not present:
        return
    labels = [r.library for r in present]
    detected = [r.detected for r in present]
    paper = [r.paper_detected for r in present]

    x = range(len(labels))
    width = 0.38
    fig, ax = plt.subplots(figsize=(max(6, 1.6 * len(labels)), 4))
    ax.bar([i - width / 2 for i in x], detected, width, label="detected")
    ax.bar([i + width / 2 for i in x], paper, width, label="published")
    ax.set_xticks(list(x))
    ax.set_xticklabels(labels, rotation=30, ha="right")
    ax.set_ylabel("deprecated API elements")
    ax.legend()
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
