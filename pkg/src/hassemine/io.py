"""File formats: JSONL sequence files, CSV matrix files, DOT export.

A sequence file is JSON Lines: an optional header record declaring the
event universe, then one record per sequence.

    {"universe": ["e1", "e2", "e5"]}
    {"events": ["e2", "e5"], "label": 1}

Records may carry extra fields (win_route, seed, policy, ...); loaders
keep them so rewriting tools can round-trip files losslessly.  A matrix
file is CSV: the first row is the label order, each following row the
0/1 entries of one matrix row.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from typing import Iterable

from .game import Episode
from .graphs import BoolMatrix, LabelTable
from .sequences import EventSequence


@dataclass(frozen=True)
class SequenceRecords:
    """A parsed sequence file: its universe and raw per-sequence records."""

    table: LabelTable
    rows: tuple[dict, ...]

    @property
    def sequences(self) -> tuple[EventSequence, ...]:
        return tuple(
            EventSequence(self.table, tuple(row["events"])) for row in self.rows
        )

    @property
    def labels(self) -> tuple:
        return tuple(row.get("label") for row in self.rows)


def episode_row(episode: Episode) -> dict:
    return {
        "events": list(episode.events.events),
        "label": episode.label,
        "win_route": episode.win_route,
        "seed": episode.seed,
        "policy": episode.policy,
    }


def dump_sequences(table: LabelTable, rows: Iterable[dict]) -> str:
    """Render a sequence file: header line, then one JSON object per row."""
    lines = [json.dumps({"universe": list(table.labels)})]
    for row in rows:
        if "events" not in row:
            raise ValueError(f"sequence record lacks events: {row!r}")
        lines.append(json.dumps(row))
    return "\n".join(lines) + "\n"


def save_sequences(path, table: LabelTable, rows: Iterable[dict]) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(dump_sequences(table, rows))


def save_episodes(path, episodes: Iterable[Episode]) -> None:
    episodes = list(episodes)
    if not episodes:
        raise ValueError("no episodes to save")
    table = episodes[0].events.universe
    save_sequences(path, table, [episode_row(ep) for ep in episodes])


def parse_sequences(text: str, universe=None) -> SequenceRecords:
    """Parse sequence-file text; `universe` overrides any header record."""
    header_table = None
    rows = []
    for number, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        record = json.loads(line)
        if not isinstance(record, dict):
            raise ValueError(f"line {number}: expected a JSON object")
        if "universe" in record and "events" not in record:
            if header_table is not None:
                raise ValueError(f"line {number}: duplicate universe header")
            header_table = LabelTable(tuple(record["universe"]))
            continue
        if "events" not in record:
            raise ValueError(f"line {number}: sequence record lacks events")
        label = record.get("label")
        if label not in (None, 0, 1):
            raise ValueError(f"line {number}: label must be 0 or 1, got {label!r}")
        rows.append(record)
    if universe is not None:
        table = LabelTable(tuple(universe))
    elif header_table is not None:
        table = header_table
    else:
        raise ValueError("no universe: add a header record or pass one explicitly")
    records = SequenceRecords(table, tuple(rows))
    records.sequences  # validates every event token against the universe
    return records


def load_sequences(path, universe=None) -> SequenceRecords:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_sequences(handle.read(), universe)


def save_matrix_csv(path, matrix: BoolMatrix) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(matrix.labels.labels)
        for row in matrix.to_entries():
            writer.writerow(row)


def load_matrix_csv(path) -> BoolMatrix:
    with open(path, "r", encoding="utf-8", newline="") as handle:
        reader = list(csv.reader(handle))
    if not reader:
        raise ValueError(f"{path}: empty matrix file")
    table = LabelTable(tuple(reader[0]))
    entries = [[int(cell) for cell in row] for row in reader[1:]]
    if len(entries) != len(table) or any(len(r) != len(table) for r in entries):
        raise ValueError(f"{path}: matrix shape does not match its label row")
    if any(cell not in (0, 1) for row in entries for cell in row):
        raise ValueError(f"{path}: matrix entries must be 0 or 1")
    return BoolMatrix.from_entries(table, entries)
