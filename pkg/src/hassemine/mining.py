"""Order mining over label sequences.

Four operations: the per-sequence order matrix (which label pairs are
strictly ordered within one sequence), the common matrix of a sequence
collection (pairs ordered the same way everywhere they co-occur), Hasse
clustering (undominated small sets of quasi-skeleton graphs covering a
required share of the sequences), and win/lose relevance scoring of ordered
label pairs.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import chain, combinations, combinations_with_replacement, product
from typing import Iterable, Union

from .enumeration import enumerate_category
from .errors import (
    EmptyInput,
    EmptyJ,
    InvalidMode,
    InvalidThreshold,
    LabelMismatch,
    LabelNotInUniverse,
    MissingClass,
)
from .graphs import BoolMatrix, LabelTable, _bit_indices
from .sequences import EventSequence, SubsetSequence

AnySequence = Union[EventSequence, SubsetSequence]


@dataclass(frozen=True)
class OccurrenceIndex:
    """1-based occurrence positions of each table label within one sequence.

    positions[i] lists where table.labels[i] occurs; an empty tuple means the
    label never occurs.
    """

    table: LabelTable
    positions: tuple[tuple[int, ...], ...]

    @classmethod
    def from_sequence(cls, s: AnySequence, table: LabelTable) -> "OccurrenceIndex":
        pos = s.positions()
        return cls(table, tuple(tuple(pos.get(lab, ())) for lab in table))


def _analysis_table(j_labels: Iterable[str]) -> LabelTable:
    labels = tuple(j_labels)
    if not labels:
        raise EmptyJ("the analysis label set is empty")
    return LabelTable(labels)


def seq_to_matrix(s: AnySequence, j_labels: Iterable[str]) -> BoolMatrix:
    """Order matrix of one sequence over an ordered label subset.

    Entry (i, j) is 1 iff both labels occur and every occurrence of label i
    comes strictly before every occurrence of label j. The result is always
    transitive, with zero rows and columns for absent labels.
    """
    table = _analysis_table(j_labels)
    for lab in table:
        if lab not in s.universe:
            raise LabelNotInUniverse(f"label {lab!r} not in sequence universe")
    occ = OccurrenceIndex.from_sequence(s, table)
    m = len(table)
    rows = [0] * m
    for i in range(m):
        pi = occ.positions[i]
        if not pi:
            continue
        last = max(pi)
        for j in range(m):
            if j == i:
                continue
            pj = occ.positions[j]
            if pj and last < min(pj):
                rows[i] |= 1 << j
    return BoolMatrix(table, tuple(rows))


def common_matrix(seqs: Iterable[AnySequence], j_labels: Iterable[str]) -> BoolMatrix:
    """Pairs ordered identically in every sequence where both labels occur.

    Entry (i, j) is 1 iff some sequence witnesses the pair (both occur,
    i strictly first) and no sequence where both occur violates it.
    """
    seqs = list(seqs)
    if not seqs:
        raise EmptyInput("common matrix needs at least one sequence")
    table = _analysis_table(j_labels)
    m = len(table)
    witness = [0] * m
    veto = [0] * m
    for s in seqs:
        mat = seq_to_matrix(s, table.labels)
        pos = s.positions()
        occurring = 0
        for j, lab in enumerate(table.labels):
            if pos.get(lab):
                occurring |= 1 << j
        for i in range(m):
            if not occurring >> i & 1:
                continue
            others = occurring & ~(1 << i)
            witness[i] |= mat.rows[i]
            veto[i] |= others & ~mat.rows[i]
    return BoolMatrix(table, tuple(w & ~v for w, v in zip(witness, veto)))


@dataclass(frozen=True)
class ClusterOutput:
    """Undominated candidate graph sets, with per-set coverage counts.

    clusters[i] holds the path matrices of the i-th output set in canonical
    order; covered[i] counts the input sequences whose graph maps into at
    least one member.
    """

    clusters: tuple[tuple[BoolMatrix, ...], ...]
    covered: tuple[int, ...]
    total: int
    threshold: Fraction
    r: int
    mode: str

    def coverage_fraction(self, i: int) -> Fraction:
        return Fraction(self.covered[i], self.total)


def _threshold_fraction(t) -> Fraction:
    try:
        frac = Fraction(str(t)) if isinstance(t, float) else Fraction(t)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise InvalidThreshold(f"threshold {t!r} is not a number") from exc
    if frac < 0 or frac > 100:
        raise InvalidThreshold(f"threshold must lie in [0, 100], got {t!r}")
    return frac


def _flat(rows: tuple[int, ...], m: int) -> int:
    packed = 0
    for i, row in enumerate(rows):
        packed |= row << (m * i)
    return packed


def hasse_cluster(
    seqs: Iterable[AnySequence],
    j_labels: Iterable[str],
    t,
    r: int,
    mode: str = "minimal",
) -> ClusterOutput:
    """Cluster sequences by undominated sets of at most r order graphs.

    Each sequence's order matrix is read as a graph G_i; a candidate is a
    set of at most r quasi-skeleton graphs such that the sequences whose G_i
    maps into some member make up at least t percent of the input. In
    minimal mode (default) only candidates with no threshold-meeting proper
    subset are kept; literal mode keeps every candidate. A candidate is
    output iff no other candidate dominates it, where C' dominates C'' when
    every member of C' has a generalization in C''.
    """
    seqs = list(seqs)
    if not seqs:
        raise EmptyInput("clustering needs at least one sequence")
    if mode not in ("minimal", "literal"):
        raise InvalidMode(f"unknown mode {mode!r}")
    if not isinstance(r, int) or isinstance(r, bool) or r < 1:
        raise InvalidThreshold(f"candidate size cap must be a positive integer, got {r!r}")
    frac = _threshold_fraction(t)
    table = _analysis_table(j_labels)
    cat = enumerate_category(table)
    m = len(table)

    counts: dict[tuple[int, ...], int] = {}
    for s in seqs:
        rows = seq_to_matrix(s, table.labels).rows
        counts[rows] = counts.get(rows, 0) + 1
    mult = list(counts.values())
    d_flats = [_flat(rows, m) for rows in counts]

    flats = [_flat(pm.rows, m) for pm in cat.path_matrices]
    groups: dict[int, list[int]] = {}
    for h, fh in enumerate(flats):
        mask = 0
        for jbit, df in enumerate(d_flats):
            if fh & ~df == 0:
                mask |= 1 << jbit
        groups.setdefault(mask, []).append(h)

    total = len(seqs)
    cov_cache: dict[int, int] = {}

    def covered_count(mask: int) -> int:
        got = cov_cache.get(mask)
        if got is None:
            got = sum(c for jbit, c in enumerate(mult) if mask >> jbit & 1)
            cov_cache[mask] = got
        return got

    def meets(mask: int) -> bool:
        return covered_count(mask) * 100 * frac.denominator >= frac.numerator * total

    def union_of(masks) -> int:
        union = 0
        for msk in masks:
            union |= msk
        return union

    group_masks = sorted(groups)
    candidates: list[tuple[int, ...]] = []
    cand_masks: list[int] = []
    for size in range(1, r + 1):
        if mode == "minimal":
            combos = combinations(group_masks, size)
        else:
            combos = combinations_with_replacement(group_masks, size)
        for combo in combos:
            union = union_of(combo)
            if not meets(union):
                continue
            if mode == "minimal":
                if any(
                    meets(union_of(sub))
                    for short in range(size)
                    for sub in combinations(combo, short)
                ):
                    continue
                picks = product(*(groups[msk] for msk in combo))
                for pick in picks:
                    candidates.append(tuple(sorted(pick)))
                    cand_masks.append(union)
            else:
                tally = Counter(combo)
                picks = product(
                    *(combinations(groups[msk], c) for msk, c in tally.items())
                )
                for pick in picks:
                    candidates.append(tuple(sorted(chain.from_iterable(pick))))
                    cand_masks.append(union)

    order = sorted(range(len(candidates)), key=lambda i: (len(candidates[i]), candidates[i]))
    candidates = [candidates[i] for i in order]
    cand_masks = [cand_masks[i] for i in order]

    def has_incoming(b: tuple[int, ...]) -> bool:
        b_flats = [flats[h] for h in b]
        for a in candidates:
            if a == b:
                continue
            if all(any(fb & ~flats[ha] == 0 for fb in b_flats) for ha in a):
                return True
        return False

    kept = [i for i, cand in enumerate(candidates) if not has_incoming(cand)]
    clusters = tuple(
        tuple(cat.path_matrices[h] for h in candidates[i]) for i in kept
    )
    covered = tuple(covered_count(cand_masks[i]) for i in kept)
    return ClusterOutput(clusters, covered, total, frac, r, mode)


@dataclass(frozen=True)
class RelevanceTable:
    """Win/lose relevance ratios for ordered label pairs, with audit counts.

    win_counts[i][j] counts winning sequences where labels i and j both
    occur and i comes entirely first; lose_counts is the losing-side
    analogue. The score of a pair is the ratio of its per-class rates and is
    infinite exactly when the losing-side count is zero.
    """

    labels: LabelTable
    n_win: int
    n_lose: int
    win_counts: tuple[tuple[int, ...], ...]
    lose_counts: tuple[tuple[int, ...], ...]

    def score(self, a: str, b: str):
        """Relevance of 'a entirely before b': Fraction, or math.inf."""
        i = self.labels.position(a)
        j = self.labels.position(b)
        if i == j:
            raise ValueError("relevance is only defined for distinct labels")
        w = self.win_counts[i][j]
        lose = self.lose_counts[i][j]
        if lose == 0:
            return math.inf
        return Fraction(w * self.n_lose, lose * self.n_win)

    def rows(self) -> list[tuple[str, str, object, int, int]]:
        """(a, b, score, win_count, lose_count) rows, most relevant first.

        Infinite scores come first, then descending finite scores; ties fall
        back to label-table position order.
        """
        entries = []
        labs = self.labels.labels
        for i in range(len(labs)):
            for j in range(len(labs)):
                if i == j:
                    continue
                score = self.score(labs[i], labs[j])
                rank = (0, Fraction(0)) if score == math.inf else (1, -score)
                entries.append(
                    (
                        (rank, i, j),
                        (labs[i], labs[j], score, self.win_counts[i][j], self.lose_counts[i][j]),
                    )
                )
        entries.sort(key=lambda kv: kv[0])
        return [kv[1] for kv in entries]


def relevance_scores(episodes: Iterable[tuple[AnySequence, int]]) -> RelevanceTable:
    """Score ordered label pairs by how exclusively winners exhibit them.

    episodes pairs each sequence with a class label (1 = win, 0 = lose);
    both classes must be present. The score of (i, j) is the winners' rate
    of 'both occur, i entirely first' divided by the losers' rate.
    """
    episodes = list(episodes)
    universe = None
    n_win = n_lose = 0
    for s, label in episodes:
        if label not in (0, 1):
            raise ValueError(f"class label must be 0 or 1, got {label!r}")
        if universe is None:
            universe = s.universe
        elif s.universe != universe:
            raise LabelMismatch("all episodes must share one universe")
        if label == 1:
            n_win += 1
        else:
            n_lose += 1
    if n_win == 0 or n_lose == 0:
        raise MissingClass("need at least one episode of each class")
    m = len(universe)
    win_counts = [[0] * m for _ in range(m)]
    lose_counts = [[0] * m for _ in range(m)]
    for s, label in episodes:
        mat = seq_to_matrix(s, universe.labels)
        target = win_counts if label == 1 else lose_counts
        for i in range(m):
            for j in _bit_indices(mat.rows[i]):
                target[i][j] += 1
    return RelevanceTable(
        universe,
        n_win,
        n_lose,
        tuple(tuple(row) for row in win_counts),
        tuple(tuple(row) for row in lose_counts),
    )
