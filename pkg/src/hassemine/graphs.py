"""Directed graphs over an ordered label table, with reachability operations.

Vertices are label strings held in a LabelTable; adjacency and boolean
relation matrices are stored as one int bitmask per row (bit j of row i set
iff entry (i, j) is 1), which keeps every matrix operation O(m) words for the
m <= 64 range this package supports.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import CyclicInput, UnknownLabel


@dataclass(frozen=True)
class LabelTable:
    """Ordered, pairwise-distinct label strings.

    Positions are 0-based internally; anything user-facing (serialized
    indices, occurrence positions) is reported 1-based.
    """

    labels: tuple[str, ...]
    index: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        labels = tuple(self.labels)
        object.__setattr__(self, "labels", labels)
        if len(set(labels)) != len(labels):
            raise ValueError(f"labels must be pairwise distinct: {labels!r}")
        object.__setattr__(self, "index", {lab: i for i, lab in enumerate(labels)})

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self) -> Iterator[str]:
        return iter(self.labels)

    def __contains__(self, label: object) -> bool:
        return label in self.index

    def position(self, label: str) -> int:
        try:
            return self.index[label]
        except KeyError:
            raise UnknownLabel(f"label {label!r} not in table {self.labels!r}") from None


def _coerce_rows(rows: Iterable[int], m: int) -> tuple[int, ...]:
    out = tuple(int(r) for r in rows)
    if len(out) != m:
        raise ValueError(f"expected {m} rows, got {len(out)}")
    for r in out:
        if r < 0 or r >> m:
            raise ValueError(f"row {r:#x} does not fit {m} columns")
    return out


def _rows_from_entries(entries, m: int) -> tuple[int, ...]:
    rows = []
    for row in entries:
        row = list(row)
        if len(row) != m:
            raise ValueError("entries must form a square matrix")
        bits = 0
        for j, cell in enumerate(row):
            if cell not in (0, 1, False, True):
                raise ValueError(f"matrix entries must be 0/1, got {cell!r}")
            if cell:
                bits |= 1 << j
        rows.append(bits)
    return _coerce_rows(rows, m)


@dataclass(frozen=True)
class Digraph:
    """Directed graph: bit j of rows[i] set iff arrow labels[i] -> labels[j].

    The representation enforces at most one arrow per ordered pair; loops are
    representable (and make is_dag false) but never appear in the
    quasi-skeleton graphs the rest of the package manipulates.
    """

    labels: LabelTable
    rows: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "rows", _coerce_rows(self.rows, len(self.labels)))

    @classmethod
    def arrowless(cls, labels: LabelTable) -> "Digraph":
        return cls(labels, (0,) * len(labels))

    @classmethod
    def from_arrows(cls, labels: LabelTable, arrows: Iterable[tuple[str, str]]) -> "Digraph":
        rows = [0] * len(labels)
        for u, v in arrows:
            rows[labels.position(u)] |= 1 << labels.position(v)
        return cls(labels, tuple(rows))

    @classmethod
    def from_entries(cls, labels: LabelTable, entries) -> "Digraph":
        return cls(labels, _rows_from_entries(entries, len(labels)))

    @property
    def m(self) -> int:
        return len(self.labels)

    def has_arrow(self, u: str, v: str) -> bool:
        return bool(self.rows[self.labels.position(u)] >> self.labels.position(v) & 1)

    def arrows(self) -> list[tuple[str, str]]:
        labs = self.labels.labels
        return [
            (labs[i], labs[j])
            for i, row in enumerate(self.rows)
            for j in _bit_indices(row)
        ]

    def arrow_count(self) -> int:
        return sum(row.bit_count() for row in self.rows)


@dataclass(frozen=True)
class BoolMatrix:
    """Square 0/1 matrix sharing its LabelTable's ordering (same row packing)."""

    labels: LabelTable
    rows: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "rows", _coerce_rows(self.rows, len(self.labels)))

    @classmethod
    def from_entries(cls, labels: LabelTable, entries) -> "BoolMatrix":
        return cls(labels, _rows_from_entries(entries, len(labels)))

    @property
    def m(self) -> int:
        return len(self.labels)

    def entry(self, i: int, j: int) -> int:
        return self.rows[i] >> j & 1

    def to_entries(self) -> list[list[int]]:
        m = self.m
        return [[row >> j & 1 for j in range(m)] for row in self.rows]

    def pairs(self) -> frozenset[tuple[str, str]]:
        """The relation as a set of (label, label) pairs, diagonal included if set."""
        labs = self.labels.labels
        return frozenset(
            (labs[i], labs[j])
            for i, row in enumerate(self.rows)
            for j in _bit_indices(row)
        )

    def sort_key(self) -> tuple[int, ...]:
        """Row-major flattened entries; ascending sort on this is the canonical order."""
        m = self.m
        return tuple(row >> j & 1 for row in self.rows for j in range(m))


def _bit_indices(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def _closure_rows(rows: tuple[int, ...]) -> tuple[int, ...]:
    """Reachability by paths of length >= 1 (bitset Warshall)."""
    rs = list(rows)
    for k in range(len(rs)):
        bk = 1 << k
        rk = rs[k]
        for i in range(len(rs)):
            if rs[i] & bk:
                rs[i] |= rk
    return tuple(rs)


def _reduction_rows(closed: tuple[int, ...]) -> tuple[int, ...]:
    """Cover relation of a transitively closed, irreflexive relation."""
    out = []
    for row in closed:
        keep = row
        for w in _bit_indices(row):
            keep &= ~closed[w]
        out.append(keep)
    return tuple(out)


def is_dag(g: Digraph) -> bool:
    closed = _closure_rows(g.rows)
    return all(not (closed[i] >> i & 1) for i in range(g.m))


def transitive_closure(g: Digraph) -> Digraph:
    return Digraph(g.labels, _closure_rows(g.rows))


def path_matrix(g: Digraph) -> BoolMatrix:
    """Entry (i, j) = 1 iff a directed path of length >= 1 runs from i to j."""
    return BoolMatrix(g.labels, _closure_rows(g.rows))


def r_set(g: Digraph) -> BoolMatrix:
    """The reflexive-transitive closure of the arrow set, as a matrix."""
    closed = _closure_rows(g.rows)
    return BoolMatrix(g.labels, tuple(row | (1 << i) for i, row in enumerate(closed)))


def transitive_reduction(g: Digraph) -> Digraph:
    """Minimal graph with g's reachability; the cover relation of the induced order."""
    closed = _closure_rows(g.rows)
    if any(closed[i] >> i & 1 for i in range(g.m)):
        raise CyclicInput("transitive reduction is only unique for acyclic graphs")
    return Digraph(g.labels, _reduction_rows(closed))


def is_quasi_skeleton(g: Digraph) -> bool:
    """True iff g is a DAG with no arrow shortcutting a path of length >= 2."""
    closed = _closure_rows(g.rows)
    if any(closed[i] >> i & 1 for i in range(g.m)):
        return False
    for row in g.rows:
        two_plus = 0
        for w in _bit_indices(row):
            two_plus |= closed[w]
        if row & two_plus:
            return False
    return True


def restrict(g: Digraph, u: Iterable[str]) -> Digraph:
    """The graph induced on u, preserving reachability among u.

    Computed as the transitive reduction of R(g) restricted to u x u; the
    result's labels keep g's table order.
    """
    positions = sorted({g.labels.position(x) for x in u})
    closed = _closure_rows(g.rows)
    if any(closed[i] >> i & 1 for i in range(g.m)):
        raise CyclicInput("restriction needs an acyclic graph")
    sub = []
    for new_i, i in enumerate(positions):
        bits = 0
        for new_j, j in enumerate(positions):
            if closed[i] >> j & 1:
                bits |= 1 << new_j
        sub.append(bits)
    # a restriction of a transitive irreflexive relation is itself closed
    table = LabelTable(tuple(g.labels.labels[i] for i in positions))
    return Digraph(table, _reduction_rows(tuple(sub)))


def to_dot(g: Digraph, name: str = "G") -> str:
    """Graphviz DOT text: one node per label, one edge per arrow."""
    lines = [f"digraph {name} {{"]
    for lab in g.labels:
        lines.append(f'  "{lab}";')
    for u, v in g.arrows():
        lines.append(f'  "{u}" -> "{v}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
