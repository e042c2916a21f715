"""Sequences of labels or label subsets, and their graph conversions.

Covers restriction to a label subset, the layered-graph conversion (stg) and
its inverse (gts), the consistency predicate between a sequence and a wiring
diagram, flattenings (linear extensions as path graphs), and a five-way
equivalence harness used as a test oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

from .errors import (
    EmptyRestriction,
    EmptyTerm,
    LabelNotInUniverse,
    NotLayered,
    NotSimple,
)
from .graphs import (
    Digraph,
    LabelTable,
    _bit_indices,
    _closure_rows,
    r_set,
    restrict,
)


@dataclass(frozen=True)
class EventSequence:
    """An ordered list of labels drawn from a universe."""

    universe: LabelTable
    events: tuple[str, ...]

    def __post_init__(self):
        events = tuple(self.events)
        object.__setattr__(self, "events", events)
        for e in events:
            if e not in self.universe:
                raise LabelNotInUniverse(f"event {e!r} not in universe")

    def __len__(self) -> int:
        return len(self.events)

    @property
    def is_simple(self) -> bool:
        return len(set(self.events)) == len(self.events)

    def positions(self) -> dict[str, tuple[int, ...]]:
        """1-based occurrence positions, keyed by label; absent labels omitted."""
        out: dict[str, list[int]] = {}
        for i, e in enumerate(self.events, start=1):
            out.setdefault(e, []).append(i)
        return {k: tuple(v) for k, v in out.items()}


@dataclass(frozen=True)
class SubsetSequence:
    """An ordered list of label subsets drawn from a universe."""

    universe: LabelTable
    terms: tuple[frozenset[str], ...]

    def __post_init__(self):
        terms = tuple(frozenset(t) for t in self.terms)
        object.__setattr__(self, "terms", terms)
        for term in terms:
            for e in term:
                if e not in self.universe:
                    raise LabelNotInUniverse(f"label {e!r} not in universe")

    def __len__(self) -> int:
        return len(self.terms)

    @property
    def is_simple(self) -> bool:
        total = sum(len(t) for t in self.terms)
        union = set().union(*self.terms) if self.terms else set()
        return len(union) == total

    def positions(self) -> dict[str, tuple[int, ...]]:
        """1-based term positions containing each label; absent labels omitted."""
        out: dict[str, list[int]] = {}
        for i, term in enumerate(self.terms, start=1):
            for e in term:
                out.setdefault(e, []).append(i)
        return {k: tuple(v) for k, v in out.items()}


AnySequence = Union[EventSequence, SubsetSequence]


def as_subset_sequence(s: EventSequence) -> SubsetSequence:
    """Lift a label sequence to the sequence of its singleton subsets."""
    return SubsetSequence(s.universe, tuple(frozenset((e,)) for e in s.events))


def restrict_sequence(s: AnySequence, i_labels: Iterable[str]) -> AnySequence:
    """Intersect every term with the given labels and drop emptied terms.

    The universe is kept unchanged; the result is the same sequence kind as
    the input.
    """
    kept = frozenset(i_labels)
    if not kept:
        raise EmptyRestriction("restriction label set is empty")
    for lab in kept:
        if lab not in s.universe:
            raise LabelNotInUniverse(f"label {lab!r} not in universe")
    if isinstance(s, EventSequence):
        return EventSequence(s.universe, tuple(e for e in s.events if e in kept))
    terms = tuple(t & kept for t in s.terms)
    return SubsetSequence(s.universe, tuple(t for t in terms if t))


def stg(s: AnySequence) -> Digraph:
    """The layered graph of a simple subset sequence.

    Vertices are the labels appearing in s (in order of appearance, universe
    order within a term); arrows run from every element of each term to every
    element of the next term.
    """
    if isinstance(s, EventSequence):
        s = as_subset_sequence(s)
    if not s.is_simple:
        raise NotSimple("stg needs pairwise disjoint terms")
    ordered_terms = []
    labels: list[str] = []
    for term in s.terms:
        if not term:
            raise EmptyTerm("stg needs nonempty terms")
        members = sorted(term, key=s.universe.position)
        labels.extend(members)
        ordered_terms.append(members)
    table = LabelTable(tuple(labels))
    rows = [0] * len(table)
    for cur, nxt in zip(ordered_terms, ordered_terms[1:]):
        target = 0
        for v in nxt:
            target |= 1 << table.position(v)
        for u in cur:
            rows[table.position(u)] = target
    return Digraph(table, tuple(rows))


def gts(g: Digraph) -> SubsetSequence:
    """The layer sequence of a layered graph; inverse of stg on its image.

    Layers are peeled by in-degree zero; the layering is then verified to be
    complete-bipartite between consecutive layers (and arrowless elsewhere),
    raising NotLayered otherwise.
    """
    m = g.m
    preds = [0] * m
    for i, row in enumerate(g.rows):
        for j in _bit_indices(row):
            preds[j] |= 1 << i
    remaining = (1 << m) - 1
    layers: list[int] = []
    while remaining:
        layer = 0
        for v in _bit_indices(remaining):
            if preds[v] & remaining == 0:
                layer |= 1 << v
        if not layer:
            raise NotLayered("graph contains a directed cycle")
        layers.append(layer)
        remaining &= ~layer
    for idx, layer in enumerate(layers):
        target = layers[idx + 1] if idx + 1 < len(layers) else 0
        for v in _bit_indices(layer):
            if g.rows[v] != target:
                raise NotLayered(
                    "arrows are not complete between consecutive layers"
                )
    labs = g.labels.labels
    terms = tuple(
        frozenset(labs[v] for v in _bit_indices(layer)) for layer in layers
    )
    return SubsetSequence(g.labels, terms)


def is_consistent(s: AnySequence, w: Digraph) -> bool:
    """True iff s respects every before-and-after constraint of w.

    For each pair of labels x, y both occurring in s with a path x -> y in w,
    every occurrence of x must precede every occurrence of y.
    """
    for lab in w.labels:
        if lab not in s.universe:
            raise LabelNotInUniverse(f"label {lab!r} not in sequence universe")
    pos = s.positions()
    closed = _closure_rows(w.rows)
    labs = w.labels.labels
    for u, row in enumerate(closed):
        pu = pos.get(labs[u])
        if pu is None:
            continue
        for v in _bit_indices(row):
            pv = pos.get(labs[v])
            if pv is not None and max(pu) >= min(pv):
                return False
    return True


def flattenings(g: Digraph) -> list[Digraph]:
    """All path graphs on g's vertex set admitting a morphism into g.

    These are the linear extensions of g's reachability order; each is
    returned as a path Digraph over g's own label table, in lexicographic
    order of the vertex-index sequence.
    """
    m = g.m
    preds = [0] * m
    for i, row in enumerate(g.rows):
        for j in _bit_indices(row):
            preds[j] |= 1 << i
    orders: list[tuple[int, ...]] = []
    prefix: list[int] = []

    def walk(remaining: int):
        if not remaining:
            orders.append(tuple(prefix))
            return
        for v in _bit_indices(remaining):
            if preds[v] & remaining == 0:
                prefix.append(v)
                walk(remaining & ~(1 << v))
                prefix.pop()

    walk((1 << m) - 1)
    out = []
    for order in orders:
        rows = [0] * m
        for a, b in zip(order, order[1:]):
            rows[a] |= 1 << b
        out.append(Digraph(g.labels, tuple(rows)))
    return out


def _relation_pairs(g: Digraph) -> frozenset[tuple[str, str]]:
    return r_set(g).pairs()


def check_consistency_equivalences(s: EventSequence, w: Digraph) -> bool:
    """Test oracle: evaluate five characterizations of consistency and return
    True iff they all agree (all True or all False).

    The five: (i) the direct definition; (ii) relation inclusion after
    restricting the sequence to w's labels; (iii) a morphism between the two
    graphs restricted to the shared occurring labels; (iv) a morphism from
    the sequence's full graph onto w restricted; (v) existence of a
    flattening of restricted w that the sequence's graph maps onto.
    Conditions (iv)/(v) compare relations as label-pair sets because their
    graphs live on nested, not equal, vertex sets.
    """
    if not s.is_simple:
        raise NotSimple("the equivalence harness needs a simple sequence")
    direct = is_consistent(s, w)

    occurring = set(s.events)
    shared = [lab for lab in w.labels if lab in occurring]

    if s.events:
        s_graph = stg(s)
        s_pairs = _relation_pairs(s_graph)
    else:
        s_graph = None
        s_pairs = frozenset()

    restricted_seq = restrict_sequence(s, w.labels.labels) if len(w.labels) else s
    if restricted_seq.events:
        rs_pairs = _relation_pairs(stg(restricted_seq))
    else:
        rs_pairs = frozenset()
    w_pairs = _relation_pairs(w)
    shared_set = set(shared)
    via_restriction = {
        (a, b) for a, b in w_pairs if a in shared_set and b in shared_set
    } <= rs_pairs

    if shared and s_graph is not None:
        s_shared_pairs = _relation_pairs(restrict(s_graph, shared))
        w_shared = restrict(w, shared)
        w_shared_pairs = _relation_pairs(w_shared)
        via_shared_morphism = w_shared_pairs <= s_shared_pairs
        via_nested_morphism = w_shared_pairs <= s_pairs
        via_flattening = any(
            _relation_pairs(z) <= s_pairs for z in flattenings(w_shared)
        )
    else:
        via_shared_morphism = via_nested_morphism = via_flattening = True

    votes = {direct, via_restriction, via_shared_morphism, via_nested_morphism, via_flattening}
    return len(votes) == 1
