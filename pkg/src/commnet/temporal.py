"""Temporal communication-graph model.

Message events are bucketed into calendar-day snapshots, which aggregate into
a single multigraph over the observation window. Day boundaries are half-open
intervals [00:00:00, 24:00:00) of the configured clock (UTC plus an optional
fixed offset). All containers are immutable after construction and safe to
share across concurrent readers.
"""
from __future__ import annotations

import datetime as dt
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .errors import OrderingError, WindowError

SECONDS_PER_DAY = 86_400
_EPOCH = dt.date(1970, 1, 1)


def day_number(timestamp: int, tz_offset_seconds: int = 0) -> int:
    """Epoch-day index of a unix timestamp under the configured fixed offset."""
    # floor division implements the half-open day convention exactly
    return (timestamp + tz_offset_seconds) // SECONDS_PER_DAY


def day_date(day: int) -> dt.date:
    return _EPOCH + dt.timedelta(days=day)


def date_to_day(d: dt.date) -> int:
    return (d - _EPOCH).days


@dataclass(frozen=True)
class TemporalEdge:
    """One message event, sender to recipient, at a UTC instant (unix seconds)."""

    sender: int
    recipient: int
    timestamp: int

    def __post_init__(self) -> None:
        if self.sender == self.recipient:
            raise ValueError(f"self-loop edge on node {self.sender}")


class TemporalEdgeStream:
    """Timestamp-ordered message events plus the registry of every node seen.

    The registry is exactly the union of senders and recipients. ``labels``
    optionally maps dense node ids back to the source identifiers they were
    assigned from.
    """

    __slots__ = ("edges", "node_registry", "labels")

    def __init__(
        self,
        edges: Iterable[TemporalEdge],
        labels: Mapping[int, str] | None = None,
    ) -> None:
        edge_tuple = tuple(edges)
        last = None
        for i, e in enumerate(edge_tuple):
            if last is not None and e.timestamp < last:
                raise OrderingError(
                    f"edge {i} breaks timestamp order ({e.timestamp} < {last})"
                )
            last = e.timestamp
        registry: set[int] = set()
        for e in edge_tuple:
            registry.add(e.sender)
            registry.add(e.recipient)
        self.edges = edge_tuple
        self.node_registry = frozenset(registry)
        self.labels = dict(labels) if labels is not None else None

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self) -> Iterator[TemporalEdge]:
        return iter(self.edges)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TemporalEdgeStream):
            return NotImplemented
        return self.edges == other.edges and self.labels == other.labels

    def __repr__(self) -> str:
        return (
            f"TemporalEdgeStream({len(self.edges)} edges, "
            f"{len(self.node_registry)} nodes)"
        )


@dataclass(frozen=True)
class DailySnapshot:
    """Directed multigraph of one calendar day.

    ``edges`` maps (sender, recipient) to its message count for the day.
    ``nodes`` is the parent stream's full registry, so degree maps can carry
    zero entries for inactive nodes.
    """

    day_index: int
    date: dt.date
    edges: Mapping[tuple[int, int], int]
    nodes: frozenset[int]

    @property
    def is_empty(self) -> bool:
        return not self.edges

    @property
    def message_count(self) -> int:
        return sum(self.edges.values())


@dataclass(frozen=True)
class AggregateGraph:
    """Union of daily snapshots: multiplicities summed over the whole window."""

    edges: Mapping[tuple[int, int], int]
    nodes: frozenset[int]

    @property
    def message_count(self) -> int:
        return sum(self.edges.values())


class UndirectedGraph:
    """Simple undirected graph: unordered node pairs, no multiplicity, no self-edges."""

    __slots__ = ("nodes", "edges")

    def __init__(
        self,
        edges: Iterable[tuple[int, int]] = (),
        nodes: Iterable[int] = (),
    ) -> None:
        normalized: set[tuple[int, int]] = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-edge on node {u}")
            normalized.add((u, v) if u < v else (v, u))
        node_set = set(nodes)
        for u, v in normalized:
            node_set.add(u)
            node_set.add(v)
        self.edges = frozenset(normalized)
        self.nodes = frozenset(node_set)

    def adjacency(self) -> dict[int, set[int]]:
        """Fresh mutable adjacency map covering every node, isolates included."""
        adj: dict[int, set[int]] = {u: set() for u in self.nodes}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UndirectedGraph):
            return NotImplemented
        return self.nodes == other.nodes and self.edges == other.edges

    def __repr__(self) -> str:
        return f"UndirectedGraph({len(self.nodes)} nodes, {len(self.edges)} edges)"


def build_snapshots(
    stream: TemporalEdgeStream,
    day_origin: dt.date | None = None,
    *,
    num_days: int | None = None,
    tz_offset_seconds: int = 0,
) -> list[DailySnapshot]:
    """Slice a stream into one snapshot per calendar day.

    Days run from ``day_origin`` (default: the first edge's day) through the
    last edge's day, or through ``day_origin + num_days - 1`` when ``num_days``
    is given. Days without messages are materialized as empty snapshots so the
    day index stays contiguous.

    Raises WindowError if an edge falls before ``day_origin`` or past the end
    of an explicit ``num_days`` window.
    """
    if num_days is not None and num_days < 1:
        raise ValueError("num_days must be >= 1")

    if not stream.edges:
        if num_days is None:
            return []
        if day_origin is None:
            raise ValueError("day_origin is required to window an empty stream")
        origin = date_to_day(day_origin)
        return [
            DailySnapshot(i, day_date(origin + i), {}, stream.node_registry)
            for i in range(num_days)
        ]

    first_day = day_number(stream.edges[0].timestamp, tz_offset_seconds)
    last_day = day_number(stream.edges[-1].timestamp, tz_offset_seconds)
    origin = first_day if day_origin is None else date_to_day(day_origin)
    if origin > first_day:
        raise WindowError(
            f"day_origin {day_date(origin)} is after the first edge's day "
            f"{day_date(first_day)}"
        )
    end_day = last_day if num_days is None else origin + num_days - 1
    if last_day > end_day:
        raise WindowError(
            f"edges extend to {day_date(last_day)}, past the "
            f"{num_days}-day window ending {day_date(end_day)}"
        )

    buckets: dict[int, Counter[tuple[int, int]]] = {}
    for e in stream.edges:
        idx = day_number(e.timestamp, tz_offset_seconds) - origin
        buckets.setdefault(idx, Counter())[(e.sender, e.recipient)] += 1

    return [
        DailySnapshot(
            i, day_date(origin + i), dict(buckets.get(i, {})), stream.node_registry
        )
        for i in range(end_day - origin + 1)
    ]


def aggregate(snapshots: Iterable[DailySnapshot]) -> AggregateGraph:
    """Union of snapshots; multiplicity of each pair is the sum across days."""
    totals: Counter[tuple[int, int]] = Counter()
    nodes: set[int] = set()
    for snap in snapshots:
        totals.update(snap.edges)
        nodes |= snap.nodes
    return AggregateGraph(dict(totals), frozenset(nodes))


def undirected_projection(g: AggregateGraph | DailySnapshot) -> UndirectedGraph:
    """Collapse directions and multiplicities: {u,v} present iff any message passed."""
    pairs = {(u, v) if u < v else (v, u) for (u, v) in g.edges}
    return UndirectedGraph(pairs, nodes=g.nodes)
