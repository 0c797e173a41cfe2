"""Message-weighted degree centrality and deterministic top-k ranking."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .temporal import AggregateGraph, DailySnapshot

VALID_DIRECTIONS = ("out", "in", "total")


@dataclass(frozen=True)
class DegreeMap:
    """Degree value for every registered node, zero entries included."""

    values: Mapping[int, int]
    direction: str

    @property
    def total(self) -> int:
        return sum(self.values.values())


@dataclass(frozen=True)
class RankList:
    """Top-k nodes by degree; ties broken by ascending node id.

    ``k`` is the requested size; ``entries`` may be shorter when fewer nodes
    qualify (zero-degree nodes are excluded unless requested).
    """

    k: int
    entries: tuple[tuple[int, int], ...]

    @property
    def node_ids(self) -> frozenset[int]:
        return frozenset(node for node, _ in self.entries)

    def __len__(self) -> int:
        return len(self.entries)


def degree(
    g: DailySnapshot | AggregateGraph,
    direction: str = "out",
    *,
    weighted: bool = True,
) -> DegreeMap:
    """Degree of every registered node in a snapshot or aggregate graph.

    Weighted degree counts messages (a pair with multiplicity m contributes m);
    ``weighted=False`` counts distinct neighbors instead, as a sensitivity
    check.
    """
    if direction not in VALID_DIRECTIONS:
        raise ValueError(f"direction must be one of {VALID_DIRECTIONS}")
    values: dict[int, int] = {u: 0 for u in g.nodes}
    if weighted:
        for (u, v), mult in g.edges.items():
            if direction != "in":
                values[u] += mult
            if direction != "out":
                values[v] += mult
    else:
        neighbors: dict[int, set[int]] = {u: set() for u in g.nodes}
        for u, v in g.edges:
            if direction != "in":
                neighbors[u].add(v)
            if direction != "out":
                neighbors[v].add(u)
        values = {u: len(s) for u, s in neighbors.items()}
    return DegreeMap(values, direction)


def top_k(d: DegreeMap, k: int, *, include_zeros: bool = False) -> RankList:
    """The k highest-degree nodes, ordered by descending degree then ascending id."""
    if k < 1:
        raise ValueError("k must be >= 1")
    items = [
        (node, deg)
        for node, deg in d.values.items()
        if include_zeros or deg > 0
    ]
    items.sort(key=lambda kv: (-kv[1], kv[0]))
    return RankList(k, tuple(items[:k]))


def degree_share(d: DegreeMap, top: RankList) -> float:
    """Fraction of the total degree mass held by the ranked nodes.

    Returns 0 when the total degree is 0.
    """
    for node, deg in top.entries:
        if d.values.get(node) != deg:
            raise ValueError("rank list was not derived from this degree map")
    total = d.total
    if total == 0:
        return 0.0
    return sum(deg for _, deg in top.entries) / total
