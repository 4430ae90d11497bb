"""Instance graph over partition elements, with per-edge projection masks."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .partition import ClauseElement, TripleKey, pattern_masks

# (pattern over shared vars, source extension mask, target extension mask)
MaskTable = tuple[tuple[tuple[bool, ...], int, int], ...]


@dataclass(frozen=True)
class EdgeLink:
    a: int
    b: int
    shared: tuple[int, ...]
    pos_in_a: tuple[int, ...]
    pos_in_b: tuple[int, ...]
    masks_ab: MaskTable
    masks_ba: MaskTable

    def masks_from(self, src: int) -> MaskTable:
        return self.masks_ab if src == self.a else self.masks_ba

    def other(self, v: int) -> int:
        return self.b if v == self.a else self.a


@dataclass(frozen=True)
class GraphStats:
    vertex_count: int
    edge_count: int
    max_degree: int


@dataclass
class InstanceGraph:
    vertices: list[int]
    edges: list[EdgeLink]
    adjacency: list[list[int]]

    def stats(self) -> GraphStats:
        deg = max((len(a) for a in self.adjacency), default=0)
        return GraphStats(len(self.vertices), len(self.edges), deg)

    def export(self) -> str:
        return "\n".join(
            f"{e.a} {e.b} shared={','.join(map(str, e.shared))}" for e in self.edges
        )


@lru_cache(maxsize=None)
def _table(pos_src: tuple[int, ...], pos_dst: tuple[int, ...]) -> MaskTable:
    src = pattern_masks(pos_src)
    dst = pattern_masks(pos_dst)
    return tuple((p, ms, md) for (p, ms), (_, md) in zip(src, dst))


def edge_masks(key_a: TripleKey, key_b: TripleKey) -> MaskTable:
    """Projection table for imposing ``key_a`` onto ``key_b``.

    For every assignment ``p`` to the shared variables (ascending id order)
    gives the indices of ``key_a`` extending ``p`` and those of ``key_b``
    extending ``p``.
    """
    shared = sorted(set(key_a) & set(key_b))
    if len(shared) not in (1, 2):
        raise ValueError(f"keys {key_a} and {key_b} share {len(shared)} variables")
    pa = tuple(key_a.index(v) + 1 for v in shared)
    pb = tuple(key_b.index(v) + 1 for v in shared)
    return _table(pa, pb)


def build_graph(elements: list[ClauseElement]) -> InstanceGraph:
    by_var: dict[int, list[int]] = {}
    for i, e in enumerate(elements):
        for v in e.key:
            by_var.setdefault(v, []).append(i)

    pairs = set()
    for ids in by_var.values():
        for x in range(len(ids)):
            for y in range(x + 1, len(ids)):
                pairs.add((ids[x], ids[y]))

    edges = []
    adjacency: list[list[int]] = [[] for _ in elements]
    for a, b in sorted(pairs):
        ka, kb = elements[a].key, elements[b].key
        shared = tuple(sorted(set(ka) & set(kb)))
        assert len(shared) < 3, "distinct elements must have distinct keys"
        pa = tuple(ka.index(v) + 1 for v in shared)
        pb = tuple(kb.index(v) + 1 for v in shared)
        eid = len(edges)
        edges.append(EdgeLink(a, b, shared, pa, pb, _table(pa, pb), _table(pb, pa)))
        adjacency[a].append(eid)
        adjacency[b].append(eid)
    return InstanceGraph(list(range(len(elements))), edges, adjacency)
