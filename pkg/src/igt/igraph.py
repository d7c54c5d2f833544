"""Intersection graph of the proper non-trivial subgroups, and its exports."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .lattice import SubgroupLattice, frattini


@dataclass(eq=False)
class IntersectionGraph:
    """Undirected simple graph; adjacency rows are bitsets over vertex positions.

    ``vertices[i]`` is the external id of position i (a lattice id for
    intersection graphs), and witnesses are reported in those ids.
    """

    vertices: list[int]
    adjacency: list[int]
    vertex_order: list[int] = field(default_factory=list)
    members: list[tuple[int, ...]] = field(default_factory=list, repr=False)
    frattini_id: Optional[int] = None
    group_text: str = ""
    group_order: int = 0

    def __post_init__(self):
        self._pos = {v: i for i, v in enumerate(self.vertices)}

    def __len__(self):
        return len(self.vertices)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "IntersectionGraph":
        adj = [0] * n
        for i, j in edges:
            if i == j:
                raise ValueError("loops are not allowed")
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        return cls(list(range(n)), adj)

    def position(self, v: int) -> int:
        try:
            return self._pos[v]
        except KeyError:
            raise KeyError(f"no vertex with id {v}") from None

    def neighbors(self, v: int) -> set[int]:
        row = self.adjacency[self.position(v)]
        return {self.vertices[i] for i in _bits(row)}

    def degree(self, v: int) -> int:
        return self.adjacency[self.position(v)].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adjacency[self.position(u)] >> self.position(v) & 1)

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for i, row in enumerate(self.adjacency):
            for j in _bits(row >> (i + 1)):
                out.append((self.vertices[i], self.vertices[i + 1 + j]))
        return out

    @property
    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adjacency) // 2


def _bits(x: int):
    i = 0
    while x:
        if x & 1:
            yield i
        x >>= 1
        i += 1


def build_intersection_graph(L: SubgroupLattice) -> IntersectionGraph:
    """One vertex per proper non-trivial subgroup; edge iff the intersection is non-trivial."""
    verts = L.proper_nontrivial()
    # drop the identity bit so "non-trivial intersection" is just a non-zero AND
    stripped = [s.bits & ~1 for s in verts]
    adj = [0] * len(verts)
    for i in range(len(verts)):
        si = stripped[i]
        row = 0
        for j in range(len(verts)):
            if i != j and si & stripped[j]:
                row |= 1 << j
        adj[i] = row
    phi = frattini(L)
    in_graph = 1 < phi.order < L.group.order
    return IntersectionGraph(
        vertices=[s.id for s in verts],
        adjacency=adj,
        vertex_order=[s.order for s in verts],
        members=[s.members for s in verts],
        frattini_id=phi.id if in_graph else None,
        group_text=L.group.spec_text,
        group_order=L.group.order,
    )


def export_dot(g: IntersectionGraph) -> str:
    lines = [f'graph "{g.group_text or "G"}" {{']
    for i, v in enumerate(g.vertices):
        label = str(g.vertex_order[i]) if g.vertex_order else str(v)
        if v == g.frattini_id:
            label += " Φ"
        lines.append(f'  H{v} [label="{label}"];')
    for u, v in g.edges():
        lines.append(f"  H{u} -- H{v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_dict(g: IntersectionGraph) -> dict:
    return {
        "group": g.group_text,
        "order": g.group_order,
        "vertices": [
            {
                "id": v,
                "order": g.vertex_order[i] if g.vertex_order else None,
                "members": list(g.members[i]) if g.members else [],
            }
            for i, v in enumerate(g.vertices)
        ],
        "edges": [[u, v] for u, v in g.edges()],
    }


def export_json(g: IntersectionGraph) -> str:
    return json.dumps(graph_to_dict(g))
