"""Search for K_{m,n} and K_k subgraphs (plain subgraph containment).

Vertex positions are searched in increasing order, so the first witness found
is the lexicographically smallest one; graphs built by this package list
their vertex ids in increasing order, making that the smallest by id as well.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from .igraph import IntersectionGraph, _bits


@dataclass(frozen=True)
class PatternWitness:
    kind: str  # "bipartite" or "clique"
    side_a: tuple[int, ...]
    side_b: tuple[int, ...] = ()

    @property
    def pattern(self) -> str:
        if self.kind == "clique":
            return f"K{len(self.side_a)}"
        return f"K{len(self.side_a)},{len(self.side_b)}"

    def to_dict(self) -> dict:
        if self.kind == "clique":
            return {"pattern": self.pattern, "members": list(self.side_a)}
        return {"pattern": self.pattern, "side_a": list(self.side_a), "side_b": list(self.side_b)}


def _lowest(bits: int, count: int) -> list[int]:
    out = []
    for i in _bits(bits):
        out.append(i)
        if len(out) == count:
            break
    return out


def find_complete_bipartite(g: IntersectionGraph, m: int, n: int) -> Optional[PatternWitness]:
    """Lexicographically smallest K_{m,n} (side_a of size m), or None."""
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    if m > n:
        raise ValueError("expected m <= n")
    adj = g.adjacency
    size = len(adj)
    a_ok = b_ok = 0
    for i, row in enumerate(adj):
        deg = row.bit_count()
        if deg >= n:
            a_ok |= 1 << i
        if deg >= m:
            b_ok |= 1 << i
    all_b = b_ok

    def search(start: int, chosen: list[int], common: int) -> Optional[list[int]]:
        if len(chosen) == m:
            return chosen
        need = m - len(chosen)
        for v in range(start, size):
            if not a_ok >> v & 1:
                continue
            if (a_ok >> v).bit_count() < need:
                break
            nxt = common & adj[v]
            # common neighbours never include members of the chosen set (no loops)
            if nxt.bit_count() < n:
                continue
            found = search(v + 1, chosen + [v], nxt)
            if found is not None:
                return found
        return None

    side_a = search(0, [], all_b)
    if side_a is None:
        return None
    common = all_b
    for v in side_a:
        common &= adj[v]
    side_b = _lowest(common, n)
    ids = g.vertices
    return PatternWitness("bipartite", tuple(ids[v] for v in side_a), tuple(ids[v] for v in side_b))


def find_clique(g: IntersectionGraph, k: int) -> Optional[PatternWitness]:
    """Lexicographically smallest k-clique, by branch and bound with degree pruning."""
    if k < 1:
        raise ValueError("k must be positive")
    adj = g.adjacency
    ok = 0
    for i, row in enumerate(adj):
        if row.bit_count() >= k - 1:
            ok |= 1 << i

    def search(chosen: list[int], cand: int) -> Optional[list[int]]:
        if len(chosen) == k:
            return chosen
        need = k - len(chosen)
        while cand:
            if cand.bit_count() < need:
                return None
            v = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            found = search(chosen + [v], cand & adj[v])
            if found is not None:
                return found
        return None

    members = search([], ok)
    if members is None:
        return None
    return PatternWitness("clique", tuple(g.vertices[v] for v in members))


def is_k33_free(g: IntersectionGraph) -> bool:
    return find_complete_bipartite(g, 3, 3) is None


def validate_witness(g: IntersectionGraph, w: PatternWitness) -> bool:
    """Check every required edge is present and the sides are disjoint."""
    if w.kind == "clique":
        vs = w.side_a
        return len(set(vs)) == len(vs) and all(
            g.has_edge(u, v) for i, u in enumerate(vs) for v in vs[i + 1:]
        )
    a, b = w.side_a, w.side_b
    if set(a) & set(b) or len(set(a)) != len(a) or len(set(b)) != len(b):
        return False
    return all(g.has_edge(u, v) for u in a for v in b)


_PATTERN = re.compile(r"^K(\d+)(?:,(\d+))?$")


def parse_pattern(text: str) -> tuple[int, ...]:
    """"K3,3" -> (3, 3); "K5" -> (5,)."""
    match = _PATTERN.match(text.replace(" ", "").replace("_", "").replace("{", "").replace("}", ""))
    if not match:
        raise ValueError(f"bad pattern {text!r}; expected K<k> or K<m>,<n>")
    a, b = match.groups()
    return (int(a),) if b is None else (int(a), int(b))


def find_pattern(g: IntersectionGraph, pattern: str) -> Optional[PatternWitness]:
    parts = parse_pattern(pattern)
    if len(parts) == 1:
        return find_clique(g, parts[0])
    m, n = sorted(parts)
    return find_complete_bipartite(g, m, n)
