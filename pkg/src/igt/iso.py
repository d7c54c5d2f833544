"""Isomorphism testing for small groups by backtracking over generator images."""
from __future__ import annotations

from collections import Counter

import numpy as np

from .errors import ResourceLimitError
from .group import FiniteGroup, center, derived_subgroup, is_abelian, order_profile

DEFAULT_ISO_BOUND = 512


def _class_signature(G: FiniteGroup) -> np.ndarray:
    """Per-element (order, centralizer size) packed into one integer."""
    centralizer = (G.mul == G.mul.T).sum(axis=1).astype(np.int64)
    return G.element_orders.astype(np.int64) * (G.order + 1) + centralizer


def _invariants(G: FiniteGroup):
    return (
        G.order,
        tuple(order_profile(G).items()),
        is_abelian(G),
        len(center(G)),
        len(derived_subgroup(G)),
        tuple(sorted(Counter(_class_signature(G).tolist()).items())),
    )


def _extend(G: FiniteGroup, H: FiniteGroup, gens: list[int], images: list[int]):
    """Extend gens -> images along the Cayley graph; None if not an injective homomorphism."""
    phi = {0: 0}
    used = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            fx = phi[x]
            for s, t in zip(gens, images):
                y = int(G.mul[x, s])
                fy = int(H.mul[fx, t])
                known = phi.get(y)
                if known is None:
                    if fy in used:
                        return None
                    phi[y] = fy
                    used.add(fy)
                    nxt.append(y)
                elif known != fy:
                    return None
        frontier = nxt
    return phi


def find_isomorphism(G: FiniteGroup, H: FiniteGroup, *, bound: int = DEFAULT_ISO_BOUND):
    """Return an isomorphism G -> H as a dict of element indices, or None."""
    if max(G.order, H.order) > bound:
        raise ResourceLimitError(f"isomorphism test limited to order <= {bound}")
    if _invariants(G) != _invariants(H):
        return None
    gens = list(G.generators)
    sig_g = _class_signature(G)
    sig_h = _class_signature(H)
    candidates = [np.flatnonzero(sig_h == sig_g[s]).tolist() for s in gens]

    def search(depth: int, images: list[int]):
        phi = _extend(G, H, gens[:depth], images)
        if phi is None:
            return None
        if depth == len(gens):
            return phi if len(phi) == G.order else None
        hit = set(phi.values())
        for t in candidates[depth]:
            if t in hit:
                # gens[depth] lies outside the subgroup built so far
                continue
            found = search(depth + 1, images + [t])
            if found is not None:
                return found
        return None

    return search(0, [])


def are_isomorphic(G: FiniteGroup, H: FiniteGroup, *, bound: int = DEFAULT_ISO_BOUND) -> bool:
    if max(G.order, H.order) > bound:
        raise ResourceLimitError(f"isomorphism test limited to order <= {bound}")
    if G.order != H.order:
        return False
    if is_abelian(G) and is_abelian(H):
        # finite abelian groups are determined by their element-order counts
        return order_profile(G) == order_profile(H)
    return find_isomorphism(G, H, bound=bound) is not None
