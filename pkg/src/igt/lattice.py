"""Subgroup lattice enumeration and structural annotations.

Member sets are held as Python ints used as fixed-width bit vectors (bit x
set iff element x is a member); intersections and containment tests are
single big-int operations.
"""
from __future__ import annotations

import logging
from bisect import bisect_left
from collections import Counter
from dataclasses import dataclass, field
from math import lcm
from typing import Iterable, Optional

import numpy as np
from sympy import divisors

from .errors import ResourceLimitError
from .group import FiniteGroup, is_solvable
from .numtheory import is_prime, prime_factors

log = logging.getLogger(__name__)

DEFAULT_SUBGROUP_BOUND = 20000


def mask_to_int(mask: np.ndarray) -> int:
    return int.from_bytes(np.packbits(mask, bitorder="little").tobytes(), "little")


def int_to_indices(bits: int, n: int) -> np.ndarray:
    raw = np.frombuffer(bits.to_bytes((n + 7) // 8, "little"), dtype=np.uint8)
    return np.flatnonzero(np.unpackbits(raw, bitorder="little")[:n])


@dataclass(eq=False)
class Subgroup:
    id: int
    members: tuple[int, ...]
    bits: int = field(repr=False)
    is_normal: bool = False
    is_maximal: bool = False

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, x: int) -> bool:
        return bool(self.bits >> x & 1)

    def issubset(self, other: "Subgroup") -> bool:
        return self.bits & ~other.bits == 0


@dataclass(eq=False)
class SubgroupLattice:
    group: FiniteGroup
    subgroups: list[Subgroup]

    def __post_init__(self):
        self._by_bits = {s.bits: s for s in self.subgroups}

    def __len__(self):
        return len(self.subgroups)

    def __iter__(self):
        return iter(self.subgroups)

    def __getitem__(self, i: int) -> Subgroup:
        return self.subgroups[i]

    @property
    def counts_by_order(self) -> dict[int, int]:
        return dict(sorted(Counter(s.order for s in self.subgroups).items()))

    @property
    def trivial(self) -> Subgroup:
        return self.subgroups[0]

    @property
    def whole(self) -> Subgroup:
        return self.subgroups[-1]

    def proper_nontrivial(self) -> list[Subgroup]:
        n = self.group.order
        return [s for s in self.subgroups if 1 < s.order < n]

    def maximal(self) -> list[Subgroup]:
        return [s for s in self.subgroups if s.is_maximal]

    def normal(self) -> list[Subgroup]:
        return [s for s in self.subgroups if s.is_normal]

    def find(self, members: Iterable[int]) -> Optional[Subgroup]:
        bits = 0
        for x in members:
            bits |= 1 << int(x)
        return self._by_bits.get(bits)

    def of_order(self, k: int) -> list[Subgroup]:
        return [s for s in self.subgroups if s.order == k]


def _cyclic_subgroups(G: FiniteGroup) -> dict[int, int]:
    """Map bits -> a generator, one entry per cyclic subgroup."""
    n = G.order
    orders = G.element_orders
    seen: dict[int, int] = {}
    # elements of largest order first, so each cyclic subgroup is keyed by a generator
    for x in sorted(range(n), key=lambda e: (-int(orders[e]), e)):
        powers = [0]
        y = x
        while y != 0:
            powers.append(y)
            y = int(G.mul[y, x])
        bits = mask_to_int(_indices_mask(np.array(powers), n))
        seen.setdefault(bits, x)
    return seen


def _join_size_forced(n: int, divs: list[int], lower: int, step: int) -> Optional[int]:
    """Candidate orders for a join: multiples of ``step`` dividing n and >= lower.

    Returns the largest candidate below n, or None when the join must be G.
    """
    below = [d for d in divs[bisect_left(divs, lower):] if d % step == 0 and d < n]
    return below[-1] if below else None


def enumerate_subgroups(
    G: FiniteGroup, *, subgroup_bound: int = DEFAULT_SUBGROUP_BOUND, method: str = "auto"
) -> SubgroupLattice:
    """All subgroups of G, by joining found subgroups with cyclic ones until nothing new appears.

    For solvable G only joins H<c> with c normalizing H and [H<c> : H] prime are
    formed; every subgroup of a solvable group arises from such a chain, and
    the join is then the product set, so no closure is needed.
    ``method`` forces "join" (all pairs) or "extension" (solvable groups only).
    """
    if method not in ("auto", "join", "extension"):
        raise ValueError(f"unknown method {method!r}")
    n = G.order
    full_bits = (1 << n) - 1
    divs = [int(d) for d in divisors(n)]
    solvable = is_solvable(G) if method != "join" else False
    if method == "extension" and not solvable:
        raise ValueError("cyclic extension is only complete for solvable groups")

    cyclic = _cyclic_subgroups(G)
    cyc_list = sorted(cyclic.items(), key=lambda kv: (kv[0].bit_count(), kv[0]))
    cyc_bits = [b for b, _ in cyc_list]
    cyc_gen = [g for _, g in cyc_list]
    cyc_size = [b.bit_count() for b in cyc_bits]
    cyc_members = [int_to_indices(b, n) for b in cyc_bits]
    conj = {}

    # bits -> generating list
    found: dict[int, list[int]] = {}
    for b, g in cyc_list:
        found[b] = [g] if g else []
    found.setdefault(full_bits, list(G.generators))

    def add(bits: int, gens: list[int]):
        if bits not in found:
            found[bits] = gens
            worklist.append(bits)
            if len(found) > subgroup_bound:
                raise ResourceLimitError(f"more than {subgroup_bound} subgroups")

    worklist = [b for b in found if b != full_bits]
    if len(found) > subgroup_bound:
        raise ResourceLimitError(f"more than {subgroup_bound} subgroups")
    cyc_index = {b: i for i, b in enumerate(cyc_bits)}
    while worklist:
        h_bits = worklist.pop()
        h_gens = found[h_bits]
        h_size = h_bits.bit_count()
        h_members = None
        # cyclic-cyclic pairs need only be joined once, from the earlier of the two
        start = cyc_index[h_bits] + 1 if h_bits in cyc_index and not solvable else 0
        for ci in range(start, len(cyc_bits)):
            c_bits = cyc_bits[ci]
            if c_bits & ~h_bits == 0 or h_bits & ~c_bits == 0:
                continue
            meet = (h_bits & c_bits).bit_count()
            if solvable:
                if not is_prime(cyc_size[ci] // meet):
                    continue
                if h_members is None:
                    h_members = int_to_indices(h_bits, n)
                g = cyc_gen[ci]
                if g not in conj:
                    conj[g] = G.conjugation(g)
                if mask_to_int(_indices_mask(conj[g][h_members], n)) != h_bits:
                    continue
                product = G.mul[np.ix_(h_members, cyc_members[ci])]
                add(mask_to_int(_indices_mask(product.ravel(), n)), h_gens + [g])
                continue
            lower = h_size * cyc_size[ci] // meet
            cap = _join_size_forced(n, divs, lower, lcm(h_size, cyc_size[ci]))
            if cap is None:
                continue
            gens = h_gens + [cyc_gen[ci]]
            mask = _bounded_closure(G, gens, cap)
            if mask is not None:
                add(mask_to_int(mask), gens)

    return _annotate(G, list(found))


def _bounded_closure(G: FiniteGroup, gens: list[int], cap: int) -> Optional[np.ndarray]:
    """Closure of gens, or None as soon as it grows past ``cap`` elements."""
    gens_arr = np.array(gens, dtype=np.int64)
    member = np.zeros(G.order, dtype=bool)
    member[0] = True
    size = 1
    frontier = np.zeros(1, dtype=np.int64)
    while len(frontier):
        step = np.zeros(G.order, dtype=bool)
        step[G.mul[frontier][:, gens_arr].ravel()] = True
        step &= ~member
        frontier = np.flatnonzero(step)
        member |= step
        size += len(frontier)
        if size > cap:
            return None
    return member


def _annotate(G: FiniteGroup, bit_sets: list[int]) -> SubgroupLattice:
    n = G.order
    entries = []
    for b in bit_sets:
        members = tuple(int(x) for x in int_to_indices(b, n))
        entries.append((len(members), members, b))
    entries.sort()
    conj = [G.conjugation(g) for g in G.generators]
    subgroups = []
    for i, (_, members, b) in enumerate(entries):
        idx = np.array(members, dtype=np.int64)
        normal = True
        for c in conj:
            image_bits = mask_to_int(_indices_mask(c[idx], n))
            if image_bits != b:
                normal = False
                break
        subgroups.append(Subgroup(i, members, b, is_normal=normal))
    # maximal: proper, and contained in no other proper subgroup
    proper = subgroups[:-1] if n > 1 else []
    for i, h in enumerate(proper):
        h.is_maximal = not any(
            h.bits & ~k.bits == 0 for k in proper[i + 1:] if k.order > h.order
        )
    return SubgroupLattice(G, subgroups)


def _indices_mask(idx: np.ndarray, n: int) -> np.ndarray:
    mask = np.zeros(n, dtype=bool)
    mask[idx] = True
    return mask


# -- structural queries ----------------------------------------------------------


def frattini(L: SubgroupLattice) -> Subgroup:
    """Intersection of all maximal subgroups (the whole group if there are none)."""
    bits = L.whole.bits
    for s in L.maximal():
        bits &= s.bits
    return L._by_bits[bits]


def normalizer(G: FiniteGroup, H: Subgroup, L: Optional[SubgroupLattice] = None) -> Subgroup:
    """{g : g H g^-1 = H}, returned as a lattice member when L is given."""
    idx = np.array(H.members, dtype=np.int64)
    member = _indices_mask(idx, G.order)
    conj = G.mul[G.mul[:, idx], G.inv[:, None]]  # row g: g h g^-1
    stable = member[conj].all(axis=1)
    norm = tuple(int(x) for x in np.flatnonzero(stable))
    if L is not None:
        found = L.find(norm)
        assert found is not None, "normalizer is not in the lattice"
        return found
    bits = mask_to_int(stable)
    return Subgroup(-1, norm, bits, is_normal=False)


def sylow_congruence_check(L: SubgroupLattice, p: int, k: int) -> bool:
    """Whether the number of subgroups of order p^k is 1 mod p."""
    if L.group.order % p**k:
        raise ValueError(f"{p}^{k} does not divide |G| = {L.group.order}")
    return L.counts_by_order.get(p**k, 0) % p == 1 % p


def product_set_size(G: FiniteGroup, X: Subgroup, Y: Subgroup) -> int:
    xs = np.array(X.members, dtype=np.int64)
    ys = np.array(Y.members, dtype=np.int64)
    return len(np.unique(G.mul[np.ix_(xs, ys)]))


def product_formula_check(G: FiniteGroup, X: Subgroup, Y: Subgroup) -> bool:
    """|XY| * |X meet Y| == |X| * |Y|, with XY computed as a set."""
    meet = (X.bits & Y.bits).bit_count()
    return product_set_size(G, X, Y) * meet == X.order * Y.order


def minimal_normal_subgroups(L: SubgroupLattice) -> list[Subgroup]:
    nontrivial = [s for s in L.normal() if s.order > 1]
    return [
        s for s in nontrivial
        if not any(t is not s and t.bits & ~s.bits == 0 for t in nontrivial)
    ]


def is_elementary_abelian(G: FiniteGroup, H: Subgroup) -> bool:
    """All non-identity members share one prime order and commute pairwise."""
    if H.order == 1:
        return False
    factors = prime_factors(H.order)
    if len(factors) != 1:
        return False
    (p, _), = factors.items()
    idx = np.array(H.members, dtype=np.int64)
    if any(int(G.element_orders[x]) != p for x in H.members if x != 0):
        return False
    sub = G.mul[np.ix_(idx, idx)]
    return bool(np.array_equal(sub, sub.T))


def check_minimal_normal_elementary(L: SubgroupLattice) -> list[Subgroup]:
    """Minimal normal subgroups that fail to be elementary abelian (empty when solvable)."""
    if not is_solvable(L.group):
        return []
    return [s for s in minimal_normal_subgroups(L) if not is_elementary_abelian(L.group, s)]


def lattice_to_dict(L: SubgroupLattice) -> dict:
    return {
        "group": L.group.spec_text,
        "order": L.group.order,
        "counts_by_order": {str(k): v for k, v in L.counts_by_order.items()},
        "subgroups": [
            {
                "id": s.id,
                "order": s.order,
                "members": list(s.members),
                "normal": s.is_normal,
                "maximal": s.is_maximal,
            }
            for s in L.subgroups
        ],
    }
