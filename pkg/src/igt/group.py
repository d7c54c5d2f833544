"""Finite groups as Cayley tables, and the constructors that build them."""
from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Union

import numpy as np

from .errors import ResourceLimitError, SpecParameterError
from .numtheory import companion, mat_pow, prime_factors
from .spec import (
    Cyclic,
    Dicyclic,
    Dihedral,
    DirectProduct,
    GroupSpec,
    PermClosure,
    SdCyclic,
    SdElemAb,
    _cycle_text,
    parse_spec,
    spec_order,
    validate,
)

log = logging.getLogger(__name__)

DEFAULT_ORDER_BOUND = 5000
EXHAUSTIVE_ASSOC_BOUND = 512
ASSOC_SAMPLES = 1_000_000


def _table_dtype(n: int):
    return np.int16 if n < 2**15 else np.int32


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A finite group given by its multiplication table; element 0 is the identity."""

    mul: np.ndarray
    labels: tuple[str, ...]
    spec_text: str = ""
    inv: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        mul = np.ascontiguousarray(self.mul, dtype=_table_dtype(len(self.mul)))
        mul.setflags(write=False)
        object.__setattr__(self, "mul", mul)
        n = len(mul)
        rows, cols = np.nonzero(mul == 0)
        inv = np.empty(n, dtype=mul.dtype)
        inv[rows] = cols
        inv.setflags(write=False)
        object.__setattr__(self, "inv", inv)

    def __repr__(self):
        return f"FiniteGroup(order={self.order}, spec={self.spec_text!r})"

    @property
    def order(self) -> int:
        return len(self.mul)

    @property
    def identity(self) -> int:
        return 0

    @cached_property
    def element_orders(self) -> np.ndarray:
        n = self.order
        orders = np.zeros(n, dtype=np.int64)
        cur = np.arange(n)
        idx = np.arange(n)
        k = 1
        while True:
            hit = (cur == 0) & (orders == 0)
            orders[hit] = k
            if orders.all():
                break
            cur = self.mul[cur, idx]
            k += 1
        orders.setflags(write=False)
        return orders

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """A small generating set, chosen greedily by descending element order."""
        gens: list[int] = []
        mask = closure_mask(self, [])
        candidates = sorted(range(1, self.order), key=lambda x: (-int(self.element_orders[x]), x))
        for x in candidates:
            if mask.all():
                break
            if not mask[x]:
                gens.append(x)
                mask = closure_mask(self, gens)
        return tuple(gens)

    def conjugation(self, g: int) -> np.ndarray:
        """Array c with c[x] = g x g^-1."""
        return self.mul[self.mul[g], self.inv[g]]

    def power(self, x: int, k: int) -> int:
        k %= int(self.element_orders[x])
        result = 0
        for _ in range(k):
            result = int(self.mul[result, x])
        return result


# -- generic helpers -----------------------------------------------------------


def closure_mask(G: FiniteGroup, seed: Iterable[int]) -> np.ndarray:
    """Boolean membership mask of the subgroup generated by ``seed``."""
    gens = np.unique(np.fromiter((int(s) for s in seed), dtype=np.int64))
    gens = gens[gens != 0]
    member = np.zeros(G.order, dtype=bool)
    member[0] = True
    frontier = np.zeros(1, dtype=np.int64)
    if len(gens) == 0:
        return member
    while len(frontier):
        prod = G.mul[frontier][:, gens].ravel()
        fresh = np.unique(prod[~member[prod]])
        member[fresh] = True
        frontier = fresh
    return member


def closure(G: FiniteGroup, seed: Iterable[int]) -> frozenset[int]:
    """Smallest subgroup containing ``seed``."""
    mask = closure_mask(G, seed)
    size = int(mask.sum())
    assert G.order % size == 0, "Lagrange violated: closure size does not divide |G|"
    return frozenset(int(x) for x in np.flatnonzero(mask))


def element_order(G: FiniteGroup, x: int) -> int:
    if not 0 <= x < G.order:
        raise IndexError(f"element {x} out of range for group of order {G.order}")
    return int(G.element_orders[x])


def order_profile(G: FiniteGroup) -> dict[int, int]:
    return dict(sorted(Counter(int(o) for o in G.element_orders).items()))


def is_abelian(G: FiniteGroup) -> bool:
    return bool(np.array_equal(G.mul, G.mul.T))


def center(G: FiniteGroup) -> frozenset[int]:
    commutes = (G.mul == G.mul.T).all(axis=1)
    return frozenset(int(x) for x in np.flatnonzero(commutes))


def _commutator_subgroup_mask(G: FiniteGroup, members: np.ndarray) -> np.ndarray:
    # [x, y] = x y x^-1 y^-1 for x, y in the given subgroup
    xy = G.mul[np.ix_(members, members)]
    xyx = G.mul[xy, G.inv[members][:, None]]
    comm = G.mul[xyx, G.inv[members][None, :]]
    return closure_mask(G, np.unique(comm))


def derived_subgroup(G: FiniteGroup) -> frozenset[int]:
    mask = _commutator_subgroup_mask(G, np.arange(G.order))
    return frozenset(int(x) for x in np.flatnonzero(mask))


def derived_series(G: FiniteGroup) -> list[int]:
    """Orders along the derived series, ending when it stabilises."""
    members = np.arange(G.order)
    sizes = [G.order]
    while True:
        nxt = np.flatnonzero(_commutator_subgroup_mask(G, members))
        if len(nxt) == len(members):
            return sizes
        sizes.append(len(nxt))
        members = nxt


def is_solvable(G: FiniteGroup) -> bool:
    return derived_series(G)[-1] == 1


def is_nilpotent(G: FiniteGroup) -> bool:
    """Every Sylow subgroup normal, i.e. each prime's p-elements number exactly |P|."""
    n = G.order
    orders = G.element_orders
    for p, e in prime_factors(n).items():
        p_elements = 0
        for o in orders:
            o = int(o)
            while o % p == 0:
                o //= p
            p_elements += o == 1
        if p_elements != p**e:
            return False
    return True


def check_group_axioms(G: FiniteGroup, *, samples: int = ASSOC_SAMPLES, seed: int = 0) -> None:
    """Raise AssertionError unless mul is a Latin square with identity 0 and associative.

    Associativity is checked on every triple up to order 512, on ``samples``
    random triples above that.
    """
    n = G.order
    mul = G.mul.astype(np.int64)
    full = np.arange(n)
    assert (mul[0] == full).all() and (mul[:, 0] == full).all(), "element 0 is not the identity"
    assert (np.sort(mul, axis=1) == full).all(), "a row is not a permutation"
    assert (np.sort(mul, axis=0) == full[:, None]).all(), "a column is not a permutation"
    assert (mul[full, G.inv] == 0).all(), "inverse table inconsistent"
    if n <= EXHAUSTIVE_ASSOC_BOUND:
        for x in range(n):
            left = mul[mul[x]]          # (x y) z over all y, z
            right = mul[x][mul]         # x (y z)
            assert np.array_equal(left, right), f"associativity fails for x={x}"
    else:
        rng = np.random.default_rng(seed)
        x, y, z = rng.integers(0, n, size=(3, samples))
        assert np.array_equal(mul[mul[x, y], z], mul[x, mul[y, z]]), "associativity fails"


# -- constructors --------------------------------------------------------------


def _cyclic(n: int) -> FiniteGroup:
    i = np.arange(n)
    return FiniteGroup((i[:, None] + i[None, :]) % n, tuple(str(k) for k in range(n)), f"C({n})")


def _metacyclic_pairs(n_rot: int, twist: int) -> np.ndarray:
    """Elements a^i b^e (index e*n_rot + i) with b a = a^-1 b and b^2 = a^twist."""
    n = 2 * n_rot
    idx = np.arange(n)
    e, i = idx // n_rot, idx % n_rot
    e1, i1 = e[:, None], i[:, None]
    e2, i2 = e[None, :], i[None, :]
    sign = np.where(e1 == 1, -1, 1)
    exp = i1 + sign * i2 + np.where((e1 == 1) & (e2 == 1), twist, 0)
    table = ((e1 + e2) % 2) * n_rot + exp % n_rot
    return table


def _dihedral(m: int) -> FiniteGroup:
    half = m // 2
    table = _metacyclic_pairs(half, 0)
    labels = [f"r^{i}" for i in range(half)] + [f"r^{i}s" for i in range(half)]
    labels[0] = "1"
    return FiniteGroup(table, tuple(labels), f"D({m})")


def _dicyclic(k: int) -> FiniteGroup:
    table = _metacyclic_pairs(2 * k, k)
    labels = [f"a^{i}" for i in range(2 * k)] + [f"a^{i}b" for i in range(2 * k)]
    labels[0] = "1"
    return FiniteGroup(table, tuple(labels), f"Dic({k})")


def _sd_cyclic(q: int, m: int, alpha: int) -> FiniteGroup:
    n = q * m
    idx = np.arange(n)
    x, y = idx // m, idx % m
    apow = np.array([pow(alpha, k, q) for k in range(m)], dtype=np.int64)
    nx = (x[:, None] + apow[y][:, None] * x[None, :]) % q
    ny = (y[:, None] + y[None, :]) % m
    labels = tuple(f"({a},{b})" for a, b in zip(x, y))
    return FiniteGroup(nx * m + ny, labels, f"SDC({q},{m},{alpha})")


def _sd_elem_ab(p: int, m: int, beta: int) -> FiniteGroup:
    n = p * p * m
    idx = np.arange(n)
    v, y = idx // m, idx % m
    va, vb = v // p, v % p
    theta = companion(beta, p)
    powers = np.array([mat_pow(theta, k, p) for k in range(m)], dtype=np.int64)  # (m, 2, 2)
    t = powers[y]  # matrix acting for the left factor
    # v1 + theta^{y1} v2
    ra = (va[:, None] + t[:, 0, 0][:, None] * va[None, :] + t[:, 0, 1][:, None] * vb[None, :]) % p
    rb = (vb[:, None] + t[:, 1, 0][:, None] * va[None, :] + t[:, 1, 1][:, None] * vb[None, :]) % p
    ry = (y[:, None] + y[None, :]) % m
    labels = tuple(f"(({a},{b}),{c})" for a, b, c in zip(va, vb, y))
    return FiniteGroup((ra * p + rb) * m + ry, labels, f"SDE({p},{m},{beta})")


def _direct_product(A: FiniteGroup, B: FiniteGroup) -> FiniteGroup:
    na, nb = A.order, B.order
    a = A.mul.astype(np.int64)
    b = B.mul.astype(np.int64)
    table = (a[:, None, :, None] * nb + b[None, :, None, :]).reshape(na * nb, na * nb)
    labels = tuple(f"({la},{lb})" for la in A.labels for lb in B.labels)
    return FiniteGroup(table, labels, f"{A.spec_text}*{B.spec_text}")


def _perm_closure(spec: PermClosure, bound: int) -> FiniteGroup:
    d = spec.degree
    ident = tuple(range(d))
    gens = [g for g in spec.generators if g != ident]
    elements = [ident]
    index = {ident: 0}
    frontier = [ident]
    # breadth-first over left multiplication by generators: (g x)(i) = g(x(i))
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = tuple(g[x[i]] for i in range(d))
                if y not in index:
                    index[y] = len(elements)
                    elements.append(y)
                    nxt.append(y)
                    if len(elements) > bound:
                        raise ResourceLimitError(
                            f"permutation closure exceeds order bound {bound}"
                        )
        frontier = nxt
    perms = np.array(elements, dtype=np.int64)
    weights = d ** np.arange(d, dtype=np.int64)
    codes = perms @ weights
    order = np.argsort(codes)
    sorted_codes = codes[order]
    n = len(elements)
    table = np.empty((n, n), dtype=np.int64)
    for x in range(n):
        composed = perms[x][perms]  # row y: x o y
        pos = np.searchsorted(sorted_codes, composed @ weights)
        table[x] = order[pos]
    labels = tuple(_cycle_text(e) for e in elements)
    return FiniteGroup(table, labels, spec.text())


def build(spec: Union[GroupSpec, str], *, order_bound: int = DEFAULT_ORDER_BOUND) -> FiniteGroup:
    """Build the multiplication table described by ``spec``."""
    if isinstance(spec, str):
        spec = parse_spec(spec)
    validate(spec)
    n = spec_order(spec)
    if n is not None and n > order_bound:
        raise ResourceLimitError(f"group order {n} exceeds order bound {order_bound}")
    return _build(spec, order_bound)


def _build(spec: GroupSpec, bound: int) -> FiniteGroup:
    if isinstance(spec, Cyclic):
        return _cyclic(spec.n)
    if isinstance(spec, Dihedral):
        return _dihedral(spec.m)
    if isinstance(spec, Dicyclic):
        return _dicyclic(spec.k)
    if isinstance(spec, SdCyclic):
        return _sd_cyclic(spec.q, spec.m, spec.alpha)
    if isinstance(spec, SdElemAb):
        return _sd_elem_ab(spec.p, spec.m, spec.beta)
    if isinstance(spec, PermClosure):
        return _perm_closure(spec, bound)
    if isinstance(spec, DirectProduct):
        left = _build(spec.left, bound)
        right = _build(spec.right, bound)
        if left.order * right.order > bound:
            raise ResourceLimitError(
                f"group order {left.order * right.order} exceeds order bound {bound}"
            )
        return _direct_product(left, right)
    raise SpecParameterError(f"unknown spec node {spec!r}")


def group_to_dict(G: FiniteGroup) -> dict:
    return {
        "spec": G.spec_text,
        "order": G.order,
        "identity": 0,
        "labels": list(G.labels),
        "inverse": G.inv.tolist(),
        "element_orders": G.element_orders.tolist(),
        "mul": G.mul.tolist(),
    }
