"""Parameter selection for the semidirect-product families.

2x2 matrices over Z_p are plain nested tuples; they never get bigger than
that, so numpy would only add overhead.
"""
from __future__ import annotations

from math import gcd
from typing import Optional

from sympy import factorint, isprime
from sympy.ntheory import n_order, primitive_root

Matrix = tuple[tuple[int, int], tuple[int, int]]

__all__ = [
    "is_prime",
    "prime_factors",
    "multiplicative_order",
    "companion",
    "mat_mul",
    "mat_pow",
    "mat_order",
    "has_eigenvalue",
    "find_alpha",
    "find_beta",
    "find_beta_of_order",
]


def is_prime(n: int) -> bool:
    return n > 1 and bool(isprime(n))


def prime_factors(n: int) -> dict[int, int]:
    return {int(p): int(e) for p, e in factorint(n).items()}


def multiplicative_order(a: int, n: int) -> int:
    if gcd(a, n) != 1:
        raise ValueError(f"{a} is not a unit modulo {n}")
    if n == 1:
        return 1
    return int(n_order(a % n, n))


def companion(beta: int, p: int) -> Matrix:
    """The matrix [[0, -1], [1, beta]] over Z_p."""
    return ((0, (-1) % p), (1, beta % p))


def mat_mul(x: Matrix, y: Matrix, p: int) -> Matrix:
    return (
        ((x[0][0] * y[0][0] + x[0][1] * y[1][0]) % p, (x[0][0] * y[0][1] + x[0][1] * y[1][1]) % p),
        ((x[1][0] * y[0][0] + x[1][1] * y[1][0]) % p, (x[1][0] * y[0][1] + x[1][1] * y[1][1]) % p),
    )


_IDENTITY: Matrix = ((1, 0), (0, 1))


def mat_pow(x: Matrix, k: int, p: int) -> Matrix:
    result = _IDENTITY
    base = x
    while k:
        if k & 1:
            result = mat_mul(result, base, p)
        base = mat_mul(base, base, p)
        k >>= 1
    return tuple(tuple(v % p for v in row) for row in result)  # type: ignore[return-value]


def mat_order(x: Matrix, p: int) -> Optional[int]:
    """Multiplicative order of x in GL(2, Z_p), or None if x is singular."""
    det = (x[0][0] * x[1][1] - x[0][1] * x[1][0]) % p
    if det == 0:
        return None
    cur = tuple(tuple(v % p for v in row) for row in x)
    k = 1
    # element orders in GL(2, p) never exceed p^2 - 1
    while cur != _IDENTITY:
        cur = mat_mul(cur, x, p)
        k += 1
        if k > p * p:
            raise AssertionError("matrix order exceeded |GL(2,p)| exponent bound")
    return k


def has_eigenvalue(x: Matrix, p: int) -> bool:
    """True iff the characteristic polynomial of x has a root in Z_p."""
    trace = (x[0][0] + x[1][1]) % p
    det = (x[0][0] * x[1][1] - x[0][1] * x[1][0]) % p
    return any((lam * lam - trace * lam + det) % p == 0 for lam in range(p))


def find_alpha(q: int, m: int) -> Optional[int]:
    """Smallest alpha in [2, q-1] whose multiplicative order mod q is exactly m."""
    if not is_prime(q):
        raise ValueError(f"q={q} is not prime")
    if m < 1 or (q - 1) % m != 0:
        return None
    # units of order exactly m are g^(j (q-1)/m) with gcd(j, m) = 1
    g = int(primitive_root(q))
    step = (q - 1) // m
    candidates = [pow(g, j * step, q) for j in range(1, m + 1) if gcd(j, m) == 1]
    candidates = [a for a in candidates if a >= 2]
    return min(candidates) if candidates else None


def find_beta(p: int, m: int) -> Optional[int]:
    """Smallest beta making the companion matrix of order m with an eigenvalue-free
    power of order q, where m = q^k (k in {1, 2}).

    Returns None when no beta in [0, p-1] qualifies; for q = 2 this is always
    the case because an involution over Z_p (p odd) has eigenvalue -1.
    """
    if not is_prime(p):
        raise ValueError(f"p={p} is not prime")
    factors = prime_factors(m)
    if len(factors) != 1:
        raise ValueError(f"m={m} is not a prime power")
    (q, k), = factors.items()
    if k not in (1, 2):
        raise ValueError(f"m={m} must be q or q^2")
    for beta in range(p):
        theta = companion(beta, p)
        if mat_order(theta, p) != m:
            continue
        if not has_eigenvalue(mat_pow(theta, m // q, p), p):
            return beta
    return None


def find_beta_of_order(p: int, m: int) -> Optional[int]:
    """Smallest beta whose companion matrix has order exactly m (no eigenvalue condition)."""
    for beta in range(p):
        if mat_order(companion(beta, p), p) == m:
            return beta
    return None
