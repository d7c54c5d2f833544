"""Group spec expressions and their parser.

Grammar::

    Spec  := Atom { "*" Atom }
    Atom  := "C(" INT ")" | "D(" INT ")" | "Dic(" INT ")"
           | "SDC(" INT "," INT "," INT ")" | "SDE(" INT "," INT "," INT ")"
           | "Perm(" INT ";" CYCLES { "," CYCLES } ")"

Whitespace is insignificant. ``D(m)`` is the dihedral group of order m.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Optional, Union

from .errors import SpecParameterError, SpecSyntaxError
from .numtheory import companion, is_prime, mat_pow

MAX_PERM_DEGREE = 12

__all__ = [
    "Cyclic",
    "Dihedral",
    "Dicyclic",
    "SdCyclic",
    "SdElemAb",
    "PermClosure",
    "DirectProduct",
    "GroupSpec",
    "parse_spec",
    "spec_order",
]


@dataclass(frozen=True)
class Cyclic:
    n: int

    def text(self) -> str:
        return f"C({self.n})"


@dataclass(frozen=True)
class Dihedral:
    """Dihedral group of order m (m even, m >= 4)."""

    m: int

    def text(self) -> str:
        return f"D({self.m})"


@dataclass(frozen=True)
class Dicyclic:
    """Dicyclic group of order 4k: <a, b | a^2k = 1, b^2 = a^k, bab^-1 = a^-1>."""

    k: int

    def text(self) -> str:
        return f"Dic({self.k})"


@dataclass(frozen=True)
class SdCyclic:
    """Z_q x|_alpha Z_m with b a b^-1 = a^alpha."""

    q: int
    m: int
    alpha: int

    def text(self) -> str:
        return f"SDC({self.q},{self.m},{self.alpha})"


@dataclass(frozen=True)
class SdElemAb:
    """(Z_p x Z_p) x| Z_m, the generator acting by the companion matrix of beta."""

    p: int
    m: int
    beta: int

    def text(self) -> str:
        return f"SDE({self.p},{self.m},{self.beta})"


@dataclass(frozen=True)
class PermClosure:
    """Permutation group generated by ``generators``, each a 0-based image tuple."""

    degree: int
    generators: tuple[tuple[int, ...], ...]

    def text(self) -> str:
        gens = ",".join(_cycle_text(g) for g in self.generators)
        return f"Perm({self.degree};{gens})"


@dataclass(frozen=True)
class DirectProduct:
    left: "GroupSpec"
    right: "GroupSpec"

    def text(self) -> str:
        return f"{self.left.text()}*{self.right.text()}"


GroupSpec = Union[Cyclic, Dihedral, Dicyclic, SdCyclic, SdElemAb, PermClosure, DirectProduct]


def spec_order(spec: GroupSpec) -> Optional[int]:
    """Group order implied by the spec, or None when it needs a closure to know."""
    if isinstance(spec, Cyclic):
        return spec.n
    if isinstance(spec, Dihedral):
        return spec.m
    if isinstance(spec, Dicyclic):
        return 4 * spec.k
    if isinstance(spec, SdCyclic):
        return spec.q * spec.m
    if isinstance(spec, SdElemAb):
        return spec.p * spec.p * spec.m
    if isinstance(spec, DirectProduct):
        a, b = spec_order(spec.left), spec_order(spec.right)
        return None if a is None or b is None else a * b
    return None


def _cycle_text(perm: tuple[int, ...]) -> str:
    seen = set()
    parts = []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cycle = []
        x = start
        while x not in seen:
            seen.add(x)
            cycle.append(x + 1)
            x = perm[x]
        parts.append("(" + " ".join(map(str, cycle)) + ")")
    return "".join(parts) or "()"


# -- validation -----------------------------------------------------------------


def validate(spec: GroupSpec, position: Optional[int] = None) -> None:
    """Raise SpecParameterError if an atom's parameters are out of range."""
    def bad(msg: str):
        raise SpecParameterError(msg, position)

    if isinstance(spec, Cyclic):
        if spec.n < 1:
            bad(f"C(n) needs n >= 1, got {spec.n}")
    elif isinstance(spec, Dihedral):
        if spec.m < 4 or spec.m % 2:
            bad(f"D(m) needs even m >= 4, got {spec.m}")
    elif isinstance(spec, Dicyclic):
        if spec.k < 2:
            bad(f"Dic(k) needs k >= 2, got {spec.k}")
    elif isinstance(spec, SdCyclic):
        q, m, alpha = spec.q, spec.m, spec.alpha
        if not is_prime(q):
            bad(f"SDC: q={q} is not prime")
        if m < 1:
            bad(f"SDC: m={m} must be positive")
        if gcd(alpha, q) != 1:
            bad(f"SDC: alpha={alpha} is not coprime to q={q}")
        if pow(alpha, m, q) != 1:
            bad(f"SDC: alpha^m = {alpha}^{m} is not 1 mod {q}")
    elif isinstance(spec, SdElemAb):
        p, m = spec.p, spec.m
        if not is_prime(p):
            bad(f"SDE: p={p} is not prime")
        if m < 1:
            bad(f"SDE: m={m} must be positive")
        if mat_pow(companion(spec.beta, p), m, p) != ((1, 0), (0, 1)):
            bad(f"SDE: theta^m is not the identity for beta={spec.beta} over Z_{p}")
    elif isinstance(spec, PermClosure):
        if not 1 <= spec.degree <= MAX_PERM_DEGREE:
            bad(f"Perm: degree must be in [1, {MAX_PERM_DEGREE}], got {spec.degree}")
        for g in spec.generators:
            if sorted(g) != list(range(spec.degree)):
                bad(f"Perm: generator {g} is not a permutation of degree {spec.degree}")
    elif isinstance(spec, DirectProduct):
        validate(spec.left, position)
        validate(spec.right, position)


# -- parser ---------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def error(self, expected, msg="syntax error"):
        self.skip_ws()
        found = self.text[self.pos] if self.pos < len(self.text) else "end of input"
        raise SpecSyntaxError(f"{msg}: unexpected {found!r}", self.pos, expected)

    def expect(self, token: str):
        self.skip_ws()
        if self.text.startswith(token, self.pos):
            self.pos += len(token)
        else:
            self.error([repr(token)])

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] in "+-":
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        digits = self.text[start:self.pos]
        if not digits.lstrip("+-"):
            self.pos = start
            self.error(["INT"])
        return int(digits)

    def spec(self) -> GroupSpec:
        node = self.atom()
        while self.peek() == "*":
            self.pos += 1
            node = DirectProduct(node, self.atom())
        return node

    def atom(self) -> GroupSpec:
        self.skip_ws()
        start = self.pos
        for keyword in ("SDC", "SDE", "Dic", "Perm", "C", "D"):
            if self.text.startswith(keyword, self.pos):
                self.pos += len(keyword)
                break
        else:
            self.error(["'C('", "'D('", "'Dic('", "'SDC('", "'SDE('", "'Perm('"])
        self.expect("(")
        if keyword == "Perm":
            node = self.perm_body()
        else:
            args = [self.integer()]
            arity = 3 if keyword in ("SDC", "SDE") else 1
            for _ in range(arity - 1):
                self.expect(",")
                args.append(self.integer())
            self.expect(")")
            node = {
                "C": Cyclic,
                "D": Dihedral,
                "Dic": Dicyclic,
                "SDC": SdCyclic,
                "SDE": SdElemAb,
            }[keyword](*args)
        validate(node, start)
        return node

    def perm_body(self) -> PermClosure:
        degree = self.integer()
        self.expect(";")
        if not 1 <= degree <= MAX_PERM_DEGREE:
            raise SpecParameterError(
                f"Perm: degree must be in [1, {MAX_PERM_DEGREE}], got {degree}", self.pos
            )
        gens = [self.cycles(degree)]
        while self.peek() == ",":
            self.pos += 1
            gens.append(self.cycles(degree))
        self.expect(")")
        return PermClosure(degree, tuple(gens))

    def cycles(self, degree: int) -> tuple[int, ...]:
        image = list(range(degree))
        moved: set[int] = set()
        if self.peek() != "(":
            self.error(["'('"], "expected a cycle")
        while self.peek() == "(":
            cycle_pos = self.pos
            self.pos += 1
            points = self.cycle_points(degree)
            if len(set(points)) != len(points) or moved & set(points):
                raise SpecParameterError("Perm: cycles must be disjoint", cycle_pos)
            moved.update(points)
            for a, b in zip(points, points[1:] + points[:1]):
                image[a - 1] = b - 1
        return tuple(image)

    def cycle_points(self, degree: int) -> list[int]:
        tokens: list[tuple[int, str]] = []
        while True:
            self.skip_ws()
            if self.peek() == ")":
                self.pos += 1
                break
            if tokens and self.peek() == ",":
                self.pos += 1
                self.skip_ws()
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            if start == self.pos:
                self.error(["INT", "')'"])
            tokens.append((start, self.text[start:self.pos]))
        points = []
        for start, tok in tokens:
            # "(1234)" is accepted as shorthand for "(1 2 3 4)" when degree <= 9
            if len(tokens) == 1 and len(tok) > 1 and degree <= 9:
                points.extend(int(ch) for ch in tok)
            else:
                points.append(int(tok))
        for p in points:
            if not 1 <= p <= degree:
                raise SpecParameterError(f"Perm: point {p} outside 1..{degree}", tokens[0][0])
        return points


def parse_spec(text: str) -> GroupSpec:
    """Parse a spec string into an expression tree (left-associative products)."""
    parser = _Parser(text)
    node = parser.spec()
    if parser.peek() != "":
        parser.error(["'*'", "end of input"])
    return node
