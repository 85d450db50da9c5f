"""Root systems and painted Dynkin diagrams for the classical groups.

A root is an integer vector in the orthonormal functional basis e_1..e_d.
The four families carry their classical realizations:

* SU(d)      (type A):  R = {e_i - e_j, i != j}, simple roots e_i - e_{i+1}
* Sp(d)      (type C):  R = {+-e_i +- e_j} with +-2e_i allowed,
                        simple roots e_i - e_{i+1} and 2e_d
* SO(2d)     (type D):  R = {+-e_i +- e_j, i != j},
                        simple roots e_i - e_{i+1} and e_{d-1} + e_d
* SO(2d+1)   (type B):  R = {+-e_i +- e_j (i != j), +-e_i},
                        simple roots e_i - e_{i+1} and e_d

Painting a subset of the simple basis black splits R into the white part
R_K (zero coefficient on every black simple root) and the black part R_M;
Q = R_M intersected with the positive roots fixes the invariant complex
structure.  Each positive Kaehler parameter c attaches to one black node.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache

from .poly import EngineInvariantError


class Family(str, Enum):
    SU = "SU"
    SP = "Sp"
    SO_EVEN = "SOeven"
    SO_ODD = "SOodd"

    @property
    def cartan_letter(self) -> str:
        return {"SU": "A", "Sp": "C", "SOeven": "D", "SOodd": "B"}[self.value]

    @classmethod
    def parse(cls, text: str) -> "Family":
        for fam in cls:
            if fam.value == text:
                return fam
        valid = ", ".join(f.value for f in cls)
        raise ValueError(f"unknown family {text!r} (expected one of {valid})")


class PaintingError(ValueError):
    """A painted diagram the engine refuses to analyze; .reason says why."""

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


@dataclass(frozen=True, order=True)
class Root:
    """Integer coefficient vector over e_1..e_d; ordering is lexicographic."""

    coeffs: tuple[int, ...]

    def __neg__(self) -> "Root":
        return Root(tuple(-c for c in self.coeffs))

    def __add__(self, other: "Root") -> "Root":
        return Root(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def render(self) -> str:
        parts = []
        for i, c in enumerate(self.coeffs, 1):
            if not c:
                continue
            mag = "" if abs(c) == 1 else str(abs(c))
            parts.append(("-" if c < 0 else "+") + mag + f"e{i}")
        if not parts:
            return "0"
        head = parts[0][1:] if parts[0][0] == "+" else parts[0]
        return head + "".join(parts[1:])

    def __repr__(self):
        return f"Root({self.render()})"


def _unit(rank: int, i: int, sign: int = 1) -> Root:
    coeffs = [0] * rank
    coeffs[i - 1] = sign
    return Root(tuple(coeffs))


def _pair(rank: int, i: int, j: int, si: int, sj: int) -> Root:
    coeffs = [0] * rank
    coeffs[i - 1] += si
    coeffs[j - 1] += sj
    return Root(tuple(coeffs))


@dataclass(frozen=True)
class GroupSpec:
    """A classical compact group; rank d is the parameter in SU(d), Sp(d),
    SO(2d), SO(2d+1)."""

    family: Family
    rank: int

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError("rank must be positive")
        if self.family is Family.SU and self.rank < 2:
            raise ValueError("SU(d) needs d >= 2")
        if self.family is Family.SO_EVEN and self.rank < 3:
            raise ValueError("SO(2d) needs d >= 3 (the fork must exist)")

    @property
    def matrix_size(self) -> int:
        d = self.rank
        if self.family is Family.SU:
            return d
        if self.family is Family.SO_ODD:
            return 2 * d + 1
        return 2 * d

    @property
    def num_simple(self) -> int:
        return self.rank - 1 if self.family is Family.SU else self.rank

    def label(self) -> str:
        d = self.rank
        if self.family is Family.SU:
            return f"SU({d})"
        if self.family is Family.SP:
            return f"Sp({d})"
        if self.family is Family.SO_EVEN:
            return f"SO({2 * d})"
        return f"SO({2 * d + 1})"


@lru_cache(maxsize=None)
def simple_roots(group: GroupSpec) -> tuple[Root, ...]:
    """The canonical simple basis, indexed 1..num_simple."""
    d = group.rank
    chain = [_pair(d, i, i + 1, 1, -1) for i in range(1, d)]
    if group.family is Family.SU:
        return tuple(chain)
    if group.family is Family.SP:
        return tuple(chain + [_unit(d, d, 2)])
    if group.family is Family.SO_EVEN:
        return tuple(chain + [_pair(d, d - 1, d, 1, 1)])
    return tuple(chain + [_unit(d, d)])


@lru_cache(maxsize=None)
def positive_roots(group: GroupSpec) -> tuple[Root, ...]:
    """R+ with respect to the canonical simple basis, sorted."""
    d = group.rank
    fam = group.family
    roots: list[Root] = []
    for i in range(1, d + 1):
        for j in range(i + 1, d + 1):
            roots.append(_pair(d, i, j, 1, -1))
            if fam is not Family.SU:
                roots.append(_pair(d, i, j, 1, 1))
    if fam is Family.SP:
        roots.extend(_unit(d, i, 2) for i in range(1, d + 1))
    elif fam is Family.SO_ODD:
        roots.extend(_unit(d, i) for i in range(1, d + 1))
    return tuple(sorted(roots))


@lru_cache(maxsize=None)
def all_roots(group: GroupSpec) -> frozenset[Root]:
    pos = positive_roots(group)
    return frozenset(pos) | frozenset(-r for r in pos)


@lru_cache(maxsize=None)
def simple_coefficients(group: GroupSpec, root: Root) -> tuple[Fraction, ...]:
    """Expansion coefficients of a root over the simple basis, solved
    exactly; raises if root is not in the root system's span."""
    basis = simple_roots(group)
    n = group.rank
    m = len(basis)
    # Gaussian elimination on the n x (m+1) augmented system
    aug = [
        [Fraction(basis[j].coeffs[i]) for j in range(m)] + [Fraction(root.coeffs[i])]
        for i in range(n)
    ]
    pivots: list[tuple[int, int]] = []
    row = 0
    for col in range(m):
        piv = next((r for r in range(row, n) if aug[r][col]), None)
        if piv is None:
            continue
        aug[row], aug[piv] = aug[piv], aug[row]
        scale = aug[row][col]
        aug[row] = [x / scale for x in aug[row]]
        for r in range(n):
            if r != row and aug[r][col]:
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[row])]
        pivots.append((row, col))
        row += 1
        if row == n:
            break
    for r in range(row, n):
        if aug[r][m]:
            raise ValueError(f"{root!r} is not in the span of the simple basis")
    coeffs = [Fraction(0)] * m
    for r, c in pivots:
        coeffs[c] = aug[r][m]
    return tuple(coeffs)


def height(group: GroupSpec, root: Root) -> int:
    """Sum of the simple-basis coefficients; defined for positive roots."""
    coeffs = simple_coefficients(group, root)
    if not all(c >= 0 for c in coeffs) or not any(coeffs):
        raise ValueError(f"{root!r} is not a positive root of {group.label()}")
    total = sum(coeffs)
    if total.denominator != 1:
        raise EngineInvariantError("non-integral simple-root expansion")
    return int(total)


@dataclass(frozen=True)
class PaintedDiagram:
    """A classical group with a nonempty set of black simple-root positions.

    Positions are 1-based indices into the canonical simple basis.  SO
    paintings whose white tail would be a rank-one orthogonal factor are
    rejected (PaintingError), as is painting the even-orthogonal node d-1
    without node d: that diagram is the mirror image, under the order-two
    diagram flip, of the painting that uses node d, and only the latter is
    compatible with the fixed matrix realization used downstream.
    """

    group: GroupSpec
    black: tuple[int, ...]

    def __post_init__(self):
        black = tuple(sorted(set(self.black)))
        object.__setattr__(self, "black", black)
        if not black:
            raise PaintingError("at least one black node is required")
        ns = self.group.num_simple
        for pos in black:
            if not 1 <= pos <= ns:
                raise PaintingError(
                    f"black node {pos} out of range 1..{ns} for {self.group.label()}"
                )
        d = self.group.rank
        if self.group.family is Family.SO_ODD and max(black) == d - 1:
            raise PaintingError(
                f"painting node {d - 1} of {self.group.label()} leaves an SO(3) "
                "tail (l = 1), which has no full set of admissible minors"
            )
        if self.group.family is Family.SO_EVEN and d - 1 in black:
            if d in black:
                raise PaintingError(
                    f"painting both fork nodes {d - 1} and {d} of "
                    f"{self.group.label()} encodes an SO(2) tail (l = 1), "
                    "which has no full set of admissible minors"
                )
            raise PaintingError(
                f"painting fork node {d - 1} of {self.group.label()} without "
                f"node {d} is the diagram-flip mirror of painting node {d}; "
                "repaint the diagram with the tail node d instead"
            )

    @property
    def b2(self) -> int:
        return len(self.black)

    def label(self) -> str:
        return f"{self.group.label()} black {{{','.join(map(str, self.black))}}}"


@lru_cache(maxsize=None)
def black_roots(diagram: PaintedDiagram) -> tuple[frozenset[Root], tuple[Root, ...]]:
    """(R_M, Q): roots with nonzero coefficient on some black simple root,
    and Q = R_M intersected with R+, sorted."""
    group = diagram.group
    black_idx = [p - 1 for p in diagram.black]
    r_m = set()
    for r in all_roots(group):
        coeffs = simple_coefficients(group, r)
        if any(coeffs[i] for i in black_idx):
            r_m.add(r)
    pos = set(positive_roots(group))
    q = tuple(sorted(r for r in r_m if r in pos))
    return frozenset(r_m), q


def white_roots(diagram: PaintedDiagram) -> frozenset[Root]:
    r_m, _ = black_roots(diagram)
    return all_roots(diagram.group) - r_m


def flag_dimension(diagram: PaintedDiagram) -> int:
    """Complex dimension of the flag manifold: the cardinality of Q."""
    _, q = black_roots(diagram)
    return len(q)


def validate_Q(group: GroupSpec, q, r_m) -> bool:
    """True iff q is maximal closed nonsymmetric in r_m: q and -q partition
    r_m, and q is closed under addition within the full root system."""
    qs = set(q)
    ms = set(r_m)
    if not qs <= ms:
        return False
    neg = {-r for r in qs}
    if qs | neg != ms or qs & neg:
        return False
    roots = all_roots(group)
    for a, b in itertools.combinations(qs, 2):
        s = a + b
        if s in roots and s not in qs:
            return False
    return True


class PoincarePoly:
    """Coefficients of the Poincare polynomial in the variable s.

    Construction validates the shape: constant coefficient 1, vanishing odd
    coefficients, nonnegative entries, palindromic.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = tuple(int(c) for c in coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        if not coeffs or coeffs[0] != 1:
            raise EngineInvariantError("Poincare polynomial must start at 1")
        if any(c < 0 for c in coeffs):
            raise EngineInvariantError("negative Betti number")
        if any(coeffs[i] for i in range(1, len(coeffs), 2)):
            raise EngineInvariantError("odd-degree Betti number is nonzero")
        if coeffs != coeffs[::-1]:
            raise EngineInvariantError("Poincare polynomial is not palindromic")
        self.coeffs = coeffs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def b2(self) -> int:
        return self.coeffs[2] if len(self.coeffs) > 2 else 0

    def value(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        return isinstance(other, PoincarePoly) and self.coeffs == other.coeffs

    def render(self) -> str:
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                head = "" if c == 1 else f"{c}*"
                parts.append(f"{head}s^{i}" if i > 1 else f"{head}s")
        return " + ".join(parts)

    def __repr__(self):
        return f"PoincarePoly({self.render()})"


def _intpoly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _intpoly_divexact(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials with den[0] = +-1, done from
    the low end; raises EngineInvariantError on a nonzero remainder."""
    num = list(num)
    lead = den[0]
    quot_len = len(num) - len(den) + 1
    if quot_len <= 0:
        raise EngineInvariantError("division would have negative degree")
    quot = [0] * quot_len
    for i in range(quot_len):
        q, r = divmod(num[i], lead)
        if r:
            raise EngineInvariantError("non-integral quotient coefficient")
        quot[i] = q
        if q:
            for j, c in enumerate(den):
                num[i + j] -= q * c
    if any(num):
        raise EngineInvariantError("rational-function product is not a polynomial")
    return quot


@lru_cache(maxsize=None)
def poincare(diagram: PaintedDiagram) -> PoincarePoly:
    """Product over alpha in R_M+ of (1 - t^(h+1))/(1 - t^h), computed in
    exact integer arithmetic and re-expressed in s with t = s^2."""
    group = diagram.group
    _, q = black_roots(diagram)
    heights = [height(group, r) for r in q]
    num = [1]
    den = [1]
    for h in heights:
        num = _intpoly_mul(num, [1] + [0] * h + [-1])      # 1 - t^(h+1)
        den = _intpoly_mul(den, [1] + [0] * (h - 1) + [-1])  # 1 - t^h
    quot = _intpoly_divexact(num, den)
    coeffs_s = [0] * (2 * len(quot) - 1)
    for i, c in enumerate(quot):
        coeffs_s[2 * i] = c
    return PoincarePoly(coeffs_s)


def iter_black_sets(group: GroupSpec, max_black: int):
    """All candidate black-position sets of size 1..max_black, in
    deterministic order; includes sets the diagram validator will reject."""
    ns = group.num_simple
    for size in range(1, max_black + 1):
        if size > ns:
            return
        yield from itertools.combinations(range(1, ns + 1), size)
