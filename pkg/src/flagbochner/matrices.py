"""Matrix realizations of root vectors and the coordinate matrix Z(z).

The orthogonal groups are realized in the split quadratic-form basis: SO(2d)
preserves z_1 z_{d+1} + ... + z_d z_{2d} and SO(2d+1) preserves
2(z_1 z_{d+1} + ... + z_d z_{2d}) + z_{2d+1}^2.  In this basis the leading
principal minors used downstream are the admissible ones, which is the whole
point of fixing it.  Rows and columns are 0-based throughout this module.

Z(z) is the sum over alpha in -Q of z_alpha E_alpha; each variable occupies
its own matrix positions, and the assembled matrix is nilpotent.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .lie_core import Family, GroupSpec, PaintedDiagram, Root, all_roots, black_roots
from .poly import EngineInvariantError, Polynomial, SymbolicMatrix

Entry = tuple[int, int, int]  # (row, col, sign)


@dataclass(frozen=True)
class RootVectorMatrix:
    """Sparse root-vector matrix: one or two +-1 entries in an m x m frame."""

    size: int
    entries: tuple[Entry, ...]


def _signed_support(root: Root) -> list[tuple[int, int]]:
    """(index, coefficient) pairs with 1-based indices, coefficient != 0."""
    return [(i + 1, c) for i, c in enumerate(root.coeffs) if c]


@lru_cache(maxsize=None)
def root_vector(group: GroupSpec, alpha: Root) -> RootVectorMatrix:
    """The root-vector matrix E_alpha in the fixed realization."""
    if alpha not in all_roots(group):
        raise ValueError(f"{alpha!r} is not a root of {group.label()}")
    d = group.rank
    m = group.matrix_size
    fam = group.family
    sup = _signed_support(alpha)

    if fam is Family.SU:
        (i, ci), (j, cj) = sup
        if ci == -1:
            i, j = j, i
        return RootVectorMatrix(m, ((i - 1, j - 1, 1),))

    if len(sup) == 2:
        (i, ci), (j, cj) = sup
        if ci == 1 and cj == -1:  # e_i - e_j
            return RootVectorMatrix(m, ((i - 1, j - 1, 1), (d + j - 1, d + i - 1, -1)))
        if ci == -1 and cj == 1:  # e_j - e_i
            return RootVectorMatrix(m, ((j - 1, i - 1, 1), (d + i - 1, d + j - 1, -1)))
        skew = -1 if fam in (Family.SO_EVEN, Family.SO_ODD) else 1
        if ci == 1 and cj == 1:  # e_i + e_j, upper-right block
            return RootVectorMatrix(m, ((i - 1, d + j - 1, 1), (j - 1, d + i - 1, skew)))
        # -e_i - e_j, lower-left block
        return RootVectorMatrix(m, ((d + i - 1, j - 1, 1), (d + j - 1, i - 1, skew)))

    (i, c) = sup[0]
    if fam is Family.SP:  # +-2e_i, single entry keeps signs in {-1, +1}
        if c == 2:
            return RootVectorMatrix(m, ((i - 1, d + i - 1, 1),))
        return RootVectorMatrix(m, ((d + i - 1, i - 1, 1),))
    # SO(2d+1) short roots +-e_i use the last row and column
    if c == 1:
        return RootVectorMatrix(m, ((i - 1, 2 * d, 1), (2 * d, d + i - 1, -1)))
    return RootVectorMatrix(m, ((d + i - 1, 2 * d, 1), (2 * d, i - 1, -1)))


def cartan_diagonal(group: GroupSpec, hs) -> list:
    """Diagonal of a Cartan element for functional values e_i = hs[i-1]."""
    hs = list(hs)
    if len(hs) != group.rank:
        raise ValueError("need one value per e_i")
    if group.family is Family.SU:
        return hs
    diag = hs + [-h for h in hs]
    if group.family is Family.SO_ODD:
        diag.append(0 * hs[0])
    return diag


@dataclass(frozen=True, eq=False)
class CoordinateAtlas:
    """Chart data: the ordered variables (roots of -Q) and the matrix Z.

    Variable v corresponds to vars[v]; Z carries +-z_v at the positions of
    the matching root vector and is nilpotent.
    """

    diagram: PaintedDiagram
    vars: tuple[Root, ...]
    Z: SymbolicMatrix

    @property
    def nvars(self) -> int:
        return len(self.vars)

    def var_names(self) -> tuple[str, ...]:
        return tuple(r.render() for r in self.vars)

    def entry_map(self) -> dict[tuple[int, int], tuple[int, int]]:
        """(row, col) -> (variable index, sign) for the nonzero Z positions."""
        out: dict[tuple[int, int], tuple[int, int]] = {}
        for v, root in enumerate(self.vars):
            for r, c, s in root_vector(self.diagram.group, root).entries:
                out[(r, c)] = (v, s)
        return out


@lru_cache(maxsize=None)
def build_Z(diagram: PaintedDiagram) -> CoordinateAtlas:
    """Assemble Z = sum over alpha in -Q of z_alpha E_alpha.

    Two distinct variables landing on one matrix position would make the
    chart ill-defined; that is a bug in the root vectors, not user error.
    """
    group = diagram.group
    _, q = black_roots(diagram)
    negs = tuple(sorted(-r for r in q))
    m = group.matrix_size
    entries: dict[tuple[int, int], Polynomial] = {}
    for v, root in enumerate(negs):
        for r, c, s in root_vector(group, root).entries:
            if (r, c) in entries:
                raise EngineInvariantError(
                    f"variable collision at matrix position ({r},{c}) while "
                    f"assembling Z for {diagram.label()}"
                )
            entries[(r, c)] = Polynomial.variable(v, sign=s)
    return CoordinateAtlas(diagram, negs, SymbolicMatrix(m, entries))


def nilpotency_index(atlas: CoordinateAtlas) -> int:
    """Smallest k with Z^k identically zero; at most the matrix size."""
    power = atlas.Z
    k = 1
    while not power.is_zero():
        power = power @ atlas.Z
        k += 1
        if k > atlas.Z.size:
            raise EngineInvariantError("Z is not nilpotent")
    return k


def numeric_Z(atlas: CoordinateAtlas, zvals):
    """Dense complex Z(z) at a numeric point, as nested lists."""
    m = atlas.Z.size
    out = [[0j] * m for _ in range(m)]
    for (r, c), (v, s) in atlas.entry_map().items():
        out[r][c] = s * complex(zvals[v])
    return out
