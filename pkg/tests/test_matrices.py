"""Root-vector matrices, the coordinate matrix Z and its nilpotency."""

import random
from fractions import Fraction

import pytest

from flagbochner.lie_core import (
    Family,
    GroupSpec,
    PaintedDiagram,
    Root,
    all_roots,
    black_roots,
)
from flagbochner.matrices import (
    build_Z,
    cartan_diagonal,
    nilpotency_index,
    root_vector,
)
F = Fraction

GROUPS = [
    GroupSpec(Family.SU, 3),
    GroupSpec(Family.SU, 4),
    GroupSpec(Family.SP, 2),
    GroupSpec(Family.SP, 3),
    GroupSpec(Family.SO_EVEN, 4),
    GroupSpec(Family.SO_ODD, 2),
    GroupSpec(Family.SO_ODD, 3),
]


def _dense(rv):
    out = [[0] * rv.size for _ in range(rv.size)]
    for r, c, s in rv.entries:
        out[r][c] = s
    return out


def _matmul(a, b):
    n = len(a)
    return [
        [sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)]
        for i in range(n)
    ]


# --------------------------------------------------------------- examples

def test_su3_root_vector_single_entry():
    rv = root_vector(GroupSpec(Family.SU, 3), Root((1, -1, 0)))
    assert rv.entries == ((0, 1, 1),)


def test_sp_lower_left_block_for_negative_sum_roots():
    d = 3
    rv = root_vector(GroupSpec(Family.SP, d), Root((-1, -1, 0)))
    assert set(rv.entries) == {(d + 0, 1, 1), (d + 1, 0, 1)}


def test_so_odd_short_negative_root_entries():
    d = 3
    rv = root_vector(GroupSpec(Family.SO_ODD, d), Root((0, -1, 0)))
    # 1-based: (d+i, 2d+1, +1) and (2d+1, i, -1)
    assert set(rv.entries) == {(d + 1, 2 * d, 1), (2 * d, 1, -1)}


def test_root_vector_rejects_non_roots():
    with pytest.raises(ValueError):
        root_vector(GroupSpec(Family.SU, 3), Root((1, 1, -2)))


def test_entry_signs_are_unit():
    for group in GROUPS:
        for alpha in all_roots(group):
            rv = root_vector(group, alpha)
            assert 1 <= len(rv.entries) <= 2
            assert all(s in (1, -1) for _, _, s in rv.entries)


# --------------------------------------------------- Lie-algebra identities

def test_cartan_bracket_eigenvalue_identity():
    # [H, E_alpha] = alpha(H) E_alpha entrywise: H_rr - H_cc must equal
    # alpha(H) at every entry position
    rng = random.Random(5)
    for group in GROUPS:
        hs = [F(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(group.rank)]
        diag = cartan_diagonal(group, hs)
        for alpha in all_roots(group):
            value = sum(c * h for c, h in zip(alpha.coeffs, hs))
            for r, c, _ in root_vector(group, alpha).entries:
                assert diag[r] - diag[c] == value


def test_commutators_are_multiples_of_root_vectors():
    rng = random.Random(17)
    checked = 0
    while checked < 50:
        group = rng.choice(GROUPS)
        roots = sorted(all_roots(group))
        a = rng.choice(roots)
        b = rng.choice(roots)
        s = a + b
        if s not in all_roots(group):
            continue
        ea = _dense(root_vector(group, a))
        eb = _dense(root_vector(group, b))
        comm = [
            [x - y for x, y in zip(row1, row2)]
            for row1, row2 in zip(_matmul(ea, eb), _matmul(eb, ea))
        ]
        es = _dense(root_vector(group, s))
        ratios = set()
        n = len(comm)
        for i in range(n):
            for j in range(n):
                if es[i][j]:
                    ratios.add(F(comm[i][j], es[i][j]))
                else:
                    assert comm[i][j] == 0
        assert len(ratios) == 1 and 0 not in ratios
        checked += 1


def _form_matrix(group):
    """Gram matrix of the invariant bilinear form the realization preserves."""
    d = group.rank
    m = group.matrix_size
    s = [[0] * m for _ in range(m)]
    if group.family is Family.SP:
        for i in range(d):
            s[i][d + i] = 1
            s[d + i][i] = -1
        return s
    for i in range(d):
        s[i][d + i] = 1
        s[d + i][i] = 1
    if group.family is Family.SO_ODD:
        s[2 * d][2 * d] = 1
    return s


def test_root_vectors_annihilate_invariant_form():
    # E^T S + S E = 0; for the odd-orthogonal family this checks that the
    # preserved quadratic form ends with the square of the last coordinate
    for group in GROUPS:
        if group.family is Family.SU:
            continue
        s = _form_matrix(group)
        for alpha in all_roots(group):
            e = _dense(root_vector(group, alpha))
            et = [list(row) for row in zip(*e)]
            lhs = [
                [x + y for x, y in zip(r1, r2)]
                for r1, r2 in zip(_matmul(et, s), _matmul(s, e))
            ]
            assert all(all(x == 0 for x in row) for row in lhs), (group, alpha)


# ---------------------------------------------------------------- build_Z

def test_su3_full_flag_z_strictly_lower_triangular():
    atlas = build_Z(PaintedDiagram(GroupSpec(Family.SU, 3), (1, 2)))
    assert atlas.nvars == 3
    assert all(i > j for (i, j) in atlas.Z.entries)
    # hand enumeration of -Q: the three negative roots
    assert set(atlas.vars) == {
        Root((-1, 1, 0)), Root((0, -1, 1)), Root((-1, 0, 1))
    }


def test_su_one_black_node_z_block_shape():
    r = 2
    atlas = build_Z(PaintedDiagram(GroupSpec(Family.SU, 4), (r,)))
    for (i, j) in atlas.Z.entries:
        assert i >= r and j < r


def test_so_odd_terminal_node_z_block_shape():
    d = 3
    atlas = build_Z(PaintedDiagram(GroupSpec(Family.SO_ODD, d), (d,)))
    m = 2 * d + 1
    for (i, j) in atlas.Z.entries:
        lower_left = d <= i < 2 * d and j < d
        u_block = d <= i < 2 * d and j == m - 1
        neg_u = i == m - 1 and j < d
        assert lower_left or u_block or neg_u
    # u and its negative transpose carry the same variables
    emap = atlas.entry_map()
    for i in range(d):
        vu = emap.get((d + i, m - 1))
        vt = emap.get((m - 1, i))
        assert vu is not None and vt is not None
        assert vu[0] == vt[0] and vu[1] == -vt[1]


def test_so_skew_block_symmetry():
    # for the orthogonal families the lower-left block is skew:
    # Z[d+j, i] = -Z[d+i, j]
    for group, black in [
        (GroupSpec(Family.SO_EVEN, 4), (1, 4)),
        (GroupSpec(Family.SO_ODD, 3), (1, 3)),
    ]:
        d = group.rank
        atlas = build_Z(PaintedDiagram(group, black))
        emap = atlas.entry_map()
        for i in range(d):
            for j in range(d):
                a = emap.get((d + i, j))
                b = emap.get((d + j, i))
                if a is None:
                    assert b is None
                else:
                    assert b is not None and a[0] == b[0] and a[1] == -b[1]


def test_variable_count_matches_dimension():
    for group, black in [
        (GroupSpec(Family.SU, 4), (2,)),
        (GroupSpec(Family.SP, 3), (1, 3)),
        (GroupSpec(Family.SO_EVEN, 4), (2,)),
    ]:
        diagram = PaintedDiagram(group, black)
        atlas = build_Z(diagram)
        _, q = black_roots(diagram)
        assert atlas.nvars == len(q)


def test_z_vanishes_at_origin():
    atlas = build_Z(PaintedDiagram(GroupSpec(Family.SP, 2), (1, 2)))
    dense = atlas.Z.evaluate([0j] * atlas.nvars)
    assert all(all(x == 0 for x in row) for row in dense)


# -------------------------------------------------------------- nilpotency

@pytest.mark.parametrize("group,black,expected", [
    (GroupSpec(Family.SU, 4), (2,), 2),
    (GroupSpec(Family.SU, 4), (1, 3), 3),
    (GroupSpec(Family.SP, 3), (3,), 2),
    (GroupSpec(Family.SO_EVEN, 4), (4,), 2),
    (GroupSpec(Family.SO_EVEN, 4), (1, 4), 3),
    (GroupSpec(Family.SO_ODD, 3), (3,), 3),
])
def test_nilpotency_examples(group, black, expected):
    atlas = build_Z(PaintedDiagram(group, black))
    assert nilpotency_index(atlas) == expected


def test_nilpotency_is_sharp():
    for group, black in [
        (GroupSpec(Family.SU, 4), (1, 3)),
        (GroupSpec(Family.SO_EVEN, 4), (1, 4)),
        (GroupSpec(Family.SP, 2), (1, 2)),
    ]:
        atlas = build_Z(PaintedDiagram(group, black))
        k = nilpotency_index(atlas)
        assert k <= atlas.Z.size
        power = atlas.Z
        for _ in range(k - 2):
            power = power @ atlas.Z
        assert not power.is_zero()
        assert (power @ atlas.Z).is_zero()
