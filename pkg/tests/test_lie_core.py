"""Root systems, painted diagrams, heights and Poincare polynomials."""

import itertools
from fractions import Fraction

import pytest

from flagbochner.lie_core import (
    Family,
    GroupSpec,
    PaintedDiagram,
    PaintingError,
    Root,
    all_roots,
    black_roots,
    height,
    iter_black_sets,
    poincare,
    positive_roots,
    simple_coefficients,
    simple_roots,
    validate_Q,
)


def su(d):
    return GroupSpec(Family.SU, d)


def sp(d):
    return GroupSpec(Family.SP, d)


def so_even(d):
    return GroupSpec(Family.SO_EVEN, d)


def so_odd(d):
    return GroupSpec(Family.SO_ODD, d)


# ------------------------------------------------------------ root systems

def test_su3_positive_roots_exactly():
    got = set(positive_roots(su(3)))
    assert got == {Root((1, -1, 0)), Root((0, 1, -1)), Root((1, 0, -1))}


def test_sp1_positive_roots():
    assert positive_roots(sp(1)) == (Root((2,)),)


def test_so8_positive_root_count_vs_bruteforce():
    # brute force: all +-e_i +- e_j with i < j <= 4
    brute = set()
    for i, j in itertools.combinations(range(4), 2):
        for si, sj in itertools.product((1, -1), repeat=2):
            v = [0, 0, 0, 0]
            v[i], v[j] = si, sj
            brute.add(Root(tuple(v)))
    pos = set(positive_roots(so_even(4)))
    assert len(pos) == 12
    assert pos <= brute and len(brute) == 24


@pytest.mark.parametrize("group,count", [
    (su(5), 10),        # d(d-1)/2
    (sp(4), 16),        # d^2
    (so_even(5), 20),   # d(d-1)
    (so_odd(4), 16),    # d^2
])
def test_positive_root_counts(group, count):
    assert len(positive_roots(group)) == count


def test_positive_roots_are_positive_in_simple_basis():
    for group in (su(4), sp(3), so_even(4), so_odd(3)):
        for r in positive_roots(group):
            coeffs = simple_coefficients(group, r)
            assert all(c >= 0 for c in coeffs) and any(coeffs)


def test_group_spec_validation():
    with pytest.raises(ValueError):
        GroupSpec(Family.SU, 1)
    with pytest.raises(ValueError):
        GroupSpec(Family.SO_EVEN, 2)
    assert so_odd(1).matrix_size == 3
    assert sp(3).matrix_size == 6
    assert so_even(4).matrix_size == 8
    assert su(4).matrix_size == 4


# ------------------------------------------------------------- black roots

def test_su3_full_flag_black_roots():
    diagram = PaintedDiagram(su(3), (1, 2))
    r_m, q = black_roots(diagram)
    assert set(q) == set(positive_roots(su(3)))
    assert len(q) == 3


def test_su4_grassmannian_black_roots():
    # expand each positive root over the simple basis and keep those with a
    # nonzero alpha_2 coefficient: an independent derivation of R_M+
    group = su(4)
    diagram = PaintedDiagram(group, (2,))
    _, q = black_roots(diagram)
    expected = {
        r for r in positive_roots(group)
        if simple_coefficients(group, r)[1]
    }
    assert set(q) == expected
    assert len(q) == 4
    # the e_i - e_j pattern with i <= 2 < j
    for r in q:
        ones = [i for i, c in enumerate(r.coeffs, 1) if c == 1]
        negs = [i for i, c in enumerate(r.coeffs, 1) if c == -1]
        assert ones[0] <= 2 < negs[0]


def test_so_even_black_1_d_contains_expected_roots():
    d = 4
    diagram = PaintedDiagram(so_even(d), (1, d))
    _, q = black_roots(diagram)
    qset = set(q)
    for j in range(2, d + 1):
        v = [0] * d
        v[0], v[j - 1] = 1, -1
        assert Root(tuple(v)) in qset
    for i, j in itertools.combinations(range(1, d + 1), 2):
        v = [0] * d
        v[i - 1], v[j - 1] = 1, 1
        assert Root(tuple(v)) in qset


# ------------------------------------------------------------- validate_Q

def test_validate_q_accepts_canonical_choice():
    for group, black in [(su(3), (1, 2)), (sp(2), (1,)), (so_odd(3), (1, 3)),
                         (so_even(4), (1, 4))]:
        diagram = PaintedDiagram(group, black)
        r_m, q = black_roots(diagram)
        assert validate_Q(group, q, r_m)


def test_validate_q_detects_broken_closure_by_swap_search():
    group = su(3)
    diagram = PaintedDiagram(group, (1, 2))
    r_m, q = black_roots(diagram)
    broken = []
    for r in q:
        swapped = [x if x != r else -x for x in q]
        if not validate_Q(group, swapped, r_m):
            broken.append(r)
    # negating the highest root e1 - e3 must break closure
    assert Root((1, 0, -1)) in broken


def test_validate_q_vacuous_case():
    assert validate_Q(su(3), (), frozenset())


def test_validate_q_rejects_symmetric_subset():
    group = su(3)
    r = Root((1, -1, 0))
    assert not validate_Q(group, (r, -r), frozenset({r, -r}))


# ------------------------------------------------------------------ height

def test_height_su3():
    assert height(su(3), Root((1, 0, -1))) == 2
    assert height(su(3), Root((1, -1, 0))) == 1


def test_height_sp2_long_root():
    # brute-force expansion oracle: 2e1 = 2*alpha1 + alpha2
    group = sp(2)
    basis = simple_roots(group)
    target = Root((2, 0))
    found = None
    for k1 in range(5):
        for k2 in range(5):
            if Root(tuple(
                k1 * a + k2 * b for a, b in zip(basis[0].coeffs, basis[1].coeffs)
            )) == target:
                found = (k1, k2)
    assert found == (2, 1)
    assert height(group, target) == 3


def test_height_so8_sum_root_via_bruteforce_expansion():
    group = so_even(4)
    basis = simple_roots(group)
    target = Root((1, 1, 0, 0))
    found = None
    for ks in itertools.product(range(4), repeat=4):
        vec = [0] * 4
        for k, root in zip(ks, basis):
            vec = [v + k * c for v, c in zip(vec, root.coeffs)]
        if Root(tuple(vec)) == target:
            found = ks
            break
    assert found is not None
    assert height(group, target) == sum(found)


def test_height_rejects_negative_roots():
    with pytest.raises(ValueError):
        height(su(3), Root((-1, 1, 0)))
    with pytest.raises(ValueError):
        height(su(3), Root((0, 0, 0)))


# ---------------------------------------------------------------- painting

def test_painting_rejects_out_of_range_and_empty():
    with pytest.raises(PaintingError):
        PaintedDiagram(su(3), ())
    with pytest.raises(PaintingError):
        PaintedDiagram(su(3), (3,))  # SU(3) has simple nodes 1..2
    with pytest.raises(PaintingError):
        PaintedDiagram(sp(2), (0,))


def test_painting_rejects_so_odd_l_equals_one():
    with pytest.raises(PaintingError, match="SO\\(3\\) tail"):
        PaintedDiagram(so_odd(4), (3,))
    with pytest.raises(PaintingError, match="SO\\(3\\) tail"):
        PaintedDiagram(so_odd(4), (1, 3))
    # painting the terminal node is fine
    PaintedDiagram(so_odd(4), (3, 4))


def test_painting_rejects_so_even_fork_cases():
    with pytest.raises(PaintingError, match="SO\\(2\\) tail"):
        PaintedDiagram(so_even(4), (3, 4))
    with pytest.raises(PaintingError, match="mirror"):
        PaintedDiagram(so_even(4), (3,))
    PaintedDiagram(so_even(4), (4,))
    PaintedDiagram(so_even(4), (2, 4))


def test_painting_normalizes_black_order():
    diagram = PaintedDiagram(su(4), (3, 1))
    assert diagram.black == (1, 3)


# ---------------------------------------------------------------- poincare

def test_poincare_projective_line():
    p = poincare(PaintedDiagram(su(2), (1,)))
    assert p.coeffs == (1, 0, 1)


def test_poincare_su3_full_flag_euler_number():
    diagram = PaintedDiagram(su(3), (1, 2))
    p = poincare(diagram)
    # independent oracle: P(1) = product over R_M+ of (h+1)/h
    group = diagram.group
    _, q = black_roots(diagram)
    expected = Fraction(1)
    for r in q:
        h = height(group, r)
        expected *= Fraction(h + 1, h)
    assert expected.denominator == 1
    assert p.value(1) == expected == 6


def test_poincare_b2_equals_black_count():
    cases = [
        PaintedDiagram(su(4), (2,)),
        PaintedDiagram(su(4), (1, 3)),
        PaintedDiagram(sp(3), (1, 3)),
        PaintedDiagram(so_even(4), (1, 4)),
        PaintedDiagram(so_odd(3), (1, 3)),
    ]
    for diagram in cases:
        assert poincare(diagram).b2 == diagram.b2


def test_poincare_top_degree_is_twice_dim():
    for diagram in (PaintedDiagram(su(4), (2,)), PaintedDiagram(sp(2), (1, 2))):
        _, q = black_roots(diagram)
        assert poincare(diagram).degree == 2 * len(q)


def test_poincare_palindromic_over_samples():
    for group in (su(4), sp(3), so_odd(3), so_even(4)):
        for black in iter_black_sets(group, 2):
            try:
                diagram = PaintedDiagram(group, black)
            except PaintingError:
                continue
            p = poincare(diagram)
            assert p.coeffs == p.coeffs[::-1]
            assert all(c >= 0 for c in p.coeffs)


# ------------------------------------------------------- family A closure

def test_family_a_q_closed_under_composition():
    for d, black in [(3, (1, 2)), (4, (2,)), (5, (1, 3))]:
        group = su(d)
        diagram = PaintedDiagram(group, black)
        r_m, q = black_roots(diagram)
        roots = all_roots(group)
        qset = set(q)
        for a, b in itertools.permutations(q, 2):
            s = a + b
            if s in roots and s in r_m:
                assert s in qset
