"""Exact rational linear algebra for homogeneous constraint systems.

Two questions arise downstream: what is a canonical basis for a system of
homogeneous linear constraints, and does the solution set meet the open
positive orthant.  Both are answered exactly over Fraction; the orthant
question reduces to a phase-one simplex on c = 1 + u, u >= 0, with Bland's
rule for termination.
"""

from __future__ import annotations

from fractions import Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


def rref(rows: list[tuple[Fraction, ...]]) -> list[tuple[Fraction, ...]]:
    """Reduced row-echelon form; returns the nonzero rows with pivot 1,
    sorted by pivot column."""
    mat = [list(r) for r in rows if any(r)]
    if not mat:
        return []
    ncols = len(mat[0])
    row = 0
    for col in range(ncols):
        piv = next((r for r in range(row, len(mat)) if mat[r][col]), None)
        if piv is None:
            continue
        mat[row], mat[piv] = mat[piv], mat[row]
        scale = mat[row][col]
        mat[row] = [x / scale for x in mat[row]]
        for r in range(len(mat)):
            if r != row and mat[r][col]:
                factor = mat[r][col]
                mat[r] = [x - factor * y for x, y in zip(mat[r], mat[row])]
        row += 1
        if row == len(mat):
            break
    out = [tuple(r) for r in mat if any(r)]
    out.sort(key=lambda r: next(i for i, x in enumerate(r) if x))
    return out


def _phase_one_feasible(a: list[list[Fraction]], b: list[Fraction]) -> bool:
    """Feasibility of {A u = b, u >= 0} by minimizing artificial variables."""
    m = len(a)
    if m == 0:
        return True
    n = len(a[0])
    rows = []
    rhs = []
    for i in range(m):
        if b[i] < 0:
            rows.append([-x for x in a[i]])
            rhs.append(-b[i])
        else:
            rows.append(list(a[i]))
            rhs.append(b[i])
    # tableau columns: n structural, m artificial, then rhs
    tab = [rows[i] + [_ONE if j == i else _ZERO for j in range(m)] + [rhs[i]]
           for i in range(m)]
    basis = [n + i for i in range(m)]
    # objective: minimize the artificial sum; reduced costs start as the
    # column sums over the constraint rows (artificial columns cost zero)
    obj = [sum(tab[i][j] for i in range(m)) for j in range(n)]
    obj += [_ZERO] * m
    obj.append(sum(rhs))

    total_cols = n + m
    while True:
        enter = next((j for j in range(total_cols) if obj[j] > 0), None)
        if enter is None:
            return obj[-1] == 0
        ratios = [
            (tab[i][-1] / tab[i][enter], basis[i], i)
            for i in range(m)
            if tab[i][enter] > 0
        ]
        if not ratios:
            # unbounded phase-one objective cannot happen; treat as failure
            return False
        _, _, leave = min(ratios, key=lambda t: (t[0], t[1]))
        pivot = tab[leave][enter]
        tab[leave] = [x / pivot for x in tab[leave]]
        for i in range(m):
            if i != leave and tab[i][enter]:
                factor = tab[i][enter]
                tab[i] = [x - factor * y for x, y in zip(tab[i], tab[leave])]
        if obj[enter]:
            factor = obj[enter]
            obj = [x - factor * y for x, y in zip(obj, tab[leave])]
        basis[leave] = enter


def positive_solution_exists(rows: list[tuple[Fraction, ...]]) -> bool:
    """Is there c with all coordinates strictly positive and row . c = 0 for
    every row?  Scale invariance lets c > 0 become c >= 1, then c = 1 + u."""
    rows = [r for r in rows if any(r)]
    if not rows:
        return True
    a = [list(r) for r in rows]
    b = [-sum(r) for r in rows]
    return _phase_one_feasible(a, b)
