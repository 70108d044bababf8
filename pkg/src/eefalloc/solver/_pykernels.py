"""Pure-Python tableau kernels.

The compiled module ``_ckernels`` exposes the same functions with the same
semantics; :mod:`eefalloc.solver.kernels` picks one at import time.

Tableaux are lists of integer rows sharing one positive denominator ``D``:
the true entry is ``T[i][j] / D``.  Pivots use fraction-free (Bareiss)
elimination, so every division below is exact.
"""


def pivot(T, r, s, D):
    """Pivot on ``T[r][s]`` (must be > 0) and return the new denominator."""
    prow = T[r]
    p = prow[s]
    for i in range(len(T)):
        if i == r:
            continue
        row = T[i]
        f = row[s]
        if f == 0:
            if p != D:
                T[i] = [v * p // D for v in row]
        else:
            T[i] = [(v * p - f * w) // D for v, w in zip(row, prow)]
    return p


def complement_column(T, j, rhs, r):
    """Substitute ``x_j = r - x_j'`` for a nonbasic column ``j``."""
    for row in T:
        t = row[j]
        if t:
            row[j] = -t
            row[rhs] -= t * r


def complement_basic_row(T, i, basic_col, rhs, r, D):
    """Substitute ``x_B = r - x_B'`` for the variable basic in row ``i``."""
    row = T[i]
    for k in range(rhs):
        if k != basic_col and row[k]:
            row[k] = -row[k]
    row[rhs] = r * D - row[rhs]


def ratio_test(T, j, nrows, rhs, basis, upper, D):
    """Bounded ratio test for entering column ``j``.

    Returns ``(row, to_upper, num, den)`` for the tightest basic limit with
    ties broken by the smallest basic variable index, or ``None`` when no
    basic variable limits the step.  ``upper[k]`` is the finite range of
    variable ``k`` or ``None``.
    """
    best = None
    bnum = 0
    bden = 1
    bvar = 0
    for i in range(nrows):
        row = T[i]
        t = row[j]
        if t > 0:
            num = row[rhs]
            den = t
            to_upper = False
        elif t < 0:
            ub = upper[basis[i]]
            if ub is None:
                continue
            num = ub * D - row[rhs]
            den = -t
            to_upper = True
        else:
            continue
        if best is None:
            better = True
        else:
            lhs = num * bden
            rhs_ = bnum * den
            better = lhs < rhs_ or (lhs == rhs_ and basis[i] < bvar)
        if better:
            best = (i, to_upper)
            bnum = num
            bden = den
            bvar = basis[i]
    if best is None:
        return None
    return best[0], best[1], bnum, bden
