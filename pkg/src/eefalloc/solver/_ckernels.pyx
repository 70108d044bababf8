# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled tableau kernels; see ``_pykernels`` for the reference semantics."""


def pivot(list T, Py_ssize_t r, Py_ssize_t s, object D):
    cdef list prow = <list>T[r]
    cdef object p = prow[s]
    cdef Py_ssize_t i, k, width = len(prow)
    cdef list row, new
    cdef object f
    cdef bint rescale = p != D
    for i in range(len(T)):
        if i == r:
            continue
        row = <list>T[i]
        f = row[s]
        if f == 0:
            if rescale:
                new = [None] * width
                for k in range(width):
                    new[k] = row[k] * p // D
                T[i] = new
        else:
            new = [None] * width
            for k in range(width):
                new[k] = (row[k] * p - f * prow[k]) // D
            T[i] = new
    return p


def complement_column(list T, Py_ssize_t j, Py_ssize_t rhs, object r):
    cdef list row
    cdef object t
    for row in T:
        t = row[j]
        if t != 0:
            row[j] = -t
            row[rhs] = row[rhs] - t * r


def complement_basic_row(list T, Py_ssize_t i, Py_ssize_t basic_col, Py_ssize_t rhs, object r, object D):
    cdef list row = <list>T[i]
    cdef Py_ssize_t k
    for k in range(rhs):
        if k != basic_col and row[k] != 0:
            row[k] = -row[k]
    row[rhs] = r * D - row[rhs]


def ratio_test(list T, Py_ssize_t j, Py_ssize_t nrows, Py_ssize_t rhs, list basis, list upper, object D):
    cdef Py_ssize_t i, best = -1, bvar = 0, var
    cdef bint to_upper, best_upper = False, better
    cdef object t, num, den, ub, lhs, rhs_
    cdef object bnum = 0, bden = 1
    cdef list row
    for i in range(nrows):
        row = <list>T[i]
        t = row[j]
        if t > 0:
            num = row[rhs]
            den = t
            to_upper = False
        elif t < 0:
            ub = upper[<Py_ssize_t>basis[i]]
            if ub is None:
                continue
            num = ub * D - row[rhs]
            den = -t
            to_upper = True
        else:
            continue
        var = basis[i]
        if best < 0:
            better = True
        else:
            lhs = num * bden
            rhs_ = bnum * den
            better = lhs < rhs_ or (lhs == rhs_ and var < bvar)
        if better:
            best = i
            best_upper = to_upper
            bnum = num
            bden = den
            bvar = var
    if best < 0:
        return None
    return best, best_upper, bnum, bden
