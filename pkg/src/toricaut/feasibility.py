"""Exact nonnegative feasibility via phase-one simplex over the rationals."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .lattice import IntMatrix, as_matrix


def nonneg_feasible(a, b: Sequence[int]) -> bool:
    """Decide whether ``a @ x == b`` has a rational solution with ``x >= 0``.

    Phase one of the simplex method with Bland's rule on an all-artificial
    starting basis, in exact arithmetic. Never cycles, so always terminates.

    >>> nonneg_feasible([[1]], [1]), nonneg_feasible([[1]], [-1])
    (True, False)
    """
    if not isinstance(a, IntMatrix) and len(a) == 0:
        a = IntMatrix((), 0)
    a = as_matrix(a)
    m, n = a.shape
    if len(b) != m:
        raise ValueError(f"right-hand side has length {len(b)}, expected {m}")
    if m == 0:
        return True

    tab = []
    for i in range(m):
        sign = -1 if b[i] < 0 else 1
        row = [Fraction(sign * x) for x in a.data[i]]
        row += [Fraction(int(k == i)) for k in range(m)]
        row.append(Fraction(sign * b[i]))
        tab.append(row)
    basis = [n + i for i in range(m)]
    # reduced costs of the auxiliary objective: sum of artificials
    obj = [-sum(tab[i][j] for i in range(m)) for j in range(n)] + [Fraction(0)] * m
    obj.append(-sum(tab[i][-1] for i in range(m)))

    while True:
        enter = next((j for j in range(n + m) if obj[j] < 0), None)
        if enter is None:
            break
        leave = None
        for i in range(m):
            coef = tab[i][enter]
            if coef > 0:
                ratio = tab[i][-1] / coef
                if (
                    leave is None
                    or ratio < leave[0]
                    or (ratio == leave[0] and basis[i] < basis[leave[1]])
                ):
                    leave = (ratio, i)
        if leave is None:
            # cannot happen: the auxiliary objective is bounded below by zero
            raise ArithmeticError("phase-one problem reported unbounded")
        p = leave[1]
        piv = tab[p][enter]
        tab[p] = [x / piv for x in tab[p]]
        for i in range(m):
            f = tab[i][enter]
            if i != p and f:
                tab[i] = [x - f * y for x, y in zip(tab[i], tab[p])]
        f = obj[enter]
        obj = [x - f * y for x, y in zip(obj, tab[p])]
        basis[p] = enter

    return obj[-1] == 0
