"""Exact integer linear algebra: Smith and Hermite normal forms, lattice
comparison and unimodular witness solving.

All arithmetic uses Python integers (unbounded) or :class:`fractions.Fraction`.
Matrices are :class:`IntMatrix` values; anything that looks like a nested
list of integers is accepted wherever a matrix is expected.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix stored row-major.

    ``ncols`` is kept explicitly so that ``0 x k`` matrices remember ``k``.
    """

    data: tuple[tuple[int, ...], ...]
    ncols: int

    def __post_init__(self):
        for row in self.data:
            if len(row) != self.ncols:
                raise ValueError("ragged matrix rows")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], ncols: int | None = None) -> "IntMatrix":
        data = tuple(tuple(int(x) for x in row) for row in rows)
        if ncols is None:
            if not data:
                raise ValueError("ncols is required for a matrix without rows")
            ncols = len(data[0])
        return cls(data, ncols)

    @classmethod
    def from_columns(cls, cols: Iterable[Sequence[int]], nrows: int) -> "IntMatrix":
        cols = [tuple(int(x) for x in c) for c in cols]
        for c in cols:
            if len(c) != nrows:
                raise ValueError("column length does not match nrows")
        return cls(tuple(tuple(c[i] for c in cols) for i in range(nrows)), len(cols))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), n)

    @classmethod
    def zeros(cls, m: int, n: int) -> "IntMatrix":
        return cls(tuple((0,) * n for _ in range(m)), n)

    @property
    def nrows(self) -> int:
        return len(self.data)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.data), self.ncols)

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix(
            tuple(tuple(row[j] for row in self.data) for j in range(self.ncols)), self.nrows
        )

    def rows(self) -> list[list[int]]:
        return [list(r) for r in self.data]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.data)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.ncols)]

    def __getitem__(self, idx):
        i, j = idx
        return self.data[i][j]

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        other = as_matrix(other)
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = other.columns()
        return IntMatrix(
            tuple(tuple(sum(a * b for a, b in zip(row, c)) for c in cols) for row in self.data),
            other.ncols,
        )

    def apply(self, vec: Sequence[int]) -> tuple[int, ...]:
        """Matrix-vector product ``self @ vec``."""
        if len(vec) != self.ncols:
            raise ValueError("vector length mismatch")
        return tuple(sum(a * b for a, b in zip(row, vec)) for row in self.data)

    def select_columns(self, idx: Sequence[int]) -> "IntMatrix":
        return IntMatrix(tuple(tuple(row[j] for j in idx) for row in self.data), len(idx))

    def det(self) -> int:
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        return bareiss_det(self.rows())

    def rank(self) -> int:
        return rank(self)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.data]

    def __repr__(self):
        return f"IntMatrix({self.tolist()!r}, ncols={self.ncols})"


def as_matrix(a, ncols: int | None = None) -> IntMatrix:
    if isinstance(a, IntMatrix):
        return a
    return IntMatrix.from_rows(a, ncols)


def bareiss_det(rows: list[list[int]]) -> int:
    """Fraction-free determinant (Bareiss); ``rows`` is consumed."""
    n = len(rows)
    if n == 0:
        return 1
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _rref_fraction(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    m = [list(r) for r in rows]
    pivots = []
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def rank(a) -> int:
    a = as_matrix(a)
    if a.nrows == 0 or a.ncols == 0:
        return 0
    _, piv = _rref_fraction([[Fraction(x) for x in row] for row in a.data])
    return len(piv)


def independent_columns(a) -> list[int]:
    """Indices of the lexicographically first maximal set of independent columns."""
    a = as_matrix(a)
    if a.nrows == 0 or a.ncols == 0:
        return []
    _, piv = _rref_fraction([[Fraction(x) for x in row] for row in a.data])
    return piv


def extended_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``x*a + y*b == g == gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def vector_gcd(vec: Iterable[int]) -> int:
    g = 0
    for x in vec:
        g = gcd(g, x)
    return g


# ---------------------------------------------------------------- Smith form


@dataclass(frozen=True)
class SmithDecomposition:
    """``S = U @ A @ W`` with ``U``, ``W`` unimodular and ``S`` diagonal."""

    U: IntMatrix
    S: IntMatrix
    W: IntMatrix
    invariants: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.invariants)


def smith_normal_form(a) -> SmithDecomposition:
    """Smith normal form with transforms.

    Pivots are chosen by minimum absolute value over the active block. The
    result is deterministic for a fixed input.

    >>> smith_normal_form([[2, 0], [0, 3]]).invariants
    (1, 6)
    """
    a = as_matrix(a)
    m, n = a.shape
    s = a.rows()
    u = IntMatrix.identity(m).rows()
    w = IntMatrix.identity(n).rows()

    def swap_rows(i, j):
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in s:
            row[i], row[j] = row[j], row[i]
        for row in w:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        s[dst] = [x + q * y for x, y in zip(s[dst], s[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):
        for row in s:
            row[dst] += q * row[src]
        for row in w:
            row[dst] += q * row[src]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = s[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        _, pi, pj = best
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            for i in range(t + 1, m):
                if s[i][t]:
                    add_row(i, t, -(s[i][t] // s[t][t]))
            for j in range(t + 1, n):
                if s[t][j]:
                    add_col(j, t, -(s[t][j] // s[t][t]))
            # remainders left behind are smaller than the pivot; bring the
            # smallest one up and repeat
            best = None
            for i in range(t + 1, m):
                if s[i][t] and (best is None or abs(s[i][t]) < best[0]):
                    best = (abs(s[i][t]), "r", i)
            for j in range(t + 1, n):
                if s[t][j] and (best is None or abs(s[t][j]) < best[0]):
                    best = (abs(s[t][j]), "c", j)
            if best is not None:
                if best[1] == "r":
                    swap_rows(t, best[2])
                else:
                    swap_cols(t, best[2])
                continue
            piv = s[t][t]
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if s[i][j] % piv),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if s[t][t] < 0:
            s[t] = [-x for x in s[t]]
            u[t] = [-x for x in u[t]]
        t += 1

    invariants = tuple(s[i][i] for i in range(t))
    return SmithDecomposition(
        U=IntMatrix.from_rows(u, m),
        S=IntMatrix.from_rows(s, n),
        W=IntMatrix.from_rows(w, n),
        invariants=invariants,
    )


# -------------------------------------------------------------- Hermite form


@dataclass(frozen=True)
class RowLattice:
    """Sublattice of ``Z^dim`` given by its row Hermite normal form basis."""

    dim: int
    basis: IntMatrix

    @property
    def rank(self) -> int:
        return self.basis.nrows

    def contains(self, vec: Sequence[int]) -> bool:
        return lattice_contains(self, vec)


def hermite_row_basis(a, ncols: int | None = None) -> RowLattice:
    """Canonical row-style HNF basis of the lattice spanned by the rows of ``a``.

    Rows are in echelon form with positive pivots, and every entry above a
    pivot lies in ``[0, pivot)``. Zero rows are dropped.
    """
    a = as_matrix(a, ncols)
    rows = a.rows()
    m, n = a.shape
    r = 0
    pivot_cols = []
    for c in range(n):
        nz = [i for i in range(r, m) if rows[i][c]]
        if not nz:
            continue
        if nz[0] != r:
            rows[r], rows[nz[0]] = rows[nz[0]], rows[r]
        for i in range(r + 1, m):
            b = rows[i][c]
            if not b:
                continue
            a_ = rows[r][c]
            g, x, y = extended_gcd(a_, b)
            p, q = a_ // g, b // g
            top = [x * s + y * t for s, t in zip(rows[r], rows[i])]
            bot = [p * t - q * s for s, t in zip(rows[r], rows[i])]
            rows[r], rows[i] = top, bot
        if rows[r][c] < 0:
            rows[r] = [-x for x in rows[r]]
        piv = rows[r][c]
        for k in range(r):
            q = rows[k][c] // piv
            if q:
                rows[k] = [x - q * y for x, y in zip(rows[k], rows[r])]
        pivot_cols.append(c)
        r += 1
        if r == m:
            break
    return RowLattice(n, IntMatrix.from_rows(rows[:r], n))


def lattice_contains(lat: RowLattice, vec: Sequence[int]) -> bool:
    """Membership by reduction against the echelon basis."""
    if len(vec) != lat.dim:
        raise ValueError("vector dimension mismatch")
    v = list(vec)
    for row in lat.basis.data:
        c = next(j for j, x in enumerate(row) if x)
        if v[c] % row[c]:
            return False
        q = v[c] // row[c]
        if q:
            v = [x - q * y for x, y in zip(v, row)]
    return not any(v)


def lattice_equal(a, b, ncols: int | None = None) -> bool:
    """True iff the row lattices of ``a`` and ``b`` coincide."""
    la = hermite_row_basis(a, ncols)
    lb = hermite_row_basis(b, ncols)
    if la.dim != lb.dim:
        raise ValueError(f"ambient dimension mismatch: {la.dim} vs {lb.dim}")
    return la.basis == lb.basis


# ------------------------------------------------------- unimodular witness


def solve_rational(a, b) -> list[list[Fraction]] | None:
    """Solve ``X @ a == b`` for X over the rationals; ``a`` must have full row rank.

    Returns ``None`` when the system is inconsistent.
    """
    a = as_matrix(a)
    b = as_matrix(b)
    n, r = a.shape
    ad, bd = a.data, b.data
    if b.ncols != r:
        raise ValueError("column count mismatch")
    cols = independent_columns(a)
    if len(cols) != n:
        raise ValueError(f"matrix has rank {len(cols)} < {n} rows")
    basis = [[Fraction(ad[i][j]) for j in cols] for i in range(n)]
    inv = _inverse(basis)
    x = [
        [sum(Fraction(bd[k][cols[t]]) * inv[t][j] for t in range(n)) for j in range(n)]
        for k in range(b.nrows)
    ]
    for k in range(b.nrows):
        for j in range(r):
            if sum(x[k][i] * ad[i][j] for i in range(n)) != bd[k][j]:
                return None
    return x


def _inverse(m: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(m)
    aug = [row + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    red, piv = _rref_fraction(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red]


def solve_unimodular_witness(v, vp) -> IntMatrix | None:
    """Return the unique ``L`` in GL_n(Z) with ``L @ v == vp``, or ``None``.

    ``v`` must have full row rank; a rank deficit raises :class:`ValueError`
    because ``L`` would not be unique.
    """
    v = as_matrix(v)
    vp = as_matrix(vp, v.ncols)
    if vp.shape != v.shape:
        raise ValueError(f"shape mismatch {v.shape} vs {vp.shape}")
    n = v.nrows
    if n == 0:
        return IntMatrix.zeros(0, 0)
    x = solve_rational(v, vp)
    if x is None:
        return None
    if any(e.denominator != 1 for row in x for e in row):
        return None
    L = IntMatrix.from_rows([[int(e) for e in row] for row in x], n)
    if abs(L.det()) != 1:
        return None
    return L


def adjugate(m) -> tuple[IntMatrix, int]:
    """Return ``(adj(m), det(m))`` so that ``m @ adj == det * I``."""
    m = as_matrix(m)
    n = m.nrows
    if n != m.ncols:
        raise ValueError("adjugate of a non-square matrix")
    if n == 0:
        return IntMatrix.zeros(0, 0), 1
    d = m.det()
    if d == 0:
        raise ZeroDivisionError("singular matrix")
    inv = _inverse([[Fraction(x) for x in row] for row in m.data])
    adj = [[int(x * d) for x in row] for row in inv]
    return IntMatrix.from_rows(adj, n), d


def is_unimodular(m) -> bool:
    m = as_matrix(m)
    return m.nrows == m.ncols and abs(m.det()) == 1
