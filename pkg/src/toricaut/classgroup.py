"""Divisor class group of an affine toric variety.

``Cl(X)`` is the cokernel of ``Z^n -> Z^r``, ``m -> (<v_1, m>, ..., <v_r, m>)``.
The relation lattice is spanned by the rows of the ``n x r`` ray matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, lcm
from typing import Sequence

from .cone import Cone
from .lattice import IntMatrix, RowLattice, hermite_row_basis, smith_normal_form


@dataclass(frozen=True)
class ClassElement:
    """Element of ``Z^f + Z/d_1 + ... + Z/d_k`` in canonical coordinates."""

    free: tuple[int, ...]
    torsion: tuple[int, ...]
    moduli: tuple[int, ...]

    def __post_init__(self):
        if len(self.torsion) != len(self.moduli):
            raise ValueError("torsion coordinates and moduli differ in length")
        if any(not 0 <= t < d for t, d in zip(self.torsion, self.moduli)):
            raise ValueError("torsion coordinates must be reduced")

    @classmethod
    def make(cls, free, torsion, moduli) -> "ClassElement":
        return cls(tuple(free), tuple(t % d for t, d in zip(torsion, moduli)), tuple(moduli))

    def __add__(self, other: "ClassElement") -> "ClassElement":
        if self.moduli != other.moduli or len(self.free) != len(other.free):
            raise ValueError("elements of different groups")
        return ClassElement.make(
            (a + b for a, b in zip(self.free, other.free)),
            [a + b for a, b in zip(self.torsion, other.torsion)],
            self.moduli,
        )

    def __neg__(self) -> "ClassElement":
        return ClassElement.make((-a for a in self.free), [-t for t in self.torsion], self.moduli)

    def __sub__(self, other: "ClassElement") -> "ClassElement":
        return self + (-other)

    def scale(self, k: int) -> "ClassElement":
        return ClassElement.make((k * a for a in self.free), [k * t for t in self.torsion], self.moduli)

    @property
    def coords(self) -> tuple[int, ...]:
        return self.free + self.torsion

    def is_zero(self) -> bool:
        return not any(self.free) and not any(self.torsion)

    def order(self) -> int:
        """Additive order; ``0`` stands for infinite order."""
        if any(self.free):
            return 0
        return lcm(*(d // gcd(d, t) for t, d in zip(self.torsion, self.moduli))) if self.moduli else 1

    def __str__(self):
        return "(" + ",".join(map(str, self.coords)) + ")"


@dataclass(frozen=True)
class ClassGroup:
    """``Cl(X) = Z^r / relations`` with a fixed coordinate frame.

    The frame comes from one Smith decomposition ``S = U @ V @ W`` of the ray
    matrix: a divisor ``x`` has coordinates ``x @ W``, of which the entries
    at invariant factors ``d >= 2`` are read mod ``d`` and the trailing
    ``r - rank`` entries are free.
    """

    r: int
    free_rank: int
    torsion: tuple[int, ...]
    projector: IntMatrix  # r x (free_rank + len(torsion))
    relation_lattice: RowLattice

    @property
    def zero(self) -> ClassElement:
        return ClassElement((0,) * self.free_rank, (0,) * len(self.torsion), self.torsion)

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> int:
        """Group order, ``0`` if infinite."""
        if self.free_rank:
            return 0
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def describe(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"

    def elements(self):
        """Enumerate all elements of a finite group."""
        if self.free_rank:
            raise ValueError("infinite group")
        import itertools

        for t in itertools.product(*(range(d) for d in self.torsion)):
            yield ClassElement((), tuple(t), self.torsion)


def class_group(c: Cone) -> tuple[ClassGroup, list[ClassElement]]:
    """Return ``Cl(X)`` and the classes ``[D_1], ..., [D_r]`` of the ray divisors."""
    r = c.r
    v = c.matrix if c.n else IntMatrix.zeros(0, r)
    snf = smith_normal_form(v)
    k = snf.rank
    tors_idx = [i for i, d in enumerate(snf.invariants) if d >= 2]
    torsion = tuple(snf.invariants[i] for i in tors_idx)
    cols = list(range(k, r)) + tors_idx
    proj = snf.W.select_columns(cols).rows()
    # fix the sign of each free coordinate: first nonzero ray class entry positive
    for q in range(r - k):
        lead = next((row[q] for row in proj if row[q]), 0)
        if lead < 0:
            for row in proj:
                row[q] = -row[q]
    projector = IntMatrix.from_rows(proj, len(cols))
    group = ClassGroup(
        r=r,
        free_rank=r - k,
        torsion=torsion,
        projector=projector,
        relation_lattice=hermite_row_basis(v, r),
    )
    classes = [class_of(group, [int(i == j) for j in range(r)]) for i in range(r)]
    return group, classes


def class_of(g: ClassGroup, coeffs: Sequence[int]) -> ClassElement:
    """Class of the divisor ``sum coeffs[i] * D_i``."""
    if len(coeffs) != g.r:
        raise ValueError(f"expected {g.r} coefficients, got {len(coeffs)}")
    y = [sum(c * row[j] for c, row in zip(coeffs, g.projector.data)) for j in range(g.projector.ncols)]
    f = g.free_rank
    return ClassElement.make(y[:f], y[f:], g.torsion)


def combination(classes: Sequence[ClassElement], coeffs: Sequence[int], zero: ClassElement) -> ClassElement:
    out = zero
    for c, k in zip(classes, coeffs):
        if k:
            out = out + c.scale(k)
    return out


def realizes(
    g: ClassGroup,
    cone: Cone,
    free_rank: int,
    torsion: Sequence[int],
    target: Sequence[tuple[Sequence[int], Sequence[int]]],
) -> bool:
    """Check that ``[D_i] -> target[i]`` defines an isomorphism onto the stated group.

    ``target[i]`` is ``(free coords, torsion coords)`` in the group
    ``Z^free_rank + (+) Z/torsion``. This lets a hand-written description of
    the ray classes (any frame) be compared with the computed one: the map is
    well defined iff every relation dies in the target, onto iff the targets
    generate, and then it is an isomorphism because the invariants agree and
    finitely generated abelian groups are Hopfian.
    """
    torsion = tuple(torsion)
    if (g.free_rank, g.torsion) != (free_rank, torsion):
        return False
    elems = [ClassElement.make(f, t, torsion) for f, t in target]
    if len(elems) != cone.r:
        return False
    zero = ClassElement((0,) * free_rank, (0,) * len(torsion), torsion)
    for row in cone.matrix.data:
        if not combination(elems, row, zero).is_zero():
            return False
    return _generates(elems, free_rank, torsion)


def _generates(elems: Sequence[ClassElement], free_rank: int, torsion: tuple[int, ...]) -> bool:
    # The span of the targets is the row lattice of [coords ; d_i e_i]; it is
    # everything iff that lattice is Z^(f+k).
    dim = free_rank + len(torsion)
    rows = [list(e.coords) for e in elems]
    for i, d in enumerate(torsion):
        rows.append([d if j == free_rank + i else 0 for j in range(dim)])
    basis = hermite_row_basis(rows, dim).basis
    return basis == IntMatrix.identity(dim)
