"""Strongly convex rational polyhedral cones given by ray generators."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import DegenerateConeError, InputError, NonExtremeRayError, NonPointedConeError, ZeroRayError
from .feasibility import nonneg_feasible
from .lattice import IntMatrix, hermite_row_basis, rank, smith_normal_form, solve_rational, vector_gcd

log = logging.getLogger(__name__)

Ray = tuple[int, ...]


@dataclass(frozen=True)
class ConeValidationReport:
    pointed: bool
    full_dimensional: bool
    rank: int
    normalized_rays: tuple[Ray, ...]
    rejected_rays: tuple[tuple[Ray, str], ...] = ()
    warnings: tuple[str, ...] = ()


@dataclass(frozen=True)
class Cone:
    """Pointed cone in ``Q^n`` spanned by primitive, extreme integer rays.

    Use :func:`build_cone` to construct validated instances.
    """

    n: int
    rays: tuple[Ray, ...]
    report: ConeValidationReport | None = field(default=None, compare=False, repr=False)

    @property
    def r(self) -> int:
        return len(self.rays)

    @property
    def matrix(self) -> IntMatrix:
        """The ``n x r`` matrix whose columns are the rays."""
        return IntMatrix.from_columns(self.rays, self.n)

    @property
    def rank(self) -> int:
        return rank(self.matrix)


def primitive(vec: Sequence[int]) -> Ray:
    g = vector_gcd(vec)
    if g == 0:
        raise ZeroRayError(f"zero vector {tuple(vec)} is not a ray")
    return tuple(x // g for x in vec)


def _is_pointed(n: int, rays: Sequence[Ray]) -> bool:
    if not rays:
        return True
    # a nonnegative combination summing to zero with total weight 1 is a line
    a = [[v[i] for v in rays] for i in range(n)] + [[1] * len(rays)]
    return not nonneg_feasible(a, [0] * n + [1])


def _is_extreme(n: int, rays: Sequence[Ray], k: int) -> bool:
    others = [v for i, v in enumerate(rays) if i != k]
    a = IntMatrix.from_columns(others, n)
    return not nonneg_feasible(a, rays[k])


def build_cone(n: int, raw_rays: Sequence[Sequence[int]], reduce: bool = False) -> Cone:
    """Validate generators and return a :class:`Cone`.

    Rays are divided by their gcd and duplicates collapse to their first
    occurrence. With ``reduce`` set, generators that are not extreme are
    dropped (and listed in the report); otherwise they are an error.
    """
    if n < 0:
        raise InputError("lattice rank must be nonnegative")
    warnings: list[str] = []
    rays: list[Ray] = []
    for raw in raw_rays:
        raw = tuple(int(x) for x in raw)
        if len(raw) != n:
            raise InputError(f"ray {raw} has length {len(raw)}, expected {n}")
        v = primitive(raw)
        if v in rays:
            msg = f"duplicate ray {raw} collapsed onto {v}"
            log.warning(msg)
            warnings.append(msg)
            continue
        rays.append(v)

    if not _is_pointed(n, rays):
        raise NonPointedConeError("cone contains a line: not strongly convex, not an affine toric input")

    rejected = []
    kept = []
    for k, v in enumerate(rays):
        if _is_extreme(n, rays, k):
            kept.append(v)
        elif reduce:
            rejected.append((v, "not extreme: lies in the cone of the other generators"))
        else:
            raise NonExtremeRayError(f"generator {v} is not an extreme ray")

    rk = rank(IntMatrix.from_columns(kept, n))
    report = ConeValidationReport(
        pointed=True,
        full_dimensional=rk == n,
        rank=rk,
        normalized_rays=tuple(kept),
        rejected_rays=tuple(rejected),
        warnings=tuple(warnings),
    )
    return Cone(n, tuple(kept), report)


def is_full_dimensional(c: Cone) -> bool:
    return c.rank == c.n


def transform(c: Cone, u) -> Cone:
    """Image of ``c`` under a unimodular map ``u`` (no revalidation needed)."""
    u = u if isinstance(u, IntMatrix) else IntMatrix.from_rows(u)
    return Cone(c.n, tuple(u.apply(v) for v in c.rays), c.report)


def saturated_basis(c: Cone) -> IntMatrix:
    """HNF basis (as rows) of the saturation of the lattice spanned by the rays."""
    k = c.rank
    if k == 0:
        return IntMatrix.zeros(0, c.n)
    rows = IntMatrix.from_rows(c.rays, c.n)
    # x is in the rational row span iff the trailing coordinates of x @ W vanish,
    # so the leading rows of W^-1 span the saturation
    snf = smith_normal_form(rows)
    w_inv = solve_rational(snf.W, IntMatrix.identity(c.n))
    head = [[int(x) for x in w_inv[i]] for i in range(k)]
    return hermite_row_basis(head, c.n).basis


def split_degenerate(c: Cone) -> tuple[Cone, int]:
    """Split ``X = Y x torus`` for a cone that is not full-dimensional.

    Returns the full-dimensional cone of ``Y`` written in an HNF basis of the
    saturated span of the rays, and the torus dimension ``q = n - rank``.
    """
    basis = saturated_basis(c)
    k = basis.nrows
    if k == c.n:
        raise DegenerateConeError("cone is full-dimensional; nothing to split off")
    if k == 0:
        return Cone(0, (), ConeValidationReport(True, True, 0, ())), c.n
    # rows of `basis` form B; solve coeffs @ B == ray for each ray
    sol = solve_rational(basis, IntMatrix.from_rows(c.rays, c.n))
    assert sol is not None
    new_rays = []
    for row in sol:
        assert all(isinstance(x, Fraction) and x.denominator == 1 for x in row)
        new_rays.append(tuple(int(x) for x in row))
    sub = Cone(k, tuple(new_rays), ConeValidationReport(True, True, k, tuple(new_rays)))
    return sub, c.n - k
