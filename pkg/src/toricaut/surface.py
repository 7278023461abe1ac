"""Normal form ``(a, b)`` of a two-dimensional affine toric variety.

After a change of basis the cone is spanned by ``(0, 1)`` and ``(b, -a)``
with ``0 <= a < b`` and ``gcd(a, b) = 1``; then ``Cl = Z/b`` with
``[D_1] = a`` and ``[D_2] = 1``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .automorphisms import Status
from .cone import Cone, is_full_dimensional
from .errors import DegenerateConeError, InputError
from .lattice import IntMatrix, extended_gcd


@dataclass(frozen=True)
class SurfaceNormalForm:
    a: int
    b: int
    basis_change: IntMatrix
    swapped: bool = False  # True when basis_change sends the second input ray to (0, 1)

    @property
    def smooth(self) -> bool:
        return self.b == 1


@dataclass(frozen=True)
class SurfaceVerdict:
    status: Status
    a: int
    b: int
    ray_classes: tuple[int, int]  # ([D_1], [D_2]) in Z/b
    component_order: int


def _to_vertical(v) -> IntMatrix:
    # unimodular M with M v = (0, 1)
    p, q = v
    g, x, y = extended_gcd(p, q)
    assert g == 1
    return IntMatrix.from_rows([[q, -p], [x, y]])


def _normalize(v1, v2) -> tuple[int, int, IntMatrix]:
    m = _to_vertical(v1)
    w1, w2 = m.apply(v2)
    if w1 < 0:
        m = IntMatrix.from_rows([[-1, 0], [0, 1]]) @ m
        w1 = -w1
    b = w1
    a = (-w2) % b
    # shear (x, y) -> (x, y + k x) fixes (0, 1) and moves w2 to -a
    k = (-a - w2) // b
    m = IntMatrix.from_rows([[1, 0], [k, 1]]) @ m
    return a, b, m


def surface_normal_form(c: Cone) -> SurfaceNormalForm:
    if c.n != 2 or c.r != 2:
        raise InputError(f"surface normal form needs n = 2 and two rays, got n = {c.n}, r = {c.r}")
    if not is_full_dimensional(c):
        raise DegenerateConeError("surface normal form needs a full-dimensional cone")
    v1, v2 = c.rays
    a, b, m = _normalize(v1, v2)
    if b > 1:
        a2, b2, m2 = _normalize(v2, v1)
        assert b2 == b and (a * a2) % b == 1
        if a2 < a:
            return SurfaceNormalForm(a2, b, m2, swapped=True)
    return SurfaceNormalForm(a, b, m)


def surface_verdict(f: SurfaceNormalForm) -> SurfaceVerdict:
    a, b = f.a, f.b
    connected = a == 1 or b == 1 or (a * a) % b != 1
    status = Status.CONNECTED if connected else Status.NOT_CONNECTED
    return SurfaceVerdict(status, a, b, (a % b, 1 % b), 1 if connected else 2)


def remark_operator(f: SurfaceNormalForm) -> IntMatrix | None:
    """The operator swapping ``(0, 1)`` and ``(b, -a)``; only integral when ``a^2 = 1 mod b``."""
    a, b = f.a, f.b
    if surface_verdict(f).status is not Status.NOT_CONNECTED:
        raise ValueError(f"(a, b) = ({a}, {b}) is a connected case; no swapping operator expected")
    num = 1 - a * a
    if num % b:
        return None
    return IntMatrix.from_rows([[a, b], [num // b, -a]])


def remark_operator_check(f: SurfaceNormalForm) -> bool:
    L = remark_operator(f)
    if L is None:
        return False
    v1, v2 = (0, 1), (f.b, -f.a)
    return abs(L.det()) == 1 and L.apply(v1) == v2 and L.apply(v2) == v1
