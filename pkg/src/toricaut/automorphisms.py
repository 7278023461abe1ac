"""Connectedness of Aut(X) and its component group for an affine toric variety.

Two independent routes are computed for a full-dimensional cone:

* the lattice route: ray permutations ``tau`` realized by some ``L`` in
  GL_n(Z) with ``L v_i = v_tau(i)``;
* the class route: ray permutations whose induced map ``[D_i] -> [D_tau(i)]``
  is a well-defined automorphism of ``Cl(X)``, i.e. ``P_tau`` maps the
  relation lattice into itself.

The two sets coincide, Aut(X) is connected iff no admissible permutation
moves a class, and the component group is the set of distinct induced maps.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from math import factorial, gcd

from . import kernels
from .classgroup import ClassElement, ClassGroup, class_group
from .cone import Cone, is_full_dimensional
from .errors import CapExceededError, CriteriaMismatchError, DegenerateConeError
from .lattice import IntMatrix, adjugate, independent_columns
from .smallgroups import element_orders, generators, identify, is_abelian

DEFAULT_CAP = 10

NEUTRAL_COMPONENT_NOTE = (
    "Aut(X)^0 = Ker(Aut(X) -> Aut(Cl(X))): an automorphism lies in the neutral "
    "component iff it fixes every divisor class"
)


class Status(str, Enum):
    CONNECTED = "Connected"
    NOT_CONNECTED = "NotConnected"
    DEGENERATE = "NotConnectedDegenerate"


@dataclass(frozen=True)
class AdmissiblePermutation:
    """Ray permutation ``tau`` (0-based) with its witness ``L @ v_i == v_tau(i)``."""

    tau: tuple[int, ...]
    L: IntMatrix


@dataclass(frozen=True)
class InducedClassAutomorphism:
    tau: tuple[int, ...]
    images: tuple[ClassElement, ...]


@dataclass(frozen=True)
class ComponentGroup:
    elements: tuple[InducedClassAutomorphism, ...]
    table: tuple[tuple[int, ...], ...]
    abelian: bool
    element_orders: tuple[int, ...]
    name: str | None
    generators: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def describe(self) -> str:
        if self.name is not None:
            return self.name
        return f"order {self.order}, generators {[i for i in self.generators]}"


@dataclass(frozen=True)
class Verdict:
    status: Status
    witness: AdmissiblePermutation | None = None
    moved: tuple[int, ...] = ()
    neutral_component_note: str = NEUTRAL_COMPONENT_NOTE


@dataclass(frozen=True)
class RemarkOrderIdentity:
    lhs: int
    admissible: int
    kernel: int

    @property
    def rhs(self) -> int:
        return self.admissible // self.kernel

    @property
    def equal(self) -> bool:
        return self.admissible % self.kernel == 0 and self.lhs == self.rhs

    def __iter__(self):
        return iter((self.lhs, self.rhs, self.equal))


@dataclass(frozen=True)
class BlockFactor:
    indices: tuple[int, ...]
    degree: ClassElement
    translations: bool

    @property
    def size(self) -> int:
        return len(self.indices)

    @property
    def factor(self) -> str:
        base = f"GL({self.size})"
        return f"{base} x| K^{self.size}" if self.translations else base


@dataclass(frozen=True)
class NeutralComponentSummary:
    statement: str
    blocks: tuple[BlockFactor, ...]
    grading: tuple[ClassElement, ...] = field(repr=False)

    def text(self) -> str:
        lines = [self.statement]
        lines.append(
            "linear part of the grading-preserving Cox ring automorphisms: "
            + " x ".join(b.factor for b in self.blocks)
        )
        for b in self.blocks:
            idx = ",".join(str(i + 1) for i in b.indices)
            flag = "  [affine translations]" if b.translations else ""
            lines.append(f"  block {{{idx}}}: degree {b.degree}, {b.factor}{flag}")
        lines.append("Cox grading:")
        for i, d in enumerate(self.grading):
            lines.append(f"  deg(T_{i + 1}) = {d}")
        return "\n".join(lines)


def _pair_profile(rays, i) -> tuple[int, ...]:
    # gcd of the 2x2 minors of (v_i, v_j) is a GL_n(Z)-invariant of the pair
    v = rays[i]
    out = []
    for j, w in enumerate(rays):
        if j == i:
            continue
        g = 0
        for a in range(len(v)):
            for b in range(a + 1, len(v)):
                g = gcd(g, v[a] * w[b] - v[b] * w[a])
        out.append(g)
    return tuple(sorted(out))


class AutomorphismAnalysis:
    """Lazily computed data for one cone; every result is cached."""

    def __init__(self, cone: Cone, cap: int = DEFAULT_CAP, jobs: int = 1):
        self.cone = cone
        self.cap = cap
        self.jobs = jobs

    @cached_property
    def full_dimensional(self) -> bool:
        return is_full_dimensional(self.cone)

    @cached_property
    def _class_data(self) -> tuple[ClassGroup, list[ClassElement]]:
        return class_group(self.cone)

    @property
    def group(self) -> ClassGroup:
        return self._class_data[0]

    @property
    def classes(self) -> list[ClassElement]:
        return self._class_data[1]

    def _check_cap(self):
        if self.cone.r > self.cap:
            raise CapExceededError(self.cone.r, self.cap)

    def _require_full(self):
        if not self.full_dimensional:
            raise DegenerateConeError("operation requires a full-dimensional cone")

    @cached_property
    def admissible(self) -> tuple[AdmissiblePermutation, ...]:
        self._require_full()
        self._check_cap()
        rays = [list(v) for v in self.cone.rays]
        r = len(rays)
        basis = independent_columns(self.cone.matrix) if r else []
        bmat = self.cone.matrix.select_columns(basis)
        adj, det = adjugate(bmat)
        prof = [_pair_profile(self.cone.rays, i) for i in range(r)]
        allowed = [[prof[i] == prof[t] for t in range(r)] for i in range(r)]
        found = kernels.lattice_admissible_perms(
            [tuple(v) for v in self.cone.rays], basis, adj.tolist(), det, allowed, jobs=self.jobs
        )
        return tuple(AdmissiblePermutation(tau, IntMatrix.from_rows(L, self.cone.n)) for tau, L in found)

    @cached_property
    def class_admissible(self) -> tuple[tuple[int, ...], ...]:
        self._check_cap()
        g, cls = self._class_data
        r = self.cone.r
        moduli = [0] * g.free_rank + list(g.torsion)
        coords = [list(c.coords) for c in cls]
        orders = [c.order() for c in cls]
        allowed = [[orders[i] == orders[t] for t in range(r)] for i in range(r)]
        relations = [list(row) for row in self.cone.matrix.data] if self.cone.n else []
        return tuple(kernels.class_admissible_perms(coords, moduli, relations, allowed, jobs=self.jobs))

    def _moves_class(self, tau) -> bool:
        cls = self.classes
        return any(cls[tau[i]] != cls[i] for i in range(len(tau)))

    @cached_property
    def component_group(self) -> ComponentGroup:
        self._require_full()
        cls = self.classes
        index: dict[tuple[ClassElement, ...], int] = {}
        elements = []
        for tau in self.class_admissible:
            key = tuple(cls[t] for t in tau)
            if key not in index:
                index[key] = len(elements)
                elements.append(InducedClassAutomorphism(tau, key))
        table = []
        for a in elements:
            row = []
            for b in elements:
                key = tuple(cls[a.tau[b.tau[i]]] for i in range(len(b.tau)))
                row.append(index[key])
            table.append(tuple(row))
        table = tuple(table)
        orders = element_orders(table)
        abel = is_abelian(table)
        return ComponentGroup(
            elements=tuple(elements),
            table=table,
            abelian=abel,
            element_orders=tuple(sorted(orders)),
            name=identify(len(elements), abel, orders),
            generators=tuple(generators(table)),
        )

    @cached_property
    def blocks(self) -> tuple[tuple[int, ...], ...]:
        seen: dict[ClassElement, list[int]] = {}
        for i, c in enumerate(self.classes):
            seen.setdefault(c, []).append(i)
        return tuple(tuple(b) for b in seen.values())

    def lattice_verdict(self) -> bool:
        """True iff some lattice-admissible permutation moves a class."""
        return any(self._moves_class(p.tau) for p in self.admissible)

    def class_verdict(self) -> bool:
        """True iff some class-admissible permutation induces a nontrivial map."""
        return any(self._moves_class(t) for t in self.class_admissible)

    def criteria_agree(self) -> bool:
        return {p.tau for p in self.admissible} == set(self.class_admissible)

    @cached_property
    def verdict(self) -> Verdict:
        if not self.full_dimensional:
            return Verdict(Status.DEGENERATE)
        by_lattice = self.lattice_verdict()
        by_class = self.class_verdict()
        if by_lattice != by_class:
            raise CriteriaMismatchError(
                f"lattice route says {by_lattice}, class route says {by_class} for {self.cone.rays}"
            )
        if not by_lattice:
            return Verdict(Status.CONNECTED)
        witness = next(p for p in self.admissible if self._moves_class(p.tau))
        cls = self.classes
        moved = tuple(i for i in range(self.cone.r) if cls[witness.tau[i]] != cls[i])
        return Verdict(Status.NOT_CONNECTED, witness, moved)

    @cached_property
    def remark_identity(self) -> RemarkOrderIdentity:
        adm = self.admissible
        kernel = sum(1 for p in adm if not self._moves_class(p.tau))
        return RemarkOrderIdentity(self.component_group.order, len(adm), kernel)

    @cached_property
    def neutral_component(self) -> NeutralComponentSummary:
        self._require_full()
        cls = self.classes
        blocks = tuple(BlockFactor(b, cls[b[0]], cls[b[0]].is_zero()) for b in self.blocks)
        return NeutralComponentSummary(NEUTRAL_COMPONENT_NOTE, blocks, tuple(cls))

    def order_bound_holds(self) -> bool:
        cg = self.component_group
        return cg.order <= factorial(self.cone.r) and cg.order <= len(self.admissible)


# Functional surface -------------------------------------------------------


def admissible_permutations(c: Cone, cap: int = DEFAULT_CAP, jobs: int = 1) -> tuple[AdmissiblePermutation, ...]:
    return AutomorphismAnalysis(c, cap, jobs).admissible


def class_admissible_permutations(
    c: Cone, g: ClassGroup | None = None, cap: int = DEFAULT_CAP, jobs: int = 1
) -> tuple[tuple[int, ...], ...]:
    # `g` is accepted for interface symmetry; the frame is recomputed from `c`
    return AutomorphismAnalysis(c, cap, jobs).class_admissible


def connectedness_verdict(c: Cone, cap: int = DEFAULT_CAP, jobs: int = 1) -> Verdict:
    return AutomorphismAnalysis(c, cap, jobs).verdict


def component_group(c: Cone, cap: int = DEFAULT_CAP, jobs: int = 1) -> ComponentGroup:
    return AutomorphismAnalysis(c, cap, jobs).component_group


def class_blocks(c: Cone) -> tuple[tuple[int, ...], ...]:
    return AutomorphismAnalysis(c).blocks


def remark_order_identity(c: Cone, cap: int = DEFAULT_CAP) -> RemarkOrderIdentity:
    return AutomorphismAnalysis(c, cap).remark_identity


def neutral_component_summary(c: Cone) -> NeutralComponentSummary:
    return AutomorphismAnalysis(c).neutral_component
