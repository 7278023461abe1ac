import itertools
import random
from math import gcd

import pytest

from toricaut.automorphisms import AutomorphismAnalysis, Status
from toricaut.cone import build_cone, transform
from toricaut.errors import InputError
from toricaut.surface import remark_operator, remark_operator_check, surface_normal_form, surface_verdict

from conftest import random_cones, random_unimodular


def unimodular_search(rays, target, bound=3):
    """All M with entries in [-bound, bound], det +-1, mapping the ray set onto ``target``."""
    hits = []
    rng = range(-bound, bound + 1)
    for a, b, c, d in itertools.product(rng, repeat=4):
        if abs(a * d - b * c) != 1:
            continue
        img = {(a * x + b * y, c * x + d * y) for x, y in rays}
        if img == set(target):
            hits.append([[a, b], [c, d]])
    return hits


def check_form(cone, f):
    m = f.basis_change
    assert abs(m.det()) == 1
    rays = cone.rays[::-1] if f.swapped else cone.rays
    assert m.apply(rays[0]) == (0, 1)
    assert m.apply(rays[1]) == (f.b, -f.a)
    assert 0 <= f.a < f.b or (f.a, f.b) == (0, 1)
    assert gcd(f.a, f.b) == 1


@pytest.mark.parametrize(
    "rays, ab",
    [([[0, 1], [3, -2]], (2, 3)), ([[0, 1], [1, 0]], (0, 1)), ([[0, 1], [5, -2]], (2, 5))],
)
def test_examples(rays, ab):
    c = build_cone(2, rays)
    f = surface_normal_form(c)
    assert (f.a, f.b) == ab
    check_form(c, f)


def test_rotated_a1_singularity():
    c = build_cone(2, [[1, 1], [-1, 1]])
    f = surface_normal_form(c)
    assert (f.a, f.b) == (1, 2)
    check_form(c, f)
    assert unimodular_search(c.rays, [(0, 1), (2, -1)])


@pytest.mark.parametrize("ab, status", [((1, 2), Status.CONNECTED), ((2, 3), Status.NOT_CONNECTED), ((2, 5), Status.CONNECTED)])
def test_verdicts(ab, status):
    a, b = ab
    f = surface_normal_form(build_cone(2, [[0, 1], [b, -a]]))
    v = surface_verdict(f)
    assert v.status is status
    assert v.component_order == (2 if status is Status.NOT_CONNECTED else 1)
    assert v.ray_classes == (a, 1)


def test_remark_operator_examples():
    f = surface_normal_form(build_cone(2, [[0, 1], [3, -2]]))
    assert remark_operator(f).tolist() == [[2, 3], [-1, -2]]
    assert remark_operator_check(f)
    g = surface_normal_form(build_cone(2, [[0, 1], [15, -4]]))
    L = remark_operator(g)
    assert L.tolist() == [[4, 15], [-1, -4]] and L.det() == -1
    assert remark_operator_check(g)


def test_remark_operator_connected_case_is_error():
    f = surface_normal_form(build_cone(2, [[0, 1], [5, -2]]))
    with pytest.raises(ValueError):
        remark_operator(f)


def test_input_errors():
    with pytest.raises(InputError):
        surface_normal_form(build_cone(3, [[1, 0, 0], [0, 1, 0]]))
    # a single ray in the plane is degenerate but also has the wrong ray count
    with pytest.raises(InputError):
        surface_normal_form(build_cone(2, [[1, 0]]))


def test_inverse_residue_gives_same_surface():
    for b in range(2, 51):
        for a in range(1, b):
            if gcd(a, b) != 1:
                continue
            a_inv = pow(a, -1, b)
            f1 = surface_normal_form(build_cone(2, [[0, 1], [b, -a]]))
            f2 = surface_normal_form(build_cone(2, [[0, 1], [b, -a_inv]]))
            assert (f1.a, f1.b) == (f2.a, f2.b) == (min(a, a_inv), b)


def test_gl2_invariance_and_pipeline_agreement():
    rng = random.Random(17)
    cones = [c for c in random_cones(51, 120, ns=(2,)) if c.r == 2]
    assert len(cones) > 50
    for c in cones:
        f = surface_normal_form(c)
        check_form(c, f)
        u = random_unimodular(rng, 2)
        g = surface_normal_form(transform(c, u))
        assert (g.a, g.b) == (f.a, f.b)
        v = surface_verdict(f)
        a = AutomorphismAnalysis(c)
        assert v.status is a.verdict.status
        assert v.component_order == a.component_group.order
        assert (a.group.free_rank, a.group.torsion) == ((0, ()) if f.b == 1 else (0, (f.b,)))


def test_brute_force_normal_form_small():
    # b is |det| of the rays; a is the smallest residue reachable by an entry-bounded search
    for c in [c for c in random_cones(52, 60, ns=(2,), lo=-2, hi=2) if c.r == 2][:15]:
        (p, q), (s, t) = c.rays
        b = abs(p * t - q * s)
        candidates = [a for a in range(b) if gcd(a, b) == 1] or [0]
        found = [a for a in candidates if unimodular_search(c.rays, [(0, 1), (b, -a)], bound=6)]
        f = surface_normal_form(c)
        assert found and (min(found), b) == (f.a, f.b)
