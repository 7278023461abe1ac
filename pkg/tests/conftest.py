import random

import pytest

from toricaut import kernels
from toricaut.cone import build_cone
from toricaut.errors import NonPointedConeError

NAMED_CONES = {
    "ex1": (2, [[0, 1], [2, -1]]),
    "ex2": (2, [[0, 1], [3, -2]]),
    "ex3": (2, [[0, 1], [5, -2]]),
    "ex4": (3, [[1, -1, 0], [1, 0, -1], [0, 1, 0], [0, 0, 1]]),
    "ex5": (3, [[2, 0, 1], [0, 2, 1], [0, 0, 1]]),
}


def named_cone(name):
    n, rays = NAMED_CONES[name]
    return build_cone(n, rays)


def affine_space(n):
    return build_cone(n, [[int(i == j) for j in range(n)] for i in range(n)])


def random_cones(seed, count, ns=(2, 3), rmax=5, lo=-4, hi=4):
    """Pointed full-dimensional cones from random generators (non-extreme ones dropped)."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.choice(ns)
        r = rng.randint(n, rmax)
        rays = [[rng.randint(lo, hi) for _ in range(n)] for _ in range(r)]
        if any(not any(v) for v in rays):
            continue
        try:
            c = build_cone(n, rays, reduce=True)
        except NonPointedConeError:
            continue
        if c.rank == n:
            out.append(c)
    return out


def random_unimodular(rng, n, bound=5, steps=12):
    """Product of random elementary operations, entries kept within ``bound``."""
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        kind = rng.choice(["add", "swap", "neg"])
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        new = [row[:] for row in m]
        if kind == "add" and n > 1:
            s = rng.choice([-1, 1])
            new[i] = [a + s * b for a, b in zip(new[i], new[j])]
        elif kind == "swap" and n > 1:
            new[i], new[j] = new[j], new[i]
        else:
            new[i] = [-a for a in new[i]]
        if max(abs(x) for row in new for x in row) <= bound:
            m = new
    return m


@pytest.fixture(params=kernels.available_backends())
def backend(request):
    old = kernels.get_backend()
    kernels.set_backend(request.param)
    yield request.param
    kernels.set_backend(old)


# one summary line per acceptance criterion, shown at the end of every run
ACCEPTANCE_LINES: list[str] = []


def record_criterion(label: str, title: str, ok: bool, detail: str = "") -> None:
    line = f"{'PASS' if ok else 'FAIL'}  {label}: {title}" + (f"  [{detail}]" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
