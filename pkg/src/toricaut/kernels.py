"""Dispatch for the permutation search kernels.

The compiled extension is used when it imports and the inputs are small
enough for 64-bit arithmetic; otherwise the pure-Python twin runs. Results
are identical either way.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor

from . import _kernels_py

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

_INT64_SAFE = 1 << 62
_backend = "compiled" if _compiled is not None else "python"


def available_backends() -> list[str]:
    return ["compiled", "python"] if _compiled is not None else ["python"]


def get_backend() -> str:
    return _backend


def set_backend(name: str) -> None:
    """Force ``"compiled"`` or ``"python"``; mainly for tests and benchmarks."""
    global _backend
    if name not in available_backends():
        raise ValueError(f"backend {name!r} not available; have {available_backends()}")
    _backend = name


def _maxabs(rows) -> int:
    return max((abs(x) for row in rows for x in row), default=0)


def _module(safe: bool, backend: str | None):
    backend = backend or _backend
    if backend == "compiled" and safe:
        return _compiled
    return _kernels_py


def _split_allowed(allowed, pos, jobs):
    choices = [t for t, ok in enumerate(allowed[pos]) if ok]
    chunks = [choices[i::jobs] for i in range(jobs)]
    out = []
    for chunk in chunks:
        if not chunk:
            continue
        a = [list(row) for row in allowed]
        a[pos] = [t in chunk for t in range(len(a[pos]))]
        out.append(a)
    return out


def _call(mod_name, func, args):
    mod = _compiled if mod_name == "compiled" else _kernels_py
    return getattr(mod, func)(*args)


def _run(mod, func, args, allowed_pos, allowed_idx, jobs, sort_key):
    if jobs <= 1 or not args[allowed_idx]:
        return getattr(mod, func)(*args)
    mod_name = "compiled" if mod is _compiled else "python"
    jobs_args = []
    for a in _split_allowed(args[allowed_idx], allowed_pos, jobs):
        new = list(args)
        new[allowed_idx] = a
        jobs_args.append(tuple(new))
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        parts = list(ex.map(_call, [mod_name] * len(jobs_args), [func] * len(jobs_args), jobs_args))
    merged = [x for part in parts for x in part]
    merged.sort(key=sort_key)
    return merged


def class_admissible_perms(classes, moduli, relations, allowed, jobs: int = 1, backend: str | None = None):
    """Permutations of ray indices preserving the relation lattice, ordered lexicographically."""
    r = len(classes)
    bound = (r + 1) * (_maxabs(relations) + 1) * (_maxabs(classes) + 1)
    mod = _module(bound < _INT64_SAFE, backend)
    if r == 0:
        return [()]
    return _run(mod, "class_admissible_perms", (classes, moduli, relations, allowed), 0, 3, jobs, lambda p: p)


def lattice_admissible_perms(rays, basis, adj, det, allowed, jobs: int = 1, backend: str | None = None):
    """``(tau, L)`` pairs of unimodular ray permutations, ordered by ``tau``."""
    n = len(basis)
    vmax = _maxabs(rays) + 1
    mbound = (n + 1) * vmax * (_maxabs(adj) + 1)
    bound = (n + 1) * mbound * vmax
    mod = _module(bound < _INT64_SAFE, backend)
    if not rays:
        return [((), [[int(i == j) for j in range(n)] for i in range(n)])]
    pos = basis[0] if basis else 0
    return _run(mod, "lattice_admissible_perms", (rays, basis, adj, det, allowed), pos, 4, jobs, lambda p: p[0])
