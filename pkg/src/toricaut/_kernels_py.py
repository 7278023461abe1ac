"""Pure-Python permutation search kernels.

Reference implementation of the functions in ``_kernels.pyx``; both must
return identical, lexicographically ordered results.
"""


def _completion_schedule(relations, r):
    # relation j can be checked as soon as its last nonzero position is assigned
    sched = [[] for _ in range(r)]
    for j, row in enumerate(relations):
        last = max((i for i in range(r) if row[i]), default=-1)
        if last >= 0:
            sched[last].append(j)
    return sched


def class_admissible_perms(classes, moduli, relations, allowed):
    """All permutations ``tau`` with ``sum_i rel[i] * classes[tau(i)] == 0`` for every relation.

    ``classes`` holds one coordinate vector per ray, ``moduli[q]`` is the
    modulus of coordinate ``q`` (``0`` for a free coordinate) and
    ``allowed[i][t]`` restricts ``tau(i) = t``.
    """
    r = len(classes)
    k = len(moduli)
    sched = _completion_schedule(relations, r)
    perm = [0] * r
    used = [False] * r
    out = []

    def holds(j):
        row = relations[j]
        for q in range(k):
            acc = 0
            for i in range(r):
                if row[i]:
                    acc += row[i] * classes[perm[i]][q]
            m = moduli[q]
            if (acc % m if m else acc) != 0:
                return False
        return True

    def dfs(d):
        if d == r:
            out.append(tuple(perm))
            return
        for t in range(r):
            if used[t] or not allowed[d][t]:
                continue
            perm[d] = t
            used[t] = True
            if all(holds(j) for j in sched[d]):
                dfs(d + 1)
            used[t] = False

    dfs(0)
    return out


def lattice_admissible_perms(rays, basis, adj, det, allowed):
    """All ``(tau, L)`` with ``L`` integral, ``L v_i = v_tau(i)`` for every ray.

    ``basis`` lists ``n`` ray indices whose vectors form an invertible matrix
    ``B`` (columns) with ``B @ adj == det * I``. Only the images of the basis
    rays are enumerated; they determine ``L = B' @ adj / det``.
    """
    r = len(rays)
    n = len(basis)
    lookup = {v: i for i, v in enumerate(rays)}
    choice = [0] * n
    used = [False] * r
    out = []

    def leaf():
        L = []
        for i in range(n):
            row = []
            for j in range(n):
                m = 0
                for t in range(n):
                    m += rays[choice[t]][i] * adj[t][j]
                if m % det:
                    return
                row.append(m // det)
            L.append(row)
        tau = [0] * r
        seen = [False] * r
        for i in range(r):
            v = rays[i]
            img = tuple(sum(L[a][b] * v[b] for b in range(n)) for a in range(n))
            s = lookup.get(img)
            if s is None or seen[s]:
                return
            seen[s] = True
            tau[i] = s
        out.append((tuple(tau), L))

    def dfs(d):
        if d == n:
            leaf()
            return
        b = basis[d]
        for t in range(r):
            if used[t] or not allowed[b][t]:
                continue
            choice[d] = t
            used[t] = True
            dfs(d + 1)
            used[t] = False

    dfs(0)
    out.sort(key=lambda p: p[0])
    return out
