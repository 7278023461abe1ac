# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled permutation search kernels (see ``_kernels_py.py`` for the contract).

All arithmetic is in 64-bit integers; the Python wrapper only dispatches
here when the input magnitudes make overflow impossible.
"""

from libc.stdlib cimport calloc, free

ctypedef long long i64


cdef struct ClassCtx:
    int r
    int k
    int n
    i64* classes
    i64* moduli
    i64* rel
    char* allowed
    int* sched_start
    int* sched
    int* perm
    char* used
    i64* acc


cdef bint _class_holds(ClassCtx* c, int j):
    cdef int q, i
    cdef i64 coef, v, m
    for q in range(c.k):
        c.acc[q] = 0
    for i in range(c.r):
        coef = c.rel[j * c.r + i]
        if coef != 0:
            for q in range(c.k):
                c.acc[q] += coef * c.classes[c.perm[i] * c.k + q]
    for q in range(c.k):
        m = c.moduli[q]
        v = c.acc[q]
        if m != 0:
            v = v % m
        if v != 0:
            return False
    return True


cdef void _class_dfs(ClassCtx* c, int d, list out):
    cdef int t, s
    cdef bint ok
    if d == c.r:
        out.append(tuple([c.perm[s] for s in range(c.r)]))
        return
    for t in range(c.r):
        if c.used[t] or not c.allowed[d * c.r + t]:
            continue
        c.perm[d] = t
        c.used[t] = 1
        ok = True
        for s in range(c.sched_start[d], c.sched_start[d + 1]):
            if not _class_holds(c, c.sched[s]):
                ok = False
                break
        if ok:
            _class_dfs(c, d + 1, out)
        c.used[t] = 0


def class_admissible_perms(classes, moduli, relations, allowed):
    cdef ClassCtx c
    cdef int i, j, q, pos
    cdef list out = []
    r = len(classes)
    k = len(moduli)
    n = len(relations)
    c.r = r
    c.k = k
    c.n = n
    c.classes = <i64*> calloc(max(r * k, 1), sizeof(i64))
    c.moduli = <i64*> calloc(max(k, 1), sizeof(i64))
    c.rel = <i64*> calloc(max(n * r, 1), sizeof(i64))
    c.allowed = <char*> calloc(max(r * r, 1), sizeof(char))
    c.sched_start = <int*> calloc(r + 1, sizeof(int))
    c.sched = <int*> calloc(max(n, 1), sizeof(int))
    c.perm = <int*> calloc(max(r, 1), sizeof(int))
    c.used = <char*> calloc(max(r, 1), sizeof(char))
    c.acc = <i64*> calloc(max(k, 1), sizeof(i64))
    try:
        for i in range(r):
            for q in range(k):
                c.classes[i * k + q] = classes[i][q]
            for j in range(r):
                c.allowed[i * r + j] = 1 if allowed[i][j] else 0
        for q in range(k):
            c.moduli[q] = moduli[q]
        buckets = [[] for _ in range(r)]
        for j in range(n):
            last = -1
            for i in range(r):
                c.rel[j * r + i] = relations[j][i]
                if relations[j][i]:
                    last = i
            if last >= 0:
                buckets[last].append(j)
        pos = 0
        for i in range(r):
            c.sched_start[i] = pos
            for j in buckets[i]:
                c.sched[pos] = j
                pos += 1
        c.sched_start[r] = pos
        _class_dfs(&c, 0, out)
    finally:
        free(c.classes)
        free(c.moduli)
        free(c.rel)
        free(c.allowed)
        free(c.sched_start)
        free(c.sched)
        free(c.perm)
        free(c.used)
        free(c.acc)
    return out


cdef struct LatCtx:
    int r
    int n
    i64 det
    i64* rays
    int* basis
    i64* adj
    char* allowed
    int* choice
    char* used
    i64* L
    i64* img
    int* tau
    char* seen


cdef void _lat_leaf(LatCtx* c, list out):
    cdef int i, j, t, s, a, b
    cdef int n = c.n
    cdef int r = c.r
    cdef i64 m
    cdef bint match
    cdef int found
    for i in range(n):
        for j in range(n):
            m = 0
            for t in range(n):
                m += c.rays[c.choice[t] * n + i] * c.adj[t * n + j]
            if m % c.det != 0:
                return
            c.L[i * n + j] = m // c.det
    for s in range(r):
        c.seen[s] = 0
    for i in range(r):
        for a in range(n):
            m = 0
            for b in range(n):
                m += c.L[a * n + b] * c.rays[i * n + b]
            c.img[a] = m
        found = -1
        for s in range(r):
            match = True
            for a in range(n):
                if c.rays[s * n + a] != c.img[a]:
                    match = False
                    break
            if match:
                found = s
                break
        if found < 0 or c.seen[found]:
            return
        c.seen[found] = 1
        c.tau[i] = found
    out.append((tuple([c.tau[s] for s in range(r)]),
                [[c.L[a * n + b] for b in range(n)] for a in range(n)]))


cdef void _lat_dfs(LatCtx* c, int d, list out):
    cdef int t, b
    if d == c.n:
        _lat_leaf(c, out)
        return
    b = c.basis[d]
    for t in range(c.r):
        if c.used[t] or not c.allowed[b * c.r + t]:
            continue
        c.choice[d] = t
        c.used[t] = 1
        _lat_dfs(c, d + 1, out)
        c.used[t] = 0


def lattice_admissible_perms(rays, basis, adj, det, allowed):
    cdef LatCtx c
    cdef int i, j
    cdef list out = []
    r = len(rays)
    n = len(basis)
    c.r = r
    c.n = n
    c.det = det
    c.rays = <i64*> calloc(max(r * n, 1), sizeof(i64))
    c.basis = <int*> calloc(max(n, 1), sizeof(int))
    c.adj = <i64*> calloc(max(n * n, 1), sizeof(i64))
    c.allowed = <char*> calloc(max(r * r, 1), sizeof(char))
    c.choice = <int*> calloc(max(n, 1), sizeof(int))
    c.used = <char*> calloc(max(r, 1), sizeof(char))
    c.L = <i64*> calloc(max(n * n, 1), sizeof(i64))
    c.img = <i64*> calloc(max(n, 1), sizeof(i64))
    c.tau = <int*> calloc(max(r, 1), sizeof(int))
    c.seen = <char*> calloc(max(r, 1), sizeof(char))
    try:
        for i in range(r):
            for j in range(n):
                c.rays[i * n + j] = rays[i][j]
            for j in range(r):
                c.allowed[i * r + j] = 1 if allowed[i][j] else 0
        for i in range(n):
            c.basis[i] = basis[i]
            for j in range(n):
                c.adj[i * n + j] = adj[i][j]
        _lat_dfs(&c, 0, out)
    finally:
        free(c.rays)
        free(c.basis)
        free(c.adj)
        free(c.allowed)
        free(c.choice)
        free(c.used)
        free(c.L)
        free(c.img)
        free(c.tau)
        free(c.seen)
    out.sort(key=lambda p: p[0])
    return out
