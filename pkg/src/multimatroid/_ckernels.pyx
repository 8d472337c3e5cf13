# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops; same contracts as ``_pykernels``.

Bitmasks are limited to 64 bits here. ``multimatroid.kernels`` routes wider
inputs to the Python implementation.
"""

from libc.stdlib cimport malloc, free
from libc.stdint cimport uint64_t

BACKEND = "cython"


cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil


cdef int _max_inter(uint64_t* bs, Py_ssize_t n, uint64_t q) noexcept nogil:
    cdef int best = 0
    cdef int c
    cdef Py_ssize_t i
    for i in range(n):
        c = __builtin_popcountll(bs[i] & q)
        if c > best:
            best = c
    return best


cdef uint64_t* _pack(object seq, Py_ssize_t* n_out) except NULL:
    cdef Py_ssize_t n = len(seq)
    cdef uint64_t* buf = <uint64_t*> malloc((n if n > 0 else 1) * sizeof(uint64_t))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t i = 0
    for x in seq:
        buf[i] = <uint64_t> x
        i += 1
    n_out[0] = n
    return buf


def max_intersection(bases, query):
    cdef Py_ssize_t n
    cdef uint64_t* bs = _pack(bases, &n)
    try:
        return _max_inter(bs, n, <uint64_t> query)
    finally:
        free(bs)


def max_intersections(bases, queries):
    cdef Py_ssize_t n
    cdef uint64_t* bs = _pack(bases, &n)
    cdef list out = []
    try:
        for q in queries:
            out.append(_max_inter(bs, n, <uint64_t> q))
    finally:
        free(bs)
    return out


cdef inline int _find(int* parent, int x) noexcept nogil:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


cdef inline void _union(int* parent, int x, int y) noexcept nogil:
    cdef int a = _find(parent, x)
    cdef int b = _find(parent, y)
    if a != b:
        parent[a] = b


cdef int _boundary(int nv, int* vstart, int* rot, int* edge_of, int* mate,
                   uint64_t twist_mask, uint64_t ymask, uint64_t zmask,
                   int* parent, int* surv, char* alive, char* seen) noexcept nogil:
    cdef int nh = vstart[nv]
    cdef int i, v, k, h, g, e, isolated = 0, count = 0, r
    for i in range(2 * nh):
        parent[i] = i
        seen[i] = 0
    for i in range(nh):
        alive[i] = 0
    for v in range(nv):
        k = 0
        for i in range(vstart[v], vstart[v + 1]):
            h = rot[i]
            if not ((ymask >> edge_of[h]) & 1):
                surv[k] = h
                k += 1
        if k == 0:
            isolated += 1
            continue
        for i in range(k):
            alive[surv[i]] = 1
            _union(parent, 2 * surv[i] + 1, 2 * surv[(i + 1) % k])
    for h in range(nh):
        if not alive[h]:
            continue
        g = mate[h]
        if g < h:
            continue
        e = edge_of[h]
        if ((twist_mask ^ zmask) >> e) & 1:
            _union(parent, 2 * h, 2 * g)
            _union(parent, 2 * h + 1, 2 * g + 1)
        else:
            _union(parent, 2 * h, 2 * g + 1)
            _union(parent, 2 * h + 1, 2 * g)
    for h in range(nh):
        if not alive[h]:
            continue
        r = _find(parent, 2 * h)
        if not seen[r]:
            seen[r] = 1
            count += 1
        r = _find(parent, 2 * h + 1)
        if not seen[r]:
            seen[r] = 1
            count += 1
    return count + isolated


cdef class _Layout:
    cdef int nv
    cdef int nh
    cdef int* vstart
    cdef int* rot
    cdef int* edge_of
    cdef int* mate
    cdef int* parent
    cdef int* surv
    cdef char* alive
    cdef char* seen

    def __cinit__(self, vstart, rot, edge_of, mate):
        cdef int i
        self.nv = len(vstart) - 1
        self.nh = len(rot)
        cdef int m = self.nh if self.nh > 0 else 1
        self.vstart = <int*> malloc((self.nv + 1) * sizeof(int))
        self.rot = <int*> malloc(m * sizeof(int))
        self.edge_of = <int*> malloc(m * sizeof(int))
        self.mate = <int*> malloc(m * sizeof(int))
        self.parent = <int*> malloc(2 * m * sizeof(int))
        self.surv = <int*> malloc(m * sizeof(int))
        self.alive = <char*> malloc(m * sizeof(char))
        self.seen = <char*> malloc(2 * m * sizeof(char))
        if (self.vstart == NULL or self.rot == NULL or self.edge_of == NULL
                or self.mate == NULL or self.parent == NULL or self.surv == NULL
                or self.alive == NULL or self.seen == NULL):
            raise MemoryError()
        for i in range(self.nv + 1):
            self.vstart[i] = vstart[i]
        for i in range(self.nh):
            self.rot[i] = rot[i]
            self.edge_of[i] = edge_of[i]
            self.mate[i] = mate[i]

    def __dealloc__(self):
        free(self.vstart)
        free(self.rot)
        free(self.edge_of)
        free(self.mate)
        free(self.parent)
        free(self.surv)
        free(self.alive)
        free(self.seen)

    cdef int count(self, uint64_t twist_mask, uint64_t ymask, uint64_t zmask) noexcept:
        return _boundary(self.nv, self.vstart, self.rot, self.edge_of, self.mate,
                         twist_mask, ymask, zmask,
                         self.parent, self.surv, self.alive, self.seen)


def boundary_count(vstart, rot, edge_of, mate, twist_mask, ymask, zmask):
    cdef _Layout lay = _Layout(vstart, rot, edge_of, mate)
    return lay.count(<uint64_t> twist_mask, <uint64_t> ymask, <uint64_t> zmask)


def state_boundary_counts(vstart, rot, edge_of, mate, twist_mask, int nedges):
    cdef _Layout lay = _Layout(vstart, rot, edge_of, mate)
    cdef Py_ssize_t total = 1
    cdef Py_ssize_t idx, r
    cdef int e, d
    cdef uint64_t y, z
    cdef uint64_t tw = <uint64_t> twist_mask
    for e in range(nedges):
        total *= 3
    cdef list out = [0] * total
    for idx in range(total):
        y = 0
        z = 0
        r = idx
        for e in range(nedges):
            d = r % 3
            r = r // 3
            if d == 1:
                y |= (<uint64_t> 1) << e
            elif d == 2:
                z |= (<uint64_t> 1) << e
        out[idx] = lay.count(tw, y, z)
    return out
