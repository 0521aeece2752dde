# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled hot loops: canonical map codes and 3-clique listing.

Both functions take the rotation system in CSR form (``offsets`` of length
n+1, ``nbrs`` holding each vertex's neighbours in counterclockwise order)
and must return exactly what :mod:`flipforge._pykernels` returns.
"""

from cpython.mem cimport PyMem_Malloc, PyMem_Free


cdef inline int _find(const int* nbrs, int lo, int hi, int y) nogil:
    cdef int k
    for k in range(lo, hi):
        if nbrs[k] == y:
            return k - lo
    return -1


cdef int _walk(int n, const int* off, const int* nbrs, int s, int t, int direction,
               int* label, int* ref, int* queue, int* code, const int* best,
               int have_best) nogil:
    """BFS code from dart (s, t); returns -1 if it is larger than ``best``
    (aborted early), 0 if equal, 1 if smaller (``code`` then holds it)."""
    cdef int i, k, x, y, d, p, nxt = 1, head = 0, tail = 0, pos = 0, val
    cdef int state = 0 if have_best else 1
    for i in range(n):
        label[i] = 0
    label[s] = nxt
    nxt += 1
    ref[s] = t
    queue[tail] = s
    tail += 1
    while head < tail:
        x = queue[head]
        head += 1
        d = off[x + 1] - off[x]
        p = _find(nbrs, off[x], off[x + 1], ref[x])
        for k in range(d):
            y = nbrs[off[x] + ((p + direction * k) % d + d) % d]
            if label[y] == 0:
                label[y] = nxt
                nxt += 1
                ref[y] = x
                queue[tail] = y
                tail += 1
            val = label[y]
            if state == 0:
                if val < best[pos]:
                    state = 1
                elif val > best[pos]:
                    return -1
            code[pos] = val
            pos += 1
        val = 0
        if state == 0:
            if val < best[pos]:
                state = 1
            elif val > best[pos]:
                return -1
        code[pos] = val
        pos += 1
    return state


cdef inline void _put(bytearray out, int at, unsigned int v):
    out[at] = (v >> 24) & 0xFF
    out[at + 1] = (v >> 16) & 0xFF
    out[at + 2] = (v >> 8) & 0xFF
    out[at + 3] = v & 0xFF


def canonical_code(int n, offsets, nbrs):
    """Lexicographically smallest BFS code over all darts and both
    orientations, as big-endian 4-byte words prefixed by ``n``."""
    cdef int m2 = len(nbrs)
    cdef int L = m2 + n
    cdef int* off = <int*> PyMem_Malloc((n + 1) * sizeof(int))
    cdef int* nb = <int*> PyMem_Malloc((m2 + 1) * sizeof(int))
    cdef int* label = <int*> PyMem_Malloc((n + 1) * sizeof(int))
    cdef int* ref = <int*> PyMem_Malloc((n + 1) * sizeof(int))
    cdef int* queue = <int*> PyMem_Malloc((n + 1) * sizeof(int))
    cdef int* code = <int*> PyMem_Malloc((L + 1) * sizeof(int))
    cdef int* best = <int*> PyMem_Malloc((L + 1) * sizeof(int))
    cdef int i, s, k, direction, r, res, have_best = 0
    try:
        for i in range(n + 1):
            off[i] = offsets[i]
        for i in range(m2):
            nb[i] = nbrs[i]
        with nogil:
            for s in range(n):
                for k in range(off[s], off[s + 1]):
                    for r in range(2):
                        direction = 1 - 2 * r
                        res = _walk(n, off, nb, s, nb[k], direction, label, ref,
                                    queue, code, best, have_best)
                        if res == 1:
                            for i in range(L):
                                best[i] = code[i]
                            have_best = 1
        out = bytearray(4 * (L + 1))
        _put(out, 0, n)
        for i in range(L):
            _put(out, 4 * (i + 1), best[i])
        return bytes(out)
    finally:
        PyMem_Free(off)
        PyMem_Free(nb)
        PyMem_Free(label)
        PyMem_Free(ref)
        PyMem_Free(queue)
        PyMem_Free(code)
        PyMem_Free(best)


def triangles(int n, offsets, nbrs):
    """All 3-cliques ``(a, b, c)`` with ``a < b < c``, in lexicographic order."""
    cdef int m2 = len(nbrs)
    cdef int* off = <int*> PyMem_Malloc((n + 1) * sizeof(int))
    cdef int* nb = <int*> PyMem_Malloc((m2 + 1) * sizeof(int))
    cdef int* mark = <int*> PyMem_Malloc((n + 1) * sizeof(int))
    cdef int u, v, w, i, j
    out = []
    try:
        for i in range(n + 1):
            off[i] = offsets[i]
        for i in range(m2):
            nb[i] = nbrs[i]
        for i in range(n):
            mark[i] = -1
        for u in range(n):
            for i in range(off[u], off[u + 1]):
                mark[nb[i]] = u
            found = []
            for i in range(off[u], off[u + 1]):
                v = nb[i]
                if v <= u:
                    continue
                for j in range(off[v], off[v + 1]):
                    w = nb[j]
                    if w > v and mark[w] == u:
                        found.append((u, v, w))
            found.sort()
            out.extend(found)
        return out
    finally:
        PyMem_Free(off)
        PyMem_Free(nb)
        PyMem_Free(mark)
