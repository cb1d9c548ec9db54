# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Dinic max-flow over GMP rationals.

Same algorithm and arc ordering as ``_flow_py.py`` so both backends return
identical flows.  Rationals cross the boundary as ``(numerator, denominator)``
int pairs; ``None`` marks an unbounded capacity.
"""

from libc.stdlib cimport malloc, free
from libc.string cimport memset

cdef extern from "gmp.h":
    ctypedef struct __mpz_struct:
        pass
    ctypedef __mpz_struct* mpz_ptr
    ctypedef struct __mpq_struct:
        pass
    ctypedef __mpq_struct* mpq_ptr

    void mpq_init(mpq_ptr)
    void mpq_clear(mpq_ptr)
    void mpq_set(mpq_ptr, mpq_ptr)
    void mpq_set_si(mpq_ptr, long, unsigned long)
    int mpq_set_str(mpq_ptr, const char*, int)
    void mpq_canonicalize(mpq_ptr)
    void mpq_add(mpq_ptr, mpq_ptr, mpq_ptr)
    void mpq_sub(mpq_ptr, mpq_ptr, mpq_ptr)
    int mpq_cmp(mpq_ptr, mpq_ptr)
    int mpq_sgn(mpq_ptr)
    mpz_ptr mpq_numref(mpq_ptr)
    mpz_ptr mpq_denref(mpq_ptr)
    int mpz_fits_slong_p(mpz_ptr)
    long mpz_get_si(mpz_ptr)
    size_t mpz_sizeinbase(mpz_ptr, int)
    char* mpz_get_str(char*, int, mpz_ptr)

cdef long LONG_LIMIT = 2 ** 62


cdef int load(mpq_ptr q, object value) except -1:
    cdef object num = value[0]
    cdef object den = value[1]
    if -LONG_LIMIT < num < LONG_LIMIT and 0 < den < LONG_LIMIT:
        mpq_set_si(q, <long>num, <unsigned long>den)
    else:
        text = f"{num}/{den}".encode("ascii")
        if mpq_set_str(q, text, 10) != 0:
            raise ValueError("bad rational")
    mpq_canonicalize(q)
    return 0


cdef object z_to_int(mpz_ptr z):
    cdef size_t size
    cdef char* buf
    if mpz_fits_slong_p(z):
        return mpz_get_si(z)
    size = mpz_sizeinbase(z, 10) + 2
    buf = <char*>malloc(size)
    if buf == NULL:
        raise MemoryError()
    try:
        mpz_get_str(buf, 10, z)
        return int(buf.decode("ascii"))
    finally:
        free(buf)


cdef object dump(mpq_ptr q):
    return (z_to_int(mpq_numref(q)), z_to_int(mpq_denref(q)))


def max_flow_arrays(int n, tails, heads, caps, int source, int sink, init=None, bint want_flows=True):
    """Return ``((num, den), flows, source_reach, sink_reach)``; see ``_flow_py``."""
    cdef int m = len(tails)
    cdef int H = 2 * m
    cdef int a, h, x, y, u, v, i, qh, qt, plen
    cdef int* to = <int*>malloc(max(H, 1) * sizeof(int))
    cdef char* inf = <char*>malloc(max(H, 1))
    cdef __mpq_struct* res = <__mpq_struct*>malloc(max(H, 1) * sizeof(__mpq_struct))
    cdef int* start = <int*>malloc((n + 1) * sizeof(int))
    cdef int* fill = <int*>malloc((n + 1) * sizeof(int))
    cdef int* adj = <int*>malloc(max(H, 1) * sizeof(int))
    cdef int* level = <int*>malloc(n * sizeof(int))
    cdef int* ptr = <int*>malloc(n * sizeof(int))
    cdef int* queue = <int*>malloc(n * sizeof(int))
    cdef int* path = <int*>malloc((n + 1) * sizeof(int))
    cdef char* reach = <char*>malloc(n)
    cdef __mpq_struct tmp[1]
    cdef __mpq_struct value[1]
    cdef mpq_ptr bott
    cdef int initialised = 0
    if (to == NULL or inf == NULL or res == NULL or start == NULL or fill == NULL
            or adj == NULL or level == NULL or ptr == NULL or queue == NULL
            or path == NULL or reach == NULL):
        raise MemoryError()
    mpq_init(tmp)
    mpq_init(value)
    try:
        for h in range(H):
            mpq_init(&res[h])
            initialised += 1
        memset(inf, 0, max(H, 1))
        memset(start, 0, (n + 1) * sizeof(int))
        for a in range(m):
            u = tails[a]
            v = heads[a]
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError("arc endpoint out of range")
            to[2 * a] = v
            to[2 * a + 1] = u
            start[u + 1] += 1
            start[v + 1] += 1
            c = caps[a]
            if init is not None:
                load(&res[2 * a + 1], init[a])
            if c is None:
                inf[2 * a] = 1
            else:
                load(&res[2 * a], c)
                mpq_sub(&res[2 * a], &res[2 * a], &res[2 * a + 1])
        for x in range(n):
            start[x + 1] += start[x]
            fill[x] = start[x]
        for a in range(m):
            u = to[2 * a + 1]
            v = to[2 * a]
            adj[fill[u]] = 2 * a
            fill[u] += 1
            adj[fill[v]] = 2 * a + 1
            fill[v] += 1

        while True:
            for x in range(n):
                level[x] = -1
            level[source] = 0
            qh = 0
            qt = 0
            queue[qt] = source
            qt += 1
            while qh < qt:
                x = queue[qh]
                qh += 1
                for i in range(start[x], start[x + 1]):
                    h = adj[i]
                    y = to[h]
                    if level[y] < 0 and (inf[h] or mpq_sgn(&res[h]) > 0):
                        level[y] = level[x] + 1
                        queue[qt] = y
                        qt += 1
            if level[sink] < 0:
                break
            for x in range(n):
                ptr[x] = start[x]
            while True:
                plen = 0
                x = source
                while x != sink:
                    while ptr[x] < start[x + 1]:
                        h = adj[ptr[x]]
                        y = to[h]
                        if level[y] == level[x] + 1 and (inf[h] or mpq_sgn(&res[h]) > 0):
                            break
                        ptr[x] += 1
                    if ptr[x] == start[x + 1]:
                        if x == source:
                            break
                        level[x] = -1
                        plen -= 1
                        h = path[plen]
                        x = to[h ^ 1]
                        ptr[x] += 1
                        continue
                    h = adj[ptr[x]]
                    path[plen] = h
                    plen += 1
                    x = to[h]
                if x != sink:
                    break
                bott = NULL
                for i in range(plen):
                    h = path[i]
                    if not inf[h] and (bott == NULL or mpq_cmp(&res[h], bott) < 0):
                        bott = &res[h]
                if bott == NULL:
                    raise OverflowError("unbounded flow along an all-infinite path")
                mpq_set(tmp, bott)
                for i in range(plen):
                    h = path[i]
                    if not inf[h]:
                        mpq_sub(&res[h], &res[h], tmp)
                    if not inf[h ^ 1]:
                        mpq_add(&res[h ^ 1], &res[h ^ 1], tmp)

        flows = [dump(&res[2 * a + 1]) for a in range(m)] if want_flows else None
        for a in range(m):
            if to[2 * a + 1] == source:
                mpq_add(value, value, &res[2 * a + 1])
            if to[2 * a] == source:
                mpq_sub(value, value, &res[2 * a + 1])

        memset(reach, 0, n)
        reach[source] = 1
        qh = 0
        qt = 0
        queue[qt] = source
        qt += 1
        while qh < qt:
            x = queue[qh]
            qh += 1
            for i in range(start[x], start[x + 1]):
                h = adj[i]
                y = to[h]
                if not reach[y] and (inf[h] or mpq_sgn(&res[h]) > 0):
                    reach[y] = 1
                    queue[qt] = y
                    qt += 1
        source_reach = [reach[x] == 1 for x in range(n)]

        memset(reach, 0, n)
        reach[sink] = 1
        qh = 0
        qt = 0
        queue[qt] = sink
        qt += 1
        while qh < qt:
            y = queue[qh]
            qh += 1
            for i in range(start[y], start[y + 1]):
                h = adj[i]
                x = to[h]
                if not reach[x] and (inf[h ^ 1] or mpq_sgn(&res[h ^ 1]) > 0):
                    reach[x] = 1
                    queue[qt] = x
                    qt += 1
        sink_reach = [reach[x] == 1 for x in range(n)]
        return dump(value), flows, source_reach, sink_reach
    finally:
        for h in range(initialised):
            mpq_clear(&res[h])
        mpq_clear(tmp)
        mpq_clear(value)
        free(to)
        free(inf)
        free(res)
        free(start)
        free(fill)
        free(adj)
        free(level)
        free(ptr)
        free(queue)
        free(path)
        free(reach)
