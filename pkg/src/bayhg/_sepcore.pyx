# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled separation kernel over bitmask-encoded hypergraphs.

Same contract as the pure-Python twin in ``_seppy``, restricted to at most
63 vertices (one machine word).  The caller dispatches on vertex count.
"""

from libc.stdlib cimport free, malloc

ctypedef unsigned long long u64


cdef inline int lowest_bit(u64 x) nogil:
    cdef int i = 0
    while not (x & 1):
        x >>= 1
        i += 1
    return i


def moral_separates(int n, unsigned long long[::1] tails,
                    unsigned long long[::1] heads,
                    unsigned long long a, unsigned long long b,
                    unsigned long long c):
    """Moral-graph separation query; see ``_seppy.moral_separates``."""
    if a == 0 or b == 0:
        return True
    cdef Py_ssize_t m = tails.shape[0]
    cdef Py_ssize_t i
    cdef u64 s = a | b | c
    cdef bint changed = True
    cdef bint blocked_hit = False
    cdef u64 add, t, h, hh, tt, vb, ub, wb
    cdef u64 rem, comp, frontier, ff, nxt, bd, bb, reach
    cdef int v
    cdef u64 *adj
    cdef u64 *conb
    cdef char *keep

    while changed:
        changed = False
        for i in range(m):
            if heads[i] & s:
                add = (tails[i] | heads[i]) & ~s
                if add:
                    s |= add
                    changed = True

    adj = <u64 *> malloc(n * sizeof(u64))
    conb = <u64 *> malloc(n * sizeof(u64))
    keep = <char *> malloc(m * sizeof(char) if m else 1)
    if adj == NULL or conb == NULL or keep == NULL:
        free(adj)
        free(conb)
        free(keep)
        raise MemoryError()
    for v in range(n):
        adj[v] = 0
        conb[v] = 0

    try:
        # skeleton of the induced shadow: head cliques plus tail-head links
        for i in range(m):
            keep[i] = 1 if (heads[i] & s) and not ((tails[i] | heads[i]) & ~s) else 0
            if not keep[i]:
                continue
            t = tails[i]
            h = heads[i]
            hh = h
            while hh:
                vb = hh & (~hh + 1)
                v = lowest_bit(vb)
                adj[v] |= (h & ~vb) | t
                conb[v] |= h & ~vb
                hh ^= vb
            tt = t
            while tt:
                ub = tt & (~tt + 1)
                adj[lowest_bit(ub)] |= h
                tt ^= ub

        # chain components of the kept edges; complete each boundary
        rem = s
        while rem:
            comp = rem & (~rem + 1)
            frontier = comp
            while frontier:
                nxt = 0
                ff = frontier
                while ff:
                    wb = ff & (~ff + 1)
                    nxt |= conb[lowest_bit(wb)]
                    ff ^= wb
                nxt &= ~comp
                comp |= nxt
                frontier = nxt
            bd = 0
            for i in range(m):
                if keep[i] and (heads[i] & comp):
                    bd |= tails[i]
            bd &= ~comp
            bb = bd
            while bb:
                ub = bb & (~bb + 1)
                adj[lowest_bit(ub)] |= bd & ~ub
                bb ^= ub
            rem &= ~comp

        # reachability from a, avoiding c
        reach = a
        frontier = a
        while frontier:
            nxt = 0
            ff = frontier
            while ff:
                vb = ff & (~ff + 1)
                nxt |= adj[lowest_bit(vb)]
                ff ^= vb
            nxt &= ~reach & ~c
            if nxt & b:
                blocked_hit = True
                break
            reach |= nxt
            frontier = nxt
        return not blocked_hit
    finally:
        free(adj)
        free(conb)
        free(keep)
