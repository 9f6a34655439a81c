"""Pure-Python separation kernel over bitmask-encoded hypergraphs.

Mirrors the compiled extension in ``_sepcore.pyx``; works for any vertex
count because Python integers are unbounded.
"""

from __future__ import annotations


def moral_separates(n, tails, heads, a, b, c):
    """Moral-graph separation query on an acyclic directed hypergraph.

    Encodes the full pipeline: close a|b|c into the smallest ancestral set,
    keep the edges inside it, moralize the shadow (head cliques, tail-head
    links, completed component boundaries) and test reachability from a to
    b avoiding c.  All sets are bitmasks over the vertex indices.
    """
    if a == 0 or b == 0:
        return True
    m = len(tails)
    s = a | b | c
    changed = True
    while changed:
        changed = False
        for i in range(m):
            if heads[i] & s:
                add = (tails[i] | heads[i]) & ~s
                if add:
                    s |= add
                    changed = True

    idx = [
        i
        for i in range(m)
        if heads[i] & s and not ((tails[i] | heads[i]) & ~s)
    ]

    adj = [0] * n
    conb = [0] * n
    for i in idx:
        t = tails[i]
        h = heads[i]
        hh = h
        while hh:
            vb = hh & -hh
            v = vb.bit_length() - 1
            adj[v] |= (h & ~vb) | t
            conb[v] |= h & ~vb
            hh ^= vb
        tt = t
        while tt:
            ub = tt & -tt
            adj[ub.bit_length() - 1] |= h
            tt ^= ub

    rem = s
    while rem:
        comp = rem & -rem
        frontier = comp
        while frontier:
            nxt = 0
            ff = frontier
            while ff:
                wb = ff & -ff
                nxt |= conb[wb.bit_length() - 1]
                ff ^= wb
            nxt &= ~comp
            comp |= nxt
            frontier = nxt
        bd = 0
        for i in idx:
            if heads[i] & comp:
                bd |= tails[i]
        bd &= ~comp
        bb = bd
        while bb:
            ub = bb & -bb
            adj[ub.bit_length() - 1] |= bd & ~ub
            bb ^= ub
        rem &= ~comp

    reach = a
    frontier = a
    while frontier:
        nxt = 0
        ff = frontier
        while ff:
            vb = ff & -ff
            nxt |= adj[vb.bit_length() - 1]
            ff ^= vb
        nxt &= ~reach & ~c
        if nxt & b:
            return False
        reach |= nxt
        frontier = nxt
    return True
