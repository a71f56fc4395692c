# cython: language_level=3
# cython: boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled scoring kernels over a CSR adjacency view.

Same contracts as ``_pure`` but on integer node indices: callers map
protein names to indices (sorted-name order) and pass the CSR arrays.
Rows must be sorted by neighbor index so that float accumulation order
matches the pure kernels exactly.
"""

import numpy as np

ctypedef long long i64


cdef inline int _find(int[::1] parent, int x) nogil:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def member_labels(i64[::1] indptr, int[::1] indices, int[::1] members, int n_nodes):
    """Union-find roots for the subgraph induced by ``members``.

    Returns an int32 array aligned with ``members``: entry t is the position
    (within ``members``) of the component root of members[t].
    """
    cdef int nm = members.shape[0]
    pos_arr = np.full(n_nodes, -1, dtype=np.int32)
    parent_arr = np.arange(nm, dtype=np.int32)
    cdef int[::1] pos = pos_arr
    cdef int[::1] parent = parent_arr
    cdef int t, u, v, tv, ra, rb
    cdef i64 e
    for t in range(nm):
        pos[members[t]] = t
    for t in range(nm):
        u = members[t]
        for e in range(indptr[u], indptr[u + 1]):
            v = indices[e]
            tv = pos[v]
            if tv >= 0:
                ra = _find(parent, t)
                rb = _find(parent, tv)
                if ra != rb:
                    if rb < ra:  # smallest position wins: stable roots
                        ra, rb = rb, ra
                    parent[rb] = ra
    for t in range(nm):
        parent[t] = _find(parent, t)
    return parent_arr


def complex_stats(i64[::1] indptr, int[::1] indices, double[::1] weights,
                  int[::1] members, int n_nodes):
    """Component sizes plus intra and closed-neighborhood edge weight.

    Mirrors ``_pure.complex_stats``: returns ``(sizes, intra, nb_weight)``
    with ``sizes`` a non-increasing int64 array over the induced subgraph
    (singletons included) and each undirected edge summed once.
    """
    cdef int nm = members.shape[0]
    pos_arr = np.full(n_nodes, -1, dtype=np.int32)
    parent_arr = np.arange(nm, dtype=np.int32)
    mark_arr = np.zeros(n_nodes, dtype=np.uint8)
    cdef int[::1] pos = pos_arr
    cdef int[::1] parent = parent_arr
    cdef unsigned char[::1] mark = mark_arr
    cdef int t, u, v, tv, ra, rb, n_ext = 0
    cdef i64 e, cap = 0
    cdef double intra = 0.0, nbw = 0.0

    for t in range(nm):
        u = members[t]
        pos[u] = t
        mark[u] = 1
        cap += indptr[u + 1] - indptr[u]
    ext_arr = np.empty(max(cap, 1), dtype=np.int32)
    cdef int[::1] ext = ext_arr

    for t in range(nm):
        u = members[t]
        for e in range(indptr[u], indptr[u + 1]):
            v = indices[e]
            tv = pos[v]
            if tv >= 0:
                if v > u:
                    intra += weights[e]
                ra = _find(parent, t)
                rb = _find(parent, tv)
                if ra != rb:
                    if rb < ra:
                        ra, rb = rb, ra
                    parent[rb] = ra
            elif mark[v] == 0:
                mark[v] = 1
                ext[n_ext] = v
                n_ext += 1

    # closed-neighborhood weight: scan every marked node's row once.
    # Members are already index-sorted; external neighbors are sorted here
    # so the accumulation order matches the pure kernel.
    ext_arr[:n_ext].sort()
    cdef int i, j = 0
    cdef int total = nm + n_ext
    for i in range(total):
        # merge the two sorted runs on the fly
        if j < n_ext and (i - j >= nm or ext[j] < members[i - j]):
            u = ext[j]
            j += 1
        else:
            u = members[i - j]
        for e in range(indptr[u], indptr[u + 1]):
            v = indices[e]
            if v > u and mark[v] != 0:
                nbw += weights[e]

    counts_arr = np.zeros(nm, dtype=np.int64)
    cdef i64[::1] counts = counts_arr
    for t in range(nm):
        counts[_find(parent, t)] += 1
    sizes = counts_arr[counts_arr > 0]
    sizes[::-1].sort()
    return sizes, intra, nbw
