"""Pure Python scoring kernels.

Reference implementations used when the compiled extension is not
available (and as the ground truth it is tested against).  They operate
directly on the adjacency-dict representation of a network.
"""

from __future__ import annotations


def component_labels(adj, members):
    """Connected components of the subgraph induced by ``members``.

    ``members`` may contain names absent from ``adj``; those are ignored.
    Returns a list of sets partitioning the present members.
    """
    present = set(m for m in members if m in adj)
    components = []
    seen = set()
    for start in sorted(present):
        if start in seen:
            continue
        comp = {start}
        seen.add(start)
        stack = [start]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if v in present and v not in seen:
                    seen.add(v)
                    comp.add(v)
                    stack.append(v)
        components.append(comp)
    return components


def complex_stats(adj, members):
    """Raw per-complex quantities on the induced and neighborhood subgraphs.

    Returns ``(component_sizes, intra_weight, neighborhood_weight)`` where
    ``component_sizes`` is the non-increasing list of component sizes of the
    subgraph induced by the present members (isolated present members count
    as singleton components), ``intra_weight`` sums the weights of edges with
    both endpoints among present members, and ``neighborhood_weight`` sums
    the weights of edges with both endpoints in the closed neighborhood
    (present members plus all their direct neighbors).  Each undirected edge
    is counted once.
    """
    present = set(m for m in members if m in adj)
    closed = set(present)
    intra = 0.0
    # sorted iteration keeps float accumulation order deterministic
    for u in sorted(present):
        for v, w in adj[u].items():
            if v in present:
                if u < v:
                    intra += w
            else:
                closed.add(v)
    nb_weight = 0.0
    for u in sorted(closed):
        for v, w in adj[u].items():
            if u < v and v in closed:
                nb_weight += w
    sizes = sorted((len(c) for c in component_labels(adj, present)), reverse=True)
    return sizes, intra, nb_weight
