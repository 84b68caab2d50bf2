"""Maximum clique by branch and bound with greedy-colouring bounds.

Graphs are adjacency bitsets: ``adj[v]`` has bit ``u`` set iff ``u`` and
``v`` are adjacent.  No self loops.
"""

from __future__ import annotations


def _colour_sort(P: int, adj: list[int]):
    order, bounds = [], []
    colour = 0
    uncoloured = P
    while uncoloured:
        colour += 1
        Q = uncoloured
        while Q:
            low = Q & -Q
            v = low.bit_length() - 1
            Q &= ~adj[v] & ~low
            uncoloured &= ~low
            order.append(v)
            bounds.append(colour)
    return order, bounds


def max_clique(adj: list[int]) -> list[int]:
    """Vertices of one maximum clique, ascending."""
    best: list[int] = []

    def expand(R: list[int], P: int):
        nonlocal best
        order, bounds = _colour_sort(P, adj)
        for v, bound in zip(reversed(order), reversed(bounds)):
            if len(R) + bound <= len(best):
                return
            R.append(v)
            sub = P & adj[v]
            if sub:
                expand(R, sub)
            elif len(R) > len(best):
                best = list(R)
            R.pop()
            P &= ~(1 << v)

    n = len(adj)
    if n:
        expand([], (1 << n) - 1)
    return sorted(best)


def is_clique(adj: list[int], vertices) -> bool:
    vs = list(vertices)
    return all((adj[a] >> b) & 1 for k, a in enumerate(vs) for b in vs[k + 1:])
