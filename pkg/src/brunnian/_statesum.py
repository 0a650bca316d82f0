"""Pure-Python state-sum kernel for the Kauffman bracket oracle.

Enumerates all 2^c smoothings; for each state the smoothing circles are
counted with a union-find over edge identifiers.  Returns a table
``counts[(a_count, circles)] -> multiplicity`` for the caller to expand
into a polynomial.  A compiled twin with the same interface may replace
this module at import time.
"""

from __future__ import annotations

BACKEND = "python"


def state_counts(crossings: list[tuple[int, int, int, int]], edge_count: int):
    n = len(crossings)
    counts: dict[tuple[int, int], int] = {}
    parent = list(range(edge_count))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for state in range(1 << n):
        for i in range(edge_count):
            parent[i] = i
        a_count = 0
        for t in range(n):
            a, b, c, d = crossings[t]
            if (state >> t) & 1:
                a_count += 1
                pairs = ((a, b), (c, d))
            else:
                pairs = ((a, d), (b, c))
            for x, y in pairs:
                rx, ry = find(x), find(y)
                if rx != ry:
                    parent[rx] = ry
        circles = 0
        for i in range(edge_count):
            if find(i) == i:
                circles += 1
        key = (a_count, circles)
        counts[key] = counts.get(key, 0) + 1
    return counts
