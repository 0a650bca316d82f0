# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled state-sum kernel for the Kauffman bracket oracle.

Same contract as brunnian._statesum.state_counts; selected at import when
the extension was built.
"""

from libc.stdlib cimport malloc, free

BACKEND = "cython"


def state_counts(crossings, int edge_count):
    cdef int n = len(crossings)
    cdef int t, i, a_cnt, circles, rx, ry, x, y
    cdef unsigned long long state, bit
    cdef int *flat = <int *> malloc(4 * n * sizeof(int))
    cdef int *parent = <int *> malloc(edge_count * sizeof(int))
    if flat == NULL or parent == NULL:
        if flat != NULL:
            free(flat)
        if parent != NULL:
            free(parent)
        raise MemoryError()
    for t in range(n):
        cr = crossings[t]
        flat[4 * t + 0] = cr[0]
        flat[4 * t + 1] = cr[1]
        flat[4 * t + 2] = cr[2]
        flat[4 * t + 3] = cr[3]

    counts = {}
    try:
        for state in range(1ULL << n):
            for i in range(edge_count):
                parent[i] = i
            a_cnt = 0
            for t in range(n):
                if (state >> t) & 1ULL:
                    a_cnt += 1
                    # A-smoothing joins slots (0,1) and (2,3)
                    for k in range(2):
                        x = flat[4 * t + 2 * k]
                        y = flat[4 * t + 2 * k + 1]
                        while parent[x] != x:
                            parent[x] = parent[parent[x]]
                            x = parent[x]
                        while parent[y] != y:
                            parent[y] = parent[parent[y]]
                            y = parent[y]
                        if x != y:
                            parent[x] = y
                else:
                    # B-smoothing joins slots (0,3) and (1,2)
                    x = flat[4 * t + 0]
                    y = flat[4 * t + 3]
                    while parent[x] != x:
                        parent[x] = parent[parent[x]]
                        x = parent[x]
                    while parent[y] != y:
                        parent[y] = parent[parent[y]]
                        y = parent[y]
                    if x != y:
                        parent[x] = y
                    x = flat[4 * t + 1]
                    y = flat[4 * t + 2]
                    while parent[x] != x:
                        parent[x] = parent[parent[x]]
                        x = parent[x]
                    while parent[y] != y:
                        parent[y] = parent[parent[y]]
                        y = parent[y]
                    if x != y:
                        parent[x] = y
            circles = 0
            for i in range(edge_count):
                x = i
                while parent[x] != x:
                    x = parent[x]
                if x == i:
                    circles += 1
            key = (a_cnt, circles)
            if key in counts:
                counts[key] += 1
            else:
                counts[key] = 1
    finally:
        free(flat)
        free(parent)
    return counts
