"""
Compiled counting kernels
"""

import numpy as np
from numba import njit


@njit(cache=True)
def joint_le_counts(x_rank: np.ndarray, y_rank: np.ndarray, order: np.ndarray) -> np.ndarray:
    """
    Counts #{j : x_j <= x_i and y_j <= y_i} for every i (self included).

    Rows are visited in increasing x; every group of tied x is inserted
    into a Fenwick tree indexed by y-rank before its members are queried,
    so ties in x count both ways. Cost is O(N log N).

    Args:
        x_rank (np.ndarray): Max-ranks #{j : x_j <= x_i} in 1..N.
        y_rank (np.ndarray): Max-ranks #{j : y_j <= y_i} in 1..N.
        order (np.ndarray): Indices sorting x ascending.

    Returns:
        np.ndarray: Joint counts, int64 array of length N.
    """
    n = x_rank.shape[0]
    tree = np.zeros(n + 1, dtype=np.int64)
    counts = np.empty(n, dtype=np.int64)
    start = 0
    while start < n:
        stop = start
        key = x_rank[order[start]]
        while stop < n and x_rank[order[stop]] == key:
            pos = y_rank[order[stop]]
            while pos <= n:
                tree[pos] += 1
                pos += pos & (-pos)
            stop += 1
        for t in range(start, stop):
            pos = y_rank[order[t]]
            total = 0
            while pos > 0:
                total += tree[pos]
                pos -= pos & (-pos)
            counts[order[t]] = total
        start = stop
    return counts
