"""Exact bottleneck distance between barcodes.

Matched intervals pay the sup-norm gap of their endpoints; unmatched finite
intervals may be deleted to the diagonal at half their length; essential
intervals can only match essential intervals. The distance is found by
binary search over the finite candidate set of all pairwise and diagonal
costs, with feasibility decided by maximum bipartite matching.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .homology import Barcode, Interval


@dataclass(frozen=True)
class MatchingInstance:
    """A threshold-decision instance: can left and right be matched within delta?"""

    left: Barcode
    right: Barcode
    delta: float


def interval_cost(I: Interval, J: Interval) -> float:
    """Sup-norm matching cost; infinite when exactly one death is infinite."""
    if I.essential and J.essential:
        return abs(I.birth - J.birth)
    if I.essential or J.essential:
        return math.inf
    return max(abs(I.birth - J.birth), abs(I.death - J.death))


def diagonal_cost(I: Interval) -> float:
    """Cost of deleting an interval to the diagonal: half its length."""
    if I.essential:
        return math.inf
    return (I.death - I.birth) / 2.0


def _cost_tables(A: Barcode, B: Barcode) -> tuple[list[list[float]], list[float], list[float]]:
    pair = [[interval_cost(a, b) for b in B] for a in A]
    return pair, [diagonal_cost(a) for a in A], [diagonal_cost(b) for b in B]


def _feasible(
    pair: list[list[float]], diag_a: list[float], diag_b: list[float], delta: float
) -> bool:
    """Perfect-matching test: each side gets one diagonal vertex per interval
    of the other side; diagonal-diagonal edges are free."""
    n, k = len(diag_a), len(diag_b)
    size = n + k
    # left vertices: 0..n-1 intervals of A, n..n+k-1 diagonal slots for B
    # right vertices: 0..k-1 intervals of B, k..k+n-1 diagonal slots for A
    adjacency: list[list[int]] = [[] for _ in range(size)]
    for i in range(n):
        row = pair[i]
        adjacency[i] = [j for j in range(k) if row[j] <= delta]
        if diag_a[i] <= delta:
            adjacency[i].append(k + i)
    diagonal_slots = list(range(k, k + n))
    for j in range(k):
        if diag_b[j] <= delta:
            adjacency[n + j].append(j)
        adjacency[n + j].extend(diagonal_slots)

    match_right = [-1] * size

    def augment(u: int, visited: list[bool]) -> bool:
        for v in adjacency[u]:
            if visited[v]:
                continue
            visited[v] = True
            if match_right[v] == -1 or augment(match_right[v], visited):
                match_right[v] = u
                return True
        return False

    for u in range(size):
        if not augment(u, [False] * size):
            return False
    return True


def feasible(instance: MatchingInstance) -> bool:
    """Decide whether a partial matching exists with all costs <= delta:
    matched pairs within interval_cost, every unmatched interval within
    diagonal_cost."""
    pair, diag_a, diag_b = _cost_tables(instance.left, instance.right)
    return _feasible(pair, diag_a, diag_b, instance.delta)


def bottleneck_distance(A: Barcode, B: Barcode) -> float:
    """Minimum delta for which a feasible matching exists.

    Returns +inf exactly when the essential-interval counts differ (no
    matching can ever pair an essential with a finite interval or delete it).
    """
    if sum(iv.essential for iv in A) != sum(iv.essential for iv in B):
        return math.inf
    pair, diag_a, diag_b = _cost_tables(A, B)
    candidates = {0.0}
    for row in pair:
        candidates.update(c for c in row if math.isfinite(c))
    candidates.update(c for c in diag_a if math.isfinite(c))
    candidates.update(c for c in diag_b if math.isfinite(c))
    ordered = sorted(candidates)
    lo, hi = 0, len(ordered) - 1
    # feasibility is monotone in delta and always holds at the largest candidate
    while lo < hi:
        mid = (lo + hi) // 2
        if _feasible(pair, diag_a, diag_b, ordered[mid]):
            hi = mid
        else:
            lo = mid + 1
    return ordered[lo]
