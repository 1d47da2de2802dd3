"""Tanner-graph queries: check-to-variable distances and girth.

Distances count edges, so a check adjacent to a variable is at distance 1 and
every check-to-variable distance is odd.
"""
import math
from typing import Iterable, List, Optional, Sequence, Union

import numpy as np

from .sparse import SparseBinaryIntMatrix

Distance = Union[int, float]


class TannerDistanceOracle:
    """Breadth-first distances in a Tanner graph.

    The oracle keeps references to the adjacency lists it was built from, so a
    graph that is grown edge by edge (as PEG does) is always queried in its
    current state.

    Attributes:
        check_adj {list} -- variables adjacent to each check
        var_adj {list} -- checks adjacent to each variable
    """

    def __init__(self, check_adj: List[List[int]], var_adj: List[List[int]]):
        self.check_adj = check_adj
        self.var_adj = var_adj

    @classmethod
    def from_matrix(cls, M: SparseBinaryIntMatrix) -> "TannerDistanceOracle":
        binary = M.mod2()
        return cls(binary.row_supports(), binary.col_supports())

    @property
    def m(self) -> int:
        return len(self.check_adj)

    @property
    def n(self) -> int:
        return len(self.var_adj)

    def distances_from_variable(
        self,
        j: int,
        targets: Optional[Iterable[int]] = None,
        max_depth: Optional[int] = None,
    ) -> np.ndarray:
        """Edge distance from variable `j` to every check.

        Args:
            j (int): variable index
            targets (Iterable[int], optional): stop as soon as all of these
                checks are reached
            max_depth (int, optional): do not expand beyond this distance

        Returns:
            np.ndarray: float distances, `inf` where unreached
        """
        check_dist = np.full(self.m, np.inf)
        var_seen = np.zeros(self.n, dtype=bool)
        var_seen[j] = True

        remaining = set(targets) if targets is not None else None
        frontier = [j]
        depth = 1

        while frontier and (max_depth is None or depth <= max_depth):
            reached = []
            for v in frontier:
                for c in self.var_adj[v]:
                    if check_dist[c] == np.inf:
                        check_dist[c] = depth
                        reached.append(c)

            if remaining is not None:
                remaining.difference_update(reached)
                if not remaining:
                    break

            frontier = []
            for c in reached:
                for v in self.check_adj[c]:
                    if not var_seen[v]:
                        var_seen[v] = True
                        frontier.append(v)
            depth += 2

        return check_dist

    def distance(self, i: int, j: int) -> Distance:
        d = self.distances_from_variable(j, targets=[i])[i]
        return math.inf if d == np.inf else int(d)


def check_variable_distance(M: SparseBinaryIntMatrix, i: int, j: int) -> Distance:
    """Edge count of a shortest path from check `i` to variable `j`."""
    return TannerDistanceOracle.from_matrix(M).distance(i, j)


def _shortest_cycle_through(
    root: int, adj: Sequence[Sequence[int]], bound: Distance
) -> Distance:
    dist = {root: 0}
    parent = {root: -1}
    queue = [root]
    best = bound
    head = 0

    while head < len(queue):
        u = queue[head]
        head += 1
        if 2 * dist[u] + 1 >= best:
            break
        for w in adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                parent[w] = u
                queue.append(w)
            elif parent[u] != w:
                best = min(best, dist[u] + dist[w] + 1)

    return best


def girth(M: SparseBinaryIntMatrix) -> Distance:
    """Length of the shortest cycle in the Tanner graph of M, `inf` if acyclic."""
    binary = M.mod2()
    m, n = binary.shape
    # variables are nodes 0..n-1, checks n..n+m-1
    adj: List[List[int]] = [
        [n + c for c in binary.col_support(j).tolist()] for j in range(n)
    ]
    adj.extend([binary.row_support(i).tolist() for i in range(m)])

    best: Distance = math.inf
    for j in range(n):
        best = _shortest_cycle_through(j, adj, best)
        if best == 4:
            break

    return best
