"""Row-by-row backtracking over 0/1 matrices with zero diagonal.

A branch fixes the first row of the adjacency matrix; workers in a process
pool each finish one branch, and the parent merges and sorts the results.
"""

import logging
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

from app.core.errors import CapExceededError

logger = logging.getLogger(__name__)

Rows = Tuple[Tuple[int, ...], ...]
Branch = Tuple[List[int], List[int], Optional[Tuple[int, ...]], int]


class RowSearch:
    """Enumerate matrices with row sums ``out`` and column sums ``inn``.

    Columns are pruned when their remaining demand exceeds the number of
    later rows that may still feed them (a row never feeds its own column).
    """

    def __init__(self, out: Sequence[int], inn: Sequence[int], budget: int):
        self.n = len(out)
        self.out = list(out)
        self.col = list(inn)
        self.budget = budget
        self.nodes = 0
        self.rows: List[Tuple[int, ...]] = []
        self.found: List[Rows] = []

    def _feasible(self, r: int) -> bool:
        later = self.n - r - 1
        for c in range(self.n):
            if self.col[c] > later - (1 if c > r else 0):
                return False
        return True

    def _take(self, choice: Tuple[int, ...], sign: int) -> None:
        for c in choice:
            self.col[c] -= sign

    def choices(self, r: int) -> List[Tuple[int, ...]]:
        avail = [c for c in range(self.n) if c != r and self.col[c] > 0]
        return list(combinations(avail, self.out[r]))

    def run(self, r: int = 0) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise CapExceededError(
                f"Enumeration exceeded the node budget of {self.budget}"
            )
        if r == self.n:
            self.found.append(tuple(self.rows))
            return
        for choice in self.choices(r):
            self._take(choice, 1)
            if self._feasible(r):
                self.rows.append(choice)
                self.run(r + 1)
                self.rows.pop()
            self._take(choice, -1)

    def run_branch(self, first_row: Tuple[int, ...]) -> None:
        self._take(first_row, 1)
        if self._feasible(0):
            self.rows.append(first_row)
            self.run(1)
            self.rows.pop()
        self._take(first_row, -1)


def enumerate_branch(payload: Branch) -> Tuple[List[Rows], int]:
    """Process-pool entrypoint: finish one first-row branch, or the whole tree"""
    out, inn, first_row, budget = payload
    search = RowSearch(out, inn, budget)
    if first_row is None:
        search.run()
    else:
        search.run_branch(first_row)
    logger.debug(
        f"Branch {first_row} produced {len(search.found)} matrices "
        f"in {search.nodes} nodes"
    )
    return search.found, search.nodes
