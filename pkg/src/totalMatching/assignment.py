"""Exact maximum-weight rectangular assignment (Kuhn-Munkres with vertex labels) over Fractions."""

from fractions import Fraction
from typing import List, Sequence, Tuple


class KuhnMunkres:
    """Max-weight assignment of every row of a rows <= columns profit matrix to a distinct column."""

    def __init__(self, profit: Sequence[Sequence]):
        self.transpose = len(profit) > len(profit[0]) if profit else False
        graph = [[Fraction(value) for value in row] for row in profit]
        if self.transpose:
            graph = [list(column) for column in zip(*graph)]
        self.graph = graph
        self.n = len(graph)
        self.m = len(graph[0]) if graph else 0
        self.lx = [max(row) for row in graph]
        self.ly = [Fraction(0)] * self.m
        self.match = [-1] * self.m
        self.visx = [False] * self.n
        self.visy = [False] * self.m
        self.slack = [None] * self.m

    def find(self, x: int) -> bool:
        self.visx[x] = True
        for y in range(self.m):
            if self.visy[y]:
                continue
            gap = self.lx[x] + self.ly[y] - self.graph[x][y]
            if gap == 0:
                self.visy[y] = True
                if self.match[y] == -1 or self.find(self.match[y]):
                    self.match[y] = x
                    return True
            elif self.slack[y] is None or gap < self.slack[y]:
                self.slack[y] = gap
        return False

    def __call__(self) -> List[Tuple[int, int]]:
        for x in range(self.n):
            self.slack = [None] * self.m
            while True:
                self.visx = [False] * self.n
                self.visy = [False] * self.m
                if self.find(x):
                    break
                d = min(self.slack[y] for y in range(self.m) if not self.visy[y])
                for i in range(self.n):
                    if self.visx[i]:
                        self.lx[i] -= d
                for y in range(self.m):
                    if self.visy[y]:
                        self.ly[y] += d
                    elif self.slack[y] is not None:
                        self.slack[y] -= d
        pairs = [(x, y) for y, x in enumerate(self.match) if x != -1]
        if self.transpose:
            pairs = [(y, x) for x, y in pairs]
        return sorted(pairs)


def solve_assignment(profit: Sequence[Sequence]) -> Tuple[Fraction, List[Tuple[int, int]]]:
    """Maximum total profit of a matching that saturates the smaller side, with its (row, column) pairs."""
    if not profit or not profit[0]:
        return Fraction(0), []
    pairs = KuhnMunkres(profit)()
    return sum((Fraction(profit[i][j]) for i, j in pairs), Fraction(0)), pairs
