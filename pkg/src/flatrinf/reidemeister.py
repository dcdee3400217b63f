"""Reidemeister numbers of finite groups (twisted conjugacy) and of torus maps."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .linalg import Matrix, det, smith_normal_form
from .matgroup import GroupAutomorphism, MatrixGroup


@dataclass(frozen=True)
class FiniteGroupTable:
    """A finite group given by its multiplication table on ``0..n-1``."""

    table: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        n = len(self.table)
        if n == 0 or any(len(r) != n for r in self.table):
            raise ValueError("multiplication table must be square and non-empty")
        if any(not 0 <= x < n for r in self.table for x in r):
            raise ValueError("table entries out of range")
        ident = [e for e in range(n) if all(self.table[e][x] == x == self.table[x][e] for x in range(n))]
        if not ident:
            raise ValueError("table has no identity")
        object.__setattr__(self, "identity", ident[0])
        for r in self.table:
            if sorted(r) != list(range(n)):
                raise ValueError("table is not a Latin square")
        t = self.table
        if any(t[t[a][b]][c] != t[a][t[b][c]] for a in range(n) for b in range(n) for c in range(n)):
            raise ValueError("table is not associative")

    def __len__(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.table[a].index(self.identity)

    def is_endomorphism(self, phi: Sequence[int]) -> bool:
        n = len(self)
        return len(phi) == n and all(phi[self.table[a][b]] == self.table[phi[a]][phi[b]]
                                     for a in range(n) for b in range(n))

    def is_automorphism(self, phi: Sequence[int]) -> bool:
        return self.is_endomorphism(phi) and sorted(phi) == list(range(len(self)))

    @classmethod
    def from_matrix_group(cls, g: MatrixGroup) -> FiniteGroupTable:
        n = len(g)
        return cls(tuple(tuple(g.mul(i, j) for j in range(n)) for i in range(n)))


def twisted_orbits(t: FiniteGroupTable, phi: Sequence[int]) -> list[list[int]]:
    """Orbits of ``alpha -> gamma alpha phi(gamma)^-1``."""
    n = len(t)
    seen = [False] * n
    orbits = []
    for start in range(n):
        if seen[start]:
            continue
        orbit = {t.mul(t.mul(g, start), t.inv(phi[g])) for g in range(n)}
        for x in orbit:
            seen[x] = True
        orbits.append(sorted(orbit))
    return orbits


def burnside_count(t: FiniteGroupTable, phi: Sequence[int]) -> int:
    """Orbit count as the average number of fixed points."""
    n = len(t)
    fixed = sum(1 for g in range(n) for a in range(n)
                if t.mul(t.mul(g, a), t.inv(phi[g])) == a)
    if fixed % n:
        raise AssertionError("Burnside average is not an integer")
    return fixed // n


def reidemeister_finite(t: FiniteGroupTable, phi: Sequence[int] | GroupAutomorphism) -> int:
    """Number of twisted conjugacy classes of ``phi``.

    Counted by orbit enumeration and checked against the Burnside count.
    """
    if isinstance(phi, GroupAutomorphism):
        phi = phi.images
    phi = list(phi)
    if not t.is_automorphism(phi):
        raise ValueError("map is not an automorphism of the table")
    count = len(twisted_orbits(t, phi))
    if count != burnside_count(t, phi):
        raise AssertionError("orbit enumeration and Burnside count disagree")
    return count


def reidemeister_torus(f: Matrix) -> int | float:
    """R(f) on Z^n: ``|det(f - I)|`` when nonzero, otherwise ``math.inf``.

    The finite value is the order of ``Z^n / (f - I) Z^n`` and is checked
    against the product of the Smith invariant factors.
    """
    if not f.is_square() or not f.is_integral():
        raise ValueError("torus map must be a square integer matrix")
    m = f - Matrix.identity(f.rows)
    d = det(m)
    if d == 0:
        return math.inf
    factors, _, _ = smith_normal_form(m)
    if math.prod(factors) != abs(d):
        raise AssertionError("Smith invariant factors disagree with the determinant")
    return abs(d)
