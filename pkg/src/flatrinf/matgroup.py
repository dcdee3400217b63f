"""Finite subgroups of GL(n, Z) stored as explicit element sets."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import _finite
from ._finite import CapExceeded
from .linalg import Matrix, det

DEFAULT_MAX_ORDER = 10_000
DEFAULT_MAX_SCAN = 200


class NotUniqueError(ValueError):
    """Several maximal subgroups exist where a unique one was required."""


def _key(m: Matrix):
    return m.flat()


class MatrixGroup:
    """A finite matrix group with canonically ordered elements.

    Elements are sorted lexicographically by their row-major entries, and
    index-based helpers (``mul``, ``inv``) refer to positions in that order.
    """

    def __init__(self, elements: Iterable[Matrix], generators: Sequence[Matrix] | None = None):
        self.elements: tuple[Matrix, ...] = tuple(sorted(set(elements), key=_key))
        if not self.elements:
            raise ValueError("a group has at least one element")
        self.degree = self.elements[0].rows
        self.index = {m: i for i, m in enumerate(self.elements)}
        self.identity = Matrix.identity(self.degree)
        if self.identity not in self.index:
            raise ValueError("element set does not contain the identity")
        self.id_index = self.index[self.identity]
        self._table: dict[tuple[int, int], int] = {}
        self._inv: dict[int, int] = {}
        if generators is None:
            generators = [self.elements[i] for i in
                          _finite.generating_set(range(len(self.elements)), self.mul, self.id_index)]
        self.generators: tuple[Matrix, ...] = tuple(generators)

    # container protocol

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Matrix]:
        return iter(self.elements)

    def __contains__(self, m) -> bool:
        return m in self.index

    def __eq__(self, other) -> bool:
        return isinstance(other, MatrixGroup) and self.elements == other.elements

    def __hash__(self) -> int:
        return hash(self.elements)

    def __repr__(self) -> str:
        return f"<MatrixGroup degree={self.degree} order={self.order}>"

    # index arithmetic

    def mul(self, i: int, j: int) -> int:
        key = (i, j)
        r = self._table.get(key)
        if r is None:
            r = self._table[key] = self.index[self.elements[i] @ self.elements[j]]
        return r

    def cayley_table(self) -> list[list[int]]:
        """Full multiplication table on element indices (computed once)."""
        if len(self._table) < len(self) ** 2:
            for i in range(len(self)):
                for j in range(len(self)):
                    self.mul(i, j)
        n = len(self)
        return [[self._table[(i, j)] for j in range(n)] for i in range(n)]

    def inv(self, i: int) -> int:
        r = self._inv.get(i)
        if r is None:
            y = prev = i
            while y != self.id_index:
                prev = y
                y = self.mul(y, i)
            # prev == i^(order - 1)
            r = self._inv[i] = prev
        return r

    def inverse(self, m: Matrix) -> Matrix:
        return self.elements[self.inv(self.index[m])]

    @property
    def generator_indices(self) -> list[int]:
        return [self.index[g] for g in self.generators]

    def element_order(self, m: Matrix) -> int:
        return _finite.element_order(self.index[m], self.mul, self.id_index)

    def subgroup(self, indices: Iterable[int]) -> MatrixGroup:
        return MatrixGroup(self.elements[i] for i in indices)

    def is_abelian(self) -> bool:
        gens = self.generator_indices
        return all(self.mul(a, b) == self.mul(b, a) for a in gens for b in gens)

    def is_normal_subgroup(self, h: MatrixGroup) -> bool:
        """Exhaustive check that ``x h x^-1 = h`` for every x in self."""
        hs = set(h.elements)
        if not hs <= set(self.elements):
            return False
        return all(self.inverse(x) @ y @ x in hs for x in self.elements for y in h.elements)

    def _require_scan(self, cap: int) -> None:
        if len(self) > cap:
            raise CapExceeded(f"group of order {len(self)} exceeds structural scan cap {cap}")


def close_group(generators: Sequence[Matrix], cap: int = DEFAULT_MAX_ORDER) -> MatrixGroup:
    """Breadth-first closure of integral unimodular generators."""
    generators = list(generators)
    if not generators:
        raise ValueError("at least one generator is required")
    n = generators[0].rows
    for g in generators:
        if not g.is_square() or g.rows != n:
            raise ValueError("generators must be square of equal degree")
        if not g.is_integral():
            raise ValueError("generators must be integral")
        if det(g) not in (1, -1):
            raise ValueError(f"generator is not invertible over Z: {g.tolist()}")
    elements = _finite.closure(generators, lambda a, b: a @ b, Matrix.identity(n), cap=cap)
    return MatrixGroup(elements, generators)


def normal_subgroups(g: MatrixGroup, cap: int = DEFAULT_MAX_SCAN) -> list[MatrixGroup]:
    g._require_scan(cap)
    idx = list(range(len(g)))
    subs = _finite.normal_subgroups(idx, g.generator_indices, g.mul, g.inv, g.id_index)
    return sorted((g.subgroup(s) for s in subs), key=lambda h: (len(h), [_key(m) for m in h]))


def normal_elementary_abelian_2_subgroups(g: MatrixGroup, cap: int = DEFAULT_MAX_SCAN) -> list[MatrixGroup]:
    g._require_scan(cap)
    subs = _finite.normal_elementary_abelian_2_subgroups(
        range(len(g)), g.generator_indices, g.mul, g.inv, g.id_index)
    return sorted((g.subgroup(s) for s in subs), key=lambda h: (len(h), [_key(m) for m in h]))


def maximal_normal_elementary_abelian_2(g: MatrixGroup, cap: int = DEFAULT_MAX_SCAN) -> MatrixGroup | None:
    """The unique maximal normal subgroup of exponent 2, or None when only the
    trivial subgroup qualifies.  Raises :class:`NotUniqueError` when several
    maximal ones exist."""
    subs = normal_elementary_abelian_2_subgroups(g, cap)
    sets = [frozenset(h.elements) for h in subs]
    maximal = [h for h, s in zip(subs, sets) if not any(s < t for t in sets)]
    if len(maximal) > 1:
        raise NotUniqueError(f"{len(maximal)} maximal normal elementary abelian 2-subgroups")
    top = maximal[0]
    return None if len(top) == 1 else top


def derived_series(g: MatrixGroup, cap: int = DEFAULT_MAX_SCAN) -> list[MatrixGroup]:
    """``g ⊇ [g,g] ⊇ ...`` until the series stabilizes."""
    g._require_scan(cap)
    series = [g]
    current = frozenset(range(len(g)))
    while True:
        h = series[-1]
        sub = _finite.derived_subgroup([g.index[x] for x in h.generators], g.mul, g.inv, g.id_index)
        if sub == current:
            return series
        current = sub
        series.append(g.subgroup(sub))


def is_solvable(series: Sequence[MatrixGroup]) -> bool:
    return len(series[-1]) == 1


@dataclass(frozen=True)
class GroupAutomorphism:
    """An automorphism of ``group`` as an index map on its canonical elements."""

    group: MatrixGroup
    images: tuple[int, ...]

    def __call__(self, m: Matrix) -> Matrix:
        return self.group.elements[self.images[self.group.index[m]]]

    def compose(self, other: GroupAutomorphism) -> GroupAutomorphism:
        """``self ∘ other``."""
        return GroupAutomorphism(self.group, tuple(self.images[j] for j in other.images))

    def inverse(self) -> GroupAutomorphism:
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return GroupAutomorphism(self.group, tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def generator_images(self) -> list[Matrix]:
        return [self(x) for x in self.group.generators]


def _extend_map(table: list[list[int]], ident: int, gens: list[int],
                imgs: list[int]) -> dict[int, int] | None:
    """Extend generator images to the subgroup they generate; None if the
    assignment is not a well-defined homomorphism there."""
    phi = {ident: ident}
    queue = [ident]
    for x in queue:
        fx = phi[x]
        for s, t in zip(gens, imgs):
            y = table[x][s]
            v = table[fx][t]
            old = phi.get(y)
            if old is None:
                phi[y] = v
                queue.append(y)
            elif old != v:
                return None
    return phi


def automorphisms(g: MatrixGroup, cap: int = DEFAULT_MAX_SCAN, *, full_check: bool = True) -> list[GroupAutomorphism]:
    """All automorphisms by backtracking over generator images.

    Candidate images of each generator have the generator's order; each
    partial assignment is extended to the subgroup it generates and pruned
    on inconsistency.  Survivors must be bijective and, with ``full_check``,
    are re-validated on the whole multiplication table.
    """
    g._require_scan(cap)
    n = len(g)
    table = g.cayley_table()
    gens = g.generator_indices
    order = [_finite.element_order(i, g.mul, g.id_index) for i in range(n)]
    by_order: dict[int, list[int]] = {}
    for i, o in enumerate(order):
        by_order.setdefault(o, []).append(i)
    result = []

    def search(depth: int, imgs: list[int]):
        phi = _extend_map(table, g.id_index, gens[:depth], imgs)
        if phi is None:
            return
        if len(set(phi.values())) != len(phi):
            return
        if depth == len(gens):
            if len(phi) == n:
                result.append(tuple(phi[i] for i in range(n)))
            return
        for c in by_order[order[gens[depth]]]:
            search(depth + 1, imgs + [c])

    search(0, [])
    if full_check and result:
        t = np.array(table)
        for images in result:
            im = np.array(images)
            if not np.array_equal(im[t], t[np.ix_(im, im)]):
                raise AssertionError("backtracking produced a non-homomorphism")
    result.sort()
    return [GroupAutomorphism(g, images) for images in result]
