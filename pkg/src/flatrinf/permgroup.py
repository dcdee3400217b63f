"""Permutation groups on block indices.

Permutations are tuples of 0-based images; ``p[i]`` is the image of ``i``.
Composition follows ``(s ∘ t)(i) = s(t(i))``.  Serialized forms (image
sequences in certificates and reports) are 1-based.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from math import factorial
from typing import Iterable, Sequence

from . import _finite
from ._finite import CapExceeded
from .linalg import Matrix

Permutation = tuple[int, ...]


def identity_perm(k: int) -> Permutation:
    return tuple(range(k))


def compose(s: Permutation, t: Permutation) -> Permutation:
    """``s ∘ t``: apply ``t`` first."""
    return tuple(s[i] for i in t)


def inverse_perm(p: Permutation) -> Permutation:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def check_perm(p: Sequence[int]) -> None:
    if sorted(p) != list(range(len(p))):
        raise ValueError(f"not a permutation: {p!r}")


def from_cycles(k: int, *cycles: Sequence[int]) -> Permutation:
    """Permutation of {0..k-1} from 1-based cycles, e.g. ``from_cycles(3, (1, 2, 3))``."""
    img = list(range(k))
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:] + type(cyc)(cyc[:1])):
            img[a - 1] = b - 1
    check_perm(img)
    return tuple(img)


def to_images(p: Permutation) -> list[int]:
    """1-based image sequence."""
    return [i + 1 for i in p]


def from_images(images: Sequence[int]) -> Permutation:
    p = tuple(i - 1 for i in images)
    check_perm(p)
    return p


def moved_set(p: Permutation) -> frozenset[int]:
    """``{i : p(i) != i}``."""
    return frozenset(i for i, j in enumerate(p) if i != j)


def is_even(p: Permutation) -> bool:
    seen = set()
    transpositions = 0
    for i in range(len(p)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = p[j]
            length += 1
        transpositions += length - 1
    return transpositions % 2 == 0


def cycle_type(p: Permutation) -> tuple[int, ...]:
    seen = set()
    lengths = []
    for i in range(len(p)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = p[j]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


def cycle_str(p: Permutation) -> str:
    """Cycle notation with 1-based points, ``()`` for the identity."""
    seen = set()
    parts = []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc = []
        j = i
        while j not in seen:
            seen.add(j)
            cyc.append(str(j + 1))
            j = p[j]
        parts.append("(" + " ".join(cyc) + ")")
    return "".join(parts) or "()"


class PermGroup:
    """Finite permutation group on ``degree`` points, elements sorted."""

    def __init__(self, degree: int, elements: Iterable[Permutation],
                 generators: Sequence[Permutation] | None = None):
        self.degree = degree
        self.elements: tuple[Permutation, ...] = tuple(sorted(set(elements)))
        self.identity = identity_perm(degree)
        if self.identity not in self.elements:
            raise ValueError("element set does not contain the identity")
        self._set = frozenset(self.elements)
        if generators is None:
            generators = _finite.generating_set(self.elements, compose, self.identity)
        self.generators = tuple(generators)

    @classmethod
    def generated(cls, degree: int, gens: Iterable[Permutation], cap: int | None = None) -> PermGroup:
        gens = list(gens)
        for g in gens:
            check_perm(g)
            if len(g) != degree:
                raise ValueError("generator degree mismatch")
        return cls(degree, _finite.closure(gens, compose, identity_perm(degree), cap=cap), gens)

    @classmethod
    def symmetric(cls, k: int) -> PermGroup:
        return cls(k, permutations(range(k)))

    @classmethod
    def alternating(cls, k: int) -> PermGroup:
        return cls(k, (p for p in permutations(range(k)) if is_even(p)))

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, p) -> bool:
        return p in self._set

    def __iter__(self):
        return iter(self.elements)

    def __eq__(self, other) -> bool:
        return isinstance(other, PermGroup) and self._set == other._set

    def __hash__(self) -> int:
        return hash(self._set)

    def __repr__(self) -> str:
        gens = ", ".join(cycle_str(g) for g in self.generators) or "()"
        return f"<PermGroup degree={self.degree} order={len(self)} gens={gens}>"

    def orbit(self, point: int) -> set[int]:
        orbit = {point}
        frontier = [point]
        while frontier:
            x = frontier.pop()
            for g in self.generators:
                y = g[x]
                if y not in orbit:
                    orbit.add(y)
                    frontier.append(y)
        return orbit


def is_transitive(q: PermGroup) -> bool:
    return len(q.orbit(0)) == q.degree


def normal_elementary_abelian_2_subgroups(q: PermGroup) -> list[PermGroup]:
    subs = _finite.normal_elementary_abelian_2_subgroups(
        q.elements, q.generators, compose, inverse_perm, q.identity)
    return sorted((PermGroup(q.degree, s) for s in subs), key=lambda h: (len(h), h.elements))


@dataclass(frozen=True)
class LemmaVerdict:
    """Outcome of the odd-degree check on one transitive group."""

    group: PermGroup
    holds: bool
    counterexample: PermGroup | None = None

    @property
    def degree(self) -> int:
        return self.group.degree


def check_odd_degree_lemma(q: PermGroup) -> LemmaVerdict:
    """Look for a nontrivial normal elementary abelian 2-subgroup of a
    transitive group.

    For odd degree none may exist; a hit is reported as a failed verdict.  For
    even degree the largest such subgroup (first in canonical order among
    those of maximal size) is returned as a negative control.
    """
    if not is_transitive(q):
        raise ValueError("the odd-degree lemma needs a transitive group")
    nontrivial = [h for h in normal_elementary_abelian_2_subgroups(q) if len(h) > 1]
    if not nontrivial:
        return LemmaVerdict(q, True)
    top = max(len(h) for h in nontrivial)
    return LemmaVerdict(q, False, next(h for h in nontrivial if len(h) == top))


def block_perm_matrix(tau: Permutation, e: int) -> Matrix:
    """The ``k*e`` square matrix whose ``(i, j)`` block is the identity when
    ``tau(i) == j`` and zero otherwise.

    With this layout ``P_s @ P_t == P_{t ∘ s}``, and ``P_tau`` maps the block
    subspace ``V_j`` onto ``V_{tau^-1(j)}``.
    """
    if e < 1:
        raise ValueError("block size must be positive")
    k = len(tau)
    n = k * e
    rows = [[0] * n for _ in range(n)]
    for i in range(k):
        j = tau[i]
        for t in range(e):
            rows[i * e + t][j * e + t] = 1
    return Matrix(rows)


# transitive subgroup enumeration

def conjugate_group(elements: Iterable[Permutation], g: Permutation) -> frozenset:
    gi = inverse_perm(g)
    return frozenset(compose(compose(g, x), gi) for x in elements)


def _centralizer(a: Permutation, sym: Sequence[Permutation]) -> list[Permutation]:
    return [c for c in sym if compose(c, a) == compose(a, c)]


def two_generated_subgroups(k: int) -> list[frozenset]:
    """Every subgroup of S_k generated by at most two elements, up to
    conjugacy (each conjugacy class is hit at least once).

    The first generator runs over cycle-type representatives, the second over
    orbit representatives of the first one's centralizer.  For ``k >= 5`` a
    closure that outgrows ``(k-1)!`` is necessarily A_k or S_k, since no other
    subgroup has index below ``k``.
    """
    sym = list(permutations(range(k)))
    ident = identity_perm(k)
    reps: dict[tuple[int, ...], Permutation] = {}
    for p in sym:
        reps.setdefault(cycle_type(p), p)
    big_cap = factorial(k - 1) if k >= 5 else None
    alt = frozenset(p for p in sym if is_even(p))
    full = frozenset(sym)
    found: set[frozenset] = set()
    for a in reps.values():
        cent = _centralizer(a, sym)
        seen: set[Permutation] = set()
        for b in sym:
            if b in seen:
                continue
            for c in cent:
                seen.add(compose(compose(c, b), inverse_perm(c)))
            try:
                h = frozenset(_finite.closure([a, b], compose, ident, cap=big_cap))
            except CapExceeded:
                h = alt if is_even(a) and is_even(b) else full
            found.add(h)
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def _signature(h: frozenset) -> tuple:
    return len(h), tuple(sorted(cycle_type(x) for x in h))


def conjugacy_representatives(k: int, groups: Iterable[frozenset]) -> list[frozenset]:
    """Drop groups conjugate in S_k to an earlier one."""
    sym = list(permutations(range(k)))
    kept: list[frozenset] = []
    for h in groups:
        sig = _signature(h)
        if any(_signature(r) == sig and any(conjugate_group(r, g) == h for g in sym) for r in kept):
            continue
        kept.append(h)
    return kept


def transitive_subgroups(k: int) -> list[PermGroup]:
    """Transitive subgroups of S_k up to conjugacy, enumerated from
    generating sets of size at most two."""
    if k < 1:
        raise ValueError("degree must be positive")
    groups = [h for h in two_generated_subgroups(k) if _orbit_is_full(h, k)]
    return [PermGroup(k, h) for h in conjugacy_representatives(k, groups)]


def _orbit_is_full(h: frozenset, k: int) -> bool:
    return len({x[0] for x in h}) == k


def all_pair_subgroups(k: int) -> set[frozenset]:
    """Every subgroup generated by a pair of elements of S_k, no reduction.
    Brute force; only sensible for ``k <= 5``."""
    sym = list(permutations(range(k)))
    ident = identity_perm(k)
    return {frozenset(_finite.closure([a, b], compose, ident))
            for a, b in combinations(sym, 2)} | {frozenset(_finite.closure([a], compose, ident))
                                                  for a in sym}
