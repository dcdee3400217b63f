"""Group algorithms on explicit element sets.

Elements are any hashable values; the group law is passed in as ``mul`` and
``inv`` callables.  Subgroups are returned as frozensets.  Everything here is
exhaustive and meant for groups of at most a few thousand elements.
"""
from __future__ import annotations

from collections import deque
from itertools import combinations
from typing import Callable, Hashable, Iterable, Sequence, TypeVar

T = TypeVar("T", bound=Hashable)


class CapExceeded(RuntimeError):
    """A closure or scan grew past its configured size limit."""


def closure(gens: Iterable[T], mul: Callable[[T, T], T], identity: T,
            cap: int | None = None) -> list[T]:
    """Elements of the (finite) group generated by ``gens``, in BFS order."""
    gens = list(dict.fromkeys(gens))
    seen = {identity}
    order = [identity]
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = mul(x, g)
            if y not in seen:
                seen.add(y)
                order.append(y)
                if cap is not None and len(order) > cap:
                    raise CapExceeded(f"group closure exceeded {cap} elements")
                queue.append(y)
    return order


def element_order(x: T, mul, identity: T) -> int:
    k, y = 1, x
    while y != identity:
        y = mul(y, x)
        k += 1
    return k


def conjugacy_classes(elements: Sequence[T], gens: Sequence[T], mul, inv) -> list[list[T]]:
    """Conjugacy classes, each as a list; classes ordered by first element in
    ``elements`` order."""
    inv_gens = [inv(g) for g in gens]
    seen: set = set()
    classes = []
    for x in elements:
        if x in seen:
            continue
        cls = [x]
        seen.add(x)
        i = 0
        while i < len(cls):
            y = cls[i]
            for g, gi in zip(gens, inv_gens):
                z = mul(mul(g, y), gi)
                if z not in seen:
                    seen.add(z)
                    cls.append(z)
            i += 1
        classes.append(cls)
    return classes


def set_product(a: Iterable[T], b: Iterable[T], mul) -> frozenset:
    b = list(b)
    return frozenset(mul(x, y) for x in a for y in b)


def normal_closure(subset: Iterable[T], group_gens: Sequence[T], mul, inv, identity: T) -> frozenset:
    gens = list(dict.fromkeys(subset))
    h = set(closure(gens, mul, identity))
    changed = True
    while changed:
        changed = False
        for g in group_gens:
            gi = inv(g)
            for x in list(gens):
                y = mul(mul(g, x), gi)
                if y not in h:
                    gens.append(y)
                    h = set(closure(gens, mul, identity))
                    changed = True
    return frozenset(h)


def normal_subgroups(elements: Sequence[T], gens: Sequence[T], mul, inv, identity: T) -> list[frozenset]:
    """All normal subgroups.

    Every normal subgroup is generated by the conjugacy classes it contains,
    so it is a product of normal closures of single classes; those are closed
    under pairwise products until nothing new appears.
    """
    classes = conjugacy_classes(elements, gens, mul, inv)
    found = {frozenset(closure(c, mul, identity)) for c in classes}
    found.add(frozenset([identity]))
    frontier = set(found)
    while frontier:
        new = set()
        for a in frontier:
            for b in found:
                if a <= b or b <= a:
                    continue
                p = set_product(a, b, mul)
                if p not in found:
                    new.add(p)
        found |= new
        frontier = new
    return sorted(found, key=len)


def commutator(x: T, y: T, mul, inv) -> T:
    return mul(mul(inv(x), inv(y)), mul(x, y))


def derived_subgroup(gens: Sequence[T], mul, inv, identity: T) -> frozenset:
    """Commutator subgroup of the group generated by ``gens``."""
    comms = {commutator(a, b, mul, inv) for a in gens for b in gens}
    return normal_closure(comms, gens, mul, inv, identity)


def generating_set(elements: Sequence[T], mul, identity: T) -> list[T]:
    """Greedy generating set: scan ``elements`` in order, keep each element not
    already in the span of the kept ones."""
    gens: list[T] = []
    span = {identity}
    target = len(set(elements))
    for x in elements:
        if len(span) == target:
            break
        if x not in span:
            gens.append(x)
            span = set(closure(gens, mul, identity))
    return gens


def is_abelian(elements: Sequence[T], mul) -> bool:
    return all(mul(a, b) == mul(b, a) for a, b in combinations(elements, 2))


def normal_elementary_abelian_2_subgroups(elements: Sequence[T], gens: Sequence[T], mul, inv,
                                          identity: T) -> list[frozenset]:
    """All normal subgroups of exponent dividing 2, trivial one included.

    Such a subgroup is a union of classes of involutions whose members all
    commute; it is enumerated as the span of every admissible set of classes.
    """
    classes = [c for c in conjugacy_classes(elements, gens, mul, inv)
               if c[0] != identity and mul(c[0], c[0]) == identity]

    def commute(xs, ys):
        return all(mul(x, y) == mul(y, x) for x in xs for y in ys)

    good = [c for c in classes if commute(c, c)]
    found = {frozenset([identity])}
    frontier = list(found)
    while frontier:
        new = []
        for h in frontier:
            for c in good:
                if c[0] in h or not commute(c, h):
                    continue
                span = frozenset(closure(list(h) + c, mul, identity))
                if span not in found:
                    found.add(span)
                    new.append(span)
        frontier = new
    return sorted(found, key=len)
