from __future__ import annotations

import math
from itertools import permutations, product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from flatrinf.fixtures import group
from flatrinf.linalg import Matrix
from flatrinf.matgroup import automorphisms
from flatrinf.reidemeister import (FiniteGroupTable, burnside_count, reidemeister_finite,
                                   reidemeister_torus, twisted_orbits)


def cyclic(n):
    return FiniteGroupTable(tuple(tuple((a + b) % n for b in range(n)) for a in range(n)))


def s3_table():
    perms = list(permutations(range(3)))
    return FiniteGroupTable(tuple(tuple(perms.index(tuple(a[b[i]] for i in range(3))) for b in perms)
                                  for a in perms))


def naive_twisted_classes(t: FiniteGroupTable, phi):
    """Union-find over all pairs (gamma, alpha) -> gamma alpha phi(gamma)^-1."""
    parent = list(range(len(t)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in range(len(t)):
        for a in range(len(t)):
            b = t.mul(t.mul(g, a), t.inv(phi[g]))
            parent[find(a)] = find(b)
    return len({find(x) for x in range(len(t))})


def test_finite_examples():
    assert reidemeister_finite(cyclic(2), [0, 1]) == 2
    assert reidemeister_finite(s3_table(), list(range(6))) == 3
    assert reidemeister_finite(cyclic(3), [0, 2, 1]) == 1


def test_finite_rejects_non_automorphism():
    with pytest.raises(ValueError):
        reidemeister_finite(cyclic(3), [0, 0, 0])
    with pytest.raises(ValueError):
        reidemeister_finite(cyclic(3), [1, 2, 0])


def test_table_validation():
    with pytest.raises(ValueError):
        FiniteGroupTable(((0, 1), (1, 1)))
    with pytest.raises(ValueError):
        FiniteGroupTable(((0, 1, 2), (1, 0, 2), (2, 2, 0)))
    with pytest.raises(ValueError):
        FiniteGroupTable(())


@pytest.mark.parametrize("n", range(1, 9))
def test_cyclic_groups_all_automorphisms(n):
    t = cyclic(n)
    for u in range(n):
        if math.gcd(u, n) != 1:
            continue
        phi = [(u * x) % n for x in range(n)]
        r = reidemeister_finite(t, phi)
        # on Z/n the classes are cosets of (u - 1)Z/n
        assert r == math.gcd(u - 1, n) == naive_twisted_classes(t, phi)


@pytest.mark.parametrize("name", ["EX-C2", "EX-T", "S3-perm", "V-diag", "Z4"])
def test_matrix_group_automorphisms(name):
    g = group(name)
    t = FiniteGroupTable.from_matrix_group(g)
    for phi in automorphisms(g):
        orbits = twisted_orbits(t, phi.images)
        assert len(orbits) == burnside_count(t, phi.images) == naive_twisted_classes(t, phi.images)
        assert sorted(x for o in orbits for x in o) == list(range(len(t)))


def test_torus_examples():
    assert reidemeister_torus(Matrix.identity(2)) == math.inf
    assert reidemeister_torus(Matrix([[2]])) == 1
    assert reidemeister_torus(Matrix([[-1]])) == 2
    assert reidemeister_torus(Matrix([[2, 1], [1, 1]])) == 1
    with pytest.raises(ValueError):
        reidemeister_torus(Matrix([[1, 2]]))


def _lattice_index(m):
    """|Z^2 / m Z^2| by counting integer points of [0, N)^2 modulo the image,
    with N = |det| (the image contains N Z^2)."""
    (a, b), (c, d) = m
    n = abs(a * d - b * c)
    return len({_reduce(x, y, m, n) for x, y in product(range(n), repeat=2)})


def _reduce(x, y, m, n):
    # smallest representative of (x, y) + image, working modulo n
    (a, b), (c, d) = m
    best = (x, y)
    for i in range(n):
        for j in range(n):
            best = min(best, ((x + i * a + j * b) % n, (y + i * c + j * d) % n))
    return best


@given(st.lists(st.integers(-2, 2), min_size=4, max_size=4))
def test_torus_matches_lattice_count(entries):
    f = Matrix([entries[:2], entries[2:]])
    m = (f - Matrix.identity(2)).tolist()
    det_m = m[0][0] * m[1][1] - m[0][1] * m[1][0]
    r = reidemeister_torus(f)
    if det_m == 0:
        assert r == math.inf
    else:
        assert r == abs(det_m) == _lattice_index(m)
