from __future__ import annotations

from itertools import combinations, product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from flatrinf._finite import CapExceeded
from flatrinf.fixtures import CYCLE3, D3, SWAP12, group
from flatrinf.linalg import Matrix
from flatrinf.matgroup import (MatrixGroup, NotUniqueError, automorphisms, close_group,
                               derived_series, is_solvable, maximal_normal_elementary_abelian_2,
                               normal_subgroups)

V_DIAG = {Matrix.identity(3), Matrix.diag(1, -1, -1), Matrix.diag(-1, 1, -1), Matrix.diag(-1, -1, 1)}


def naive_closure(gens):
    """Repeated all-pairs products until nothing new appears."""
    elems = set(gens) | {Matrix.identity(gens[0].rows)}
    while True:
        new = {a @ b for a in elems for b in elems} - elems
        if not new:
            return elems
        elems |= new


def exhaustive_subgroups(g: MatrixGroup):
    """Every subgroup, as the closure of each subset of size <= 2 (enough for
    the small two-generated fixtures used here)."""
    subs = set()
    for r in (0, 1, 2):
        for combo in combinations(g.elements, r):
            subs.add(frozenset(naive_closure(list(combo) or [g.identity])))
    return subs


def test_close_group_examples():
    assert len(close_group([Matrix.identity(3)])) == 1
    assert len(close_group([Matrix([[-1]])])) == 2
    ex_t = close_group([D3, CYCLE3])
    assert len(ex_t) == 12
    assert set(ex_t.elements) == naive_closure([D3, CYCLE3])


def test_close_group_errors():
    with pytest.raises(ValueError):
        close_group([Matrix([[2]])])
    with pytest.raises(ValueError):
        close_group([])
    with pytest.raises(ValueError):
        close_group([Matrix([[1, 0], [0, 1]]), Matrix([[1]])])
    with pytest.raises(CapExceeded):
        close_group([Matrix([[1, 1], [0, 1]])], cap=50)


def test_canonical_order_and_index_arithmetic():
    g = group("EX-T")
    assert list(g.elements) == sorted(g.elements, key=lambda m: m.flat())
    for i, x in enumerate(g.elements):
        assert g.elements[g.inv(i)] @ x == g.identity
        for j, y in enumerate(g.elements):
            assert g.elements[g.mul(i, j)] == x @ y


def test_normal_subgroups_examples():
    assert [len(h) for h in normal_subgroups(group("EX-C2"))] == [1, 2]
    assert [len(h) for h in normal_subgroups(group("trivial-3"))] == [1]
    subs = normal_subgroups(group("EX-T"))
    assert [len(h) for h in subs] == [1, 4, 12]
    assert set(subs[1].elements) == V_DIAG


@pytest.mark.parametrize("name", ["EX-T", "S3-perm", "EX-S4", "V-diag"])
def test_normal_subgroups_match_exhaustive_scan(name):
    g = group(name)
    oracle = {h for h in exhaustive_subgroups(g)
              if all(g.inverse(x) @ y @ x in h for x in g for y in h)}
    assert {frozenset(h.elements) for h in normal_subgroups(g)} == oracle


def test_maximal_elementary_abelian():
    assert set(maximal_normal_elementary_abelian_2(group("EX-T")).elements) == V_DIAG
    assert maximal_normal_elementary_abelian_2(group("EX-C2")) == group("EX-C2")
    assert maximal_normal_elementary_abelian_2(group("S3-perm")) is None
    assert maximal_normal_elementary_abelian_2(group("trivial-1")) is None


def test_maximal_elementary_abelian_unique_center():
    # S3 x C2: the central C2 is the only nontrivial normal exponent-2 subgroup
    lift = [Matrix.block_diag([Matrix([[1]]), m]) for m in (SWAP12, CYCLE3)]
    g = close_group([Matrix.diag(-1, 1, 1, 1)] + lift)
    a = maximal_normal_elementary_abelian_2(g)
    assert len(g) == 12
    assert set(a.elements) == {Matrix.identity(4), Matrix.diag(-1, 1, 1, 1)}


def test_maximal_elementary_abelian_not_unique():
    # dihedral group of order 8 in GL(2,Z) has two normal Klein subgroups
    r = Matrix([[0, -1], [1, 0]])
    s = Matrix([[1, 0], [0, -1]])
    with pytest.raises(NotUniqueError):
        maximal_normal_elementary_abelian_2(close_group([r, s]))


def test_derived_series_examples():
    c2 = derived_series(group("EX-C2"))
    assert [len(h) for h in c2] == [2, 1] and is_solvable(c2)
    t = derived_series(group("EX-T"))
    assert [len(h) for h in t] == [12, 4, 1] and is_solvable(t)
    assert set(t[1].elements) == V_DIAG
    triv = derived_series(group("trivial-1"))
    assert [len(h) for h in triv] == [1] and is_solvable(triv)
    a5 = derived_series(group("A5-perm"))
    assert [len(h) for h in a5] == [60] and not is_solvable(a5)


def test_structural_scan_cap():
    with pytest.raises(CapExceeded):
        normal_subgroups(group("EX-T"), cap=5)


def _brute_force_automorphism_count(g: MatrixGroup) -> int:
    """Try every tuple of generator images, extend along the Cayley graph and
    keep bijective maps that pass a full homomorphism test."""
    gens = list(g.generators)
    count = 0
    elems = list(g.elements)
    for imgs in product(elems, repeat=len(gens)):
        phi = {g.identity: g.identity}
        frontier = [g.identity]
        ok = True
        while frontier and ok:
            x = frontier.pop()
            for s, t in zip(gens, imgs):
                y, v = x @ s, phi[x] @ t
                if y in phi:
                    ok = phi[y] == v
                    if not ok:
                        break
                else:
                    phi[y] = v
                    frontier.append(y)
        if ok and len(set(phi.values())) == len(g) and \
                all(phi[a @ b] == phi[a] @ phi[b] for a in elems for b in elems):
            count += 1
    return count


def test_automorphism_counts():
    assert len(automorphisms(group("EX-C2"))) == 1
    v = close_group([Matrix.diag(1, -1, -1), Matrix.diag(-1, 1, -1)])
    assert len(automorphisms(v)) == 6
    assert len(automorphisms(group("EX-T"))) == 24
    for name in ("V-diag", "S3-perm", "EX-T"):
        g = group(name)
        assert len(automorphisms(g)) == _brute_force_automorphism_count(g)


@pytest.mark.parametrize("name", ["EX-T", "S3-perm", "V-diag"])
def test_automorphisms_form_a_group(name):
    auts = automorphisms(group(name))
    images = {a.images for a in auts}
    assert any(a.is_identity() for a in auts)
    for a in auts:
        assert a.inverse().images in images
        for b in auts:
            assert a.compose(b).images in images


@given(st.data())
def test_automorphisms_are_homomorphisms(data):
    g = group("EX-T")
    phi = data.draw(st.sampled_from(automorphisms(g)))
    x = data.draw(st.sampled_from(g.elements))
    y = data.draw(st.sampled_from(g.elements))
    assert phi(x @ y) == phi(x) @ phi(y)
