from __future__ import annotations

import pytest

from flatrinf.clifford import (DecompositionError, block_action, commutant_dimension,
                               decompose_restriction, is_absolutely_irreducible)
from flatrinf.fixtures import CYCLE3, D3, FIXTURES, group
from flatrinf.linalg import Matrix, intertwiner_basis
from flatrinf.matgroup import close_group, maximal_normal_elementary_abelian_2
from flatrinf.permgroup import block_perm_matrix, from_cycles, identity_perm


def ex_t_decomposition():
    g = group("EX-T")
    return g, decompose_restriction(g, maximal_normal_elementary_abelian_2(g))


def test_ex_t_decomposition():
    g, bd = ex_t_decomposition()
    assert (bd.k, bd.e) == (3, 1)
    assert bd.basis_change == Matrix.identity(3)
    sign_vectors = {bd.generator_signs(i) for i in range(3)}
    assert len(sign_vectors) == 3 and (1, 1) not in sign_vectors
    for i in range(3):
        values = [bd.character(i, a) for a in bd.subgroup]
        assert sorted(values) == [-1, -1, 1, 1]  # surjective, balanced
    assert len(bd.kernel_C) == 4 and len(bd.image_Q) == 3
    assert bd.is_transitive()


def test_ex_c2_decomposition():
    g = group("EX-C2")
    bd = decompose_restriction(g, g)
    assert (bd.k, bd.e) == (1, 1)
    assert bd.character(0, Matrix([[-1]])) == -1


def test_diagonal_klein_is_not_transitive():
    g = group("V-diag")
    bd = decompose_restriction(g, g)
    assert bd.k == 3
    assert len(bd.image_Q) == 1 and not bd.is_transitive()


def test_block_action_examples():
    g, bd = ex_t_decomposition()
    for a in bd.subgroup:
        assert block_action(bd, a) == identity_perm(3)
    assert block_action(bd, Matrix.identity(3)) == identity_perm(3)
    p = block_action(bd, CYCLE3)
    assert sorted(p) == [0, 1, 2] and all(p[i] != i for i in range(3))


def test_decompose_errors():
    g = group("EX-T")
    with pytest.raises(DecompositionError):
        decompose_restriction(g, close_group([D3]))  # not normal
    with pytest.raises(DecompositionError):
        decompose_restriction(g, g)  # order-3 elements


def _sign(block, n=6):
    v = [1] * n
    v[2 * block] = v[2 * block + 1] = -1
    return Matrix.diag(*v)


def test_scrambled_basis_with_two_dimensional_blocks():
    """k = 3 blocks of size 2, presented in a non-adapted integral basis."""
    s = [_sign(i) for i in range(3)]
    p = block_perm_matrix(from_cycles(3, (1, 2, 3)), 2)
    r = Matrix([[0, -1], [1, -1]])
    rot = Matrix.block_diag([r, r, r])
    u = Matrix([[1, 1, 0, 0, 0, 0], [0, 1, 1, 0, 0, 0], [0, 0, 1, 1, 0, 0],
                [0, 0, 0, 1, 1, 0], [0, 0, 0, 0, 1, 1], [0, 0, 0, 0, 0, 1]])
    ui = u.inverse()
    conj = [u @ m @ ui for m in (s[0] @ s[1], s[1] @ s[2], p, rot)]
    g = close_group(conj)
    a = close_group(conj[:2])
    bd = decompose_restriction(g, a)
    assert (bd.k, bd.e) == (3, 2)
    assert bd.is_transitive()
    for x in a:
        xb = bd.to_block_basis(x)
        assert xb.is_diagonal()
        for i, span in enumerate(bd.block_spans):
            assert all(xb[j, j] == bd.character(i, x) for j in span)
    for m in g:
        tau = block_action(bd, m)
        mb = bd.to_block_basis(m)
        for i in range(3):
            for j in range(3):
                nonzero = not bd.block(mb, i, j).is_zero()
                assert nonzero == (tau[j] == i)
    assert len(bd.kernel_C) * len(bd.image_Q) == len(g)


@pytest.mark.parametrize("name", ["EX-T", "EX-O", "EX-S4", "EX-80", "V-diag", "EX-C2"])
def test_kernel_times_image_is_group_order(name):
    g = group(name)
    bd = decompose_restriction(g, maximal_normal_elementary_abelian_2(g))
    assert len(bd.kernel_C) * len(bd.image_Q) == len(g)
    assert bd.k * bd.e == g.degree


# commutant

def test_commutant_examples():
    assert commutant_dimension(group("trivial-3")) == 9
    assert commutant_dimension(group("EX-T")) == 1
    assert commutant_dimension(group("V-diag")) == 3
    assert is_absolutely_irreducible(group("EX-T"))
    assert is_absolutely_irreducible(group("EX-C2"))
    assert not is_absolutely_irreducible(group("Z3"))


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_commutant_matches_direct_solve(name):
    g = group(name)
    oracle = intertwiner_basis([(m, m) for m in g.elements], g.degree)
    assert commutant_dimension(g) == len(oracle)
