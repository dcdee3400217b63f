"""Centralizer shape, integral normalizer, and its block-monomial factorization.

The integral normalizer of an absolutely irreducible finite group is built
one automorphism at a time: the intertwiners ``D`` with
``D m = phi(m) D`` form a space of dimension at most one, and the primitive
integral point of that line is kept when it is unimodular.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Sequence

from . import _finite
from ._finite import CapExceeded
from .clifford import BlockDecomposition, block_permutation_of, commutant_dimension
from .linalg import Matrix, det, intertwiner_basis, primitive_integer_scale
from .matgroup import DEFAULT_MAX_SCAN, GroupAutomorphism, MatrixGroup, automorphisms
from .permgroup import Permutation, PermGroup, block_perm_matrix, compose, inverse_perm

log = logging.getLogger(__name__)


class NotAbsolutelyIrreducible(ValueError):
    pass


class FactorizationError(ValueError):
    """An element does not factor as a block permutation times a block diagonal."""


@dataclass(frozen=True)
class Verdict:
    holds: bool
    failures: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.holds


@dataclass(frozen=True)
class NormalizerElement:
    """``matrix`` equals ``P_sigma @ diag(blocks)`` in the block basis."""

    matrix: Matrix
    sigma: Permutation | None
    blocks: tuple[Matrix, ...]
    automorphism: GroupAutomorphism | None = field(default=None, compare=False, repr=False)

    def block_form(self) -> Matrix:
        e = self.blocks[0].rows
        return block_perm_matrix(self.sigma, e) @ Matrix.block_diag(self.blocks)


@dataclass(frozen=True)
class UnrealizedAutomorphism:
    automorphism: GroupAutomorphism
    reason: str


@dataclass
class NormalizerGroup:
    elements: list[NormalizerElement]
    group: MatrixGroup
    decomposition: BlockDecomposition | None
    automorphism_count: int
    unrealized: list[UnrealizedAutomorphism]

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def matrices(self) -> list[Matrix]:
        return [x.matrix for x in self.elements]

    def matrix_group(self) -> MatrixGroup:
        return MatrixGroup(self.matrices)


def factor_element(bd: BlockDecomposition, d: Matrix) -> tuple[Permutation, tuple[Matrix, ...]]:
    """Factor ``d`` as ``P_sigma diag(c_1..c_k)`` in the block basis of ``bd``."""
    m = bd.to_block_basis(d)
    try:
        spatial = block_permutation_of(m, bd.k, bd.e)
    except ValueError as exc:
        raise FactorizationError(str(exc)) from None
    # block column j lives in block row spatial[j], i.e. sigma = spatial^-1
    sigma = inverse_perm(spatial)
    blocks = tuple(bd.block(m, spatial[j], j) for j in range(bd.k))
    if block_perm_matrix(sigma, bd.e) @ Matrix.block_diag(blocks) != m:
        raise FactorizationError("block-monomial factorization does not reconstruct the element")
    return sigma, blocks


def centralizer_membership(bd: BlockDecomposition, m: Matrix) -> bool:
    """Whether ``m`` is block diagonal (invertible blocks) in the block basis."""
    if det(m) == 0:
        raise ValueError("centralizer membership needs an invertible matrix")
    mb = bd.to_block_basis(m)
    for i in range(bd.k):
        for j in range(bd.k):
            if i != j and not bd.block(mb, i, j).is_zero():
                return False
    return True


def commutes_with_subgroup(bd: BlockDecomposition, m: Matrix) -> bool:
    return all(m @ a == a @ m for a in bd.subgroup)


def normalizes(g: MatrixGroup, d: Matrix) -> bool:
    """``d g d^-1 = g``; checked on generators, which suffices for finite g."""
    if not d.is_square() or d.rows != g.degree or det(d) == 0:
        return False
    d_inv = d.inverse()
    return all(d @ m @ d_inv in g for m in g.generators)


def is_finite_group(elements: Sequence[Matrix]) -> bool:
    """Whether ``elements`` is exactly a group: greedy generators are picked
    from the set and their closure must reproduce it."""
    pool = set(elements)
    n = elements[0].rows
    ident = Matrix.identity(n)
    if ident not in pool:
        return False
    gens: list[Matrix] = []
    span = {ident}
    for x in elements:
        if x in span:
            continue
        gens.append(x)
        try:
            span = set(_finite.closure(gens, lambda a, b: a @ b, ident, cap=len(pool)))
        except CapExceeded:
            return False
        if not span <= pool:
            return False
    return span == pool


def compute_normalizer(g: MatrixGroup, bd: BlockDecomposition | None = None,
                       cap: int = DEFAULT_MAX_SCAN) -> NormalizerGroup:
    """``N_GL(n,Z)(g)`` for an absolutely irreducible finite group ``g``."""
    dim = commutant_dimension(g)
    if dim != 1:
        raise NotAbsolutelyIrreducible(f"commutant has dimension {dim}; the normalizer is out of scope")
    n = g.degree
    found: dict[Matrix, GroupAutomorphism] = {}
    unrealized = []
    auts = automorphisms(g, cap)
    for phi in auts:
        pairs = [(m, phi(m)) for m in g.generators]
        basis = intertwiner_basis(pairs, n)
        if len(basis) > 1:
            raise NotAbsolutelyIrreducible("intertwiner space of dimension > 1")
        if not basis:
            unrealized.append(UnrealizedAutomorphism(phi, "no rational intertwiner"))
            continue
        d = primitive_integer_scale(basis[0])
        dd = det(d)
        if dd not in (1, -1):
            unrealized.append(UnrealizedAutomorphism(phi, f"primitive intertwiner has determinant {dd}"))
            continue
        for x in (d, -d):
            found.setdefault(x, phi)
    mats = sorted(found, key=lambda m: m.flat())
    if not is_finite_group(mats):
        raise AssertionError("normalizer elements are not closed under multiplication")
    log.debug("normalizer: %d elements from %d automorphisms (%d unrealized)",
              len(mats), len(auts), len(unrealized))
    elements = []
    for m in mats:
        if bd is None:
            sigma, blocks = (0,), (m,)
        else:
            try:
                sigma, blocks = factor_element(bd, m)
            except FactorizationError:
                # surfaced by verify_wreath_structure
                sigma, blocks = None, ()
        elements.append(NormalizerElement(m, sigma, blocks, found[m]))
    return NormalizerGroup(elements, g, bd, len(auts), unrealized)


def verify_wreath_structure(bd: BlockDecomposition, n: NormalizerGroup) -> tuple[Verdict, PermGroup | None]:
    """Every element is ``P_sigma diag(c_i)``; the sigmas form a subgroup S of
    S_k; the diagonal parts lie in the centralizer of the exponent-2
    subgroup.  Returns the verdict and S."""
    failures = []
    sigmas = set()
    for x in n.elements:
        try:
            sigma, blocks = factor_element(bd, x.matrix)
        except FactorizationError as exc:
            failures.append(f"{x.matrix.tolist()}: {exc}")
            continue
        sigmas.add(sigma)
        diag_part = bd.from_block_basis(Matrix.block_diag(blocks))
        if not centralizer_membership(bd, diag_part):
            failures.append(f"{x.matrix.tolist()}: block-diagonal part outside the centralizer shape")
        if not commutes_with_subgroup(bd, diag_part):
            failures.append(f"{x.matrix.tolist()}: block-diagonal part does not centralize the subgroup")
    s_group = None
    if sigmas:
        if all(compose(a, b) in sigmas for a in sigmas for b in sigmas):
            s_group = PermGroup(bd.k, sigmas)
        else:
            failures.append("block permutations do not form a subgroup of S_k")
    return Verdict(not failures, tuple(failures)), s_group


def verify_corollary_subgroup(g: MatrixGroup, a: MatrixGroup, n: NormalizerGroup) -> Verdict:
    """Every element of ``n`` normalizes ``a`` (exhaustive over ``a``)."""
    failures = []
    a_set = set(a.elements)
    for x in n.elements:
        d = x.matrix
        if not normalizes(g, d):
            failures.append(f"{d.tolist()}: does not normalize the group")
            continue
        d_inv = d.inverse()
        if {d @ y @ d_inv for y in a.elements} != a_set:
            failures.append(f"{d.tolist()}: does not normalize the subgroup")
    return Verdict(not failures, tuple(failures))
