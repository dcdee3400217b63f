"""Character-block decomposition of a matrix group over a normal subgroup of
exponent 2, and the permutation action of the group on the blocks."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from . import _finite
from .linalg import Matrix, column_echelon_basis, intertwiner_basis, nullspace
from .matgroup import MatrixGroup
from .permgroup import Permutation, PermGroup, is_transitive


class DecompositionError(ValueError):
    """The input does not satisfy the hypotheses the decomposition relies on."""


def commutant_dimension(g: MatrixGroup | Iterable[Matrix]) -> int:
    """Dimension over Q of the matrices commuting with every element."""
    mats = list(g.generators if isinstance(g, MatrixGroup) else g)
    if not mats:
        raise ValueError("need at least one matrix")
    n = mats[0].rows
    return len(intertwiner_basis([(m, m) for m in mats], n))


def is_absolutely_irreducible(g: MatrixGroup | Iterable[Matrix]) -> bool:
    return commutant_dimension(g) == 1


@dataclass(frozen=True)
class BlockDecomposition:
    group: MatrixGroup
    subgroup: MatrixGroup
    subgroup_generators: tuple[Matrix, ...]
    basis_change: Matrix
    basis_inverse: Matrix
    k: int
    e: int
    # characters[i][j]: value of block i's character on subgroup.elements[j]
    characters: tuple[tuple[int, ...], ...]
    actions: dict = field(repr=False, compare=False)
    kernel_C: MatrixGroup = field(repr=False, compare=False)
    image_Q: PermGroup = field(repr=False, compare=False)

    @property
    def block_spans(self) -> list[range]:
        return [range(i * self.e, (i + 1) * self.e) for i in range(self.k)]

    def generator_signs(self, block: int) -> tuple[int, ...]:
        """Character values of ``block`` on the ordered subgroup generators."""
        idx = self.subgroup.index
        return tuple(self.characters[block][idx[a]] for a in self.subgroup_generators)

    def character(self, block: int, a: Matrix) -> int:
        return self.characters[block][self.subgroup.index[a]]

    def to_block_basis(self, m: Matrix) -> Matrix:
        return self.basis_inverse @ m @ self.basis_change

    def from_block_basis(self, m: Matrix) -> Matrix:
        return self.basis_change @ m @ self.basis_inverse

    def block(self, m: Matrix, i: int, j: int) -> Matrix:
        """The ``(i, j)`` block of ``m``, which must already be in block basis."""
        e = self.e
        return m.submatrix(range(i * e, (i + 1) * e), range(j * e, (j + 1) * e))

    def is_transitive(self) -> bool:
        return is_transitive(self.image_Q)

    def block_restriction(self, i: int) -> list[Matrix]:
        """Block ``i`` of every element of the block-diagonal kernel C."""
        return [self.block(self.to_block_basis(c), i, i) for c in self.kernel_C]


def block_permutation_of(m_block: Matrix, k: int, e: int) -> Permutation:
    """``s`` with ``m V_j = V_{s(j)}`` for a matrix already in block basis."""
    images = []
    for j in range(k):
        rows = [i for i in range(k)
                if any(m_block[i * e + r, j * e + c] != 0 for r in range(e) for c in range(e))]
        if len(rows) != 1:
            raise DecompositionError(f"matrix does not permute the blocks (column block {j + 1})")
        images.append(rows[0])
    if sorted(images) != list(range(k)):
        raise DecompositionError("matrix maps two blocks onto the same block")
    return tuple(images)


def block_action(bd: BlockDecomposition, m: Matrix) -> Permutation:
    """Permutation ``s`` of the blocks with ``m V_i = V_{s(i)}``."""
    cached = bd.actions.get(m)
    if cached is not None:
        return cached
    return block_permutation_of(bd.to_block_basis(m), bd.k, bd.e)


def _split(spaces, x: Matrix, n: int):
    out = []
    ident = Matrix.identity(n)
    for signs, basis in spaces:
        for eps in (-1, 1):
            w = Matrix.from_columns(basis, n)
            kernel = nullspace((x - ident.scale(eps)) @ w)
            if kernel:
                vecs = [(w @ v).column(0) for v in kernel]
                out.append((signs + (eps,), vecs))
    return out


def decompose_restriction(g: MatrixGroup, a: MatrixGroup) -> BlockDecomposition:
    """Split Q^n into the simultaneous ±1 eigenspaces of ``a`` and record how
    ``g`` permutes them.

    Blocks are ordered by their sign vectors on the canonical generators of
    ``a`` (ascending, -1 before +1); each block basis is in echelon form.
    """
    n = g.degree
    if a.degree != n or not set(a.elements) <= set(g.elements):
        raise DecompositionError("subgroup is not contained in the group")
    ident = Matrix.identity(n)
    if any(x @ x != ident for x in a):
        raise DecompositionError("subgroup contains an element of order greater than 2")
    if not g.is_normal_subgroup(a):
        raise DecompositionError("subgroup is not normal")

    a_gens = tuple(a.elements[i] for i in _finite.generating_set(range(len(a)), a.mul, a.id_index))
    spaces = [((), [ident.column(j) for j in range(n)])]
    for x in a_gens:
        spaces = _split(spaces, x, n)
    spaces.sort(key=lambda s: s[0])
    dims = {len(v) for _, v in spaces}
    if len(dims) != 1:
        raise DecompositionError(
            f"eigenspace multiplicities differ ({sorted(len(v) for _, v in spaces)}): "
            "the representation cannot be irreducible")
    if len(a) > 1 and any(all(s == 1 for s in signs) for signs, _ in spaces):
        raise DecompositionError(
            "trivial character occurs in the restriction: the representation is not faithful "
            "and irreducible with this subgroup")
    e = dims.pop()
    k = len(spaces)
    columns = []
    for _, vecs in spaces:
        columns.extend(column_echelon_basis(vecs, n))
    basis = Matrix.from_columns(columns)
    basis_inv = basis.inverse()

    characters = []
    for i in range(k):
        v = Matrix([x] for x in columns[i * e])
        row = []
        for x in a.elements:
            w = x @ v
            row.append(1 if w == v else -1)
        characters.append(tuple(row))
    for x in a.elements:
        d = basis_inv @ x @ basis
        expected = Matrix.diag(*(characters[i][a.index[x]] for i in range(k) for _ in range(e)))
        if d != expected:
            raise DecompositionError("subgroup is not diagonal with constant signs in the block basis")

    actions = {m: block_permutation_of(basis_inv @ m @ basis, k, e) for m in g}
    ident_perm = tuple(range(k))
    kernel = MatrixGroup([m for m, s in actions.items() if s == ident_perm])
    image = PermGroup(k, actions.values())
    if len(kernel) * len(image) != len(g):
        raise DecompositionError("block action is not a homomorphism")
    return BlockDecomposition(
        group=g, subgroup=a, subgroup_generators=a_gens, basis_change=basis,
        basis_inverse=basis_inv, k=k, e=e, characters=tuple(characters),
        actions=actions, kernel_C=kernel, image_Q=image)
