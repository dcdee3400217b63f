"""Named matrix groups used by the tests, the acceptance suite and the CLI.

Each fixture records whether its natural representation is known to be
irreducible over R by construction; that flag is an assumption echoed into
certificates, never something this package decides.
"""
from __future__ import annotations

from dataclasses import dataclass

from .linalg import Matrix
from .matgroup import MatrixGroup, close_group


def perm_matrix(images: list[int]) -> Matrix:
    """Permutation matrix sending basis vector ``e_j`` to ``e_{images[j]}`` (0-based)."""
    n = len(images)
    return Matrix([[1 if images[j] == i else 0 for j in range(n)] for i in range(n)])


CYCLE3 = perm_matrix([1, 2, 0])  # e1 -> e2 -> e3 -> e1
SWAP12 = perm_matrix([1, 0, 2])
D3 = Matrix.diag(1, -1, -1)


@dataclass(frozen=True)
class Fixture:
    name: str
    generators: tuple[Matrix, ...]
    r_irreducible: bool | None
    description: str

    @property
    def degree(self) -> int:
        return self.generators[0].rows

    def group(self) -> MatrixGroup:
        return close_group(self.generators)

    def facts(self) -> dict:
        out = {"description": self.description}
        if self.r_irreducible is not None:
            out["R-irreducible"] = self.r_irreducible
            out["provenance"] = "by construction"
        return out

    def to_input(self) -> dict:
        """Group input document in the CLI's JSON format."""
        return {
            "degree": self.degree,
            "generators": [m.tolist() for m in self.generators],
            "facts": self.facts(),
        }


FIXTURES: dict[str, Fixture] = {}


def _add(name, gens, r_irr, desc):
    FIXTURES[name] = Fixture(name, tuple(gens), r_irr, desc)


_add("EX-C2", [Matrix([[-1]])], True, "cyclic group of order 2 acting by -1")
_add("EX-T", [D3, CYCLE3], True, "tetrahedral rotation group A_4 in GL(3,Z)")
_add("EX-S4", [CYCLE3, Matrix([[0, 1, 0], [1, 0, 0], [0, 0, -1]])], True,
     "octahedral rotation group S_4 (determinant-one signed permutations)")
_add("EX-O", [Matrix.diag(-1, 1, 1), CYCLE3, SWAP12], True,
     "all 48 signed 3x3 permutation matrices")
_add("EX-80", [Matrix.diag(-1, -1, 1, 1, 1), perm_matrix([1, 2, 3, 4, 0])], True,
     "determinant-one sign changes extended by a 5-cycle, order 80, degree 5")
_add("Z3", [Matrix([[0, -1], [1, -1]])], True, "rotation of order 3 in GL(2,Z)")
_add("Z4", [Matrix([[0, -1], [1, 0]])], True, "rotation of order 4 in GL(2,Z)")
_add("V-diag", [Matrix.diag(1, -1, -1), Matrix.diag(-1, 1, -1)], False,
     "Klein four-group of diagonal sign matrices (reducible)")
_add("S3-perm", [SWAP12, CYCLE3], False, "S_3 as 3x3 permutation matrices (reducible)")
_add("A5-perm", [perm_matrix([1, 2, 0, 3, 4]), perm_matrix([1, 2, 3, 4, 0])], False,
     "A_5 as 5x5 permutation matrices (reducible)")
_add("trivial-1", [Matrix.identity(1)], True, "trivial group in degree 1")
_add("trivial-3", [Matrix.identity(3)], False, "trivial group in degree 3")


def fixture(name: str) -> Fixture:
    return FIXTURES[name]


def group(name: str) -> MatrixGroup:
    return FIXTURES[name].group()


def signed_permutation_matrices(n: int) -> list[Matrix]:
    """All ``2^n n!`` signed permutation matrices, by direct enumeration."""
    from itertools import permutations, product
    out = []
    for perm in permutations(range(n)):
        for signs in product((1, -1), repeat=n):
            out.append(Matrix([[signs[j] if perm[j] == i else 0 for j in range(n)] for i in range(n)]))
    return out
