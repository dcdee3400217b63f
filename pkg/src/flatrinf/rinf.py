"""Eigenvalue-one witnesses for normalizer elements and the R-infinity
certificate built from them.

A certificate is a plain JSON-ready dict.  :func:`replay_certificate`
re-derives every claim in it from the serialized document alone.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Mapping

from ._finite import CapExceeded
from .clifford import (BlockDecomposition, DecompositionError, block_permutation_of,
                       commutant_dimension, decompose_restriction)
from .linalg import Matrix, det, has_eigenvalue_one, intertwiner_basis, primitive_integer_scale
from .matgroup import (DEFAULT_MAX_SCAN, MatrixGroup, NotUniqueError, automorphisms, close_group,
                       derived_series, is_solvable, maximal_normal_elementary_abelian_2,
                       normal_subgroups)
from .normalizer import (NormalizerElement, NormalizerGroup, compute_normalizer, is_finite_group,
                         verify_corollary_subgroup, verify_wreath_structure)
from .permgroup import (PermGroup, block_perm_matrix, from_images, inverse_perm, is_transitive,
                        to_images)

log = logging.getLogger(__name__)

FORMAT = "flatrinf-certificate/1"

PATH_PURE = "pure-tau"
PATH_A_TAU = "a-tau"
PATH_BRUTE = "brute-force"

VERDICT_CERTIFIED = "R∞ certified"
VERDICT_INAPPLICABLE = "criterion inapplicable"
VERDICT_COUNTEREXAMPLE = "counterexample found"
VERDICTS = (VERDICT_CERTIFIED, VERDICT_INAPPLICABLE, VERDICT_COUNTEREXAMPLE)

MODE_FULL = "rho-prime-equals-rho"
MODE_NOTE = ("the certified subrepresentation is the whole representation, which is absolutely "
             "irreducible; the non-conjugacy condition on other subrepresentations is vacuous")

# checklist item -> phrase used when it fails
HYPOTHESES = {
    "finite_group": "group closure failed",
    "faithful_inclusion": "representation not faithful",
    "odd_degree": "degree even",
    "normal_abelian_subgroup": "no nontrivial normal abelian subgroup",
    "absolutely_irreducible": "not absolutely irreducible",
    "elementary_abelian_2_subgroup": "no unique nontrivial normal elementary abelian 2-subgroup",
    "clifford_decomposition": "character-block decomposition failed",
    "transitive_block_action": "block action not transitive",
    "normalizer_structure": "normalizer structure check failed",
    "theorem_a_witnesses": "witness table incomplete",
}


class ConsistencyError(RuntimeError):
    """A step that the hypotheses guarantee has failed."""


@dataclass(frozen=True)
class Witness:
    """``element`` is in the group and ``element @ normalizer_element`` fixes
    a nonzero vector."""

    normalizer_element: Matrix
    element: Matrix
    path: str
    lift: Matrix | None = None


@dataclass
class BruteForceResult:
    witnesses: list[Witness]
    counterexample: Matrix | None
    determinant_tests: int

    @property
    def complete(self) -> bool:
        return self.counterexample is None


def _as_matrix(d: NormalizerElement | Matrix) -> Matrix:
    return d.matrix if isinstance(d, NormalizerElement) else d


def _is_pure_block_permutation(bd: BlockDecomposition, m: Matrix) -> bool:
    spatial = bd.actions.get(m)
    if spatial is None:
        return False
    return bd.to_block_basis(m) == block_perm_matrix(inverse_perm(spatial), bd.e)


def theorem_a_constructive_witness(g: MatrixGroup, bd: BlockDecomposition,
                                   d: NormalizerElement | Matrix) -> Witness:
    """Witness for ``d`` following the block argument.

    Pick a lift ``t`` whose block action sends ``d``'s image of the first
    block back to it, preferring lifts that are pure block permutations.
    The first diagonal block ``c`` of ``t d`` has odd size and finite order,
    so it has eigenvalue 1 or -1.  In the first case ``t`` is the witness,
    otherwise ``a t`` for an ``a`` in the subgroup acting as -1 on block 1.
    """
    if not bd.is_transitive():
        raise ValueError("block action is not transitive")
    if g.degree % 2 == 0:
        raise ValueError("degree must be odd")
    dm = _as_matrix(d)
    spatial_d = inverse_perm(d.sigma) if isinstance(d, NormalizerElement) and d.sigma is not None \
        else _spatial(bd, dm)
    target = spatial_d[0]
    lifts = [m for m in g if bd.actions[m][target] == 0]
    if not lifts:
        raise ConsistencyError("no group element maps the required block back to block 1")
    pure = [m for m in lifts if _is_pure_block_permutation(bd, m)]
    lift = (pure or lifts)[0]
    prod = bd.to_block_basis(lift @ dm)
    c = bd.block(prod, 0, 0)
    ident = Matrix.identity(bd.e)
    if has_eigenvalue_one(c):
        witness, path = lift, PATH_PURE
    elif det(c + ident) == 0:
        a = next((x for x in bd.subgroup if bd.character(0, x) == -1), None)
        if a is None:
            raise ConsistencyError("no subgroup element acts as -1 on block 1")
        witness, path = a @ lift, PATH_A_TAU
    else:
        raise ConsistencyError("leading block has neither eigenvalue 1 nor -1")
    if not has_eigenvalue_one(witness @ dm):
        raise ConsistencyError("constructed witness fails the determinant check")
    return Witness(dm, witness, path, lift)


def _spatial(bd: BlockDecomposition, m: Matrix):
    return block_permutation_of(bd.to_block_basis(m), bd.k, bd.e)


def theorem_a_bruteforce(g: MatrixGroup, ds: NormalizerGroup | Iterable[Matrix]) -> BruteForceResult:
    """Test every pair ``(g, D)``, with ``D`` in canonical order, and record
    the first witness per ``D``; stop at the first ``D`` without one."""
    mats = ds.matrices if isinstance(ds, NormalizerGroup) else [_as_matrix(x) for x in ds]
    mats = sorted(set(mats), key=lambda m: m.flat())
    witnesses = []
    tests = 0
    for d in mats:
        found = None
        for m in g:
            tests += 1
            if has_eigenvalue_one(m @ d) and found is None:
                found = m
        if found is None:
            return BruteForceResult(witnesses, d, tests)
        witnesses.append(Witness(d, found, PATH_BRUTE))
    return BruteForceResult(witnesses, None, tests)


# serialization helpers

def _entry(x):
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    return x


def matrix_to_json(m: Matrix) -> list[list]:
    return [[_entry(x) for x in r] for r in m.tolist()]


def matrix_from_json(rows) -> Matrix:
    def parse(x):
        if isinstance(x, bool):
            raise ValueError("boolean matrix entry")
        if isinstance(x, int):
            return x
        if isinstance(x, str):
            return Fraction(x)
        raise ValueError(f"bad matrix entry {x!r}")
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise ValueError("matrix must be a non-empty list of rows")
    return Matrix([parse(x) for x in r] for r in rows)


@dataclass
class Certificate:
    checklist: list[dict]
    verdict: str
    document: dict = field(repr=False)

    @property
    def certified(self) -> bool:
        return self.verdict == VERDICT_CERTIFIED

    @property
    def summary(self) -> str:
        return self.document["summary"]

    def to_dict(self) -> dict:
        return self.document


class _Checklist:
    def __init__(self):
        self.items: list[dict] = []

    def record(self, name: str, ok: bool | None, detail: str = "") -> bool:
        status = "skipped" if ok is None else ("passed" if ok else "failed")
        self.items.append({"name": name, "status": status, "detail": detail})
        return bool(ok)

    def skip_rest(self, names: Iterable[str]) -> None:
        for name in names:
            self.record(name, None, "not evaluated: an earlier hypothesis failed")

    def failed(self) -> list[str]:
        return [i["name"] for i in self.items if i["status"] == "failed"]


def find_normal_abelian_subgroup(g: MatrixGroup, cap: int = DEFAULT_MAX_SCAN) -> tuple[MatrixGroup | None, str]:
    """A nontrivial normal abelian subgroup: the last nontrivial derived term
    for solvable groups, otherwise the first hit in a normal-subgroup scan."""
    series = derived_series(g, cap)
    if is_solvable(series):
        if len(series) == 1:
            return None, "trivial group"
        return series[-2], f"derived series of length {len(series) - 1}; last nontrivial term has order {len(series[-2])}"
    for h in normal_subgroups(g, cap):
        if len(h) > 1 and h.is_abelian():
            return h, f"group not solvable; abelian normal subgroup of order {len(h)} found by scan"
    return None, f"group not solvable (derived series stops at order {len(series[-1])}) and no abelian normal subgroup"


_ORDER = list(HYPOTHESES)


def certify_rinf(g: MatrixGroup, facts: Mapping[str, Any] | None = None,
                 cap: int = DEFAULT_MAX_SCAN) -> Certificate:
    """Run every hypothesis check and, when all pass, the witness table."""
    cl = _Checklist()
    doc: dict[str, Any] = {
        "format": FORMAT,
        "mode": MODE_FULL,
        "mode_note": MODE_NOTE,
        "input": {"degree": g.degree, "generators": [matrix_to_json(m) for m in g.generators]},
        "assumptions": dict(facts or {}),
        "group": {"order": len(g)},
    }
    cl.record("finite_group", True, f"closure has {len(g)} elements")
    cl.record("faithful_inclusion", True, "the representation is the inclusion of a matrix group")
    cl.record("odd_degree", g.degree % 2 == 1, f"degree {g.degree}")
    abelian, how = find_normal_abelian_subgroup(g, cap)
    cl.record("normal_abelian_subgroup", abelian is not None, how)
    dim = commutant_dimension(g)
    cl.record("absolutely_irreducible", dim == 1, f"commutant dimension {dim}")
    rest = _ORDER[5:]
    counterexample = None
    if not cl.failed():
        counterexample = _certify_structure(g, cl, doc, cap)
    else:
        cl.skip_rest(rest)

    failed = cl.failed()
    if not failed:
        verdict = VERDICT_CERTIFIED
        summary = VERDICT_CERTIFIED
    else:
        verdict = VERDICT_COUNTEREXAMPLE if counterexample is not None else VERDICT_INAPPLICABLE
        summary = f"{verdict}: " + " / ".join(HYPOTHESES[n] for n in failed)
    doc["checklist"] = cl.items
    doc["verdict"] = verdict
    doc["summary"] = summary
    # keep the verdict near the top of the serialized document
    ordered = {k: doc[k] for k in ("format", "verdict", "summary", "mode", "mode_note", "input",
                                   "assumptions", "checklist") if k in doc}
    ordered.update({k: v for k, v in doc.items() if k not in ordered})
    return Certificate(cl.items, verdict, ordered)


def _certify_structure(g: MatrixGroup, cl: _Checklist, doc: dict, cap: int) -> Matrix | None:
    rest = _ORDER[5:]
    try:
        a = maximal_normal_elementary_abelian_2(g, cap)
    except NotUniqueError as exc:
        cl.record("elementary_abelian_2_subgroup", False, str(exc))
        cl.skip_rest(rest[1:])
        return None
    if a is None:
        cl.record("elementary_abelian_2_subgroup", False, "only the trivial subgroup qualifies")
        cl.skip_rest(rest[1:])
        return None
    cl.record("elementary_abelian_2_subgroup", True, f"order {len(a)}")
    try:
        bd = decompose_restriction(g, a)
    except DecompositionError as exc:
        cl.record("clifford_decomposition", False, str(exc))
        cl.skip_rest(rest[2:])
        return None
    cl.record("clifford_decomposition", True, f"k={bd.k}, e={bd.e}")
    doc["subgroup_A"] = {
        "generators": [matrix_to_json(m) for m in bd.subgroup_generators],
        "elements": [matrix_to_json(m) for m in a],
    }
    doc["decomposition"] = {
        "k": bd.k,
        "e": bd.e,
        "basis_change": matrix_to_json(bd.basis_change),
        "characters_on_generators": [list(bd.generator_signs(i)) for i in range(bd.k)],
        "block_action_image": [to_images(p) for p in bd.image_Q],
        "kernel_order": len(bd.kernel_C),
    }
    if not cl.record("transitive_block_action", bd.is_transitive(),
                     f"image of order {len(bd.image_Q)} on {bd.k} blocks"):
        cl.skip_rest(rest[4:])
        return None

    n = compute_normalizer(g, bd, cap)
    wreath, s_group = verify_wreath_structure(bd, n)
    corollary = verify_corollary_subgroup(g, a, n)
    doc["normalizer"] = {
        "order": len(n),
        "automorphism_count": n.automorphism_count,
        "block_permutation_group_order": len(s_group) if s_group else None,
        "elements": [
            {"matrix": matrix_to_json(x.matrix),
             "sigma": to_images(x.sigma) if x.sigma is not None else None,
             "blocks": [matrix_to_json(c) for c in x.blocks]}
            for x in n.elements],
        "unrealized_automorphisms": [
            {"generator_images": [matrix_to_json(m) for m in u.automorphism.generator_images()],
             "reason": u.reason}
            for u in n.unrealized],
    }
    problems = list(wreath.failures) + list(corollary.failures)
    if not cl.record("normalizer_structure", not problems,
                     f"|N| = {len(n)}; wreath factorization and subgroup normalization checked"
                     if not problems else "; ".join(problems[:3])):
        cl.skip_rest(rest[5:])
        return None

    brute = theorem_a_bruteforce(g, n)
    by_d = {w.normalizer_element: w for w in brute.witnesses}
    table = []
    errors = []
    for x in n.elements:
        try:
            w = theorem_a_constructive_witness(g, bd, x)
        except ConsistencyError as exc:
            errors.append(f"{x.matrix.tolist()}: {exc}")
            continue
        bw = by_d.get(x.matrix)
        table.append({
            "D": matrix_to_json(x.matrix),
            "witness": matrix_to_json(w.element),
            "path": w.path,
            "lift": matrix_to_json(w.lift),
            "bruteforce_witness": matrix_to_json(bw.element) if bw else None,
        })
    doc["witness_table"] = table
    doc["bruteforce"] = {"determinant_tests": brute.determinant_tests,
                         "counterexample": matrix_to_json(brute.counterexample)
                         if brute.counterexample is not None else None}
    ok = not errors and brute.complete and len(table) == len(n)
    detail = (f"{len(table)} constructive witnesses, brute force complete after "
              f"{brute.determinant_tests} determinant tests") if ok else "; ".join(errors[:3]) or \
        f"brute force found no witness for {brute.counterexample.tolist()}"
    cl.record("theorem_a_witnesses", ok, detail)
    return brute.counterexample


# replay

def replay_certificate(doc: Mapping[str, Any], cap: int = DEFAULT_MAX_SCAN) -> tuple[bool, list[str]]:
    """Re-validate a serialized certificate without trusting its claims.

    Returns ``(ok, problems)``.  For a certified document every hypothesis
    is recomputed from the generators and every listed object is checked
    directly; for other verdicts the cheap failed hypotheses are re-derived.
    A structurally malformed document is reported as a problem.
    """
    problems: list[str] = []
    try:
        _replay(doc, cap, problems)
    except (KeyError, IndexError, TypeError, ValueError, ZeroDivisionError) as exc:
        problems.append(f"malformed certificate: {type(exc).__name__}: {exc}")
    return not problems, problems


def _replay(doc: Mapping[str, Any], cap: int, problems: list[str]) -> None:
    try:
        gens = [matrix_from_json(m) for m in doc["input"]["generators"]]
        g = close_group(gens)
    except (KeyError, ValueError, CapExceeded) as exc:
        problems.append(f"input: {exc}")
        return
    if doc.get("format") != FORMAT:
        problems.append("unknown certificate format")
    if doc.get("verdict") not in VERDICTS:
        problems.append("verdict not in the fixed enumeration")
    if doc.get("group", {}).get("order") != len(g):
        problems.append("group order mismatch")
    if doc.get("verdict") != VERDICT_CERTIFIED:
        failed = {i["name"] for i in doc.get("checklist", []) if i["status"] == "failed"}
        if not failed:
            problems.append("non-certified verdict without a failed hypothesis")
        if "odd_degree" in failed and g.degree % 2:
            problems.append("odd_degree marked failed but degree is odd")
        if "absolutely_irreducible" in failed and commutant_dimension(g) == 1:
            problems.append("absolute irreducibility marked failed but commutant dimension is 1")
        if "normal_abelian_subgroup" in failed and find_normal_abelian_subgroup(g, cap)[0] is not None:
            problems.append("a normal abelian subgroup exists")
        return

    if any(i["status"] != "passed" for i in doc["checklist"]):
        problems.append("certified verdict with a non-passed checklist item")
    n = g.degree
    ident = Matrix.identity(n)
    if n % 2 == 0:
        problems.append("degree is even")
    if commutant_dimension(g) != 1:
        problems.append("commutant dimension is not 1")

    # the exponent-2 normal subgroup doubles as the normal abelian witness
    a_elems = [matrix_from_json(m) for m in doc["subgroup_A"]["elements"]]
    a_set = set(a_elems)
    if len(a_set) < 2 or ident not in a_set:
        problems.append("subgroup A is trivial or lacks the identity")
    if not a_set <= set(g.elements):
        problems.append("subgroup A is not inside the group")
    if any(x @ y not in a_set for x in a_elems for y in a_elems):
        problems.append("subgroup A is not closed")
    if any(x @ x != ident for x in a_elems):
        problems.append("subgroup A has an element of order > 2")
    for m in g.generators:
        m_inv = g.inverse(m)
        if {m @ x @ m_inv for x in a_elems} != a_set:
            problems.append("subgroup A is not normal")
            break

    dec = doc["decomposition"]
    k, e = dec["k"], dec["e"]
    basis = matrix_from_json(dec["basis_change"])
    if k * e != n or det(basis) == 0:
        problems.append("bad decomposition shape or singular basis change")
        return False, problems
    basis_inv = basis.inverse()
    signs = []
    for x in a_elems:
        dx = basis_inv @ x @ basis
        if not dx.is_diagonal():
            problems.append("subgroup A is not diagonal in the block basis")
            break
        diag = [dx[i, i] for i in range(n)]
        if any(len({diag[b * e + t] for t in range(e)}) != 1 for b in range(k)):
            problems.append("subgroup A is not constant on blocks")
            break
        signs.append([diag[b * e] for b in range(k)])
    if len(signs) == len(a_elems):
        chars = [tuple(s[b] for s in signs) for b in range(k)]
        if len(set(chars)) != k:
            problems.append("block characters are not distinct")
        if any(all(v == 1 for v in c) for c in chars):
            problems.append("a block character is trivial")

    def spatial(m: Matrix):
        return block_permutation_of(basis_inv @ m @ basis, k, e)

    try:
        q = PermGroup.generated(k, [spatial(m) for m in g.generators])
        if not is_transitive(q):
            problems.append("block action is not transitive")
    except ValueError as exc:
        problems.append(f"group does not permute the blocks: {exc}")

    # normalizer: listed elements normalize, factor, form a group, and are complete
    nd = doc["normalizer"]
    ds = [matrix_from_json(x["matrix"]) for x in nd["elements"]]
    d_set = set(ds)
    induced = set()
    for x, d in zip(nd["elements"], ds):
        if not d.is_integral() or det(d) not in (1, -1):
            problems.append(f"{d.tolist()} is not in GL(n,Z)")
            continue
        d_inv = d.inverse()
        images = tuple(d @ m @ d_inv for m in g.generators)
        if any(y not in g for y in images):
            problems.append(f"{d.tolist()} does not normalize the group")
            continue
        induced.add(images)
        if {d @ y @ d_inv for y in a_elems} != a_set:
            problems.append(f"{d.tolist()} does not normalize subgroup A")
        sigma = from_images(x["sigma"])
        blocks = [matrix_from_json(c) for c in x["blocks"]]
        if block_perm_matrix(sigma, e) @ Matrix.block_diag(blocks) != basis_inv @ d @ basis:
            problems.append(f"{d.tolist()}: recorded factorization does not reconstruct it")
    if ds and not is_finite_group(ds):
        problems.append("normalizer elements are not closed under products")
    if ident not in d_set or -ident not in d_set:
        problems.append("normalizer misses a scalar matrix")
    # |Aut| recomputed; every automorphism is induced by a listed element or shown unrealizable
    auts = automorphisms(g, cap)
    unrealized = nd["unrealized_automorphisms"]
    if len(induced) + len(unrealized) != len(auts):
        problems.append(f"automorphism bookkeeping: {len(induced)} induced + {len(unrealized)} "
                        f"unrealized != {len(auts)}")
    if len(ds) != 2 * len(induced):
        problems.append("normalizer size is not twice the number of induced automorphisms")
    for u in unrealized:
        imgs = [matrix_from_json(m) for m in u["generator_images"]]
        if tuple(imgs) in induced:
            problems.append("an automorphism listed as unrealized is induced by the normalizer")
            continue
        if not any(phi.generator_images() == imgs for phi in auts):
            problems.append("an unrealized entry is not an automorphism")
            continue
        basis_phi = intertwiner_basis(list(zip(g.generators, imgs)), n)
        if len(basis_phi) == 1 and det(primitive_integer_scale(basis_phi[0])) in (1, -1):
            problems.append("an automorphism listed as unrealized has a unimodular intertwiner")

    # witness table
    rows = {}
    for row in doc["witness_table"]:
        d = matrix_from_json(row["D"])
        w = matrix_from_json(row["witness"])
        if w not in g:
            problems.append(f"witness {w.tolist()} is not in the group")
        elif not has_eigenvalue_one(w @ d):
            problems.append(f"witness for {d.tolist()} fails det(gD - I) = 0")
        rows[d] = w
    if set(rows) != d_set:
        problems.append("witness table does not cover the normalizer")
