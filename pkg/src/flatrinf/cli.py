"""Command-line front end.

Exit codes: 0 success or certified, 1 mathematical negative (inapplicable,
counterexample), 2 input error, 3 resource cap exceeded.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any

from ._finite import CapExceeded
from .clifford import DecompositionError, commutant_dimension, decompose_restriction
from .linalg import Matrix
from .matgroup import (DEFAULT_MAX_ORDER, DEFAULT_MAX_SCAN, MatrixGroup, NotUniqueError,
                       close_group, maximal_normal_elementary_abelian_2)
from .normalizer import NotAbsolutelyIrreducible, compute_normalizer, verify_wreath_structure
from .permgroup import check_odd_degree_lemma, cycle_str, to_images, transitive_subgroups
from .reidemeister import FiniteGroupTable, reidemeister_finite, reidemeister_torus
from .rinf import (certify_rinf, matrix_to_json, theorem_a_bruteforce,
                   theorem_a_constructive_witness)

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3

log = logging.getLogger("flatrinf")


class InputError(ValueError):
    pass


def _int_matrix(rows, what: str) -> Matrix:
    if not isinstance(rows, list) or not rows:
        raise InputError(f"{what}: expected a non-empty list of rows")
    for r in rows:
        if not isinstance(r, list) or not all(type(x) is int for x in r):
            raise InputError(f"{what}: rows must be lists of integers")
    if len({len(r) for r in rows}) != 1 or len(rows[0]) != len(rows):
        raise InputError(f"{what}: matrix must be square")
    return Matrix(rows)


def _load_json(path: str | None) -> Any:
    try:
        text = sys.stdin.read() if path in (None, "-") else Path(path).read_text()
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read input: {exc}") from None


def parse_group_input(doc: Any) -> tuple[list[Matrix], dict]:
    """Generators and declared facts from a group input document."""
    if not isinstance(doc, dict):
        raise InputError("group input must be a JSON object")
    gens = doc.get("generators")
    if not isinstance(gens, list) or not gens:
        raise InputError("'generators' must be a non-empty list of matrices")
    mats = [_int_matrix(g, f"generator {i + 1}") for i, g in enumerate(gens)]
    degree = doc.get("degree", mats[0].rows)
    if any(m.rows != degree for m in mats):
        raise InputError(f"all generators must have the declared degree {degree}")
    facts = doc.get("facts", {})
    if not isinstance(facts, dict):
        raise InputError("'facts' must be an object")
    return mats, facts


def load_group(args) -> tuple[MatrixGroup, dict]:
    gens, facts = parse_group_input(_load_json(args.input))
    try:
        return close_group(gens, cap=args.max_order), facts
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _emit(args, payload: dict, text: str) -> None:
    out = _dump(payload) if args.json else text.rstrip("\n") + "\n"
    if getattr(args, "output", None):
        Path(args.output).write_text(out, encoding="utf-8")
    else:
        sys.stdout.write(out)


def cmd_close(args) -> int:
    g, _ = load_group(args)
    payload = {"degree": g.degree, "order": len(g),
               "elements": [matrix_to_json(m) for m in g]}
    summary = {"degree": g.degree, "order": len(g)}
    if args.output:
        Path(args.output).write_text(_dump(payload), encoding="utf-8")
        summary["elements_path"] = args.output
    text = f"degree {g.degree}\norder {len(g)}"
    sys.stdout.write(_dump(summary) if args.json else text + "\n")
    return EXIT_OK


def cmd_decompose(args) -> int:
    g, _ = load_group(args)
    try:
        a = maximal_normal_elementary_abelian_2(g, args.max_subgroup_scan)
    except NotUniqueError as exc:
        print(f"no unique subgroup: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    if a is None:
        print("no nontrivial normal elementary abelian 2-subgroup", file=sys.stderr)
        return EXIT_NEGATIVE
    try:
        bd = decompose_restriction(g, a)
    except DecompositionError as exc:
        print(f"decomposition failed: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    payload = {
        "group_order": len(g),
        "subgroup_order": len(a),
        "k": bd.k,
        "e": bd.e,
        "basis_change": matrix_to_json(bd.basis_change),
        "characters_on_generators": [list(bd.generator_signs(i)) for i in range(bd.k)],
        "kernel_order": len(bd.kernel_C),
        "block_action_image": [to_images(p) for p in bd.image_Q],
        "transitive": bd.is_transitive(),
    }
    lines = [f"group order {len(g)}, subgroup order {len(a)}",
             f"k = {bd.k} blocks of size e = {bd.e}",
             f"kernel C order {len(bd.kernel_C)}, image Q order {len(bd.image_Q)}",
             f"Q transitive: {bd.is_transitive()}"]
    for i in range(bd.k):
        lines.append(f"block {i + 1}: signs on subgroup generators {bd.generator_signs(i)}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def _structure(g: MatrixGroup, cap: int):
    a = maximal_normal_elementary_abelian_2(g, cap)
    return decompose_restriction(g, a) if a is not None else None


def cmd_normalizer(args) -> int:
    g, _ = load_group(args)
    try:
        bd = _structure(g, args.max_subgroup_scan)
    except (NotUniqueError, DecompositionError):
        bd = None
    try:
        n = compute_normalizer(g, bd, args.max_subgroup_scan)
    except NotAbsolutelyIrreducible as exc:
        print(f"normalizer out of scope: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    payload = {
        "order": len(n),
        "automorphism_count": n.automorphism_count,
        "unrealized_automorphisms": len(n.unrealized),
        "elements": [{"matrix": matrix_to_json(x.matrix),
                      "sigma": to_images(x.sigma) if x.sigma is not None else None}
                     for x in n.elements],
    }
    lines = [f"|N| = {len(n)}", f"|Aut(G)| = {n.automorphism_count}",
             f"unrealized automorphisms: {len(n.unrealized)}"]
    if bd is not None:
        verdict, s_group = verify_wreath_structure(bd, n)
        payload["wreath_structure"] = verdict.holds
        payload["block_permutation_group_order"] = len(s_group) if s_group else None
        lines.append(f"wreath factorization holds: {verdict.holds}"
                     + (f", S of order {len(s_group)}" if s_group else ""))
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_certify(args) -> int:
    g, facts = load_group(args)
    cert = certify_rinf(g, facts, args.max_subgroup_scan)
    out = _dump(cert.to_dict())
    if args.output:
        Path(args.output).write_text(out, encoding="utf-8")
    else:
        sys.stdout.write(out)
    return EXIT_OK if cert.certified else EXIT_NEGATIVE


def cmd_theorem_a(args) -> int:
    g, _ = load_group(args)
    bd = n = None
    if g.degree % 2 and commutant_dimension(g) == 1:
        try:
            bd = _structure(g, args.max_subgroup_scan)
        except (NotUniqueError, DecompositionError):
            bd = None
        n = compute_normalizer(g, bd, args.max_subgroup_scan)
        candidates = n.matrices
        source = "integral normalizer"
    else:
        # always inside the normalizer: the group and its negatives
        candidates = sorted(set(g) | {-m for m in g}, key=lambda m: m.flat())
        source = "signed group elements"
    brute = theorem_a_bruteforce(g, candidates)
    payload: dict[str, Any] = {
        "candidates": source,
        "candidate_count": len(candidates),
        "determinant_tests": brute.determinant_tests,
        "complete": brute.complete,
        "counterexample": matrix_to_json(brute.counterexample) if brute.counterexample else None,
        "witnesses": [{"D": matrix_to_json(w.normalizer_element), "witness": matrix_to_json(w.element)}
                      for w in brute.witnesses],
    }
    if n is not None and bd is not None and bd.is_transitive():
        rows = []
        for x in n.elements:
            w = theorem_a_constructive_witness(g, bd, x)
            rows.append({"D": matrix_to_json(x.matrix), "witness": matrix_to_json(w.element),
                         "path": w.path})
        payload["constructive"] = rows
    lines = [f"{len(candidates)} candidates ({source}), {brute.determinant_tests} determinant tests"]
    if brute.complete:
        lines.append("every candidate has a witness")
    else:
        lines.append(f"counterexample D = {brute.counterexample.tolist()}")
    if "constructive" in payload:
        lines.append(f"constructive witnesses: {len(payload['constructive'])}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if brute.complete else EXIT_NEGATIVE


def cmd_perm_lemma(args) -> int:
    k = args.k
    if not 2 <= k <= 7:
        print("degree must be between 2 and 7", file=sys.stderr)
        return EXIT_INPUT
    groups = transitive_subgroups(k)
    rows = []
    for q in groups:
        v = check_odd_degree_lemma(q)
        rows.append({
            "order": len(q),
            "generators": [to_images(p) for p in q.generators],
            "holds": v.holds,
            "counterexample": [to_images(p) for p in v.counterexample.elements] if v.counterexample else None,
        })
    failures = sum(not r["holds"] for r in rows)
    payload = {"degree": k, "transitive_groups": len(rows), "groups": rows,
               "groups_with_normal_elementary_abelian_2_subgroup": failures}
    lines = [f"degree {k}: {len(rows)} transitive groups up to conjugacy"]
    for q, r in zip(groups, rows):
        gens = " ".join(cycle_str(p) for p in q.generators) or "()"
        status = "holds" if r["holds"] else f"normal elementary abelian 2-subgroup of order {len(r['counterexample'])}"
        lines.append(f"  order {r['order']:>4}  <{gens}>  {status}")
    _emit(args, payload, "\n".join(lines))
    # for odd degree any hit contradicts the lemma
    return EXIT_NEGATIVE if k % 2 and failures else EXIT_OK


def cmd_reidemeister(args) -> int:
    if args.mode == "torus":
        if args.matrix is not None:
            try:
                rows = json.loads(args.matrix)
            except json.JSONDecodeError as exc:
                raise InputError(f"bad --matrix: {exc}") from None
        else:
            doc = _load_json(args.input)
            rows = doc.get("matrix") if isinstance(doc, dict) else doc
        r = reidemeister_torus(_int_matrix(rows, "torus map"))
        value = "infinite" if r == float("inf") else r
    else:
        doc = _load_json(args.input)
        if not isinstance(doc, dict) or "table" not in doc or "map" not in doc:
            raise InputError("finite mode needs an object with 'table' and 'map'")
        try:
            t = FiniteGroupTable(tuple(tuple(r) for r in doc["table"]))
            value = reidemeister_finite(t, doc["map"])
        except (TypeError, ValueError) as exc:
            raise InputError(str(exc)) from None
    _emit(args, {"mode": args.mode, "reidemeister_number": value}, str(value))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", "-i", help="input JSON file ('-' for stdin)")
    common.add_argument("--output", "-o", help="write the result here instead of stdout")
    common.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER,
                        help="cap on group closure size (default %(default)s)")
    common.add_argument("--max-subgroup-scan", type=int, default=DEFAULT_MAX_SCAN,
                        help="cap on group order for structural scans (default %(default)s)")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="flatrinf", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("close", parents=[common], help="close generators to a finite group").set_defaults(func=cmd_close)
    sub.add_parser("decompose", parents=[common],
                   help="character-block decomposition over the exponent-2 normal subgroup").set_defaults(func=cmd_decompose)
    sub.add_parser("normalizer", parents=[common], help="integral normalizer").set_defaults(func=cmd_normalizer)
    sub.add_parser("certify", parents=[common], help="emit an R-infinity certificate").set_defaults(func=cmd_certify)
    sub.add_parser("theorem-a", parents=[common], help="eigenvalue-one witness search").set_defaults(func=cmd_theorem_a)
    pl = sub.add_parser("perm-lemma", parents=[common], help="odd-degree lemma over transitive groups")
    pl.add_argument("k", type=int, help="degree, 2..7")
    pl.set_defaults(func=cmd_perm_lemma)
    pr = sub.add_parser("reidemeister", parents=[common], help="Reidemeister numbers")
    pr.add_argument("mode", choices=["torus", "finite"])
    pr.add_argument("--matrix", help="torus map as a JSON integer matrix")
    pr.set_defaults(func=cmd_reidemeister)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CapExceeded as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
