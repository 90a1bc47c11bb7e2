"""``cartan`` command line: decompose, verify, householder, fuzz.

Exit codes: 0 success, 2 bad input, 3 non-orthogonal matrix or failed
verification, 4 internal invariant breach (or a failing fuzz case).
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from . import linalg
from .analysis import build_report, grade_lower_bound, householder_matrix
from .factorization import (
    InvariantError,
    NotOrthogonalError,
    OrthogonalMap,
    compose_reflections,
    decompose,
    recompose,
)
from .generate import GenerationError, case_rng, random_case
from .problem import (
    Problem,
    ProblemError,
    dumps,
    load_problem,
    matrix_to_json,
    report_to_json,
    vector_to_json,
)
from .scalar import DEFAULT_TOLERANCE, EXACT, float_field, format_scalar
from .space import Basis, OrthogonalBasis, Signature, is_invertible_vector, is_orthogonal_map

EXIT_OK, EXIT_INPUT, EXIT_MISMATCH, EXIT_INVARIANT = 0, 2, 3, 4


class CommandError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise CommandError(EXIT_INPUT, f"cannot read {path}: {exc.strerror}") from None


def _load(args) -> Problem:
    try:
        return load_problem(_read(args.file), args.mode, args.tol)
    except ProblemError as exc:
        raise CommandError(EXIT_INPUT, str(exc)) from None


def _vec(v) -> str:
    return "[" + ", ".join(format_scalar(c) for c in v) + "]"


def _mat(m, indent: str = "    ") -> list[str]:
    rows = [[format_scalar(c) for c in row] for row in m]
    width = max((len(s) for row in rows for s in row), default=1)
    return [indent + "  ".join(s.rjust(width) for s in row) for row in rows]


def _yes(flag: Optional[bool]) -> str:
    return {True: "yes", False: "no", None: "undetermined"}[flag]


def cmd_decompose(args) -> tuple[int, str]:
    problem = _load(args)
    if problem.matrix is None:
        raise CommandError(EXIT_INPUT, "decompose needs a matrix")
    m = problem.to_map()
    report = build_report(m)
    data = report_to_json(problem, report)
    if args.format == "json":
        return EXIT_OK, dumps(data)
    seq = report.sequence
    lines = [
        f"signature ({problem.sig.p},{problem.sig.q}), {problem.field.mode} mode, "
        f"{'canonical' if problem.basis is None else 'declared'} basis",
        f"reflectors ({report.achieved_count}):",
    ]
    lines += [f"  r{i} = {_vec(v)}" for i, v in enumerate(seq.reflectors, 1)]
    if args.householder:
        for i, h in enumerate(report.householder_matrices, 1):
            lines.append(f"  H{i} =")
            lines += _mat(h)
    lines += [
        f"grade lower bound: {report.grade_lower_bound}",
        f"kernel of T - I: dim {report.kernel_dim}, non-degenerate {_yes(report.kernel_nondegenerate)}",
        f"minimality certified: {_yes(report.minimality_certified)}",
        f"recomposition: {'ok' if report.recomposition_ok else 'MISMATCH'}",
        f"artinian branches: {seq.artinian_branches}, frame rebuilds: {seq.rebased}",
    ]
    lines += [f"warning: {w}" for w in data["warnings"]]
    code = EXIT_OK if report.recomposition_ok else EXIT_INVARIANT
    return code, "\n".join(lines) + "\n"


def _check_reflectors(problem: Problem):
    for i, s in enumerate(problem.reflectors):
        if not is_invertible_vector(s, problem.sig, problem.field):
            raise CommandError(EXIT_INPUT, f"reflector {i} {_vec(s)} is zero or isotropic")


def cmd_verify(args) -> tuple[int, str]:
    problem = _load(args)
    if problem.matrix is None:
        raise CommandError(EXIT_INPUT, "verify needs a matrix")
    if problem.reflectors is None:
        raise CommandError(EXIT_INPUT, "verify needs a reflectors list")
    _check_reflectors(problem)
    sig, field = problem.sig, problem.field
    composed = compose_reflections(problem.reflectors, sig, field)
    expected = problem.matrix
    if problem.basis is not None and problem.coordinates == "basis":
        w = Basis(problem.basis, sig, field).to_canonical()
        composed = linalg.matmul(linalg.matmul(linalg.inverse(w, field), composed), w)
    diff, _ = linalg.max_abs_diff(composed, expected)
    ok = field.is_zero(diff)
    first = None
    if not ok:
        n = sig.n
        first = next((a, b) for a in range(n) for b in range(n) if not field.eq(composed[a][b], expected[a][b]))
    mats = ()
    if args.householder:
        basis = problem.orthogonal_basis()
        mats = tuple(householder_matrix(s, basis) for s in problem.reflectors)
    if args.format == "json":
        data = {"ok": ok, "reflector_count": len(problem.reflectors)}
        if first is not None:
            a, b = first
            data["first_mismatch"] = {
                "row": a,
                "column": b,
                "expected": format_scalar(expected[a][b]),
                "composed": format_scalar(composed[a][b]),
            }
        if mats:
            data["householder_matrices"] = [matrix_to_json(h) for h in mats]
        out = dumps(data)
    else:
        lines = [f"{len(problem.reflectors)} reflectors: {'pass' if ok else 'FAIL'}"]
        if first is not None:
            a, b = first
            lines.append(
                f"first mismatch at ({a}, {b}): expected {format_scalar(expected[a][b])}, "
                f"composed {format_scalar(composed[a][b])}"
            )
        for k, h in enumerate(mats, 1):
            lines.append(f"H{k} =")
            lines += _mat(h)
        out = "\n".join(lines) + "\n"
    return (EXIT_OK if ok else EXIT_MISMATCH), out


def cmd_householder(args) -> tuple[int, str]:
    problem = _load(args)
    if problem.reflectors is None:
        raise CommandError(EXIT_INPUT, "householder needs a reflectors list")
    _check_reflectors(problem)
    basis = problem.orthogonal_basis()
    mats = [householder_matrix(s, basis) for s in problem.reflectors]
    if args.format == "json":
        data = {"householder_matrices": [matrix_to_json(h) for h in mats]}
        if problem.basis is not None and not problem.basis_is_orthogonal():
            data["orthogonal_basis"] = [vector_to_json(v) for v in basis]
        return EXIT_OK, dumps(data)
    lines = []
    for s, h in zip(problem.reflectors, mats):
        lines.append(f"reflection in {_vec(s)}:")
        lines += _mat(h)
    lines += [f"warning: {w}" for w in problem.warnings]
    return EXIT_OK, "\n".join(lines) + "\n"


def _fuzz_case(sig: Signature, field, seed: int, index: int, max_refl: int):
    """``(summary, failure)`` for one case; ``failure`` is None when every check holds."""
    refl, c = random_case(case_rng(seed, index), sig, max_refl, field)
    basis = OrthogonalBasis.canonical(sig, field)
    problem = {
        "signature": {"p": sig.p, "q": sig.q},
        "matrix": matrix_to_json(c),
        "coordinates": "canonical",
        "mode": field.mode,
    }
    if not field.exact:
        problem["tolerance"] = field.tol
    try:
        m = OrthogonalMap(c, basis)
        seq = decompose(m)
        n = sig.n
        if len(seq) > n:
            raise InvariantError(f"{len(seq)} reflectors exceed {n}")
        if not linalg.equal(recompose(seq), m.matrix, field):
            raise InvariantError("recomposition differs from the input")
        for k, t in enumerate(seq.trace):
            if not is_orthogonal_map(t, sig, field):
                raise InvariantError(f"intermediate map {k} is not orthogonal")
        t = grade_lower_bound(seq)
        if t > len(seq):
            raise InvariantError(f"grade bound {t} exceeds count {len(seq)}")
    except (InvariantError, NotOrthogonalError, ValueError) as exc:
        return None, {"case": index, "error": str(exc), "problem": problem}
    return (len(refl), len(seq), seq.artinian_branches, seq.rebased), None


def cmd_fuzz(args) -> tuple[int, str]:
    try:
        sig = Signature(args.p, args.q)
    except ValueError as exc:
        raise CommandError(EXIT_INPUT, str(exc)) from None
    n = sig.n
    max_refl = n if args.max_reflections is None else args.max_reflections
    if not 0 <= max_refl <= n:
        raise CommandError(EXIT_INPUT, f"--max-reflections must lie in 0..{n}")
    if args.count < 0:
        raise CommandError(EXIT_INPUT, "--count must be non-negative")
    if args.mode == "float":
        field = float_field(args.tol if args.tol is not None else DEFAULT_TOLERANCE)
    elif args.tol is not None:
        raise CommandError(EXIT_INPUT, "--tol only applies in float mode")
    else:
        field = EXACT
    passed, failures = 0, []
    artinian = rebased = longest = 0
    for i in range(args.count):
        try:
            stats, failure = _fuzz_case(sig, field, args.seed, i, max_refl)
        except GenerationError as exc:
            stats, failure = None, {"case": i, "error": str(exc), "problem": None}
        if failure:
            failures.append(failure)
            continue
        passed += 1
        _, count, a, r = stats
        artinian += a
        rebased += r
        longest = max(longest, count)
    summary = {
        "signature": {"p": sig.p, "q": sig.q},
        "mode": field.mode,
        "seed": args.seed,
        "count": args.count,
        "max_reflections": max_refl,
        "passed": passed,
        "failed": len(failures),
        "artinian_branches": artinian,
        "frame_rebuilds": rebased,
        "longest_factorization": longest,
        "failures": failures,
    }
    code = EXIT_INVARIANT if failures else EXIT_OK
    if args.format == "json":
        return code, dumps(summary)
    lines = [
        f"fuzz ({sig.p},{sig.q}) seed {args.seed}: {passed}/{args.count} passed",
        f"artinian branches {artinian}, frame rebuilds {rebased}, longest factorization {longest}",
    ]
    for f in failures:
        lines.append(f"FAIL case {f['case']} (rerun: --seed {args.seed}, case index {f['case']}): {f['error']}")
        if f["problem"] is not None:
            lines.append(dumps(f["problem"]).rstrip())
    return code, "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mode", choices=("exact", "float"), default=None, help="overrides the file (default exact)")
    common.add_argument("--tol", type=float, default=None, help=f"float-mode tolerance (default {DEFAULT_TOLERANCE})")
    common.add_argument("--format", choices=("text", "json"), default="text")

    parser = argparse.ArgumentParser(prog="cartan", description="Factor O(p,q) maps into hyperplane reflections.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", parents=[common], help="factor a matrix and report bounds")
    p.add_argument("file", help="problem file, or - for stdin")
    p.add_argument("--householder", action="store_true", help="print Householder matrices in text output")
    p.set_defaults(run=cmd_decompose)

    p = sub.add_parser("verify", parents=[common], help="check that reflectors compose to the matrix")
    p.add_argument("file", help="problem or report file, or - for stdin")
    p.add_argument("--householder", action="store_true", help="also print one matrix per reflector")
    p.set_defaults(run=cmd_verify)

    p = sub.add_parser("householder", parents=[common], help="matrices of the given reflections")
    p.add_argument("file", help="problem file with reflectors, or - for stdin")
    p.set_defaults(run=cmd_householder)

    p = sub.add_parser("fuzz", parents=[common], help="decompose random products of reflections")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--max-reflections", type=int, default=None, help="default p + q")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(run=cmd_fuzz)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        code, out = args.run(args)
    except CommandError as exc:
        print(f"cartan: {exc}", file=sys.stderr)
        return exc.code
    except NotOrthogonalError as exc:
        print(f"cartan: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except InvariantError as exc:
        print(f"cartan: internal invariant failed: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
