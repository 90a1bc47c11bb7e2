"""JSON problem and report files.

A problem file looks like::

    {
      "signature": {"p": 2, "q": 3},
      "matrix": [["1", "5", "4", "3", "0"], ...],
      "basis": [["0", "0", "1", "1", "-1"], ...],      # optional, rows
      "coordinates": "basis",                          # or "canonical"
      "mode": "exact",                                 # or "float"
      "tolerance": 1e-9,                               # float mode only
      "reflectors": [["0", "0", "0", "0", "1"], ...]   # verify / householder
    }

``matrix`` columns are images of basis vectors. With ``"coordinates":
"basis"`` (the default) they are written in the declared basis, with
``"canonical"`` in canonical coordinates. Reflectors are always canonical.
Exact mode takes integers or ``"a/b"`` strings only.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from typing import Any, Optional

from . import linalg
from .analysis import DecompositionReport
from .factorization import OrthogonalMap
from .linalg import Matrix
from .scalar import DEFAULT_TOLERANCE, EXACT, Field, float_field, format_scalar, parse_scalar
from .space import Basis, OrthogonalBasis, Signature, Vector, orthogonalize


class ProblemError(ValueError):
    """Malformed problem or report file."""


@dataclass(frozen=True)
class Problem:
    sig: Signature
    field: Field
    matrix: Optional[Matrix]
    basis: Optional[tuple[Vector, ...]] = None
    coordinates: str = "basis"
    reflectors: Optional[tuple[Vector, ...]] = None
    warnings: tuple[str, ...] = dc_field(default=(), compare=False)

    @property
    def n(self) -> int:
        return self.sig.n

    def orthogonal_basis(self) -> OrthogonalBasis:
        if self.basis is None:
            return OrthogonalBasis.canonical(self.sig, self.field)
        try:
            return OrthogonalBasis(self.basis, self.sig, self.field)
        except ValueError:
            return orthogonalize(Basis(self.basis, self.sig, self.field))

    def basis_is_orthogonal(self) -> bool:
        if self.basis is None:
            return True
        try:
            OrthogonalBasis(self.basis, self.sig, self.field)
        except ValueError:
            return False
        return True

    def canonical_matrix(self) -> Matrix:
        if self.matrix is None:
            raise ProblemError("problem has no matrix")
        if self.coordinates == "canonical" or self.basis is None:
            return self.matrix
        w = Basis(self.basis, self.sig, self.field).to_canonical()
        return linalg.matmul(linalg.matmul(w, self.matrix), linalg.inverse(w, self.field))

    def to_map(self) -> OrthogonalMap:
        """The map over the (orthogonalized if needed) basis; raises NotOrthogonalError."""
        return OrthogonalMap.from_canonical(self.canonical_matrix(), self.orthogonal_basis())

    def echo(self) -> dict[str, Any]:
        out: dict[str, Any] = {"signature": {"p": self.sig.p, "q": self.sig.q}}
        if self.matrix is not None:
            out["matrix"] = matrix_to_json(self.matrix)
        if self.basis is not None:
            out["basis"] = [vector_to_json(v) for v in self.basis]
        out["coordinates"] = self.coordinates
        out["mode"] = self.field.mode
        if not self.field.exact:
            out["tolerance"] = self.field.tol
        if self.reflectors is not None:
            out["reflectors"] = [vector_to_json(v) for v in self.reflectors]
        return out


def vector_to_json(v: Vector) -> list[str]:
    return [format_scalar(c) for c in v]


def matrix_to_json(m: Matrix) -> list[list[str]]:
    return [[format_scalar(c) for c in row] for row in m]


def _rows(data, n: int, what: str, field: Field) -> tuple[tuple, ...]:
    if not isinstance(data, list) or len(data) != n:
        raise ProblemError(f"{what}: expected {n} rows")
    rows = []
    for i, row in enumerate(data):
        if not isinstance(row, list) or len(row) != n:
            raise ProblemError(f"{what}: row {i} must have {n} entries")
        try:
            rows.append(tuple(parse_scalar(x, field) for x in row))
        except ValueError as exc:
            raise ProblemError(f"{what}: row {i}: {exc}") from None
    return tuple(rows)


def parse_problem(data: dict, mode: Optional[str] = None, tol: Optional[float] = None) -> Problem:
    """Validate a decoded problem (or report) object; ``mode``/``tol`` override the file."""
    if not isinstance(data, dict):
        raise ProblemError("problem must be a JSON object")
    if "problem" in data and "signature" not in data:
        # a report file: re-validate its echoed problem against its reflectors
        inner = dict(data["problem"])
        if "reflectors" in data:
            inner["reflectors"] = data["reflectors"]
        return parse_problem(inner, mode, tol)
    try:
        sig_data = data["signature"]
        sig = Signature(int(sig_data["p"]), int(sig_data["q"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ProblemError(f"bad signature: {exc}") from None
    mode = mode or data.get("mode", "exact")
    if mode not in ("exact", "float"):
        raise ProblemError(f"unknown mode {mode!r}")
    if mode == "float":
        t = tol if tol is not None else data.get("tolerance", DEFAULT_TOLERANCE)
        try:
            field = float_field(float(t))
        except (TypeError, ValueError) as exc:
            raise ProblemError(f"bad tolerance: {exc}") from None
    else:
        if tol is not None or data.get("tolerance") is not None:
            raise ProblemError("a tolerance only applies in float mode")
        field = EXACT
    n = sig.n
    matrix = _rows(data["matrix"], n, "matrix", field) if "matrix" in data else None
    basis = None
    if data.get("basis") is not None:
        basis = tuple(Vector._raw(r) for r in _rows(data["basis"], n, "basis", field))
        if linalg.rank(tuple(v.coords for v in basis), field) != n:
            raise ProblemError("basis rows are linearly dependent")
    coordinates = data.get("coordinates", "basis")
    if coordinates not in ("basis", "canonical"):
        raise ProblemError(f"coordinates must be 'basis' or 'canonical', got {coordinates!r}")
    reflectors = None
    if data.get("reflectors") is not None:
        refl = data["reflectors"]
        if not isinstance(refl, list):
            raise ProblemError("reflectors must be a list of vectors")
        vecs = []
        for i, r in enumerate(refl):
            if not isinstance(r, list) or len(r) != n:
                raise ProblemError(f"reflector {i} must have {n} entries")
            try:
                vecs.append(Vector._raw(tuple(parse_scalar(x, field) for x in r)))
            except ValueError as exc:
                raise ProblemError(f"reflector {i}: {exc}") from None
        reflectors = tuple(vecs)
    problem = Problem(sig, field, matrix, basis, coordinates, reflectors)
    if not problem.basis_is_orthogonal():
        object.__setattr__(problem, "warnings", ("basis is not orthogonal; orthogonalized before use",))
    return problem


def load_problem(text: str, mode: Optional[str] = None, tol: Optional[float] = None) -> Problem:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProblemError(f"invalid JSON: {exc}") from None
    return parse_problem(data, mode, tol)


def report_to_json(problem: Problem, report: DecompositionReport) -> dict[str, Any]:
    seq = report.sequence
    basis = seq.source.basis
    out: dict[str, Any] = {"problem": problem.echo()}
    if problem.basis is not None and not problem.basis_is_orthogonal():
        out["orthogonal_basis"] = [vector_to_json(v) for v in basis]
    out.update(
        reflectors=[vector_to_json(v) for v in seq.reflectors],
        householder_matrices=[matrix_to_json(m) for m in report.householder_matrices],
        achieved_count=report.achieved_count,
        grade_lower_bound=report.grade_lower_bound,
        kernel_dim=report.kernel_dim,
        kernel_nondegenerate=report.kernel_nondegenerate,
        minimality_certified=report.minimality_certified,
        recomposition_ok=report.recomposition_ok,
        artinian_branches=seq.artinian_branches,
        rebased=seq.rebased,
        warnings=list(problem.warnings + report.warnings),
    )
    return out


def _encode(obj, depth: int) -> str:
    pad, inner = "  " * depth, "  " * (depth + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner}{json.dumps(k)}: {_encode(v, depth + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, list):
        if all(not isinstance(x, (dict, list)) for x in obj):
            return json.dumps(obj)
        items = [inner + _encode(x, depth + 1) for x in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    return json.dumps(obj)


def dumps(obj) -> str:
    """JSON with one line per vector or matrix row."""
    return _encode(obj, 0) + "\n"
