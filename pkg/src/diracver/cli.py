"""Batch front door: parse matrix-set files, run audits, render reports.

Exit codes: 0 pass/feasible, 1 fail, 2 infeasible-by-certificate,
3 usage or parse error.  Reports are deterministic: identical invocations
produce byte-identical output.

Matrix-set files are JSON with rational-string entries; see README.md for
the schema and for the `lin:lo:hi:count` grid syntax.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .algebra import ComplexRational, render_epoly, render_fraction, render_multipoly, render_scalar
from .clifford import (
    StructuralViolationError,
    beta_spectrum,
    canonicalize_beta,
    catalog,
    check_alpha_structure,
    check_anticommutation,
    check_trace_det,
)
from .dispersion import (
    DegeneracyRequirement,
    ForcedCoefficientSolution,
    check_dispersion,
    render_certificate,
    render_solution,
    solve_forced_coefficients,
)
from .spectrum import MomentumSample, sweep, write_csv
from .symmat import HermiticityError, Matrix, MatrixSet, trace_and_det

__all__ = [
    "MatrixFileError",
    "UsageError",
    "RunReport",
    "parse_matrix_file",
    "serialize_matrix_set",
    "parse_grid_spec",
    "main",
    "app",
]

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INFEASIBLE = 2
EXIT_USAGE = 3

_RATIONAL_RE = re.compile(r"-?[0-9]+(/[1-9][0-9]*)?\Z")


class UsageError(Exception):
    """Bad command line or bad request parameters; maps to exit code 3."""


class MatrixFileError(ValueError):
    """A matrix-set file failed to parse or validate."""

    def __init__(self, message: str, location: str | None = None):
        self.location = location
        super().__init__(f"{message} (at {location})" if location else message)


# ---------------------------------------------------------------------------
# matrix-set file format
# ---------------------------------------------------------------------------


def _parse_rational(text: object, location: str) -> Fraction:
    if not isinstance(text, str) or not _RATIONAL_RE.match(text):
        raise MatrixFileError(f"not a rational literal: {text!r}", location)
    return Fraction(text)


def _parse_matrix(data: object, n: int, name: str) -> Matrix:
    if not isinstance(data, list) or len(data) != n:
        raise MatrixFileError(f"matrix must be a list of {n} rows", name)
    rows = []
    for i, row in enumerate(data):
        if not isinstance(row, list) or len(row) != n:
            raise MatrixFileError(f"row must have {n} entries", f"{name}[{i}]")
        out = []
        for j, entry in enumerate(row):
            if not isinstance(entry, list) or len(entry) != 2:
                raise MatrixFileError("entry must be a [re, im] pair", f"{name}[{i}][{j}]")
            re_part = _parse_rational(entry[0], f"{name}[{i}][{j}].re")
            im_part = _parse_rational(entry[1], f"{name}[{i}][{j}].im")
            out.append(ComplexRational(re_part, im_part))
        rows.append(tuple(out))
    return tuple(rows)


def parse_matrix_file(path: str | Path) -> MatrixSet:
    """Read and validate a matrix-set JSON file into an exact MatrixSet."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise MatrixFileError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixFileError(
            f"invalid JSON: {exc.msg}", f"line {exc.lineno}, column {exc.colno}"
        ) from exc
    if not isinstance(data, dict):
        raise MatrixFileError("top level must be a JSON object")
    n = data.get("n")
    if not isinstance(n, int) or n not in (2, 3, 4):
        raise MatrixFileError(f"n must be 2, 3, or 4, got {n!r}", "n")
    label = data.get("label", "")
    if not isinstance(label, str):
        raise MatrixFileError("label must be a string", "label")
    alphas_data = data.get("alpha")
    if not isinstance(alphas_data, list) or len(alphas_data) != 3:
        count = len(alphas_data) if isinstance(alphas_data, list) else alphas_data
        raise MatrixFileError(f"need exactly 3 alpha matrices, got {count!r}", "alpha")
    alphas = tuple(_parse_matrix(alphas_data[k], n, f"alpha[{k}]") for k in range(3))
    beta = _parse_matrix(data.get("beta"), n, "beta")
    try:
        return MatrixSet(n, alphas, beta, label=label)
    except HermiticityError as exc:
        raise MatrixFileError(str(exc), exc.matrix_name) from exc


def _matrix_to_json(matrix: Matrix) -> list[list[list[str]]]:
    return [[[str(x.re), str(x.im)] for x in row] for row in matrix]


def serialize_matrix_set(mset: MatrixSet) -> str:
    """Render a MatrixSet as the JSON file format, bit-exact rationals as strings."""
    payload = {
        "n": mset.n,
        "label": mset.label,
        "alpha": [_matrix_to_json(a) for a in mset.alphas],
        "beta": _matrix_to_json(mset.beta),
    }
    return json.dumps(payload, indent=2) + "\n"


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RunReport:
    """Rendered findings of one command, with the exit-code verdict."""

    command: str
    verdict: str  # pass | fail | infeasible | error
    header: str
    sections: tuple[tuple[str, tuple[str, ...]], ...]

    def render(self) -> str:
        lines = [self.header, ""]
        for title, body in self.sections:
            lines.append(title)
            lines.extend(f"  {line}" for line in body)
            lines.append("")
        lines.append(f"verdict: {self.verdict.upper()}")
        return "\n".join(lines) + "\n"

    @property
    def exit_code(self) -> int:
        return {"pass": EXIT_PASS, "fail": EXIT_FAIL, "infeasible": EXIT_INFEASIBLE}.get(
            self.verdict, EXIT_USAGE
        )


def _matrix_summary(matrix: Matrix) -> str:
    for i, row in enumerate(matrix):
        for j, value in enumerate(row):
            if value:
                return f"nonzero, first at ({i + 1},{j + 1}): {render_scalar(value)}"
    return "0"


def _result_line(passed: bool) -> str:
    return f"result: {'PASS' if passed else 'FAIL'}"


def _norm_str(value) -> str:
    if isinstance(value, Fraction):
        return render_fraction(value)
    return f"{value:.12g}"


def _dispersion_section(mset: MatrixSet, r: int) -> tuple[tuple[str, tuple[str, ...]], bool]:
    report = check_dispersion(mset, r)
    lines = [f"characteristic polynomial: {render_epoly(report.char.poly)}"]
    for label, residual in zip(report.labels, report.residuals):
        lines.append(f"{label}: {render_multipoly(residual)}")
    lines.append(_result_line(report.passed))
    return (f"[dispersion] multiplicity {r}", tuple(lines)), report.passed


def _anticommutation_section(mset: MatrixSet) -> tuple[tuple[str, tuple[str, ...]], bool]:
    report = check_anticommutation(mset)
    lines = []
    for (a, b), defect in report.pairwise.items():
        lines.append(f"{{{a},{b}}}: {_matrix_summary(defect)}")
    for name, defect in report.squares.items():
        lines.append(f"{name}^2 - 1: {_matrix_summary(defect)}")
    lines.append(_result_line(report.passed))
    return ("[anticommutation]", tuple(lines)), report.passed


def _trace_det_section(mset: MatrixSet) -> tuple[tuple[str, tuple[str, ...]], bool]:
    report = check_trace_det(mset)
    lines = [
        f"{name}: trace = {render_scalar(tr)}, det = {render_scalar(det)}"
        for name, (tr, det) in report.values.items()
    ]
    lines.append(_result_line(report.passed))
    return ("[trace-det]", tuple(lines)), report.passed


def _beta_spectrum_section(mset: MatrixSet) -> tuple[tuple[str, tuple[str, ...]], bool]:
    try:
        spectrum = beta_spectrum(mset)
    except StructuralViolationError as exc:
        return ("[beta-spectrum]", (f"violation: {exc}", _result_line(False))), False
    passed = spectrum == (1, 1, -1, -1)
    lines = ("eigenvalues: " + ", ".join(f"{v:+d}" for v in spectrum), _result_line(passed))
    return ("[beta-spectrum]", lines), passed


def _structure_section(mset: MatrixSet) -> tuple[tuple[str, tuple[str, ...]], bool]:
    try:
        canonical = canonicalize_beta(mset)
    except (ValueError, StructuralViolationError) as exc:
        return ("[alpha-structure]", (f"violation: {exc}", _result_line(False))), False
    report = check_alpha_structure(canonical)
    lines = [f"transform: {canonical.description}"]
    for k, (blocks_ok, norm) in enumerate(zip(report.alpha_blocks, report.norm_values), start=1):
        lines.append(
            f"alpha{k}: diagonal blocks vanish = {'yes' if blocks_ok else 'no'}, "
            f"norm condition = {_norm_str(norm)}"
        )
    lines.append(_result_line(report.passed))
    return ("[alpha-structure]", tuple(lines)), report.passed


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_verify(args: argparse.Namespace) -> int:
    mset = parse_matrix_file(args.file)
    r = args.multiplicity
    if not 1 <= r <= mset.n:
        raise UsageError(f"multiplicity {r} outside 1..{mset.n}")
    sections = []
    verdicts = []
    section, passed = _dispersion_section(mset, r)
    sections.append(section)
    verdicts.append(passed)
    section, passed = _anticommutation_section(mset)
    sections.append(section)
    verdicts.append(passed)
    if mset.n == 4:
        for builder in (_trace_det_section, _beta_spectrum_section, _structure_section):
            section, passed = builder(mset)
            sections.append(section)
            verdicts.append(passed)
    else:
        sections.append(("[trace-det]", ("skipped (requires n = 4)",)))
        sections.append(("[beta-spectrum]", ("skipped (requires n = 4)",)))
        sections.append(("[alpha-structure]", ("skipped (requires n = 4)",)))
    report = RunReport(
        "verify",
        "pass" if all(verdicts) else "fail",
        f"matrix set: {mset.label or '(unlabeled)'} (n = {mset.n})",
        tuple(sections),
    )
    print(report.render(), end="")
    return report.exit_code


def cmd_solve(args: argparse.Namespace) -> int:
    try:
        req = DegeneracyRequirement(args.n, args.multiplicity)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    result = solve_forced_coefficients(req)
    if isinstance(result, ForcedCoefficientSolution):
        for line in render_solution(result):
            print(line)
        return EXIT_PASS
    for line in render_certificate(result):
        print(line)
    return EXIT_INFEASIBLE


_DERIVE_STEPS = (
    (
        "trace",
        "the coefficient of E^3 must vanish identically, forcing every trace to zero",
    ),
    (
        "det",
        "the pure p1^4, p2^4, p3^4, m^4 terms of the constant coefficient force unit determinants",
    ),
    (
        "beta-spectrum",
        "beta must square to the identity with eigenvalues +1, +1, -1, -1",
    ),
    (
        "canonical-form",
        "a unitary change of basis brings beta to diag(+1, +1, -1, -1)",
    ),
    (
        "alpha-structure",
        "in the canonical basis each alpha keeps only its off-diagonal 2x2 block, with squared norm 2",
    ),
    (
        "anticommutators",
        "the matrices pairwise anticommute and square to the identity",
    ),
)


def cmd_derive(args: argparse.Namespace) -> int:
    mset = parse_matrix_file(args.file)
    if mset.n != 4:
        raise UsageError("derive walks the four-component argument; the file must have n = 4")
    values = trace_and_det(mset)
    zero = ComplexRational(0)
    one = ComplexRational(1)

    sections = []
    verdicts = []

    def add(step: int, lines: Sequence[str], passed: bool) -> None:
        tag, text = _DERIVE_STEPS[step]
        sections.append((f"step {step + 1} [{tag}]: {text}", tuple(list(lines) + [_result_line(passed)])))
        verdicts.append(passed)

    trace_lines = [", ".join(f"Tr({name}) = {render_scalar(tr)}" for name, (tr, _) in values.items())]
    add(0, trace_lines, all(tr == zero for tr, _ in values.values()))

    det_lines = [", ".join(f"det({name}) = {render_scalar(det)}" for name, (_, det) in values.items())]
    add(1, det_lines, all(det == one for _, det in values.values()))

    try:
        spectrum = beta_spectrum(mset)
        add(2, ["eigenvalues: " + ", ".join(f"{v:+d}" for v in spectrum)], spectrum == (1, 1, -1, -1))
    except StructuralViolationError as exc:
        add(2, [f"violation: {exc}"], False)

    canonical = None
    try:
        canonical = canonicalize_beta(mset)
        add(3, [f"transform: {canonical.description}"], True)
    except (ValueError, StructuralViolationError) as exc:
        add(3, [f"violation: {exc}"], False)

    if canonical is not None:
        report = check_alpha_structure(canonical)
        lines = [
            f"alpha{k}: blocks vanish = {'yes' if ok else 'no'}, norm = {_norm_str(norm)}"
            for k, (ok, norm) in enumerate(zip(report.alpha_blocks, report.norm_values), start=1)
        ]
        add(4, lines, report.passed)
    else:
        add(4, ["skipped: no canonical form"], False)

    anti = check_anticommutation(mset)
    defects = sum(
        0 if _matrix_summary(d) == "0" else 1
        for d in list(anti.pairwise.values()) + list(anti.squares.values())
    )
    total = len(anti.pairwise) + len(anti.squares)
    add(5, [f"{total} relations checked, {total - defects} clean, {defects} with nonzero defects"], anti.passed)

    report = RunReport(
        "derive",
        "pass" if all(verdicts) else "fail",
        f"derivation audit: {mset.label or '(unlabeled)'} (n = {mset.n})",
        tuple(sections),
    )
    print(report.render(), end="")
    return report.exit_code


def parse_grid_spec(spec: str, mass: float) -> list[MomentumSample]:
    """Build momentum samples from per-axis `lin:lo:hi:count` specs.

    A single spec applies to all three axes; otherwise give three,
    comma-separated.  Rows are ordered with px outermost.
    """
    parts = spec.split(",")
    if len(parts) == 1:
        parts = parts * 3
    if len(parts) != 3:
        raise UsageError(f"grid spec needs 1 or 3 comma-separated axes, got {len(parts)}")
    axes = []
    for part in parts:
        fields = part.split(":")
        if len(fields) != 4 or fields[0] != "lin":
            raise UsageError(f"bad grid axis {part!r}: expected lin:lo:hi:count")
        try:
            lo, hi = float(fields[1]), float(fields[2])
            count = int(fields[3])
        except ValueError as exc:
            raise UsageError(f"bad grid axis {part!r}: {exc}") from exc
        if count < 1:
            raise UsageError(f"bad grid axis {part!r}: count must be at least 1")
        if count == 1:
            axes.append([lo])
        else:
            axes.append([lo + (hi - lo) * k / (count - 1) for k in range(count)])
    return [
        MomentumSample((x, y, z), mass) for x in axes[0] for y in axes[1] for z in axes[2]
    ]


def cmd_spectrum(args: argparse.Namespace) -> int:
    mset = parse_matrix_file(args.file)
    if args.mass < 0:
        raise UsageError("mass must be nonnegative")
    grid = parse_grid_spec(args.grid, args.mass)
    result = sweep(mset, grid)
    out_path = Path(args.out)
    with out_path.open("w", encoding="utf-8", newline="") as stream:
        write_csv(result.rows, stream)
    print(f"spectrum sweep: {mset.label or '(unlabeled)'} (n = {mset.n}), mass = {args.mass:g}, samples = {len(grid)}")
    if result.flagged:
        shown = ", ".join(str(k) for k in result.flagged[:5])
        more = "" if len(result.flagged) <= 5 else f" (+{len(result.flagged) - 5} more)"
        print(f"flagged rows: {len(result.flagged)} at indices {shown}{more}")
    else:
        print("flagged rows: 0")
    print(f"csv written: {out_path}")
    return EXIT_FAIL if result.flagged else EXIT_PASS


def cmd_catalog(args: argparse.Namespace) -> int:
    try:
        mset = catalog(args.name)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    text = serialize_matrix_set(mset)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"wrote {args.out}")
    else:
        print(text, end="")
    return EXIT_PASS


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # noqa: D401 - argparse hook
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="diracver",
        description="Exact audits of Dirac matrix sets and dispersion-degeneracy requirements.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="full audit of a matrix-set file")
    p_verify.add_argument("file")
    p_verify.add_argument("--multiplicity", type=int, default=2)
    p_verify.set_defaults(func=cmd_verify)

    p_solve = sub.add_parser("solve", help="forced coefficients or an impossibility certificate")
    p_solve.add_argument("--n", type=int, required=True)
    p_solve.add_argument("--multiplicity", type=int, required=True)
    p_solve.set_defaults(func=cmd_solve)

    p_derive = sub.add_parser("derive", help="step-by-step structural walkthrough of a set")
    p_derive.add_argument("file")
    p_derive.set_defaults(func=cmd_derive)

    p_spectrum = sub.add_parser("spectrum", help="numeric eigenvalue sweep to CSV")
    p_spectrum.add_argument("file")
    p_spectrum.add_argument("--mass", type=float, required=True)
    p_spectrum.add_argument("--grid", required=True)
    p_spectrum.add_argument("--out", required=True)
    p_spectrum.set_defaults(func=cmd_spectrum)

    p_catalog = sub.add_parser("catalog", help="emit a named matrix set as JSON")
    p_catalog.add_argument("name")
    p_catalog.add_argument("--out", default=None)
    p_catalog.set_defaults(func=cmd_catalog)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MatrixFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def app() -> None:
    raise SystemExit(main())
