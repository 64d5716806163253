"""Command-line front end: parse group-spec files, run analyses, render reports.

Group specs are JSON documents:

    {
      "field": "QQ",                  // or "GF(p)" with p prime
      "dimension": 2,
      "generators": [[[0, 1], [1, 0]]]
    }

Rational entries are integers or "a/b" strings; prime-field entries are
integers (reduced mod p).  Reports render as aligned text or as JSON with
every rational serialized as an "a/b" string; floats never appear.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from pathlib import Path

from .checker import (
    AnalysisOptions,
    AnalysisReport,
    TheoremViolationError,
    analyze,
    battery,
)
from .errors import ResourceLimitError
from .fields import GF, QQ, Field, PrimeField
from .groups import GroupSpec, close
from .matrices import Matrix
from .oracle import hilbert_values

EXIT_OK = 0
EXIT_THEOREM_VIOLATION = 1
EXIT_INPUT_ERROR = 2
EXIT_RESOURCE_LIMIT = 3

_GF_PATTERN = re.compile(r"^GF\((\d+)\)$")


class GroupSpecError(ValueError):
    """A group-spec document failed to parse or validate."""


def parse_group_spec(text: str) -> GroupSpec:
    """Parse a JSON group-spec document into a validated GroupSpec."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise GroupSpecError(
            f"malformed document: {err.msg} (line {err.lineno}, column {err.colno})"
        ) from None
    if not isinstance(doc, dict):
        raise GroupSpecError("document must be a JSON object")
    unknown = set(doc) - {"field", "dimension", "generators"}
    if unknown:
        raise GroupSpecError(f"unknown key(s): {', '.join(sorted(unknown))}")

    field = _parse_field(doc)
    dimension = _parse_dimension(doc)
    generators = _parse_generators(doc, field, dimension)
    try:
        return GroupSpec(field, dimension, generators)
    except (TypeError, ValueError) as err:
        raise GroupSpecError(str(err)) from None


def _parse_field(doc: dict) -> Field:
    if "field" not in doc:
        raise GroupSpecError("missing key 'field'")
    raw = doc["field"]
    if raw == "QQ":
        return QQ
    if isinstance(raw, str):
        match = _GF_PATTERN.match(raw)
        if match:
            try:
                return GF(int(match.group(1)))
            except ValueError as err:
                raise GroupSpecError(f"field: {err}") from None
    raise GroupSpecError(f"field must be \"QQ\" or \"GF(p)\", got {raw!r}")


def _parse_dimension(doc: dict) -> int:
    if "dimension" not in doc:
        raise GroupSpecError("missing key 'dimension'")
    dim = doc["dimension"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise GroupSpecError(f"dimension must be a positive integer, got {dim!r}")
    return dim


def _parse_generators(doc: dict, field: Field, dimension: int) -> tuple[Matrix, ...]:
    if "generators" not in doc:
        raise GroupSpecError("missing key 'generators'")
    raw = doc["generators"]
    if not isinstance(raw, list) or not raw:
        raise GroupSpecError("generators must be a nonempty list of matrices")
    out = []
    for gi, gen in enumerate(raw):
        where = f"generators[{gi}]"
        if not isinstance(gen, list) or len(gen) != dimension:
            raise GroupSpecError(f"{where}: expected {dimension} rows")
        entries = []
        for ri, row in enumerate(gen):
            if not isinstance(row, list) or len(row) != dimension:
                raise GroupSpecError(
                    f"{where}[{ri}]: expected a row of length {dimension}"
                )
            for ci, cell in enumerate(row):
                entries.append(_parse_entry(cell, field, f"{where}[{ri}][{ci}]"))
        out.append(Matrix(field, dimension, dimension, entries))
    return tuple(out)


def _parse_entry(cell, field: Field, where: str):
    if isinstance(cell, bool) or isinstance(cell, float):
        raise GroupSpecError(f"{where}: entries must be exact (int or \"a/b\"), got {cell!r}")
    if isinstance(field, PrimeField):
        if not isinstance(cell, int):
            raise GroupSpecError(f"{where}: GF(p) entries must be integers, got {cell!r}")
        return field.coerce(cell)
    if isinstance(cell, int):
        return Fraction(cell)
    if isinstance(cell, str):
        try:
            return Fraction(cell)
        except (ValueError, ZeroDivisionError):
            raise GroupSpecError(f"{where}: not a rational \"a/b\" string: {cell!r}") from None
    raise GroupSpecError(f"{where}: unsupported entry {cell!r}")


def render_group_spec(spec: GroupSpec) -> str:
    """Inverse of :func:`parse_group_spec` (round-trips to an equal spec)."""
    gens = []
    for g in spec.generators:
        rows = []
        for i in range(g.rows):
            rows.append([_entry_json(x) for x in g.row(i)])
        gens.append(rows)
    doc = {"field": spec.field.name, "dimension": spec.dimension, "generators": gens}
    return json.dumps(doc, indent=2) + "\n"


def _entry_json(x):
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return x.value  # GFElement


def _frac_str(x: Fraction) -> str:
    return str(x)


def report_to_dict(report: AnalysisReport) -> dict:
    """JSON-ready dict; every rational is an "a/b" string, never a float."""
    doc: dict = {
        "label": report.label,
        "field": report.field_name,
        "dimension": report.dimension,
        "order": report.order,
        "modular": report.modular,
        "r": report.r,
        "bound": report.bound,
        "grade": report.grade,
        "theorem_ok": report.theorem_ok,
        "sharp": report.sharp,
    }
    if report.series is None:
        doc["series"] = None
    else:
        doc["series"] = {
            "provenance": report.series_provenance,
            "verified_degree": report.verified_degree,
            "numerator_coefficients": [_frac_str(c) for c in report.series.numerator.coeffs],
            "denominator_exponents": list(report.series.denominator_exponents),
            "display": report.series.display(),
        }
    if report.quasi is None:
        doc["quasi_polynomial"] = None
    else:
        qp = report.quasi
        block: dict = {"period": qp.period, "degree": qp.degree, "n_min": qp.n_min}
        for j in range(qp.degree, -1, -1):
            block[f"a{j}_row"] = [_frac_str(c) for c in qp.table[j]]
        doc["quasi_polynomial"] = block
    if report.form_check is None:
        doc["form_check"] = None
    elif report.form_check.ok:
        doc["form_check"] = {
            "ok": True,
            "hsop_degrees": list(report.form_check.hsop_degrees),
            "numerator": report.form_check.numerator.text(),
            "value_at_one": _frac_str(report.form_check.value_at_one),
            "integral": report.form_check.integral,
        }
    else:
        doc["form_check"] = {
            "ok": False,
            "offending_m": report.form_check.offending_m,
            "excess": report.form_check.excess,
        }
    doc["oracle_values"] = None if report.oracle_values is None else list(report.oracle_values)
    if report.oracle_check_degree is None:
        doc["oracle_check"] = None
    else:
        doc["oracle_check"] = {"from_degree": 0, "to_degree": report.oracle_check_degree}
    return doc


def render_report(report: AnalysisReport, fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps(report_to_dict(report), indent=2) + "\n"
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    lines = []
    if report.label:
        lines.append(f"== {report.label} ==")
    lines.append(f"field:            {report.field_name}")
    lines.append(f"dimension d:      {report.dimension}")
    lines.append(f"group order:      {report.order}")
    lines.append(f"modular:          {'yes' if report.modular else 'no'}")
    lines.append(f"r = dim (V*)^G:   {report.r}")
    if report.series is None:
        lines.append("series:           (not available)")
    else:
        tag = report.series_provenance
        if report.verified_degree is not None:
            tag += f", verified up to degree {report.verified_degree}"
        lines.append(f"series:           {report.series.display()}  ({tag})")
    if report.oracle_check_degree is not None:
        lines.append(
            f"oracle check:     dimensions 0..{report.oracle_check_degree} match the series"
        )
    if report.quasi is not None:
        qp = report.quasi
        lines.append(
            f"quasi-polynomial: period {qp.period}, degree {qp.degree}, valid for n >= {qp.n_min}"
        )
        for j in range(qp.degree, -1, -1):
            row = ", ".join(_frac_str(c) for c in qp.table[j])
            kind = "constant" if qp.row_is_constant(j) else "periodic"
            lines.append(f"  a_{j}: [{row}]  ({kind})")
    if report.grade is None:
        lines.append("grade = (not available)")
        lines.append(f"bound d-r-1 = {report.bound}")
    else:
        lines.append(f"grade = {report.grade}")
        lines.append(f"bound d-r-1 = {report.bound}")
        lines.append(
            "theorem grade <= d-r-1: " + ("OK" if report.theorem_ok else "VIOLATED")
        )
        if report.sharp:
            lines.append("SHARP: the grade attains the bound")
        else:
            lines.append(f"not sharp (grade {report.grade} < bound {report.bound})")
    if report.form_check is not None:
        fc = report.form_check
        if fc.ok:
            lines.append(
                f"form check at t=r: Q = {fc.numerator.text()}, Q(1) = {_frac_str(fc.value_at_one)}, "
                f"hsop degrees {list(fc.hsop_degrees)}"
            )
        else:
            lines.append(
                f"form check at t=r: FAILED (cyclotomic index {fc.offending_m}, "
                f"excess {fc.excess})"
            )
    if report.oracle_values is not None:
        lines.append("dimensions:       " + " ".join(str(v) for v in report.oracle_values))
    return "\n".join(lines) + "\n"


def render_battery(reports: list[AnalysisReport], fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps([report_to_dict(r) for r in reports], indent=2) + "\n"
    lines = []
    for rep in reports:
        status = "ok " if rep.theorem_ok else "BAD"
        sharp = " sharp" if rep.sharp else ""
        lines.append(
            f"{status} {rep.label}: field={rep.field_name} d={rep.dimension} "
            f"|G|={rep.order} r={rep.r} grade={rep.grade} bound={rep.bound}{sharp}"
        )
    bad = sum(1 for rep in reports if rep.theorem_ok is not True)
    if bad:
        lines.append(f"{len(reports)} groups analyzed, {bad} VIOLATED the grade bound")
    else:
        lines.append(f"{len(reports)} groups analyzed, all within the grade bound")
    return "\n".join(lines) + "\n"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hilbertgrade",
        description=(
            "Exact Hilbert series, quasi-polynomials and grade bounds for "
            "invariant rings of finite matrix groups."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_analyze = sub.add_parser("analyze", help="full analysis of one group spec")
    p_analyze.add_argument("spec", type=Path, help="path to a group-spec JSON file")
    p_analyze.add_argument("--oracle-degree", type=int, default=12, metavar="N")
    p_analyze.add_argument("--margin", type=int, default=4, metavar="M")
    p_analyze.add_argument("--closure-cap", type=int, default=None, metavar="C")
    p_analyze.add_argument("--json", action="store_true", help="emit a JSON report")
    p_analyze.add_argument("--out", type=Path, default=None, metavar="FILE")

    p_expand = sub.add_parser("expand", help="print invariant dimensions 0..N")
    p_expand.add_argument("spec", type=Path)
    p_expand.add_argument("--max-degree", type=int, required=True, metavar="N")
    p_expand.add_argument("--closure-cap", type=int, default=None, metavar="C")
    p_expand.add_argument("--out", type=Path, default=None, metavar="FILE")

    p_battery = sub.add_parser("battery", help="run the built-in regression corpus")
    p_battery.add_argument("--json", action="store_true")
    p_battery.add_argument("--workers", type=int, default=1, metavar="K")
    p_battery.add_argument("--out", type=Path, default=None, metavar="FILE")
    return parser


def _load_spec(path: Path) -> GroupSpec:
    try:
        text = path.read_text()
    except OSError as err:
        raise GroupSpecError(f"cannot read {path}: {err}") from None
    return parse_group_spec(text)


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


def _validate_args(args) -> None:
    checks = [
        ("--oracle-degree", getattr(args, "oracle_degree", None), 0),
        ("--margin", getattr(args, "margin", None), 1),
        ("--closure-cap", getattr(args, "closure_cap", None), 1),
        ("--max-degree", getattr(args, "max_degree", None), 0),
        ("--workers", getattr(args, "workers", None), 1),
    ]
    for flag, value, minimum in checks:
        if value is not None and value < minimum:
            raise GroupSpecError(f"{flag} must be >= {minimum}, got {value}")


def run(argv: list[str]) -> int:
    """Entry point; returns the process exit status."""
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        _validate_args(args)
        if args.command == "analyze":
            spec = _load_spec(args.spec)
            opt_kwargs = {"oracle_degree": args.oracle_degree, "margin": args.margin}
            if args.closure_cap is not None:
                opt_kwargs["closure_cap"] = args.closure_cap
            report = analyze(spec, AnalysisOptions(**opt_kwargs), label=args.spec.stem)
            _emit(render_report(report, "json" if args.json else "text"), args.out)
            if report.theorem_ok is False:
                return EXIT_THEOREM_VIOLATION
            return EXIT_OK
        if args.command == "expand":
            spec = _load_spec(args.spec)
            grp = close(spec) if args.closure_cap is None else close(spec, args.closure_cap)
            values = hilbert_values(grp, args.max_degree)
            _emit(" ".join(str(v) for v in values) + "\n", args.out)
            return EXIT_OK
        if args.command == "battery":
            try:
                reports = battery(workers=args.workers)
            except TheoremViolationError as err:
                _emit(render_battery(err.reports, "json" if args.json else "text"), args.out)
                sys.stderr.write(f"error: {err}\n")
                return EXIT_THEOREM_VIOLATION
            _emit(render_battery(reports, "json" if args.json else "text"), args.out)
            return EXIT_OK
        raise AssertionError("unreachable")
    except GroupSpecError as err:
        sys.stderr.write(f"error: {err}\n")
        return EXIT_INPUT_ERROR
    except ResourceLimitError as err:
        sys.stderr.write(f"error: {err}\n")
        return EXIT_RESOURCE_LIMIT


def main() -> None:
    sys.exit(run(sys.argv[1:]))


__all__ = [
    "EXIT_INPUT_ERROR",
    "EXIT_OK",
    "EXIT_RESOURCE_LIMIT",
    "EXIT_THEOREM_VIOLATION",
    "GroupSpecError",
    "main",
    "parse_group_spec",
    "render_battery",
    "render_group_spec",
    "render_report",
    "report_to_dict",
    "run",
]
