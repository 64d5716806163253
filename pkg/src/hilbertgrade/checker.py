"""End-to-end analysis: group, fixed-space dimension, series, grade, verdict.

``analyze`` runs one group through the whole pipeline and packages the
outcome as an :class:`AnalysisReport`; ``battery`` runs the built-in corpus
and hard-fails on any bound violation (a violation would mean a bug, since
the bound is a theorem).
"""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from .errors import InternalConsistencyError
from .fields import GF, QQ, Field
from .groups import (
    DEFAULT_CLOSURE_CAP,
    GroupSpec,
    MatrixGroup,
    close,
    dual_rep,
    fixed_subspace_dim,
    is_modular,
)
from .matrices import Matrix
from .molien import molien_series
from .oracle import (
    DEFAULT_BASIS_BOUND,
    ReconstructionError,
    hilbert_values,
    reconstruct_modular_series,
)
from .quasipoly import QuasiPolynomial, from_rational, grade, grade_from_poles, minimal_period
from .series import FormCheckError, RationalSeries, UniPoly, form_check


class TheoremViolationError(RuntimeError):
    """A battery report failed the grade bound; carries the reports."""

    def __init__(self, labels: list[str], reports: list["AnalysisReport"]):
        super().__init__(f"grade bound violated for: {', '.join(labels)}")
        self.labels = labels
        self.reports = reports


@dataclass(frozen=True)
class AnalysisOptions:
    """Tuning knobs for :func:`analyze`.

    ``oracle_degree`` drives both the characteristic-0 cross-check and the
    modular reconstruction window; ``None`` skips the brute-force pass
    entirely (no series over prime fields in that case).
    """

    oracle_degree: int | None = 12
    margin: int = 4
    closure_cap: int = DEFAULT_CLOSURE_CAP
    basis_bound: int = DEFAULT_BASIS_BOUND
    run_form_check: bool = True


@dataclass(frozen=True)
class FormCheckRecord:
    ok: bool
    hsop_degrees: tuple[int, ...] | None = None
    numerator: UniPoly | None = None
    value_at_one: Fraction | None = None
    integral: bool | None = None
    offending_m: int | None = None
    excess: int | None = None


@dataclass(frozen=True)
class AnalysisReport:
    """Everything the pipeline established about one group."""

    label: str
    field_name: str
    dimension: int
    order: int
    modular: bool
    r: int
    series: RationalSeries | None
    series_provenance: str  # "molien" | "reconstructed" | "absent"
    verified_degree: int | None
    quasi: QuasiPolynomial | None
    grade: int | None
    bound: int
    theorem_ok: bool | None
    sharp: bool | None
    form_check: FormCheckRecord | None
    oracle_values: tuple[int, ...] | None
    oracle_check_degree: int | None

    def __post_init__(self):
        if self.r > self.dimension:
            raise ValueError("fixed-space dimension cannot exceed the ambient dimension")


def analyze(
    spec: GroupSpec, options: AnalysisOptions | None = None, label: str = ""
) -> AnalysisReport:
    """Full pipeline for one group spec."""
    opts = options or AnalysisOptions()
    grp = close(spec, opts.closure_cap)
    d = spec.dimension
    r = fixed_subspace_dim([dual_rep(g) for g in spec.generators])
    modular = is_modular(grp)

    series: RationalSeries | None = None
    provenance = "absent"
    verified_degree: int | None = None
    values: tuple[int, ...] | None = None
    oracle_check_degree: int | None = None

    if spec.field.characteristic == 0:
        series = molien_series(grp)
        provenance = "molien"
        if opts.oracle_degree is not None:
            values = tuple(
                hilbert_values(grp, opts.oracle_degree, basis_bound=opts.basis_bound)
            )
            expanded = series.expand(opts.oracle_degree)
            if expanded != [Fraction(v) for v in values]:
                raise InternalConsistencyError(
                    "averaged series disagrees with brute-force dimensions"
                )
            oracle_check_degree = opts.oracle_degree
    elif opts.oracle_degree is not None:
        values = tuple(
            hilbert_values(grp, opts.oracle_degree, basis_bound=opts.basis_bound)
        )
        try:
            fit = reconstruct_modular_series(
                values, spec.field.characteristic, d, opts.margin
            )
            series = fit.series
            provenance = "reconstructed"
            verified_degree = fit.verified_degree
        except ReconstructionError:
            pass  # partial report: r and the values still go out

    quasi: QuasiPolynomial | None = None
    grade_value: int | None = None
    fc_record: FormCheckRecord | None = None
    if series is not None:
        qp = from_rational(series)
        by_table = grade(qp)
        by_poles = grade_from_poles(series)
        if by_table != by_poles:
            raise InternalConsistencyError(
                f"grade mismatch: table says {by_table}, poles say {by_poles}"
            )
        grade_value = by_table
        quasi = minimal_period(qp)
        if opts.run_form_check:
            fc_record = _run_form_check(series, r, d, grp)

    bound = d - r - 1
    theorem_ok = None if grade_value is None else grade_value <= bound
    sharp = None if grade_value is None else grade_value == bound
    return AnalysisReport(
        label=label,
        field_name=spec.field.name,
        dimension=d,
        order=grp.order,
        modular=modular,
        r=r,
        series=series,
        series_provenance=provenance,
        verified_degree=verified_degree,
        quasi=quasi,
        grade=grade_value,
        bound=bound,
        theorem_ok=theorem_ok,
        sharp=sharp,
        form_check=fc_record,
        oracle_values=values,
        oracle_check_degree=oracle_check_degree,
    )


def _run_form_check(
    series: RationalSeries, r: int, d: int, grp: MatrixGroup
) -> FormCheckRecord:
    big_l = lcm(grp.order, *series.denominator_exponents)
    try:
        q = form_check(series, r, d, big_l)
    except FormCheckError as err:
        return FormCheckRecord(ok=False, offending_m=err.offending_m, excess=err.excess)
    return FormCheckRecord(
        ok=True,
        hsop_degrees=(1,) * r + (big_l,) * (d - r),
        numerator=q,
        value_at_one=q.evaluate(Fraction(1)),
        integral=q.is_integral(),
    )


# -- built-in corpus -------------------------------------------------------


@dataclass(frozen=True)
class BatteryEntry:
    label: str
    spec: GroupSpec
    options: AnalysisOptions


def _perm_matrix(field: Field, images: Sequence[int]) -> Matrix:
    d = len(images)
    zero, one = field.zero, field.one
    entries = [zero] * (d * d)
    for i, img in enumerate(images):
        entries[i * d + img] = one
    return Matrix._raw(field, d, d, tuple(entries))

def _diag(field: Field, values: Sequence[int]) -> Matrix:
    d = len(values)
    entries = [field.zero] * (d * d)
    for i, v in enumerate(values):
        entries[i * d + i] = field.coerce(v)
    return Matrix._raw(field, d, d, tuple(entries))


def battery_corpus() -> list[BatteryEntry]:
    """The fixed regression corpus."""
    default = AnalysisOptions()
    entries: list[BatteryEntry] = []

    for d in range(1, 5):
        spec = GroupSpec(QQ, d, (Matrix.identity(QQ, d),))
        entries.append(BatteryEntry(f"trivial_d{d}", spec, default))

    swap = Matrix.from_rows(QQ, [[0, 1], [1, 0]])
    entries.append(BatteryEntry("swap_s5", GroupSpec(QQ, 2, (swap,)), default))

    entries.append(
        BatteryEntry("neg_identity_d2", GroupSpec(QQ, 2, (_diag(QQ, [-1, -1]),)), default)
    )
    entries.append(
        BatteryEntry("diag_sign_d2", GroupSpec(QQ, 2, (_diag(QQ, [1, -1]),)), default)
    )
    entries.append(
        BatteryEntry(
            "sign_diag_d3",
            GroupSpec(
                QQ,
                3,
                (_diag(QQ, [-1, 1, 1]), _diag(QQ, [1, -1, 1]), _diag(QQ, [1, 1, -1])),
            ),
            default,
        )
    )
    entries.append(
        BatteryEntry(
            "perm_s3",
            GroupSpec(QQ, 3, (_perm_matrix(QQ, [1, 0, 2]), _perm_matrix(QQ, [1, 2, 0]))),
            default,
        )
    )
    entries.append(
        BatteryEntry(
            "perm_s4",
            GroupSpec(
                QQ, 4, (_perm_matrix(QQ, [1, 0, 2, 3]), _perm_matrix(QQ, [1, 2, 3, 0]))
            ),
            default,
        )
    )
    entries.append(
        BatteryEntry(
            "signed_perm_b2",
            GroupSpec(QQ, 2, (_perm_matrix(QQ, [1, 0]), _diag(QQ, [1, -1]))),
            default,
        )
    )
    entries.append(
        BatteryEntry(
            "signed_perm_b3",
            GroupSpec(
                QQ,
                3,
                (
                    _perm_matrix(QQ, [1, 0, 2]),
                    _perm_matrix(QQ, [1, 2, 0]),
                    _diag(QQ, [1, 1, -1]),
                ),
            ),
            default,
        )
    )
    rotation = Matrix.from_rows(QQ, [[0, -1], [1, -1]])
    entries.append(BatteryEntry("rotation_c3", GroupSpec(QQ, 2, (rotation,)), default))

    gf2, gf3 = GF(2), GF(3)
    shear2 = Matrix.from_rows(gf2, [[1, 1], [0, 1]])
    entries.append(
        BatteryEntry(
            "unipotent_gf2",
            GroupSpec(gf2, 2, (shear2,)),
            AnalysisOptions(oracle_degree=12, margin=4),
        )
    )
    shear3 = Matrix.from_rows(gf3, [[1, 1], [0, 1]])
    entries.append(
        BatteryEntry(
            "unipotent_gf3",
            GroupSpec(gf3, 2, (shear3,)),
            AnalysisOptions(oracle_degree=16, margin=4),
        )
    )
    upper12 = Matrix.from_rows(gf2, [[1, 1, 0], [0, 1, 0], [0, 0, 1]])
    upper23 = Matrix.from_rows(gf2, [[1, 0, 0], [0, 1, 1], [0, 0, 1]])
    entries.append(
        BatteryEntry(
            "unitriangular_gf2_d3",
            GroupSpec(gf2, 3, (upper12, upper23)),
            AnalysisOptions(oracle_degree=18, margin=4),
        )
    )
    gl_swap = Matrix.from_rows(gf2, [[0, 1], [1, 0]])
    entries.append(
        BatteryEntry(
            "gl2_gf2",
            GroupSpec(gf2, 2, (shear2, gl_swap)),
            AnalysisOptions(oracle_degree=12, margin=4),
        )
    )
    return entries


def battery(workers: int = 1) -> list[AnalysisReport]:
    """Analyze the whole corpus; raise on any grade-bound violation.

    Reports come back in corpus order regardless of ``workers``, and their
    content is byte-for-byte identical across worker counts.
    """
    entries = battery_corpus()

    def run(entry: BatteryEntry) -> AnalysisReport:
        return analyze(entry.spec, entry.options, label=entry.label)

    if workers <= 1:
        reports = [run(e) for e in entries]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(run, entries))
    bad = [rep.label for rep in reports if rep.theorem_ok is not True]
    if bad:
        raise TheoremViolationError(bad, reports)
    return reports


def random_signed_permutation_spec(
    rng: random.Random, max_dim: int = 4, max_generators: int = 3
) -> GroupSpec:
    """A random finite subgroup spec: signed permutation generators.

    Signed permutation matrices always generate a finite group (a subgroup
    of the hyperoctahedral group), with easily varied fixed-space
    dimensions; that makes them a good randomized test family.
    """
    d = rng.randint(2, max_dim)
    gens = []
    for _ in range(rng.randint(1, max_generators)):
        images = list(range(d))
        rng.shuffle(images)
        rows = [[0] * d for _ in range(d)]
        for i, img in enumerate(images):
            rows[i][img] = rng.choice((1, -1))
        gens.append(Matrix.from_rows(QQ, rows))
    return GroupSpec(QQ, d, tuple(gens))


__all__ = [
    "AnalysisOptions",
    "AnalysisReport",
    "BatteryEntry",
    "FormCheckRecord",
    "TheoremViolationError",
    "analyze",
    "battery",
    "battery_corpus",
    "random_signed_permutation_spec",
]
