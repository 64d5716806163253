"""Brute-force invariant dimensions via the induced action on monomials.

This is the independent correctness oracle: it never touches the averaging
formula, works in every characteristic, and is the only series source over
prime fields.  Degree-n invariants are the common kernel of
(induced_action(g) - identity) over the generators.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from functools import lru_cache
from typing import Sequence

from .errors import ResourceLimitError
from .fields import is_prime
from .groups import MatrixGroup, dual_rep
from .matrices import Matrix
from .series import RationalSeries, UniPoly, reduce_series

DEFAULT_BASIS_BOUND = 20_000


class BasisSizeError(ResourceLimitError):
    """The monomial basis exceeded the configured desk-scale bound."""


class ReconstructionError(RuntimeError):
    """No denominator-compatible numerator fit the supplied values."""


class MonomialBasis:
    """Degree-n monomials in d variables, graded-lexicographic order.

    Monomials are exponent vectors summing to n, listed in descending
    lexicographic order: (n,0,...,0) first, (0,...,0,n) last.
    """

    __slots__ = ("d", "n", "monomials", "index")

    def __init__(self, d: int, n: int):
        if d < 1 or n < 0:
            raise ValueError("need d >= 1 and n >= 0")
        self.d = d
        self.n = n
        self.monomials = tuple(_exponent_vectors(d, n))
        self.index = {mono: i for i, mono in enumerate(self.monomials)}

    def __len__(self):
        return len(self.monomials)


def _exponent_vectors(d: int, n: int):
    if d == 1:
        yield (n,)
        return
    for first in range(n, -1, -1):
        for rest in _exponent_vectors(d - 1, n - first):
            yield (first,) + rest


@lru_cache(maxsize=256)
def monomial_basis(d: int, n: int) -> MonomialBasis:
    return MonomialBasis(d, n)


def _linear_forms(g: Matrix) -> list[list[tuple[int, object]]]:
    """Images of the variables under the dual action of g.

    Variable i maps to the linear form given by column i of dual_rep(g):
    a sparse list of (variable index, nonzero coefficient).
    """
    dual = dual_rep(g)
    zero = g.field.zero
    d = g.rows
    return [
        [(j, dual[j, i]) for j in range(d) if dual[j, i] != zero]
        for i in range(d)
    ]


def _induced_columns(g: Matrix, n: int) -> tuple[MonomialBasis, list[dict[int, object]]]:
    """Sparse columns of the degree-n induced matrix of g."""
    d = g.rows
    basis = monomial_basis(d, n)
    forms = _linear_forms(g)
    zero = g.field.zero
    one = g.field.one
    columns: list[dict[int, object]] = []
    for mono in basis.monomials:
        acc: dict[tuple[int, ...], object] = {(0,) * d: one}
        for var, power in enumerate(mono):
            form = forms[var]
            for _ in range(power):
                nxt: dict[tuple[int, ...], object] = {}
                for exp, coeff in acc.items():
                    for j, fc in form:
                        bumped = exp[:j] + (exp[j] + 1,) + exp[j + 1 :]
                        prev = nxt.get(bumped)
                        nxt[bumped] = coeff * fc if prev is None else prev + coeff * fc
                acc = {k: v for k, v in nxt.items() if v != zero}
        columns.append({basis.index[exp]: coeff for exp, coeff in acc.items()})
    return basis, columns


def induced_action(g: Matrix, n: int) -> Matrix:
    """Matrix of g acting on the degree-n monomial basis.

    Column c holds the expansion of the image of the c-th basis monomial;
    the map is multiplicative, so this is a group homomorphism in g.
    """
    if g.rows != g.cols:
        raise ValueError("induced_action needs a square matrix")
    g.inverse()  # fail fast on singular input
    basis, columns = _induced_columns(g, n)
    size = len(basis)
    zero = g.field.zero
    entries = [zero] * (size * size)
    for c, column in enumerate(columns):
        for r, v in column.items():
            entries[r * size + c] = v
    return Matrix._raw(g.field, size, size, tuple(entries))


def _sparse_rank(rows: list[dict[int, object]], field) -> int:
    """Rank of sparse rows over the field, by exact Gaussian elimination."""
    zero = field.zero
    pivots: dict[int, dict[int, object]] = {}
    for row in rows:
        row = dict(row)
        while row:
            c = min(row)
            piv = pivots.get(c)
            if piv is None:
                coeff = row[c]
                pivots[c] = {j: v / coeff for j, v in row.items()}
                break
            factor = row.pop(c)
            for j, v in piv.items():
                if j == c:
                    continue
                nv = row.get(j, zero) - factor * v
                if nv == zero:
                    row.pop(j, None)
                else:
                    row[j] = nv
    return len(pivots)


def invariant_dim(
    grp: MatrixGroup, n: int, *, basis_bound: int = DEFAULT_BASIS_BOUND
) -> int:
    """dim of degree-n invariants: common kernel of the induced generators.

    Valid in every characteristic (the fixed space of the group equals the
    common fixed space of its generators).
    """
    d = grp.spec.dimension
    size = comb(n + d - 1, d - 1)
    if size > basis_bound:
        raise BasisSizeError(
            f"monomial basis size {size} exceeds the bound {basis_bound}"
        )
    field = grp.spec.field
    one = field.one
    zero = field.zero
    rows: list[dict[int, object]] = []
    for g in grp.spec.generators:
        _, columns = _induced_columns(g, n)
        by_row: list[dict[int, object]] = [{} for _ in range(size)]
        for c, column in enumerate(columns):
            for r, v in column.items():
                by_row[r][c] = v
        for idx, row in enumerate(by_row):
            diag = row.get(idx, zero) - one
            if diag == zero:
                row.pop(idx, None)
            else:
                row[idx] = diag
            if row:
                rows.append(row)
    return size - _sparse_rank(rows, field)


def hilbert_values(
    grp: MatrixGroup, n_max: int, *, basis_bound: int = DEFAULT_BASIS_BOUND
) -> list[int]:
    """Invariant dimensions for n = 0..n_max (value at 0 is always 1)."""
    return [invariant_dim(grp, n, basis_bound=basis_bound) for n in range(n_max + 1)]


@dataclass(frozen=True)
class ModularReconstruction:
    """A fitted series plus the degree through which it reproduced the data.

    The fit is a certificate, not a proof: the series provably matches the
    supplied dimensions through ``verified_degree`` only.
    """

    series: RationalSeries
    verified_degree: int


def dickson_degrees(q: int, d: int) -> tuple[int, ...]:
    """hsop degrees q^d - q^i over GF(q), ascending."""
    return tuple(sorted(q**d - q**i for i in range(d)))


def reconstruct_modular_series(
    values: Sequence[int], q: int, d: int, margin: int
) -> ModularReconstruction:
    """Fit Q(z) / prod_i (1 - z^(q^d - q^i)) to the dimension values.

    The numerator is solved exactly on the leading len(values)-margin
    coefficients at the smallest feasible degree and verified on the
    held-out margin; failure means the data was insufficient for this
    denominator and a larger expansion is needed.
    """
    if not is_prime(q):
        raise ValueError(f"prime fields only: q must be prime (got {q})")
    if margin < 1:
        raise ValueError("margin must be positive")
    n_top = len(values) - 1
    fit_top = n_top - margin
    if fit_top < 0:
        raise ReconstructionError(
            f"insufficient data: {len(values)} values cannot hold back a margin of {margin}"
        )
    exponents = dickson_degrees(q, d)
    den = UniPoly.one()
    for e in exponents:
        den = den * UniPoly.one_minus_z_pow(e)
    # Coefficients of den(z) * (value series), which equal the numerator
    # whenever the model holds.
    dc = den.coeffs
    prod = []
    for k in range(n_top + 1):
        acc = Fraction(0)
        for j in range(min(k, len(dc) - 1) + 1):
            if dc[j] != 0:
                acc += dc[j] * values[k - j]
        prod.append(acc)
    overflow = [k for k in range(fit_top + 1, n_top + 1) if prod[k] != 0]
    if overflow:
        raise ReconstructionError(
            f"no numerator of degree <= {fit_top} fits the values "
            f"(nonzero fitted coefficient at degree {overflow[0]}); "
            "supply more values (larger expansion degree)"
        )
    numerator = UniPoly(prod[: fit_top + 1])
    candidate = RationalSeries(numerator, exponents)
    if candidate.expand(n_top) != [Fraction(v) for v in values]:
        raise ReconstructionError("fitted series fails to reproduce the supplied values")
    return ModularReconstruction(reduce_series(candidate), n_top)


__all__ = [
    "BasisSizeError",
    "DEFAULT_BASIS_BOUND",
    "ModularReconstruction",
    "MonomialBasis",
    "ReconstructionError",
    "dickson_degrees",
    "hilbert_values",
    "induced_action",
    "invariant_dim",
    "monomial_basis",
    "reconstruct_modular_series",
]
