"""Finite matrix groups: closure from generators, dual action, fixed spaces."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .errors import ResourceLimitError
from .fields import Field
from .matrices import Matrix

DEFAULT_CLOSURE_CAP = 100_000


class ClosureCapError(ResourceLimitError):
    """Closure grew past the cap: the group is not verified finite."""


@dataclass(frozen=True)
class GroupSpec:
    """A finite matrix group given by invertible generators in GL_d."""

    field: Field
    dimension: int
    generators: tuple[Matrix, ...]

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        if self.dimension < 1:
            raise ValueError(f"dimension must be positive, got {self.dimension}")
        if not self.generators:
            raise ValueError("at least one generator is required")
        d = self.dimension
        for i, g in enumerate(self.generators):
            if not isinstance(g, Matrix):
                raise TypeError(f"generator {i} is not a Matrix")
            if g.field != self.field:
                raise ValueError(f"generator {i} is over {g.field!r}, expected {self.field!r}")
            if g.rows != d or g.cols != d:
                raise ValueError(f"generator {i} is {g.rows}x{g.cols}, expected {d}x{d}")
            if g.det() == self.field.zero:
                raise ValueError(f"generator {i} is singular (det = 0)")


class MatrixGroup:
    """Closed element set of a finite matrix group, in closure (BFS) order."""

    __slots__ = ("spec", "elements", "order", "_element_set")

    def __init__(self, spec: GroupSpec, elements: tuple[Matrix, ...]):
        self.spec = spec
        self.elements = elements
        self.order = len(elements)
        self._element_set = frozenset(elements)

    def __contains__(self, m: Matrix) -> bool:
        return m in self._element_set

    def __iter__(self):
        return iter(self.elements)

    def identity(self) -> Matrix:
        return Matrix.identity(self.spec.field, self.spec.dimension)

    def __repr__(self):
        return (
            f"MatrixGroup(order={self.order}, dimension={self.spec.dimension}, "
            f"field={self.spec.field!r})"
        )


def close(spec: GroupSpec, cap: int = DEFAULT_CLOSURE_CAP) -> MatrixGroup:
    """Breadth-first closure of the generators under multiplication.

    Deterministic: elements are enumerated in BFS order starting from the
    identity.  Raises :class:`ClosureCapError` once the element count would
    exceed ``cap`` (the input may generate an infinite group).
    """
    ident = Matrix.identity(spec.field, spec.dimension)
    seen = {ident}
    ordered = [ident]
    queue = deque([ident])
    while queue:
        m = queue.popleft()
        for g in spec.generators:
            p = m * g
            if p not in seen:
                if len(seen) >= cap:
                    raise ClosureCapError(
                        f"group not verified finite within cap ({cap} elements)"
                    )
                seen.add(p)
                ordered.append(p)
                queue.append(p)
    return MatrixGroup(spec, tuple(ordered))


def dual_rep(g: Matrix) -> Matrix:
    """Action of g on the dual space: the inverse-transpose of g.

    This is a group homomorphism: dual_rep(g*h) = dual_rep(g)*dual_rep(h).
    """
    return g.inverse().transpose()


def fixed_subspace_dim(mats: Sequence[Matrix]) -> int:
    """Dimension of the common fixed space of the given operators.

    Computed as the common kernel of (m - identity) over all matrices; for
    a generating set this equals the fixed space of the generated group.
    """
    mats = list(mats)
    if not mats:
        raise ValueError("fixed_subspace_dim needs at least one matrix")
    first = mats[0]
    if first.rows != first.cols:
        raise ValueError("fixed_subspace_dim needs square matrices")
    ident = Matrix.identity(first.field, first.rows)
    stacked_rows: list = []
    for m in mats:
        diff = m - ident  # shape/field mismatches surface here
        stacked_rows.extend(diff.row_lists())
    return Matrix.from_rows(first.field, stacked_rows).kernel_dim()


def is_modular(grp: MatrixGroup) -> bool:
    """True iff the field characteristic is positive and divides the order."""
    p = grp.spec.field.characteristic
    return p > 0 and grp.order % p == 0


def is_p_group(grp: MatrixGroup) -> bool:
    """True iff char k = p > 0 and the group order is a power of p."""
    p = grp.spec.field.characteristic
    if p == 0:
        return False
    n = grp.order
    while n % p == 0:
        n //= p
    return n == 1


__all__ = [
    "DEFAULT_CLOSURE_CAP",
    "ClosureCapError",
    "GroupSpec",
    "MatrixGroup",
    "close",
    "dual_rep",
    "fixed_subspace_dim",
    "is_modular",
    "is_p_group",
]
