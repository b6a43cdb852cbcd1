"""Quadratic invariants X = h X h^T of the hypergeometric group."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exact import ExactMatrix, primitive_integer_vector, rank_and_kernel
from .hypergroup import GroupGenerators


@dataclass(frozen=True)
class InvariantSpace:
    dimension: int
    basis: tuple[ExactMatrix, ...]
    normalized_generator: ExactMatrix | None
    constraint_rank: int


def invariance_constraints(hs, size: int) -> ExactMatrix:
    """Rows of (h (x) h - I) acting on row-major vec(X), stacked over ``hs``."""
    rows = []
    for h in hs:
        nz = [[(k, h[i, k]) for k in range(size) if h[i, k]] for i in range(size)]
        for i in range(size):
            for j in range(size):
                row = [Fraction(0)] * (size * size)
                for k, a in nz[i]:
                    for l, b in nz[j]:
                        row[k * size + l] += a * b
                row[i * size + j] -= 1
                rows.append(row)
    return ExactMatrix(len(rows), size * size, (x for r in rows for x in r))


def _reshape(v, size: int) -> ExactMatrix:
    return ExactMatrix(size, size, v)


def invariant_space(gens: GroupGenerators) -> InvariantSpace:
    """Kernel of the stacked h0 and h_infty constraints; h1 is implied."""
    size = gens.h0.rows
    constraints = invariance_constraints([gens.h0, gens.h_infty], size)
    rk, kernel = rank_and_kernel(constraints)
    basis = tuple(_reshape(v, size) for v in kernel)
    generator = None
    if len(basis) == 1:
        generator = _reshape(primitive_integer_vector(kernel[0]), size)
    return InvariantSpace(len(basis), basis, generator, rk)


def is_invariant(h: ExactMatrix, x: ExactMatrix) -> bool:
    return h @ x @ h.T == x


@dataclass
class InvariantReport:
    name: str
    passed: bool
    scalar: Fraction | None = None
    failures: list = field(default_factory=list)


def proportionality(x: ExactMatrix, generator: ExactMatrix) -> Fraction | None:
    """c with x = c * generator, or None when no such c exists."""
    k = next((i for i, g in enumerate(generator.entries) if g), None)
    if k is None:
        return None
    c = x.entries[k] / generator.entries[k]
    return c if generator.scale(c) == x else None


def verify_spanned_by_gram(space: InvariantSpace, xbar: ExactMatrix) -> InvariantReport:
    """The invariant space is a line spanned by the restricted Gram matrix."""
    failures = []
    if space.dimension != 1:
        failures.append(f"invariant space has dimension {space.dimension}")
    if xbar.is_zero():
        failures.append("Xbar is zero")
    if failures:
        return InvariantReport("invariant_spanned_by_gram", False, None, failures)
    c = proportionality(xbar, space.normalized_generator)
    if c is None or c == 0:
        return InvariantReport("invariant_spanned_by_gram", False, None, ["Xbar not proportional to generator"])
    return InvariantReport("invariant_spanned_by_gram", True, c)


def verify_invariance(gens: GroupGenerators, x: ExactMatrix, name: str = "gram_invariance") -> InvariantReport:
    failures = [k for k, h in gens.as_dict().items() if not is_invariant(h, x)]
    return InvariantReport(name, not failures, None, failures)


def verify_first_column_relations(gens: GroupGenerators, space: InvariantSpace, n: int) -> InvariantReport:
    """First-column relations an invariant must obey.

    n even: X_i1 = -1/2 (h1)_i1 X_11 for i >= 2.
    n odd:  X_11 = 0 and (h1)_i1 X_1j + (h1)_j1 X_i1 = 0 for the first
    j >= 2 with (h1)_j1 != 0; with no such j the case is flagged degenerate.
    """
    name = "first_column_relations"
    if space.dimension != 1:
        return InvariantReport(name, False, None, [f"dimension {space.dimension}"])
    X = space.normalized_generator
    h1 = gens.h1
    Q = X.rows
    failures = []
    if Q == 1:
        return InvariantReport(name, True, None, failures)  # no i, j >= 2: vacuous
    if n % 2 == 0:
        for i in range(1, Q):
            if X[i, 0] != -Fraction(1, 2) * h1[i, 0] * X[0, 0]:
                failures.append(i + 1)
        return InvariantReport(name, not failures, None, failures)
    if X[0, 0] != 0:
        failures.append("X_11 != 0")
    j = next((j for j in range(1, Q) if h1[j, 0] != 0), None)
    if j is None:
        failures.append("degenerate: (h1)_j1 = 0 for all j >= 2")
        return InvariantReport(name, False, None, failures)
    for i in range(1, Q):
        if h1[i, 0] * X[0, j] + h1[j, 0] * X[i, 0] != 0:
            failures.append(i + 1)
    return InvariantReport(name, not failures, None, failures)
