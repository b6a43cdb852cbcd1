"""Gamma-series solution families at t = 0 and their symbolic ODE check.

A family for the exponent rho is stored as coefficients
c_n in Q[P]/(P^mu) of t^{n + rho} e^{P log t}.  theta_t = t d/dt acts on such a
term as multiplication by (P + rho + n), so logarithms never appear.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import floor

from .exact import ExactMatrix, NilpotentPoly, Polynomial, rank
from .hypergroup import CompleteIntersectionData, exponent_spectrum

DEFAULT_TRUNCATION = 12


def frac_part(x: Fraction) -> Fraction:
    return x - floor(x)


def admissible_b(weight: int, rho: Fraction, n: int) -> list[Fraction]:
    """All b with <b> = <rho w> and 0 < b <= (n + rho) w, increasing."""
    f = frac_part(rho * weight)
    top = (n + rho) * weight
    b = f if f > 0 else f + 1
    out = []
    while b <= top:
        out.append(b)
        b += 1
    return out


@dataclass(frozen=True)
class ThetaPolynomials:
    """The two theta-polynomials of the hypergeometric operator, in s = theta_t."""

    L0: Polynomial
    Linf_plus: Polynomial


def theta_polynomials(data: CompleteIntersectionData) -> ThetaPolynomials:
    L0 = Polynomial.product(Polynomial([-a, w]) for w in data.q for a in range(w))
    Linf = Polynomial.product(Polynomial([b, w]) for w in data.d for b in range(1, w + 1))
    return ThetaPolynomials(L0, Linf)


def _linear_product(mu: int, weights, rho: Fraction, n: int) -> NilpotentPoly:
    out = NilpotentPoly.constant(mu, 1)
    for w in weights:
        for b in admissible_b(w, rho, n):
            out = out * NilpotentPoly.linear(mu, w, b)
    return out


@dataclass(frozen=True)
class FrobeniusFamily:
    rho: Fraction
    mu: int
    truncation: int
    coeffs: tuple[NilpotentPoly, ...]

    def solution_coefficients(self, i: int) -> list[Fraction]:
        """t^{n+rho}-coefficients (at log t = 0) of the i-th Frobenius solution."""
        return [c.coefficients[i] for c in self.coeffs]


def build_family(data: CompleteIntersectionData, rho, mu: int, truncation: int = DEFAULT_TRUNCATION) -> FrobeniusFamily:
    """c_0 .. c_M of the Gamma-series at exponent rho, each as the full
    quotient of the numerator (d-side) and denominator (q-side) products."""
    if truncation < 1:
        raise ValueError("truncation must be at least 1")
    rho = Fraction(rho)
    coeffs = []
    for n in range(truncation + 1):
        num = _linear_product(mu, data.d, rho, n)
        den = _linear_product(mu, data.q, rho, n)
        # every factor w P + b has b > 0, so den is a unit
        coeffs.append(num / den)
    return FrobeniusFamily(rho, mu, truncation, tuple(coeffs))


def evaluate_shifted(poly: Polynomial, mu: int, shift: Fraction) -> NilpotentPoly:
    """``poly(P + shift)`` in Q[P]/(P^mu), by Horner."""
    x = NilpotentPoly.linear(mu, 1, shift)
    acc = NilpotentPoly.constant(mu, 0)
    for c in reversed(poly.coefficients):
        acc = acc * x + c
    return acc


@dataclass
class OdeReport:
    rho: Fraction
    mu: int
    truncation: int
    passed: bool
    first_failing_order: int | None = None
    residuals: list[NilpotentPoly] = field(default_factory=list, repr=False)


def verify_ode(family: FrobeniusFamily, data: CompleteIntersectionData) -> OdeReport:
    """Check that the hypergeometric operator kills the truncated family.

    Order 0 needs L0(P + rho) c_0 = 0 in the quotient (divisibility by P^mu);
    order n >= 1 needs L0(P+rho+n) c_n = Linf_plus(P+rho+n-1) c_{n-1}.
    """
    tp = theta_polynomials(data)
    mu, rho = family.mu, family.rho
    residuals = [evaluate_shifted(tp.L0, mu, rho) * family.coeffs[0]]
    for n in range(1, family.truncation + 1):
        lhs = evaluate_shifted(tp.L0, mu, rho + n) * family.coeffs[n]
        rhs = evaluate_shifted(tp.Linf_plus, mu, rho + n - 1) * family.coeffs[n - 1]
        residuals.append(lhs - rhs)
    failing = next((n for n, r in enumerate(residuals) if not r.is_zero()), None)
    return OdeReport(rho, mu, family.truncation, failing is None, failing, residuals)


def perturb(family: FrobeniusFamily, order: int, delta=1) -> FrobeniusFamily:
    """Copy of ``family`` with ``delta`` added to the constant term of c_order."""
    coeffs = list(family.coeffs)
    coeffs[order] = coeffs[order] + delta
    return replace(family, coeffs=tuple(coeffs))


def jordan_block_sizes(m: ExactMatrix) -> list[int]:
    """Sizes of the Jordan blocks of a nilpotent matrix, from ranks of its powers."""
    size = m.rows
    ranks = [size]
    power = ExactMatrix.identity(size)
    while ranks[-1] > 0:
        power = power @ m
        ranks.append(rank(power))
        if len(ranks) > size + 1:
            raise ValueError("matrix is not nilpotent")
    # number of blocks of size >= k is ranks[k-1] - ranks[k]
    at_least = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))]
    sizes = []
    for k in range(len(at_least), 0, -1):
        exactly = at_least[k - 1] - (at_least[k] if k < len(at_least) else 0)
        sizes += [k] * exactly
    return sizes


def monodromy_zero_action(family: FrobeniusFamily) -> tuple[Fraction, int]:
    """Jordan block ``(rho, size)`` of t -> e^{2 pi i} t on the family.

    The loop multiplies by exp(2 pi i rho) * exp(2 pi i P).  The unipotent part
    minus 1 is exp(cP) - 1 for the nonzero constant c = 2 pi i; rescaling P by c
    is a ring automorphism, so the block structure equals that of exp(P) - 1,
    which is computed exactly here.
    """
    mu = family.mu
    terms = [Fraction(0)]
    fact = 1
    for k in range(1, mu):
        fact *= k
        terms.append(Fraction(1, fact))
    nilpotent_part = NilpotentPoly(mu, terms).multiplication_matrix()
    sizes = jordan_block_sizes(nilpotent_part)
    if len(sizes) != 1:
        raise AssertionError(f"expected a single Jordan block, got sizes {sizes}")
    return (family.rho, sizes[0])


def families_for(data: CompleteIntersectionData, truncation: int = DEFAULT_TRUNCATION) -> list[FrobeniusFamily]:
    return [build_family(data, e.rho, e.mu, truncation) for e in exponent_spectrum(data).exponents]


def verify_all(data: CompleteIntersectionData, truncation: int = DEFAULT_TRUNCATION) -> list[OdeReport]:
    return [verify_ode(f, data) for f in families_for(data, truncation)]
