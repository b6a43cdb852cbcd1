"""Hypergeometric group H_{q,d}: data validation, the companion-matrix
generators, the exponent spectrum at zero and the reduced rank."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Sequence

from .exact import ExactMatrix, Polynomial, companion, determinant, inverse, poly_gcd


class InvalidDataError(ValueError):
    """The pair (q; d) violates the construction contract."""


class ConsistencyError(AssertionError):
    """Two independent routes to the same quantity disagree (a bug)."""


@dataclass(frozen=True)
class CompleteIntersectionData:
    q: tuple[int, ...]
    d: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "q", tuple(int(x) for x in self.q))
        object.__setattr__(self, "d", tuple(int(x) for x in self.d))

    @property
    def Q(self) -> int:
        return sum(self.q)

    @property
    def N(self) -> int:
        return len(self.q) - 1

    @property
    def r(self) -> int:
        return len(self.d)

    @property
    def n(self) -> int:
        return self.N - self.r

    @property
    def lam(self) -> Fraction:
        return Fraction(prod(x ** x for x in self.q), prod(x ** x for x in self.d))

    def label(self) -> str:
        return "(" + ",".join(map(str, self.q)) + ";" + ",".join(map(str, self.d)) + ")"


def build_data(q: Sequence[int], d: Sequence[int]) -> CompleteIntersectionData:
    """Validate (q; d) and return the record.

    >>> build_data((1, 1, 1, 1, 1), (5,)).lam
    Fraction(1, 3125)
    """
    if not q or not d:
        raise InvalidDataError("q and d must both be non-empty")
    if any(int(x) != x or x < 1 for x in list(q) + list(d)):
        raise InvalidDataError("all weights and degrees must be positive integers")
    if sum(q) != sum(d):
        raise InvalidDataError(f"sum(q) = {sum(q)} != sum(d) = {sum(d)}")
    return CompleteIntersectionData(tuple(q), tuple(d))


# ---------------------------------------------------------------------------
# characteristic polynomials


def product_of_cyclic(exponents: Sequence[int]) -> Polynomial:
    """``prod_k (x^{e_k} - 1)``."""
    return Polynomial.product(Polynomial.x_power_minus_one(e) for e in exponents)


@dataclass(frozen=True)
class CharCoefficients:
    A: tuple[int, ...]
    B: tuple[int, ...]


def _tail_coefficients(p: Polynomial) -> tuple[int, ...]:
    # T^Q + c_1 T^{Q-1} + ... + c_Q  ->  (c_1, ..., c_Q)
    c = p.int_coefficients()
    return tuple(reversed(c[:-1]))


def char_coefficients(data: CompleteIntersectionData) -> CharCoefficients:
    return CharCoefficients(
        A=_tail_coefficients(product_of_cyclic(data.d)),
        B=_tail_coefficients(product_of_cyclic(data.q)),
    )


# ---------------------------------------------------------------------------
# generators


@dataclass(frozen=True)
class GroupGenerators:
    h_infty: ExactMatrix
    h0: ExactMatrix
    h1: ExactMatrix

    def as_dict(self) -> dict[str, ExactMatrix]:
        return {"h0": self.h0, "h1": self.h1, "h_infty": self.h_infty}


def h1_closed_form(data: CompleteIntersectionData, cc: CharCoefficients | None = None) -> ExactMatrix:
    """Pseudo-reflection shape: identity except the first column, which is
    ``(-1)^r B_Q`` on top and ``(-1)^r (B_{Q-i+1} - A_{Q-i+1})`` below."""
    cc = cc or char_coefficients(data)
    Q, sign = data.Q, (-1) ** data.r
    A, B = cc.A, cc.B
    rows = [[int(i == j) for j in range(Q)] for i in range(Q)]
    rows[0][0] = sign * B[Q - 1]
    for i in range(2, Q + 1):
        rows[i - 1][0] = sign * (B[Q - i] - A[Q - i])
    return ExactMatrix.from_rows(rows)


def generators(data: CompleteIntersectionData) -> GroupGenerators:
    cc = char_coefficients(data)
    h_infty = companion(cc.A)
    h0_inv = companion(cc.B)
    h0 = inverse(h0_inv)
    h1 = h0_inv @ inverse(h_infty)
    closed = h1_closed_form(data, cc)
    if h1 != closed:
        raise ConsistencyError("h1 from h0^{-1} h_infty^{-1} differs from its closed form")
    for name, m in (("h0", h0), ("h1", h1), ("h_infty", h_infty)):
        if not m.is_integral() or abs(determinant(m)) != 1:
            raise ConsistencyError(f"{name} is not unimodular")
    return GroupGenerators(h_infty=h_infty, h0=h0, h1=h1)


# ---------------------------------------------------------------------------
# exponents at zero


@dataclass(frozen=True)
class Exponent:
    rho: Fraction
    mu: int
    nu: int


@dataclass(frozen=True)
class ExponentSpectrum:
    exponents: tuple[Exponent, ...]
    Q_red: int

    @property
    def p(self) -> int:
        return len(self.exponents)

    @property
    def sigma(self) -> tuple[int, ...]:
        out, s = [], 0
        for e in self.exponents:
            s += e.mu
            out.append(s)
        return tuple(out)


def fraction_multiset(weights: Sequence[int]) -> Counter:
    """Multiset ``{a / w mod 1 : 0 <= a < w}`` over all weights w."""
    return Counter(Fraction(a, w) for w in weights for a in range(w))


@dataclass(frozen=True)
class ReducedCharpolys:
    phi0: Polynomial
    phi_inf: Polynomial
    eta: Polynomial
    phi0_bar: Polynomial
    phi_inf_bar: Polynomial


def reduced_charpolys(data: CompleteIntersectionData) -> ReducedCharpolys:
    phi0 = product_of_cyclic(data.q)
    phi_inf = product_of_cyclic(data.d)
    eta = poly_gcd(phi0, phi_inf)
    return ReducedCharpolys(
        phi0=phi0,
        phi_inf=phi_inf,
        eta=eta,
        phi0_bar=phi0.exact_div(eta),
        phi_inf_bar=phi_inf.exact_div(eta),
    )


def exponent_spectrum(data: CompleteIntersectionData) -> ExponentSpectrum:
    at_zero = fraction_multiset(data.q)
    at_infty = fraction_multiset(data.d)
    exps = tuple(
        Exponent(rho, mu, min(mu, at_infty.get(rho, 0)))
        for rho, mu in sorted(at_zero.items(), reverse=True)
    )
    q_red = sum(e.mu - e.nu for e in exps)
    via_gcd = data.Q - reduced_charpolys(data).eta.degree
    if q_red != via_gcd:
        raise ConsistencyError(f"Q_red from exponents ({q_red}) != Q - deg eta ({via_gcd})")
    return ExponentSpectrum(exps, q_red)


@dataclass(frozen=True)
class JordanBlockData:
    """Symbolic Jordan data: block ``(rho, size)`` has eigenvalue
    ``exp(2 pi i rho)`` when ``multiplicative`` (E_0), ``rho`` otherwise (M_0)."""

    blocks: tuple[tuple[Fraction, int], ...]
    multiplicative: bool = True


def jordan_at_zero(spectrum: ExponentSpectrum, multiplicative: bool = True) -> JordanBlockData:
    return JordanBlockData(tuple((e.rho, e.mu) for e in spectrum.exponents), multiplicative)


def jordan_matrix_additive(jd: JordanBlockData) -> ExactMatrix:
    """Block-diagonal ``rho id + J_-`` (the additive form M_0) as an exact matrix."""
    size = sum(mu for _, mu in jd.blocks)
    rows = [[Fraction(0)] * size for _ in range(size)]
    start = 0
    for rho, mu in jd.blocks:
        for k in range(mu):
            rows[start + k][start + k] = Fraction(rho)
            if k:
                rows[start + k][start + k - 1] = Fraction(1)
        start += mu
    return ExactMatrix.from_rows(rows)
