"""Exact arithmetic: dense rational matrices, polynomials over Q, and the
truncated rings Q[P]/(P^mu).

Scalars are :class:`fractions.Fraction`; nothing in this module ever rounds.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Rational = Fraction


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def _content(values: Iterable[int]) -> int:
    g = 0
    for v in values:
        g = gcd(g, v)
        if g == 1:
            break
    return g


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


class DimensionError(ValueError):
    """Raised when operand shapes are incompatible."""


# ---------------------------------------------------------------------------
# matrices


class ExactMatrix:
    """Immutable dense matrix with Fraction entries, stored row-major."""

    __slots__ = ("rows", "cols", "_entries")

    def __init__(self, rows: int, cols: int, entries: Iterable):
        entries = tuple(_frac(e) for e in entries)
        if len(entries) != rows * cols:
            raise DimensionError(
                f"expected {rows * cols} entries for a {rows}x{cols} matrix, got {len(entries)}"
            )
        self.rows = rows
        self.cols = cols
        self._entries = entries

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "ExactMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise DimensionError("ragged rows")
        return cls(len(rows), ncols, (e for r in rows for e in r))

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls(n, n, (int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "ExactMatrix":
        cols = rows if cols is None else cols
        return cls(rows, cols, (0 for _ in range(rows * cols)))

    @classmethod
    def column(cls, values: Sequence) -> "ExactMatrix":
        return cls(len(values), 1, values)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def entries(self) -> tuple[Fraction, ...]:
        return self._entries

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        i, j = key
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(key)
        return self._entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple[Fraction, ...]:
        return self._entries[j::self.cols]

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_integral(self) -> bool:
        return all(e.denominator == 1 for e in self._entries)

    def is_zero(self) -> bool:
        return not any(self._entries)

    def to_int_rows(self) -> list[list[int]]:
        if not self.is_integral():
            raise ValueError("matrix has non-integral entries")
        return [[int(e) for e in self.row(i)] for i in range(self.rows)]

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(
            self.cols, self.rows,
            (self._entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)),
        )

    T = property(transpose)

    def _check_same_shape(self, other: "ExactMatrix") -> None:
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_same_shape(other)
        return ExactMatrix(self.rows, self.cols, (a + b for a, b in zip(self._entries, other._entries)))

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_same_shape(other)
        return ExactMatrix(self.rows, self.cols, (a - b for a, b in zip(self._entries, other._entries)))

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix(self.rows, self.cols, (-a for a in self._entries))

    def scale(self, c) -> "ExactMatrix":
        c = _frac(c)
        return ExactMatrix(self.rows, self.cols, (c * a for a in self._entries))

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        return matmul(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self._entries == other._entries

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._entries))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(e) for e in self.row(i)) for i in range(self.rows))
        return f"ExactMatrix({self.rows}x{self.cols}: [{body}])"

    def power(self, k: int) -> "ExactMatrix":
        if not self.is_square():
            raise DimensionError("power of a non-square matrix")
        if k < 0:
            return inverse(self).power(-k)
        result = ExactMatrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result


def matmul(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    """Exact product ``a @ b``."""
    if a.cols != b.rows:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    bcols = [b.col(j) for j in range(b.cols)]
    out = []
    for i in range(a.rows):
        arow = a.row(i)
        nz = [(k, x) for k, x in enumerate(arow) if x]
        for bc in bcols:
            out.append(sum((x * bc[k] for k, x in nz), Fraction(0)))
    return ExactMatrix(a.rows, b.cols, out)


def kron(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    rows = a.rows * b.rows
    cols = a.cols * b.cols
    out = []
    for i in range(a.rows):
        for k in range(b.rows):
            for j in range(a.cols):
                aij = a[i, j]
                out.extend(aij * x for x in b.row(k))
    # out was built row-by-row in (i, k) order with columns (j, l)
    return ExactMatrix(rows, cols, out)


def companion(coefficients: Sequence[int]) -> ExactMatrix:
    """Companion matrix of ``T^Q + c_1 T^{Q-1} + ... + c_Q``.

    Ones on the subdiagonal, last column ``(-c_Q, ..., -c_1)`` read top down.
    """
    q = len(coefficients)
    rows = [[0] * q for _ in range(q)]
    for i in range(1, q):
        rows[i][i - 1] = 1
    for i in range(q):
        rows[i][q - 1] = -coefficients[q - 1 - i]
    return ExactMatrix.from_rows(rows)


def inverse(m: ExactMatrix) -> ExactMatrix:
    """Gauss-Jordan inverse over Q; raises ``ZeroDivisionError`` if singular."""
    if not m.is_square():
        raise DimensionError("inverse of a non-square matrix")
    n = m.rows
    a = m.to_rows()
    inv = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            raise ZeroDivisionError("matrix is singular")
        a[c], a[p] = a[p], a[c]
        inv[c], inv[p] = inv[p], inv[c]
        piv = a[c][c]
        a[c] = [x / piv for x in a[c]]
        inv[c] = [x / piv for x in inv[c]]
        for r in range(n):
            f = a[r][c]
            if r != c and f:
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
                inv[r] = [x - f * y for x, y in zip(inv[r], inv[c])]
    return ExactMatrix.from_rows(inv)


def determinant(m: ExactMatrix) -> Fraction:
    """Bareiss fraction-free determinant (denominators cleared row by row)."""
    if not m.is_square():
        raise DimensionError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return Fraction(1)
    rows, scale = [], Fraction(1)
    for r in m.to_rows():
        den = 1
        for x in r:
            den = _lcm(den, x.denominator)
        rows.append([int(x * den) for x in r])
        scale /= den
    sign, prev = 1, 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            p = next((r for r in range(k + 1, n) if rows[r][k] != 0), None)
            if p is None:
                return Fraction(0)
            rows[k], rows[p] = rows[p], rows[k]
            sign = -sign
        pivot = rows[k][k]
        for i in range(k + 1, n):
            ri, rik = rows[i], rows[i][k]
            rk = rows[k]
            for j in range(k + 1, n):
                ri[j] = (pivot * ri[j] - rik * rk[j]) // prev
            ri[k] = 0
        prev = pivot
    return sign * rows[n - 1][n - 1] * scale


def _row_echelon(m: ExactMatrix) -> tuple[list[dict[int, int]], list[int]]:
    """Fraction-free elimination to row echelon form.

    Rows are cleared to integers and kept primitive (content divided out)
    after every update, which bounds growth without Fraction arithmetic.
    Returns the pivot rows (sparse, column -> int) and their pivot columns.
    """
    work: list[dict[int, int]] = []
    for i in range(m.rows):
        r = m.row(i)
        den = 1
        for x in r:
            if x:
                den = _lcm(den, x.denominator)
        row = {j: int(x * den) for j, x in enumerate(r) if x}
        if row:
            g = _content(row.values())
            work.append({j: v // g for j, v in row.items()})

    pivots: list[dict[int, int]] = []
    pivot_cols: list[int] = []
    for col in range(m.cols):
        hits = [k for k, row in enumerate(work) if col in row]
        if not hits:
            continue
        # shortest row as pivot keeps fill-in down
        best = min(hits, key=lambda k: (len(work[k]), abs(work[k][col])))
        prow = work[best]
        pv = prow[col]
        rest = []
        for k, row in enumerate(work):
            if k == best:
                continue
            if col in row:
                f = row[col]
                new = {j: pv * v for j, v in row.items()}
                for j, v in prow.items():
                    s = new.get(j, 0) - f * v
                    if s:
                        new[j] = s
                    else:
                        new.pop(j, None)
                if new:
                    g = _content(new.values())
                    if g != 1:
                        new = {j: v // g for j, v in new.items()}
                    rest.append(new)
            else:
                rest.append(row)
        pivots.append(prow)
        pivot_cols.append(col)
        work = rest
    return pivots, pivot_cols


def rank(m: ExactMatrix) -> int:
    return len(_row_echelon(m)[1])


def rank_and_kernel(m: ExactMatrix) -> tuple[int, list[tuple[Fraction, ...]]]:
    """Rank and a basis of the right null space, from one elimination.

    Each basis vector has a 1 in its own free column and 0 in the other
    free columns.
    """
    pivots, pivot_cols = _row_echelon(m)
    free = [c for c in range(m.cols) if c not in set(pivot_cols)]
    basis = []
    for fcol in free:
        x: dict[int, Fraction] = {fcol: Fraction(1)}
        for prow, pc in reversed(list(zip(pivots, pivot_cols))):
            s = sum((v * x[j] for j, v in prow.items() if j != pc and j in x), Fraction(0))
            if s:
                x[pc] = -s / prow[pc]
        basis.append(tuple(x.get(j, Fraction(0)) for j in range(m.cols)))
    return len(pivot_cols), basis


def kernel_basis(m: ExactMatrix) -> list[tuple[Fraction, ...]]:
    """Basis of ``{v : m v = 0}`` over Q; empty iff full column rank."""
    return rank_and_kernel(m)[1]


def primitive_integer_vector(v: Sequence) -> tuple[int, ...]:
    """Scale a nonzero rational vector to coprime integers, first nonzero > 0."""
    v = [_frac(x) for x in v]
    den = 1
    for x in v:
        den = _lcm(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = _content(ints)
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    ints = [x // g for x in ints]
    lead = next(x for x in ints if x)
    if lead < 0:
        ints = [-x for x in ints]
    return tuple(ints)


# ---------------------------------------------------------------------------
# polynomials


class Polynomial:
    """Univariate polynomial over Q; ``coefficients[i]`` multiplies x^i."""

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Iterable = ()):
        c = [_frac(x) for x in coefficients]
        while c and c[-1] == 0:
            c.pop()
        self.coefficients = tuple(c)

    @classmethod
    def x_power_minus_one(cls, k: int) -> "Polynomial":
        return cls([-1] + [0] * (k - 1) + [1])

    @classmethod
    def product(cls, factors: Iterable["Polynomial"]) -> "Polynomial":
        out = cls([1])
        for f in factors:
            out = out * f
        return out

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def leading(self) -> Fraction:
        return self.coefficients[-1] if self.coefficients else Fraction(0)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coefficients)

    def int_coefficients(self) -> list[int]:
        if not self.is_integral():
            raise ValueError("polynomial has non-integral coefficients")
        return [int(c) for c in self.coefficients]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __hash__(self) -> int:
        return hash(self.coefficients)

    def __repr__(self) -> str:
        return f"Polynomial({[str(c) for c in self.coefficients]})"

    def __add__(self, other: "Polynomial") -> "Polynomial":
        a, b = self.coefficients, other.coefficients
        n = max(len(a), len(b))
        return Polynomial(
            (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
        )

    def __neg__(self) -> "Polynomial":
        return Polynomial(-c for c in self.coefficients)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            c = _frac(other)
            return Polynomial(c * x for x in self.coefficients)
        a, b = self.coefficients, other.coefficients
        if not a or not b:
            return Polynomial()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return Polynomial(out)

    __rmul__ = __mul__

    def __divmod__(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coefficients)
        d = other.degree
        lead = other.leading
        quot = [Fraction(0)] * max(len(rem) - d, 0)
        for k in range(len(rem) - d - 1, -1, -1):
            c = rem[k + d] / lead
            quot[k] = c
            if c:
                for j, y in enumerate(other.coefficients):
                    rem[k + j] -= c * y
        return Polynomial(quot), Polynomial(rem[:d] if d > 0 else [])

    def __floordiv__(self, other: "Polynomial") -> "Polynomial":
        return divmod(self, other)[0]

    def __mod__(self, other: "Polynomial") -> "Polynomial":
        return divmod(self, other)[1]

    def exact_div(self, other: "Polynomial") -> "Polynomial":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ValueError("division leaves a remainder")
        return q

    def monic(self) -> "Polynomial":
        if self.is_zero():
            raise ValueError("zero polynomial")
        return self * (1 / self.leading)

    def primitive(self) -> "Polynomial":
        """Coprime integer coefficients with positive leading coefficient."""
        if self.is_zero():
            return self
        ints = primitive_integer_vector(reversed(self.coefficients))
        return Polynomial(reversed(ints))

    def __call__(self, x):
        acc = x * 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def reversed(self) -> "Polynomial":
        """``x^deg * p(1/x)``."""
        return Polynomial(reversed(self.coefficients))


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """gcd over Q, returned primitive with positive leading coefficient."""
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd of two zero polynomials is undefined")
    while not b.is_zero():
        a, b = b, (a % b).primitive()
    return a.primitive()


def charpoly(m: ExactMatrix) -> Polynomial:
    """Monic ``det(T I - m)`` by Faddeev-LeVerrier."""
    if not m.is_square():
        raise DimensionError("characteristic polynomial of a non-square matrix")
    n = m.rows
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    mk = ExactMatrix.zeros(n)
    ident = ExactMatrix.identity(n)
    for k in range(1, n + 1):
        mk = m @ mk + ident.scale(coeffs[n - k + 1])
        am = m @ mk
        trace = sum((am[i, i] for i in range(n)), Fraction(0))
        coeffs[n - k] = -trace / k
    return Polynomial(coeffs)


# ---------------------------------------------------------------------------
# Q[P]/(P^mu)


class NilpotentPoly:
    """Element of Q[P]/(P^mu); products are truncated at degree mu."""

    __slots__ = ("modulus_degree", "coefficients")

    def __init__(self, modulus_degree: int, coefficients: Iterable = ()):
        if modulus_degree < 1:
            raise ValueError("modulus degree must be positive")
        c = [_frac(x) for x in coefficients][:modulus_degree]
        c += [Fraction(0)] * (modulus_degree - len(c))
        self.modulus_degree = modulus_degree
        self.coefficients = tuple(c)

    @classmethod
    def constant(cls, mu: int, c) -> "NilpotentPoly":
        return cls(mu, [c])

    @classmethod
    def linear(cls, mu: int, slope, const) -> "NilpotentPoly":
        """``slope * P + const``."""
        return cls(mu, [const, slope])

    def _coerce(self, other) -> "NilpotentPoly":
        if isinstance(other, NilpotentPoly):
            if other.modulus_degree != self.modulus_degree:
                raise DimensionError("mismatched truncation orders")
            return other
        return NilpotentPoly.constant(self.modulus_degree, other)

    def __add__(self, other) -> "NilpotentPoly":
        o = self._coerce(other)
        return NilpotentPoly(self.modulus_degree, (a + b for a, b in zip(self.coefficients, o.coefficients)))

    __radd__ = __add__

    def __neg__(self) -> "NilpotentPoly":
        return NilpotentPoly(self.modulus_degree, (-a for a in self.coefficients))

    def __sub__(self, other) -> "NilpotentPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "NilpotentPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "NilpotentPoly":
        o = self._coerce(other)
        mu = self.modulus_degree
        out = [Fraction(0)] * mu
        for i, a in enumerate(self.coefficients):
            if a:
                for j in range(mu - i):
                    b = o.coefficients[j]
                    if b:
                        out[i + j] += a * b
        return NilpotentPoly(mu, out)

    __rmul__ = __mul__

    def is_unit(self) -> bool:
        return self.coefficients[0] != 0

    def is_zero(self) -> bool:
        return not any(self.coefficients)

    def invert(self) -> "NilpotentPoly":
        """Inverse in Q[P]/(P^mu); only units (nonzero constant term) qualify."""
        a0 = self.coefficients[0]
        if a0 == 0:
            raise ZeroDivisionError("not a unit in Q[P]/(P^mu)")
        mu = self.modulus_degree
        inv = [Fraction(0)] * mu
        inv[0] = 1 / a0
        for k in range(1, mu):
            s = sum((self.coefficients[j] * inv[k - j] for j in range(1, k + 1)), Fraction(0))
            inv[k] = -s / a0
        return NilpotentPoly(mu, inv)

    def __truediv__(self, other) -> "NilpotentPoly":
        return self * self._coerce(other).invert()

    def __eq__(self, other) -> bool:
        if isinstance(other, NilpotentPoly):
            return (self.modulus_degree, self.coefficients) == (other.modulus_degree, other.coefficients)
        if isinstance(other, (int, Fraction)):
            return self == NilpotentPoly.constant(self.modulus_degree, other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.modulus_degree, self.coefficients))

    def __repr__(self) -> str:
        return f"NilpotentPoly(mu={self.modulus_degree}, {[str(c) for c in self.coefficients]})"

    def multiplication_matrix(self) -> ExactMatrix:
        """Matrix of ``y -> self * y`` on the basis 1, P, ..., P^{mu-1} (columns = images)."""
        mu = self.modulus_degree
        return ExactMatrix.from_rows(
            [[self.coefficients[i - j] if i >= j else 0 for j in range(mu)] for i in range(mu)]
        )
