"""K-theory of the weighted projective space P(q) and of the complete
intersection Y inside it.

K(P) is modelled as Z[x, x^-1]/(phi0) with x^i <-> [O(i)] and phi0 = prod(x^q - 1).
Classes are kept either as Laurent dictionaries (exponent -> integer) or as
reduced coordinate vectors on x^0 .. x^{Q-1} (:class:`KClass`).  The Euler
pairing chi(x^a, x^b) = e(b - a) is evaluated on both and the two must agree.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .exact import ExactMatrix, Polynomial, charpoly, companion, inverse, kernel_basis, rank
from .hypergroup import (
    CompleteIntersectionData,
    ConsistencyError,
    GroupGenerators,
    ReducedCharpolys,
    product_of_cyclic,
)

Laurent = Mapping[int, int]


# ---------------------------------------------------------------------------
# Laurent polynomials


def l_add(*terms: Laurent) -> dict[int, int]:
    out: dict[int, int] = {}
    for t in terms:
        for k, v in t.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return out


def l_scale(a: Laurent, c: int) -> dict[int, int]:
    return {k: c * v for k, v in a.items() if c * v}


def l_mul(a: Laurent, b: Laurent) -> dict[int, int]:
    out: dict[int, int] = {}
    for i, u in a.items():
        for j, v in b.items():
            out[i + j] = out.get(i + j, 0) + u * v
    return {k: v for k, v in out.items() if v}


def l_shift(a: Laurent, s: int) -> dict[int, int]:
    return {k + s: v for k, v in a.items()}


def koszul_class_laurent(degrees: Iterable[int]) -> dict[int, int]:
    """``prod_k (1 - x^{-d_k})``: the class of the pushforward of O_Y."""
    out: dict[int, int] = {0: 1}
    for d in degrees:
        out = l_mul(out, {0: 1, -d: -1})
    return out


# ---------------------------------------------------------------------------
# Euler characteristic of line bundles


class EulerPairing:
    """chi(O(m)) = W(m) + (-1)^N W(-m-Q) with W the weighted monomial count.

    The W table grows on demand under a lock, so a single instance can be
    shared between threads.
    """

    def __init__(self, data: CompleteIntersectionData):
        self.data = data
        self._table = [1]
        self._lock = threading.Lock()

    def _grow(self, m: int) -> None:
        with self._lock:
            if m < len(self._table):
                return
            size = max(m + 1, 2 * len(self._table))
            table = [0] * size
            table[0] = 1
            for w in self.data.q:
                for k in range(w, size):
                    table[k] += table[k - w]
            self._table = table

    def weighted_count(self, m: int) -> int:
        if m < 0:
            return 0
        if m >= len(self._table):
            self._grow(m)
        return self._table[m]

    def chi_line(self, m: int) -> int:
        N, Q = self.data.N, self.data.Q
        return self.weighted_count(m) + (-1) ** N * self.weighted_count(-m - Q)

    e = chi_line

    def pair(self, u: Laurent, v: Laurent) -> int:
        """chi(u, v) = sum u_a v_b e(b - a), bilinear."""
        return sum(a * b * self.chi_line(j - i) for i, a in u.items() for j, b in v.items())


def weighted_count(data: CompleteIntersectionData, m: int) -> int:
    return EulerPairing(data).weighted_count(m)


def euler_chi_line(data: CompleteIntersectionData, m: int) -> int:
    return EulerPairing(data).chi_line(m)


def koszul_recurrence_coefficients(data: CompleteIntersectionData) -> dict[int, int]:
    """Coefficients c_j of prod_nu (1 - x^{q_nu})."""
    out: dict[int, int] = {0: 1}
    for w in data.q:
        out = l_mul(out, {0: 1, w: -1})
    return out


def koszul_recurrence_defects(ep: EulerPairing, lo: int, hi: int) -> list[int]:
    """m in [lo, hi] where sum_j c_j e(m + j) != 0 (empty when the recurrence holds)."""
    c = koszul_recurrence_coefficients(ep.data)
    return [m for m in range(lo, hi + 1) if sum(v * ep.chi_line(m + j) for j, v in c.items())]


# ---------------------------------------------------------------------------
# the ring K(P)


@dataclass(frozen=True)
class KClass:
    coeffs: tuple[int, ...]

    def __add__(self, other: "KClass") -> "KClass":
        return KClass(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "KClass") -> "KClass":
        return KClass(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, c: int) -> "KClass":
        return KClass(tuple(c * a for a in self.coeffs))

    __rmul__ = __mul__

    def as_laurent(self) -> dict[int, int]:
        return {k: v for k, v in enumerate(self.coeffs) if v}

    def is_zero(self) -> bool:
        return not any(self.coeffs)


class KRing:
    """Z[x, x^-1]/(phi0) on the basis x^0 .. x^{Q-1}."""

    def __init__(self, data: CompleteIntersectionData):
        self.data = data
        self.Q = data.Q
        self.phi0 = product_of_cyclic(data.q)
        c = self.phi0.int_coefficients()
        self._low = c[:-1]  # x^Q = -sum low_i x^i
        self._c0 = c[0]  # +-1, so x is a unit

    def zero(self) -> KClass:
        return KClass((0,) * self.Q)

    def basis(self, i: int) -> KClass:
        return KClass(tuple(int(k == i) for k in range(self.Q)))

    def times_x(self, a: KClass) -> KClass:
        v = [0] + list(a.coeffs[:-1])
        top = a.coeffs[-1]
        if top:
            v = [x - top * l for x, l in zip(v, self._low)]
        return KClass(tuple(v))

    def times_x_inv(self, a: KClass) -> KClass:
        # x^{-1} = -(x^{Q-1} + low_{Q-1} x^{Q-2} + ... + low_1) / low_0
        a0 = a.coeffs[0]
        rest = list(a.coeffs[1:]) + [0]
        if a0:
            u = -a0 * self._c0  # 1/c0 == c0
            inv = list(self._low[1:]) + [1]
            rest = [x + u * y for x, y in zip(rest, inv)]
        return KClass(tuple(rest))

    def reduce(self, a: Laurent) -> KClass:
        out = self.zero()
        if not a:
            return out
        lo = min(a)
        shift = -lo if lo < 0 else 0
        # polynomial part x^shift * a, reduced mod the monic phi0
        poly = Polynomial([a.get(k - shift, 0) for k in range(max(a) + shift + 1)])
        rem = poly % self.phi0
        coeffs = [int(c) for c in rem.coefficients] + [0] * self.Q
        out = KClass(tuple(coeffs[: self.Q]))
        for _ in range(shift):
            out = self.times_x_inv(out)
        return out

    def mul(self, a: KClass, b: Laurent) -> KClass:
        return self.reduce(l_mul(a.as_laurent(), b))

    def power_matrix(self, s: int) -> ExactMatrix:
        """Matrix (columns = images of x^k) of multiplication by x^s."""
        cols = [self.reduce({k + s: 1}).coeffs for k in range(self.Q)]
        return ExactMatrix.from_rows([[cols[j][i] for j in range(self.Q)] for i in range(self.Q)])


# ---------------------------------------------------------------------------
# exceptional collection and its dual


@dataclass(frozen=True)
class CollectionMatrices:
    G_E: ExactMatrix  # chi(E_i, E_j) = e(j - i)
    D: ExactMatrix  # chi(E_{Q-i+1}, E_j) = e(i + j - Q - 1)
    A: ExactMatrix  # D^{-1}: [F_i] = sum_j [E_j] A_ji
    S: ExactMatrix  # A^T G_E A = (chi(F_i, F_j))

    def f_laurent(self, i: int) -> dict[int, int]:
        """Laurent representative of [F_{i+1}] (0-based ``i``)."""
        return {k: int(self.A[k, i]) for k in range(self.A.rows) if self.A[k, i]}


def collection_matrices(data: CompleteIntersectionData, ep: EulerPairing | None = None) -> CollectionMatrices:
    ep = ep or EulerPairing(data)
    Q = data.Q
    G = ExactMatrix.from_rows([[ep.e(j - i) for j in range(Q)] for i in range(Q)])
    D = ExactMatrix.from_rows([[ep.e(i + j - Q - 1) for j in range(1, Q + 1)] for i in range(1, Q + 1)])
    A = inverse(D)
    if not A.is_integral():
        raise ConsistencyError("dual collection transformation is not integral")
    S = A.T @ G @ A
    cm = CollectionMatrices(G, D, A, S)

    ring = KRing(data)
    f1 = ring.reduce(cm.f_laurent(0))
    expected_f1 = ring.reduce({-1: (-1) ** data.N})
    if f1 != expected_f1:
        raise ConsistencyError("[F_1] is not (-1)^N [O(-1)]")
    if ring.reduce(cm.f_laurent(Q - 1)) != ring.basis(0):
        raise ConsistencyError("[F_Q] is not [O]")
    return cm


def stokes_matrix(cm: CollectionMatrices) -> ExactMatrix:
    """Unitriangular matrix with S_ij = chi(F_i, F_j) above the diagonal."""
    Q = cm.S.rows
    return ExactMatrix.from_rows(
        [[cm.S[i, j] if i < j else int(i == j) for j in range(Q)] for i in range(Q)]
    )


# ---------------------------------------------------------------------------
# restriction to Y


@dataclass(frozen=True)
class RestrictedGram:
    kappa: KClass
    kappa_laurent: dict[int, int] = field(repr=False)
    f: tuple[KClass, ...]  # [F_i] reduced
    fbar: tuple[KClass, ...]  # [F_i] * kappa reduced (pushforward of the restriction)
    Xbar: ExactMatrix
    rank_Xbar: int
    rank_K: int


def restricted_gram(
    data: CompleteIntersectionData,
    cm: CollectionMatrices,
    ep: EulerPairing | None = None,
) -> RestrictedGram:
    """Xbar_ij = chi_P(F_i, F_j * kappa) = chi_Y(Fbar_i, Fbar_j).

    Computed on unreduced Laurent representatives and again on reduced
    classes; a mismatch raises.
    """
    ep = ep or EulerPairing(data)
    ring = KRing(data)
    Q = data.Q
    kappa_l = koszul_class_laurent(data.d)
    fl = [cm.f_laurent(i) for i in range(Q)]
    fbar_l = [l_mul(f, kappa_l) for f in fl]
    X = [[ep.pair(fl[i], fbar_l[j]) for j in range(Q)] for i in range(Q)]

    f = tuple(ring.reduce(x) for x in fl)
    fbar = tuple(ring.reduce(x) for x in fbar_l)
    X_red = [[ep.pair(f[i].as_laurent(), fbar[j].as_laurent()) for j in range(Q)] for i in range(Q)]
    if X != X_red:
        raise ConsistencyError("Euler pairing changed under reduction mod phi0")

    Xbar = ExactMatrix.from_rows(X)
    span = ExactMatrix.from_rows([list(c.coeffs) for c in fbar])
    return RestrictedGram(
        kappa=ring.reduce(kappa_l),
        kappa_laurent=kappa_l,
        f=f,
        fbar=fbar,
        Xbar=Xbar,
        rank_Xbar=rank(Xbar),
        rank_K=rank(span),
    )


# ---------------------------------------------------------------------------
# verification reports


@dataclass
class CheckReport:
    name: str
    passed: bool
    failures: list = field(default_factory=list)
    details: dict = field(default_factory=dict)


def serre_symmetry(rg: RestrictedGram, n: int) -> CheckReport:
    X = rg.Xbar
    sym = X.T.scale((-1) ** n)
    expected_diag = 2 if n % 2 == 0 else 0
    failures = []
    if X != sym:
        failures.append("Xbar != (-1)^n Xbar^T")
    if X.rows and X[0, 0] != expected_diag:
        failures.append(f"Xbar_11 = {X[0, 0]}, expected {expected_diag}")
    return CheckReport("serre_symmetry", not failures, failures)


def verify_tensor_action(data: CompleteIntersectionData, rg: RestrictedGram, gens: GroupGenerators,
                         h0: ExactMatrix | None = None) -> CheckReport:
    """x^{-1} [F_i] = sum_j (h0)_ij [F_j] in K(P), one check per i."""
    h0 = gens.h0 if h0 is None else h0
    ring = KRing(data)
    failures = []
    for i in range(data.Q):
        lhs = ring.times_x_inv(rg.f[i])
        rhs = ring.zero()
        for j in range(data.Q):
            c = int(h0[i, j])
            if c:
                rhs = rhs + c * rg.f[j]
        if lhs != rhs:
            failures.append(i + 1)
    return CheckReport("tensor_action", not failures, failures)


def verify_twist_action(rg: RestrictedGram, gens: GroupGenerators) -> CheckReport:
    """h1 = I - Xbar[:, 0] e_1^T entrywise."""
    Q = rg.Xbar.rows
    expected = ExactMatrix.from_rows(
        [[int(i == j) - (rg.Xbar[i, 0] if j == 0 else 0) for j in range(Q)] for i in range(Q)]
    )
    failures = [
        (i + 1, j + 1) for i in range(Q) for j in range(Q) if gens.h1[i, j] != expected[i, j]
    ]
    return CheckReport("twist_action", not failures, failures)


def verify_cyclic_diagram(
    data: CompleteIntersectionData,
    rg: RestrictedGram,
    gens: GroupGenerators,
    ep: EulerPairing | None = None,
    h_infty: ExactMatrix | None = None,
) -> CheckReport:
    """tau(mu(phi_inf(fbar_i))) == fbar_i for every restricted class.

    phi_inf sends fbar_i to the combination given by row i of h_infty (the
    shift fbar_i -> fbar_{i-1} with the wrap-around row for i = 1), mu is
    multiplication by x^{-1} and tau the dual spherical twist along Fbar_1,
    tau(y) = y - chi_Y(y, Fbar_1) fbar_1.  On pushforward classes
    chi_Y(y, Fbar_1) = (-1)^n chi_P(F_1, y) by Serre duality on Y.
    All three maps are evaluated in K(P); no matrix is inverted.
    """
    ep = ep or EulerPairing(data)
    h_infty = gens.h_infty if h_infty is None else h_infty
    ring = KRing(data)
    sign = (-1) ** data.n
    f1 = rg.f[0].as_laurent()

    def tau(y: KClass) -> KClass:
        return y - (sign * ep.pair(f1, y.as_laurent())) * rg.fbar[0]

    failures = []
    for i in range(data.Q):
        y = ring.zero()
        for j in range(data.Q):
            c = int(h_infty[i, j])
            if c:
                y = y + c * rg.fbar[j]
        if tau(ring.times_x_inv(y)) != rg.fbar[i]:
            failures.append(i + 1)

    details = {}
    if data.r == 1:
        # hypersurface: [i_* O_Y(i)] = [O(i)] - [O(i - Q)]
        details["hypersurface_kappa_matches"] = rg.kappa == ring.reduce({0: 1, -data.Q: -1})
        if not details["hypersurface_kappa_matches"]:
            failures.append("kappa")
    return CheckReport("cyclic_diagram", not failures, failures, details)


def verify_reduced_charpoly(data: CompleteIntersectionData, rcp: ReducedCharpolys,
                            rg: RestrictedGram | None = None) -> CheckReport:
    """charpoly(x^{-1} on K(P)) = phi0; charpoly(x on Q[x]/(phi0_bar)) = phi0_bar;
    and, given restricted classes, x^{-1} restricted to their span K has
    characteristic polynomial phi0_bar with rank K = deg phi0_bar."""
    ring = KRing(data)
    failures = []
    details: dict = {}
    cp = charpoly(ring.power_matrix(-1))
    details["charpoly_x_inv"] = cp
    if cp != rcp.phi0:
        failures.append("charpoly of x^-1 on K(P) != phi0")

    deg = rcp.phi0_bar.degree
    if deg > 0:
        tail = rcp.phi0_bar.monic().coefficients[:-1]
        comp_m = companion([tail[deg - i] for i in range(1, deg + 1)])
        if charpoly(comp_m) != rcp.phi0_bar.monic():
            failures.append("charpoly of x on Q[x]/(phi0_bar) != phi0_bar")
    if deg != data.Q - rcp.eta.degree:
        failures.append("deg phi0_bar != Q - deg eta")

    if rg is not None:
        basis = _independent_subset([list(c.coeffs) for c in rg.fbar])
        details["rank_K"] = len(basis)
        if len(basis) != deg:
            failures.append(f"rank of K = {len(basis)} != deg phi0_bar = {deg}")
        elif deg > 0:
            images = [list(ring.times_x_inv(KClass(tuple(b))).coeffs) for b in basis]
            action = _coordinates(basis, images)
            cpK = charpoly(action)
            details["charpoly_x_inv_on_K"] = cpK
            if cpK != rcp.phi0_bar.monic():
                failures.append("charpoly of x^-1 on K != phi0_bar")
    return CheckReport("reduced_charpoly", not failures, failures, details)


def _independent_subset(vectors: list[list[int]]) -> list[list[int]]:
    chosen: list[list[int]] = []
    for v in vectors:
        if rank(ExactMatrix.from_rows(chosen + [v])) > len(chosen):
            chosen.append(v)
    return chosen


def _coordinates(basis: list[list[int]], images: list[list[int]]) -> ExactMatrix:
    """Matrix M with images[k] = sum_i M[i, k] basis[i] (columns = coordinates)."""
    k = len(basis)
    cols = []
    for img in images:
        # solve [basis^T | -img] (c, 1) = 0
        aug = ExactMatrix.from_rows(
            [[basis[i][row] for i in range(k)] + [-img[row]] for row in range(len(img))]
        )
        sol = [v for v in kernel_basis(aug) if v[-1] != 0]
        if len(sol) != 1:
            raise ConsistencyError("image does not lie in the span")
        v = sol[0]
        cols.append([x / v[-1] for x in v[:-1]])
    return ExactMatrix.from_rows([[cols[c][i] for c in range(k)] for i in range(k)])


def koszul_recurrence_check(data: CompleteIntersectionData, ep: EulerPairing | None = None) -> CheckReport:
    ep = ep or EulerPairing(data)
    Q = data.Q
    defects = koszul_recurrence_defects(ep, -3 * Q, 3 * Q)
    return CheckReport("koszul_recurrence", not defects, defects)


def duality_check(cm: CollectionMatrices) -> CheckReport:
    """chi(E_{Q-i+1}, F_j) = delta_ij, i.e. D A = I."""
    ok = cm.D @ cm.A == ExactMatrix.identity(cm.D.rows)
    return CheckReport("dual_collection", ok, [] if ok else ["D A != I"])


def stokes_check(cm: CollectionMatrices) -> CheckReport:
    """A^T G_E A is already unitriangular and matches the Stokes matrix."""
    Q = cm.S.rows
    S = stokes_matrix(cm)
    failures = []
    if cm.S != S:
        failures.append("A^T G_E A is not unitriangular")
    G_ok = all(cm.G_E[i, j] == (1 if i == j else 0) for i in range(Q) for j in range(i + 1))
    if not G_ok:
        failures.append("G_E is not unitriangular")
    return CheckReport("stokes_unitriangular", not failures, failures)
