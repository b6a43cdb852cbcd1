"""Run every construction and check for one case and collect the results."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exact import ExactMatrix, charpoly, inverse
from .frobenius import DEFAULT_TRUNCATION, OdeReport, build_family, monodromy_zero_action, verify_ode
from .hypergroup import (
    CharCoefficients,
    CompleteIntersectionData,
    ExponentSpectrum,
    GroupGenerators,
    JordanBlockData,
    ReducedCharpolys,
    build_data,
    char_coefficients,
    exponent_spectrum,
    generators,
    h1_closed_form,
    jordan_at_zero,
    product_of_cyclic,
    reduced_charpolys,
)
from .invariants import (
    InvariantSpace,
    invariant_space,
    is_invariant,
    verify_invariance,
    verify_first_column_relations,
    verify_spanned_by_gram,
)
from .ktheory import (
    CollectionMatrices,
    EulerPairing,
    RestrictedGram,
    collection_matrices,
    duality_check,
    koszul_recurrence_check,
    restricted_gram,
    serre_symmetry,
    stokes_check,
    stokes_matrix,
    verify_cyclic_diagram,
    verify_reduced_charpoly,
    verify_tensor_action,
    verify_twist_action,
)


@dataclass(frozen=True)
class CaseSpec:
    name: str
    q: tuple[int, ...]
    d: tuple[int, ...]
    truncation: int = DEFAULT_TRUNCATION

    @classmethod
    def make(cls, q: Sequence[int], d: Sequence[int], name: str | None = None,
             truncation: int | None = None) -> "CaseSpec":
        data = build_data(q, d)  # validates
        return cls(
            name=name or data.label(),
            q=data.q,
            d=data.d,
            truncation=DEFAULT_TRUNCATION if truncation is None else int(truncation),
        )

    @property
    def data(self) -> CompleteIntersectionData:
        return build_data(self.q, self.d)


@dataclass
class Analysis:
    spec: CaseSpec
    data: CompleteIntersectionData
    cc: CharCoefficients
    gens: GroupGenerators
    spectrum: ExponentSpectrum
    jordan: JordanBlockData
    rcp: ReducedCharpolys
    cm: CollectionMatrices
    rg: RestrictedGram
    stokes: ExactMatrix
    space: InvariantSpace
    ode: list[OdeReport]
    gram_scalar: Fraction | None
    verdicts: dict[str, bool] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.verdicts.values())


def _generator_checks(data, cc, gens) -> dict[str, bool]:
    Q = data.Q
    ident = ExactMatrix.identity(Q)
    return {
        "charpoly_h_infty": charpoly(gens.h_infty) == product_of_cyclic(data.d),
        "charpoly_h0_inv": charpoly(inverse(gens.h0)) == product_of_cyclic(data.q),
        "h0_h1_h_infty_identity": gens.h0 @ gens.h1 @ gens.h_infty == ident,
        "h1_closed_form": gens.h1 == h1_closed_form(data, cc),
        "h1_pseudo_reflection": all(
            gens.h1[i, j] == int(i == j) for i in range(Q) for j in range(1, Q)
        ) and gens.h1[0, 0] == (-1) ** (data.n + 1),
        "generators_unimodular": all(
            m.is_integral() and inverse(m).is_integral() for m in gens.as_dict().values()
        ),
    }


def analyze_data(spec: CaseSpec, ode: bool = True, invariants: bool = True) -> Analysis:
    data = spec.data
    cc = char_coefficients(data)
    gens = generators(data)
    spectrum = exponent_spectrum(data)
    jordan = jordan_at_zero(spectrum)
    rcp = reduced_charpolys(data)
    ep = EulerPairing(data)
    cm = collection_matrices(data, ep)
    rg = restricted_gram(data, cm, ep)
    S = stokes_matrix(cm)

    verdicts = _generator_checks(data, cc, gens)
    verdicts["q_red_matches_gcd"] = spectrum.Q_red == data.Q - rcp.eta.degree
    verdicts["deg_phi0_bar_is_q_red"] = rcp.phi0_bar.degree == spectrum.Q_red
    verdicts["mu_sum_and_last"] = (
        sum(e.mu for e in spectrum.exponents) == data.Q
        and spectrum.exponents[-1].rho == 0
        and spectrum.exponents[-1].mu == data.N + 1
    )

    ode_reports: list[OdeReport] = []
    if ode:
        blocks = []
        for e in spectrum.exponents:
            fam = build_family(data, e.rho, e.mu, spec.truncation)
            ode_reports.append(verify_ode(fam, data))
            blocks.append(monodromy_zero_action(fam))
        verdicts["frobenius_ode"] = all(r.passed for r in ode_reports)
        verdicts["monodromy_zero_jordan"] = tuple(blocks) == jordan.blocks

    for report in (
        koszul_recurrence_check(data, ep),
        duality_check(cm),
        stokes_check(cm),
        serre_symmetry(rg, data.n),
        verify_tensor_action(data, rg, gens),
        verify_twist_action(rg, gens),
        verify_cyclic_diagram(data, rg, gens, ep),
        verify_reduced_charpoly(data, rcp, rg),
    ):
        verdicts[report.name] = report.passed
    verdicts["gram_invariance"] = verify_invariance(gens, rg.Xbar).passed

    space = InvariantSpace(0, (), None, 0)
    scalar = None
    if invariants:
        space = invariant_space(gens)
        verdicts["invariant_dimension_one"] = space.dimension == 1
        verdicts["invariant_h1_recheck"] = all(is_invariant(gens.h1, b) for b in space.basis)
        spanned = verify_spanned_by_gram(space, rg.Xbar)
        scalar = spanned.scalar
        verdicts[spanned.name] = spanned.passed
        verdicts["first_column_relations"] = verify_first_column_relations(gens, space, data.n).passed

    return Analysis(
        spec=spec, data=data, cc=cc, gens=gens, spectrum=spectrum, jordan=jordan, rcp=rcp,
        cm=cm, rg=rg, stokes=S, space=space, ode=ode_reports, gram_scalar=scalar,
        verdicts=verdicts,
    )
