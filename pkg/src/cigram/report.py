"""Lossless JSON and plain-text rendering of analysis results.

Every number is written as a decimal integer string or a "p/q" string; the
output never contains a float.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .exact import ExactMatrix, Polynomial
from .frobenius import OdeReport
from .pipeline import Analysis


def exact_str(x) -> str:
    return str(Fraction(x))


def matrix_strings(m: ExactMatrix | None) -> list[list[str]] | None:
    if m is None:
        return None
    return [[exact_str(x) for x in m.row(i)] for i in range(m.rows)]


def poly_strings(p: Polynomial) -> list[str]:
    """Coefficients from degree 0 upward."""
    return [exact_str(c) for c in p.coefficients]


def case_dict(a: Analysis) -> dict:
    return {
        "name": a.spec.name,
        "q": list(a.data.q),
        "d": list(a.data.d),
        "truncation": a.spec.truncation,
    }


def ode_dict(r: OdeReport) -> dict:
    return {
        "rho": exact_str(r.rho),
        "mu": r.mu,
        "truncation": r.truncation,
        "passed": r.passed,
        "first_failing_order": r.first_failing_order,
    }


def full_report(a: Analysis) -> dict:
    data = a.data
    return {
        "case": case_dict(a),
        "Q": data.Q,
        "N": data.N,
        "r": data.r,
        "n": data.n,
        "Q_red": a.spectrum.Q_red,
        "lambda": exact_str(data.lam),
        "A": list(a.cc.A),
        "B": list(a.cc.B),
        "exponents": [
            {"rho": exact_str(e.rho), "mu": e.mu, "nu": e.nu} for e in a.spectrum.exponents
        ],
        "jordan_blocks_at_zero": [[exact_str(rho), mu] for rho, mu in a.jordan.blocks],
        "charpolys": {
            "phi0": poly_strings(a.rcp.phi0),
            "phi_inf": poly_strings(a.rcp.phi_inf),
            "eta": poly_strings(a.rcp.eta),
            "phi0_bar": poly_strings(a.rcp.phi0_bar),
            "phi_inf_bar": poly_strings(a.rcp.phi_inf_bar),
        },
        "matrices": {
            "h0": matrix_strings(a.gens.h0),
            "h1": matrix_strings(a.gens.h1),
            "h_infty": matrix_strings(a.gens.h_infty),
            "Xbar": matrix_strings(a.rg.Xbar),
            "S": matrix_strings(a.stokes),
            "invariant_generator": matrix_strings(a.space.normalized_generator),
        },
        "rank_Xbar": a.rg.rank_Xbar,
        "rank_K": a.rg.rank_K,
        "invariant_dimension": a.space.dimension,
        "gram_over_generator": None if a.gram_scalar is None else exact_str(a.gram_scalar),
        "ode": [ode_dict(r) for r in a.ode],
        "verdicts": [{"check": k, "result": "pass" if v else "fail"} for k, v in a.verdicts.items()],
        "all_pass": a.passed,
    }


def stokes_report(a: Analysis) -> dict:
    return {"case": case_dict(a), "Q": a.data.Q, "S": matrix_strings(a.stokes)}


def gram_report(a: Analysis) -> dict:
    return {
        "case": case_dict(a),
        "Q": a.data.Q,
        "n": a.data.n,
        "Q_red": a.spectrum.Q_red,
        "rank_Xbar": a.rg.rank_Xbar,
        "Xbar": matrix_strings(a.rg.Xbar),
    }


def invariants_report(a: Analysis) -> dict:
    return {
        "case": case_dict(a),
        "Q": a.data.Q,
        "dimension": a.space.dimension,
        "generator": matrix_strings(a.space.normalized_generator),
        "gram_over_generator": None if a.gram_scalar is None else exact_str(a.gram_scalar),
    }


def ode_report(a: Analysis) -> dict:
    return {"case": case_dict(a), "families": [ode_dict(r) for r in a.ode]}


def dumps(obj) -> str:
    """Canonical JSON text (stable key order, two-space indent, trailing newline)."""
    return json.dumps(obj, indent=2, ensure_ascii=True) + "\n"


# ---------------------------------------------------------------------------
# text


def grid(rows: list[list[str]] | None, indent: str = "  ") -> str:
    if not rows:
        return indent + "(none)"
    width = max(len(x) for r in rows for x in r)
    return "\n".join(indent + " ".join(x.rjust(width) for x in r) for r in rows)


def _title(obj: dict) -> str:
    c = obj["case"]
    return f"case {c['name']}  q={','.join(map(str, c['q']))}  d={','.join(map(str, c['d']))}"


def render_text(kind: str, obj: dict) -> str:
    lines = [_title(obj)]
    if kind == "analyze":
        lines.append(
            f"Q={obj['Q']} N={obj['N']} r={obj['r']} n={obj['n']} Q_red={obj['Q_red']} lambda={obj['lambda']}"
        )
        lines.append("A = (" + ", ".join(map(str, obj["A"])) + ")")
        lines.append("B = (" + ", ".join(map(str, obj["B"])) + ")")
        lines.append("exponents (rho, mu, nu):")
        for e in obj["exponents"]:
            lines.append(f"  {e['rho']:>6} {e['mu']:>3} {e['nu']:>3}")
        for key, label in (("h0", "h0"), ("h1", "h1"), ("h_infty", "h_infty"), ("Xbar", "Xbar"),
                           ("S", "Stokes S"), ("invariant_generator", "invariant generator")):
            lines.append(f"{label}:")
            lines.append(grid(obj["matrices"][key]))
        lines.append(
            f"invariant dimension {obj['invariant_dimension']}, Xbar = "
            f"{obj['gram_over_generator']} * generator, rank Xbar {obj['rank_Xbar']}, rank K {obj['rank_K']}"
        )
        lines.append("verdicts:")
        for v in obj["verdicts"]:
            lines.append(f"  {v['result'].upper():4} {v['check']}")
        lines.append("ALL PASS" if obj["all_pass"] else "FAILURES PRESENT")
    elif kind == "stokes":
        lines.append("S:")
        lines.append(grid(obj["S"]))
    elif kind == "gram":
        lines.append(f"n={obj['n']} Q_red={obj['Q_red']} rank Xbar={obj['rank_Xbar']}")
        lines.append("Xbar:")
        lines.append(grid(obj["Xbar"]))
    elif kind == "invariants":
        lines.append(f"dimension {obj['dimension']}")
        lines.append("generator:")
        lines.append(grid(obj["generator"]))
        lines.append(f"Xbar = {obj['gram_over_generator']} * generator")
    elif kind == "verify-ode":
        for f in obj["families"]:
            status = "pass" if f["passed"] else f"FAIL at order {f['first_failing_order']}"
            lines.append(f"  rho={f['rho']} mu={f['mu']} M={f['truncation']}: {status}")
    else:
        raise ValueError(kind)
    return "\n".join(lines) + "\n"
