"""Full-pipeline analysis report.

The report is built once and every derived field is recomputed from the
spectrum before emission.  JSON output is deterministic: key order is fixed
by construction and rationals are strings.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from .groebner import DEFAULT_BUDGET
from .hodge import (IrregularHodgeTable, bundle_degree, hn_jumps, irregular_hodge_numbers,
                    kontsevich_bundle_type, nearby_cycle_dimension, residue_classes)
from .laurent import LaurentPolynomial, default_names, format_laurent, rational_str
from .newton import is_nondegenerate, newton_polytope, normalized_volume
from .spectrum import (SpectrumTable, check_hypotheses, check_spectrum_symmetry,
                       jacobian_quotient, newton_filtration_jumps)

REPORT_VERSION = "1"
UNVERIFIED = "unverified hypotheses"
RESIDUE_ALPHAS = (Fraction(0), Fraction(1, 3), Fraction(1, 2))


@dataclass
class AnalysisReport:
    source: str
    names: tuple
    f: LaurentPolynomial
    order: str
    convenient: bool
    nondegenerate: bool
    verified: bool
    mu: int
    volume: int
    spectrum: SpectrumTable
    hodge: IrregularHodgeTable
    polytope: dict

    @property
    def alphas(self) -> list:
        return sorted(set(self.hodge.alphas) | set(RESIDUE_ALPHAS))

    def bundles(self) -> list:
        n = self.f.n
        return [kontsevich_bundle_type(self.hodge, n, a) for a in self.hodge.alphas]

    def checks(self) -> dict:
        S, T = self.spectrum, self.hodge
        bundles = self.bundles()
        degree_from_table = sum(p * h for (a, p, q), h in T.entries.items())
        residues_ok = all(-a <= r < 1 - a for a in self.alphas for r, _ in residue_classes(S, a))
        return {
            "symmetry": check_spectrum_symmetry(S),
            "volume_equals_mu": self.volume == self.mu,
            "spectrum_sum_equals_mu": S.total == self.mu,
            "hodge_sum_equals_mu": T.total == self.mu,
            "bundle_degree_sum_rule": sum(bundle_degree(B) for B in bundles) == degree_from_table,
            "residues_in_interval": residues_ok,
        }

    def to_json(self) -> dict:
        S, T = self.spectrum, self.hodge
        out = {
            "version": REPORT_VERSION,
            "input": self.source,
            "variables": list(self.names),
            "n": self.f.n,
            "polynomial": format_laurent(self.f, self.names),
            "order": self.order,
            "hypotheses": {
                "convenient": self.convenient,
                "nondegenerate": self.nondegenerate,
                "verified": self.verified,
            },
            "newton_polytope": self.polytope,
            "milnor_number": self.mu,
            "normalized_volume": self.volume,
            "spectrum": S.to_json(),
            "hodge": T.to_json(),
            "bundles": [B.to_json() for B in self.bundles()],
            "nearby_cycles": [{"alpha": rational_str(a), "dimension": nearby_cycle_dimension(S, a)}
                              for a in self.alphas],
            "residues": [{"alpha": rational_str(a),
                          "classes": [[rational_str(r), m] for r, m in residue_classes(S, a)]}
                         for a in self.alphas],
            "checks": self.checks(),
        }
        if not self.verified:
            out["warning"] = UNVERIFIED
        return out

    def to_text(self) -> str:
        S, T = self.spectrum, self.hodge
        lines = [f"f = {format_laurent(self.f, self.names)}  (n = {self.f.n})"]
        if not self.verified:
            lines.append(f"WARNING: {UNVERIFIED}")
        lines.append(f"convenient: {self.convenient}  nondegenerate: {self.nondegenerate}")
        lines.append(f"Milnor number: {self.mu}  normalized volume: {self.volume}")
        lines.append("spectrum: " + ", ".join(f"{g}^{d}" if d > 1 else str(g) for g, d in S.entries))
        lines.append("irregular Hodge numbers:")
        for (a, p, q), h in sorted(T.entries.items(), key=lambda kv: (kv[0][0], -kv[0][1])):
            lines.append(f"  h_{a}^({p},{q}) = {h}")
        for B in self.bundles():
            jumps = " ".join(f"({p},{r})" for p, r in hn_jumps(B))
            lines.append(f"K^{B.k}({B.alpha}) = {B}  degree {bundle_degree(B)}  HN {jumps}")
        for a in self.alphas:
            cls = ", ".join(f"{r} x{m}" for r, m in residue_classes(S, a))
            lines.append(f"residue classes on V_{a}: {cls}")
        lines.append("checks: " + ", ".join(f"{k}={'ok' if v else 'FAIL'}" for k, v in self.checks().items()))
        return "\n".join(lines) + "\n"


def analyze(f: LaurentPolynomial, source: str = "", names=None, order: str = "grevlex",
            budget: int | None = None, force: bool = False) -> AnalysisReport:
    """Run the whole pipeline.

    Convenience is always required.  With ``force`` a degenerate input is
    analysed anyway and the report is marked as unverified.
    """
    budget = budget or DEFAULT_BUDGET
    names = tuple(names) if names else default_names(f.n)
    P = newton_polytope(f)
    nondeg = True
    if force:
        if not P.is_convenient:
            check_hypotheses(f, budget)  # raises NotConvenient
        nondeg = is_nondegenerate(f, budget=budget)
    else:
        check_hypotheses(f, budget)
    Q = jacobian_quotient(f, order, budget)
    S = SpectrumTable(f.n, tuple(newton_filtration_jumps(f, Q)))
    report = AnalysisReport(
        source=source, names=names, f=f, order=order, convenient=True, nondegenerate=nondeg,
        verified=nondeg, mu=Q.dimension, volume=normalized_volume(P), spectrum=S,
        hodge=irregular_hodge_numbers(S), polytope=P.to_json())
    if report.verified:
        failed = [k for k, ok in report.checks().items() if not ok]
        if failed:
            raise AssertionError(f"internal cross-checks failed: {failed}")
    return report


def _flat(value) -> bool:
    return not isinstance(value, (dict, list)) or (
        isinstance(value, list) and all(not isinstance(v, (dict, list)) or
                                        (isinstance(v, list) and _flat(v)) for v in value))


def _render(value, indent: int) -> str:
    if _flat(value):
        return json.dumps(value, ensure_ascii=False, separators=(", ", ": "))
    pad, inner = " " * indent, " " * (indent + 2)
    if isinstance(value, dict):
        items = [f"{inner}{json.dumps(k)}: {_render(v, indent + 2)}" for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}" if items else "{}"
    items = [inner + _render(v, indent + 2) for v in value]
    return "[\n" + ",\n".join(items) + "\n" + pad + "]"


def dumps(payload) -> str:
    """Indented JSON with lists of scalars (or of scalar lists) kept on one line."""
    return _render(payload, 0) + "\n"


def load_schema() -> dict:
    return json.loads(resources.files("irrhodge").joinpath("schema/analysis_report.schema.json").read_text())

