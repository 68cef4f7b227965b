"""Randomized and exhaustive checks of the chart identities.

Each suite returns a :class:`SuiteResult`; a failing suite keeps the first
offending input so that reports can show it.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .chart import (ChartSection, ChartSpec, OperatorPolynomial, apply_operator,
                    compare_filtrations, decompose_Vbeta, in_V_strictly_less,
                    in_V_strictly_less_linear, p_poly, p_poly_hbar, plus_norm,
                    pq_convert, precision_lemma_check, q_section, reexpand,
                    weight_indices)
from .errors import TruncationOverflow
from .laurent import as_rational, rational_str

DEFAULT_ALPHAS = (Fraction(0), Fraction(1, 4), Fraction(1, 2))


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    failures: int = 0
    example: dict | None = None
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.failures == 0 and self.cases > 0

    def fail(self, detail: dict):
        self.failures += 1
        if self.example is None:
            self.example = detail

    def to_json(self) -> dict:
        out = {"name": self.name, "passed": self.passed, "cases": self.cases, "failures": self.failures}
        if self.example is not None:
            out["offending"] = self.example
        return out


def _rand_rational(rng: random.Random, size: int = 5) -> Fraction:
    while True:
        q = Fraction(rng.randint(-size, size), rng.randint(1, size))
        if q:
            return q


def random_monic(rng: random.Random, degree: int) -> OperatorPolynomial:
    return OperatorPolynomial.from_coeffs([_rand_rational(rng) for _ in range(degree)] + [1])


def max_expandable_degree(spec: ChartSpec, m=None) -> int:
    """Largest operator degree whose expansion at ``x^m`` stays in the box."""
    t = spec.truncation
    m = m if m is not None else (0,) * spec.ell
    room = min((mi - t.x_min) // ei for mi, ei in zip(m, spec.e))
    return min(t.op_max, t.v_max, room)


def check_p_poly(spec: ChartSpec, alphas=DEFAULT_ALPHAS, max_index: int = 3) -> SuiteResult:
    """Degree, monicity and roots of ``P_{a,beta}``; ``p_{a,alpha}(s, 1) = P_{a,alpha}``."""
    res = SuiteResult("p_poly")
    for a in product(range(max_index + 1), repeat=spec.ell):
        for alpha in alphas:
            for beta in (alpha, alpha + 1):
                res.cases += 1
                P = p_poly(a, spec.e, beta)
                roots = [-Fraction(int(beta * ei) + k, ei) for ai, ei in zip(a, spec.e)
                         for k in range(1, ai + 1)]
                coeffs = P.coeffs()
                ok = P.degree == sum(a) and P.is_monic()
                ok = ok and all(sum(c * r ** i for i, c in enumerate(coeffs)) == 0 for r in roots)
                if ok and beta == alpha:
                    ok = p_poly_hbar(a, spec.e, alpha, "alpha").at_hbar(1) == P
                    ok = ok and p_poly_hbar(a, spec.e, alpha, "strict").degree == sum(a)
                if not ok:
                    res.fail({"a": list(a), "beta": rational_str(beta), "P": str(P)})
    return res


def check_pq(spec: ChartSpec, trials: int = 100, max_degree: int = 6, seed: int = 0) -> SuiteResult:
    """``P(v d/dv) x^m E = x^m Q(v f) E`` with ``Q`` monic of the same degree."""
    rng = random.Random(seed)
    res = SuiteResult("pq_convert")
    t = spec.truncation
    top = min(max_degree, max_expandable_degree(spec))
    if top < 1:
        raise TruncationOverflow(f"truncation {t} cannot hold the expansion of a degree-1 operator")
    for _ in range(trials):
        res.cases += 1
        P = random_monic(rng, rng.randint(0, top))
        Q = pq_convert(P, spec.e)
        m = tuple(rng.randint(t.x_min + P.degree * ei, t.x_max) for ei in spec.e)
        lhs = apply_operator(P, ChartSection.monomial(m), spec)
        rhs = q_section(Q, m, spec)
        if not (Q.is_monic() and Q.degree == P.degree and lhs == rhs):
            res.fail({"P": str(P), "Q": str(Q), "x": list(m), "lhs": str(lhs), "rhs": str(rhs)})
    return res


def random_vbeta_section(rng: random.Random, beta, spec: ChartSpec, terms: int = 3):
    """A random element of ``V_beta`` inside the box, with its decomposition."""
    beta = as_rational(beta)
    t = spec.truncation
    candidates = []
    for w in product(range(t.x_min, t.x_max + 1), repeat=spec.ell):
        a, c = weight_indices(w, beta, spec.e)
        top = max_expandable_degree(spec, w)
        if sum(a) <= top:
            candidates.append((w, a, c, top))
    if not candidates:
        raise TruncationOverflow(f"truncation {t} contains no generator of V_{beta}")
    coeffs: dict = {}
    while not coeffs:
        for _ in range(rng.randint(1, terms)):
            w, a, c, top = rng.choice(candidates)
            lam = rng.randint(0, top - sum(a))
            h = coeffs.setdefault((a, lam), {})
            h[c] = h.get(c, 0) + _rand_rational(rng)
        coeffs = {k: {c: v for c, v in h.items() if v} for k, h in coeffs.items()}
        coeffs = {k: h for k, h in coeffs.items() if h}
    return reexpand(coeffs, beta, spec), coeffs


def _coeffs_json(coeffs) -> list:
    return [{"a": list(a), "lambda": lam, "h": {",".join(map(str, c)): rational_str(v) for c, v in h.items()}}
            for (a, lam), h in sorted(coeffs.items())]


def check_decompositions(spec: ChartSpec, alphas=DEFAULT_ALPHAS, trials: int = 100,
                         seed: int = 0) -> tuple:
    """Round trips, uniqueness, the grV rule and stability under ``v^j``.

    Returns the suites ``(decompose, grV, v_shift)``.
    """
    rng = random.Random(seed)
    rt = SuiteResult("decompose_roundtrip")
    grv = SuiteResult("grV_threshold")
    shift = SuiteResult("v_shift_indices")
    betas = sorted({as_rational(a) + k for a in alphas for k in (0, 1)})
    members = 0
    for i in range(trials):
        beta = betas[i % len(betas)]
        sec, coeffs = random_vbeta_section(rng, beta, spec)
        got = decompose_Vbeta(sec, beta, spec)
        rt.cases += 1
        if got != coeffs or reexpand(got, beta, spec) != sec:
            rt.fail({"beta": rational_str(beta), "section": sec.to_json(),
                     "expected": _coeffs_json(coeffs), "got": _coeffs_json(got)})
        grv.cases += 1
        rule = in_V_strictly_less(got, beta, spec.e)
        linear = in_V_strictly_less_linear(sec, beta, spec)
        members += linear
        if rule != linear:
            grv.fail({"beta": rational_str(beta), "section": sec.to_json(),
                      "rule": rule, "linear_algebra": linear})
        # v^j times a single generator decomposes again, with indices a' such that
        # every i with a_i = 0 still has a'_i = 0
        (a, lam), h = rng.choice(sorted(coeffs.items()))
        c = rng.choice(sorted(h))
        single = reexpand({(a, lam): {c: 1}}, beta, spec)
        room = spec.truncation.v_max - max(j for (_, j), _ in single.terms)
        room = min(room, spec.truncation.op_max - sum(a) - lam)
        if room < 1:
            continue
        shift.cases += 1
        shifted = single.times_v(rng.randint(1, room))
        try:
            again = decompose_Vbeta(shifted, beta, spec)
        except Exception as exc:  # reported, not raised
            shift.fail({"beta": rational_str(beta), "section": shifted.to_json(), "error": str(exc)})
            continue
        zeros = {k for k, ak in enumerate(a) if ak == 0}
        if not all(all(a2[k] == 0 for k in zeros) for a2, _ in again):
            shift.fail({"beta": rational_str(beta), "section": shifted.to_json(),
                        "indices": [list(a2) for a2, _ in again]})
    grv.notes.append({"in_V_strictly_less": members, "not_in_V_strictly_less": grv.cases - members})
    return rt, grv, shift


def check_filtrations(spec: ChartSpec, alphas=DEFAULT_ALPHAS, p_max: int = 2) -> SuiteResult:
    res = SuiteResult("filtration_compare")
    for alpha in alphas:
        for p in range(-1, p_max + 1):
            res.cases += 1
            cmp = compare_filtrations(spec, alpha, p)
            if not cmp.equal:
                res.fail(cmp.to_json())
            else:
                res.notes.append(cmp.to_json())
    return res


def check_precision_lemma(trials: int = 10_000, seed: int = 0, max_ell: int = 3,
                          max_e: int = 4) -> SuiteResult:
    """Random draws of ``(a, e, k)`` with ``|a|_+ <= k``."""
    rng = random.Random(seed)
    res = SuiteResult("precision_lemma")
    for _ in range(trials):
        ell = rng.randint(1, max_ell)
        e = [rng.randint(1, max_e) for _ in range(ell)]
        a = [rng.randint(-6, 6) for _ in range(ell)]
        k = plus_norm(a) + rng.randint(0, 4)
        res.cases += 1
        if not precision_lemma_check(a, e, k):
            res.fail({"a": a, "e": e, "k": k})
    return res


def run_local_suite(spec: ChartSpec, alphas=DEFAULT_ALPHAS, p_max: int = 2, trials: int = 100,
                    seed: int = 0) -> list:
    suites = [check_p_poly(spec, alphas), check_pq(spec, trials, seed=seed)]
    suites.extend(check_decompositions(spec, alphas, trials, seed))
    suites.append(check_filtrations(spec, alphas, p_max))
    suites.append(check_precision_lemma(seed=seed))
    return suites
