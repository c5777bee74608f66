"""End-to-end verification suites with replayable counterexamples.

Each suite builds a context (bivector, relations, rewriting system, star
product, symmetrization map) from a :class:`VerificationCase`, runs a
list of named checks and collects them in a :class:`VerificationReport`.
Every failing check carries a counterexample payload; ``replay`` rebuilds
the context from the case and re-runs that single check on the payload.
"""

from __future__ import annotations

import itertools
import json
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable

from . import duflo
from .ainfty import (build_constant_instance, build_linear_instance, check_stasheff,
                     check_unitality, flip_deformation_sign, stasheff_value)
from .algebra import NCPoly, SymPoly, monomials_of_degree, random_sympoly, symmetrize
from .cobar import (DualDifferential, check_delta_squared, cohomology_ranks, gen_element, quadratic_first_order_relation,
                    relations as cobar_relations)
from .expr import format_ncpoly, format_relation, format_sympoly, parse_sympoly
from .poisson import PoissonBivector, jacobi_defect
from .rewrite import RewriteRule, RewriteSystem, build_system, symmetric_counts
from .series import HSeries
from .starprod import PBWTransport, StarAlgebra

SCHEMA_VERSION = 1
MUTATIONS = ("flip_sign", "corrupt_rule", "perturb_sym")
SUITES = ("constant", "linear", "quadratic", "koszul")


@dataclass
class VerificationCase:
    suite: str
    pi: PoissonBivector | None = None
    degree_bound: int = 4
    trunc: int = 4
    seed: int = 0
    trials: int = 50
    exhaustive_degree: int = 3
    mutation: str | None = None
    dim: int | None = None
    max_weight: int = 4
    expected: str = "pass"

    def __post_init__(self):
        if self.suite not in SUITES:
            raise ValueError(f"unknown suite {self.suite!r}")
        if self.mutation is not None and self.mutation not in MUTATIONS:
            raise ValueError(f"unknown mutation {self.mutation!r}")
        if self.mutation == "perturb_sym" and self.suite != "constant":
            raise ValueError("the perturb_sym mutation applies to the constant suite only")
        if self.mutation is not None and self.suite == "koszul":
            raise ValueError("the koszul suite takes no mutations")
        if self.pi is not None:
            self.dim = self.pi.dim
            if self.pi.trunc != self.trunc:
                self.pi = self.pi.retrunc(self.trunc)

    def to_json(self) -> dict:
        out = {
            "suite": self.suite,
            "dim": self.dim,
            "degree_bound": self.degree_bound,
            "trunc": self.trunc,
            "seed": self.seed,
            "trials": self.trials,
            "exhaustive_degree": self.exhaustive_degree,
            "mutation": self.mutation,
            "max_weight": self.max_weight,
            "expected": self.expected,
        }
        if self.pi is not None:
            out["pi"] = {f"{i + 1},{j + 1}": format_sympoly(self.pi.entries[i][j])
                         for i in range(self.pi.dim) for j in range(i + 1, self.pi.dim)
                         if not self.pi.entries[i][j].is_zero()}
            out["class"] = self.pi.kind
        return out


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""
    counterexample: dict | None = None
    skipped: bool = False

    def to_json(self) -> dict:
        out = {"name": self.name, "passed": self.passed, "detail": self.detail}
        if self.skipped:
            out["skipped"] = True
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


@dataclass
class VerificationReport:
    case: VerificationCase
    checks: list[Check] = field(default_factory=list)
    relations: list[str] = field(default_factory=list)
    rules: list[dict] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_json(self, include_timing: bool = False) -> dict:
        out = {
            "schema_version": SCHEMA_VERSION,
            "case": self.case.to_json(),
            "ok": self.ok,
            "checks": [c.to_json() for c in self.checks],
            "relations": self.relations,
            "rules": self.rules,
        }
        if include_timing:
            out["elapsed_seconds"] = round(self.elapsed, 3)
        return out

    def canonical_json(self) -> str:
        """Byte-stable serialization (timing excluded)."""
        return json.dumps(self.to_json(), sort_keys=True, indent=2)

    def summary(self) -> str:
        lines = [f"suite {self.case.suite}: {'PASS' if self.ok else 'FAIL'}"]
        for c in self.checks:
            tag = "skip" if c.skipped else ("ok" if c.passed else "FAIL")
            lines.append(f"  [{tag}] {c.name}" + (f" -- {c.detail}" if c.detail else ""))
        return "\n".join(lines)


# -- contexts ---------------------------------------------------------------

@dataclass
class Context:
    case: VerificationCase
    names: list[str]
    relations: dict = field(default_factory=dict)
    expected_relations: dict = field(default_factory=dict)
    system: RewriteSystem | None = None
    instance: object = None
    star: StarAlgebra | None = None
    transport: PBWTransport | None = None
    sym: Callable[[SymPoly], NCPoly] = symmetrize
    _nf_sym: dict = field(default_factory=dict, repr=False)

    def nf_sym(self, f: SymPoly) -> NCPoly:
        """NF(sym(f)), memoized per monomial (sym is linear)."""
        out = NCPoly(trunc=f.trunc)
        for m, c in f.items():
            hit = self._nf_sym.get(m)
            if hit is None:
                hit = self.system.normal_form(self.sym(SymPoly.monomial(m, 1, f.trunc)))
                self._nf_sym[m] = hit
            out = out + hit.scale(c)
        return out


def _names(dim: int) -> list[str]:
    return [f"x{i + 1}" for i in range(dim)]


def _commutator(i: int, j: int, trunc: int) -> NCPoly:
    return NCPoly.word((i, j), 1, trunc) - NCPoly.word((j, i), 1, trunc)


def _expected_relations(pi: PoissonBivector) -> dict:
    """x_i x_j - x_j x_i - h pi_ij with pi_ij read as a linear combination of generators."""
    h = HSeries.h(1, 1, pi.trunc)
    out = {}
    for i in range(pi.dim):
        for j in range(i + 1, pi.dim):
            rhs = {}
            for m, c in pi.entries[i][j].items():
                word = tuple(k for k, e in enumerate(m) for _ in range(e))
                rhs[word] = c
            out[(i, j)] = _commutator(i, j, pi.trunc) - NCPoly(rhs, pi.trunc).scale(h)
    return out


def _negated(pi: PoissonBivector) -> PoissonBivector:
    return PoissonBivector(pi.dim, tuple(tuple(-e for e in row) for row in pi.entries), pi.kind, pi.trunc)


def corrupt_rule(system: RewriteSystem, index: int = 0) -> RewriteSystem:
    """Add h to the right-hand side of one rule (a seeded defect)."""
    r = system.rules[index]
    bad = RewriteRule(r.lhs, r.rhs + NCPoly.const(HSeries.h(1, 1, system.trunc), system.trunc))
    return system.with_rule(index, bad)


def perturbed_symmetrize(f: SymPoly) -> NCPoly:
    """Sym(f) + h Sym(d_1 f): a degree-lowering correction that is not multiplicative."""
    return symmetrize(f) + symmetrize(f.diff(0)).scale(HSeries.h(1, 1, f.trunc))


def build_context(case: VerificationCase) -> Context:
    ctx = Context(case, _names(case.dim or 0))
    pi = case.pi
    if case.suite == "koszul":
        return ctx
    if case.suite == "quadratic":
        q = pi.retrunc(1)
        src = _negated(q) if case.mutation == "flip_sign" else q
        ctx.relations = {(i, j): quadratic_first_order_relation(src, i, j)
                         for i in range(q.dim) for j in range(i + 1, q.dim)}
        ctx.expected_relations = {
            k: _commutator(*k, 1) - symmetrize(q.entries[k[0]][k[1]]).scale(HSeries.h(1, 1, 1))
            for k in ctx.relations
        }
        ctx.star = StarAlgebra(q, "first_order")
    else:
        build = build_constant_instance if case.suite == "constant" else build_linear_instance
        inst = build(pi)
        if case.mutation == "flip_sign":
            inst = flip_deformation_sign(inst)
        ctx.instance = inst
        ctx.relations = cobar_relations(inst)
        ctx.expected_relations = _expected_relations(pi)
    bound = case.degree_bound
    if case.suite == "constant":
        bound = max(bound, 2 * max(case.exhaustive_degree, case.degree_bound))
    elif case.suite == "linear":
        bound = max(bound, 3 * case.exhaustive_degree)
    system = build_system(ctx.relations.values(), pi.dim, bound)
    if case.mutation == "corrupt_rule":
        system = corrupt_rule(system)
    ctx.system = system.complete()
    if case.suite == "constant":
        ctx.star = StarAlgebra(pi, "moyal")
        if case.mutation == "perturb_sym":
            ctx.sym = perturbed_symmetrize
    if case.suite == "linear" and ctx.system.status == "completed":
        ctx.transport = PBWTransport(ctx.system)
        ctx.star = StarAlgebra(pi, "gutt_transport", ctx.system.degree_bound, ctx.transport)
    return ctx


# -- individual checks (each returns (passed, payload-on-failure)) --------------

def _poly_payload(ctx: Context, **polys) -> dict:
    return {k: format_sympoly(v, ctx.names) for k, v in polys.items()}


def _parse_polys(ctx: Context, payload: dict, keys) -> list[SymPoly]:
    trunc = ctx.star.pi.trunc if ctx.star is not None else ctx.case.trunc
    return [parse_sympoly(payload[k], ctx.names, trunc) for k in keys]


def check_relation(ctx: Context, i: int, j: int):
    got, want = ctx.relations[(i, j)], ctx.expected_relations[(i, j)]
    if got == want:
        return True, None
    return False, {"check": "relations", "i": i + 1, "j": j + 1,
                   "got": format_ncpoly(got, ctx.names), "expected": format_ncpoly(want, ctx.names)}


def check_membership(ctx: Context, i: int, j: int):
    nf = ctx.system.normal_form(ctx.relations[(i, j)])
    if nf.is_zero():
        return True, None
    return False, {"check": "ideal_membership", "i": i + 1, "j": j + 1,
                   "normal_form": format_ncpoly(nf, ctx.names)}


def check_multiplicative(ctx: Context, f: SymPoly, g: SymPoly):
    """NF(sym(f * g)) = NF(sym(f) sym(g))."""
    lhs = ctx.nf_sym(ctx.star.star(f, g))
    rhs = ctx.system.normal_form(ctx.nf_sym(f) * ctx.nf_sym(g))
    if lhs == rhs:
        return True, None
    payload = {"check": "multiplicativity", **_poly_payload(ctx, f=f, g=g)}
    payload["difference"] = format_ncpoly(lhs - rhs, ctx.names)
    return False, payload


def check_transport(ctx: Context, f: SymPoly, g: SymPoly):
    """NF(Phi(f) Phi(g)) = Phi(f * g) for the transported product."""
    T = ctx.transport
    lhs = ctx.system.normal_form(T.phi(f) * T.phi(g))
    rhs = T.phi(ctx.star.star(f, g))
    if lhs == rhs:
        return True, None
    return False, {"check": "transport", **_poly_payload(ctx, f=f, g=g)}


def check_associative(ctx: Context, f: SymPoly, g: SymPoly, h: SymPoly, order: int | None = None):
    a = ctx.star.associator(f, g, h)
    if order is not None:
        a = a.retrunc(min(order, a.trunc))
    if a.is_zero():
        return True, None
    payload = {"check": "associativity", **_poly_payload(ctx, f=f, g=g, h=h)}
    payload["associator"] = format_sympoly(a, ctx.names)
    return False, payload


def check_ambiguity(ctx: Context, word, i: int, j: int, offset: int):
    rem = ctx.system.ambiguity_remainder(tuple(word), i, j, offset)
    if rem.is_zero():
        return True, None
    return False, {"check": "completion", "word": [x + 1 for x in word], "rules": [i, j],
                   "offset": offset, "remainder": format_ncpoly(rem, ctx.names)}


def check_gutt_commutator(ctx: Context, i: int, j: int):
    pi = ctx.case.pi
    x = [SymPoly.gen(k, pi.dim, pi.trunc) for k in (i, j)]
    got = ctx.star.commutator(*x)
    if got == pi.entries[i][j].scale(HSeries.h(1, 1, pi.trunc)):
        return True, None
    return False, {"check": "gutt_commutator", "i": i + 1, "j": j + 1, "got": format_sympoly(got, ctx.names)}


def check_stasheff_tuple(ctx: Context, inputs):
    val = stasheff_value(ctx.instance, [tuple(I) for I in inputs])
    if val.is_zero():
        return True, None
    return False, {"check": "stasheff", "inputs": [list(I) for I in inputs], "value": str(val)}


def check_c1_derivation(ctx: Context, f: SymPoly, g: SymPoly):
    c1 = duflo.wheel_symbol(ctx.case.pi, 1)
    D = lambda p: duflo.apply_operator(c1, p)  # noqa: E731
    st = ctx.star.star
    lhs = D(st(f, g))
    rhs = st(D(f), g) + st(f, D(g))
    if lhs == rhs:
        return True, None
    return False, {"check": "c1_derivation", **_poly_payload(ctx, f=f, g=g)}


def replay(case: VerificationCase, counterexample: dict) -> bool:
    """Re-run the check named in a counterexample; True if it still fails."""
    ctx = build_context(case)
    kind = counterexample["check"]
    cx = counterexample
    if kind == "relations":
        ok, _ = check_relation(ctx, cx["i"] - 1, cx["j"] - 1)
    elif kind == "ideal_membership":
        ok, _ = check_membership(ctx, cx["i"] - 1, cx["j"] - 1)
    elif kind == "multiplicativity":
        ok, _ = check_multiplicative(ctx, *_parse_polys(ctx, cx, ("f", "g")))
    elif kind == "transport":
        ok, _ = check_transport(ctx, *_parse_polys(ctx, cx, ("f", "g")))
    elif kind == "associativity":
        order = 1 if case.suite == "quadratic" else None
        ok, _ = check_associative(ctx, *_parse_polys(ctx, cx, ("f", "g", "h")), order=order)
    elif kind == "completion":
        ok, _ = check_ambiguity(ctx, [x - 1 for x in cx["word"]], cx["rules"][0], cx["rules"][1], cx["offset"])
    elif kind == "gutt_commutator":
        ok, _ = check_gutt_commutator(ctx, cx["i"] - 1, cx["j"] - 1)
    elif kind == "stasheff":
        ok, _ = check_stasheff_tuple(ctx, cx["inputs"])
    elif kind == "delta_squared":
        I = tuple(i - 1 for i in cx["generator"])
        dd = DualDifferential(ctx.instance)
        ok = dd(dd(gen_element(I, dd.trunc))).is_zero()
    elif kind == "jacobi":
        ok = jacobi_defect(case.pi, *[i - 1 for i in cx["indices"]]).is_zero()
    elif kind == "c1_derivation":
        ok, _ = check_c1_derivation(ctx, *_parse_polys(ctx, cx, ("f", "g")))
    elif kind == "hilbert":
        ok = ctx.system.hilbert(cx["degree"])[cx["degree"]] == cx["expected"]
    else:
        raise ValueError(f"cannot replay check {kind!r}")
    return not ok


# -- suite plumbing -------------------------------------------------------------

def _run_all(name: str, items, fn) -> Check:
    n = 0
    for args in items:
        n += 1
        ok, payload = fn(*args)
        if not ok:
            return Check(name, False, f"failed after {n} cases", payload)
    return Check(name, True, f"{n} cases")


def _monomial_basis(dim: int, max_degree: int, trunc: int) -> list[SymPoly]:
    return [SymPoly.monomial(m, 1, trunc) for k in range(max_degree + 1) for m in monomials_of_degree(dim, k)]


def _skip(name: str, why: str) -> Check:
    return Check(name, False, f"not run: {why}", skipped=True)


def _common_checks(ctx: Context, report: VerificationReport) -> None:
    pairs = sorted(ctx.relations)
    modulus = 2 if ctx.case.suite == "quadratic" else None
    report.relations = [format_relation(ctx.relations[k], *k, ctx.names, modulus) for k in pairs]
    report.checks.append(_run_all("relations", [(i, j) for i, j in pairs], lambda i, j: check_relation(ctx, i, j)))
    sys = ctx.system
    report.rules = [r.to_json() for r in sys.rules]
    if sys.status == "completed":
        detail = "no new rules" if not sys.added_rules else f"{len(sys.added_rules)} rules added"
        report.checks.append(Check("completion", True, detail))
    else:
        w = sys.witness
        _, payload = check_ambiguity(ctx, w.word, w.rules[0], w.rules[1],
                                     next(o[3] for o in sys.overlaps() if o[0] == w.word and o[1:3] == w.rules))
        report.checks.append(Check("completion", False, f"status {sys.status}", payload))
    report.checks.append(_run_all("ideal_membership", pairs, lambda i, j: check_membership(ctx, i, j)))
    top = ctx.case.degree_bound if ctx.case.suite != "quadratic" else max(ctx.case.degree_bound, 6)
    counts = sys.hilbert(min(top, sys.degree_bound))
    want = symmetric_counts(sys.dim, len(counts) - 1)
    bad = [n for n in range(len(counts)) if counts[n] != want[n]]
    if bad:
        n = bad[0]
        report.checks.append(Check("hilbert", False, f"counts {counts}",
                                   {"check": "hilbert", "degree": n, "expected": want[n], "got": counts[n]}))
    else:
        report.checks.append(Check("hilbert", True, f"counts {counts}"))


def _random_polys(rng: random.Random, ctx: Context, k: int, max_degree: int, trunc: int) -> list[SymPoly]:
    return [random_sympoly(rng, ctx.case.dim, max_degree, trunc, n_terms=3, h_terms=True) for _ in range(k)]


def _finish(report: VerificationReport, start: float) -> VerificationReport:
    report.elapsed = time.perf_counter() - start
    return report


# -- suites -----------------------------------------------------------------------

def verify_constant(pi: PoissonBivector, degree_bound: int = 4, trunc: int = 4, trials: int = 200,
                    seed: int = 0, exhaustive_degree: int = 3, mutation: str | None = None) -> VerificationReport:
    start = time.perf_counter()
    if not pi.fits("constant"):
        raise ValueError(f"expected a constant bivector, got class {pi.kind!r}")
    case = VerificationCase("constant", pi, degree_bound, trunc, seed, trials, exhaustive_degree, mutation)
    ctx = build_context(case)
    report = VerificationReport(case)
    _common_checks(ctx, report)
    if ctx.system.status != "completed":
        report.checks.append(_skip("multiplicativity", "rewriting system is not confluent"))
        return _finish(report, start)
    basis = _monomial_basis(pi.dim, exhaustive_degree, case.trunc)
    report.checks.append(_run_all("multiplicativity_exhaustive", itertools.product(basis, basis),
                                  lambda f, g: check_multiplicative(ctx, f, g)))
    rng = random.Random(seed)
    pairs = [_random_polys(rng, ctx, 2, degree_bound, case.trunc) for _ in range(trials)]
    report.checks.append(_run_all("multiplicativity_random", pairs, lambda f, g: check_multiplicative(ctx, f, g)))
    try:
        T = PBWTransport(ctx.system)
        for k in range(degree_bound + 1):
            for m in monomials_of_degree(pi.dim, k):
                T.phi_monomial(m)
        report.checks.append(Check("triangularity", True, f"NF o Sym unitriangular to degree {degree_bound}"))
    except ValueError as exc:
        report.checks.append(Check("triangularity", False, str(exc)))
    return _finish(report, start)


def verify_linear(pi: PoissonBivector, degree_bound: int = 5, trunc: int = 4, trials: int = 20,
                  seed: int = 0, assoc_degree: int = 3, stasheff_arity: int = 3,
                  mutation: str | None = None) -> VerificationReport:
    start = time.perf_counter()
    if not pi.fits("linear"):
        raise ValueError(f"expected a linear bivector, got class {pi.kind!r}")
    case = VerificationCase("linear", pi, degree_bound, trunc, seed, trials, assoc_degree, mutation)
    ctx = build_context(case)
    pi = case.pi
    report = VerificationReport(case)
    defects = pi.jacobi_defects()
    if defects:
        (ijk, dfx), *_ = defects.items()
        report.checks.append(Check("jacobi", False, f"{len(defects)} nonzero defects",
                                   {"check": "jacobi", "indices": [i + 1 for i in ijk], "defect": format_sympoly(dfx)}))
    else:
        report.checks.append(Check("jacobi", True))
    _common_checks(ctx, report)
    st = check_stasheff(ctx.instance, stasheff_arity)
    payload = None
    if not st.ok:
        _, payload = check_stasheff_tuple(ctx, st.violations[0].inputs)
    report.checks.append(Check("stasheff", st.ok, f"{st.checked} tuples to arity {stasheff_arity}", payload))
    un = check_unitality(ctx.instance)
    report.checks.append(Check("unitality", un.ok, f"{un.checked} probes"))
    dsq = check_delta_squared(DualDifferential(ctx.instance), min(pi.dim, 4))
    payload = None
    if not dsq.ok:
        (I, val), *_ = dsq.failures.items()
        payload = {"check": "delta_squared", "generator": [i + 1 for i in I], "value": str(val)}
    report.checks.append(Check("delta_squared", dsq.ok, f"{len(dsq.checked)} generators", payload))
    series = duflo.duflo_series(max(case.trunc, 2))
    good = series.one_wheel == Fraction(-1, 4) and all(
        v == duflo.bernoulli_weight(n) for n, v in series.even.items())
    report.checks.append(Check("duflo_series", good, json.dumps(series.to_json(), sort_keys=True)))
    names = ["gutt_commutator", "associativity", "transport", "c1_derivation"]
    if ctx.transport is None:
        report.checks.extend(_skip(n, "rewriting system is not confluent") for n in names)
        return _finish(report, start)
    pairs = list(itertools.combinations(range(pi.dim), 2))
    report.checks.append(_run_all("gutt_commutator", pairs, lambda i, j: check_gutt_commutator(ctx, i, j)))
    rng = random.Random(seed)
    triples = [_random_polys(rng, ctx, 3, assoc_degree, case.trunc) for _ in range(trials)]
    report.checks.append(_run_all("associativity", triples, lambda f, g, hh: check_associative(ctx, f, g, hh)))
    report.checks.append(_run_all("transport", [t[:2] for t in triples], lambda f, g: check_transport(ctx, f, g)))
    if duflo.wheel_symbol(pi, 1).is_zero():
        report.checks.append(Check("c1_derivation", True, "c1 = 0 (unimodular)"))
    else:
        basis = _monomial_basis(pi.dim, assoc_degree, case.trunc)
        report.checks.append(_run_all("c1_derivation", itertools.product(basis, basis),
                                      lambda f, g: check_c1_derivation(ctx, f, g)))
    return _finish(report, start)


def verify_quadratic(pi: PoissonBivector, degree_bound: int = 6, trials: int = 100, seed: int = 0,
                     assoc_degree: int = 3, mutation: str | None = None) -> VerificationReport:
    start = time.perf_counter()
    if not pi.fits("quadratic"):
        raise ValueError(f"expected a quadratic bivector, got class {pi.kind!r}")
    case = VerificationCase("quadratic", pi, degree_bound, pi.trunc, seed, trials, assoc_degree, mutation)
    ctx = build_context(case)
    report = VerificationReport(case)
    defects = pi.jacobi_defects()
    report.checks.append(Check("jacobi", not defects, f"{len(defects)} nonzero defects"))
    _common_checks(ctx, report)
    inhom = [k for k, r in ctx.relations.items() if any(len(w) != 2 for w in r)]
    report.checks.append(Check("homogeneity", not inhom, "relations are quadratic" if not inhom else
                               f"inhomogeneous relation at {tuple(i + 1 for i in inhom[0])}"))
    rng = random.Random(seed)
    triples = [_random_polys(rng, ctx, 3, assoc_degree, 1) for _ in range(trials)]
    report.checks.append(_run_all("associativity_mod_h2", triples,
                                  lambda f, g, hh: check_associative(ctx, f, g, hh, order=1)))
    return _finish(report, start)


def verify_koszul(dim: int, max_weight: int = 4, degrees=(-2, -1, 0)) -> VerificationReport:
    start = time.perf_counter()
    if dim > 4 or max_weight > 5:
        raise ValueError("Koszul window limited to dim <= 4 and weight <= 5")
    case = VerificationCase("koszul", None, trunc=0, dim=dim, max_weight=max_weight)
    report = VerificationReport(case)
    cells = cohomology_ranks(DualDifferential(None, dim, 0), degrees, max_weight)
    neg = [c for c in cells if c.degree < 0 and c.h_dim]
    report.checks.append(Check("acyclic_below_zero", not neg,
                               f"degrees {list(degrees)}, weights <= {max_weight}",
                               None if not neg else {"check": "cohomology", **neg[0].to_json()}))
    zero = {c.weight: c.h_dim for c in cells if c.degree == 0}
    want = {w: comb(w + dim - 1, w) for w in zero}
    report.checks.append(Check("degree_zero_dimensions", zero == want,
                               f"H0 dims {[zero[w] for w in sorted(zero)]}"))
    report.relations = []
    report.rules = [c.to_json() for c in cells]
    return _finish(report, start)


def run_case(case: VerificationCase) -> VerificationReport:
    if case.suite == "constant":
        return verify_constant(case.pi, case.degree_bound, case.trunc, case.trials, case.seed,
                               case.exhaustive_degree, case.mutation)
    if case.suite == "linear":
        return verify_linear(case.pi, case.degree_bound, case.trunc, case.trials, case.seed,
                             case.exhaustive_degree, mutation=case.mutation)
    if case.suite == "quadratic":
        return verify_quadratic(case.pi, case.degree_bound, case.trials, case.seed,
                                case.exhaustive_degree, case.mutation)
    return verify_koszul(case.dim, case.max_weight)
