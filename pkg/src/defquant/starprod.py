"""Star products on S(V)[h]/h^(N+1).

* Moyal: f * g = m(exp(h P / 2)(f (x) g)) for constant pi, where
  P = sum_{i,j} pi_ij d_i (x) d_j is the calibrated bidifferential operator.
* PBW transport: f * g = Phi^-1(NF(Phi(f) Phi(g))) with Phi = NF o Sym,
  for any completed rewriting presentation (the Gutt product in the
  linear case).
* First order: fg + (h/2) P(f, g), meaningful modulo h^2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .ainfty import build_linear_instance
from .algebra import NCPoly, SymPoly, add_term, word_monomial
from .cobar import relations as cobar_relations
from .poisson import PoissonBivector, bivector_action
from .rewrite import RewriteSystem, build_system, word_key
from .series import HSeries


def _require(pi: PoissonBivector, kind: str) -> None:
    if not pi.fits(kind):
        raise ValueError(f"expected a {kind} bivector, got class {pi.kind!r}")


def _same_ring(pi: PoissonBivector, f: SymPoly, g: SymPoly) -> None:
    for p in (f, g):
        if p.dim != pi.dim:
            raise ValueError(f"polynomial in {p.dim} variables, bivector in {pi.dim}")
        if p.trunc != pi.trunc:
            raise ValueError(f"truncation mismatch: {p.trunc} vs {pi.trunc}")


_MOYAL_CACHE: dict = {}


def moyal_operator(pi: PoissonBivector) -> list[SymPoly]:
    """Symbols of h^k/(2^k k!) P^k for k = 0..N, as polynomials in 2d derivative variables.

    The exponent (alpha, beta) of a term means d^alpha on the left factor
    and d^beta on the right one.
    """
    _require(pi, "constant")
    hit = _MOYAL_CACHE.get(pi)
    if hit is not None:
        return hit
    d, N = pi.dim, pi.trunc
    m = pi.constant_matrix()
    P = SymPoly(2 * d, trunc=N)
    for i in range(d):
        for j in range(d):
            if m[i][j]:
                exps = [0] * (2 * d)
                exps[i] += 1
                exps[d + j] += 1
                P = P + SymPoly.monomial(exps, m[i][j], N)
    out = []
    power = SymPoly.const(1, 2 * d, N)
    for k in range(N + 1):
        out.append(power.scale(HSeries.h(k, Fraction(1, 2 ** k * factorial(k)), N)))
        power = power * P
    _MOYAL_CACHE[pi] = out
    return out


def moyal_star(f: SymPoly, g: SymPoly, pi: PoissonBivector) -> SymPoly:
    _require(pi, "constant")
    _same_ring(pi, f, g)
    d = pi.dim
    out = SymPoly(d, trunc=pi.trunc)
    for term in moyal_operator(pi):
        for exps, c in term.items():
            left = f.diff_multi(exps[:d])
            if left.is_zero():
                continue
            right = g.diff_multi(exps[d:])
            if right.is_zero():
                continue
            out = out + (left * right).scale(c)
    return out


def first_order_star(f: SymPoly, g: SymPoly, pi: PoissonBivector) -> SymPoly:
    _same_ring(pi, f, g)
    half_h = HSeries.h(1, Fraction(1, 2), pi.trunc)
    return f * g + bivector_action(pi, f, g).scale(half_h)


class PBWTransport:
    """Transport of the quotient product T(V)[h]/I to S(V)[h] along Phi = NF o Sym.

    Phi(x^a) is computed by the recursion
    Sym(x^a) = sum_i (a_i / |a|) x_i Sym(x^(a - e_i)), which avoids
    expanding all permutations.  Phi is triangular: the largest word of
    Phi(x^a) must be the sorted word of a with a unit coefficient, which
    is checked when the image is built.
    """

    def __init__(self, system: RewriteSystem):
        if system.status != "completed":
            raise ValueError(f"transport needs a completed system, status is {system.status!r}")
        self.system = system
        self.dim = system.dim
        self.trunc = system.trunc
        self._phi: dict[tuple[int, ...], dict] = {(0,) * self.dim: {(): HSeries.one(self.trunc)}}

    def phi_monomial(self, exps: tuple[int, ...]) -> dict:
        exps = tuple(exps)
        hit = self._phi.get(exps)
        if hit is not None:
            return hit
        n = sum(exps)
        acc: dict = {}
        for i, a in enumerate(exps):
            if not a:
                continue
            lower = list(exps)
            lower[i] -= 1
            w = Fraction(a, n)
            for u, c in self.phi_monomial(tuple(lower)).items():
                for z, cz in self.system.normal_form_word((i,) + u).items():
                    add_term(acc, z, c * cz * w)
        top = max(acc, key=word_key)
        if word_monomial(top, self.dim) != exps or len(top) != n or not acc[top].is_unit():
            raise ValueError(f"NF o Sym is not triangular at exponent {exps}")
        self._phi[exps] = acc
        return acc

    def phi(self, f: SymPoly) -> NCPoly:
        acc: dict = {}
        for m, c in f.items():
            for z, cz in self.phi_monomial(m).items():
                add_term(acc, z, c * cz)
        return NCPoly(acc, self.trunc)

    def phi_inverse(self, t: NCPoly) -> SymPoly:
        cur = dict(self.system.normal_form(t).terms)
        out: dict = {}
        while cur:
            top = max(cur, key=word_key)
            m = word_monomial(top, self.dim)
            image = self.phi_monomial(m)
            if top not in image or max(image, key=word_key) != top:
                raise ValueError(f"word {tuple(i + 1 for i in top)} is not a PBW leading word")
            c = cur[top] / image[top]
            add_term(out, m, c)
            for z, cz in image.items():
                add_term(cur, z, -c * cz)
        return SymPoly(self.dim, out, self.trunc)

    def star(self, f: SymPoly, g: SymPoly) -> SymPoly:
        prod = self.system.normal_form(self.phi(f) * self.phi(g))
        return self.phi_inverse(prod)


def linear_system(pi: PoissonBivector, degree_bound: int) -> RewriteSystem:
    _require(pi, "linear")
    rels = cobar_relations(build_linear_instance(pi))
    return build_system(rels.values(), pi.dim, degree_bound).complete()


_GUTT_CACHE: dict = {}


def gutt_transport(pi: PoissonBivector, degree_bound: int = 12) -> PBWTransport:
    key = (pi, degree_bound)
    hit = _GUTT_CACHE.get(key)
    if hit is None:
        if pi.dim < 2:
            raise ValueError("need at least two generators")
        pi.require_poisson()
        system = linear_system(pi, degree_bound)
        hit = PBWTransport(system)
        _GUTT_CACHE[key] = hit
    return hit


def gutt_star(f: SymPoly, g: SymPoly, pi: PoissonBivector, degree_bound: int = 12) -> SymPoly:
    _require(pi, "linear")
    _same_ring(pi, f, g)
    return gutt_transport(pi, degree_bound).star(f, g)


@dataclass
class StarAlgebra:
    pi: PoissonBivector
    kind: str = ""
    degree_bound: int = 12
    transport: PBWTransport | None = field(default=None, repr=False)

    def __post_init__(self):
        if not self.kind:
            self.kind = {"constant": "moyal", "linear": "gutt_transport"}.get(self.pi.kind, "first_order")
        if self.kind == "moyal":
            _require(self.pi, "constant")
        elif self.kind == "gutt_transport":
            _require(self.pi, "linear")
            if self.transport is None:
                self.transport = gutt_transport(self.pi, self.degree_bound)
        elif self.kind != "first_order":
            raise ValueError(f"unknown star product {self.kind!r}")

    @property
    def exact_order(self) -> int:
        """Highest h-order at which the product is associative."""
        return 1 if self.kind == "first_order" else self.pi.trunc

    def star(self, f: SymPoly, g: SymPoly) -> SymPoly:
        if self.kind == "moyal":
            return moyal_star(f, g, self.pi)
        if self.kind == "gutt_transport":
            _same_ring(self.pi, f, g)
            return self.transport.star(f, g)
        return first_order_star(f, g, self.pi)

    def associator(self, f: SymPoly, g: SymPoly, h: SymPoly) -> SymPoly:
        return self.star(self.star(f, g), h) - self.star(f, self.star(g, h))

    def commutator(self, f: SymPoly, g: SymPoly) -> SymPoly:
        return self.star(f, g) - self.star(g, f)
