"""Curved A-infinity structures on the exterior algebra via Taylor components.

A structure is a family of multilinear maps d^k on B[1], B = exterior
algebra on d generators, stored densely as tables
``{(I_1, ..., I_k): ExtElement}`` over wedge-basis tuples.  The shifted
degree of e_I is |I| - 1 and every d^k has degree +1 in that grading.

Sign conventions (frozen by the golden tests):

* d^2(b1|b2) = (-1)^{|b1|} b1 ^ b2 with |b1| the unshifted degree;
* Stasheff: sum over j+k+l = n of d^{j+1+l}(id^j (x) d^k (x) id^l) = 0, where
  passing d^k over v_1..v_j costs (-1)^{shifted degrees of v_1..v_j};
* linear case: d^1(e_k) = h * sum_{i<j} f_ij^k e_i ^ e_j, extended as a derivation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .algebra import ExtElement, add_term, ext_basis
from .poisson import PoissonBivector
from .series import HSeries, series_from_json, series_to_json

Basis = tuple[int, ...]
Table = Mapping[tuple[Basis, ...], ExtElement]

STASHEFF_BUDGET = 1 << 18


def shifted_degree(I: Basis) -> int:
    return len(I) - 1


@dataclass(frozen=True)
class TaylorComponents:
    dim: int
    trunc: int
    tables: Mapping[int, Table]

    @property
    def max_arity(self) -> int:
        return max((k for k, t in self.tables.items() if t), default=-1)

    def arities(self) -> list[int]:
        return sorted(k for k, t in self.tables.items() if any(not v.is_zero() for v in t.values()))

    def component(self, k: int, inputs: Sequence[Basis]) -> ExtElement:
        table = self.tables.get(k)
        if table is not None:
            out = table.get(tuple(tuple(I) for I in inputs))
            if out is not None:
                return out
        return ExtElement(self.dim, trunc=self.trunc)

    def apply(self, k: int, args: Sequence[ExtElement]) -> ExtElement:
        """Evaluate d^k on arbitrary elements by multilinear expansion."""
        table = self.tables.get(k)
        if not table:
            return ExtElement(self.dim, trunc=self.trunc)
        acc: dict = {}
        for combo in itertools.product(*(a.items() for a in args)):
            out = table.get(tuple(I for I, _ in combo))
            if out is None:
                continue
            coeff = HSeries.one(self.trunc)
            for _, c in combo:
                coeff = coeff * c
            for J, cj in out.items():
                add_term(acc, J, cj * coeff)
        return ExtElement(self.dim, acc, self.trunc)

    def replace(self, k: int, inputs: Sequence[Basis], output: ExtElement) -> "TaylorComponents":
        """A copy with one table entry overwritten (used for mutation tests)."""
        tables = {a: dict(t) for a, t in self.tables.items()}
        tables.setdefault(k, {})[tuple(tuple(I) for I in inputs)] = output
        return TaylorComponents(self.dim, self.trunc, tables)

    def scaled(self, k: int, factor) -> "TaylorComponents":
        tables = {a: dict(t) for a, t in self.tables.items()}
        if k in tables:
            tables[k] = {key: v.scale(factor) for key, v in tables[k].items()}
        return TaylorComponents(self.dim, self.trunc, tables)

    # -- JSON ----------------------------------------------------------
    def to_json(self) -> dict:
        comps = []
        for k in sorted(self.tables):
            for inputs, out in sorted(self.tables[k].items()):
                if out.is_zero():
                    continue
                comps.append({
                    "arity": k,
                    "inputs": [list(I) for I in inputs],
                    "output": [[list(J), series_to_json(c)] for J, c in sorted(out.items())],
                })
        return {"dim": self.dim, "trunc": self.trunc, "components": comps}

    @classmethod
    def from_json(cls, data: Mapping) -> "TaylorComponents":
        dim, trunc = int(data["dim"]), int(data["trunc"])
        tables: dict[int, dict] = {}
        for comp in data["components"]:
            k = int(comp["arity"])
            inputs = tuple(tuple(int(i) for i in I) for I in comp["inputs"])
            if len(inputs) != k:
                raise ValueError(f"arity {k} component given {len(inputs)} inputs")
            out = ExtElement(dim, {tuple(J): series_from_json(c).retrunc(trunc) for J, c in comp["output"]}, trunc)
            for I in inputs:
                ExtElement(dim, {I: HSeries.one(trunc)}, trunc)  # validates the index set
            tables.setdefault(k, {})[inputs] = out
        tc = cls(dim, trunc, tables)
        tc.check_degrees()
        return tc

    def check_degrees(self) -> None:
        """Each d^k must raise the shifted degree by exactly one."""
        for k, table in self.tables.items():
            for inputs, out in table.items():
                want = sum(shifted_degree(I) for I in inputs) + 1
                for J in out:
                    if shifted_degree(J) != want:
                        raise ValueError(
                            f"d^{k}{[list(I) for I in inputs]} has a term e{list(J)} of shifted degree "
                            f"{shifted_degree(J)}, expected {want}"
                        )


@dataclass(frozen=True)
class AInftyInstance:
    components: TaylorComponents
    label: str = "custom"
    verified: bool = field(default=False, compare=False)
    unit: Basis = ()

    @property
    def dim(self) -> int:
        return self.components.dim

    @property
    def trunc(self) -> int:
        return self.components.trunc

    def curvature(self) -> ExtElement:
        return self.components.component(0, ())

    def is_flat(self) -> bool:
        return self.curvature().is_zero()

    def d(self, k: int, *args: ExtElement) -> ExtElement:
        return self.components.apply(k, args)

    def with_components(self, components: TaylorComponents, label: str | None = None) -> "AInftyInstance":
        return AInftyInstance(components, label or self.label, verified=False)


# -- builders ------------------------------------------------------------

def wedge_table(dim: int, trunc: int) -> dict:
    """d^2(e_I|e_J) = (-1)^{|I|} e_I ^ e_J over all basis pairs."""
    basis = ext_basis(dim)
    table = {}
    for I in basis:
        eI = ExtElement(dim, {I: HSeries.one(trunc)}, trunc)
        for J in basis:
            w = eI.wedge(ExtElement(dim, {J: HSeries.one(trunc)}, trunc))
            if not w.is_zero():
                table[(I, J)] = w.scale(-1 if len(I) % 2 else 1)
    return table


def _require_kind(pi: PoissonBivector, kind: str) -> None:
    if not pi.fits(kind):
        raise ValueError(f"expected a {kind} bivector, got class {pi.kind!r}")


def build_constant_instance(pi: PoissonBivector) -> AInftyInstance:
    """Two components: curvature d^0 = h*pi and the signed wedge d^2."""
    _require_kind(pi, "constant")
    d, N = pi.dim, pi.trunc
    m = pi.constant_matrix()
    curv = ExtElement(d, {(i, j): HSeries.h(1, m[i][j], N) for i in range(d) for j in range(i + 1, d)}, N)
    tables = {0: {(): curv}, 2: wedge_table(d, N)}
    return AInftyInstance(TaylorComponents(d, N, tables), "constant", verified=True)


def ce_differential(pi: PoissonBivector) -> dict:
    """d^1 on every basis element: h*f_ij^k e_ij on generators, extended as a derivation."""
    d, N = pi.dim, pi.trunc
    f = pi.structure_constants()
    on_gen = {}
    for k in range(d):
        terms = {(i, j): HSeries.h(1, f.get((i, j, k), 0), N) for i in range(d) for j in range(i + 1, d)}
        on_gen[k] = ExtElement(d, terms, N)
    table = {}
    for I in ext_basis(d):
        out = ExtElement(d, trunc=N)
        for pos, k in enumerate(I):
            left = ExtElement(d, {I[:pos]: HSeries.one(N)}, N)
            right = ExtElement(d, {I[pos + 1:]: HSeries.one(N)}, N)
            out = out + left.wedge(on_gen[k]).wedge(right).scale(-1 if pos % 2 else 1)
        if not out.is_zero():
            table[(I,)] = out
    return table


def build_linear_instance(pi: PoissonBivector) -> AInftyInstance:
    """Two components: the rescaled Chevalley-Eilenberg d^1 and the signed wedge d^2."""
    _require_kind(pi, "linear")
    d, N = pi.dim, pi.trunc
    tables = {1: ce_differential(pi), 2: wedge_table(d, N)}
    return AInftyInstance(TaylorComponents(d, N, tables), "linear", verified=True)


def custom_instance(components: TaylorComponents) -> AInftyInstance:
    components.check_degrees()
    return AInftyInstance(components, "custom", verified=False)


# -- checks --------------------------------------------------------------

@dataclass
class Violation:
    arity: int
    inputs: tuple[Basis, ...]
    value: ExtElement

    def to_json(self) -> dict:
        return {
            "arity": self.arity,
            "inputs": [list(I) for I in self.inputs],
            "value": str(self.value),
        }


@dataclass
class AxiomReport:
    name: str
    checked: int = 0
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"name": self.name, "checked": self.checked, "ok": self.ok,
                "violations": [v.to_json() for v in self.violations]}


def _basis_elements(dim: int, trunc: int) -> dict[Basis, ExtElement]:
    return {I: ExtElement(dim, {I: HSeries.one(trunc)}, trunc) for I in ext_basis(dim)}


def stasheff_value(inst: AInftyInstance, inputs: Sequence[Basis]) -> ExtElement:
    """Left-hand side of the arity-n Stasheff relation on basis inputs."""
    comps = inst.components
    dim, N = comps.dim, comps.trunc
    elems = [ExtElement(dim, {I: HSeries.one(N)}, N) for I in inputs]
    n = len(inputs)
    arities = set(comps.arities())
    total = ExtElement(dim, trunc=N)
    for k in arities:
        if k > n:
            continue
        for j in range(n - k + 1):
            outer = j + 1 + (n - j - k)
            if outer not in arities:
                continue
            inner = comps.apply(k, elems[j:j + k])
            if inner.is_zero():
                continue
            sign = -1 if sum(shifted_degree(I) for I in inputs[:j]) % 2 else 1
            val = comps.apply(outer, elems[:j] + [inner] + elems[j + k:])
            total = total + val.scale(sign)
    return total


def check_stasheff(inst: AInftyInstance, max_n: int, include_unit: bool = True) -> AxiomReport:
    """Evaluate every Stasheff relation of arity 0..max_n on all basis tuples."""
    basis = ext_basis(inst.dim, include_unit)
    if len(basis) ** max_n > STASHEFF_BUDGET:
        raise ValueError(
            f"{len(basis)}^{max_n} basis tuples exceed the budget of {STASHEFF_BUDGET}; lower max_n"
        )
    report = AxiomReport("stasheff")
    for n in range(max_n + 1):
        for inputs in itertools.product(basis, repeat=n):
            report.checked += 1
            val = stasheff_value(inst, inputs)
            if not val.is_zero():
                report.violations.append(Violation(n, inputs, val))
    return report


def check_unitality(inst: AInftyInstance, max_arity: int | None = None) -> AxiomReport:
    """d^2(1, b) = b, d^2(b, 1) = (-1)^{|b|-1} b (shifted |b|), and d^k(.., 1, ..) = 0 for k != 2."""
    dim, N = inst.dim, inst.trunc
    comps = inst.components
    elems = _basis_elements(dim, N)
    unit = inst.unit
    report = AxiomReport("unitality")
    for I, e in elems.items():
        report.checked += 2
        left = comps.component(2, (unit, I))
        if left != e:
            report.violations.append(Violation(2, (unit, I), left - e))
        right = comps.component(2, (I, unit))
        expected = e.scale(-1 if (shifted_degree(I) - 1) % 2 else 1)
        if right != expected:
            report.violations.append(Violation(2, (I, unit), right - expected))
    top = comps.max_arity if max_arity is None else max_arity
    for k in range(1, top + 1):
        if k == 2:
            continue
        table = comps.tables.get(k, {})
        for inputs, out in table.items():
            if unit in inputs and not out.is_zero():
                report.checked += 1
                report.violations.append(Violation(k, inputs, out))
    return report


def verified(inst: AInftyInstance, max_n: int = 3) -> AInftyInstance:
    """Return the instance flagged verified if the Stasheff and unit axioms pass."""
    if check_stasheff(inst, max_n).ok and check_unitality(inst).ok:
        return AInftyInstance(inst.components, inst.label, verified=True, unit=inst.unit)
    raise ValueError("instance fails the A-infinity axioms")


def flip_deformation_sign(inst: AInftyInstance) -> AInftyInstance:
    """Negate the h-carrying components d^0 and d^1 (a seeded sign defect)."""
    comps = inst.components.scaled(0, -1).scaled(1, -1)
    return AInftyInstance(comps, inst.label + "-flipped", verified=False)
