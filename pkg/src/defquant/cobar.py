"""The cobar algebra T(B+[1]^*) and its differentials.

Generators x_I (I a nonempty sorted index tuple) are dual to e_I; x_I
has cohomological degree 1 - |I| and weight |I|.  Singletons x_(i,) are
the generators of T(V).

The differential on a generator is minus the transpose of the Taylor
components under the sign-free pairing of words with basis tuples::

    delta(x_I) = - sum_k sum_{J_1..J_k} <e_I, d^k(e_J1|...|e_Jk)> x_J1 ... x_Jk

and it is extended to words as a degree +1 derivation,
delta(ab) = delta(a) b + (-1)^{deg a} a delta(b).  With the wedge sign
of d^2 this gives delta(x_ij) = x_i x_j - x_j x_i, and the curvature or
CE component contributes the deformation term.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Sequence

from .ainfty import AInftyInstance
from .algebra import NCPoly, add_term, ext_basis, shuffle_sign, symmetrize
from .linalg import rank
from .poisson import PoissonBivector
from .series import HSeries

Gen = tuple[int, ...]

COHOMOLOGY_BUDGET = 20000


def generator_degree(I: Gen) -> int:
    return 1 - len(I)


def word_degree(w: Sequence[Gen]) -> int:
    return sum(1 - len(I) for I in w)


def word_weight(w: Sequence[Gen]) -> int:
    return sum(len(I) for I in w)


def generators(dim: int, max_weight: int | None = None) -> list[Gen]:
    return [I for I in ext_basis(dim, include_unit=False)
            if max_weight is None or len(I) <= max_weight]


def classical_delta(I: Gen, trunc: int = 0) -> NCPoly:
    """delta_0(x_I): the sum over splittings I = J u K of (-1)^{|J|+1} sign(J,K) x_J x_K."""
    I = tuple(I)
    acc: dict = {}
    n = len(I)
    for r in range(1, n):
        for J in itertools.combinations(I, r):
            K = tuple(i for i in I if i not in J)
            s = shuffle_sign(J, K) * (1 if r % 2 else -1)
            add_term(acc, (J, K), HSeries.const(s, trunc))
    return NCPoly(acc, trunc)


class DualDifferential:
    """The derivation on T(B+[1]^*) dual to an A-infinity structure.

    ``DualDifferential(None, dim, trunc)`` is the classical cobar
    differential delta_0.
    """

    def __init__(self, inst: AInftyInstance | None, dim: int | None = None, trunc: int | None = None):
        self.inst = inst
        if inst is not None:
            self.dim, self.trunc = inst.dim, inst.trunc
        else:
            if dim is None:
                raise ValueError("the classical differential needs a dimension")
            self.dim, self.trunc = dim, 0 if trunc is None else trunc
        self._images: dict[Gen, NCPoly] = {}
        if inst is not None:
            self._images = self._dualize(inst)

    def _dualize(self, inst: AInftyInstance) -> dict[Gen, NCPoly]:
        acc: dict[Gen, dict] = {}
        for k, table in inst.components.tables.items():
            for inputs, out in table.items():
                if any(len(J) == 0 for J in inputs):
                    continue
                for I, c in out.items():
                    if not I:
                        continue
                    add_term(acc.setdefault(I, {}), tuple(inputs), -c)
        return {I: NCPoly(terms, self.trunc) for I, terms in acc.items()}

    def on_generator(self, I: Gen) -> NCPoly:
        I = tuple(I)
        if self.inst is None:
            return classical_delta(I, self.trunc)
        return self._images.get(I, NCPoly(trunc=self.trunc))

    def __call__(self, elem: NCPoly) -> NCPoly:
        acc: dict = {}
        for w, c in elem.items():
            deg = 0
            for pos, I in enumerate(w):
                img = self.on_generator(I)
                sign = -1 if deg % 2 else 1
                pre, post = w[:pos], w[pos + 1:]
                for v, cv in img.items():
                    add_term(acc, pre + v + post, c * cv * sign)
                deg += generator_degree(I)
        return NCPoly(acc, self.trunc)


def gen_element(I: Gen, trunc: int) -> NCPoly:
    return NCPoly.word((tuple(I),), 1, trunc)


def deformed_delta(inst: AInftyInstance, I: Gen) -> NCPoly:
    return DualDifferential(inst).on_generator(tuple(I))


def to_tensor_algebra(elem: NCPoly) -> NCPoly:
    """Rewrite an element whose letters are all singletons x_(i,) as an element of T(V)."""
    acc = {}
    for w, c in elem.items():
        if any(len(I) != 1 for I in w):
            raise ValueError("element involves generators of weight > 1")
        acc[tuple(I[0] for I in w)] = c
    return NCPoly(acc, elem.trunc)


def relations(inst: AInftyInstance) -> dict[tuple[int, int], NCPoly]:
    """delta_h(x_ij) for i < j, as elements of T(V)."""
    delta = DualDifferential(inst)
    return {(i, j): to_tensor_algebra(delta.on_generator((i, j)))
            for i in range(inst.dim) for j in range(i + 1, inst.dim)}


def classical_relations(dim: int, trunc: int) -> dict[tuple[int, int], NCPoly]:
    return {(i, j): to_tensor_algebra(classical_delta((i, j), trunc))
            for i in range(dim) for j in range(i + 1, dim)}


def quadratic_first_order_relation(pi: PoissonBivector, i: int, j: int) -> NCPoly:
    """x_i x_j - x_j x_i - h Sym(pi_ij), over Q[h]/h^2."""
    if not pi.fits("quadratic"):
        raise ValueError(f"expected a quadratic bivector, got class {pi.kind!r}")
    sym = symmetrize(pi.entries[i][j].retrunc(1))
    comm = NCPoly.word((i, j), 1, 1) - NCPoly.word((j, i), 1, 1)
    return comm - sym.scale(HSeries.h(1, 1, 1))


@dataclass
class DeltaSquaredReport:
    checked: list[Gen] = field(default_factory=list)
    failures: dict[Gen, NCPoly] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "checked": len(self.checked),
            "ok": self.ok,
            "failures": {"x_{" + "".join(str(i + 1) for i in I) + "}": str(v)
                         for I, v in self.failures.items()},
        }


def check_delta_squared(delta: DualDifferential, max_weight: int) -> DeltaSquaredReport:
    report = DeltaSquaredReport()
    for I in generators(delta.dim, max_weight):
        report.checked.append(I)
        sq = delta(delta(gen_element(I, delta.trunc)))
        if not sq.is_zero():
            report.failures[I] = sq
    return report


# -- cohomology -------------------------------------------------------------

def words_of(dim: int, degree: int, weight: int) -> list[tuple[Gen, ...]]:
    """Words of generators with the given total degree and weight."""
    length = weight + degree
    if length < 0:
        return []
    gens = generators(dim)
    out = []

    def rec(prefix: list[Gen], left: int, slots: int):
        if slots == 0:
            if left == 0:
                out.append(tuple(prefix))
            return
        for I in gens:
            need = left - len(I)
            if need >= slots - 1:
                prefix.append(I)
                rec(prefix, need, slots - 1)
                prefix.pop()

    rec([], weight, length)
    return out


@dataclass
class CohomologyCell:
    degree: int
    weight: int
    chain_dim: int
    rank_out: int
    rank_in: int

    @property
    def h_dim(self) -> int:
        return self.chain_dim - self.rank_out - self.rank_in

    def to_json(self) -> dict:
        return {"degree": self.degree, "weight": self.weight, "chain_dim": self.chain_dim,
                "rank_out": self.rank_out, "rank_in": self.rank_in, "h_dim": self.h_dim}


def _chain_basis(dim: int, degree: int, weight: int, filtered: bool) -> list[tuple[Gen, ...]]:
    if degree > 0:
        return []
    if not filtered:
        return words_of(dim, degree, weight)
    return [w for v in range(weight + 1) for w in words_of(dim, degree, v)]


def _differential_rank(delta: DualDifferential, basis: list, filtered: bool, weight: int) -> int:
    N = delta.trunc
    rows = []
    for w in basis:
        img = delta(NCPoly.word(w, 1, N))
        for v in img:
            if (word_weight(v) > weight) if filtered else (word_weight(v) != word_weight(w)):
                raise ValueError("differential does not respect the weight filtration")
        for p in range(N + 1):
            row = {}
            for v, c in img.items():
                for q in range(N + 1 - p):
                    if c[q]:
                        row[(v, p + q)] = c[q]
            rows.append(row)
    return rank(rows)


def cohomology_ranks(delta: DualDifferential, degrees: Iterable[int], max_weight: int,
                     filtered: bool | None = None) -> list[CohomologyCell]:
    """Ranks and cohomology dimensions over Q, flattening each series into N+1 coordinates.

    For delta_0 the pieces are graded by exact weight; for a deformed
    differential, which may lower weight, the piece of weight w is the
    span of all words of weight <= w.
    """
    if filtered is None:
        filtered = delta.inst is not None
    N = delta.trunc
    cells = []
    for w in range(max_weight + 1):
        for k in degrees:
            basis = _chain_basis(delta.dim, k, w, filtered)
            prev = _chain_basis(delta.dim, k - 1, w, filtered)
            size = (len(basis) + len(prev)) * (N + 1)
            if size > COHOMOLOGY_BUDGET:
                raise ValueError(
                    f"degree {k}, weight {w}: {size} flattened basis vectors exceed the bound {COHOMOLOGY_BUDGET}"
                )
            r_out = _differential_rank(delta, basis, filtered, w) if k < 0 else 0
            r_in = _differential_rank(delta, prev, filtered, w) if prev else 0
            cells.append(CohomologyCell(k, w, len(basis) * (N + 1), r_out, r_in))
    return cells


def symmetric_dimension(dim: int, weight: int) -> int:
    return comb(weight + dim - 1, weight)
