"""Polynomial Poisson bivectors: brackets, Jacobi defects, classification.

The stored matrix ``entries[i][j]`` is the one appearing in the commutator
relation ``x_i * x_j - x_j * x_i = h * entries[i][j]``.  Two pairings are
derived from it:

* :func:`bivector_action` -- ``P(f, g) = sum_{i<j} pi_ij (d_i f d_j g - d_j f d_i g)``,
  the calibrated operator used by every star product, so ``P(x_i, x_j) = pi_ij``;
* :func:`poisson_bracket` -- the ordered-pair wedge convention
  ``sum_{i,j} pi_ij (d_i f d_j g - d_j f d_i g) = 2 P(f, g)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .algebra import SymPoly
from .series import DEFAULT_TRUNC

KINDS = ("constant", "linear", "quadratic", "general")
_KIND_DEGREE = {"constant": 0, "linear": 1, "quadratic": 2}


class NotPoissonError(ValueError):
    """The bivector violates the Jacobi identity."""


@dataclass(frozen=True, eq=False)
class PoissonBivector:
    dim: int
    entries: tuple[tuple[SymPoly, ...], ...]
    kind: str = field(default="")
    trunc: int = DEFAULT_TRUNC

    def __post_init__(self):
        d = self.dim
        if len(self.entries) != d or any(len(row) != d for row in self.entries):
            raise ValueError(f"expected a {d}x{d} matrix of polynomials")
        for i in range(d):
            if not self.entries[i][i].is_zero():
                raise ValueError(f"diagonal entry pi[{i}][{i}] must vanish")
            for j in range(d):
                e = self.entries[i][j]
                if e.dim != d or e.trunc != self.trunc:
                    raise ValueError("entries must live in S(V) of the same dimension and truncation")
                if not e.is_h_free():
                    raise ValueError("entries must not depend on h")
                if e != -self.entries[j][i]:
                    raise ValueError(f"pi is not antisymmetric at ({i}, {j})")
        inferred = self._infer_kind()
        if not self.kind:
            object.__setattr__(self, "kind", inferred)
        elif self.kind not in KINDS:
            raise ValueError(f"unknown class {self.kind!r}")
        elif self.kind != "general" and not self.fits(self.kind):
            raise ValueError(f"entries are not homogeneous of the degree required by {self.kind!r}")

    # -- construction -------------------------------------------------
    @classmethod
    def from_entries(cls, dim: int, upper: Mapping[tuple[int, int], SymPoly],
                     kind: str = "", trunc: int = DEFAULT_TRUNC) -> "PoissonBivector":
        """Build from the entries pi_ij with i < j (the rest by antisymmetry)."""
        zero = SymPoly(dim, trunc=trunc)
        m = [[zero for _ in range(dim)] for _ in range(dim)]
        for (i, j), p in upper.items():
            if i == j:
                raise ValueError("diagonal entries are forced to vanish")
            if i > j:
                i, j, p = j, i, -p
            m[i][j] = p
            m[j][i] = -p
        return cls(dim, tuple(tuple(r) for r in m), kind, trunc)

    @classmethod
    def constant(cls, matrix: Sequence[Sequence], trunc: int = DEFAULT_TRUNC) -> "PoissonBivector":
        d = len(matrix)
        upper = {(i, j): SymPoly.const(Fraction(matrix[i][j]), d, trunc)
                 for i in range(d) for j in range(i + 1, d)}
        for i in range(d):
            for j in range(d):
                if Fraction(matrix[i][j]) != -Fraction(matrix[j][i]):
                    raise ValueError(f"matrix is not antisymmetric at ({i}, {j})")
        return cls.from_entries(d, upper, trunc=trunc)

    @classmethod
    def from_structure_constants(cls, dim: int, f: Mapping[tuple[int, int, int], object],
                                 trunc: int = DEFAULT_TRUNC) -> "PoissonBivector":
        """Linear bivector pi_ij = sum_k f_ij^k x_k from constants keyed (i, j, k).

        Keys may use either order of (i, j); the antisymmetric partner is implied.
        """
        upper: dict[tuple[int, int], SymPoly] = {}
        for (i, j, k), c in f.items():
            c = Fraction(c)
            if i > j:
                i, j, c = j, i, -c
            term = SymPoly.gen(k, dim, trunc) * c
            upper[(i, j)] = upper.get((i, j), SymPoly(dim, trunc=trunc)) + term
        return cls.from_entries(dim, upper, trunc=trunc)

    # -- queries ------------------------------------------------------
    def __getitem__(self, ij: tuple[int, int]) -> SymPoly:
        i, j = ij
        return self.entries[i][j]

    def _infer_kind(self) -> str:
        degs = set()
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                e = self.entries[i][j]
                if e.is_zero():
                    continue
                if not e.is_homogeneous():
                    return "general"
                degs.add(e.degree())
        if not degs:
            return "constant"
        if len(degs) == 1:
            (k,) = degs
            for name, deg in _KIND_DEGREE.items():
                if deg == k:
                    return name
        return "general"

    def fits(self, kind: str) -> bool:
        """Whether every nonzero entry is homogeneous of the degree of ``kind``."""
        if kind == "general":
            return True
        deg = _KIND_DEGREE[kind]
        return all(self.entries[i][j].is_homogeneous(deg)
                   for i in range(self.dim) for j in range(self.dim))

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.entries for e in row)

    def retrunc(self, trunc: int) -> "PoissonBivector":
        rows = tuple(tuple(e.retrunc(trunc) for e in row) for row in self.entries)
        return PoissonBivector(self.dim, rows, self.kind, trunc)

    def constant_matrix(self) -> list[list[Fraction]]:
        if not self.fits("constant"):
            raise ValueError("bivector is not constant")
        z = (0,) * self.dim
        return [[self.entries[i][j].coeff(z)[0] for j in range(self.dim)] for i in range(self.dim)]

    def structure_constants(self) -> dict[tuple[int, int, int], Fraction]:
        """f_ij^k for all ordered (i, j) with nonzero value (linear bivectors only)."""
        if not self.fits("linear"):
            raise ValueError("bivector is not linear")
        out = {}
        for i in range(self.dim):
            for j in range(self.dim):
                for m, c in self.entries[i][j].items():
                    k = m.index(1)
                    out[(i, j, k)] = c[0]
        return out

    def jacobi_defects(self) -> dict[tuple[int, int, int], SymPoly]:
        """All nonzero defects over i < j < k."""
        out = {}
        for i, j, k in itertools.combinations(range(self.dim), 3):
            dfx = jacobi_defect(self, i, j, k)
            if not dfx.is_zero():
                out[(i, j, k)] = dfx
        return out

    def is_poisson(self) -> bool:
        return not self.jacobi_defects()

    def require_poisson(self) -> None:
        bad = self.jacobi_defects()
        if bad:
            (ijk, dfx), *_ = bad.items()
            raise NotPoissonError(
                f"Jacobi identity fails at {tuple(i + 1 for i in ijk)}: defect {dfx}"
            )

    def _key(self):
        return (self.dim, self.trunc, self.kind, self.entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PoissonBivector):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())


def bivector_action(pi: PoissonBivector, f: SymPoly, g: SymPoly) -> SymPoly:
    """P(f, g) = sum_{i,j} pi_ij d_i f d_j g; P(x_i, x_j) = pi_ij."""
    out = SymPoly(f.dim, trunc=f.trunc)
    df = [f.diff(i) for i in range(pi.dim)]
    dg = [g.diff(j) for j in range(pi.dim)]
    for i in range(pi.dim):
        if df[i].is_zero():
            continue
        for j in range(pi.dim):
            p = pi.entries[i][j]
            if p.is_zero() or dg[j].is_zero():
                continue
            out = out + p * df[i] * dg[j]
    return out


def poisson_bracket(pi: PoissonBivector, f: SymPoly, g: SymPoly) -> SymPoly:
    """{f, g} with pi read as sum_{i,j} pi_ij d_i ^ d_j, i.e. 2 P(f, g)."""
    return bivector_action(pi, f, g) * 2


def jacobi_defect(pi: PoissonBivector, i: int, j: int, k: int) -> SymPoly:
    """sum_l (pi_il d_l pi_jk + pi_jl d_l pi_ki + pi_kl d_l pi_ij)."""
    e = pi.entries
    out = SymPoly(pi.dim, trunc=pi.trunc)
    for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
        for l in range(pi.dim):
            if e[a][l].is_zero():
                continue
            out = out + e[a][l] * e[b][c].diff(l)
    return out


# -- shipped examples ---------------------------------------------------

def weyl(dim: int = 2, trunc: int = DEFAULT_TRUNC) -> PoissonBivector:
    """Standard symplectic constant bivector: pi[i][i + d/2] = 1."""
    if dim % 2:
        raise ValueError("the standard symplectic form needs an even dimension")
    n = dim // 2
    m = [[0] * dim for _ in range(dim)]
    for i in range(n):
        m[i][i + n] = 1
        m[i + n][i] = -1
    return PoissonBivector.constant(m, trunc)


def heisenberg(trunc: int = DEFAULT_TRUNC) -> PoissonBivector:
    """[x1, x2] = x3."""
    return PoissonBivector.from_structure_constants(3, {(0, 1, 2): 1}, trunc)


def sl2(trunc: int = DEFAULT_TRUNC) -> PoissonBivector:
    """Cyclic basis [x1, x2] = x3, [x2, x3] = x1, [x3, x1] = x2."""
    return PoissonBivector.from_structure_constants(
        3, {(0, 1, 2): 1, (1, 2, 0): 1, (2, 0, 1): 1}, trunc
    )


def solvable2(trunc: int = DEFAULT_TRUNC) -> PoissonBivector:
    """The non-abelian 2-dimensional Lie algebra [x1, x2] = x1."""
    return PoissonBivector.from_structure_constants(2, {(0, 1, 0): 1}, trunc)


def abelian(dim: int, trunc: int = DEFAULT_TRUNC) -> PoissonBivector:
    return PoissonBivector.from_entries(dim, {}, kind="linear", trunc=trunc)


def quantum_plane(trunc: int = 1) -> PoissonBivector:
    """pi_12 = x1 x2."""
    return PoissonBivector.from_entries(2, {(0, 1): SymPoly.monomial((1, 1), 1, trunc)}, trunc=trunc)


def broken_jacobi(trunc: int = DEFAULT_TRUNC) -> PoissonBivector:
    """[x1, x2] = x2, [x2, x3] = x1: linear, but the Jacobiator is -x1."""
    return PoissonBivector.from_structure_constants(3, {(0, 1, 1): 1, (1, 2, 0): 1}, trunc)


SHIPPED = {
    "weyl": weyl,
    "heisenberg": heisenberg,
    "sl2": sl2,
    "solvable2": solvable2,
    "quantum_plane": quantum_plane,
}
