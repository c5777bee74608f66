"""S(V), T(V) and the exterior algebra over the truncated series ring.

All three types are finite maps from a basis (exponent vectors, words,
sorted index tuples) to :class:`HSeries`, with zero coefficients pruned
so that equality is structural.  Generators are indexed from 0; they
are displayed as x1..xd.
"""

from __future__ import annotations

import itertools
from collections import Counter
from math import factorial
from numbers import Rational
from typing import Callable, Hashable, Iterable, Iterator, Mapping

from .series import DEFAULT_TRUNC, HSeries, TruncationMismatch, series_from

Word = tuple
Monomial = tuple[int, ...]


def add_term(acc: dict, key, coeff: HSeries) -> None:
    """acc[key] += coeff, dropping the key if the result vanishes."""
    cur = acc.get(key)
    new = coeff if cur is None else cur + coeff
    if new.is_zero():
        acc.pop(key, None)
    else:
        acc[key] = new


class _Combination:
    """Shared machinery for finite linear combinations with series coefficients."""

    __slots__ = ("trunc", "terms")

    def __init__(self, terms: Mapping | None = None, trunc: int = DEFAULT_TRUNC):
        self.trunc = trunc
        clean: dict = {}
        for k, c in (terms or {}).items():
            c = series_from(c, trunc)
            if not c.is_zero():
                clean[self._check_key(k)] = c
        self.terms = clean

    def _check_key(self, key):
        return key

    def _new(self, terms: dict):
        out = object.__new__(type(self))
        out.trunc = self.trunc
        out.terms = terms
        self._copy_meta(out)
        return out

    def _copy_meta(self, out) -> None:
        pass

    def _same_space(self, other) -> None:
        if other.trunc != self.trunc:
            raise TruncationMismatch(f"truncation {self.trunc} vs {other.trunc}")

    def is_zero(self) -> bool:
        return not self.terms

    def items(self):
        return self.terms.items()

    def coeff(self, key) -> HSeries:
        return self.terms.get(key, HSeries.zero(self.trunc))

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator:
        return iter(self.terms)

    def __add__(self, other):
        if isinstance(other, type(self)):
            self._same_space(other)
            acc = dict(self.terms)
            for k, c in other.terms.items():
                add_term(acc, k, c)
            return self._new(acc)
        if isinstance(other, (int, Rational, HSeries)):
            return self + self.scalar(other)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return self._new({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (type(self), int, Rational, HSeries)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "_Combination":
        c = series_from(c, self.trunc) if not isinstance(c, (int, Rational)) else c
        acc = {}
        for k, v in self.terms.items():
            w = v * c
            if not w.is_zero():
                acc[k] = w
        return self._new(acc)

    def map_coeffs(self, fn: Callable[[HSeries], HSeries]):
        acc = {}
        for k, v in self.terms.items():
            w = fn(v)
            if not w.is_zero():
                acc[k] = w
        return self._new(acc)

    def at_h0(self):
        """Set h = 0 coefficientwise."""
        return self.map_coeffs(lambda s: HSeries.const(s.coeffs[0], s.trunc))

    def h_coefficient(self, k: int):
        """The coefficient of h^k, as an h-free combination."""
        return self.map_coeffs(lambda s: HSeries.const(s[k], s.trunc))

    def retrunc(self, trunc: int):
        out = self._new({})
        out.trunc = trunc
        for k, v in self.terms.items():
            w = v.retrunc(trunc)
            if not w.is_zero():
                out.terms[k] = w
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, type(self)):
            return self.terms == other.terms and self._meta_key() == other._meta_key()
        if isinstance(other, (int, Rational)):
            return self == self.scalar(other)
        return NotImplemented

    def _meta_key(self):
        return self.trunc

    def __hash__(self) -> int:
        return hash((self._meta_key(), frozenset(self.terms.items())))


class SymPoly(_Combination):
    """A polynomial in commuting generators x_0..x_{d-1} (an element of S(V))."""

    __slots__ = ("dim",)

    def __init__(self, dim: int, terms: Mapping | None = None, trunc: int = DEFAULT_TRUNC):
        self.dim = dim
        super().__init__(terms, trunc)

    def _check_key(self, key):
        key = tuple(int(e) for e in key)
        if len(key) != self.dim or any(e < 0 for e in key):
            raise ValueError(f"bad exponent vector {key} for dimension {self.dim}")
        return key

    def _copy_meta(self, out) -> None:
        out.dim = self.dim

    def _meta_key(self):
        return (self.trunc, self.dim)

    def _same_space(self, other) -> None:
        super()._same_space(other)
        if other.dim != self.dim:
            raise ValueError(f"dimension {self.dim} vs {other.dim}")

    @classmethod
    def gen(cls, i: int, dim: int, trunc: int = DEFAULT_TRUNC) -> "SymPoly":
        e = [0] * dim
        e[i] = 1
        return cls(dim, {tuple(e): HSeries.one(trunc)}, trunc)

    @classmethod
    def const(cls, c, dim: int, trunc: int = DEFAULT_TRUNC) -> "SymPoly":
        return cls(dim, {(0,) * dim: series_from(c, trunc)}, trunc)

    @classmethod
    def monomial(cls, exps: Iterable[int], coeff=1, trunc: int = DEFAULT_TRUNC) -> "SymPoly":
        exps = tuple(exps)
        return cls(len(exps), {exps: series_from(coeff, trunc)}, trunc)

    def scalar(self, c) -> "SymPoly":
        return SymPoly.const(c, self.dim, self.trunc)

    def __mul__(self, other):
        if isinstance(other, (int, Rational, HSeries)):
            return self.scale(other)
        if not isinstance(other, SymPoly):
            return NotImplemented
        self._same_space(other)
        acc: dict = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                add_term(acc, tuple(x + y for x, y in zip(a, b)), ca * cb)
        return self._new(acc)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "SymPoly":
        out = self.scalar(1)
        for _ in range(k):
            out = out * self
        return out

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def low_degree(self) -> int:
        return min((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self, k: int | None = None) -> bool:
        degs = {sum(m) for m in self.terms}
        if k is None:
            return len(degs) <= 1
        return degs <= {k}

    def homogeneous_part(self, k: int) -> "SymPoly":
        return self._new({m: c for m, c in self.terms.items() if sum(m) == k})

    def is_h_free(self) -> bool:
        return all(c.is_constant() for c in self.terms.values())

    def diff(self, i: int) -> "SymPoly":
        acc = {}
        for m, c in self.terms.items():
            if m[i]:
                n = list(m)
                n[i] -= 1
                acc[tuple(n)] = c * m[i]
        return self._new(acc)

    def diff_multi(self, beta: Monomial) -> "SymPoly":
        out = self
        for i, b in enumerate(beta):
            for _ in range(b):
                out = out.diff(i)
        return out

    def __str__(self) -> str:
        from .expr import format_sympoly

        return format_sympoly(self)

    def __repr__(self) -> str:
        return f"SymPoly({self})"


class NCPoly(_Combination):
    """An element of a free associative algebra: a combination of words.

    Letters are any totally ordered hashables; T(V) uses ints, the cobar
    algebra uses sorted index tuples.
    """

    __slots__ = ()

    def _check_key(self, key):
        return tuple(key)

    @classmethod
    def word(cls, w: Iterable[Hashable], coeff=1, trunc: int = DEFAULT_TRUNC) -> "NCPoly":
        return cls({tuple(w): series_from(coeff, trunc)}, trunc)

    @classmethod
    def const(cls, c, trunc: int = DEFAULT_TRUNC) -> "NCPoly":
        return cls({(): series_from(c, trunc)}, trunc)

    def scalar(self, c) -> "NCPoly":
        return NCPoly.const(c, self.trunc)

    def __mul__(self, other):
        if isinstance(other, (int, Rational, HSeries)):
            return self.scale(other)
        if not isinstance(other, NCPoly):
            return NotImplemented
        self._same_space(other)
        acc: dict = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                add_term(acc, a + b, ca * cb)
        return self._new(acc)

    def __rmul__(self, other):
        if isinstance(other, (int, Rational, HSeries)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int) -> "NCPoly":
        out = self.scalar(1)
        for _ in range(k):
            out = out * self
        return out

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=-1)

    def letters(self) -> set:
        return {x for w in self.terms for x in w}

    def __str__(self) -> str:
        from .expr import format_ncpoly

        return format_ncpoly(self)

    def __repr__(self) -> str:
        return f"NCPoly({self})"


def shuffle_sign(a: tuple[int, ...], b: tuple[int, ...]) -> int:
    """Sign of the permutation sorting the concatenation a+b (0 if they meet)."""
    if set(a) & set(b):
        return 0
    inversions = sum(1 for x in a for y in b if x > y)
    return -1 if inversions % 2 else 1


class ExtElement(_Combination):
    """An element of the exterior algebra on d generators e_0..e_{d-1}.

    Keys are strictly increasing index tuples; e_I has degree |I|.
    """

    __slots__ = ("dim",)

    def __init__(self, dim: int, terms: Mapping | None = None, trunc: int = DEFAULT_TRUNC):
        self.dim = dim
        super().__init__(terms, trunc)

    def _check_key(self, key):
        key = tuple(int(i) for i in key)
        if list(key) != sorted(set(key)) or any(not 0 <= i < self.dim for i in key):
            raise ValueError(f"{key} is not a sorted index subset of range({self.dim})")
        return key

    def _copy_meta(self, out) -> None:
        out.dim = self.dim

    def _meta_key(self):
        return (self.trunc, self.dim)

    def _same_space(self, other) -> None:
        super()._same_space(other)
        if other.dim != self.dim:
            raise ValueError(f"dimension {self.dim} vs {other.dim}")

    @classmethod
    def basis_element(cls, I: Iterable[int], dim: int, coeff=1, trunc: int = DEFAULT_TRUNC) -> "ExtElement":
        return cls(dim, {tuple(I): series_from(coeff, trunc)}, trunc)

    @classmethod
    def unit(cls, dim: int, trunc: int = DEFAULT_TRUNC) -> "ExtElement":
        return cls.basis_element((), dim, 1, trunc)

    def scalar(self, c) -> "ExtElement":
        return ExtElement(self.dim, {(): series_from(c, self.trunc)}, self.trunc)

    def wedge(self, other: "ExtElement") -> "ExtElement":
        self._same_space(other)
        acc: dict = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                s = shuffle_sign(a, b)
                if s:
                    add_term(acc, tuple(sorted(a + b)), ca * cb * s)
        return self._new(acc)

    def __mul__(self, other):
        if isinstance(other, (int, Rational, HSeries)):
            return self.scale(other)
        if isinstance(other, ExtElement):
            return self.wedge(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Rational, HSeries)):
            return self.scale(other)
        return NotImplemented

    def degrees(self) -> set[int]:
        return {len(k) for k in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def __str__(self) -> str:
        from .expr import format_ext

        return format_ext(self)

    def __repr__(self) -> str:
        return f"ExtElement({self})"


def ext_basis(dim: int, include_unit: bool = True) -> list[tuple[int, ...]]:
    """All sorted index subsets, ordered by size then lexicographically."""
    start = 0 if include_unit else 1
    return [c for k in range(start, dim + 1) for c in itertools.combinations(range(dim), k)]


def multiset_permutations(letters: Iterable[int]) -> Iterator[tuple[int, ...]]:
    """Distinct orderings of a multiset, in lexicographic order."""
    pool = sorted(letters)
    n = len(pool)
    if n == 0:
        yield ()
        return
    counts = Counter(pool)
    keys = sorted(counts)

    def rec(prefix: list[int]):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for k in keys:
            if counts[k]:
                counts[k] -= 1
                prefix.append(k)
                yield from rec(prefix)
                prefix.pop()
                counts[k] += 1

    yield from rec([])


def monomial_word(exps: Monomial) -> tuple[int, ...]:
    """The sorted word x_0^a0 x_1^a1 ... of an exponent vector."""
    return tuple(i for i, e in enumerate(exps) for _ in range(e))


def word_monomial(word: Iterable[int], dim: int) -> Monomial:
    e = [0] * dim
    for x in word:
        e[x] += 1
    return tuple(e)


def symmetrize(f: SymPoly) -> NCPoly:
    """S(V) -> T(V): each monomial goes to the average of its orderings."""
    acc: dict = {}
    for m, c in f.terms.items():
        perms = list(multiset_permutations(monomial_word(m)))
        w = c / len(perms)
        for p in perms:
            add_term(acc, p, w)
    return NCPoly(acc, f.trunc)


def abelianize(t: NCPoly, dim: int) -> SymPoly:
    """T(V) -> S(V), the ring morphism letting generators commute."""
    acc: dict = {}
    for w, c in t.terms.items():
        add_term(acc, word_monomial(w, dim), c)
    return SymPoly(dim, acc, t.trunc)


def monomials_of_degree(dim: int, k: int) -> list[Monomial]:
    """Exponent vectors of total degree k, in descending lex order."""
    out = []

    def rec(i: int, left: int, cur: list[int]):
        if i == dim - 1:
            out.append(tuple(cur + [left]))
            return
        for e in range(left, -1, -1):
            rec(i + 1, left - e, cur + [e])

    if dim == 0:
        return [()] if k == 0 else []
    rec(0, k, [])
    return out


def multinomial_count(exps: Monomial) -> int:
    n = factorial(sum(exps))
    for e in exps:
        n //= factorial(e)
    return n


def random_sympoly(rng, dim: int, max_degree: int, trunc: int, n_terms: int = 3,
                   coeff_range: int = 3, h_terms: bool = False) -> SymPoly:
    """A random polynomial with small integer (optionally h-dependent) coefficients."""
    acc: dict = {}
    for _ in range(n_terms):
        deg = rng.randint(0, max_degree)
        exps = [0] * dim
        for _ in range(deg):
            exps[rng.randrange(dim)] += 1
        if h_terms:
            coeffs = [rng.randint(-coeff_range, coeff_range) for _ in range(trunc + 1)]
        else:
            coeffs = [rng.randint(-coeff_range, coeff_range)]
        add_term(acc, tuple(exps), HSeries(coeffs, trunc))
    return SymPoly(dim, acc, trunc)
