"""Rewriting presentation of T(V)[h]/I by oriented relations.

Words are tuples of 0-based letter indices ordered deglex with
x1 < x2 < ... (length first, then lexicographic).  A rule ``lhs -> rhs``
replaces an occurrence of the word ``lhs`` by the polynomial ``rhs``,
every word of which is smaller than ``lhs``.

Coefficients live in Q[h]/h^(N+1), so a relation can only be oriented
when its leading coefficient is a unit.  Completion resolves overlap
ambiguities up to the degree bound; an ambiguity whose remainder has a
non-unit leading coefficient cannot be oriented and leaves the system
``nonconfluent`` with that overlap as witness.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence

from .algebra import NCPoly, add_term
from .series import HSeries, series_from_json, series_to_json

Word = tuple[int, ...]

DEFAULT_DEGREE_BOUND = 8
RULE_BUDGET = 200


class DegreeOverflow(ValueError):
    """A word exceeds the certified degree bound of the system."""


class OrientationError(ValueError):
    """A relation's leading coefficient is not invertible in Q[h]/h^(N+1)."""


class CompletionBudgetExceeded(RuntimeError):
    pass


def word_key(w: Word):
    return (len(w), w)


def leading_word(p: NCPoly) -> Word:
    if p.is_zero():
        raise ValueError("the zero polynomial has no leading word")
    return max(p.terms, key=word_key)


@dataclass(frozen=True)
class RewriteRule:
    lhs: Word
    rhs: NCPoly

    def __post_init__(self):
        for w in self.rhs:
            if word_key(w) >= word_key(self.lhs):
                raise ValueError(f"rule {self.lhs} -> {w}... is not decreasing")

    def as_relation(self) -> NCPoly:
        return NCPoly.word(self.lhs, 1, self.rhs.trunc) - self.rhs

    def to_json(self) -> dict:
        return {
            "lhs": [i + 1 for i in self.lhs],
            "rhs": [[[i + 1 for i in w], series_to_json(c)]
                    for w, c in sorted(self.rhs.items(), key=lambda wc: word_key(wc[0]))],
        }

    @classmethod
    def from_json(cls, data: dict, trunc: int) -> "RewriteRule":
        rhs = {tuple(i - 1 for i in w): series_from_json(c) for w, c in data["rhs"]}
        return cls(tuple(i - 1 for i in data["lhs"]), NCPoly(rhs, trunc))


def orient(rel: NCPoly) -> RewriteRule:
    lw = leading_word(rel)
    c = rel.coeff(lw)
    if not c.is_unit():
        raise OrientationError(f"leading coefficient {c} of word {tuple(i + 1 for i in lw)} is not a unit")
    rest = rel - NCPoly.word(lw, c, rel.trunc)
    return RewriteRule(lw, rest.scale(-c.inverse()))


@dataclass
class Witness:
    word: Word
    remainder: NCPoly
    rules: tuple[int, int]

    def to_json(self) -> dict:
        return {"word": [i + 1 for i in self.word], "rules": list(self.rules),
                "remainder": str(self.remainder)}


class RewriteSystem:
    def __init__(self, rules: Iterable[RewriteRule], dim: int, trunc: int,
                 degree_bound: int = DEFAULT_DEGREE_BOUND, status: str = "raw"):
        self.rules: list[RewriteRule] = list(rules)
        self.dim = dim
        self.trunc = trunc
        self.degree_bound = degree_bound
        self.status = status
        self.witness: Witness | None = None
        self.added_rules: list[RewriteRule] = []
        self._reset_cache()

    def _reset_cache(self) -> None:
        self._by_lhs = {r.lhs: r for r in self.rules}
        self._lhs_lengths = sorted({len(r.lhs) for r in self.rules})
        self._append_memo: dict[tuple[Word, int], dict[Word, HSeries]] = {}
        self._word_memo: dict[Word, dict[Word, HSeries]] = {(): {(): HSeries.one(self.trunc)}}

    def copy(self) -> "RewriteSystem":
        out = RewriteSystem(self.rules, self.dim, self.trunc, self.degree_bound, self.status)
        out.witness = self.witness
        out.added_rules = list(self.added_rules)
        return out

    # -- matching -----------------------------------------------------------
    def suffix_rule(self, w: Word) -> RewriteRule | None:
        for n in self._lhs_lengths:
            if n <= len(w):
                r = self._by_lhs.get(w[len(w) - n:])
                if r is not None:
                    return r
        return None

    def redexes(self, w: Word) -> list[tuple[int, RewriteRule]]:
        out = []
        for p in range(len(w)):
            for n in self._lhs_lengths:
                r = self._by_lhs.get(w[p:p + n]) if p + n <= len(w) else None
                if r is not None:
                    out.append((p, r))
        return out

    def is_irreducible(self, w: Word) -> bool:
        return not self.redexes(w)

    # -- normal forms ---------------------------------------------------------
    def _check_degree(self, w: Word) -> None:
        if len(w) > self.degree_bound:
            raise DegreeOverflow(f"word of degree {len(w)} exceeds the degree bound {self.degree_bound}")

    def _append(self, u: Word, a: int) -> dict[Word, HSeries]:
        """Normal form of u*a for an irreducible word u."""
        key = (u, a)
        hit = self._append_memo.get(key)
        if hit is not None:
            return hit
        w = u + (a,)
        r = self.suffix_rule(w)
        if r is None:
            out = {w: HSeries.one(self.trunc)}
        else:
            pre = w[:len(w) - len(r.lhs)]
            out = {}
            for v, c in r.rhs.items():
                for z, cz in self._extend({pre: HSeries.one(self.trunc)}, v).items():
                    add_term(out, z, c * cz)
        self._append_memo[key] = out
        return out

    def _extend(self, nf: dict[Word, HSeries], letters: Sequence[int]) -> dict[Word, HSeries]:
        cur = nf
        for a in letters:
            nxt: dict = {}
            for u, c in cur.items():
                for z, cz in self._append(u, a).items():
                    add_term(nxt, z, c * cz)
            cur = nxt
        return cur

    def normal_form_word(self, w: Word) -> dict[Word, HSeries]:
        w = tuple(w)
        hit = self._word_memo.get(w)
        if hit is None:
            self._check_degree(w)
            hit = self._extend(self.normal_form_word(w[:-1]), w[-1:])
            self._word_memo[w] = hit
        return hit

    def normal_form(self, t: NCPoly) -> NCPoly:
        if t.trunc != self.trunc:
            raise ValueError(f"truncation mismatch: {t.trunc} vs {self.trunc}")
        acc: dict = {}
        for w, c in t.items():
            for z, cz in self.normal_form_word(w).items():
                add_term(acc, z, c * cz)
        return NCPoly(acc, self.trunc)

    def reduce_random(self, t: NCPoly, rng: random.Random) -> NCPoly:
        """Rewrite to an irreducible form, picking a random redex each step."""
        cur = dict(t.terms)
        while True:
            reducible = [w for w in sorted(cur, key=word_key) if self.redexes(w)]
            if not reducible:
                return NCPoly(cur, self.trunc)
            w = rng.choice(reducible)
            self._check_degree(w)
            p, r = rng.choice(self.redexes(w))
            c = cur.pop(w)
            for v, cv in r.rhs.items():
                add_term(cur, w[:p] + v + w[p + len(r.lhs):], c * cv)

    # -- completion -------------------------------------------------------------
    def overlaps(self) -> list[tuple[Word, int, int, int]]:
        """Ambiguities (word, i, j, offset): rule i at 0 and rule j at ``offset``."""
        out = []
        for i, r1 in enumerate(self.rules):
            a = r1.lhs
            for j, r2 in enumerate(self.rules):
                b = r2.lhs
                for k in range(1, min(len(a), len(b))):
                    if a[len(a) - k:] == b[:k]:
                        w = a + b[k:]
                        if len(w) <= self.degree_bound:
                            out.append((w, i, j, len(a) - k))
                if i != j and len(b) < len(a):
                    for p in range(len(a) - len(b) + 1):
                        if a[p:p + len(b)] == b:
                            out.append((a, i, j, p))
        out.sort(key=lambda o: (word_key(o[0]), o[1], o[2], o[3]))
        return out

    def _apply_at(self, w: Word, rule: RewriteRule, p: int) -> NCPoly:
        acc: dict = {}
        for v, c in rule.rhs.items():
            add_term(acc, w[:p] + v + w[p + len(rule.lhs):], c)
        return NCPoly(acc, self.trunc)

    def ambiguity_remainder(self, w: Word, i: int, j: int, offset: int) -> NCPoly:
        one = self._apply_at(w, self.rules[i], 0)
        two = self._apply_at(w, self.rules[j], offset)
        return self.normal_form(one - two)

    def complete(self, budget: int = RULE_BUDGET) -> "RewriteSystem":
        out = self.copy()
        out.status = "raw"
        out.witness = None
        done: set = set()
        while True:
            pending = [o for o in out.overlaps() if o not in done]
            if not pending:
                out.status = "completed"
                return out
            progress = False
            for o in pending:
                done.add(o)
                rem = out.ambiguity_remainder(*o)
                if rem.is_zero():
                    continue
                try:
                    rule = orient(rem)
                except OrientationError:
                    out.status = "nonconfluent"
                    out.witness = Witness(o[0], rem, (o[1], o[2]))
                    return out
                if len(out.rules) >= budget:
                    raise CompletionBudgetExceeded(
                        f"completion exceeded {budget} rules; last ambiguity at word "
                        f"{tuple(x + 1 for x in o[0])}"
                    )
                out.rules.append(rule)
                out.added_rules.append(rule)
                out._reset_cache()
                progress = True
                break
            if not progress:
                out.status = "completed"
                return out

    # -- Hilbert data -----------------------------------------------------------
    def irreducible_words(self, n: int) -> list[Word]:
        level: list[Word] = [()]
        for _ in range(n):
            level = [u + (a,) for u in level for a in range(self.dim)
                     if self.suffix_rule(u + (a,)) is None]
        return level

    def hilbert(self, max_degree: int | None = None) -> list[int]:
        top = self.degree_bound if max_degree is None else max_degree
        counts = []
        level: list[Word] = [()]
        for n in range(top + 1):
            if n:
                level = [u + (a,) for u in level for a in range(self.dim)
                         if self.suffix_rule(u + (a,)) is None]
            counts.append(len(level))
        return counts

    # -- serialization ----------------------------------------------------------
    def to_json(self) -> dict:
        out = {
            "dim": self.dim,
            "trunc": self.trunc,
            "degree_bound": self.degree_bound,
            "status": self.status,
            "rules": [r.to_json() for r in self.rules],
        }
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        return out

    @classmethod
    def from_json(cls, data: dict) -> "RewriteSystem":
        trunc = data["trunc"]
        rules = [RewriteRule.from_json(r, trunc) for r in data["rules"]]
        return cls(rules, data["dim"], trunc, data.get("degree_bound", DEFAULT_DEGREE_BOUND),
                   data.get("status", "raw"))

    def with_rule(self, index: int, rule: RewriteRule) -> "RewriteSystem":
        rules = list(self.rules)
        rules[index] = rule
        return RewriteSystem(rules, self.dim, self.trunc, self.degree_bound, self.status)


def build_system(relations: Iterable[NCPoly], dim: int,
                 degree_bound: int = DEFAULT_DEGREE_BOUND) -> RewriteSystem:
    rels = [r for r in relations if not r.is_zero()]
    if not rels:
        raise ValueError("no relations given")
    trunc = rels[0].trunc
    rules = []
    seen = set()
    for rel in rels:
        rule = orient(rel)
        if rule.lhs in seen:
            raise ValueError(f"two relations share the leading word {tuple(i + 1 for i in rule.lhs)}")
        seen.add(rule.lhs)
        rules.append(rule)
    return RewriteSystem(rules, dim, trunc, degree_bound)


def symmetric_counts(dim: int, max_degree: int) -> list[int]:
    return [comb(n + dim - 1, n) for n in range(max_degree + 1)]
