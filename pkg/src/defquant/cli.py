"""Command-line front end.

Problem files are JSON::

    {
      "dim": 3,
      "names": ["x1", "x2", "x3"],          (optional)
      "pi": {"1,2": "x3", "2,3": "x1", "3,1": "x2"},
      "class": "linear",                     (optional, inferred)
      "trunc": 4, "degree": 8, "seed": 0,    (optional)
      "taylor_components": {...}             (optional, custom A-infinity data)
    }

Keys of ``pi`` are 1-based index pairs; the partner entry is implied by
antisymmetry.  Exit codes: 0 success, 1 verification failure, 2 usage or
input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from . import verify as V
from .ainfty import (AInftyInstance, TaylorComponents, build_constant_instance, build_linear_instance,
                     check_stasheff, check_unitality, custom_instance)
from .algebra import SymPoly
from .cobar import DualDifferential, cohomology_ranks, quadratic_first_order_relation, relations
from .expr import ParseError, default_names, format_ncpoly, format_relation, format_sympoly, parse_expression, parse_sympoly
from .poisson import NotPoissonError, PoissonBivector
from .rewrite import DEFAULT_DEGREE_BOUND, DegreeOverflow, OrientationError, build_system
from .series import DEFAULT_TRUNC
from .starprod import StarAlgebra

SCHEMA_VERSION = 1

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class Problem:
    dim: int
    names: list[str]
    pi: PoissonBivector
    trunc: int
    degree: int
    seed: int = 0
    components: dict | None = None
    extra: dict = field(default_factory=dict)


def _locate(raw: str, needle: str) -> tuple[int, int]:
    """1-based (line, column) of the first occurrence of a JSON string literal."""
    lit = json.dumps(needle)
    pos = raw.find(lit)
    if pos < 0:
        return 1, 1
    line = raw.count("\n", 0, pos) + 1
    col = pos - (raw.rfind("\n", 0, pos) + 1) + 2
    return line, col


def load_problem(path: str, trunc: int | None = None, degree: int | None = None,
                 seed: int | None = None) -> Problem:
    try:
        with open(path, encoding="utf-8") as fh:
            raw = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}") from None
    return problem_from_data(data, raw, path, trunc, degree, seed)


def problem_from_data(data: dict, raw: str = "", path: str = "<problem>", trunc: int | None = None,
                      degree: int | None = None, seed: int | None = None) -> Problem:
    if not isinstance(data, dict) or "dim" not in data:
        raise UsageError(f"{path}: a problem needs at least a 'dim' field")
    dim = data["dim"]
    if not isinstance(dim, int) or dim < 1:
        raise UsageError(f"{path}: 'dim' must be a positive integer")
    names = data.get("names") or default_names(dim)
    if len(names) != dim or len(set(names)) != dim:
        raise UsageError(f"{path}: expected {dim} distinct generator names")
    N = trunc if trunc is not None else data.get("trunc", DEFAULT_TRUNC)
    D = degree if degree is not None else data.get("degree", DEFAULT_DEGREE_BOUND)
    upper: dict[tuple[int, int], SymPoly] = {}
    for key, text in (data.get("pi") or {}).items():
        try:
            i, j = (int(t) - 1 for t in key.split(","))
        except ValueError:
            raise UsageError(f"{path}: bad index pair {key!r} (expected 'i,j')") from None
        if not (0 <= i < dim and 0 <= j < dim) or i == j:
            raise UsageError(f"{path}: index pair {key!r} out of range for dim {dim}")
        try:
            p = parse_sympoly(str(text), names, N)
        except ParseError as exc:
            line, col = _locate(raw, str(text))
            raise UsageError(f"{path}:{line}:{col + exc.pos}: pi[{key}]: {exc.args[0].split(': ', 1)[1]}") from None
        if not p.is_h_free():
            raise UsageError(f"{path}: pi[{key}] must not depend on h")
        if i > j:
            i, j, p = j, i, -p
        if (i, j) in upper and upper[(i, j)] != p:
            raise UsageError(f"{path}: pi[{key}] contradicts antisymmetry")
        upper[(i, j)] = p
    try:
        pi = PoissonBivector.from_entries(dim, upper, data.get("class", ""), N)
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from None
    return Problem(dim, list(names), pi, N, D, seed if seed is not None else data.get("seed", 0),
                   data.get("taylor_components"), data)


# -- shared construction -----------------------------------------------------------

def _instance(prob: Problem):
    if prob.components is not None:
        comps = TaylorComponents.from_json(prob.components)
        inst = custom_instance(comps)
        if check_stasheff(inst, 3).ok and check_unitality(inst).ok:
            inst = AInftyInstance(comps, "custom", verified=True)
        return inst
    kind = prob.pi.kind
    if kind == "constant":
        return build_constant_instance(prob.pi)
    if kind == "linear":
        return build_linear_instance(prob.pi)
    return None


def problem_relations(prob: Problem) -> tuple[dict, int | None]:
    """Relations delta_h(x_ij) keyed by (i, j) and the h-modulus they are valid to (None if exact)."""
    pi = prob.pi
    if pi.kind in ("linear", "quadratic"):
        pi.require_poisson()
    inst = _instance(prob)
    if inst is not None:
        return relations(inst), None
    if pi.kind == "quadratic":
        q = pi.retrunc(1)
        return {(i, j): quadratic_first_order_relation(q, i, j)
                for i in range(pi.dim) for j in range(i + 1, pi.dim)}, 2
    raise UsageError("general bivectors need user-supplied 'taylor_components'")


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        payload = {"schema_version": SCHEMA_VERSION, **payload}
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(text)


# -- commands ----------------------------------------------------------------------

def cmd_relations(args) -> int:
    prob = _load(args)
    rels, modulus = problem_relations(prob)
    lines = [format_relation(rels[k], *k, prob.names, modulus) for k in sorted(rels)]
    payload = {"command": "relations", "relations": [
        {"i": i + 1, "j": j + 1, "relation": line} for (i, j), line in zip(sorted(rels), lines)]}
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def _system(prob: Problem):
    rels, modulus = problem_relations(prob)
    system = build_system(rels.values(), prob.dim, prob.degree).complete()
    return system, modulus


def cmd_normal_form(args) -> int:
    prob = _load(args)
    system, modulus = _system(prob)
    if system.status != "completed":
        w = system.witness
        print(f"rewriting system is {system.status}: ambiguity at "
              f"{'*'.join(prob.names[i] for i in w.word)} leaves {format_ncpoly(w.remainder, prob.names)}",
              file=sys.stderr)
        return EXIT_FAIL
    t = _parse(parse_expression, args.expression, prob.names, system.trunc)
    nf = system.normal_form(t)
    text = format_ncpoly(nf, prob.names)
    if modulus is not None:
        text += f"  (mod h^{modulus})"
    _emit(args, {"command": "normal-form", "input": args.expression, "normal_form": text}, text)
    return EXIT_OK


def _parse(fn, text, names, trunc):
    try:
        return fn(text, names, trunc)
    except ParseError as exc:
        raise UsageError(f"cannot parse {text!r}: {exc}") from None


def cmd_star(args) -> int:
    prob = _load(args)
    pi = prob.pi
    if pi.kind in ("linear", "quadratic", "general"):
        pi.require_poisson()
    kind = args.kind or None
    alg = StarAlgebra(pi, kind or "", max(prob.degree, 12))
    if alg.kind == "first_order":
        pi = pi.retrunc(1)
        alg = StarAlgebra(pi, "first_order")
    f = _parse(parse_sympoly, args.f, prob.names, pi.trunc)
    g = _parse(parse_sympoly, args.g, prob.names, pi.trunc)
    out = format_sympoly(alg.star(f, g), prob.names)
    if alg.kind == "first_order":
        out += "  (mod h^2)"
    _emit(args, {"command": "star", "kind": alg.kind, "f": args.f, "g": args.g, "product": out}, out)
    return EXIT_OK


def cmd_verify(args) -> int:
    prob = _load(args)
    suite = args.suite
    if suite == "auto":
        suite = {"constant": "constant", "linear": "linear", "quadratic": "quadratic"}.get(prob.pi.kind)
        if suite is None:
            raise UsageError("no verification suite for general bivectors; pass --suite koszul")
    pi = prob.pi
    trials = args.trials
    if suite == "constant":
        report = V.verify_constant(pi, min(prob.degree, 4), prob.trunc, 200 if trials is None else trials,
                                   prob.seed, mutation=args.mutation)
    elif suite == "linear":
        report = V.verify_linear(pi, min(prob.degree, 5), prob.trunc, 20 if trials is None else trials,
                                 prob.seed, mutation=args.mutation)
    elif suite == "quadratic":
        report = V.verify_quadratic(pi, min(prob.degree, 6), 100 if trials is None else trials, prob.seed,
                                    mutation=args.mutation)
    else:
        report = V.verify_koszul(prob.dim, min(args.max_weight, 5))
    if args.format == "json":
        print(report.canonical_json())
    else:
        print(report.summary())
    return EXIT_OK if report.ok else EXIT_FAIL


def _degree_window(text: str) -> list[int]:
    try:
        if ":" in text:
            lo, hi = (int(t) for t in text.split(":"))
            return list(range(lo, hi + 1))
        return [int(text)]
    except ValueError:
        raise UsageError(f"bad degree window {text!r} (expected 'lo:hi')") from None


def cmd_cohomology(args) -> int:
    prob = _load(args)
    degrees = _degree_window(args.degrees)
    if args.classical:
        delta = DualDifferential(None, prob.dim, 0)
    else:
        inst = _instance(prob)
        if inst is None:
            raise UsageError("deformed cohomology needs a constant, linear or custom instance")
        delta = DualDifferential(inst)
    try:
        cells = cohomology_ranks(delta, degrees, args.max_weight)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    lines = [f"{'degree':>6} {'weight':>6} {'chain':>6} {'rank_out':>8} {'rank_in':>7} {'H':>4}"]
    for c in cells:
        lines.append(f"{c.degree:>6} {c.weight:>6} {c.chain_dim:>6} {c.rank_out:>8} {c.rank_in:>7} {c.h_dim:>4}")
    payload = {"command": "cohomology", "trunc": delta.trunc, "cells": [c.to_json() for c in cells]}
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def _load(args) -> Problem:
    return load_problem(args.file, args.trunc, args.degree, args.seed)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--trunc", type=int, help="h-truncation order N (default from file, else 4)")
    common.add_argument("--degree", type=int, help="degree bound D for rewriting")
    common.add_argument("--seed", type=int, help="random seed for verification suites")
    common.add_argument("--format", choices=("text", "json"), default="text")

    p = argparse.ArgumentParser(prog="defquant", description="Deformation quantization by exact rewriting.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("relations", parents=[common], help="print delta_h(x_ij) for all i < j")
    s.add_argument("file")
    s.set_defaults(fn=cmd_relations)

    s = sub.add_parser("normal-form", parents=[common], help="normal form of an expression in T(V)/I")
    s.add_argument("file")
    s.add_argument("expression")
    s.set_defaults(fn=cmd_normal_form)

    s = sub.add_parser("star", parents=[common], help="star product of two polynomials")
    s.add_argument("file")
    s.add_argument("f")
    s.add_argument("g")
    s.add_argument("--kind", choices=("moyal", "gutt_transport", "first_order"))
    s.set_defaults(fn=cmd_star)

    s = sub.add_parser("verify", parents=[common], help="run a verification suite")
    s.add_argument("file")
    s.add_argument("--suite", choices=("auto",) + V.SUITES, default="auto")
    s.add_argument("--trials", type=int)
    s.add_argument("--mutation", choices=V.MUTATIONS)
    s.add_argument("--max-weight", type=int, default=4)
    s.set_defaults(fn=cmd_verify)

    s = sub.add_parser("cohomology", parents=[common], help="cohomology ranks of the cobar complex")
    s.add_argument("file")
    s.add_argument("--degrees", default="-2:0", help="degree window lo:hi")
    s.add_argument("--max-weight", type=int, default=3)
    s.add_argument("--classical", action="store_true", help="use the undeformed differential")
    s.set_defaults(fn=cmd_cohomology)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
    except NotPoissonError as exc:
        print(f"error: not a Poisson bivector: {exc}", file=sys.stderr)
    except (DegreeOverflow, OrientationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
