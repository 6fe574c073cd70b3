"""Command-line front end.

Exit codes: 0 success / verdict true, 1 verdict false, 2 bad input or capacity.
"""
from __future__ import annotations

import argparse
import itertools
import json
import sys
from fractions import Fraction
from dataclasses import dataclass
from pathlib import Path

from . import corpus
from .brackets import mc_residual
from .complexes import TAGS, ComplexId, cohomology, les_exactness_check, les_squares_check
from .config import DEFAULT_LIMITS, CapacityError, LieIdealError, check_cap
from .deform import (certify_rigidity, certify_stability, graph_subspace, kuranishi, phi_cochain,
                     extend_to_second_order)
from .exactlin import Matrix, Subspace, fmt, q
from .liealg import (LieAlgebra, is_ideal, make_ideal_data, subspace_from_json, subspace_to_json,
                     validate_lie_algebra)

VERBS = ("validate", "cohomology", "mc-check", "kuranishi", "certify", "les-check", "scan")


class InputError(Exception):
    pass


@dataclass(frozen=True)
class Command:
    verb: str
    inputs: dict      # corpus name or file paths
    options: dict

    @staticmethod
    def from_args(args) -> "Command":
        inputs = {k: getattr(args, k) for k in ("corpus", "algebra", "ideal") if getattr(args, k)}
        opts = {"complement": args.complement, "max_degree": args.max_degree, "method": args.method,
                "complex": args.complex, "json": args.json}
        if args.verb == "scan":
            opts.update(step=args.step, radius=args.radius)
        return Command(args.verb, inputs, opts)


def _read_json(text: str, where: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"malformed JSON in {where}: line {e.lineno} column {e.colno}: {e.msg}")


def _load_file(path: str):
    p = Path(path)
    if not p.is_file():
        raise InputError(f"no such file: {path}")
    return _read_json(p.read_text(encoding="utf-8"), path)


def _algebra(args):
    """(LieAlgebra, {ideal name: Subspace}, source label)."""
    if args.corpus:
        e = corpus.load(args.corpus)
        return e.algebra, dict(e.ideals), f"corpus:{args.corpus}"
    obj = _load_file(args.algebra)
    try:
        if "algebra" in obj:
            ent = corpus.CorpusEntry.from_json(obj)
            return ent.algebra, dict(ent.ideals), args.algebra
        return LieAlgebra.from_json(obj), {}, args.algebra
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
        raise InputError(f"bad algebra file {args.algebra}: {e}")


def _subspace_arg(val: str, named: dict, n: int, what: str) -> Subspace:
    if val in named:
        return named[val]
    if not Path(val).is_file():
        raise InputError(f"unknown {what} {val!r}; known names: {sorted(named)}")
    try:
        S = subspace_from_json(_load_file(val))
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
        raise InputError(f"bad subspace file {val}: {e}")
    if S.ambient_dim != n:
        raise InputError(f"{what} lives in dimension {S.ambient_dim}, algebra has {n}")
    return S


def _ideal_data(args, g, named):
    if not args.ideal:
        raise InputError("--ideal is required for this verb")
    i = _subspace_arg(args.ideal, named, g.dim, "ideal")
    rule = args.complement
    if rule not in ("pivot", "orth"):
        rule = _subspace_arg(rule, {}, g.dim, "complement")
    return make_ideal_data(g, i, rule)


def _map_arg(d, text: str, flag: str) -> Matrix:
    """A map i → i^c given as k rows (one per ideal basis vector) of m complement coordinates."""
    obj = _read_json(text, flag)
    if not isinstance(obj, list) or len(obj) != d.k or any(not isinstance(r, list) or len(r) != d.m for r in obj):
        raise InputError(f"{flag} must be a list of {d.k} rows of {d.m} rationals")
    try:
        rows = [[q(x) for x in r] for r in obj]
    except (ValueError, TypeError, ZeroDivisionError) as e:
        raise InputError(f"{flag}: {e}")
    return Matrix.from_rows(rows, d.m).T if d.k else Matrix.zeros(d.m, 0)


def _mat_json(M: Matrix):
    return [[fmt(x) for x in r] for r in M.T.to_rows()]


def scan_mc(d, step, radius, limits=DEFAULT_LIMITS) -> list:
    """Grid points φ (entries in step·Z ∩ [−radius, radius]) with exactly zero MC residual."""
    step, radius = Fraction(step), Fraction(radius)
    if step <= 0 or radius < 0:
        raise ValueError("need step > 0 and radius >= 0")
    r = int(radius / step)
    vals = [step * t for t in range(-r, r + 1)]
    npar = d.m * d.k
    check_cap("max_grid_points", len(vals) ** npar, limits)
    out = []
    for entries in itertools.product(vals, repeat=npar):
        M = Matrix(d.m, d.k, tuple(entries))
        if mc_residual("dgl1a_ideal", d, phi_cochain(d, M)).is_zero:
            out.append(M)
    return out


def _emit(report: dict, as_json: bool):
    if as_json:
        print(json.dumps(report, indent=1, ensure_ascii=False, sort_keys=True))
        return
    for k in sorted(report):
        v = report[k]
        if isinstance(v, (dict, list)):
            v = json.dumps(v, ensure_ascii=False, sort_keys=True)
        print(f"{k:>14}: {v}")


def _cmd(args) -> tuple[int, dict]:
    g, named, src = _algebra(args)
    check_cap("max_dim", g.dim)
    cmd = Command.from_args(args)
    rep = {"verb": cmd.verb, "source": src, "options": {k: v for k, v in cmd.options.items() if k != "json"}}
    if args.verb == "validate":
        c = validate_lie_algebra(g)
        rep["lie_algebra"] = c.to_json()
        ok = c.verdict
        if args.ideal:
            S = _subspace_arg(args.ideal, named, g.dim, "ideal")
            ci = is_ideal(g, S)
            rep["ideal"] = ci.to_json()
            ok = ok and ci.verdict
        return (0 if ok else 1), rep

    d = _ideal_data(args, g, named)
    rep["ideal"] = subspace_to_json(d.ideal)
    rep["complement"] = d.complement_rule
    if args.verb == "cohomology":
        check_cap("max_degree", args.max_degree)
        r = cohomology(ComplexId(args.complex, d), args.max_degree)
        rep["complex"] = args.complex
        rep["table"] = r.table
        if args.json:
            rep["representatives"] = [[c.to_json() for c in rs] for rs in r.reps]
        return 0, rep
    if args.verb == "mc-check":
        M = _map_arg(d, args.phi, "--phi")
        res = mc_residual("dgl1a_ideal", d, phi_cochain(d, M))
        ideal = is_ideal(g, graph_subspace(d, M))
        rep["residual"] = res.to_json()
        rep["graph_is_ideal"] = ideal.verdict
        return (0 if res.is_zero else 1), rep
    if args.verb == "kuranishi":
        M = _map_arg(d, args.eta, "--eta")
        kur, zero = kuranishi(d, phi_cochain(d, M))
        om = extend_to_second_order(d, phi_cochain(d, M))
        rep["kuranishi"] = kur.to_json()
        rep["class_is_zero"] = zero
        rep["second_order"] = None if om is None else _mat_json(Matrix(d.m, d.k, om.coeffs))
        return (0 if zero else 1), rep
    if args.verb == "certify":
        m = args.method
        c = certify_stability(d, m) if m in ("h1", "h1-wedge") else certify_rigidity(d, m)
        rep["certificate"] = c.to_json()
        return (0 if c.verdict else 1), rep
    if args.verb == "les-check":
        check_cap("max_degree", args.max_degree)
        cs = [les_exactness_check(d, w, args.max_degree) for w in ("top", "bottom")]
        cs.append(les_squares_check(d, args.max_degree))
        rep["checks"] = [c.to_json() for c in cs]
        return (0 if all(c.verdict for c in cs) else 1), rep
    if args.verb == "scan":
        try:
            step, radius = q(args.step), q(args.radius)
        except (ValueError, ZeroDivisionError) as e:
            raise InputError(f"bad grid: {e}")
        sols = scan_mc(d, step, radius)
        rep["grid"] = {"step": fmt(step), "radius": fmt(radius)}
        rep["solutions"] = [_mat_json(M) for M in sols]
        return 0, rep
    raise InputError(f"unknown verb {args.verb}")


def parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lieideal", description="Deformations of Lie ideals in exact arithmetic.")
    p.add_argument("verb", choices=VERBS)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--corpus", metavar="NAME")
    src.add_argument("--algebra", metavar="FILE")
    p.add_argument("--ideal", metavar="NAME|FILE")
    p.add_argument("--complement", default="pivot", metavar="pivot|orth|FILE")
    p.add_argument("--max-degree", type=int, default=2, metavar="K")
    p.add_argument("--method", choices=("h1", "h1-wedge", "h0pi", "whitehead"), default="h1")
    p.add_argument("--complex", choices=TAGS, default="hom_ideal")
    p.add_argument("--phi", default=None, help="map i -> i^c as JSON rows, one per ideal basis vector")
    p.add_argument("--eta", default=None, help="same format as --phi")
    p.add_argument("--step", default="1/4")
    p.add_argument("--radius", default="1")
    p.add_argument("--json", action="store_true")
    return p


def run(argv=None) -> int:
    try:
        args = parser().parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    if args.verb == "mc-check" and args.phi is None:
        print("error: mc-check needs --phi", file=sys.stderr)
        return 2
    if args.verb == "kuranishi" and args.eta is None:
        print("error: kuranishi needs --eta", file=sys.stderr)
        return 2
    try:
        code, rep = _cmd(args)
    except CapacityError as e:
        _emit({"error": str(e), "cap": e.cap, **e.witness}, args.json)
        return 2
    except InputError as e:
        _emit({"error": str(e)}, args.json)
        return 2
    except (LieIdealError, KeyError, ValueError) as e:
        payload = {"error": str(e)}
        if isinstance(e, LieIdealError) and e.witness:
            payload["witness"] = json.loads(json.dumps(e.witness, default=str))
        _emit(payload, args.json)
        return 2
    rep["exit"] = code
    _emit(rep, args.json)
    return code


def main():
    sys.exit(run())
