"""Command-line interface.

Exit codes: 0 agree/pass, 1 invalid input, 2 invariant breach, 3 criterion
inapplicable.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import io
from .algebra import Algebra, validate_algebra
from .config import WORKSPACE_ENV, WorkspaceConfig
from .homological import Tag, ext_dim, gi_oracle, gp_oracle, is_projective, projective_cover, syzygy, tor
from .modules import Module, validate_module
from .triangular import (
    Bimodule,
    InvariantViolation,
    TriangularAlgebra,
    TripleModule,
    check_condition1,
    check_condition2,
    check_condition3,
    check_condition4,
    is_gi_triple,
    is_gp_triple,
    is_projective_triple,
    validate_bimodule,
    validate_triple,
)

EXIT_OK, EXIT_INPUT, EXIT_BREACH, EXIT_INAPPLICABLE = 0, 1, 2, 3


def _config(args) -> WorkspaceConfig:
    kw = dict(bound=args.bound, seed=args.seed, trials=args.trials, cap=args.cap)
    if args.out is not None:
        kw["out_dir"] = Path(args.out)
    return WorkspaceConfig(**kw)


def _violations(obj) -> list[str]:
    if isinstance(obj, TriangularAlgebra):
        return validate_algebra(obj.gamma).violations
    if isinstance(obj, Algebra):
        return validate_algebra(obj).violations
    if isinstance(obj, Module):
        return validate_module(obj)
    if isinstance(obj, Bimodule):
        return validate_bimodule(obj)
    if isinstance(obj, TripleModule):
        errs = [f"X: {e}" for e in validate_module(obj.x)] + [f"Y: {e}" for e in validate_module(obj.y)]
        return errs or validate_triple(obj)
    return [f"unsupported document {type(obj).__name__}"]


def cmd_validate(args) -> int:
    status = EXIT_OK
    for path in args.paths:
        try:
            obj = io.load(path)
        except io.InputError as exc:
            print(f"FAIL {path}: {exc}")
            status = EXIT_INPUT
            continue
        errs = _violations(obj)
        if errs:
            print(f"FAIL {path}: {'; '.join(errs)}")
            status = EXIT_INPUT
        else:
            print(f"ok   {path}: {type(obj).__name__}")
    return status


def _load_list(paths: Optional[Sequence[str]], alg: Algebra) -> Optional[list[Module]]:
    if not paths:
        return None
    out = []
    for p in paths:
        m = io.load(p)
        if not isinstance(m, Module) or not m.algebra.same_as(alg):
            raise io.InputError(f"{p}: expected a module over {alg!r}")
        out.append(Module(alg, m.actions, m.name))
    return out


def _base_list(alg: Algebra, supplied: Optional[list[Module]], cfg: WorkspaceConfig) -> list[Module]:
    if supplied is not None:
        return supplied
    from .classify import gp_base_list

    try:
        return [c.module for c in gp_base_list(alg, 2 * cfg.bound, bound=cfg.bound)]
    except ValueError:
        return []


def _tag_word(tag: Tag, kind: str) -> str:
    good = "GP" if kind == "gp" else "GI"
    return {Tag.PROVEN_GP: good, Tag.NOT_GP: f"Not{good}", Tag.GP_UP_TO_BOUND: f"{good}UpToBound",
            Tag.INAPPLICABLE: "criterion inapplicable"}[tag]


def _contradict(a: Tag, b: Tag) -> bool:
    return {a, b} == {Tag.PROVEN_GP, Tag.NOT_GP}


def cmd_check(args) -> int:
    cfg = _config(args)
    try:
        t = io.load(args.target)
        if not isinstance(t, TripleModule):
            raise io.InputError(f"{args.target}: expected a triple document")
        errs = _violations(t)
        if errs:
            print(f"invalid triple: {'; '.join(errs)}")
            return EXIT_INPUT
        g = t.gamma
        gp_r = _load_list(args.gp_r, g.r)
        gp_s = _load_list(args.gp_s, g.s)
    except io.InputError as exc:
        print(f"error: {exc}")
        return EXIT_INPUT
    z = t.to_module()
    stamp = cfg.stamp()
    if args.kind == "proj":
        crit, why = is_projective_triple(t)
        orac = is_projective(z)
        word = lambda b: "projective" if b else "not projective"  # noqa: E731
        agree = crit == orac
        print(f"{word(crit)} (criterion: {why}) / {word(orac)} (oracle) / {'AGREE' if agree else 'DISAGREE'} {stamp}")
        return EXIT_OK if agree else EXIT_BREACH
    if args.kind == "gp":
        c1 = check_condition1(g.m, _base_list(g.r, gp_r, cfg))
        c2 = check_condition2(g.m, _base_list(g.s, gp_s, cfg))
        for c in (c1, c2):
            print(f"  {c}")
        v = is_gp_triple(t, c1, c2, cfg.bound)
        o = gp_oracle(z, cfg.bound)
    else:
        c3 = check_condition3(g, _base_list(g.s, gp_s, cfg))
        c4 = check_condition4(g, _base_list(g.r, gp_r, cfg))
        for c in (c3, c4):
            print(f"  {c}")
        try:
            v = is_gi_triple(t, c3, c4, cfg.bound).direct
        except InvariantViolation as exc:
            print(f"INVARIANT BREACH: {exc} {stamp}")
            return EXIT_BREACH
        o = gi_oracle(z, cfg.bound)
    if v.tag is Tag.INAPPLICABLE:
        print(f"criterion inapplicable: {v.note} / {o} (oracle) {stamp}")
        return EXIT_INAPPLICABLE
    bad = _contradict(v.tag, o.tag)
    status = "DISAGREE" if bad else ("AGREE" if v.tag is o.tag else "CONSISTENT")
    oracle = f"{o} (oracle)" if args.kind == "gp" else f"{o} for the dual (oracle)"
    print(f"{_tag_word(v.tag, args.kind)} (criterion) / {oracle} / {status} {stamp}")
    return EXIT_BREACH if bad else EXIT_OK


def cmd_census(args) -> int:
    from .classify import census_for

    cfg = _config(args)
    try:
        g = io.load(args.algebra)
        if not isinstance(g, TriangularAlgebra):
            raise io.InputError(f"{args.algebra}: census needs a triangular algebra")
    except io.InputError as exc:
        print(f"error: {exc}")
        return EXIT_INPUT
    try:
        census = census_for(g, args.bound, cfg.census_config())
    except InvariantViolation as exc:
        print(f"INVARIANT BREACH: {exc}")
        return EXIT_BREACH
    except ValueError as exc:
        print(f"criterion inapplicable: {exc}")
        return EXIT_INAPPLICABLE
    print(census.table())
    print(f"config {cfg.stamp()}")
    stem = Path(args.algebra).stem
    conf = {k: v for k, v in cfg.to_dict().items() if k != "out_dir"}
    out = io.write_atomic(cfg.out_dir / f"census_{stem}_b{args.bound}.json", io.dumps(io.census_doc(census, conf)))
    print(f"wrote {out}")
    return EXIT_OK


def cmd_suite(args) -> int:
    from .suites import SUITES, run_suite

    cfg = _config(args)
    names = list(SUITES) if args.name == "all" else [args.name]
    status = EXIT_OK
    for name in names:
        if name not in SUITES:
            print(f"error: unknown suite {name!r}; known: {', '.join(SUITES)}")
            return EXIT_INPUT
        res = run_suite(name, cfg)
        print(json.dumps({**res.summary(), "bound": cfg.bound, "seed": cfg.seed}, sort_keys=True))
        if not res.passed:
            status = EXIT_BREACH
            for f in res.failures[:5]:
                print(f"  counterexample: {f}")
            if res.counterexample is not None:
                out = io.write_atomic(cfg.out_dir / f"counterexample_{name}.json", io.dumps(res.counterexample))
                print(f"  wrote {out}")
    return status


def _module_arg(path: str) -> Module:
    m = io.load(path)
    if isinstance(m, TripleModule):
        return m.to_module()
    if not isinstance(m, Module):
        raise io.InputError(f"{path}: expected a module or triple document")
    return m


def cmd_ext(args) -> int:
    cfg = _config(args)
    try:
        x, y = _module_arg(args.x), _module_arg(args.y)
        if not x.algebra.same_as(y.algebra):
            raise io.InputError("modules are over different algebras")
    except io.InputError as exc:
        print(f"error: {exc}")
        return EXIT_INPUT
    print(f"dim Ext^{args.degree}(x, y) = {ext_dim(x, Module(x.algebra, y.actions), args.degree)} {cfg.stamp()}")
    return EXIT_OK


def cmd_tor(args) -> int:
    cfg = _config(args)
    try:
        m, x = _module_arg(args.m), _module_arg(args.x)
        if not m.algebra.same_as(x.algebra.opposite()):
            raise io.InputError("first module must be over the opposite algebra of the second")
    except io.InputError as exc:
        print(f"error: {exc}")
        return EXIT_INPUT
    m = Module(x.algebra.opposite(), m.actions)
    print(f"dim Tor_{args.degree}(m, x) = {tor(m, x, args.degree)} {cfg.stamp()}")
    return EXIT_OK


def cmd_cover(args) -> int:
    cfg = _config(args)
    try:
        x = _module_arg(args.x)
    except io.InputError as exc:
        print(f"error: {exc}")
        return EXIT_INPUT
    cov = projective_cover(x)
    print(f"cover summands (idempotent indices) = {cov.summands}; dim P = {cov.projective.dim}; "
          f"dim kernel = {cov.projective.dim - x.dim} {cfg.stamp()}")
    return EXIT_OK


def cmd_syzygy(args) -> int:
    cfg = _config(args)
    try:
        x = _module_arg(args.x)
    except io.InputError as exc:
        print(f"error: {exc}")
        return EXIT_INPUT
    om = syzygy(x, args.degree)
    print(f"dim Omega^{args.degree}(x) = {om.dim} {cfg.stamp()}")
    if args.out is not None:
        out = io.write_atomic(cfg.out_dir / f"syzygy_{Path(args.x).stem}_{args.degree}.json", io.dumps(io.module_doc(om)))
        print(f"wrote {out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--bound", type=int, default=8, help="oracle bound (Ext degrees tested)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int, default=200, help="random trials in decomposition/iso searches")
    common.add_argument("--cap", type=int, default=1 << 20, help="exhaustive search cap")
    common.add_argument("--out", default=None, help=f"output directory (default ${WORKSPACE_ENV} or ./trigp-out)")

    ap = argparse.ArgumentParser(prog="trigp", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="verb", required=True)
    p = sub.add_parser("validate", parents=[common], help="check document invariants")
    p.add_argument("paths", nargs="+")
    p.set_defaults(fn=cmd_validate)
    p = sub.add_parser("check", parents=[common], help="criterion vs oracle on a triple")
    p.add_argument("target")
    p.add_argument("--kind", choices=("proj", "gp", "gi"), default="gp")
    p.add_argument("--gp-r", nargs="*", help="module files: GP (or GI) list over R")
    p.add_argument("--gp-s", nargs="*", help="module files: GP (or GI) list over S")
    p.set_defaults(fn=cmd_check)
    p = sub.add_parser("census", parents=[common], help="indecomposable GP census of a triangular algebra")
    p.add_argument("algebra")
    p.set_defaults(fn=cmd_census)
    p = sub.add_parser("suite", parents=[common], help="run a named verification suite (or 'all')")
    p.add_argument("name")
    p.set_defaults(fn=cmd_suite)
    p = sub.add_parser("ext", parents=[common], help="dim Ext^i(x, y)")
    p.add_argument("x")
    p.add_argument("y")
    p.add_argument("--degree", type=int, default=1)
    p.set_defaults(fn=cmd_ext)
    p = sub.add_parser("tor", parents=[common], help="dim Tor_i(m, x), m over the opposite algebra")
    p.add_argument("m")
    p.add_argument("x")
    p.add_argument("--degree", type=int, default=1)
    p.set_defaults(fn=cmd_tor)
    p = sub.add_parser("cover", parents=[common], help="projective cover")
    p.add_argument("x")
    p.set_defaults(fn=cmd_cover)
    p = sub.add_parser("syzygy", parents=[common], help="i-th syzygy")
    p.add_argument("x")
    p.add_argument("--degree", type=int, default=1)
    p.set_defaults(fn=cmd_syzygy)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.bound < 1:
        print("error: --bound must be at least 1")
        return EXIT_INPUT
    try:
        return args.fn(args)
    except io.InputError as exc:
        print(f"error: {exc}")
        return EXIT_INPUT
    except InvariantViolation as exc:
        print(f"INVARIANT BREACH: {exc}")
        return EXIT_BREACH


if __name__ == "__main__":
    sys.exit(main())
