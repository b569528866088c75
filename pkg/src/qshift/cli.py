"""Command line entry point: ``qshift check | generate | apply-dmu | commute``."""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from . import caps
from .checks import run_check
from .generators import amu_generating_family
from .lie import GL, build_spec
from .quasi import ShiftMatrix, d_mu_iterate
from .suites import FAMILY_NAMES, SUITES, select
from .uea import ParseError, commutator, parse_element

# accepted spellings of the family argument
_FAMILY_ALIASES = {**FAMILY_NAMES, **{v: v for v in FAMILY_NAMES.values()}}


def _family(name: str) -> str:
    try:
        return _FAMILY_ALIASES[name]
    except KeyError:
        raise argparse.ArgumentTypeError(f"unknown family {name!r}; choose from {sorted(_FAMILY_ALIASES)}") from None


def _load_mu(path: str) -> ShiftMatrix:
    try:
        mu = ShiftMatrix.load(path)
        mu.validate()
    except OSError as exc:
        raise ParseError(f"cannot read mu file {path}: {exc}") from exc
    except ValueError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    return mu


def _emit(line: str, out) -> None:
    out.write(line + "\n")
    out.flush()


def cmd_check(args, out) -> int:
    families = [args.family] if args.family else None
    ok = True
    for thunk in select(args.suite, families, args.max_n, args.trials, args.seed):
        rep = thunk()
        ok &= rep.passed
        _emit(rep.to_json(), out)
    return 0 if ok else 1


def cmd_generate(args, out) -> int:
    mu = _load_mu(args.mu) if args.mu else ShiftMatrix.generic(build_spec(args.family, args.n))
    if (mu.spec.family, mu.spec.N) != (args.family, args.n):
        raise ParseError(f"mu file is for {mu.spec.name}, not {build_spec(args.family, args.n).name}")
    text = amu_generating_family(mu.spec, mu).to_json()
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        _emit(text, out)
    return 0


def cmd_apply_dmu(args, out) -> int:
    mu = _load_mu(args.mu)
    f = parse_element(mu.spec, args.element)
    _emit(str(d_mu_iterate(mu, f, args.power)), out)
    return 0


def _infer_n(*texts) -> int:
    nums = [int(x) for t in texts for x in re.findall(r"\d+", t)]
    return max(nums + [2])


def cmd_commute(args, out) -> int:
    spec = build_spec(args.family, args.n or _infer_n(args.a, args.b))
    a, b = parse_element(spec, args.a), parse_element(spec, args.b)
    rep = run_check("commute", lambda: commutator(a, b) or None)
    _emit(rep.to_json(), out)
    return 0 if rep.passed else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qshift", description="Exact checks for shift operators on U(g).")
    p.add_argument("--max-degree", type=int, help="override the total-degree cap")
    p.add_argument("--max-slots", type=int, help="override the tensor-slot cap")
    p.add_argument("--max-rank", type=int, help="override the cap on N")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="run a check suite, one JSON report per line")
    c.add_argument("--suite", choices=("all",) + SUITES, default="all")
    c.add_argument("--family", type=_family)
    c.add_argument("--max-n", type=int, default=5)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--trials", type=int, default=200, help="random pairs per Leibniz consistency check")
    c.set_defaults(run=cmd_check)

    g = sub.add_parser("generate", help="emit the generating family of A_mu as JSON")
    g.add_argument("--family", type=_family, required=True)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--mu", help="mu file (defaults to the generic mu)")
    g.add_argument("--out")
    g.set_defaults(run=cmd_generate)

    a = sub.add_parser("apply-dmu", help="apply D_mu^p to an element")
    a.add_argument("--mu", required=True)
    a.add_argument("--element", required=True)
    a.add_argument("--power", type=int, default=1)
    a.set_defaults(run=cmd_apply_dmu)

    m = sub.add_parser("commute", help="commutator of two elements as a check report")
    m.add_argument("--a", required=True)
    m.add_argument("--b", required=True)
    m.add_argument("--family", type=_family, default=GL)
    m.add_argument("--n", type=int)
    m.set_defaults(run=cmd_commute)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    limits = {k: v for k, v in (("max_degree", args.max_degree), ("max_slots", args.max_slots), ("max_n", args.max_rank)) if v}
    try:
        with caps.override(**limits):
            return args.run(args, out)
    except (ParseError, caps.CapExceeded, ValueError, IndexError) as exc:
        print(f"qshift: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
