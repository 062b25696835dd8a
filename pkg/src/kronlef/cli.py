"""Command-line interface.

Every subcommand prints JSON on standard output: the result object by default,
or the full run report (command, parameters, results, timings, cache counters)
with ``--json``.  Numbers are decimal strings.

Exit codes: 0 success, 1 budget or capacity exceeded, 2 bad arguments,
3 a verification failed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field

from . import charkron, hwv, latin, seqlab, verify
from .cache import default_caches
from .cayley import omega_power
from .cube import CubeError, CubeSet, enumerate_magic_sets, magic_counts
from .exterior import Multivector, hodge_star
from .lefschetz import (check_hlp, check_lp, check_lp_full, commutator_control,
                        sl2_check)
from .partitions import PartitionError, format_partition_tuple, parse_partition_tuple
from .seqlab import build_sequence

EXIT_OK, EXIT_BUDGET, EXIT_USAGE, EXIT_FAILED = 0, 1, 2, 3


class UsageError(Exception):
    pass


class VerificationFailed(Exception):
    def __init__(self, results):
        super().__init__("verification failed")
        self.results = results


@dataclass
class RunReport:
    command: str
    parameters: dict
    results: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)
    cache: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"command": self.command, "parameters": self.parameters,
                "results": self.results, "timings": self.timings, "cache": self.cache}


def _tuple(args, d=None):
    text = args.tuple
    if text is None:
        raise UsageError("--tuple is required")
    try:
        lam = parse_partition_tuple(text)
    except PartitionError as exc:
        raise UsageError(str(exc)) from exc
    d = d if d is not None else args.d
    if len(lam) == 1 and not lam[0] and d > 1:
        lam = ((),) * d  # "" means the empty tuple
    if len(lam) != d:
        raise UsageError(f"--tuple has {len(lam)} entries, expected --d {d}")
    return lam


def _s(v) -> str:
    return str(v)


# ---------------------------------------------------------------- commands

def cmd_coeff(args) -> dict:
    lam = _tuple(args)
    try:
        hwv.check_label(lam, args.d, args.k)
    except PartitionError as exc:
        raise UsageError(str(exc)) from exc
    out = {"tuple": format_partition_tuple(lam), "d": args.d, "k": args.k}
    backend = args.backend
    budget = _budget(args)
    if backend == "auto" and args.budget is None:
        budget = seqlab.AUTO_HWV_BUDGET
    if backend in ("hwv", "both", "auto"):
        try:
            out["hwv"] = _s(hwv.kronecker_hwv(lam, args.d, args.k, budget=budget))
        except hwv.BudgetExceeded:
            if backend != "auto":
                raise
    if backend in ("characters", "both") or (backend == "auto" and "hwv" not in out):
        out["characters"] = _s(charkron.kronecker_characters(lam, jobs=args.jobs))
    values = {out[b] for b in ("hwv", "characters") if b in out}
    if len(values) != 1:
        out["agree"] = False
        raise VerificationFailed(out)
    out["value"] = values.pop()
    return out


def _budget(args) -> int:
    return hwv.DEFAULT_BUDGET if args.budget is None else args.budget


def cmd_sequence(args) -> dict:
    lam = _tuple(args)
    backend = "characters" if args.backend == "auto" and args.long else args.backend
    # an explicit --budget also governs when "auto" tries hwv
    auto = seqlab.AUTO_HWV_BUDGET if args.budget is None else args.budget
    seq = build_sequence(lam, args.d, args.k, backend=backend, budget=_budget(args),
                         jobs=args.jobs, auto_budget=auto)
    return seq.to_json()


def cmd_at(args) -> dict:
    if args.type:
        try:
            T = CubeSet.from_text(args.d, args.k, args.type)
        except (CubeError, ValueError) as exc:
            raise UsageError(str(exc)) from exc
    else:
        T = CubeSet.full(args.d, args.k)
    try:
        res = latin.at_number(T, budget=args.budget_cells)
    except latin.NotMagic as exc:
        raise UsageError(str(exc)) from exc
    return res.to_json(T)


def cmd_omega_power(args) -> dict:
    v = omega_power(args.d, args.k, args.n)
    out = {"d": args.d, "k": args.k, "n": args.n, "terms": _s(len(v)),
           "zero": v.is_zero()}
    if args.terms:
        out["vector"] = v.to_json()
    return out


def cmd_lefschetz(args) -> dict:
    if args.mode == "lp-full":
        return check_lp_full(args.d, args.k).to_json()
    lam = _tuple(args)
    fn = check_lp if args.mode == "lp" else check_hlp
    try:
        return fn(lam, args.d, args.k, budget=_budget(args)).to_json()
    except PartitionError as exc:
        raise UsageError(str(exc)) from exc


def cmd_sl2(args) -> dict:
    rep = sl2_check(args.d, samples=args.samples, seed=args.seed)
    out = rep.to_json()
    if args.control:
        out["control"] = {
            "adjoint": {X.to_text(): _s(c) for X, c in commutator_control(True).items()},
            "unsigned": {X.to_text(): _s(c) for X, c in commutator_control(False).items()},
        }
    return out


def cmd_magic_count(args) -> dict:
    if args.n is not None:
        try:
            sets = enumerate_magic_sets(args.d, args.k, args.n)
        except CubeError as exc:
            raise UsageError(str(exc)) from exc
        out = {"d": args.d, "k": args.k, "n": args.n, "count": _s(len(sets))}
        if args.list:
            out["sets"] = [T.to_json() for T in sets]
        return out
    counts = magic_counts(args.d, args.k)
    return {"d": args.d, "k": args.k, "counts": [_s(c) for c in counts]}


def cmd_hodge(args) -> dict:
    d, k = args.d, args.k
    N = k**d
    out: dict = {"d": d, "k": k}
    if N <= 12:
        ok = True
        for mask in range(1 << N):
            v = Multivector(d, k, {mask: 1})
            n = mask.bit_count()
            if hodge_star(hodge_star(v)) != (-1) ** (n * (N - n)) * v:
                ok = False
                break
        out["star_star"] = ok
        out["checked"] = _s(1 << N)
    if args.tuple is not None:
        lam = _tuple(args)
        H = hwv.hwv_basis(lam, d, k, _budget(args))
        comp = hwv.hwv_space(d, k, hwv.complementary_weight(H.ambient.weight, d, k),
                             _budget(args))
        images_ok = all(comp.coordinates(hwv.reverse_labels(hodge_star(v))) is not None
                        for v in H.multivectors())
        out.update({"tuple": format_partition_tuple(lam), "dim": _s(H.dim),
                    "complement_dim": _s(comp.dim), "maps_into_hwv": images_ok,
                    "holds": images_ok and H.dim == comp.dim})
    if out.get("star_star") is False or out.get("holds") is False:
        raise VerificationFailed(out)
    return out


def cmd_verify(args) -> dict:
    only = None
    if args.only:
        try:
            only = [int(x) for x in args.only.split(",")]
        except ValueError as exc:
            raise UsageError("--only takes comma-separated criterion numbers") from exc
        if any(n not in verify.CRITERIA for n in only):
            raise UsageError(f"criteria are numbered 1..{len(verify.CRITERIA)}")
    opts = verify.Options(long=args.long, jobs=args.jobs)
    results = verify.run_all(opts, only, echo=lambda s: print(s, file=sys.stderr))
    caches = default_caches()
    ch = caches.characters.stats()
    co = caches.coefficients.stats()
    looked = ch["hits"] + ch["misses"]
    out = {"passed": all(r.passed for r in results),
           "criteria": [r.to_json() for r in results],
           "character_cache": {**ch, "hit_rate": (ch["hits"] / looked) if looked else None},
           "coefficient_cache": co}
    if not out["passed"]:
        raise VerificationFailed(out)
    return out


# ------------------------------------------------------------------ parser

def _common(p, tuple_arg=True, dk=True):
    if dk:
        p.add_argument("--d", type=int, default=3, help="tensor order d (default 3)")
        p.add_argument("--k", type=int, default=2, help="local dimension k (default 2)")
    if tuple_arg:
        p.add_argument("--tuple", help='partition tuple, e.g. "4,2;2,2,2;3,2,1" (";;" = empty)')
    p.add_argument("--budget", type=int, default=None,
                   help=f"largest weight space the hwv backend will build "
                        f"(default {hwv.DEFAULT_BUDGET}; {seqlab.AUTO_HWV_BUDGET} for auto)")
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1,
                   help="worker processes for character sums")
    p.add_argument("--long", action="store_true", help="run full-length computations")
    p.add_argument("--json", action="store_true", help="print the full run report")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="kronlef", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coeff", help="one Kronecker coefficient")
    _common(p)
    p.add_argument("--backend", choices=["auto", "hwv", "characters", "both"], default="auto")
    p.set_defaults(fn=cmd_coeff)

    p = sub.add_parser("sequence", help="g(rho_k^n lam) over its range")
    _common(p)
    p.add_argument("--backend", choices=["auto", "hwv", "characters", "both"],
                   default="characters")
    p.set_defaults(fn=cmd_sequence)

    p = sub.add_parser("at", help="Alon-Tarsi number of a magic set or of [k]^d")
    _common(p, tuple_arg=False)
    p.add_argument("--type", help='magic set, e.g. "111,222" (default: the whole cube)')
    p.add_argument("--budget-cells", type=int, default=latin.DEFAULT_CELL_BUDGET)
    p.set_defaults(fn=cmd_at)

    p = sub.add_parser("omega-power", help="omega^n")
    _common(p, tuple_arg=False)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--terms", action="store_true", help="include every term")
    p.set_defaults(fn=cmd_omega_power)

    p = sub.add_parser("lefschetz", help="LP / HLP / full-algebra LP verdicts")
    p.add_argument("mode", choices=["lp", "hlp", "lp-full"])
    _common(p)
    p.set_defaults(fn=cmd_lefschetz)

    p = sub.add_parser("sl2-check", help="sl(2) relations for k = 2")
    _common(p, tuple_arg=False, dk=False)
    p.add_argument("--d", type=int, default=3)
    p.add_argument("--samples", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--control", action="store_true",
                   help="also report the k = 4 commutator on e_{111,222}")
    p.set_defaults(fn=cmd_sl2)

    p = sub.add_parser("magic-count", help="number of magic sets of each magnitude")
    _common(p, tuple_arg=False)
    p.add_argument("--n", type=int)
    p.add_argument("--list", action="store_true")
    p.set_defaults(fn=cmd_magic_count)

    p = sub.add_parser("hodge-check", help="star-star identity and HWV duality")
    _common(p)
    p.set_defaults(fn=cmd_hodge)

    p = sub.add_parser("verify-paper", help="run the acceptance suite")
    _common(p, tuple_arg=False, dk=False)
    p.add_argument("--only", help="comma-separated criterion numbers")
    p.set_defaults(fn=cmd_verify)
    return ap


def _params(args) -> dict:
    return {k: v for k, v in vars(args).items() if k not in ("fn", "json")}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits with status 2 on malformed input
    report = RunReport(args.command, _params(args))
    t = time.perf_counter()
    code = EXIT_OK
    try:
        report.results = args.fn(args)
    except UsageError as exc:
        print(f"kronlef: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (hwv.BudgetExceeded, latin.BudgetExceeded) as exc:
        print(f"kronlef: capacity exceeded: {exc}", file=sys.stderr)
        report.results = {"error": str(exc)}
        code = EXIT_BUDGET
    except (PartitionError, CubeError) as exc:
        print(f"kronlef: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except VerificationFailed as exc:
        report.results = exc.results
        code = EXIT_FAILED
    report.timings = {"seconds": round(time.perf_counter() - t, 3)}
    report.cache = default_caches().stats()
    payload = report.to_json() if args.json else report.results
    print(json.dumps(payload, indent=None if args.json else 2))
    return code


if __name__ == "__main__":
    sys.exit(main())
