"""Acceptance criteria as executable checks, shared by the CLI and the test suite."""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from typing import Callable

from . import charkron, hwv
from .cayley import cayley, omega_power
from .cube import CubeSet, direct_sum, enumerate_magic_sets, magic_counts, marginals
from .exterior import Multivector, hodge_star, wedge
from .latin import alon_tarsi, at_number
from .lefschetz import check_hlp, check_lp_full, commutator_control, sl2_check
from .partitions import complement_in_rectangle, partitions
from .seqlab import build_sequence, is_unimodal, shape_report

G3_4 = [1, 1, 1, 2, 5, 6, 13, 14, 18, 14, 13, 6, 5, 2, 1, 1, 1]
G5_2 = [1, 1, 5, 11, 35, 52, 112, 130, 166, 130, 112, 52, 35, 11, 5, 1, 1]
EX_A = ((4, 2), (2, 2, 2), (3, 2, 1))
EX_A_VALUES = [1, 15, 128, 728, 2684, 6395, 9884, 9884, 6395, 2684, 728, 128, 15, 1]
EX_B = ((3, 2), (2, 2, 1), (4, 1))
EX_B_VALUES = [1, 8, 54, 281, 1027, 2531, 4179, 4584, 3331, 1613, 521, 114, 18, 2]
EX_C = ((3, 2), (2, 2, 1), (3, 1, 1))
EX_C_VALUES = [1, 4, 7, 7, 5, 3, 1]
G3_3_WINDOW = [1, 0, 1]
G3_3_START = [1, 1, 0, 1]
CONTROL = {"111,222": 148, "112,221": 4, "121,212": 4, "122,211": -4}


@dataclass
class Options:
    long: bool = False
    jobs: int = 1


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    seconds: float
    detail: dict = field(default_factory=dict)

    def line(self) -> str:
        return (f"[{'PASS' if self.passed else 'FAIL'}] {self.number:2d} {self.title} "
                f"({self.seconds:.1f} s)")

    def to_json(self) -> dict:
        return {"criterion": self.number, "title": self.title, "passed": self.passed,
                "seconds": round(self.seconds, 3), "detail": self.detail}


CRITERIA: dict[int, tuple[str, float | None, Callable[[Options], tuple[bool, dict]]]] = {}


def criterion(number: int, title: str, limit: float | None = None):
    def deco(fn):
        CRITERIA[number] = (title, limit, fn)
        return fn
    return deco


def _seq(lam, d, k, opts, indices=None, backend="characters"):
    return build_sequence(lam, d, k, backend=backend, jobs=opts.jobs, indices=indices).values


@criterion(1, "g_3(n,4) for n = 0..16", limit=600)
def _c1(opts):
    vals = _seq(((), (), ()), 3, 4, opts)
    rep = shape_report(vals)
    return vals == G3_4 and rep.unimodal and rep.symmetric, {"values": vals}


@criterion(2, "g_5(n,2) for n = 0..16", limit=600)
def _c2(opts):
    vals = _seq(((),) * 5, 5, 2, opts)
    return vals == G5_2, {"values": vals}


@criterion(3, "(4,2),(2,2,2),(3,2,1) with k = 4")
def _c3(opts):
    idx = None if opts.long else range(0, 5)
    vals = _seq(EX_A, 3, 4, opts, indices=idx)
    want = EX_A_VALUES if opts.long else EX_A_VALUES[:5]
    ok = vals == want
    if opts.long:
        ok &= shape_report(vals).symmetric
    return ok, {"values": vals, "full": opts.long}


@criterion(4, "(3,2),(2,2,1),(4,1) with k = 4: unimodal, not symmetric")
def _c4(opts):
    vals = _seq(EX_B, 3, 4, opts)
    rep = shape_report(vals)
    return vals == EX_B_VALUES and rep.unimodal and not rep.symmetric, {
        "values": vals, "unimodal": rep.unimodal, "symmetric": rep.symmetric}


@criterion(5, "(3,2),(2,2,1),(3,1,1) with k = 3, and g_3(n,3) is not unimodal")
def _c5(opts):
    vals = _seq(EX_C, 3, 3, opts)
    g33 = _seq(((), (), ()), 3, 3, opts, indices=range(4))
    # the window 1,0,1 starts at n = 1, since g_3(0,3) = g_3(1,3) = 1
    window = g33[1:4]
    ok = (vals == EX_C_VALUES and shape_report(vals).unimodal
          and g33 == G3_3_START and window == G3_3_WINDOW
          and not is_unimodal(window) and not is_unimodal(g33))
    return ok, {"values": vals, "g3_3": g33}


@criterion(6, "hwv and character backends agree, d = 3, m <= 5, parts <= 3", limit=300)
def _c6(opts):
    parts = [p for m in range(6) for p in partitions(m, max_part=3)]
    by_m: dict[int, list] = {}
    for p in parts:
        by_m.setdefault(sum(p), []).append(p)
    checked, bad = 0, []
    for group in by_m.values():
        for lam in itertools.product(group, repeat=3):
            a = hwv.kronecker_hwv(lam, 3, 3)
            b = charkron.kronecker_characters(lam, method="classes", reuse_coefficient=False)
            checked += 1
            if a != b:
                bad.append([list(map(list, lam)), a, b])
    return not bad and checked > 200, {"checked": checked, "discrepancies": bad}


@criterion(7, "sl(2) relations for d = 3, k = 2 and the k = 4 control", limit=60)
def _c7(opts):
    rep = sl2_check(3)
    unsigned = {X.to_text(): c for X, c in commutator_control(signed=False).items()}
    adjoint = {X.to_text(): c for X, c in commutator_control(signed=True).items()}
    ok = rep.holds and rep.checked == 256 and unsigned == CONTROL
    return ok, {"checked": rep.checked, "failures": len(rep.failures),
                "control_unsigned": unsigned, "control_adjoint": adjoint}


@criterion(8, "Cayley form identities")
def _c8(opts):
    w33 = cayley(3, 3)
    sq_zero = wedge(w33, w33).is_zero() and not w33.is_zero()
    at = alon_tarsi(3, 2)
    top = omega_power(3, 2, 4)
    vol_ok = set(top.terms) == {(1 << 8) - 1} and abs(top.coefficient((1 << 8) - 1)) == at.at
    sq = omega_power(3, 2, 2)
    magic2 = enumerate_magic_sets(3, 2, 2)
    in_magic = set(sq.terms) <= {T.mask for T in magic2}
    terms_ok = in_magic and all(abs(sq.coefficient(T)) == abs(at_number(T).at) for T in magic2)
    ok = sq_zero and vol_ok and at.negative == 0 and at.at > 0 and terms_ok
    return ok, {"omega33_squared_zero": sq_zero, "AT_3(2)": at.to_json(),
                "omega_top_coefficient": str(top.coefficient((1 << 8) - 1)),
                "omega_squared_terms": len(sq.terms)}


def _two_column_tuples(max_m):
    for m in range(max_m + 1):
        ps = [p for p in partitions(m, max_part=2) if len(p) <= 4]
        yield from itertools.product(ps, repeat=3)


@criterion(9, "LP and HLP verdicts")
def _c9(opts):
    full2 = check_lp_full(3, 2)
    hlp_bad = []
    count = 0
    for lam in _two_column_tuples(4):
        count += 1
        if not check_hlp(lam, 3, 2).holds:
            hlp_bad.append([list(p) for p in lam])
    f3, f4 = check_lp_full(3, 3), check_lp_full(3, 4)
    w3 = [w["vector"] for w in f3.witnesses if w["image_zero"]]
    w4 = [w["vector"] for w in f4.witnesses if w["image_zero"]]
    ok = (full2.holds and not hlp_bad and not f3.holds and "omega" in w3
          and not f4.holds and "slice" in w4)
    return ok, {"lp_full_3_2": full2.holds, "hlp_checked": count, "hlp_failures": hlp_bad,
                "lp_full_3_3": f3.holds, "witnesses_3_3": w3,
                "lp_full_3_4": f4.holds, "witnesses_3_4": w4}


@criterion(10, "Hodge duality")
def _c10(opts):
    N = 8
    star_ok = True
    for mask in range(1 << N):
        v = Multivector(3, 2, {mask: 1})
        n = mask.bit_count()
        sgn = -1 if (n * (N - n)) % 2 else 1
        if hodge_star(hodge_star(v)) != sgn * v:
            star_ok = False
    bad = []
    count = 0
    for lam in _two_column_tuples(3):
        comp = tuple(complement_in_rectangle(p, 4, 2) for p in lam)
        count += 1
        if hwv.kronecker_hwv(lam, 3, 2) != hwv.kronecker_hwv(comp, 3, 2):
            bad.append([list(p) for p in lam])
    return star_ok and not bad, {"star_star": star_ok, "tuples": count, "mismatches": bad}


def _brute_magic_counts():
    counts = [0] * 5
    for size in range(0, 9, 2):
        for combo in itertools.combinations(range(8), size):
            X = CubeSet(3, 2, sum(1 << r for r in combo))
            s = marginals(X)
            if all(len(set(v)) == 1 for v in s):
                counts[size // 2] += 1
    return counts


@criterion(11, "magic-set counts b_3(n) are symmetric and unimodal")
def _c11(opts):
    a, b = magic_counts(3, 2), magic_counts(3, 2)
    brute = _brute_magic_counts()
    ok = a == b == brute and a == a[::-1] and is_unimodal(a)
    return ok, {"counts": a, "brute_force": brute}


def direct_sum_pairs(long: bool):
    """Magic pairs (T1, T2) in [k1]^3 x [k2]^3, equal magnitude, at most 16 cells.

    Default: k1, k2 <= 2, plus pairs with a [3]^3 factor up to magnitude 2 whose
    partner has k <= 2.  ``long``: every k1, k2 <= 3.
    """
    ks = (1, 2, 3)
    for k1, k2 in itertools.product(ks, repeat=2):
        for n in range(0, min(k1 ** 2, k2 ** 2) + 1):
            if n * (k1 + k2) > 16:
                continue
            if not long and 3 in (k1, k2) and (n > 2 or (k1 == 3 and k2 == 3)):
                continue
            A = enumerate_magic_sets(3, k1, n)
            B = enumerate_magic_sets(3, k2, n)
            for T1 in A:
                for T2 in B:
                    yield T1, T2


@criterion(12, "AT is multiplicative under direct sum")
def _c12(opts):
    memo: dict = {}

    def at(T):
        key = (T.k, T.mask)
        if key not in memo:
            memo[key] = at_number(T).at
        return memo[key]

    count, bad = 0, []
    for T1, T2 in direct_sum_pairs(opts.long):
        count += 1
        if at_number(direct_sum(T1, T2)).at != at(T1) * at(T2):
            bad.append([T1.to_text(), T2.to_text()])
    return not bad, {"pairs": count, "failures": bad[:10], "long": opts.long}


def run_criterion(number: int, opts: Options | None = None) -> CriterionResult:
    opts = opts or Options()
    title, limit, fn = CRITERIA[number]
    t = time.perf_counter()
    try:
        ok, detail = fn(opts)
    except Exception as exc:  # a crash is a failed criterion, reported not raised
        ok, detail = False, {"error": f"{type(exc).__name__}: {exc}"}
    dt = time.perf_counter() - t
    if limit is not None and dt > limit:
        ok = False
        detail["time_limit_exceeded"] = limit
    detail = {k: _jsonable(v) for k, v in detail.items()}
    return CriterionResult(number, title, ok, dt, detail)


def _jsonable(v):
    if isinstance(v, list):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, int) and not isinstance(v, bool):
        return str(v)
    return v


def run_all(opts: Options | None = None, only: list[int] | None = None,
            echo: Callable[[str], None] | None = None) -> list[CriterionResult]:
    out = []
    for number in sorted(CRITERIA):
        if only and number not in only:
            continue
        res = run_criterion(number, opts)
        if echo:
            echo(res.line())
        out.append(res)
    return out
