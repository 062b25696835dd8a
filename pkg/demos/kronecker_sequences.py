"""Rectangular and shifted Kronecker sequences with their shape verdicts."""

import sys

from kronlef.charkron import kronecker_characters
from kronlef.hwv import kronecker_hwv
from kronlef.seqlab import build_sequence, k_complementary, rho, shape_report

lam = ((2, 1), (2, 1), (2, 1))
print("g((2,1)^3) by two routes:", kronecker_hwv(lam, 3, 3), kronecker_characters(lam))
print("rho_3 twice:", rho(lam, 3, 2))

cases = [((), (), ()), ((3, 2), (2, 2, 1), (3, 1, 1))]
for tup in cases:
    seq = build_sequence(tup, 3, 3)
    rep = shape_report(seq)
    print(f"\n{tup} with k = 3")
    print("  values:", seq.values, "via", seq.backends)
    print(f"  unimodal={rep.unimodal} symmetric={rep.symmetric} "
          f"log-concave at {rep.log_concave_at}")

# k-complementary tuples (even k) give symmetric sequences
sym = ((2, 1, 1), (2, 1, 1), (2, 2))
print(f"\n{sym}: complementary for k = 2 is {k_complementary(sym, 3, 2)}")
print("  values:", build_sequence(sym, 3, 2).values)

if "--big" in sys.argv:
    seq = build_sequence(((), (), ()), 3, 4)
    print("\ng_3(n,4):", seq.values, shape_report(seq))
