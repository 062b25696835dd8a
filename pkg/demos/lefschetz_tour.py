"""Lefschetz maps on highest weight spaces and the sl(2) picture for k = 2."""

from kronlef.lefschetz import (check_hlp, check_lp, check_lp_full, commutator_control,
                               lefschetz_decomposition_dims, sl2_check)

v = check_lp(((2, 1), (2, 1), (2, 1)), 3, 2)
print("LP for (2,1)^3, k = 2:", v.holds, "dims", v.dims, "ranks", v.ranks)
print("HLP for the empty tuple:", check_hlp(((), (), ()), 3, 2).holds)

for k in (2, 3, 4):
    f = check_lp_full(3, k)
    zero = [w["vector"] for w in f.witnesses if w["image_zero"]]
    print(f"full-algebra LP, k = {k}: {f.holds}  zero-image witnesses: {zero}")

rep = sl2_check(3)
print("sl(2) relations on", rep.checked, "basis vectors:", rep.holds)
print("decomposition of grade 4, d = 3:", lefschetz_decomposition_dims(3, 4))

for signed in (False, True):
    ctl = commutator_control(signed=signed)
    print("k = 4 commutator", "adjoint" if signed else "unsigned",
          {X.to_text(): c for X, c in ctl.items()})
