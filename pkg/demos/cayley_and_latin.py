"""Powers of the k = 2 Cayley form against signed Latin-cube counts."""

from kronlef.cayley import cayley, omega_power
from kronlef.cube import enumerate_magic_sets
from kronlef.latin import alon_tarsi, at_number

w = cayley(3, 2)
print("omega_{3,2}:")
for X, c in w.items():
    print(f"  {c:+} e[{X.to_text()}]")

for n in range(5):
    p = omega_power(3, 2, n)
    magic = enumerate_magic_sets(3, 2, n)
    pairs = [(T.to_text(), p.coefficient(T), at_number(T).at) for T in magic]
    print(f"\nomega^{n}: {len(p)} terms over {len(magic)} magic sets")
    for text, coef, at in pairs[:4]:
        print(f"  {text:<32} coefficient {coef!s:>4}   AT {at}")

print("\nAT_3(2) =", alon_tarsi(3, 2).to_json())
print("omega_{3,3} ^ omega_{3,3} == 0:", omega_power(3, 3, 2).is_zero())
