"""Elements of the topological full group as cocycles, and the word problem.

Run: python3 demos/02_group_arithmetic.py
"""
from tfgroups import (Cylinder, GeneratorSymbol, evaluate_word, fibonacci, recode,
                      sigma_cylinder, star, to_clopen)
from tfgroups.group import commutator, from_cocycle, membership_via_identity, shift_element

y = recode(fibonacci())

# sigma_U cycles U -> TU -> T^2 U -> U. Its cocycle is +1, +1, -2 on those sets.
c = Cylinder(y.words(3)[0], 1)
s = sigma_cylinder(y, c)
print(f"sigma{c.format(y)}: {s}")
print("order three:", (s ** 3).is_identity(), " s*s == s^-1:", s * s == s.inverse())

# The transposition eta_U swaps U and TU; its commutator with T is sigma_U.
U = to_clopen(y, c)
eta = from_cocycle([(U, 1), (U.shift(1), -1), (~(U | U.shift(1)), 0)])
print("[eta_U, T] == sigma_U:", commutator(eta, shift_element(y, 1)) == s)

# Words in generator tokens evaluate to exact elements; identity is f == 0.
word = [GeneratorSymbol(c), GeneratorSymbol(c.shifted(1)), GeneratorSymbol(c), GeneratorSymbol(c.shifted(1))]
print("(s_(w,1) s_(w,2))^2 is the identity:", evaluate_word(y, word).is_identity())

# Nested stars of two-letter sigmas detect membership in the language.
good, bad = y.words(5)[0], (0, 3, 6, 1, 5)
print(y.format_word(good), "->", membership_via_identity(y, good), "|",
      y.format_word(bad), "->", membership_via_identity(y, bad))
r, t = sigma_cylinder(y, Cylinder(good[:2], 0)), sigma_cylinder(y, Cylinder(good[1:4], 1))
print("sigma[.w0w1] * sigma(w1w2w3,1) == sigma(w0..w3,1):", star(r, t) == sigma_cylinder(y, Cylinder(good[:4], 1)))
