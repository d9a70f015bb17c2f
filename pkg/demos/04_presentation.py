"""Tietze expansion onto the L_3 generators, relator emission and checking,
and the alternating-group model.

Run: python3 demos/04_presentation.py
"""
import time

from tfgroups import (Cylinder, alt_presentation_check, enumerate_relators, export_presentation, fibonacci,
                      recode, sigma_cylinder, tietze_expand, verify_relators)
from tfgroups.presentation import evaluate_free_word, free_word_tokens

y = recode(fibonacci())
gens = y.words(3)

w = y.words(5)[2]
for k in range(1, 5):
    fw = tietze_expand(y, w, k)
    same = evaluate_free_word(y, fw) == sigma_cylinder(y, Cylinder(w, k))
    print(f"x{Cylinder(w, k).format(y)}: {len(fw)} letters over L_3, evaluates correctly: {same}")
print("x(w,1) =", free_word_tokens(tietze_expand(y, w, 1), gens))

t = time.perf_counter()
p = enumerate_relators(y, 4, 1)
rep = verify_relators(p)
print(f"W=4 depth=1: {p.counts()}  failures={len(rep.failures)}  ({time.perf_counter() - t:.1f}s)")
print("\n".join(export_presentation(p, "fibonacci.json").splitlines()[:4]), "\n...")

# The 3-cycles (i, i+1, i+2) satisfy the same relation schema and generate Alt(n).
print("Alt(n) model holds for n = 5..8:", [alt_presentation_check(n) for n in range(5, 9)])
