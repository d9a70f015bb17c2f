"""Return words, Kakutani-Rokhlin towers, and the P.Q factorization.

Run: python3 demos/03_towers_and_factorization.py
"""
import random

from tfgroups import Cylinder, GeneratorSymbol, SeedPoint, fibonacci, factor_product, recode
from tfgroups.group import format_generator_word
from tfgroups.towers import check_factorization, kr_partition, level_embedding_check, verify_kr

fib = fibonacci()
omega = SeedPoint.parse(fib, "a.a:2")
print("omega[-8..8] =", fib.format_word(omega.window(8)))

# Towers are indexed by return words to u.v = omega[-n..-1].omega[0..n].
for n in range(1, 5):
    p = kr_partition(omega, n)
    rets = ", ".join(fib.format_word(r) for r in p.returns)
    ok = bool(verify_kr(p, kr_partition(omega, n + 1)))
    print(f"level {n}: u.v = {fib.format_word(p.u)}.{fib.format_word(p.v)}  returns {{{rets}}}  verified={ok}")

# In the recoded system, each tower 3-cycle of level n is the product of the
# level-(n+1) 3-cycles inside it.
y = recode(fib)
yomega = y.encode_point(omega)
print("level embedding n=1:", level_embedding_check(yomega, 1))

# A product of generators splits as P (inside towers around omega) times Q
# (near the base, away from a second point from another orbit).
yomega2 = y.encode_point(SeedPoint.parse(fib, "b.a:2"))
rng = random.Random(0)
word = [GeneratorSymbol(Cylinder(rng.choice(y.words(3)), 1), rng.choice((1, -1))) for _ in range(2)]
fac = factor_product(word, yomega, yomega2)
print("input:", format_generator_word(word))
print(f"level {fac.level}: |P| = {len(fac.p_word)}, |Q| = {len(fac.q_word)}, "
      f"checks out: {check_factorization(word, fac)}")
