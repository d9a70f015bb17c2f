"""Languages of substitution subshifts, and recoding to a system without
short self-overlaps.

Run: python3 demos/01_language_and_recoding.py
"""
from tfgroups import fibonacci, find_n0, recode, thue_morse

fib, tm = fibonacci(), thue_morse()

# The factor language is enumerated exactly from the two-block fixpoint.
for name, system in (("Fibonacci", fib), ("Thue-Morse", tm)):
    counts = [len(system.factors(n)) for n in range(1, 11)]
    print(f"{name}: |L_n| for n = 1..10 -> {counts}")
print("L_3(Fibonacci) =", sorted(fib.format_word(w) for w in fib.factors(3)))

# Fibonacci has complexity n + 1, the least possible for an aperiodic system.
print("aperiodicity witness:", fib.aperiodic, tm.aperiodic)

# Words of length five repeat letters over a two-letter alphabet, so the
# group constructions need a recoding. find_n0 picks the block length.
print("n0(Fibonacci) =", find_n0(fib), " n0(Thue-Morse) =", find_n0(tm))

y = recode(fib)
print(f"recoded Fibonacci has {len(y.alphabet)} symbols:")
for line in y.symbol_table():
    print("   ", line)
print("every 5-word of the recoded system has distinct letters:", y.satisfies_dagger())

w = fib.parse_word("abaababaab")
z = y.encode_word(w)
print(f"{fib.format_word(w)} -> {y.format_word(z)} -> {fib.format_word(y.decode_word(z))}")
