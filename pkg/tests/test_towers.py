import random
from collections import deque
from math import factorial

import pytest

from oracles import iterate_word
from tfgroups.clopen import Cylinder, to_clopen
from tfgroups.errors import InvalidSeed, NotInLanguage, SeedOrbitNotSeparated, TowerTooShort
from tfgroups.group import GeneratorSymbol, evaluate_word, identity, sigma_cylinder
from tfgroups.towers import (KRPartition, SeedPoint, check_factorization, decompositions, factor_product,
                             first_tall_level, is_tower_interior, kr_partition, level_embedding_check,
                             orbits_separated, point_window, recurrence_bound, return_words,
                             supported_in, tower_3cycles, tower_cylinders, unique_decomposition, verify_kr)


def text_returns(text, u, v):
    """Return words read off consecutive occurrences of uv in a long text."""
    uv = u + v
    pos = [i for i in range(len(text) - len(uv) + 1) if text[i:i + len(uv)] == uv]
    return {text[p + len(u):q + len(u)] for p, q in zip(pos, pos[1:])}


def test_seed_windows(fib, omega):
    assert point_window(omega, 1) == fib.parse_word("aab")
    assert fib.contains(omega.segment(-1, 1))
    for n in range(1, 9):
        assert fib.contains(omega.window(n))
        assert omega.window(n + 1)[1:-1] == omega.window(n)
    assert repr(omega) == "SeedPoint(a.a:2)"
    assert omega == SeedPoint.parse(fib, "a.a:2")


def test_invalid_seeds(fib):
    for text in ("b.b:2", "a.b:1", "a.a:0", "a.a", "a.c:2"):
        with pytest.raises(InvalidSeed):
            SeedPoint.parse(fib, text)


def test_recurrence_bound(fib):
    assert recurrence_bound(fib, fib.parse_word("aa")) == 6
    # "bb" is not a factor, so every 2-word already contains "a"
    assert recurrence_bound(fib, fib.parse_word("a")) == 2
    for w in fib.factors(4):
        ell = recurrence_bound(fib, w)
        assert all(any(x[j:j + 4] == w for j in range(ell - 3)) for x in fib.factors(ell))
        assert not all(any(x[j:j + 4] == w for j in range(ell - 4)) for x in fib.factors(ell - 1))
        assert recurrence_bound(fib, w[:3]) <= ell
    with pytest.raises(NotInLanguage):
        recurrence_bound(fib, fib.parse_word("bb"))


def test_return_words_against_text(fib, tm):
    a = fib.parse_word("a")
    assert set(return_words(fib, a, a)) == {fib.parse_word("aba"), fib.parse_word("ababa")}
    for system in (fib, tm):
        text = iterate_word(system.substitution, 16)
        for m in (2, 3, 4):
            for uv in system.factors(m):
                for cut in range(0, m):
                    u, v = uv[:cut], uv[cut:]
                    got = return_words(system, u, v)
                    assert set(got) == text_returns(text, u, v)
                    for r in got:
                        assert system.contains(u + r + v)
                        assert to_clopen(system, Cylinder(u + r + v, len(u))).issubset(
                            to_clopen(system, Cylinder(u + v, len(u))))
    with pytest.raises(NotInLanguage):
        return_words(fib, fib.parse_word("b"), fib.parse_word("b"))


def test_overlapping_returns(fib):
    # returns to a.a include "aba" of length 3 > 2, but b.a returns "ba" overlap the next occurrence
    rets = return_words(fib, fib.parse_word("a"), fib.parse_word("ba"))
    assert any(len(r) < 3 for r in rets)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_kr_fibonacci(omega, n):
    p, finer = kr_partition(omega, n), kr_partition(omega, n + 1)
    assert p.u == omega.segment(-n, 0) and p.v == omega.segment(0, n + 1)
    rep = verify_kr(p, finer)
    assert rep, rep
    for r in finer.returns:
        assert unique_decomposition(r, p.returns) is not None
    # atom member counts at a common radius add up to every window once
    radius = p.radius()
    total = sum(int(to_clopen(p.system, c, radius).mask.sum()) for _, _, c in p.atoms())
    assert total == len(omega.system.words(2 * radius))
    assert [h for _, h, _ in p.table()] == [len(r) for r in p.returns]


def test_kr_heights_nondecreasing(omega, yomega):
    for point in (omega, yomega):
        mins = [kr_partition(point, n).min_height for n in range(1, 5)]
        assert mins == sorted(mins)


def test_kr_recoded(yomega):
    for n in (1, 2, 3):
        assert verify_kr(kr_partition(yomega, n), kr_partition(yomega, n + 1))


def test_kr_mutation_detected(omega):
    p = kr_partition(omega, 2)
    broken = KRPartition(p.system, p.level, p.u, p.v, p.returns[:-1])
    assert not verify_kr(broken).partition
    assert verify_kr(p, kr_partition(omega, 4))  # refinement across two levels also holds


def test_decompositions():
    blocks = [(0,), (0, 1), (1,)]
    assert len(decompositions((0, 1), blocks)) == 2
    assert unique_decomposition((0, 1), blocks) is None
    assert unique_decomposition((1, 1), blocks) == ((1,), (1,))


def test_tower_3cycles(omega, fib):
    p = kr_partition(omega, 1)
    cycles = tower_3cycles(p)
    e = identity(fib)
    assert all(g ** 3 == e for g in cycles)
    cyl = tower_cylinders(p)
    for (r, i, c), g in zip(cyl, cycles):
        for (r2, j, d), h in zip(cyl, cycles):
            if r != r2:
                assert g * h == h * g


def closure_order(gens, e, limit=5000):
    seen = {e}
    queue = deque([e])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = g * x
            if y not in seen:
                seen.add(y)
                queue.append(y)
                if len(seen) > limit:
                    return len(seen)
    return len(seen)


def test_tower_group_orders(tm):
    point = SeedPoint.parse(tm, "b.a:2")
    p = kr_partition(point, 1)
    e = identity(tm)
    by_tower = {}
    for (r, i, c) in tower_cylinders(p):
        by_tower.setdefault(r, []).append(sigma_cylinder(tm, c))
    checked = []
    for r, gens in by_tower.items():
        h = len(r)
        if h <= 7:
            assert closure_order(gens, e) == factorial(h) // 2
            checked.append(h)
    assert sorted(checked) == [3, 5, 7]


def test_tower_too_short(fib):
    point = SeedPoint.parse(fib, "a.a:2")
    p = KRPartition(fib, 1, point.segment(-1, 0), point.segment(0, 2),
                    return_words(fib, point.segment(-1, 0), point.segment(0, 1)))
    if p.min_height < 3:
        with pytest.raises(TowerTooShort):
            tower_cylinders(p)
    assert first_tall_level(point, 3) == 1
    assert first_tall_level(point, 8) == 3


@pytest.mark.parametrize("n", [1, 2])
def test_level_embedding(yomega, n):
    assert level_embedding_check(yomega, n)


def test_level_embedding_mutation(yomega, yfib):
    from tfgroups.towers import embedding_factors
    # levels 1..4 share their towers; level 5 is the first to split atoms
    coarse, fine = kr_partition(yomega, 4), kr_partition(yomega, 5)
    _, _, c = tower_cylinders(coarse)[0]
    parts = embedding_factors(coarse, fine, c)
    assert len(parts) > 1
    whole = evaluate_word(yfib, [GeneratorSymbol(d) for d in parts])
    assert whole == sigma_cylinder(yfib, c)
    assert whole.support() == sigma_cylinder(yfib, c).support()
    assert evaluate_word(yfib, [GeneratorSymbol(d) for d in parts[1:]]) != sigma_cylinder(yfib, c)


def test_orbit_check(omega, omega2, yomega):
    assert orbits_separated(omega, omega2)
    assert not orbits_separated(omega, omega)
    # the two points share a right tail, so a short window is fooled
    assert not orbits_separated(omega, omega2, depth=64, radius=16)


def random_product(y, rng, k):
    out = []
    for _ in range(k):
        m = rng.randint(1, 4)
        out.append(GeneratorSymbol(Cylinder(rng.choice(y.words(m)), rng.randint(-2, 4)), rng.choice((1, -1))))
    return out


def test_factor_product(yfib, yomega, yomega2):
    rng = random.Random(12)
    for _ in range(8):
        word = random_product(yfib, rng, 2)
        fac = factor_product(word, yomega, yomega2)
        assert check_factorization(word, fac)
        P, Q = fac
        pe, qe = evaluate_word(yfib, P), evaluate_word(yfib, Q)
        assert pe * qe == evaluate_word(yfib, word)
        assert is_tower_interior(pe, fac.partition)
        assert supported_in(qe, fac.boundary)


def test_factor_tower_interior_word(yfib, yomega, yomega2):
    p = kr_partition(yomega, 5)
    r = p.returns[-1]
    word = [GeneratorSymbol(p.atom(r, len(r) // 2))]
    fac = factor_product(word, yomega, yomega2)
    assert fac.q_word == []
    assert check_factorization(word, fac)


def test_factor_needs_distinct_orbits(yomega):
    with pytest.raises(SeedOrbitNotSeparated):
        factor_product([GeneratorSymbol(Cylinder((0, 3, 6), 1))], yomega, yomega)


def test_factor_empty_word(yfib, yomega, yomega2):
    fac = factor_product([GeneratorSymbol(Cylinder((0, 0), 1))], yomega, yomega2)
    assert fac.p_word == [] and fac.q_word == [] and check_factorization([], fac)
