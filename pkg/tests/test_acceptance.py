"""Acceptance gate: ten criteria, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py`` (lines appear in the terminal
summary) or ``python3 tests/test_acceptance.py``.
"""
import random
import sys
import time
from itertools import product as cartesian
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from oracles import occurrence_gap_n0  # noqa: E402
from tfgroups.clopen import Cylinder, to_clopen  # noqa: E402
from tfgroups.errors import SeedOrbitNotSeparated  # noqa: E402
from tfgroups.group import (GeneratorSymbol, compose, evaluate_word, identity, inverse,  # noqa: E402
                            membership_via_identity, sigma, sigma_cylinder, star)
from tfgroups.presentation import (alt_report, enumerate_relators, evaluate_free_word,  # noqa: E402
                                   tietze_expand, verify_relators)
from tfgroups.recoder import find_n0, recode  # noqa: E402
from tfgroups.subshift import fibonacci  # noqa: E402
from tfgroups.towers import (SeedPoint, check_factorization, factor_product, kr_partition,  # noqa: E402
                             level_embedding_check, unique_decomposition, verify_kr)

RESULTS: dict[int, str] = {}

_X = fibonacci()
_Y = recode(_X)
_OMEGA = SeedPoint.parse(_X, "a.a:2")
_OMEGA2 = SeedPoint.parse(_X, "b.a:2")
_YOMEGA = _Y.encode_point(_OMEGA)
_YOMEGA2 = _Y.encode_point(_OMEGA2)


def record(k: int, ok: bool, detail: str) -> None:
    line = f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS[k] = line
    print(line)
    assert ok, line


def test_criterion_01_relator_soundness():
    t = time.perf_counter()
    p = enumerate_relators(_Y, 5, 2)
    rep = verify_relators(p)
    dt = time.perf_counter() - t
    counts = " ".join(f"{k}={v}" for k, v in p.counts().items())
    record(1, rep.passed and dt < 120,
           f"relator soundness W=5 depth=2: {rep.checked} relators ({counts}), "
           f"{len(rep.failures)} failures, {dt:.1f}s")


def test_criterion_02_word_problem_language():
    n = len(_Y.alphabet)
    total = bad = 0
    for m in (4, 5):
        for w in cartesian(range(n), repeat=m):
            total += 1
            bad += membership_via_identity(_Y, w) != _Y.contains(w)
    record(2, bad == 0, f"membership via identity vs oracle: {total} B-words, {bad} disagreements")


def _matui_hypotheses(U, V) -> bool:
    """U, TU, T^2U u V, TV, T^2V mutually disjoint."""
    sets = [U, U.shift(1), U.shift(2) | V, V.shift(1), V.shift(2)]
    return all(a.isdisjoint(b) for i, a in enumerate(sets) for b in sets[i + 1:])


def _random_matui_pair(rng):
    """Cylinders of radius <= 4; half the time V is read off the same word as T^2 U."""
    x = rng.choice(_Y.words(8))
    a = rng.randint(0, 7)
    b = rng.randint(a + 1, 8)
    U = Cylinder(x[a:b], 4 - a)
    if rng.random() < 0.5:
        c = rng.randint(2, 7)
        d = rng.randint(c + 1, 8)
        V = Cylinder(x[c:d], 6 - c)
    else:
        m = rng.randint(1, 4)
        V = Cylinder(rng.choice(_Y.words(m)), rng.randint(m - 4, 4))
    return U, V


def test_criterion_03_matui_lemma():
    rng = random.Random(2024)
    checked = skipped = nontrivial = bad = 0
    for _ in range(500):
        cu, cv = _random_matui_pair(rng)
        assert cu.radius <= 4 and cv.radius <= 4
        U, V = to_clopen(_Y, cu, 6), to_clopen(_Y, cv, 6)
        if not _matui_hypotheses(U, V):
            skipped += 1
            continue
        checked += 1
        W = U.shift(1) & V.shift(-1)
        nontrivial += not W.is_empty()
        bad += star(sigma(U), sigma(V)) != sigma(W)
    record(3, bad == 0 and checked > 0,
           f"Matui lemma: 500 pairs, {checked} checked ({nontrivial} with nonempty TU^T^-1V), "
           f"{skipped} skipped by hypotheses, {bad} failures")


def test_criterion_04_kr_partitions():
    fails = []
    for n in range(1, 5):
        p, finer = kr_partition(_OMEGA, n), kr_partition(_OMEGA, n + 1)
        if not verify_kr(p, finer):
            fails.append(f"level {n} axioms")
        if any(unique_decomposition(r, p.returns) is None for r in finer.returns):
            fails.append(f"level {n} decomposition")
    record(4, not fails, f"KR partitions, Fibonacci a.a:2 levels 1..4: {fails or 'all checks hold'}")


def test_criterion_05_level_embedding():
    res = {n: level_embedding_check(_YOMEGA, n) for n in (1, 2)}
    record(5, all(res.values()), f"level embedding on recoded Fibonacci: {res}")


def test_criterion_06_generation():
    total = bad = 0
    for m in (3, 4, 5):
        for w in _Y.words(m):
            for k in range(1, m):
                total += 1
                bad += evaluate_free_word(_Y, tietze_expand(_Y, w, k)) != sigma_cylinder(_Y, Cylinder(w, k))
    record(6, bad == 0, f"generation by L3 generators: {total} cylinders (w,k), {bad} failures")


def test_criterion_07_alt_oracle():
    reports = [alt_report(n) for n in (5, 6, 7)]
    orders = {r.n: r.order for r in reports}
    record(7, all(reports) and orders == {5: 60, 6: 360, 7: 2520}, f"Alt(n) oracle: orders {orders}")


def _random_product(rng):
    out = []
    for _ in range(rng.randint(1, 3)):
        m = rng.randint(1, 4)
        out.append(GeneratorSymbol(Cylinder(rng.choice(_Y.words(m)), rng.randint(-2, 4)), rng.choice((1, -1))))
    return out


def test_criterion_08_factorization():
    rng = random.Random(99)
    ok = aborted = bad = 0
    levels = set()
    for _ in range(100):
        word = _random_product(rng)
        try:
            fac = factor_product(word, _YOMEGA, _YOMEGA2)
        except SeedOrbitNotSeparated:
            aborted += 1
            continue
        if check_factorization(word, fac):
            ok += 1
            levels.add(fac.level)
        else:
            bad += 1
    record(8, bad == 0, f"P.Q factorization: {ok} ok, {bad} failures, {aborted} aborted, "
                        f"levels {sorted(levels)}")


def test_criterion_09_recoding():
    dagger = all(len(set(w)) == 5 for w in _Y.factors(5))
    conj = True
    n0 = _Y.n0
    for m in range(1, 25):
        for w in _X.factors(m + n0):
            z, z2 = _Y.encode_word(w[:-1]), _Y.encode_word(w[1:])
            conj &= z2[:-1] == z[1:] and _Y.encode_word(w) == z + z2[-1:]
    oracle = occurrence_gap_n0(_X.substitution, 12)
    record(9, dagger and conj and find_n0(_X) == oracle,
           f"recoding: dagger over L5(Y)={dagger}, window conjugacy to radius 12={conj}, "
           f"find_n0={find_n0(_X)} oracle={oracle}")


def _cocycle_identity_holds(g, h, gh) -> bool:
    """f_gh(z) = f_g(T^{f_h(z)} z) + f_h(z) on every centered word, by slicing."""
    R = max(gh.radius, h.radius, g.radius + (h.max_shift if not h.is_identity() else 0))
    for z in _Y.words(2 * R):
        k = h.value(z)
        window = z[R + k - g.radius:R + k + g.radius]
        if gh.value(z) != g.value(window) + k:
            return False
    return True


def _random_element(rng):
    syms = []
    for _ in range(rng.randint(1, 3)):
        m = rng.randint(1, 3)
        c = Cylinder(rng.choice(_Y.words(m)), rng.randint(m - 2, 2))
        syms.append(GeneratorSymbol(c, rng.choice((1, -1))))
    return evaluate_word(_Y, syms)


def test_criterion_10_group_arithmetic():
    rng = random.Random(7)
    e = identity(_Y)
    fails = compositions = 0
    for _ in range(1000):
        a, b, c = (_random_element(rng) for _ in range(3))
        ab, bc = compose(a, b), compose(b, c)
        left, right = compose(ab, c), compose(a, bc)
        ai = inverse(a)
        pairs = [(a, b, ab), (b, c, bc), (ab, c, left), (a, bc, right), (a, ai, compose(a, ai))]
        compositions += len(pairs)
        ok = (left == right and compose(a, ai) == e and compose(ai, a) == e
              and compose(e, a) == a and compose(a, e) == a
              and all(_cocycle_identity_holds(g, h, gh) for g, h, gh in pairs))
        fails += not ok
    record(10, fails == 0, f"group axioms: 1000 triples, {compositions} compositions cocycle-checked, "
                           f"{fails} failures")


if __name__ == "__main__":
    status = 0
    for name, fn in sorted((k, v) for k, v in globals().items() if k.startswith("test_criterion")):
        try:
            fn()
        except AssertionError:
            status = 1
    sys.exit(status)
