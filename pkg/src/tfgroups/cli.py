"""Command-line front end: ``tfgroups <command> --system FILE [options]``.

Exit status is 0 on success, 1 on a domain error (or a failed
verification), 2 on a configuration error.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import presentation as pres
from .errors import TFGError
from .group import (GeneratorSymbol, evaluate_word, format_generator_word, parse_generator_word,
                    word_problem)
from .clopen import Cylinder
from .recoder import RecodedSubshift, find_n0
from .subshift import SubstitutionSubshift, is_primitive
from .towers import (SeedPoint, check_factorization, factor_product, kr_partition, recurrence_bound,
                     return_words, unique_decomposition, verify_kr)

COMMANDS = ("check-system", "recode", "factors", "member", "returns", "kr", "sigma-eval",
            "wordproblem", "relators", "verify-relators", "tietze", "factorize", "alt-check")


class ConfigError(Exception):
    pass


def _offsets(text: str) -> tuple[int, int]:
    try:
        a, b = text.split("..")
        lo, hi = int(a), int(b)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a..b, got {text!r}") from None
    if lo > hi:
        raise argparse.ArgumentTypeError("empty offset range")
    return lo, hi


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _nonnegative(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tfgroups", description=__doc__.splitlines()[0])
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--system", help="substitution JSON file")
    ap.add_argument("--max-word-len", type=_positive, default=3, metavar="W")
    ap.add_argument("--depth", type=_nonnegative, default=0, help="refinement depth for R4")
    ap.add_argument("--offsets", type=_offsets, default=None, metavar="a..b")
    ap.add_argument("--seed-point", action="append", default=[], metavar="b.a:p")
    ap.add_argument("--out", help="write the main output here instead of stdout")
    ap.add_argument("--seed", type=int, default=0, help="seed for randomized sweeps")
    ap.add_argument("--ceiling", type=_positive, default=32, help="search ceiling")
    ap.add_argument("--word", help="a word, or a generator-token word")
    ap.add_argument("--word-file", help="read --word from a file")
    ap.add_argument("--length", type=_positive, help="word length for factors")
    ap.add_argument("--level", type=_positive, help="KR level")
    ap.add_argument("--offset", type=int, default=1, help="offset k for tietze")
    ap.add_argument("--n", type=int, default=5, help="degree for alt-check")
    ap.add_argument("--samples", type=_positive, default=10, help="random products for factorize")
    ap.add_argument("--recoded", action="store_true", help="work in the recoded system")
    return ap


class Context:
    def __init__(self, args):
        self.args = args
        if not args.system:
            raise ConfigError("--system is required")
        path = Path(args.system)
        try:
            self.base = SubstitutionSubshift.from_json(path)
        except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot load {path}: {exc}") from None
        self._recoded = None

    @property
    def recoded(self) -> RecodedSubshift:
        if self._recoded is None:
            self._recoded = RecodedSubshift(self.base, ceiling=self.args.ceiling)
        return self._recoded

    @property
    def system(self):
        return self.recoded if self.args.recoded else self.base

    def word_text(self) -> str:
        a = self.args
        if a.word_file:
            try:
                return Path(a.word_file).read_text(encoding="utf-8").strip()
            except OSError as exc:
                raise ConfigError(f"cannot read {a.word_file}: {exc}") from None
        if a.word is None:
            raise ConfigError("--word or --word-file is required")
        return a.word

    def word(self, system=None):
        system = system or self.system
        try:
            return system.parse_word(self.word_text())
        except ValueError as exc:
            raise ConfigError(str(exc)) from None

    def generator_word(self):
        text = self.word_text()
        # a relator line from the export format is accepted as is
        if ":" in text and text.startswith("rel"):
            text = text.split(":", 1)[1]
        try:
            return parse_generator_word(text)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None

    def seeds(self, count: int):
        specs = self.args.seed_point
        if len(specs) < count:
            raise ConfigError(f"need {count} --seed-point option(s)")
        points = [SeedPoint.parse(self.base, s) for s in specs[:count]]
        if self.args.recoded or self.args.command == "factorize":
            points = [self.recoded.encode_point(p) for p in points]
        return points

    def level(self) -> int:
        if self.args.level is None:
            raise ConfigError("--level is required")
        return self.args.level


def _yes(b: bool) -> str:
    return "true" if b else "false"


def cmd_check_system(ctx, out):
    x = ctx.base
    out.append(f"primitive={_yes(is_primitive(x.substitution))}")
    out.append(f"aperiodic={_yes(x.aperiodic)} (witness depth {x.aperiodicity_depth})")
    out.append("complexity=" + " ".join(str(len(x.factors(n))) for n in range(1, 9)))
    out.append(f"dagger={_yes(x.satisfies_dagger())}")
    out.append(f"n0={find_n0(x, ctx.args.ceiling)}")


def cmd_recode(ctx, out):
    y = ctx.recoded
    out.append(f"n0={y.n0}")
    out.extend(y.symbol_table())


def cmd_factors(ctx, out):
    if ctx.args.length is None:
        raise ConfigError("--length is required")
    s = ctx.system
    out.extend(s.format_word(w) for w in s.words(ctx.args.length))


def cmd_member(ctx, out):
    out.append(_yes(ctx.system.contains(ctx.word())))


def cmd_returns(ctx, out):
    s = ctx.system
    if ctx.args.seed_point:
        p = kr_partition(ctx.seeds(1)[0], ctx.level())
        u, v, rets = p.u, p.v, p.returns
    else:
        text = ctx.word_text()
        if "." not in text:
            raise ConfigError("give --seed-point and --level, or --word u.v")
        left, right = text.split(".", 1)
        u, v = s.parse_word(left) if left else (), s.parse_word(right)
        rets = return_words(s, u, v)
    out.append(f"u.v={s.format_word(u)}.{s.format_word(v)} recurrence={recurrence_bound(s, u + v)}")
    out.extend(f"{s.format_word(r)} (height {len(r)})" for r in rets)


def cmd_kr(ctx, out):
    point = ctx.seeds(1)[0]
    n = ctx.level()
    p, finer = kr_partition(point, n), kr_partition(point, n + 1)
    s = p.system
    out.append(f"level={n} u.v={s.format_word(p.u)}.{s.format_word(p.v)} towers={len(p.returns)}")
    for r, h, size in p.table():
        out.append(f"tower {r} height={h} base_windows={size}")
    rep = verify_kr(p, finer)
    out.append(f"partition={_yes(rep.partition)} tower_mapping={_yes(rep.tower_mapping)} "
               f"top_returns={_yes(rep.top_returns)} refines={_yes(rep.refines)} "
               f"base_nested={_yes(rep.base_nested)}")
    unique = all(unique_decomposition(r, p.returns) is not None for r in finer.returns)
    out.append(f"unique_decomposition={_yes(unique)}")
    return 0 if rep and unique else 1


def cmd_sigma_eval(ctx, out):
    y = ctx.recoded
    g = evaluate_word(y, ctx.generator_word())
    if g.is_identity():
        out.append("identity")
        return
    out.append(f"radius={g.radius} moved={int((g.shifts != 0).sum())}/{len(g.shifts)}")
    for z, k in zip(y.words(2 * g.radius), g.shifts):
        if k:
            out.append(f"{y.format_word(z[:g.radius])} . {y.format_word(z[g.radius:])} -> {int(k):+d}")


def cmd_wordproblem(ctx, out):
    out.append("identity" if word_problem(ctx.recoded, ctx.generator_word()) else "not identity")


def _presentation(ctx):
    a = ctx.args
    return pres.enumerate_relators(ctx.recoded, a.max_word_len, a.depth, a.offsets)


def cmd_relators(ctx, out):
    p = _presentation(ctx)
    out.append(pres.export_presentation(p, Path(ctx.args.system).name).rstrip("\n"))


def cmd_verify_relators(ctx, out):
    p = _presentation(ctx)
    rep = pres.verify_relators(p)
    counts = " ".join(f"{t}={c}" for t, c in p.counts().items())
    out.append(f"relators={rep.checked} {counts}")
    for i, r in rep.failures:
        out.append(f"FAIL {i} {r.tag}: {r.describe(ctx.recoded)}")
    out.append(f"failures={len(rep.failures)}")
    return 0 if rep else 1


def cmd_tietze(ctx, out):
    y = ctx.recoded
    w = ctx.word(y)
    fw = pres.tietze_expand(y, w, ctx.args.offset)
    out.append(pres.free_word_tokens(fw, pres.base_generators(y)) if fw else "e")


def _random_product(y, rng):
    out = []
    for _ in range(rng.randint(1, 3)):
        m = rng.randint(1, 4)
        w = rng.choice(y.words(m))
        out.append(GeneratorSymbol(Cylinder(w, rng.randint(-2, 4)), rng.choice((1, -1))))
    return out


def cmd_factorize(ctx, out):
    y = ctx.recoded
    point, other = ctx.seeds(2)
    if ctx.args.word or ctx.args.word_file:
        words = [ctx.generator_word()]
    else:
        rng = random.Random(ctx.args.seed)
        words = [_random_product(y, rng) for _ in range(ctx.args.samples)]
    status = 0
    for word in words:
        fac = factor_product(word, point, other)
        ok = check_factorization(word, fac)
        status |= not ok
        out.append(f"word: {format_generator_word(word)}")
        out.append(f"level={fac.level} |P|={len(fac.p_word)} |Q|={len(fac.q_word)} check={_yes(ok)}")
        out.append(f"P: {format_generator_word(fac.p_word)}")
        out.append(f"Q: {format_generator_word(fac.q_word)}")
    return status


def cmd_alt_check(ctx, out):
    rep = pres.alt_report(ctx.args.n)
    rels = " ".join(f"{k}={_yes(v)}" for k, v in rep.relations.items())
    out.append(f"n={rep.n} order={rep.order} expected={rep.expected_order} {rels}")
    out.append(_yes(rep.passed))
    return 0 if rep else 1


HANDLERS = {
    "check-system": cmd_check_system, "recode": cmd_recode, "factors": cmd_factors,
    "member": cmd_member, "returns": cmd_returns, "kr": cmd_kr, "sigma-eval": cmd_sigma_eval,
    "wordproblem": cmd_wordproblem, "relators": cmd_relators, "verify-relators": cmd_verify_relators,
    "tietze": cmd_tietze, "factorize": cmd_factorize, "alt-check": cmd_alt_check,
}


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    out: list[str] = []
    try:
        if args.command == "alt-check":
            if args.n < 5:
                raise ConfigError("--n must be at least 5")
            ctx = argparse.Namespace(args=args)
        else:
            ctx = Context(args)
        status = HANDLERS[args.command](ctx, out) or 0
    except ConfigError as exc:
        print(f"error: {exc}", file=stderr)
        return 2
    except TFGError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=stderr)
        return 1
    text = "\n".join(out) + "\n"
    if args.out:
        try:
            Path(args.out).write_text(text, encoding="utf-8")
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc}", file=stderr)
            return 2
    else:
        stdout.write(text)
    return status


def main() -> None:
    sys.exit(run())
