"""Command-line interface: `misere <command> ...`.

Exit codes: 0 on success, 1 when a verification is refuted, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Optional, Sequence

from . import genus as genus_mod
from . import heaps, identities, positions, quotient, star
from .expressions import GRAMMAR, ExpressionError, parse_expression, parse_position
from .outcomes import Outcome, misere_outcome, normal_outcome, set_memo_cap

SCHEMA_VERSION = 1


class UsageError(Exception):
    pass


def _emit(args, data: dict, text: str) -> None:
    if args.json:
        data = dict(data, schema_version=SCHEMA_VERSION, command=args.command)
        print(json.dumps(data, sort_keys=True, indent=2))
    else:
        print(text, end="" if text.endswith("\n") else "\n")


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _generators(exprs: Sequence[str]) -> list[int]:
    if not exprs:
        raise UsageError("at least one generator (-g EXPR) is required")
    return [parse_position(e) for e in exprs]


# ---------------------------------------------------------------------------
# Commands


def cmd_outcome(args) -> int:
    s = parse_expression(args.expr)
    mis = misere_outcome(s)
    nor = normal_outcome(s)
    text = f"{nor.value}" if args.normal else f"{mis.value}"
    if args.both:
        text = f"misere {mis.value}\nnormal {nor.value}"
    _emit(args, {"expression": args.expr, "misere": mis.value, "normal": nor.value}, text)
    return 0


def cmd_props(args) -> int:
    p = parse_position(args.expr)
    prof = positions.profile(p).to_dict()
    data = {
        "expression": args.expr,
        "canonical": positions.format_position(p),
        "profile": prof,
        "misere": misere_outcome(p).value,
        "normal": normal_outcome(p).value,
        "star_built": star.is_star_built(p),
    }
    lines = [f"position   {data['canonical']}"]
    lines += [f"{k:<10} {v}" for k, v in prof.items()]
    lines += [f"misere     {data['misere']}", f"normal     {data['normal']}",
              f"star_built {data['star_built']}"]
    _emit(args, data, "\n".join(lines))
    return 0


def cmd_genus(args) -> int:
    p = parse_position(args.expr)
    g = genus_mod.genus(p, max_digits=args.max_digits)
    _emit(args, {"expression": args.expr, "genus": g.to_dict()}, str(g))
    return 0


def cmd_tame(args) -> int:
    p = parse_position(args.expr)
    tame = genus_mod.is_tame(p)
    _emit(args, {"expression": args.expr, "tame": tame}, "tame" if tame else "wild")
    return 0


def _quotient_text(q: quotient.QuotientReport) -> str:
    lines = [f"generators: {', '.join(q.generators)}"]
    lines.append("symbols: " + ", ".join(f"{s}={l}" for s, l in zip(q.symbols, q.labels)))
    lines.append(f"status: {q.status} (sum bound {q.sum_bound}, context bound {q.context_bound})")
    lines.append(f"classes ({len(q.classes)}): " +
                 ", ".join(f"{c.word}[{c.outcome.value}]" for c in q.classes))
    lines.append("relations: " + (", ".join(f"{a}={b}" for a, b in q.relations) or "none"))
    for o, words in q.tetrapartition.items():
        lines.append(f"  {o}: {{{', '.join(words)}}}")
    lines.append(quotient.CERTIFICATE_NOTE)
    return "\n".join(lines)


def cmd_monoid(args) -> int:
    q = quotient.compute_quotient(_generators(args.generator), args.sum_bound,
                                  args.context_bound)
    _emit(args, {"quotient": q.to_dict()}, _quotient_text(q))
    return 0


def cmd_poset(args) -> int:
    q = quotient.compute_quotient(_generators(args.generator), args.sum_bound,
                                  args.context_bound)
    try:
        p = quotient.compute_poset(q, allow_unstabilized=args.allow_unstabilized)
    except quotient.UnsupportedInputError as err:
        raise UsageError(str(err)) from None
    if args.dot:
        print(p.to_dot(), end="")
        return 0
    d = p.to_dict()
    lines = ["covers (greater > lesser):"]
    lines += [f"  {a} > {b}" for a, b in d["covers"]]
    lines += [f"{k}: {v}" for k, v in d["properties"].items()]
    for pair, w in d["incomparable"].items():
        lines.append(f"incomparable {pair}: contexts {w[0]}, {w[1]}")
    _emit(args, {"poset": d, "quotient": q.to_dict()}, "\n".join(lines))
    return 0


def cmd_star(args) -> int:
    mode = args.mode
    if mode == "classify":
        p = parse_position(_one(args.args))
        built = star.is_star_built(p)
        data = {"star_built": built}
        if built or p == positions.ZERO:
            data["image"] = star.star_image(p).value
        _emit(args, data, f"star_built {built}" + (f"\nimage {data['image']}"
                                                   if "image" in data else ""))
        return 0
    if mode == "sum":
        s = parse_expression(_one(args.args))
        try:
            via = star.sum_outcome_via_star(list(s))
        except star.ClassificationError as err:
            raise UsageError(str(err)) from None
        direct = misere_outcome(s)
        _emit(args, {"via_star": via.value, "direct": direct.value}, via.value)
        return 0 if via == direct else 1
    if mode == "enumerate":
        day = int(_one(args.args))
        try:
            found = star.enumerate_star_built(day, cap=args.cap)
        except star.ResourceLimitError as err:
            raise UsageError(str(err)) from None
        texts = [positions.format_position(p) for p in found]
        _emit(args, {"day": day, "count": len(found), "positions": texts},
              "\n".join(texts + [f"# {len(found)} positions"]))
        return 0
    if mode == "iso":
        gens = [parse_position(e) for e in args.args]
        result = star.star_iso_check(gens, args.sum_bound)
        text = "passes" if result.passes else (
            f"fails condition {result.condition}"
            + (f": {result.to_dict()['witness']}" if result.witness is not None else ""))
        _emit(args, result.to_dict(), text)
        return 0 if result.passes else 1
    raise UsageError(f"unknown star mode {mode}")


def _one(items):
    if len(items) != 1:
        raise UsageError("expected exactly one expression")
    return items[0]


def cmd_relation(args) -> int:
    lhs = parse_expression(args.lhs)
    rhs = parse_expression(args.rhs)
    gens = _generators(args.generator)
    base = quotient.option_closure(gens)
    if not (base.contains_sum(lhs) and base.contains_sum(rhs)):
        raise UsageError("both sides must be sums over the closure base")
    check = quotient.verify_relation(lhs, rhs, base, args.context_bound)
    text = "holds at bound" if check.holds else f"refuted by {check.to_dict()['context']}"
    _emit(args, check.to_dict(), text)
    return 0 if check.holds else 1


def cmd_heap(args) -> int:
    spec = heaps.SubtractionGameSpec(_ints(args.left), _ints(args.right), args.max_heap)
    data: dict = {"spec": spec.label()}
    texts = []
    prefix = _ints(args.prefix) if args.prefix else [3, 3]
    table = heaps.outcome_table(spec, prefix)
    data["table"] = table.to_dict()
    texts.append(table.render())
    if args.periodicity:
        rep = heaps.detect_periodicity(spec, args.coordinates, u_bound=args.u_bound)
        data["periodicity"] = rep.to_dict()
        for c in rep.coordinates:
            if c.status == "FOUND":
                texts.append(f"heap {c.size}: R={c.pre_period} D={c.period}")
            else:
                texts.append(f"heap {c.size}: NOT_FOUND"
                             + (" (diagonal relation o(x1,x2)=o(x1+1,x2+1))" if c.diagonal
                                else ""))
    if args.quotient:
        q = heaps.heap_quotient(spec, args.sum_bound, args.context_bound, args.quotient_heaps)
        data["quotient"] = q.to_dict()
        texts.append(_quotient_text(q))
    _emit(args, data, "\n".join(texts))
    return 0


def cmd_strategy(args) -> int:
    comps = [parse_position(e) for e in args.component]
    try:
        result = identities.tweedle_playout(comps, args.mover)
    except quotient.PreconditionError as err:
        raise UsageError(str(err)) from None
    agrees = identities.playout_matches_outcome(comps)
    data = dict(result.to_dict(), outcome_is_N=agrees)
    text = "\n".join(result.trace + [f"result: {'win' if result.win else 'loss'}"])
    _emit(args, data, text)
    return 0 if result.win and agrees else 1


def cmd_dot(args) -> int:
    text = positions.to_dot(parse_position(args.expr))
    _emit(args, {"dot": text}, text)
    return 0


ALT_OPERATORS = [
    ("and", positions.SumKind.AND),
    ("or", positions.SumKind.OR),
    ("disand", positions.SumKind.DISAND),
    ("disor", positions.SumKind.DISOR),
    ("seq", positions.SumKind.SEQJOIN),
    ("ord", positions.SumKind.ORDINAL),
]


def alt_sum_counterexamples() -> list[tuple[str, positions.SumKind, int, int]]:
    """Operands where Left, moving first, loses the compound game."""
    star2 = positions.nimber(2)
    double = positions.compile_sum([star2, star2])
    stars = positions.compile_sum([positions.STAR, positions.STAR])
    return [
        ("and", positions.SumKind.AND, double, double),
        ("or", positions.SumKind.OR, positions.STAR, positions.STAR),
        ("disand", positions.SumKind.DISAND, star2, star2),
        ("disor", positions.SumKind.DISOR, stars, stars),
        ("seq", positions.SumKind.SEQJOIN, double, double),
        ("ord", positions.SumKind.ORDINAL, double, double),
    ]


def altsum_report() -> dict:
    from .outcomes import left_wins_first

    zero_cases = {name: misere_outcome(positions.alt_sum(kind, positions.ZERO,
                                                          positions.ZERO)).value
                  for name, kind in ALT_OPERATORS}
    counter = {}
    for name, kind, a, b in alt_sum_counterexamples():
        compound = positions.alt_sum(kind, a, b)
        counter[name] = {
            "operands": [positions.format_position(a), positions.format_position(b)],
            "left_first_wins": left_wins_first(compound),
        }
    ok = all(v == "N" for v in zero_cases.values()) and not any(
        c["left_first_wins"] for c in counter.values())
    return {"zero_zero": zero_cases, "counterexamples": counter, "ok": ok}


def cmd_altsum_check(args) -> int:
    rep = altsum_report()
    lines = [f"o(0 {n} 0) = {o}" for n, o in rep["zero_zero"].items()]
    for n, c in rep["counterexamples"].items():
        verdict = "Left first loses" if not c["left_first_wins"] else "Left first WINS"
        lines.append(f"{n}({c['operands'][0]}, {c['operands'][1]}): {verdict}")
    lines.append("ok" if rep["ok"] else "REFUTED")
    _emit(args, rep, "\n".join(lines))
    return 0 if rep["ok"] else 1


def adjoint_corpus(max_birthday: int, sample: int, seed: int = 0) -> list[int]:
    """Every position born by day 2, plus `sample` random later-born ones."""
    corpus = positions.positions_born_by(min(max_birthday, 2))
    if max_birthday <= 2 or not sample:
        return corpus
    rng = random.Random(seed)
    seen = set(corpus)
    extra = []
    for _ in range(100 * sample):
        if len(extra) >= sample:
            break
        p = positions.random_position(rng, max_birthday, max_options=2)
        if p not in seen and positions.birthday(p) > 2:
            seen.add(p)
            extra.append(p)
    return corpus + extra


def adjoint_failures(corpus: Sequence[int]) -> list[int]:
    return [p for p in corpus if misere_outcome((p, positions.adjoint(p))) != Outcome.P]


def cmd_adjoint_check(args) -> int:
    corpus = adjoint_corpus(args.max_birthday, args.sample, args.seed)
    failures = adjoint_failures(corpus)
    data = {"checked": len(corpus),
            "failures": [positions.format_position(p) for p in failures]}
    text = f"checked {len(corpus)} positions; " + (
        "all sums with the adjoint are P" if not failures
        else f"{len(failures)} failures, first {data['failures'][0]}")
    _emit(args, data, text)
    return 0 if not failures else 1


# ---------------------------------------------------------------------------
# Parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--memo-cap", type=int, default=None,
                        help="flush outcome memo tables beyond this many entries")

    parser = _Parser(prog="misere", description="Misère game analysis toolkit.",
                     epilog="Expression grammar:\n" + GRAMMAR,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    p = add("outcome", cmd_outcome, "misère (default) or normal outcome of a sum")
    p.add_argument("expr")
    p.add_argument("--normal", action="store_true")
    p.add_argument("--both", action="store_true")

    add("props", cmd_props, "structural profile").add_argument("expr")

    p = add("genus", cmd_genus, "genus symbol of an impartial position")
    p.add_argument("expr")
    p.add_argument("--max-digits", type=int, default=40)

    add("tame", cmd_tame, "tame or wild").add_argument("expr")

    for name, func in (("monoid", cmd_monoid), ("poset", cmd_poset)):
        p = add(name, func, f"bounded misère {name} of a closure")
        p.add_argument("-g", "--generator", action="append", default=[])
        p.add_argument("--sum-bound", type=int, default=6)
        p.add_argument("--context-bound", type=int, default=6)
        if name == "poset":
            p.add_argument("--dot", action="store_true", help="Hasse diagram as DOT")
            p.add_argument("--allow-unstabilized", action="store_true")

    p = add("relation", cmd_relation, "check lhs == rhs modulo a closure")
    p.add_argument("lhs")
    p.add_argument("rhs")
    p.add_argument("-g", "--generator", action="append", default=[])
    p.add_argument("--context-bound", type=int, default=6)

    p = add("star", cmd_star, "star-built classification, enumeration and checks")
    p.add_argument("mode", choices=["classify", "sum", "enumerate", "iso"])
    p.add_argument("args", nargs="*")
    p.add_argument("--sum-bound", type=int, default=5)
    p.add_argument("--cap", type=int, default=star.DEFAULT_DAY_CAP)

    p = add("heap", cmd_heap, "partizan subtraction games on heaps")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--max-heap", type=int, default=6)
    p.add_argument("--prefix", help="maximum count per heap size, e.g. 7,6")
    p.add_argument("--periodicity", action="store_true")
    p.add_argument("--coordinates", type=int, default=None)
    p.add_argument("--u-bound", type=int, default=4)
    p.add_argument("--quotient", action="store_true")
    p.add_argument("--quotient-heaps", type=int, default=None)
    p.add_argument("--sum-bound", type=int, default=6)
    p.add_argument("--context-bound", type=int, default=6)

    p = add("strategy", cmd_strategy, "mirroring strategy on sum of x + conj(x)")
    p.add_argument("-c", "--component", action="append", default=[], required=True)
    p.add_argument("--mover", choices=["Left", "Right"], default="Left")

    add("dot", cmd_dot, "game tree as DOT").add_argument("expr")

    add("altsum-check", cmd_altsum_check, "alternative sum sanity checks")

    p = add("adjoint-check", cmd_adjoint_check, "check p + adj(p) is a P position")
    p.add_argument("--max-birthday", type=int, default=2)
    p.add_argument("--sample", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    return parser


def run_command(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not args.command:
            raise UsageError("a command is required")
        if args.memo_cap is not None:
            set_memo_cap(args.memo_cap)
        return args.func(args)
    except (UsageError, ExpressionError, ValueError) as err:
        print(f"misere: error: {err}", file=sys.stderr)
        print("Expression grammar:\n" + GRAMMAR, file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run_command())
