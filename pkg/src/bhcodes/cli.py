"""Command-line entry point: ``bhcodes <command> ...``.

Exit status: 0 success, 1 verification mismatch, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from .analytics import (BinaryCode, BudgetExceededError, ClassificationError, NotADesignError,
                        design_lambda, i16_invariant, is_self_dual, profile)
from .constructions import (ConditionError, binary_image, build_baumert_hall, check_conditions,
                            extend_code, gray_generator_f4u_to_f2u, neighbor, neighbor_vector)
from .recipes import (TABLE_IDS, CodeArtifact, RecipeFormatError, RecipeRecord, append_record,
                      load_table, parse_extension, read_records)
from .reproduce import reproduce_table
from .rings import Ring
from .search import SearchConfig, dedupe_hits, run_search

OK, MISMATCH, INPUT_ERROR = 0, 1, 2


class InputError(Exception):
    pass


def _pick(records: list[RecipeRecord], row_id: str | None) -> RecipeRecord:
    if row_id is None:
        if len(records) != 1:
            raise InputError(f"file holds {len(records)} recipes; choose one with --id")
        return records[0]
    for rec in records:
        if rec.table_id == row_id:
            return rec
    raise InputError(f"no recipe with id {row_id!r}")


def _ring_generator(rec: RecipeRecord):
    recipe = rec.to_recipe()
    report = check_conditions(recipe)
    for eq in report.failed:
        print(f"condition failed: {eq}")
    if report.ok:
        print("conditions hold")
    return build_baumert_hall(recipe)


def build_from_record(rec: RecipeRecord) -> BinaryCode:
    gen = _ring_generator(rec)
    if rec.extension:
        if gen.ring is Ring.F4U:
            gen = gray_generator_f4u_to_f2u(gen)
        gen = extend_code(gen, rec.extension_spec())
    code = binary_image(gen)
    if rec.neighbor:
        std = code.standard_form
        std = BinaryCode(std.rows, std.length)
        code = neighbor(std, neighbor_vector(rec.neighbor["x"], std.length))
    return code


def _print_profile(prof) -> None:
    print(prof.summary())
    for w, a in sorted(prof.counts.items()):
        print(f"  A_{w} = {a}")


# -- commands ------------------------------------------------------------------

def cmd_build(args) -> int:
    rec = _pick(read_records(args.recipe), args.id)
    code = build_from_record(rec)
    prof = profile(code, threads=args.threads) if args.profile else None
    art = CodeArtifact(code, {"recipe": rec.to_dict()}, prof)
    out = args.output or f"{rec.table_id or 'code'}.code.json"
    art.save(out)
    print(f"wrote [{code.length},{code.dimension}] code to {out}")
    if prof is not None:
        _print_profile(prof)
    return OK


def cmd_verify(args) -> int:
    art = CodeArtifact.load(args.artifact)
    problems = []
    if not is_self_dual(art.code):
        problems.append("code is not self-dual")
    if "recipe" in art.meta:
        rebuilt = build_from_record(RecipeRecord.from_dict(art.meta["recipe"]))
        if not rebuilt.same_code(art.code):
            problems.append("generator does not match its recipe")
    if art.profile is not None:
        weights = art.profile.counts or None
        fresh = profile(art.code, weights=weights, threads=args.threads)
        if fresh != art.profile:
            problems.append(f"stored profile {art.profile.summary()} != recomputed {fresh.summary()}")
    for p in problems:
        print(f"FAIL {p}")
    if not problems:
        print("verified")
    return MISMATCH if problems else OK


def cmd_analyze(args) -> int:
    art = CodeArtifact.load(args.artifact)
    weights = [int(w) for w in args.weights.split(",")] if args.weights else None
    prof = profile(art.code, weights=weights, threads=args.threads)
    _print_profile(prof)
    if args.i16:
        t0 = time.perf_counter()
        inv = i16_invariant(art.code, threads=args.threads)
        print(f"I16 = {inv.I16} ({time.perf_counter() - t0:.0f}s)")
    if args.design:
        if args.seed is None:
            raise InputError("--design samples random subsets and needs --seed")
        lam = design_lambda(art.code, args.design_weight, 3, args.trials, seed=args.seed)
        print(f"lambda(3-subset) = {lam}")
    return OK


def cmd_extend(args) -> int:
    rec = _pick(read_records(args.recipe), args.id)
    rec.extension = {"c": args.c, "X": args.X}
    code = build_from_record(rec)
    CodeArtifact(code, {"recipe": rec.to_dict()}).save(args.output)
    print(f"wrote [{code.length},{code.dimension}] extension to {args.output}")
    return OK


def cmd_neighbor(args) -> int:
    art = CodeArtifact.load(args.artifact)
    std = art.code.standard_form
    std = BinaryCode(std.rows, std.length)
    new = neighbor(std, neighbor_vector(args.x, std.length))
    meta = {"neighbor_of": str(args.artifact), "x": args.x}
    if "recipe" in art.meta:
        meta = {"recipe": {**art.meta["recipe"], "neighbor": {"x": args.x}}}
    CodeArtifact(new, meta).save(args.output)
    print(f"wrote neighbour [{new.length},{new.dimension}] to {args.output}")
    return OK


def cmd_search(args) -> int:
    data = json.loads(Path(args.manifest).read_text()) if args.manifest else {}
    for key in ("ring", "variant", "n", "mode", "budget", "min_distance", "family"):
        if getattr(args, key) is not None:
            data[key] = getattr(args, key)
    if args.lambdas:
        data["lambdas"] = [int(x, 16) for x in args.lambdas.split(",")]
    data["seed"] = args.seed
    data["workers"] = args.threads
    try:
        cfg = SearchConfig.from_dict(data)
    except TypeError as exc:
        raise InputError(f"bad search manifest: {exc}") from exc
    hits = run_search(cfg)
    if args.dedupe:
        hits = dedupe_hits(hits)
    for h in hits:
        print(f"hit {h.index}: {h.profile.summary()}")
        if args.output:
            append_record(args.output, h.record())
    print(f"{len(hits)} hits")
    return OK


def _reproduce_hits(path: str, threads: int) -> int:
    bad = 0
    lines = [json.loads(x) for x in Path(path).read_text().splitlines() if x.strip()]
    for rec in lines:
        code = build_from_record(RecipeRecord.from_dict(rec))
        want = rec.get("profile")
        got = profile(code, threads=threads).to_dict()
        ok = want is None or got == want
        bad += not ok
        print(f"{'PASS' if ok else 'FAIL'} {rec.get('table_id', '?')}")
    return MISMATCH if bad else OK


def cmd_reproduce(args) -> int:
    if Path(args.target).is_file():
        return _reproduce_hits(args.target, args.threads)
    targets = TABLE_IDS if args.target == "all" else [args.target]
    failed = 0
    for tid in targets:
        try:
            load_table(tid)
        except KeyError as exc:
            raise InputError(str(exc)) from exc
        results = reproduce_table(tid, slow=args.slow, threads=args.threads)
        for r in results:
            print(r.line())
        n_ok = sum(r.ok for r in results)
        failed += len(results) - n_ok
        print(f"{tid}: {n_ok}/{len(results)} rows pass")
    return MISMATCH if failed else OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bhcodes", description=__doc__.splitlines()[0])
    p.add_argument("--threads", type=int, default=1, help="worker threads for enumeration")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="build a code artifact from a recipe")
    b.add_argument("recipe")
    b.add_argument("--id")
    b.add_argument("-o", "--output")
    b.add_argument("--no-profile", dest="profile", action="store_false")
    b.set_defaults(func=cmd_build)

    v = sub.add_parser("verify", help="re-check an artifact against its recipe and profile")
    v.add_argument("artifact")
    v.set_defaults(func=cmd_verify)

    a = sub.add_parser("analyze", help="weight profile and invariants of an artifact")
    a.add_argument("artifact")
    a.add_argument("--weights", help="comma-separated weights to count")
    a.add_argument("--i16", action="store_true")
    a.add_argument("--design", action="store_true")
    a.add_argument("--design-weight", type=int, default=16)
    a.add_argument("--trials", type=int, default=100)
    a.add_argument("--seed", type=int)
    a.set_defaults(func=cmd_analyze)

    e = sub.add_parser("extend", help="building-up extension over F2+uF2")
    e.add_argument("recipe")
    e.add_argument("--id")
    e.add_argument("--c", default="3")
    e.add_argument("--X", required=True)
    e.add_argument("-o", "--output", required=True)
    e.set_defaults(func=cmd_extend)

    nb = sub.add_parser("neighbor", help="neighbour of a binary self-dual code")
    nb.add_argument("artifact")
    nb.add_argument("--x", required=True, help="bits placed after leading zeros")
    nb.add_argument("-o", "--output", required=True)
    nb.set_defaults(func=cmd_neighbor)

    s = sub.add_parser("search", help="seeded scan over array recipes")
    s.add_argument("manifest", nargs="?")
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--ring")
    s.add_argument("--variant")
    s.add_argument("--n", type=int)
    s.add_argument("--mode")
    s.add_argument("--budget", type=int)
    s.add_argument("--lambdas", help="comma-separated hex digits")
    s.add_argument("--min-distance", type=int)
    s.add_argument("--family")
    s.add_argument("--dedupe", action="store_true")
    s.add_argument("-o", "--output", help="append hits as JSON lines")
    s.set_defaults(func=cmd_search)

    r = sub.add_parser("reproduce", help="check shipped tables or a hit log")
    r.add_argument("target", help=f"one of {', '.join(TABLE_IDS)}, 'all', or a hit log")
    r.add_argument("--slow", action="store_true", help="also check length-80 I16 and A20")
    r.set_defaults(func=cmd_reproduce)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return MISMATCH
    except (InputError, RecipeFormatError, FileNotFoundError, json.JSONDecodeError,
            BudgetExceededError, ClassificationError, NotADesignError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
