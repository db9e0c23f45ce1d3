"""Command-line front end.

Exit codes: 0 success, 1 input or corpus error, 2 refactoring precondition
failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import shutil
import sys
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from . import __version__
from .bench import CorpusError, evaluate, format_table
from .candidates import REASON_TEXT, GenerationConfig, make_candidate
from .refactor import NameClashError, PreconditionError, extract, mutate
from .scoring import RankingConfig, candidate_deps, recommend
from .structure import RangeError, build_blocks
from .syntax import LexError, ParseError, ResolveError, load, pretty_print

EXIT_OK, EXIT_INPUT, EXIT_PRECONDITION = 0, 1, 2

_SOURCE_ERRORS = (LexError, ParseError, ResolveError)


class InputError(Exception):
    pass


def _jx_files(paths: Sequence[str]) -> List[Tuple[Path, Path]]:
    """``(path, path relative to its root)`` for every .jx file, sorted."""
    out = []
    for p in map(Path, paths):
        if p.is_dir():
            out += [(f, f.relative_to(p)) for f in sorted(p.rglob("*.jx"))]
        elif p.is_file():
            out.append((p, Path(p.name)))
        else:
            raise InputError(f"{p}: no such file or directory")
    return out


def _load_file(path: Path):
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f"{path}: {exc}") from None
    try:
        return load(text)
    except _SOURCE_ERRORS as exc:
        raise InputError(f"{path}:{exc}") from None


def _gen_cfg(args) -> GenerationConfig:
    return GenerationConfig(min_extracted_statements=args.min_statements)


# --- recommend -----------------------------------------------------------------

def _recommendation_entry(rec, labeled, explain: bool) -> dict:
    sel = rec.candidate.sel
    entry = {
        "rank": rec.rank,
        "block": sel.block_id,
        "start": sel.start,
        "end": sel.end,
        "labels": sel.label_range(),
        "span": {"start": sel.span.start_offset, "end": sel.span.end_offset},
        "size": rec.candidate.size,
        "score": rec.score.as_dict(),
    }
    if explain:
        selected, rest = candidate_deps(rec.candidate, labeled)
        entry["deps"] = {"selection": selected.as_dict(), "remainder": rest.as_dict()}
    return entry


def build_report(paths: Sequence[str], gen_cfg: GenerationConfig, rank_cfg: RankingConfig,
                 explain: bool = False) -> dict:
    methods = []
    for path, _ in _jx_files(paths):
        unit = _load_file(path)
        for cls in unit.classes:
            for method in cls.methods:
                labeled = build_blocks(method)
                recs = recommend(labeled, gen_cfg, rank_cfg)
                if not recs:
                    continue
                methods.append({
                    "file": path.as_posix(),
                    "method": f"{cls.name}.{method.name}",
                    "recommendations": [_recommendation_entry(r, labeled, explain) for r in recs],
                })
    return {"version": __version__, "methods": methods}


def _print_report(report: dict, explain: bool):
    current = None
    for m in report["methods"]:
        if m["file"] != current:
            current = m["file"]
            print(current)
        print(f"  {m['method']}")
        for r in m["recommendations"]:
            s = r["score"]
            print(f"    {r['rank']}. {r['labels']}  score {s['total']:.4f} "
                  f"(var {s['var']:.4f}, type {s['type']:.4f}, pack {s['pack']:.4f})  size {r['size']}")
            if explain:
                for side in ("selection", "remainder"):
                    d = r["deps"][side]
                    print(f"       {side}: vars={{{', '.join(d['vars'])}}} "
                          f"types={{{', '.join(d['types'])}}} packs={{{', '.join(d['packs'])}}}")


def cmd_recommend(args) -> int:
    rank_cfg = RankingConfig(max_recommendations_per_method=args.max_recs, min_score=args.min_score)
    report = build_report(args.paths, _gen_cfg(args), rank_cfg, args.explain)
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        _print_report(report, args.explain)
    return EXIT_OK


# --- apply ---------------------------------------------------------------------

def _parse_range(text: str) -> Tuple[int, int, int]:
    parts = text.split(":")
    if len(parts) != 3 or not all(p.isdigit() for p in parts):
        raise ValueError(f"range must look like B:I:J, got {text!r}")
    return tuple(int(p) for p in parts)


def cmd_apply(args) -> int:
    unit = _load_file(Path(args.path))
    found = unit.find_method(args.method)
    if found is None:
        raise InputError(f"method {args.method!r} not found (or ambiguous) in {args.path}")
    _, method = found
    try:
        key = _parse_range(args.range)
        cand = make_candidate(build_blocks(method), *key)
        result = extract(unit, cand, args.name, _gen_cfg(args))
    except (ValueError, RangeError) as exc:
        print(f"error: invalid range: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        for code in exc.reasons:
            print(f"  {code}: {REASON_TEXT[code]}", file=sys.stderr)
        return EXIT_PRECONDITION
    except NameClashError as exc:
        print(f"error: NameClash: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    text = pretty_print(result)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


# --- mutate --------------------------------------------------------------------

def file_seed(seed: int, rel: str) -> int:
    """Per-file seed, stable across runs and platforms."""
    digest = hashlib.sha256(f"{seed}:{rel}".encode("utf-8")).hexdigest()
    return int(digest[:16], 16)


def cmd_mutate(args) -> int:
    outdir = Path(args.output)
    cfg = _gen_cfg(args)
    entries = []
    for path, rel in _jx_files([args.path]):
        unit = _load_file(path)
        rel_s = rel.as_posix()
        mutated, found = mutate(unit, file_seed(args.seed, rel_s), cfg, args.prob, rel_s)
        target = outdir / rel
        try:
            target.parent.mkdir(parents=True, exist_ok=True)
            if found:
                target.write_text(pretty_print(mutated), encoding="utf-8")
            else:
                shutil.copyfile(path, target)
        except OSError as exc:
            raise InputError(f"{target}: {exc}") from None
        entries += found
    oracle = [e.to_json() for e in entries]
    try:
        Path(args.oracle).write_text(json.dumps(oracle, indent=2) + "\n", encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{args.oracle}: {exc}") from None
    print(f"{len(entries)} oracle entries written to {args.oracle}", file=sys.stderr)
    return EXIT_OK


# --- bench ---------------------------------------------------------------------

def cmd_bench(args) -> int:
    try:
        report = evaluate(args.corpus, args.oracle, args.k, _gen_cfg(args), args.min_score)
    except (CorpusError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(json.dumps(report.to_json()))
    print()
    sys.stdout.write(format_table([(Path(args.corpus).name or str(args.corpus), report)]))
    return EXIT_OK


# --- label ---------------------------------------------------------------------

def cmd_label(args) -> int:
    unit = _load_file(Path(args.path))
    found = unit.find_method(args.method)
    if found is None:
        raise InputError(f"method {args.method!r} not found (or ambiguous) in {args.path}")
    sys.stdout.write(build_blocks(found[1]).annotate())
    return EXIT_OK


# --- entry point ---------------------------------------------------------------

def _add_gen_flags(p: argparse.ArgumentParser):
    p.add_argument("--min-statements", type=int, default=3, metavar="N",
                   help="minimum statements in a candidate (default 3)")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="emrec", description="Extract Method recommendations for JX code.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("recommend", help="rank Extract Method candidates")
    p.add_argument("paths", nargs="+")
    _add_gen_flags(p)
    p.add_argument("--max-recs", type=int, default=3, metavar="K")
    p.add_argument("--min-score", type=float, default=0.0, metavar="S")
    p.add_argument("--json", action="store_true", help="emit the JSON report")
    p.add_argument("--explain", action="store_true", help="include dependency sets")
    p.set_defaults(func=cmd_recommend)

    p = sub.add_parser("apply", help="extract a statement range into a new method")
    p.add_argument("path")
    p.add_argument("--method", required=True, help="Class.method or method")
    p.add_argument("--range", required=True, help="block:start:end")
    p.add_argument("--name", required=True, help="name of the new method")
    p.add_argument("-o", "--output")
    _add_gen_flags(p)
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("mutate", help="plant oracles by random Inline Method")
    p.add_argument("path")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--prob", type=float, default=0.5, help="inline probability per callee")
    p.add_argument("-o", "--output", required=True, help="output directory")
    p.add_argument("--oracle", required=True, help="oracle JSON file to write")
    _add_gen_flags(p)
    p.set_defaults(func=cmd_mutate)

    p = sub.add_parser("bench", help="recall/precision against an oracle")
    p.add_argument("corpus")
    p.add_argument("--oracle", required=True)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--min-score", type=float, default=0.0, metavar="S")
    _add_gen_flags(p)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("label", help="print a method with SX.Y statement labels")
    p.add_argument("path")
    p.add_argument("--method", required=True)
    p.set_defaults(func=cmd_label)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
