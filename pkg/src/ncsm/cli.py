"""Command-line front end.

Solve commands read instance documents (see `formats`), print one JSON result
document (or a plain-text table with --format text), and exit 0 whenever the
question was answered, including with "none".  Exit 2 flags bad input, exit 3
a size-guard refusal.  Multiple input files produce one JSON line each, and
--jobs runs them in parallel.  NCSM_GUARD_OVERRIDE=1 lifts the oracle guards.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from .core import ContractViolation, Matching, NOTIONS, noncrossing_blocking_pairs
from .formats import FormatError, parse_dimacs, parse_instance, serialize_instance
from .generate import generate
from .greedy1 import weak_ssnm_len1, weak_ssnm_len1_women
from .maxwsnm import max_wsnm
from .oracle import (
    SizeGuardExceeded,
    brute_all_stable,
    brute_exist_ssnm,
    brute_max_wsnm,
)
from .reduction import build_gadget_instance, validate_tovey
from .render import render_ascii, render_figure
from .ssnm import exist_ssnm

EXIT_ANSWERED = 0
EXIT_INPUT = 2
EXIT_GUARD = 3

SSNM_NOTIONS = ("smi-strict", "super", "strong")


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _pairs_json(matching: Matching) -> list[list[int]]:
    return [[i, j] for i, j in matching.pairs]


def _maybe_figure(task: dict, instance, matching: Matching | None) -> None:
    if task.get("figure"):
        render_figure(instance, matching, out_path=task["figure"])


def _run_solve(task: dict) -> tuple[int, dict]:
    """One file through one solve command: (exit code, result document)."""
    command = task["command"]
    path = task["path"]
    doc: dict = {"problem": path, "command": command, "notion": task.get("notion")}
    t0 = time.perf_counter()
    try:
        instance = parse_instance(_read_text(path))
        if command == "solve-max-wsnm":
            res = max_wsnm(instance, task["notion"], method=task["method"])
            if res is None:
                doc["outcome"] = "none"
            else:
                size, m = res
                doc.update(outcome="found", size=size, matching=_pairs_json(m))
                _maybe_figure(task, instance, m)
        elif command == "exist-ssnm":
            r = exist_ssnm(instance, task["notion"], allow_large=task["allow_large"])
            if r.outcome == "found":
                doc.update(outcome="found", matching=_pairs_json(r.matching))
                _maybe_figure(task, instance, r.matching)
            elif r.outcome == "no-stable-matching":
                doc.update(outcome="none", reason="no-stable-matching")
            else:
                doc.update(outcome="none", reason="stable-but-crossing")
                if r.witness is not None:
                    doc["witness"] = _pairs_json(r.witness)
        elif command == "weak-ssnm-len1":
            solve = weak_ssnm_len1 if task["side"] == "men" else weak_ssnm_len1_women
            m = solve(instance)
            if m is None:
                doc["outcome"] = "none"
            else:
                doc.update(outcome="found", size=m.size, matching=_pairs_json(m))
                _maybe_figure(task, instance, m)
        elif command == "oracle-max-wsnm":
            res = brute_max_wsnm(instance, task["notion"])
            if res is None:
                doc["outcome"] = "none"
            else:
                size, m = res
                doc.update(outcome="found", size=size, matching=_pairs_json(m))
        elif command == "oracle-exist-ssnm":
            m = brute_exist_ssnm(instance, task["notion"], method=task["oracle_method"])
            if m is None:
                doc["outcome"] = "none"
            else:
                doc.update(outcome="found", matching=_pairs_json(m))
        elif command == "oracle-all-stable":
            ms = brute_all_stable(instance, task["notion"])
            doc.update(
                outcome="ok",
                count=len(ms),
                matchings=[_pairs_json(m) for m in ms],
            )
        else:
            raise AssertionError(command)
    except FormatError as e:
        doc["error"] = str(e)
        return EXIT_INPUT, doc
    except ContractViolation as e:
        doc["error"] = str(e)
        return EXIT_INPUT, doc
    except SizeGuardExceeded as e:
        doc["error"] = str(e)
        return EXIT_GUARD, doc
    except OSError as e:
        doc["error"] = str(e)
        return EXIT_INPUT, doc
    if not task["no_timing"]:
        doc["timing_ms"] = round((time.perf_counter() - t0) * 1000, 3)
    return EXIT_ANSWERED, doc


def _doc_text(doc: dict) -> str:
    lines = []
    for k, v in doc.items():
        if k == "matching" and isinstance(v, list):
            v = " ".join(f"({i},{j})" for i, j in v) or "(empty)"
        elif k == "matchings" and isinstance(v, list):
            v = "; ".join(
                " ".join(f"({i},{j})" for i, j in m) or "(empty)" for m in v
            )
        lines.append(f"{k}: {v}")
    return "\n".join(lines) + "\n"


def _emit_docs(args, results: list[tuple[int, dict]]) -> int:
    if len(results) == 1:
        code, doc = results[0]
        if args.format == "text":
            sys.stdout.write(_doc_text(doc))
        else:
            sys.stdout.write(json.dumps(doc) + "\n")
        if "error" in doc:
            print(f"ncsm: {doc['error']}", file=sys.stderr)
        return code
    for code, doc in results:
        if args.format == "text":
            sys.stdout.write(_doc_text(doc))
        else:
            sys.stdout.write(json.dumps(doc) + "\n")
    return max(code for code, _ in results)


def _cmd_solve(args) -> int:
    if getattr(args, "figure", None) and len(args.files) > 1:
        print("ncsm: --figure needs a single input file", file=sys.stderr)
        return EXIT_INPUT
    tasks = []
    for path in args.files:
        task = {
            "command": args.command,
            "path": path,
            "no_timing": args.no_timing,
            "figure": getattr(args, "figure", None),
        }
        for key in ("notion", "method", "allow_large", "side", "oracle_method"):
            if hasattr(args, key):
                task[key] = getattr(args, key)
        tasks.append(task)
    if args.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_run_solve, tasks))
    else:
        results = [_run_solve(t) for t in tasks]
    return _emit_docs(args, results)


def _cmd_gen(args) -> int:
    instance = generate(
        args.men, args.women, args.max_list_len, args.tie_prob, args.seed
    )
    _write_text(args.output, serialize_instance(instance))
    return EXIT_ANSWERED


def _cmd_reduce(args) -> int:
    cnf = parse_dimacs(_read_text(args.cnf))
    problems = validate_tovey(cnf)
    if problems:
        print("ncsm: formula is outside the restricted form:", file=sys.stderr)
        for p in problems:
            print(f"  - {p}", file=sys.stderr)
        return EXIT_INPUT
    instance, plan = build_gadget_instance(cnf)
    text = serialize_instance(instance)
    if args.labels:
        notes = ["# agent labels"]
        for idx, label in enumerate(plan.man_labels, start=1):
            notes.append(f"# m {idx} = {label}")
        for idx, label in enumerate(plan.woman_labels, start=1):
            notes.append(f"# w {idx} = {label}")
        text = "\n".join(notes) + "\n" + text
    _write_text(args.output, text)
    return EXIT_ANSWERED


def _parse_matching_arg(instance, spec: str) -> Matching:
    pairs = []
    for part in spec.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            i_str, j_str = part.split("-", 1)
            pairs.append((int(i_str), int(j_str)))
        except ValueError:
            raise ContractViolation(
                f"cannot parse pair {part!r}; expected like 2-3"
            ) from None
    return Matching(instance, pairs)


def _cmd_render(args) -> int:
    instance = parse_instance(_read_text(args.instance))
    matching = None
    if args.matching:
        matching = _parse_matching_arg(instance, args.matching)
    blocking: tuple = ()
    if args.overlay_blocking:
        base = matching if matching is not None else Matching(instance, [])
        blocking = tuple(
            sorted(noncrossing_blocking_pairs(instance, args.notion, base))
        )
    if args.ascii:
        _write_text(args.output, render_ascii(instance, matching, blocking))
        return EXIT_ANSWERED
    if not args.output or args.output == "-":
        print("ncsm: figure output needs -o PATH (or pass --ascii)", file=sys.stderr)
        return EXIT_INPUT
    render_figure(instance, matching, blocking, out_path=args.output)
    return EXIT_ANSWERED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ncsm",
        description="Stable noncrossing matchings on two parallel lines.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def solve_common(sp, figure: bool = True):
        sp.add_argument("files", nargs="+", help="instance files ('-' = stdin)")
        sp.add_argument("--format", choices=("json", "text"), default="json")
        sp.add_argument("--no-timing", action="store_true",
                        help="omit timing_ms for byte-stable output")
        sp.add_argument("--jobs", type=int, default=1, metavar="K",
                        help="solve multiple files in parallel")
        if figure:
            sp.add_argument("--figure", metavar="PATH",
                            help="also save a figure of the found matching")
        sp.set_defaults(handler=_cmd_solve)

    sp = sub.add_parser("solve-max-wsnm", help="maximum-size matching whose "
                        "blocking pairs, if any, all cross it")
    sp.add_argument("--notion", choices=NOTIONS, required=True)
    sp.add_argument("--method", choices=("auto", "scalar", "vectorized"),
                    default="auto")
    solve_common(sp)

    sp = sub.add_parser("exist-ssnm", help="does a noncrossing matching with "
                        "no blocking pair at all exist?")
    sp.add_argument("--notion", choices=SSNM_NOTIONS, required=True)
    sp.add_argument("--allow-large", action="store_true",
                    help="let the exhaustive stable-matching fallback run on "
                    "large inputs")
    solve_common(sp)

    sp = sub.add_parser("weak-ssnm-len1", help="linear-time existence when "
                        "one side's lists have at most one entry")
    sp.add_argument("--side", choices=("men", "women"), default="men",
                    help="which side has the length-1 lists")
    sp.set_defaults(notion="weak")
    solve_common(sp)

    sp = sub.add_parser("oracle-max-wsnm", help="brute-force reference answer")
    sp.add_argument("--notion", choices=NOTIONS, required=True)
    solve_common(sp, figure=False)

    sp = sub.add_parser("oracle-exist-ssnm", help="brute-force reference answer")
    sp.add_argument("--notion", choices=NOTIONS, required=True)
    sp.add_argument("--oracle-method", choices=("auto", "filter", "search"),
                    default="auto")
    solve_common(sp, figure=False)

    sp = sub.add_parser("oracle-all-stable", help="every stable matching, "
                        "crossings allowed")
    sp.add_argument("--notion", choices=NOTIONS, required=True)
    solve_common(sp, figure=False)

    sp = sub.add_parser("gen", help="generate a random instance document")
    sp.add_argument("--men", type=int, required=True)
    sp.add_argument("--women", type=int, required=True)
    sp.add_argument("--max-list-len", type=int, default=None)
    sp.add_argument("--tie-prob", type=float, default=0.0)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("-o", "--output", default=None)
    sp.set_defaults(handler=_cmd_gen)

    sp = sub.add_parser("reduce-3sat", help="build the gadget instance for a "
                        "restricted-3SAT formula (DIMACS)")
    sp.add_argument("cnf", help="DIMACS CNF file ('-' = stdin)")
    sp.add_argument("--labels", action="store_true",
                    help="prefix the document with agent-label comments")
    sp.add_argument("-o", "--output", default=None)
    sp.set_defaults(handler=_cmd_reduce)

    sp = sub.add_parser("render", help="draw the two-line layout")
    sp.add_argument("instance", help="instance file ('-' = stdin)")
    sp.add_argument("--matching", metavar="PAIRS",
                    help="edges to draw, e.g. '1-1,2-3'")
    sp.add_argument("--overlay-blocking", action="store_true",
                    help="overlay noncrossing blocking pairs of the matching "
                    "(of the empty matching when none is given)")
    sp.add_argument("--notion", choices=NOTIONS, default="weak")
    sp.add_argument("--ascii", action="store_true",
                    help="text drawing on stdout instead of a figure")
    sp.add_argument("-o", "--output", default=None,
                    help="output file; required for figures, extension picks "
                    "the format (.svg, .png, ...)")
    sp.set_defaults(handler=_cmd_render)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except FormatError as e:
        print(f"ncsm: {e}", file=sys.stderr)
        return EXIT_INPUT
    except ContractViolation as e:
        print(f"ncsm: {e}", file=sys.stderr)
        return EXIT_INPUT
    except SizeGuardExceeded as e:
        print(f"ncsm: {e}", file=sys.stderr)
        return EXIT_GUARD
    except OSError as e:
        print(f"ncsm: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
