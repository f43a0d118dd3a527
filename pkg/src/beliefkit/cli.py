"""Batch command-line front end.

Subcommands wire the canonical file formats to the library operations:

  fixture      write a built-in golden population
  estimate     population CSV -> canonical mass JSON (+ optional Bel/Pl tables)
  combine      Dempster-combine two mass JSONs
  relabel      deterministic (--label) or randomized (--spec --seed) relabeling
  synthesize   build a population realizing a mass function
  verify       run verification reports (axioms, simple-relabel,
               general-relabel, coot-table)

Exit codes: 0 success / all checks pass, 1 verification failure or total
conflict, 2 malformed input or usage error.  Outputs are deterministic
given inputs and seed; seeded commands print the effective seed on stderr.
Frames are written as element names joined by '|', subsets likewise.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction
from pathlib import Path

from .errors import BeliefkitError, FormatError, TotalConflictError
from .formats import (
    json_bytes,
    load_mass,
    load_population,
    mass_to_json_bytes,
    relabel_report_doc,
    save_mass,
    save_population,
)
from .frames import Frame, decode_subset, encode_subset, make_frame, subsets_of
from .harness import (
    VerificationReport,
    coot_fixture,
    coot_unlabeled_standin,
    verify_coot_printed_table,
    verify_general_relabel,
    verify_mte_axioms,
    verify_simple_relabel,
)
from .masses import belief_table, dempster_combine, plausibility
from .populations import estimate_mass, synthesize_population
from .relabel import LabelingProcessSpec, general_relabel, simple_relabel

SEED_ENV_VAR = "EVIDENCE_SEED"
TABLE_LIMIT = 12
MAX_SEED = 1 << 64


def _parse_frame(text: str) -> Frame:
    return make_frame(text.split("|"))


def _require_inputs(*paths: str) -> None:
    for p in paths:
        if not Path(p).is_file():
            raise FormatError(f"input file not found: {p}")


def _require_output_dirs(*paths: str | None) -> None:
    for p in paths:
        if p is None:
            continue
        parent = Path(p).resolve().parent
        if not parent.is_dir():
            raise FormatError(f"output directory does not exist: {parent}")


def _effective_seed(args: argparse.Namespace) -> int:
    seed = getattr(args, "seed", None)
    if seed is None:
        env = os.environ.get(SEED_ENV_VAR)
        if env is not None:
            try:
                seed = int(env, 0)
            except ValueError:
                raise FormatError(
                    f"{SEED_ENV_VAR} must be an integer, got {env!r}"
                ) from None
        else:
            seed = 0
    if not 0 <= seed < MAX_SEED:
        raise FormatError("seed must be an unsigned 64-bit integer")
    print(f"effective seed: {seed}", file=sys.stderr)
    return seed


def _fmt(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _emit_report(report: VerificationReport, args: argparse.Namespace) -> int:
    if getattr(args, "out", None):
        Path(args.out).write_bytes(json_bytes(report.to_doc()))
    if getattr(args, "format", "text") == "json":
        sys.stdout.write(json_bytes(report.to_doc()).decode("utf-8"))
    else:
        print(report.format_text())
    return 0 if report.overall else 1


# -- subcommand handlers ------------------------------------------------------


def _cmd_fixture(args: argparse.Namespace) -> int:
    _require_output_dirs(args.out)
    pop = coot_fixture() if args.name == "coot" else coot_unlabeled_standin()
    save_population(pop, args.out)
    print(f"wrote {len(pop)} records to {args.out}")
    return 0


def _cmd_estimate(args: argparse.Namespace) -> int:
    _require_inputs(args.population)
    _require_output_dirs(args.out, args.tables)
    frame = _parse_frame(args.frame)
    pop = load_population(args.population, frame)
    m = estimate_mass(pop)
    save_mass(m, args.out)

    if args.tables or args.format == "text":
        if frame.size > TABLE_LIMIT and args.tables:
            raise FormatError(
                f"belief/plausibility tables need a frame of at most {TABLE_LIMIT} elements"
            )
    if args.tables:
        table = belief_table(m)
        rows = sorted(
            (encode_subset(s) for s in subsets_of(frame.full())),
        )
        bel_entries = []
        pl_entries = []
        for enc in rows:
            s = decode_subset(frame, enc)
            b = table.value(s)
            q = plausibility(m, s)
            bel_entries.append({"set": enc, "num": b.numerator, "den": b.denominator})
            pl_entries.append({"set": enc, "num": q.numerator, "den": q.denominator})
        doc = {"frame": list(frame.elements), "belief": bel_entries, "plausibility": pl_entries}
        Path(args.tables).write_bytes(json_bytes(doc))
    if args.format == "text":
        table = belief_table(m) if frame.size <= TABLE_LIMIT else None
        print(f"{'set':<32} {'mass':>12} {'belief':>12} {'plausibility':>12}")
        for s, w in m.items_canonical():
            b = table.value(s) if table else None
            q = plausibility(m, s)
            print(
                f"{encode_subset(s):<32} {float(w):>12.6f} "
                f"{(float(b) if b is not None else float('nan')):>12.6f} {float(q):>12.6f}"
            )
    return 0


def _cmd_combine(args: argparse.Namespace) -> int:
    _require_inputs(args.mass1, args.mass2)
    _require_output_dirs(args.out, args.report)
    m1 = load_mass(args.mass1)
    m2 = load_mass(args.mass2)
    try:
        combined, conflict = dempster_combine(m1, m2)
    except TotalConflictError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    save_mass(combined, args.out)
    print(f"conflict: {_fmt(conflict)}")
    if args.report:
        Path(args.report).write_bytes(
            json_bytes(
                {"conflict_num": conflict.numerator, "conflict_den": conflict.denominator}
            )
        )
    return 0


def _cmd_relabel(args: argparse.Namespace) -> int:
    _require_inputs(args.population)
    if args.spec:
        _require_inputs(args.spec)
    _require_output_dirs(args.out, args.report)

    if args.label is not None:
        if args.frame is None:
            raise FormatError("--label requires --frame to parse the population")
        frame = _parse_frame(args.frame)
        pop = load_population(args.population, frame)
        label = decode_subset(frame, args.label)
        out_pop = simple_relabel(pop, label)
    else:
        spec_mass = load_mass(args.spec)
        frame = spec_mass.frame
        if args.frame is not None and _parse_frame(args.frame) != frame:
            raise FormatError("--frame does not match the frame of --spec")
        seed = _effective_seed(args)
        pop = load_population(args.population, frame)
        spec = LabelingProcessSpec.from_mass(spec_mass)
        out_pop = general_relabel(pop, spec, seed, workers=args.workers)

    save_population(out_pop, args.out)
    doc = relabel_report_doc(len(pop), len(out_pop))
    if args.report:
        Path(args.report).write_bytes(json_bytes(doc))
    print(f"survivors: {doc['survivors']}  discarded: {doc['discarded']}")
    return 0


def _cmd_synthesize(args: argparse.Namespace) -> int:
    _require_inputs(args.mass)
    _require_output_dirs(args.out)
    m = load_mass(args.mass)
    seed = _effective_seed(args)
    pop = synthesize_population(m, args.size, mode=args.mode, seed=seed)
    save_population(pop, args.out)
    print(f"wrote {len(pop)} records to {args.out}")
    return 0


def _cmd_verify_axioms(args: argparse.Namespace) -> int:
    _require_inputs(args.population)
    _require_output_dirs(args.out)
    frame = _parse_frame(args.frame)
    pop = load_population(args.population, frame)
    return _emit_report(verify_mte_axioms(pop), args)


def _cmd_verify_simple(args: argparse.Namespace) -> int:
    _require_inputs(args.population)
    _require_output_dirs(args.out)
    frame = _parse_frame(args.frame)
    pop = load_population(args.population, frame)
    label = decode_subset(frame, args.label)
    return _emit_report(verify_simple_relabel(pop, label), args)


def _cmd_verify_general(args: argparse.Namespace) -> int:
    _require_inputs(args.population, args.spec)
    _require_output_dirs(args.out)
    spec_mass = load_mass(args.spec)
    frame = spec_mass.frame
    if args.frame is not None and _parse_frame(args.frame) != frame:
        raise FormatError("--frame does not match the frame of --spec")
    seed = _effective_seed(args)
    pop = load_population(args.population, frame)
    spec = LabelingProcessSpec.from_mass(spec_mass)
    report = verify_general_relabel(
        pop, spec, trials=args.trials, seed=seed, tolerance=args.tolerance
    )
    return _emit_report(report, args)


def _cmd_verify_coot(args: argparse.Namespace) -> int:
    _require_output_dirs(args.out)
    return _emit_report(verify_coot_printed_table(), args)


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="beliefkit",
        description="Exact-rational belief-function engine over finite frames.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fixture", help="write a built-in golden population CSV")
    p.add_argument("name", choices=["coot", "coot-standin"],
                   help="coot: labeled 717-record fixture; coot-standin: unlabeled synthetic twin")
    p.add_argument("--out", required=True, help="output population CSV path")
    p.set_defaults(func=_cmd_fixture)

    p = sub.add_parser("estimate", help="estimate a mass function from a population CSV")
    p.add_argument("--population", required=True, help="input population CSV")
    p.add_argument("--frame", required=True,
                   help="frame elements joined by '|', e.g. 'HB|HG|MB|MG|SB|SG|DB|DG'")
    p.add_argument("--out", required=True, help="output mass JSON path")
    p.add_argument("--tables", help="also write full Bel/Pl tables (frame size <= 12) to this JSON path")
    p.add_argument("--format", choices=["json", "text"], default="json",
                   help="text prints a focal-set table with 6-place decimals")
    p.set_defaults(func=_cmd_estimate)

    p = sub.add_parser("combine", help="Dempster-combine two mass JSON files")
    p.add_argument("mass1", help="first mass JSON")
    p.add_argument("mass2", help="second mass JSON")
    p.add_argument("--out", required=True, help="output combined mass JSON path")
    p.add_argument("--report", help="also write {conflict_num, conflict_den} JSON here")
    p.set_defaults(func=_cmd_combine)

    p = sub.add_parser("relabel", help="relabel a population (deterministic or randomized)")
    p.add_argument("--population", required=True, help="input population CSV")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--label", help="fixed label subset, canonical encoding")
    group.add_argument("--spec", help="labeling-process spec (mass JSON over the label menu)")
    p.add_argument("--frame", help="frame elements joined by '|' (required with --label)")
    p.add_argument("--seed", type=lambda s: int(s, 0), default=None,
                   help=f"draw seed for --spec (default: ${SEED_ENV_VAR} or 0)")
    p.add_argument("--workers", type=int, default=None,
                   help="partition record draws across threads (same output)")
    p.add_argument("--out", required=True, help="output population CSV path")
    p.add_argument("--report", help="write {survivors, discarded, conflict_num, conflict_den} here")
    p.set_defaults(func=_cmd_relabel)

    p = sub.add_parser("synthesize", help="build a population realizing a mass JSON")
    p.add_argument("--mass", required=True, help="input mass JSON")
    p.add_argument("--size", required=True, type=int, help="number of records")
    p.add_argument("--mode", choices=["exact", "sampled"], default="exact",
                   help="exact: largest-remainder counts; sampled: i.i.d. draws")
    p.add_argument("--seed", type=lambda s: int(s, 0), default=None,
                   help=f"sampling seed (default: ${SEED_ENV_VAR} or 0; ignored in exact mode)")
    p.add_argument("--out", required=True, help="output population CSV path")
    p.set_defaults(func=_cmd_synthesize)

    v = sub.add_parser("verify", help="run verification reports")
    vsub = v.add_subparsers(dest="verify_command", required=True)

    def add_report_flags(q: argparse.ArgumentParser) -> None:
        q.add_argument("--out", help="write the report JSON here")
        q.add_argument("--format", choices=["text", "json"], default="text",
                       help="stdout format")

    q = vsub.add_parser("axioms", help="estimator coherence checks on a population")
    q.add_argument("--population", required=True)
    q.add_argument("--frame", required=True, help="frame elements joined by '|'")
    add_report_flags(q)
    q.set_defaults(func=_cmd_verify_axioms)

    q = vsub.add_parser("simple-relabel", help="relabel-vs-combination equality check")
    q.add_argument("--population", required=True)
    q.add_argument("--frame", required=True, help="frame elements joined by '|'")
    q.add_argument("--label", required=True, help="label subset, canonical encoding")
    add_report_flags(q)
    q.set_defaults(func=_cmd_verify_simple)

    q = vsub.add_parser("general-relabel",
                        help="closed-form and Monte Carlo checks on randomized relabeling")
    q.add_argument("--population", required=True)
    q.add_argument("--spec", required=True, help="labeling-process spec (mass JSON)")
    q.add_argument("--frame", help="optional frame override; must match the spec")
    q.add_argument("--trials", type=int, default=10000)
    q.add_argument("--seed", type=lambda s: int(s, 0), default=None,
                   help=f"trial seed (default: ${SEED_ENV_VAR} or 0)")
    q.add_argument("--tolerance", type=float, default=0.01)
    add_report_flags(q)
    q.set_defaults(func=_cmd_verify_general)

    q = vsub.add_parser("coot-table", help="golden-fixture audit against the published table")
    add_report_flags(q)
    q.set_defaults(func=_cmd_verify_coot)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except TotalConflictError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except BeliefkitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
