"""Command line front end.

Exit status: 0 ok, 1 a verification failed, 2 usage or input error.  Errors
are printed to stderr as one JSON object with a ``category`` field.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import complement as cm
from . import cover as cv
from . import greedy, verify
from .errors import AddcompError, ParseError, PreconditionError, VerificationError
from .sequence import GROWTH_RULES, Sequence

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


def artifact_dir() -> Path:
    return Path(os.environ.get("ADDCOMP_SEED_DIR", "."))


def _out_path(arg: str | None, default_name: str) -> Path:
    if arg:
        return Path(arg)
    return artifact_dir() / default_name


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise ParseError(f"expected comma-separated integers, got {text!r}") from None


def _load_seq(args) -> Sequence:
    path = Path(args.seq) if args.seq else artifact_dir() / "seq.json"
    if not path.exists():
        raise ParseError(f"sequence file {path} not found (run `construct` first)")
    return Sequence.load(path)


def _load_blocks(args) -> cm.ComplementBlocks:
    path = Path(args.comp) if args.comp else artifact_dir() / "comp.json"
    if not path.exists():
        raise ParseError(f"block file {path} not found (run `complement` first)")
    return cm.ComplementBlocks.load(path)


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=False))


# -- subcommands ---------------------------------------------------------------

def cmd_construct(args) -> int:
    seq, ladder = greedy.build_sequence(args.levels, args.growth, args.extra, args.max_terms)
    path = _out_path(args.out, "seq.json")
    path.parent.mkdir(parents=True, exist_ok=True)
    seq.save(path)
    _emit({"path": str(path), "terms": len(seq),
           "ladder": [[lv.k, lv.n, None if lv.x is None else str(lv.x)] for lv in ladder]})
    return EXIT_OK


def cmd_complement(args) -> int:
    seq = _load_seq(args)
    blocks = cm.build_blocks(seq, args.blocks, args.strategy, args.exact_cap)
    path = _out_path(args.out, "comp.json")
    path.parent.mkdir(parents=True, exist_ok=True)
    blocks.save(path)
    _emit({"path": str(path),
           "blocks": [{"k": b.k, "a_k": str(b.a), "L": len(b.U), "cover": b.cover,
                       "ratio": str(r)} for b, (_, r) in zip(blocks.blocks, cm.l_ratios(seq, blocks))],
           "safe_limit": str(blocks.safe_limit)})
    return EXIT_OK


def cmd_cover(args) -> int:
    elements = _int_list(args.elements)
    if args.mode == "structured":
        if args.step is None:
            raise PreconditionError("--mode structured needs --step")
        sol = cv.cover_structured(args.step, args.m, elements)
    else:
        inst = cv.CoverInstance.from_elements(args.m, elements)
        sol = cv.solve(inst, args.mode, args.exact_cap)
    _emit({"L": sol.size, "translates": list(sol.translates), "exactness": sol.exactness})
    return EXIT_OK


def cmd_verify_coverage(args) -> int:
    seq = _load_seq(args)
    blocks = _load_blocks(args)
    X = args.at[0] if args.at else min(blocks.span, args.sieve_cap)
    limit = verify.safe_limit(seq, blocks)
    cov = verify.sumset_coverage(seq.terms, blocks, X, args.sieve_cap, exact_limit=limit)
    _emit({"X": X, "N0": cov.N0, "gaps": list(cov.gaps)})
    return EXIT_OK


def _points(args, seq, blocks) -> list[int] | None:
    pts = list(args.at or [])
    if args.at_level:
        ladder = {lv.k: lv for lv in greedy.level_ladder(seq)}
        for k in args.at_level:
            lv = ladder.get(k)
            if lv is None or lv.x is None:
                raise PreconditionError(f"ladder point x_{k} is not built")
            pts.append(lv.x)
    return sorted(set(pts)) if pts else None


def _sweep(args):
    seq = _load_seq(args)
    blocks = _load_blocks(args)
    reports = verify.criterion_sweep(seq, blocks, _points(args, seq, blocks))
    # recount B(x) by enumeration wherever the window is small enough
    for r in reports:
        if r.x <= args.enum_cap and len(cm.b_members(blocks, 1, r.x, args.enum_cap)) != r.B:
            raise VerificationError(f"B({r.x}) disagrees with enumeration")
    return seq, blocks, reports


def cmd_criterion(args) -> int:
    seq, blocks, reports = _sweep(args)
    if args.format == "json":
        text = json.dumps([{k: str(v) for k, v in r.row().items()} for r in reports], indent=1) + "\n"
    else:
        text = verify.write_csv(reports)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_lemma(args) -> int:
    held, total = verify.lemma_exhaustive(args.max)
    line = f"{held}/{total} hold"
    if args.random:
        rh, rt = verify.lemma_random(args.random, args.random_max, args.seed)
        line += f"; random {rh}/{rt} hold"
        held, total = held + rh, total + rt
    print(line)
    return EXIT_OK if held == total else EXIT_FAILED


def cmd_report(args) -> int:
    from .plotting import plot_criterion

    seq, blocks, reports = _sweep(args)
    out = Path(args.out) if args.out else artifact_dir()
    out.mkdir(parents=True, exist_ok=True)
    (out / "criterion.csv").write_text(verify.write_csv(reports))
    trend = verify.ladder_trend(seq, blocks)
    fig = out / f"criterion.{args.format}"
    plot_criterion(reports, fig, args.format, trend["points"])
    summary = {"csv": str(out / "criterion.csv"), "figure": str(fig),
               "ladder_R": [str(r) for r in trend["R"]], "decreasing": trend["decreasing"]}
    _emit(summary)
    if trend["warning"]:
        print(f"warning: {trend['warning']}", file=sys.stderr)
    return EXIT_OK


# -- parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="addcomp", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def inputs(sp):
        sp.add_argument("--seq", help="sequence JSON (default: $ADDCOMP_SEED_DIR/seq.json)")
        sp.add_argument("--comp", help="block JSON (default: $ADDCOMP_SEED_DIR/comp.json)")

    sp = sub.add_parser("construct", help="build the greedy sequence")
    sp.add_argument("--levels", type=int, default=2)
    sp.add_argument("--extra", type=int, default=0, help="terms beyond a_{n_K}")
    sp.add_argument("--growth", choices=sorted(GROWTH_RULES), default="linear")
    sp.add_argument("--max-terms", type=int, default=greedy.MAX_TERMS)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("complement", help="build the complement blocks")
    sp.add_argument("--seq")
    sp.add_argument("--blocks", type=int, required=True, help="number of blocks K")
    sp.add_argument("--strategy", choices=["auto", "exact", "greedy"], default="auto")
    sp.add_argument("--exact-cap", type=int, default=cv.EXACT_CAP)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_complement)

    sp = sub.add_parser("cover", help="one L(m) query")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--elements", required=True, help="comma-separated elements of A ∩ [1, m]")
    sp.add_argument("--mode", choices=["exact", "greedy", "auto", "structured"], default="auto")
    sp.add_argument("--step", type=int, help="progression step for --mode structured")
    sp.add_argument("--exact-cap", type=int, default=cv.EXACT_CAP)
    sp.set_defaults(func=cmd_cover)

    sp = sub.add_parser("verify-coverage", help="sieve A + B over [1, X]")
    inputs(sp)
    sp.add_argument("--at", type=int, nargs=1, help="X (default: last block member, capped)")
    sp.add_argument("--sieve-cap", type=int, default=verify.SIEVE_CAP)
    sp.set_defaults(func=cmd_verify_coverage)

    for name, func, fmts, default in (("criterion", cmd_criterion, ["csv", "json"], "csv"),
                                      ("report", cmd_report, ["svg", "png", "pdf"], "svg")):
        sp = sub.add_parser(name, help=f"criterion sweep ({'/'.join(fmts)})")
        inputs(sp)
        sp.add_argument("--at", type=int, nargs="+", help="evaluation points")
        sp.add_argument("--at-level", type=int, nargs="+", help="ladder levels k (x_k)")
        sp.add_argument("--format", choices=fmts, default=default)
        sp.add_argument("--out")
        sp.add_argument("--enum-cap", type=int, default=verify.ENUM_CAP)
        sp.set_defaults(func=func)

    sp = sub.add_parser("lemma", help="exhaustive sum/difference inequality check")
    sp.add_argument("--max", type=int, default=6)
    sp.add_argument("--random", type=int, default=0, help="extra random pairs")
    sp.add_argument("--random-max", type=int, default=50)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_lemma)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except AddcompError as exc:
        print(json.dumps({"error": exc.category, "message": str(exc)}), file=sys.stderr)
        return EXIT_FAILED if exc.category == "verification" else EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
