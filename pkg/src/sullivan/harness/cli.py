"""Command-line interface.

Models are named either by a shipped corpus name (see `sullivan corpus`)
or by a path to a model file.  Every command prints an aligned table by
default and a structured key-value dump with --dump; dumps and tables
are deterministic, and timing goes to stderr so output stays comparable
byte for byte.

Exit codes: 0 success or all assertions passed, 1 an asserted identity
failed, 2 a truncated computation never stabilized, 3 bad input.
"""

from __future__ import annotations

import argparse
import os
import sys
import time

from ..cohomology import betti_numbers, toomer_by_injectivity, toomer_invariant
from ..differential import SullivanModel
from ..ellipticity import elliptic_summary
from ..errors import InputError, ParseError, TruncationError
from ..extdepth import depth, gorenstein_report
from ..spectral import (
    ext_odd_filtration,
    ext_wordlength_filtration,
    odd_filtration,
    pages,
    wordlength_filtration,
)
from .corpus import CORPUS_NAMES, corpus, corpus_file, corpus_model
from .dump import dump_scalar, dump_text
from .modelio import load_model_file
from .verify import (
    lowest_piece_model,
    pure_model,
    remark_5_rows,
    verify,
    verify_corpus,
)

_FILTRATIONS = {
    "wordlength": lambda model, top: wordlength_filtration(model, top),
    "odd": lambda model, top: odd_filtration(model, top),
    "ext-wordlength": lambda model, top: ext_wordlength_filtration(model),
    "ext-odd": lambda model, top: ext_odd_filtration(model),
}


def _load(ref: str) -> SullivanModel:
    if ref in CORPUS_NAMES:
        return corpus_model(ref)
    if not os.path.exists(ref):
        raise InputError(
            f"{ref!r} is neither a corpus model nor an existing file")
    return load_model_file(ref).to_model()


def _print_table(headers: list[str], rows: list[list[str]]) -> None:
    widths = [len(h) for h in headers]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    line = "  ".join(h.ljust(widths[i]) for i, h in enumerate(headers))
    print(line.rstrip())
    print("  ".join("-" * w for w in widths))
    for row in rows:
        print("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip())


# ---- commands -------------------------------------------------------------------


def _cmd_validate(args) -> int:
    model = _load(args.model)
    alg = model.algebra
    gens = ", ".join(f"{n}:{d}" for n, d in zip(alg.names, alg.degrees))
    print(f"ok: {model.name}")
    print(f"generators: {gens}")
    print(f"formal dimension bound: {model.formal_dimension()}")
    print(f"lowest differential piece: {dump_scalar(model.lowest_part_index())}")
    return 0


def _cmd_betti(args) -> int:
    model = _load(args.model)
    top = args.max_degree
    if top is None:
        top = max(model.formal_dimension(), 0) + max(model.algebra.degrees)
    betti = betti_numbers(model, top)
    if args.dump:
        print(dump_text({"model": model.name, "betti": betti}), end="")
        return 0
    _print_table(["degree", "dim"], [[str(n), str(b)] for n, b in enumerate(betti)])
    return 0


def _cmd_elliptic(args) -> int:
    model = _load(args.model)
    summary = elliptic_summary(model)
    summary["window"] = {str(n): v for n, v in summary["window"].items()}
    if args.dump:
        print(dump_text(summary), end="")
        return 0
    for key, value in summary.items():
        if key == "window":
            cells = ", ".join(f"{n}:{v}" for n, v in value.items()) or "empty"
            print(f"window: {cells}")
        else:
            print(f"{key}: {dump_scalar(value)}")
    return 0


def _cmd_toomer(args) -> int:
    model = _load(args.model)
    value = toomer_invariant(model)
    cross = toomer_by_injectivity(model)
    data = {"model": model.name, "toomer": value,
            "injectivity_route": cross, "routes_agree": value == cross}
    if args.dump:
        print(dump_text(data), end="")
    else:
        for key, val in data.items():
            print(f"{key}: {dump_scalar(val)}")
    return 0 if value == cross else 1


def _variant(model: SullivanModel, which: str) -> SullivanModel:
    if which == "full":
        return model
    if which == "dk":
        return lowest_piece_model(model)[0]
    if which == "pure":
        return pure_model(model)
    return pure_model(lowest_piece_model(model)[0])


def _cmd_depth(args) -> int:
    model = _variant(_load(args.model), args.differential)
    report = gorenstein_report(model)
    if not report["stable"]:
        raise TruncationError(
            f"Ext computation for {model.name} did not stabilize at "
            f"truncation {report['truncation']}")
    report["depth"] = depth(model)
    report["classes"] = [
        {"degree": d, "raw_level": r, "effective_level": e, "ev_nonzero": ev}
        for d, r, e, ev in report["classes"]]
    report["window"] = list(report["window"])
    if args.dump:
        print(dump_text(report), end="")
        return 0
    for key, value in report.items():
        if key == "classes":
            for i, cls in enumerate(value):
                body = ", ".join(f"{k}={dump_scalar(v)}" for k, v in cls.items())
                print(f"class {i}: {body}")
        elif key == "window":
            print(f"window: [{value[0]}, {value[1]}]")
        else:
            print(f"{key}: {dump_scalar(value)}")
    return 0


def _cmd_pages(args) -> int:
    model = _load(args.model)
    fc = _FILTRATIONS[args.filtration](model, args.top)
    r_max = args.r_max if args.r_max is not None else fc.infinity_r()
    tables = pages(fc, r_max)
    if args.dump:
        data = {"model": model.name, "filtration": args.filtration,
                "note": fc.note, "pages": [
                    {"r": t.r,
                     "cells": {f"{p},{q}": d for (p, q), d in sorted(t.dims.items())},
                     "flagged": [f"{p},{q}" for (p, q) in sorted(t.flagged)]}
                    for t in tables]}
        print(dump_text(data), end="")
        return 0
    print(f"model: {model.name}")
    print(f"filtration: {args.filtration}")
    if fc.note:
        print(f"note: {fc.note}")
    for table in tables:
        print(f"\npage r={table.r}")
        rows = [[str(p), str(q), str(d), "*" if (p, q) in table.flagged else ""]
                for (p, q), d in sorted(table.dims.items())]
        _print_table(["p", "q", "dim", "edge"], rows)
    return 0


def _report_to_dump(report) -> dict:
    return {
        "theorem": report.theorem,
        "overall": report.overall(),
        "models": {
            r.model: {
                "status": r.status,
                "relation": r.relation,
                **r.quantities,
                **({"detail": r.detail} if r.detail else {}),
            }
            for r in report.results
        },
    }


def _cmd_verify(args) -> int:
    start = time.perf_counter()
    if args.all_corpus:
        report = verify_corpus(args.theorem)
    else:
        if args.model is None:
            raise InputError("verify needs a model or --all-corpus")
        report = verify(args.theorem, [_load(args.model)])
    elapsed = time.perf_counter() - start
    if args.dump:
        print(dump_text(_report_to_dump(report)), end="")
    else:
        rows = []
        for r in report.results:
            shown = ", ".join(f"{k}={dump_scalar(v)}" for k, v in r.quantities.items())
            rows.append([r.model, r.status, shown, r.detail])
        print(f"theorem {report.theorem}: {report.results[0].relation}")
        _print_table(["model", "status", "quantities", "detail"], rows)
        print(f"overall: {report.overall()}")
    print(f"elapsed: {elapsed:.2f}s", file=sys.stderr)
    return report.exit_code()


def _cmd_scan_remark5(args) -> int:
    models = [_load(ref) for ref in args.models] if args.models else \
        [corpus_model(name) for name in CORPUS_NAMES]
    rows = remark_5_rows(models)
    if args.dump:
        print(dump_text({"rows": rows}), end="")
    elif not rows:
        print("no models qualify (need a non-elliptic lowest piece)")
    else:
        _print_table(
            ["model", "k", "depth of pure lowest piece", "formula", "agrees", "status"],
            [[str(r["model"]), str(r["k"]), dump_scalar(r["depth_pure_lowest_piece"]),
              str(r["formula"]), dump_scalar(r["agrees"]), r["status"]]
             for r in rows])
    return 2 if any(r["agrees"] is None for r in rows) else 0


def _cmd_corpus(args) -> int:
    files = corpus()
    if args.dump:
        data = {f.name: {"generators": [f"{n}:{d}" for n, d in f.generators],
                         "expect": f.expect} for f in files}
        print(dump_text(data), end="")
        return 0
    rows = [[f.name,
             " ".join(f"{n}:{d}" for n, d in f.generators),
             ", ".join(f"{g} -> {t}" for g, (t, _) in f.differential.items()) or "zero",
             str(f.expect.get("provenance", ""))]
            for f in files]
    _print_table(["name", "generators", "differential", "provenance"], rows)
    return 0


# ---- entry point ------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sullivan",
        description="exact invariants of finite minimal Sullivan algebras")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(handler=handler)
        return p

    p = add("validate", _cmd_validate, help="parse and validate a model")
    p.add_argument("model")

    p = add("betti", _cmd_betti, help="cohomology dimensions per degree")
    p.add_argument("model")
    p.add_argument("--max-degree", type=int, default=None)
    p.add_argument("--dump", action="store_true")

    p = add("elliptic", _cmd_elliptic, help="ellipticity verdict with evidence")
    p.add_argument("model")
    p.add_argument("--dump", action="store_true")

    p = add("toomer", _cmd_toomer,
            help="Toomer invariant by two independent routes")
    p.add_argument("model")
    p.add_argument("--dump", action="store_true")

    p = add("depth", _cmd_depth, help="Ext classes, levels, and depth")
    p.add_argument("model")
    p.add_argument("--differential", choices=("full", "dk", "pure", "dk-pure"),
                   default="full")
    p.add_argument("--dump", action="store_true")

    p = add("pages", _cmd_pages, help="spectral-sequence page dimensions")
    p.add_argument("model")
    p.add_argument("--filtration", choices=tuple(_FILTRATIONS), required=True)
    p.add_argument("--r-max", type=int, default=None)
    p.add_argument("--top", type=int, default=None,
                   help="top total degree for the algebra filtrations")
    p.add_argument("--dump", action="store_true")

    p = add("verify", _cmd_verify, help="check one of the integer identities")
    p.add_argument("model", nargs="?", default=None)
    p.add_argument("--theorem", choices=("1", "3", "4"), required=True)
    p.add_argument("--all-corpus", action="store_true")
    p.add_argument("--dump", action="store_true")

    p = add("scan-remark5", _cmd_scan_remark5,
            help="tabulate depth of the pure lowest piece when the lowest "
                 "piece is not elliptic")
    p.add_argument("models", nargs="*")
    p.add_argument("--dump", action="store_true")

    p = add("corpus", _cmd_corpus, help="list the shipped models")
    p.add_argument("--dump", action="store_true")

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 3
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 3
    except TruncationError as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
