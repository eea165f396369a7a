"""Command-line front end: ``singular-hecke <command> ...``.

Exit codes: 0 success, 1 a verification or catalog check failed, 2 bad
input (parse errors, unknown names, malformed catalog), 3 an invariant that
could not be brought into (t, x) form.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from . import traces
from .braid import BraidWord, ParseError
from .cache import default_path
from .catalog import CatalogError, load_catalog
from .hecke import HeckeElem
from .invariant import FORMS, NotExpressible, basis_invariants, invariant, to_canonical
from .singular import rewrite_to_spanning
from .verify import SUITES, SuiteOptions, run_suite

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_NOT_EXPRESSIBLE = 0, 1, 2, 3


class InputError(Exception):
    pass


def _resolve_word(text: str, strands: Optional[int], catalog_path) -> BraidWord:
    try:
        entries = load_catalog(catalog_path)
    except CatalogError as exc:
        raise InputError(f"catalog: {exc}") from None
    for entry in entries:
        if entry.name == text:
            w = entry.word
            if strands is not None:
                if strands < w.strands:
                    raise InputError(f"{text} needs at least {w.strands} strands")
                w = w.embed(strands)
            return w
    try:
        return BraidWord.parse(text, strands)
    except ParseError as exc:
        raise InputError(f"cannot parse {text!r}: {exc}") from None


def _setup_cache(args):
    if args.no_cache:
        traces.configure_cache(None)
    else:
        traces.configure_cache(args.cache_file or default_path())


def _prefer_canonical(value):
    # the resolution form is printed in (t, x) whenever that is possible
    try:
        return to_canonical(value)
    except NotExpressible:
        return value


def cmd_invariant(args) -> int:
    w = _resolve_word(args.word, args.strands, args.catalog)
    try:
        value = invariant(w, args.form, jobs=args.jobs)
        if args.form == "resolution":
            value = _prefer_canonical(value)
    except NotExpressible as exc:
        print(f"error: not expressible in t, x: {exc}", file=sys.stderr)
        if exc.residual is not None:
            print(f"residual: {exc.residual}", file=sys.stderr)
        return EXIT_NOT_EXPRESSIBLE
    basis = basis_invariants(w, jobs=args.jobs) if args.basis else None
    if args.json:
        payload = {"word": w.format(), "n": w.strands, "d": w.d, "form": args.form,
                   "terms": value.to_json_terms()}
        if basis is not None:
            payload["basis"] = [c.render() for c in basis]
        print(json.dumps(payload, sort_keys=False))
        return EXIT_OK
    print(value.render())
    if basis is not None:
        for k, c in enumerate(basis):
            print(f"I[{k}] = {c.render()}")
    return EXIT_OK


def cmd_trace(args) -> int:
    w = _resolve_word(args.word, args.strands, args.catalog)
    if args.d is not None and args.d != w.d:
        raise InputError(f"{w.format()} has {w.d} singular letters, not {args.d}")
    for k, value in enumerate(traces.trace_vector(w, jobs=args.jobs)):
        print(f"T[{k}] = {value.render()}")
    return EXIT_OK


def cmd_normalform(args) -> int:
    w = _resolve_word(args.word, args.strands, args.catalog)
    if w.d == 0:
        print(HeckeElem.from_word(w).render())
    else:
        print(rewrite_to_spanning(w).render())
    return EXIT_OK


def cmd_table(args) -> int:
    try:
        entries = load_catalog(args.catalog_file or args.catalog)
    except CatalogError as exc:
        raise InputError(f"catalog: {exc}") from None
    except OSError as exc:
        raise InputError(f"catalog: {exc}") from None
    rows = []
    mismatches = []
    for e in entries:
        try:
            text = invariant(e.word, "canonical", jobs=args.jobs).render()
        except NotExpressible as exc:
            text = f"NotExpressible: {exc.residual}"
        if e.expected is not None and e.expected != text:
            mismatches.append(e.name)
        rows.append({"name": e.name, "n": e.strands, "d": e.word.d,
                     "components": e.components, "invariant": text})
    if args.json:
        print(json.dumps(rows))
    else:
        for r in rows:
            print("\t".join(str(r[k]) for k in ("name", "n", "d", "components", "invariant")))
    for name in mismatches:
        print(f"warning: {name} differs from its expected value", file=sys.stderr)
    return EXIT_FAIL if mismatches else EXIT_OK


def cmd_verify(args) -> int:
    opts = SuiteOptions(d=args.d, n=args.n, seed=args.seed, trials=args.trials)
    report = run_suite(args.suite, opts)
    for case in report.cases:
        print(case.line())
    print(report.summary())
    return EXIT_OK if report.ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="singular-hecke",
        description="Invariants of closed singular braids via Markov traces on singular Hecke algebras.")
    parser.add_argument("--cache-file", help="trace cache file (default: $SINGULAR_HECKE_CACHE "
                                             "or ~/.cache/singular-hecke/trace-cache.tsv)")
    parser.add_argument("--no-cache", action="store_true", help="do not read or write the trace cache")
    parser.add_argument("--catalog", help="catalog file used to resolve link names")
    sub = parser.add_subparsers(dest="command", required=True)

    def word_command(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("word", help="braid word such as \"s1 s2' t1^2\", or a catalog name")
        p.add_argument("--strands", type=int, help="strand count (default: inferred)")
        p.add_argument("--jobs", type=int, default=1, help="worker processes for resolutions")
        return p

    p = word_command("invariant", "compute the invariant of a closed braid")
    p.add_argument("--form", choices=FORMS, default="canonical")
    p.add_argument("--basis", action="store_true", help="also print the normalized basis invariants")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_invariant)

    p = word_command("trace", "print T[0] .. T[d] of a word")
    p.add_argument("--d", type=int, help="expected number of singular letters")
    p.set_defaults(func=cmd_trace)

    p = word_command("normalform", "expand a word in the Hecke basis or the spanning set")
    p.set_defaults(func=cmd_normalform)

    p = sub.add_parser("table", help="invariants of every catalog entry")
    p.add_argument("catalog_file", nargs="?", help="catalog file (default: the shipped catalog)")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--tsv", action="store_true", help="tab-separated rows (default)")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", help="run a property suite")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--d", type=int, default=2, help="maximum singular degree")
    p.add_argument("--n", type=int, default=4, help="maximum strand count")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=20)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _setup_cache(args)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    finally:
        traces.configure_cache(None)


if __name__ == "__main__":
    sys.exit(main())
