"""Command-line front end: ``smallcover <command> ...``."""

from __future__ import annotations

import argparse
import json
import sys

from . import catalog, verify
from .catalog import ParseError, UnknownEntry
from .charmap import CharacteristicError, is_characteristic
from .cohomology import hochster_profile, profile_lines
from .enumeration import FILTERS, SearchConfig, enumerate_char_maps
from .fibering import fibering_verdict, format_links_table
from .gf2 import CapacityError, DimensionError
from .obstructions import symplectic_verdict
from .simplicial import ComplexError

EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_PARSE = 0, 1, 2, 3


def _globals(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = argparse.SUPPRESS if suppress else None
    p.add_argument("--json", action="store_true", default=d if suppress else False, help="machine-readable output")
    p.add_argument("--quiet", action="store_true", default=d if suppress else False, help="print only the result line")
    p.add_argument("--jobs", type=int, default=d if suppress else 1, help="worker processes for searches")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="smallcover", description=__doc__)
    _globals(p, suppress=False)
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="run every obstruction on a complex and matrix")
    _globals(a, suppress=True)
    a.add_argument("complex", help="catalog id, file, or facet text")
    a.add_argument("matrix", help="catalog matrix id, file, or column codes")
    a.add_argument("--profile", action="store_true", help="dump nonzero Hochster entries")
    a.add_argument("--no-fibering-search", action="store_true", help="skip the interval-product certificate search")

    e = sub.add_parser("enumerate", help="characteristic matrices up to D-J equivalence")
    _globals(e, suppress=True)
    e.add_argument("complex")
    e.add_argument("--filter", action="append", choices=FILTERS, default=[])
    e.add_argument("--count-only", action="store_true")
    e.add_argument("--rank", type=int, default=None, help="number of rows (default: dimension + 1)")

    f = sub.add_parser("fiber-check", help="circle-fibering certificate for a 3-dimensional small cover")
    _globals(f, suppress=True)
    f.add_argument("complex")
    f.add_argument("matrix")
    f.add_argument("--epsilon", required=True, help="bitstring or catalog vector id")

    c = sub.add_parser("catalog", help="built-in complexes and matrices")
    _globals(c, suppress=True)
    csub = c.add_subparsers(dest="catalog_command", required=True)
    _globals(csub.add_parser("list"), suppress=True)
    show = csub.add_parser("show")
    _globals(show, suppress=True)
    show.add_argument("id")

    v = sub.add_parser("verify-paper", help="run the reference checks")
    _globals(v, suppress=True)
    v.add_argument("--only", action="append", choices=list(verify.TOPICS), help="restrict to a topic (repeatable)")
    return p


def _epsilon(text: str, m: int) -> int:
    if text in catalog.VECTOR_IDS:
        return catalog.catalog_vector(text)
    if len(text) != m or set(text) - {"0", "1"}:
        raise ParseError(f"epsilon must be a {m}-character bitstring")
    return catalog.bits_to_vector(text)


def cmd_analyze(args) -> int:
    K = catalog.load_complex(args.complex)
    lam = catalog.load_matrix(args.matrix, K.dim + 1)
    ok, bad = is_characteristic(K, lam)
    if not ok:
        print(f"not a characteristic matrix: columns over {bad} are dependent", file=sys.stderr)
        return EXIT_CHECK
    rep = symplectic_verdict(K, lam, fibering_search=not args.no_fibering_search)
    prof = hochster_profile(K, lam) if args.profile else None
    if args.json:
        out = rep.to_dict()
        if prof is not None:
            out["profile"] = [{"omega": [i for i in range(K.m) if (w >> i) & 1], "betti": list(v)} for w, v in prof.nonzero()]
        print(json.dumps(out, sort_keys=True))
        return EXIT_OK
    if prof is not None and not args.quiet:
        print("\n".join(profile_lines(prof)))
    text = rep.render()
    print(text.splitlines()[-1] if args.quiet else text)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    K = catalog.load_complex(args.complex)
    n = args.rank or K.dim + 1
    cfg = SearchConfig(n=n, filters=frozenset(args.filter), jobs=args.jobs, count_only=args.count_only)
    res = enumerate_char_maps(K, cfg)
    if args.json:
        out = {"total": res.count}
        if not args.count_only:
            out["matrices"] = [list(c) for c in res.matrices]
        print(json.dumps(out, sort_keys=True))
        return EXIT_OK
    if not (args.count_only or args.quiet):
        for codes in res.matrices:
            print(",".join(map(str, codes)))
    print(f"TOTAL: {res.count}")
    return EXIT_OK


def cmd_fiber_check(args) -> int:
    L = catalog.load_complex(args.complex)
    mu = catalog.load_matrix(args.matrix, L.dim + 1)
    eps = _epsilon(args.epsilon, L.m)
    cert = fibering_verdict(L, mu, eps)
    if args.json:
        print(json.dumps({
            "verdict": cert.verdict,
            "reason": cert.reason,
            "affine": cert.affine_ok,
            "divisor": cert.divisor,
            "links": [{"g": r.g, "P": list(r.ascending), "N": list(r.descending), "ok": r.ok} for r in cert.links],
        }, sort_keys=True))
    else:
        if not args.quiet and cert.links:
            print(format_links_table(cert.links))
            print(f"affine: {cert.affine_ok}")
            print(f"image divisor: {cert.divisor}")
        print(f"VERDICT: {cert.verdict} — {cert.reason}")
    return EXIT_OK if cert.fibers else EXIT_CHECK


def cmd_catalog(args) -> int:
    if args.catalog_command == "list":
        if args.json:
            print(json.dumps(catalog.catalog_ids()))
        else:
            for cid in catalog.catalog_ids():
                print(cid)
        return EXIT_OK
    cid = args.id
    if cid in catalog.VECTOR_IDS:
        print(catalog.VECTOR_IDS[cid])
        return EXIT_OK
    if cid in catalog.MATRIX_HOMES:
        e, M = catalog.catalog_matrix(cid)
        print(f"# {cid} over {e.id}")
        print(catalog.serialize_matrix(M), end="")
        return EXIT_OK
    entry = catalog.catalog_get(cid)
    if args.json:
        print(json.dumps({
            "id": entry.id, "m": entry.complex.m, "facets": entry.complex.facet_lists(),
            "matrices": {k: M.column_codes() for k, M in entry.matrices.items()},
        }, sort_keys=True))
    else:
        print(catalog.show(entry), end="")
    return EXIT_OK


def cmd_verify(args) -> int:
    rows = verify.run(args.only, jobs=args.jobs)
    failures = sum(not c.ok for _, c in rows)
    if args.json:
        print(json.dumps({
            "checks": [{"topic": t, "name": c.name, "expected": repr(c.expected), "actual": repr(c.actual), "ok": c.ok} for t, c in rows],
            "passed": len(rows) - failures,
            "failed": failures,
        }, sort_keys=True))
    else:
        for topic, c in rows:
            if args.quiet and c.ok:
                continue
            line = f"{'PASS' if c.ok else 'FAIL'}  {topic:<16} {c.name}"
            if not c.ok:
                line += f"  expected={c.expected!r} actual={c.actual!r}"
            print(line)
        print(f"{len(rows) - failures} passed, {failures} failed")
    return EXIT_OK if failures == 0 else EXIT_CHECK


COMMANDS = {
    "analyze": cmd_analyze,
    "enumerate": cmd_enumerate,
    "fiber-check": cmd_fiber_check,
    "catalog": cmd_catalog,
    "verify-paper": cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return COMMANDS[args.command](args)
    except (ParseError, UnknownEntry) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (CharacteristicError, ComplexError, DimensionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return EXIT_CHECK


if __name__ == "__main__":
    sys.exit(main())
