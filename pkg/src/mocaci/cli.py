"""Command-line entry point: ``mocaci <subcommand>`` (or ``python -m mocaci``).

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from pathlib import Path

from .boolfun import (BooleanFunction, algebraic_degree, correlation_immunity_order,
                      nonlinearity, walsh_transform)
from .ca import LocalRule, enumerate_bipermutive, is_bipermutive
from .debruijn import build_labeling
from .errors import PreconditionError, VerificationError
from .latin import square_from_ca
from .oa import MocaFamily, OrthogonalArray, binary_expansion_from_moca, expurgate
from .search import REFERENCE_ROWS, classify_families, enumerate_moca, family_counts

EXIT_OK, EXIT_VERIFY, EXIT_USAGE = 0, 1, 2
MAX_LISTED_DIAMETER = 4


class UsageError(Exception):
    pass


def _cmd_rules(args) -> int:
    d = args.diameter
    if d < 1:
        raise UsageError("--diameter must be positive")
    if d > MAX_LISTED_DIAMETER and not (args.bipermutive_only and d >= 3):
        raise UsageError(f"listing all rules is limited to d <= {MAX_LISTED_DIAMETER}")
    if args.bipermutive_only and d >= 3:
        rules = enumerate_bipermutive(d)
    else:
        rules = [LocalRule(d, w) for w in range(1 << (1 << d))]
        if args.bipermutive_only:
            rules = [r for r in rules if is_bipermutive(r)]
    for r in rules:
        if args.tables:
            print(r.wolfram, "".join(map(str, r.table)))
        else:
            print(r.wolfram)
    return EXIT_OK


def _cmd_families(args) -> int:
    if args.diameter < 3 or args.k < 2:
        raise UsageError("need --diameter >= 3 and --k >= 2")
    fams = enumerate_moca(args.diameter, args.k, canonical=not args.all_rules, jobs=args.jobs)
    if args.format == "csv":
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(["d", "k"] + [f"rule_{i + 1}" for i in range(args.k)])
        for fam in fams:
            w.writerow([fam.d, fam.k, *fam.rules])
    else:
        for fam in fams:
            print(fam.to_record())
    return EXIT_OK


def load_function(spec: str) -> BooleanFunction:
    """Hex string, or a file holding a binary table, a 0x-prefixed hex table,
    or a binary OA (whose rows become the support)."""
    path = Path(spec)
    if not path.is_file():
        return BooleanFunction.from_hex(spec)
    text = path.read_text().strip()
    first = text.splitlines()[0].split() if text else []
    if len(first) == 4 and all(tok.isdigit() for tok in first):
        return OrthogonalArray.from_text(text).as_function()
    if text.lower().startswith("0x"):
        return BooleanFunction.from_hex(text)
    return BooleanFunction.from_binary_string("".join(text.split()))


def _cmd_analyze(args) -> int:
    try:
        f = load_function(args.function)
    except (ValueError, OSError) as exc:
        raise UsageError(f"cannot read function: {exc}") from exc
    spectrum = walsh_transform(f)
    values = spectrum.values
    report = {
        "n": f.n,
        "weight": f.weight,
        "ci": correlation_immunity_order(f, spectrum),
        "nonlinearity": nonlinearity(f),
        "degree": algebraic_degree(f),
        "walsh_max_abs": spectrum.max_abs(),
        "walsh_zeros": int((values == 0).sum()),
        "walsh_distinct": sorted({int(v) for v in values}),
    }
    if args.json:
        print(json.dumps(report))
    else:
        for key, value in report.items():
            print(f"{key}: {value}")
    return EXIT_OK


def _cmd_reproduce(args) -> int:
    if not args.table1:
        raise UsageError("nothing to reproduce; pass --table1")
    failures, findings = [], []
    for d, ref in REFERENCE_ROWS.items():
        cls = classify_families(d, 3, jobs=args.jobs)
        counts = family_counts(d, 3, jobs=args.jobs)
        print(cls.render())
        hist = cls.ci_histogram()
        print(f"   families up to complement: {counts.canonical} (reference {ref['families']}); "
              f"unordered {counts.unordered}, ordered {counts.ordered}, "
              f"ordered up to complement {counts.canonical_ordered}")
        print(f"   CI histogram {hist} (reference {ref['ci']}); "
              f"Min w_H literature bound for n={ref['n']}: {ref['min_weight']}")
        print()
        if counts.canonical != ref["families"]:
            failures.append(f"d={d}: {counts.canonical} families, reference {ref['families']}")
        if any(r.ci < 2 for r in cls.reports):
            failures.append(f"d={d}: a function has CI order below 2")
        if any(r.n != ref["n"] or r.weight != ref["weight"] for r in cls.reports):
            failures.append(f"d={d}: unexpected n or weight")
        if hist != ref["ci"]:
            findings.append(f"d={d}: CI histogram {hist} differs from reference {ref['ci']}")
    for msg in findings:
        print("FINDING:", msg)
    for msg in failures:
        print("MISMATCH:", msg)
    return EXIT_VERIFY if failures else EXIT_OK


def _parse_family(text: str) -> MocaFamily:
    path = Path(text)
    if path.is_file():
        text = path.read_text().strip().splitlines()[0]
    try:
        return MocaFamily.from_record(text)
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"bad family record: {exc}") from exc


def _cmd_expand(args) -> int:
    oa = binary_expansion_from_moca(_parse_family(args.family))
    if args.truth_table:
        print(oa.as_function().to_binary_string())
    else:
        sys.stdout.write(oa.to_text())
    return EXIT_OK


def _cmd_expurgate(args) -> int:
    try:
        oa = OrthogonalArray.from_text(Path(args.oa).read_text())
    except (ValueError, OSError) as exc:
        raise UsageError(f"cannot read OA: {exc}") from exc
    if args.strength < 1 or oa.strength < args.strength:
        raise UsageError(f"array strength {oa.strength} below requested {args.strength}")
    out = expurgate(oa, args.strength, budget=args.budget, node_limit=args.node_limit)
    check = OrthogonalArray.verified(out.rows, out.s)
    if check.strength < args.strength or check.runs > oa.runs:
        raise VerificationError(f"expurgated array failed re-verification: {check!r}")
    logging.getLogger(__name__).info("expurgated %d -> %d rows", oa.runs, check.runs)
    sys.stdout.write(check.to_text())
    return EXIT_OK


def _cmd_labeling(args) -> int:
    rules = [LocalRule(args.diameter, int(w)) for w in args.rules.split(",")]
    print(build_labeling(rules).dump())
    return EXIT_OK


def _cmd_square(args) -> int:
    print(square_from_ca(LocalRule(args.diameter, args.rule)).format())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mocaci", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("rules", help="list local rules of a diameter")
    r.add_argument("--diameter", type=int, required=True)
    r.add_argument("--bipermutive-only", action="store_true")
    r.add_argument("--tables", action="store_true", help="also print truth tables")
    r.set_defaults(func=_cmd_rules)

    f = sub.add_parser("families", help="enumerate k-MOCA families")
    f.add_argument("--diameter", type=int, required=True)
    f.add_argument("--k", type=int, required=True)
    f.add_argument("--jobs", type=int, default=1)
    f.add_argument("--format", choices=("jsonl", "csv"), default="jsonl")
    f.add_argument("--all-rules", action="store_true",
                   help="do not identify rules with their complements")
    f.set_defaults(func=_cmd_families)

    a = sub.add_parser("analyze", help="cryptographic profile of a Boolean function")
    a.add_argument("--function", required=True, help="hex truth table or a file")
    a.add_argument("--json", action="store_true")
    a.set_defaults(func=_cmd_analyze)

    rp = sub.add_parser("reproduce", help="rerun the 3-MOCA classification for d=4,5")
    rp.add_argument("--table1", action="store_true")
    rp.add_argument("--jobs", type=int, default=1)
    rp.set_defaults(func=_cmd_reproduce)

    e = sub.add_parser("expand", help="binary OA of a MOCA family")
    e.add_argument("--family", required=True, help='JSON record, e.g. {"d": 3, "rules": [90, 150]}')
    e.add_argument("--truth-table", action="store_true", help="emit the function's binary truth table")
    e.set_defaults(func=_cmd_expand)

    x = sub.add_parser("expurgate", help="remove OA rows while keeping a strength")
    x.add_argument("--oa", required=True)
    x.add_argument("--strength", type=int, required=True)
    x.add_argument("--budget", type=int, default=4)
    x.add_argument("--node-limit", type=int, default=20000)
    x.set_defaults(func=_cmd_expurgate)

    lb = sub.add_parser("labeling", help="coupled de Bruijn labeling table")
    lb.add_argument("--diameter", type=int, required=True)
    lb.add_argument("--rules", required=True, help="comma-separated Wolfram numbers")
    lb.set_defaults(func=_cmd_labeling)

    sq = sub.add_parser("square", help="Latin square of a bipermutive rule")
    sq.add_argument("--diameter", type=int, required=True)
    sq.add_argument("--rule", type=int, required=True)
    sq.set_defaults(func=_cmd_square)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (PreconditionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
