"""Command-line entry point.

Exit codes: 0 on success, 1 on a semantic negative (failed verification,
non-isomorphic pair, census mismatch), 2 on malformed input. All output is
deterministic for fixed arguments; diagnostics go to standard error.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional

from .classify import ClassificationError, classify
from .descriptors import (
    DescriptorError,
    GradingDescriptor,
    build,
    graded_isomorphic,
    practically_isomorphic,
)
from .fields import Field, FieldError, parse_field_flag
from .gradings import Grading, GradingError
from .groups import AbelianGroup, GroupError, parse_group_flag
from .identities import find_separator
from .oracle import (
    CensusConfig,
    OracleError,
    census,
    graded_isomorphic_search,
    practical_isomorphic_search,
)
from . import ut


class InputError(Exception):
    """Unreadable or malformed input; maps to exit code 2."""


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}")


def _write_out(text: str, path: Optional[str]) -> None:
    if path is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
            if not text.endswith("\n"):
                fh.write("\n")


def _load_grading(path: str) -> Grading:
    try:
        return Grading.loads(_read(path))
    except (GradingError, GroupError, FieldError) as exc:
        raise InputError(f"{path}: {exc}")


def _load_descriptor(path: str) -> GradingDescriptor:
    try:
        return GradingDescriptor.loads(_read(path))
    except (DescriptorError, GroupError) as exc:
        raise InputError(f"{path}: {exc}")


def _parse_field(flag: str) -> Field:
    try:
        return parse_field_flag(flag)
    except FieldError as exc:
        raise InputError(str(exc))


def _parse_group(flag: str) -> AbelianGroup:
    try:
        return parse_group_flag(flag)
    except GroupError as exc:
        raise InputError(str(exc))


# -- subcommands ------------------------------------------------------------------


def _cmd_construct(args) -> int:
    desc = _load_descriptor(args.descriptor)
    field = _parse_field(args.field)
    try:
        grading = build(desc, field)
    except DescriptorError as exc:
        raise InputError(str(exc))
    _write_out(grading.dumps(), args.output)
    return 0


def _cmd_verify(args) -> int:
    grading = _load_grading(args.grading)
    report = grading.verify()
    _write_out(report.summary(), args.output)
    return 0 if report.ok else 1


def _cmd_classify(args) -> int:
    grading = _load_grading(args.grading)
    try:
        desc, trace = classify(grading)
    except ClassificationError as exc:
        print(f"classification failed at step {exc.step}: {exc}", file=sys.stderr)
        return 1
    lines = [desc.describe(), desc.dumps()]
    if args.trace:
        lines.append(trace.describe(grading))
    _write_out("\n".join(lines), args.output)
    return 0


def _cmd_compare(args) -> int:
    a = _load_grading(args.first)
    b = _load_grading(args.second)
    if a.field != b.field or a.group != b.group or a.n != b.n:
        raise InputError("gradings live over different fields, groups, or sizes")
    try:
        da, _ = classify(a)
        db, _ = classify(b)
    except ClassificationError as exc:
        print(f"classification failed at step {exc.step}: {exc}", file=sys.stderr)
        return 1
    same = practically_isomorphic(da, db) if args.practical else graded_isomorphic(da, db)
    kind = "practically isomorphic" if args.practical else "graded isomorphic"
    lines = [f"{kind}: {'yes' if same else 'no'}"]
    if args.witness:
        if a.field.kind != "prime":
            raise InputError("--witness needs a finite field")
        search = practical_isomorphic_search if args.practical else graded_isomorphic_search
        auto = search(a, b)
        if (auto is not None) != same:
            lines.append("WITNESS SEARCH DISAGREES WITH PREDICATE")
            _write_out("\n".join(lines), args.output)
            return 1
        if auto is not None:
            lines.append("witness automorphism (matrix rows = images of basis cells):")
            for row in auto.matrix():
                lines.append("  " + " ".join(a.field.format(x) for x in row))
    _write_out("\n".join(lines), args.output)
    return 0 if same else 1


def _cmd_separate(args) -> int:
    d1 = _load_descriptor(args.first)
    d2 = _load_descriptor(args.second)
    field = _parse_field(args.field)
    if d1.n != d2.n or d1.group != d2.group:
        raise InputError("descriptors have different n or group")
    sep = find_separator(d1, d2, field)
    if sep is None:
        _write_out("equivalent", args.output)
        return 0
    _write_out(sep.text(d1.group, d1.n), args.output)
    return 0


def _cmd_census(args) -> int:
    field = Field.prime(args.p)
    group = _parse_group(args.group)
    if not group.is_finite():
        raise InputError("census needs a finite group")
    cfg = CensusConfig(
        n=args.n,
        field=field,
        group=group,
        mode=args.mode,
        budget=args.budget,
        seed=args.seed,
        jobs=args.jobs,
    )
    try:
        result = census(cfg)
    except OracleError as exc:
        raise InputError(str(exc))
    _write_out(result.table(), args.output)
    return 0 if not result.mismatches else 1


def _cmd_autos(args) -> int:
    field = Field.prime(args.p)
    total = ut.count_automorphisms(field, args.n)
    _write_out(str(total), args.output)
    return 0


# -- argument surface -------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="utgrade",
        description="Construct, verify, classify, and compare group gradings "
        "on the upper triangular Lie algebra.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("construct", help="build a grading file from a descriptor")
    p.add_argument("--descriptor", required=True, help="descriptor JSON path")
    p.add_argument("--field", required=True, help="field flag: a prime (e.g. 5) or Q")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(run=_cmd_construct)

    p = sub.add_parser("verify", help="check the grading axioms")
    p.add_argument("grading", help="grading JSON path")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(run=_cmd_verify)

    p = sub.add_parser("classify", help="canonical descriptor of a grading")
    p.add_argument("grading", help="grading JSON path")
    p.add_argument("--trace", action="store_true", help="print the normalization trace")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(run=_cmd_classify)

    p = sub.add_parser("compare", help="decide isomorphism of two gradings")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--practical", action="store_true", help="ignore the identity degree")
    p.add_argument(
        "--witness", action="store_true", help="also search for an automorphism witness"
    )
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(run=_cmd_compare)

    p = sub.add_parser("separate", help="find a graded identity holding in one side only")
    p.add_argument("first", help="descriptor JSON path")
    p.add_argument("second", help="descriptor JSON path")
    p.add_argument("--field", default="Q", help="field flag for evaluation (default Q)")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(run=_cmd_separate)

    p = sub.add_parser("census", help="enumerate gradings and bucket into classes")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, required=True, help="field characteristic")
    p.add_argument("--group", required=True, help='group flag, e.g. "2", "2,2", "2+1"')
    p.add_argument("--mode", choices=("full", "pruned", "sampled"), default="full")
    p.add_argument("--budget", type=int, default=10**7)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(run=_cmd_census)

    p = sub.add_parser("autos", help="automorphism group order")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--count", action="store_true", help="print the order (default)")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(run=_cmd_autos)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.run(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
