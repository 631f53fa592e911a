"""Command-line front end.

Subcommands: ``regions``, ``rules``, ``similarity``, ``satisfiability``,
and ``oracle-check``. Exit codes: 0 success, 1 invalid configuration,
2 table parse error, 3 size guard exceeded, 4 oracle check failure.
Output bytes are deterministic for a fixed configuration.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .complete import description_regions_complete, regions_computational
from .errors import GuardExceededError, TableParseError, ThreeWayError
from .fuzzy import TNorm, format_decimal, format_exact, parse_degree
from .language import (
    DEFAULT_MAX_FORMULAS,
    Formula,
    STRICT,
    enumerate_cdl,
    formula_json,
    formula_sort_key,
    object_description,
    render_formula,
)
from .oracle import OracleReport, run_all_checks
from .rules import Provenance, RuleSet, derive_rules
from .rules import render as render_rules
from .satisfiability import (
    description_regions_alpha_meaning,
    description_regions_confidence,
    sat_profile,
)
from .similarity import (
    description_regions_alpha_sim,
    description_regions_approx,
    similarity_matrix,
)
from .table import DEFAULT_MAX_WORLDS, NA, SetValuedTable, is_complete, parse_table, to_set_valued

METHODS = ("eq-complete", "cdl-complete", "alpha-sim", "approx", "alpha-meaning", "confidence")
COMPLETE_METHODS = {"eq-complete", "cdl-complete"}


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse reports usage problems itself
        return 0 if exc.code in (0, None) else 1
    try:
        return args.handler(args)
    except TableParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except GuardExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ThreeWayError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="threeway",
        description="Induce three-way decision rules from complete and incomplete tables.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    regions = sub.add_parser("regions", help="compute description regions")
    _add_table_options(regions)
    _add_method_options(regions)
    regions.set_defaults(handler=_cmd_regions)

    rules = sub.add_parser("rules", help="derive three-way decision rules")
    _add_table_options(rules)
    _add_method_options(rules)
    rules.set_defaults(handler=_cmd_rules)

    similarity = sub.add_parser("similarity", help="print the pairwise similarity matrix")
    _add_table_options(similarity)
    similarity.add_argument("--tnorm", choices=[k.value for k in TNorm], default=None)
    similarity.add_argument("--exact", action="store_true", help="print exact fractions in text mode")
    similarity.set_defaults(handler=_cmd_similarity)

    satisfiability = sub.add_parser(
        "satisfiability", help="print per-formula satisfiability degrees"
    )
    _add_table_options(satisfiability)
    satisfiability.add_argument("--tnorm", choices=[k.value for k in TNorm], default=None)
    satisfiability.add_argument("--max-formulas", type=int, default=DEFAULT_MAX_FORMULAS)
    satisfiability.set_defaults(handler=_cmd_satisfiability)

    oracle = sub.add_parser("oracle-check", help="run brute-force consistency checks")
    _add_table_options(oracle)
    oracle.add_argument("--class", dest="class_ids", default=None)
    oracle.add_argument("--alpha", default=None)
    oracle.add_argument("--max-worlds", type=int, default=DEFAULT_MAX_WORLDS)
    oracle.set_defaults(handler=_cmd_oracle)

    return parser


def _add_table_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--table", required=True, help="path to an .itab file")
    p.add_argument("--attrs", default=None, help="comma-separated condition attributes")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", default=None, help="write output to a file instead of stdout")


def _add_method_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--method", choices=METHODS, required=True)
    p.add_argument("--class", dest="class_ids", default=None, help="comma-separated object ids")
    p.add_argument("--class-column", default=None, help="decision attribute naming the class")
    p.add_argument("--class-value", default=None, help="target value in the decision column")
    p.add_argument("--tnorm", choices=[k.value for k in TNorm], default=None)
    p.add_argument("--alpha", default=None, help="threshold as a decimal or fraction")
    p.add_argument(
        "--strip-na-atoms",
        nargs="*",
        default=None,
        metavar="ATTR",
        help=f"drop ({NA}) atoms from emitted rules; no argument strips every attribute",
    )
    p.add_argument("--max-worlds", type=int, default=DEFAULT_MAX_WORLDS)
    p.add_argument("--max-formulas", type=int, default=DEFAULT_MAX_FORMULAS)


def _load_table(args) -> SetValuedTable:
    text = Path(args.table).read_text(encoding="utf-8")
    return to_set_valued(parse_table(text))


def _split_csv(value: str) -> list[str]:
    items = [part.strip() for part in value.split(",") if part.strip()]
    if not items:
        raise ValueError("empty comma-separated list")
    return items


def _resolve_attrs(args, st: SetValuedTable, exclude: str | None = None) -> tuple[str, ...]:
    if args.attrs is None:
        names = [a for a in st.attribute_names if a != exclude]
    else:
        names = _split_csv(args.attrs)
        for a in names:
            st.schema(a)
        if exclude in names:
            raise ValueError(f"decision column {exclude!r} cannot be a condition attribute")
        names = [a for a in st.attribute_names if a in set(names)]
    if not names:
        raise ValueError("no condition attributes left")
    return tuple(names)


def _resolve_class(args, st: SetValuedTable) -> tuple[frozenset[str], str, str | None]:
    """Returns (class set, printable label, excluded decision column)."""
    if args.class_ids and args.class_column:
        raise ValueError("use either --class or --class-column, not both")
    if args.class_ids:
        ids = _split_csv(args.class_ids)
        unknown = set(ids) - set(st.objects)
        if unknown:
            raise ValueError(f"unknown objects in --class: {sorted(unknown)}")
        return frozenset(ids), ",".join(sorted(ids, key=st.objects.index)), None
    if args.class_column:
        if args.class_value is None:
            raise ValueError("--class-column requires --class-value")
        column = args.class_column
        st.schema(column)
        members = frozenset(
            x for x in st.objects if st.cell(x, column) == frozenset({args.class_value})
        )
        return members, f"{column}={args.class_value}", column
    raise ValueError("a class is required: pass --class or --class-column/--class-value")


def _resolve_kind_alpha(args, method: str) -> tuple[TNorm, Fraction | None]:
    if method in COMPLETE_METHODS:
        if args.tnorm is not None or args.alpha is not None:
            print(f"warning: --tnorm/--alpha ignored for method {method}", file=sys.stderr)
        return TNorm.MIN, None
    kind = TNorm(args.tnorm) if args.tnorm else TNorm.MIN
    if args.alpha is None:
        raise ValueError(f"method {method} requires --alpha")
    return kind, parse_degree(args.alpha)


def _emit(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _require_complete(st: SetValuedTable, method: str) -> None:
    if not is_complete(st):
        raise ValueError(f"method {method} requires a complete table")


def _description_regions(st, method, attrs, members, kind, alpha, args):
    if method == "cdl-complete":
        _require_complete(st, method)
        return description_regions_complete(st, attrs, members, args.max_formulas)
    if method == "alpha-sim":
        return description_regions_alpha_sim(
            st, attrs, alpha, members, kind, args.max_formulas
        )
    if method == "approx":
        return description_regions_approx(
            st, attrs, alpha, members, kind, args.max_formulas
        )
    if method == "alpha-meaning":
        return description_regions_alpha_meaning(
            st, attrs, alpha, members, kind, args.max_formulas
        )
    if method == "confidence":
        return description_regions_confidence(
            st, attrs, alpha, members, kind, args.max_formulas
        )
    raise ValueError(f"method {method} does not produce formula regions")


def _strip_na_atoms(formulas, strip: list[str] | None, attrs) -> frozenset[Formula]:
    if strip is None:
        return frozenset(formulas)
    targets = set(attrs) if strip == [] else set(strip)
    out = set()
    for p in formulas:
        kept = tuple(a for a in p.atoms if not (a.value == NA and a.attr in targets))
        if kept:
            out.add(Formula(kept))
    return frozenset(out)


def _sorted_formulas(formulas, schemas) -> list[Formula]:
    return sorted(formulas, key=lambda p: formula_sort_key(p, schemas))


def _block_lists(st, blocks) -> list[list[str]]:
    ordered = sorted(blocks, key=lambda b: min(st.objects.index(x) for x in b))
    return [[x for x in st.objects if x in block] for block in ordered]


def _derive(st, method, attrs, members, label, kind, alpha, args) -> RuleSet:
    schemas = tuple(st.schema(a) for a in attrs)
    provenance = Provenance(
        method=method,
        tnorm=None if method in COMPLETE_METHODS else kind.value,
        alpha=alpha,
        class_label=label,
    )
    if method == "eq-complete":
        _require_complete(st, method)
        regions = regions_computational(st, attrs, members)
        dpos = {object_description(st.known_row(next(iter(b))), attrs, st.attribute_names)
                for b in regions.pos}
        dneg = {object_description(st.known_row(next(iter(b))), attrs, st.attribute_names)
                for b in regions.neg}
    else:
        dpos, dneg = _description_regions(st, method, attrs, members, kind, alpha, args)
    dpos = _strip_na_atoms(dpos, args.strip_na_atoms, attrs)
    dneg = _strip_na_atoms(dneg, args.strip_na_atoms, attrs)
    return derive_rules(
        dpos, dneg, provenance, sort_key=lambda p: formula_sort_key(p, schemas)
    )


def _cmd_regions(args) -> int:
    st = _load_table(args)
    members, label, excluded = _resolve_class(args, st)
    attrs = _resolve_attrs(args, st, exclude=excluded)
    kind, alpha = _resolve_kind_alpha(args, args.method)
    schemas = tuple(st.schema(a) for a in attrs)

    if args.method == "eq-complete":
        _require_complete(st, args.method)
        regions = regions_computational(st, attrs, members)
        payload = {
            "pos": _block_lists(st, regions.pos),
            "neg": _block_lists(st, regions.neg),
            "bnd": _block_lists(st, regions.bnd),
        }
        if args.format == "json":
            _emit(args, json.dumps(payload, indent=2) + "\n")
        else:
            lines = []
            for name in ("pos", "neg", "bnd"):
                for block in payload[name]:
                    lines.append(f"{name} {{{','.join(block)}}}")
            ruleset = _derive(st, args.method, attrs, members, label, kind, alpha, args)
            lines.append(render_rules(ruleset, "text").rstrip("\n"))
            _emit(args, "\n".join(lines) + "\n")
        return 0

    dpos, dneg = _description_regions(st, args.method, attrs, members, kind, alpha, args)
    dpos_view = _strip_na_atoms(dpos, args.strip_na_atoms, attrs)
    dneg_view = _strip_na_atoms(dneg, args.strip_na_atoms, attrs)
    if args.format == "json":
        payload = {
            "dpos": [formula_json(p) for p in _sorted_formulas(dpos_view, schemas)],
            "dneg": [formula_json(p) for p in _sorted_formulas(dneg_view, schemas)],
        }
        _emit(args, json.dumps(payload, indent=2) + "\n")
    else:
        lines = [f"DPOS {render_formula(p)}" for p in _sorted_formulas(dpos_view, schemas)]
        lines += [f"DNEG {render_formula(p)}" for p in _sorted_formulas(dneg_view, schemas)]
        ruleset = _derive(st, args.method, attrs, members, label, kind, alpha, args)
        lines.append(render_rules(ruleset, "text").rstrip("\n"))
        _emit(args, "\n".join(lines) + "\n")
    return 0


def _cmd_rules(args) -> int:
    st = _load_table(args)
    members, label, excluded = _resolve_class(args, st)
    attrs = _resolve_attrs(args, st, exclude=excluded)
    kind, alpha = _resolve_kind_alpha(args, args.method)
    ruleset = _derive(st, args.method, attrs, members, label, kind, alpha, args)
    _emit(args, render_rules(ruleset, args.format))
    return 0


def _cmd_similarity(args) -> int:
    st = _load_table(args)
    attrs = _resolve_attrs(args, st)
    kind = TNorm(args.tnorm) if args.tnorm else TNorm.MIN
    matrix = similarity_matrix(st, attrs, kind)
    if args.format == "json":
        payload = {
            "objects": list(matrix.objects),
            "attrs": list(matrix.attrs),
            "tnorm": kind.value,
            "entries": [
                [format_exact(matrix.degree(x, y)) for y in matrix.objects]
                for x in matrix.objects
            ],
        }
        _emit(args, json.dumps(payload, indent=2) + "\n")
        return 0
    render = format_exact if args.exact else format_decimal
    cells = [[render(matrix.degree(x, y)) for y in matrix.objects] for x in matrix.objects]
    width = max(
        max(len(c) for row in cells for c in row),
        max(len(x) for x in matrix.objects),
    )
    header = " " * width + " " + " ".join(f"{y:>{width}}" for y in matrix.objects)
    lines = [header]
    for x, row in zip(matrix.objects, cells):
        lines.append(f"{x:>{width}} " + " ".join(f"{c:>{width}}" for c in row))
    _emit(args, "\n".join(lines) + "\n")
    return 0


def _cmd_satisfiability(args) -> int:
    st = _load_table(args)
    attrs = _resolve_attrs(args, st)
    kind = TNorm(args.tnorm) if args.tnorm else TNorm.MIN
    schemas = tuple(st.schema(a) for a in attrs)
    formulas = enumerate_cdl(schemas, STRICT, args.max_formulas)
    entries = []
    for i, p in enumerate(formulas, start=1):
        profile = sat_profile(st, p, kind)
        nonzero = {x: profile.degrees[x] for x in st.objects if profile.degrees[x] != 0}
        entries.append((f"p{i}", p, nonzero))
    if args.format == "json":
        payload = [
            {
                "label": label,
                "formula": formula_json(p),
                "tnorm": kind.value,
                "degrees": {x: format_exact(d) for x, d in nonzero.items()},
            }
            for label, p, nonzero in entries
        ]
        _emit(args, json.dumps(payload, indent=2) + "\n")
        return 0
    lines = []
    for label, p, nonzero in entries:
        shown = " ".join(f"{x}:{format_exact(d)}" for x, d in nonzero.items())
        lines.append(f"{label}\t{render_formula(p)}\t{shown}".rstrip())
    _emit(args, "\n".join(lines) + "\n")
    return 0


def _cmd_oracle(args) -> int:
    st = _load_table(args)
    attrs = _resolve_attrs(args, st)
    members = None
    if args.class_ids:
        ids = _split_csv(args.class_ids)
        unknown = set(ids) - set(st.objects)
        if unknown:
            raise ValueError(f"unknown objects in --class: {sorted(unknown)}")
        members = frozenset(ids)
    alpha = parse_degree(args.alpha) if args.alpha else None
    reports = run_all_checks(
        st, attrs, x_set=members, alpha=alpha, max_worlds=args.max_worlds
    )
    failures = [r for r in reports if not r.passed]
    if args.format == "json":
        payload = [
            {
                "check": r.check,
                "inputs": r.inputs,
                "passed": r.passed,
                "expected": _summary(r.expected),
                "actual": _summary(r.actual),
            }
            for r in reports
        ]
        _emit(args, json.dumps(payload, indent=2) + "\n")
    else:
        lines = []
        by_check: dict[str, list[OracleReport]] = {}
        for r in reports:
            by_check.setdefault(r.check, []).append(r)
        for check, group in by_check.items():
            ok = sum(1 for r in group if r.passed)
            lines.append(f"{check}: {ok}/{len(group)} ok")
        for r in failures:
            lines.append(
                f"FAIL {r.check} [{r.inputs}] expected={_summary(r.expected)} "
                f"actual={_summary(r.actual)}"
            )
        _emit(args, "\n".join(lines) + "\n")
    return 4 if failures else 0


def _summary(value) -> str:
    if isinstance(value, Fraction):
        return format_exact(value)
    text = repr(value)
    return text if len(text) <= 200 else text[:197] + "..."


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
