"""Command-line front end.

Exit status: 0 when every check passes or is skipped, 1 on a mismatch or a
failed invariant, 2 on a usage or parse error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

import numpy as np

from . import orders, oracle, symplectic
from .errors import InvalidSpec, SkewUnitaryError
from .linalg import (
    FormSpace,
    Vector,
    format_matrix,
    format_vector,
    gram_of,
    is_unitary,
    parse_matrix,
    parse_vector,
    reduce_matrix,
    standard_gram,
)
from .ring import DEFAULT_ELEMENT_BUDGET, RingSpec, make_ring, quotient_ring
from .sweep import load_sweep

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2

ORDER_ROWS = ("sp_order", "unitary_order_", "formulas_agree", "principal_case_order",
              "chain_product", "quotient_order", "reduction_image", "kernel_order")


class UsageError(Exception):
    pass


# -- argument handling ---------------------------------------------------------


def _add_ring_args(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("ring")
    g.add_argument("--spec", help="ring specification file (key=value per line)")
    g.add_argument("--p", type=int)
    g.add_argument("--k", type=int)
    g.add_argument("--d", type=int)
    g.add_argument("--sigma", type=int, help="order of sigma on the base ring (1 or 2)")
    g.add_argument("--b", help="radicand: 'zero' or the exponent j of b = p^j")
    g.add_argument("--truncate-odd", action="store_true")
    g.add_argument("--star", choices=("quadratic", "trivial"))
    g.add_argument("--max-elements", type=int, default=DEFAULT_ELEMENT_BUDGET,
                   help="element budget for ring construction")


def _add_budget_args(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("enumeration budget")
    g.add_argument("--max-vectors", type=int, default=oracle.DEFAULT_BUDGET.max_vectors)
    g.add_argument("--max-pairs", type=int, default=oracle.DEFAULT_BUDGET.max_pairs)
    g.add_argument("--max-matrices", type=int, default=oracle.DEFAULT_BUDGET.max_matrices)
    g.add_argument("--workers", type=int, default=1, help="threads for pair scans")


def _add_output_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "csv", "text"), default="text")
    p.add_argument("--output", help="write the report here instead of stdout")
    p.add_argument("--timings", action="store_true", help="include elapsed_ms in JSON")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="skewunitary",
        description="Skew-hermitian forms and unitary groups over finite local rings.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ring", help="ring statistics, axiom checks, principal structure")
    _add_ring_args(p)
    _add_output_args(p)

    for name, text in (("order", "unitary-group orders"), ("count", "vector and pair counts")):
        p = sub.add_parser(name, help=text)
        _add_ring_args(p)
        p.add_argument("--m", type=int, default=1)
        p.add_argument("--oracle", action="store_true", help="attach exhaustive oracle values")
        _add_budget_args(p)
        _add_output_args(p)

    p = sub.add_parser("basis", help="symplectic basis of a Gram matrix")
    _add_ring_args(p)
    p.add_argument("--gram", required=True, help="file with the Gram matrix, one row per line")
    _add_output_args(p)

    p = sub.add_parser("lift", help="lift a unitary matrix over A/r^j to A")
    _add_ring_args(p)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--matrix", help="file with the matrix over A/r^j")
    p.add_argument("--seed", type=int, help="lift a seeded random unitary instead")
    _add_output_args(p)

    p = sub.add_parser("transport", help="a unitary sending u to v")
    _add_ring_args(p)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--gram", help="file with the Gram matrix (default: standard J)")
    p.add_argument("--u", help="entries separated by spaces, each as c0|c1")
    p.add_argument("--v")
    p.add_argument("--seed", type=int, help="pick u at random and v = g u for a random unitary g")
    _add_output_args(p)

    p = sub.add_parser("verify", help="every formula against the oracle over a sweep")
    p.add_argument("--sweep", default="desk-suite",
                   help="sweep file, or the name of a bundled sweep (default: desk-suite)")
    _add_budget_args(p)
    _add_output_args(p)
    return parser


def spec_from_args(args) -> RingSpec:
    inline = {
        "p": args.p, "k": args.k, "d": args.d, "sigma_order": args.sigma,
        "star_mode": args.star,
    }
    if args.spec:
        if any(v is not None for v in inline.values()) or args.b is not None or args.truncate_odd:
            raise UsageError("--spec cannot be combined with inline ring parameters")
        path = Path(args.spec)
        if not path.is_file():
            raise UsageError(f"spec file {args.spec!r} not found")
        return RingSpec.from_text(path.read_text())
    if args.p is None or args.k is None:
        raise UsageError("give --spec FILE or at least --p and --k")
    values = {key: v for key, v in inline.items() if v is not None}
    if args.b is not None and args.b != "zero":
        try:
            values["b_exponent"] = int(args.b)
        except ValueError:
            raise UsageError(f"--b must be 'zero' or an integer exponent, got {args.b!r}") from None
    values["truncate_odd"] = args.truncate_odd
    spec = RingSpec(**values)
    spec.validate()
    return spec


def budget_from_args(args) -> oracle.EnumerationBudget:
    try:
        return oracle.EnumerationBudget(args.max_vectors, args.max_pairs, args.max_matrices)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _read_text(path: str) -> str:
    p = Path(path)
    if not p.is_file():
        raise UsageError(f"file {path!r} not found")
    lines = [line.split("#", 1)[0].strip() for line in p.read_text().splitlines()]
    return "; ".join(line for line in lines if line)


# -- output -------------------------------------------------------------------


def _report_json(r: orders.CountReport, timings: bool) -> dict:
    out = r.to_json()
    if timings:
        out["elapsed_ms"] = None if r.elapsed_ms is None else round(r.elapsed_ms, 3)
    return out


def render_entries(entries, fmt: str, timings: bool = False) -> str:
    """``entries`` is a list of ``(ring label, m, reports)``."""
    if fmt == "json":
        doc = {"entries": [
            {"ring": label, "m": str(m), "reports": [_report_json(r, timings) for r in reps]}
            for label, m, reps in entries
        ]}
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(("ring", "m") + orders.CSV_COLUMNS)
        for label, m, reps in entries:
            for r in reps:
                writer.writerow([label, m] + r.csv_row())
        return buf.getvalue()
    lines = []
    for label, m, reps in entries:
        lines.append(f"{label}  m={m}")
        width = max((len(r.name) for r in reps), default=0)
        for r in reps:
            formula = "-" if r.formula_value is None else str(r.formula_value)
            value = "-" if r.oracle_value is None else str(r.oracle_value)
            tail = f"  ({r.note})" if r.note else ""
            lines.append(f"  {r.status:8} {r.name:{width}}  formula={formula}  oracle={value}{tail}")
    return "\n".join(lines) + ("\n" if lines else "")


def render_mapping(doc: dict, fmt: str) -> str:
    """Flat or nested string mapping in any of the three formats."""
    if fmt == "json":
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    rows = []

    def walk(prefix, value):
        if isinstance(value, dict):
            for k, v in value.items():
                walk(f"{prefix}.{k}" if prefix else k, v)
        elif isinstance(value, list):
            rows.append((prefix, " ; ".join(map(str, value))))
        else:
            rows.append((prefix, "" if value is None else str(value)))

    walk("", doc)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(("key", "value"))
        writer.writerows(rows)
        return buf.getvalue()
    width = max((len(k) for k, _ in rows), default=0)
    return "".join(f"{k:{width}}  {v}\n" for k, v in rows)


def _emit(text: str, args) -> None:
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def _jsonable(value):
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


# -- commands -----------------------------------------------------------------


def cmd_ring(args) -> int:
    spec = spec_from_args(args)
    ring = make_ring(spec, budget=args.max_elements)
    ring.validate_axioms()
    principal = orders.principal_structure(ring)
    doc = {
        "ring": spec.label(),
        "spec": {"p": spec.p, "k": spec.k, "d": spec.d, "sigma_order": spec.sigma_order,
                 "b": "zero" if spec.b_exponent is None else f"p^{spec.b_exponent}",
                 "truncate_odd": spec.truncate_odd, "star_mode": spec.star_mode},
        "stats": ring.stats.as_dict(),
        "axioms": "ok",
        "principal_structure": principal.to_json(ring),
    }
    _emit(render_mapping(_jsonable(doc), args.format), args)
    return EXIT_OK


def _select(reports, order: bool):
    picked = [r for r in reports if r.name.startswith(ORDER_ROWS)]
    if order:
        return picked
    return [r for r in reports if r not in picked]


def _status(reports) -> int:
    return EXIT_MISMATCH if any(r.match is False for r in reports) else EXIT_OK


def _cmd_reports(args, order: bool) -> int:
    if args.m < 1:
        raise UsageError("--m must be at least 1")
    spec = spec_from_args(args)
    ring = make_ring(spec, budget=args.max_elements)
    reports = oracle.verify_all(ring, args.m, budget_from_args(args), workers=args.workers,
                                run_oracle=args.oracle)
    reports = _select(reports, order)
    _emit(render_entries([(spec.label(), args.m, reports)], args.format, args.timings), args)
    return _status(reports)


def cmd_order(args) -> int:
    return _cmd_reports(args, order=True)


def cmd_count(args) -> int:
    return _cmd_reports(args, order=False)


def cmd_basis(args) -> int:
    ring = make_ring(spec_from_args(args), budget=args.max_elements)
    space = FormSpace(ring, parse_matrix(ring, _read_text(args.gram)))
    basis = symplectic.symplectic_basis(space)
    ok = basis.is_symplectic(space)
    doc = {
        "us": [format_vector(u) for u in basis.us],
        "vs": [format_vector(v) for v in basis.vs],
        "transform": format_matrix(basis.transform),
        "gram_in_new_basis": format_matrix(gram_of(space, basis.vectors)),
        "symplectic": ok,
    }
    _emit(render_mapping(doc, args.format), args)
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_lift(args) -> int:
    ring = make_ring(spec_from_args(args), budget=args.max_elements)
    quotient = quotient_ring(ring, args.j)
    space = standard_gram(ring, args.m)
    if (args.matrix is None) == (args.seed is None):
        raise UsageError("give exactly one of --matrix FILE or --seed N")
    if args.matrix is not None:
        xbar = parse_matrix(quotient, _read_text(args.matrix))
    else:
        xbar = symplectic.random_unitary(standard_gram(quotient, args.m),
                                         np.random.default_rng(args.seed))
    x = symplectic.lift_unitary(space, xbar)
    ok = is_unitary(space, x) and reduce_matrix(x, quotient) == xbar
    doc = {"downstairs": format_matrix(xbar), "lift": format_matrix(x), "verified": ok}
    _emit(render_mapping(doc, args.format), args)
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_transport(args) -> int:
    ring = make_ring(spec_from_args(args), budget=args.max_elements)
    if args.gram:
        space = FormSpace(ring, parse_matrix(ring, _read_text(args.gram)))
    else:
        space = standard_gram(ring, args.m)
    if args.seed is not None:
        if args.u or args.v:
            raise UsageError("--seed cannot be combined with --u/--v")
        rng = np.random.default_rng(args.seed)
        while True:
            u = Vector(ring, rng.integers(0, ring.order, size=space.rank))
            if u.is_basis_vector():
                break
        v = symplectic.random_unitary(space, rng) @ u
    else:
        if not (args.u and args.v):
            raise UsageError("give --u and --v, or --seed N")
        u, v = parse_vector(ring, args.u), parse_vector(ring, args.v)
    g = symplectic.transport(space, u, v)
    ok = is_unitary(space, g) and g @ u == v
    doc = {"u": format_vector(u), "v": format_vector(v), "g": format_matrix(g), "verified": ok}
    _emit(render_mapping(doc, args.format), args)
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_verify(args) -> int:
    entries = load_sweep(args.sweep)
    budget = budget_from_args(args)
    results = []
    for entry in entries:
        ring = make_ring(entry.spec)
        for m in entry.ms:
            results.append((entry.spec.label(), m,
                            oracle.verify_all(ring, m, budget, workers=args.workers)))
    _emit(render_entries(results, args.format, args.timings), args)
    return _status([r for _, _, reps in results for r in reps])


COMMANDS = {
    "ring": cmd_ring,
    "order": cmd_order,
    "count": cmd_count,
    "basis": cmd_basis,
    "lift": cmd_lift,
    "transport": cmd_transport,
    "verify": cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return COMMANDS[args.command](args)
    except (UsageError, InvalidSpec) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SkewUnitaryError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_MISMATCH


if __name__ == "__main__":
    raise SystemExit(main())
