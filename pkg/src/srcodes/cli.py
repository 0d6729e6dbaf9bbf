"""Command-line front end.

Commands (two-level): ``field info``, ``matrix check-superregular``,
``pattern triviality``, ``code build``, ``code bounds``, ``code distance``,
``code search-field``.  Every command accepts ``--json`` for a
machine-readable report; identical inputs and seeds produce byte-identical
JSON.  Randomized commands require an explicit ``--seed`` (the RNG is the
SplitMix64 sequence documented in srcodes.construct).

Exit codes: 0 = the checked property holds / the command succeeded,
1 = the property is false (witness printed), 2 = usage or parse error,
3 = budget exceeded, 4 = certification hypothesis failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Optional, Sequence

from srcodes import construct, convcode, gf, superreg
from srcodes.exactla import ExactMatrix
from srcodes.gf import FieldSpec

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3
EXIT_HYPOTHESIS = 4


class UsageError(Exception):
    """Bad input document or option combination (exit code 2)."""


# ---------------------------------------------------------------------------
# document (de)serialization
# ---------------------------------------------------------------------------


def _field_from_doc(doc: dict) -> FieldSpec:
    try:
        p = int(doc["p"])
        n = int(doc["N"])
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"bad field block: {exc}") from exc
    modulus = doc.get("modulus")
    alpha = doc.get("alpha")
    try:
        if modulus is None and alpha is None:
            return gf.default_field(p, n)
        return gf.field_create(p, n, modulus, alpha=alpha)
    except gf.GFError as exc:
        raise UsageError(f"bad field block: {exc}") from exc


def _field_to_doc(field: FieldSpec) -> dict:
    return {
        "p": field.p,
        "N": field.N,
        "modulus": list(field.modulus),
        "alpha": gf.element_text(field.alpha),
    }


def _load_json(path: str) -> Any:
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read document {path!r}: {exc}") from exc


def parse_matrix_document(doc: Any) -> ExactMatrix:
    """Matrix document: {"field": {...}, "entries": [[element text]]}"""
    if not isinstance(doc, dict) or "field" not in doc or "entries" not in doc:
        raise UsageError("matrix document needs 'field' and 'entries'")
    field = _field_from_doc(doc["field"])
    entries = doc["entries"]
    if not isinstance(entries, list) or not entries:
        raise UsageError("'entries' must be a nonempty grid")
    try:
        grid = [[gf.parse_element(field, str(cell)) for cell in row] for row in entries]
    except gf.ElementSyntaxError as exc:
        raise UsageError(str(exc)) from exc
    try:
        return ExactMatrix(field, grid)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def matrix_to_document(matrix: ExactMatrix) -> dict:
    return {
        "field": _field_to_doc(matrix.field),
        "entries": [
            [_entry_text(matrix.field, x) for x in row] for row in matrix.entries
        ],
    }


_DLOG_CACHE: dict[FieldSpec, dict] = {}
_DLOG_LIMIT = 1 << 12


def _entry_text(field: FieldSpec, el) -> str:
    """Element text, preferring the readable alpha-power form on fields
    small enough to take discrete logs by walking the powers of alpha."""
    if not el:
        return "0"
    if el == field.one():
        return "1"
    if field.order <= _DLOG_LIMIT:
        table = _DLOG_CACHE.get(field)
        if table is None:
            table = {}
            acc = field.one()
            for e in range(field.group_order):
                table.setdefault(acc, e)
                acc = acc * field.alpha
            _DLOG_CACHE[field] = table
        e = table.get(el)
        if e is not None and e > 0:
            return f"a^{e}"
    return gf.element_text(el)


def parse_generator_document(doc: Any) -> convcode.PolyMatrix:
    """Generator document: {"field": ..., "n": ..., "k": ...,
    "coefficients": [grid for G_0, grid for G_1, ...]}"""
    if not isinstance(doc, dict):
        raise UsageError("generator document must be a JSON object")
    for key in ("field", "n", "k", "coefficients"):
        if key not in doc:
            raise UsageError(f"generator document needs {key!r}")
    field = _field_from_doc(doc["field"])
    n, k = int(doc["n"]), int(doc["k"])
    grids = doc["coefficients"]
    if not isinstance(grids, list) or not grids:
        raise UsageError("'coefficients' must list at least G_0")
    mats = []
    for grid in grids:
        if len(grid) != n or any(len(row) != k for row in grid):
            raise UsageError(f"each coefficient grid must be {n}x{k}")
        try:
            mats.append(
                ExactMatrix(
                    field,
                    [[gf.parse_element(field, str(c)) for c in row] for row in grid],
                )
            )
        except gf.ElementSyntaxError as exc:
            raise UsageError(str(exc)) from exc
    try:
        return convcode.PolyMatrix(field, mats)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def generator_to_document(
    g: convcode.PolyMatrix,
    exponents: Optional[Sequence[construct.ExponentPattern]] = None,
) -> dict:
    """Serialize a generator; when the exponent grids that produced it are
    known, entries are written as alpha powers with reduced exponents."""
    coeff_docs = []
    for i, mat in enumerate(g.coeffs):
        grid = []
        for r in range(g.n):
            row = []
            for c in range(g.k):
                if exponents is not None:
                    beta = exponents[i].cells[r][c]
                    if beta is None:
                        row.append("0")
                    else:
                        e = beta % g.field.group_order if g.field.group_order else 0
                        row.append(f"a^{e}" if e else "1")
                else:
                    row.append(_entry_text(g.field, mat.entry(r, c)))
            grid.append(row)
        coeff_docs.append(grid)
    return {
        "field": _field_to_doc(g.field),
        "n": g.n,
        "k": g.k,
        "coefficients": coeff_docs,
    }


def certificate_to_document(cert: construct.Certificate) -> dict:
    rep = cert.superreg_report
    witness = None
    if rep.witness is not None:
        witness = {"rows": list(rep.witness.row_set), "cols": list(rep.witness.col_set)}
    spec = cert.spec
    return {
        "n": spec.n,
        "k": spec.k,
        "indices": list(spec.indices),
        "mults": list(spec.mults),
        "field": {"p": cert.field.p, "N": cert.field.N},
        "depth": cert.depth,
        "superregular": rep.is_superregular,
        "minors_checked": rep.minors_checked,
        "trivial_skipped": rep.trivial_skipped,
        "witness": witness,
        "achieved_weight": cert.achieved_weight,
        "certified_distance": cert.certified_distance,
        "optimal_bound": convcode.optimal_bound(spec.n, spec.indices[0], spec.mults[0]),
        "generalized_singleton": convcode.generalized_singleton(
            spec.n, spec.k, convcode.code_degree(spec)
        ),
        "mds_profile": convcode.is_mds_profile(spec),
    }


def _emit(payload: dict, as_json: bool, lines: Sequence[str]) -> None:
    if as_json:
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        for line in lines:
            print(line)


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(s) for s in text.split(",") if s.strip() != "")
    except ValueError as exc:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from exc


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def _cmd_field_info(args) -> int:
    modulus = _int_list(args.modulus) if args.modulus else None
    try:
        field = gf.field_create(args.p, args.N, modulus)
    except gf.GFError as exc:
        raise UsageError(str(exc)) from exc
    factors = field.group_factors
    payload = {
        "p": field.p,
        "N": field.N,
        "order": field.order,
        "modulus": list(field.modulus),
        "modulus_str": field.modulus_str(),
        "alpha": gf.element_text(field.alpha),
        "group_order": field.group_order,
        "group_factors": (
            {str(k): v for k, v in sorted(factors.items())} if factors else factors
        ),
    }
    _emit(
        payload,
        args.json,
        [
            f"GF({field.p}^{field.N}), order {field.order}",
            f"modulus: {field.modulus_str()}",
            f"alpha: {gf.element_text(field.alpha)}",
            f"|alpha| = {field.group_order}"
            + (f" = {' * '.join(f'{q}^{e}' if e > 1 else str(q) for q, e in sorted(factors.items()))}" if factors else ""),
        ],
    )
    return EXIT_OK


def _cmd_check_superregular(args) -> int:
    matrix = parse_matrix_document(_load_json(args.document))
    mode = "parallel" if args.threads and args.threads > 1 else "deterministic"
    report = superreg.is_superregular(
        matrix, mode=mode, budget=args.budget, threads=args.threads
    )
    witness = None
    if report.witness is not None:
        witness = {
            "rows": list(report.witness.row_set),
            "cols": list(report.witness.col_set),
        }
    payload = {
        "rows": matrix.rows,
        "cols": matrix.cols,
        "superregular": report.is_superregular,
        "minors_checked": report.minors_checked,
        "trivial_skipped": report.trivial_skipped,
        "witness": witness,
    }
    lines = [
        f"{matrix.rows}x{matrix.cols} matrix: "
        + ("superregular" if report.is_superregular else "NOT superregular"),
        f"determinants evaluated: {report.minors_checked}, "
        f"trivial minors skipped: {report.trivial_skipped}",
    ]
    if witness:
        lines.append(f"zero nontrivial minor at rows {witness['rows']}, cols {witness['cols']}")
    _emit(payload, args.json, lines)
    return EXIT_OK if report.is_superregular else EXIT_FALSE


def _cmd_pattern_triviality(args) -> int:
    doc = _load_json(args.document)
    if not isinstance(doc, dict) or "nonzero" not in doc:
        raise UsageError("pattern document needs a 'nonzero' 0/1 grid")
    grid = doc["nonzero"]
    try:
        pattern = superreg.SupportPattern([[bool(v) for v in row] for row in grid])
    except (TypeError, ValueError) as exc:
        raise UsageError(f"bad pattern grid: {exc}") from exc
    rows = _int_list(args.rows) if args.rows else tuple(range(pattern.rows))
    cols = _int_list(args.cols) if args.cols else tuple(range(pattern.cols))
    try:
        address = superreg.MinorAddress(tuple(rows), tuple(cols))
        trivial = superreg.is_trivial_minor(pattern, address)
    except (ValueError, IndexError) as exc:
        raise UsageError(str(exc)) from exc
    ordering = None
    if not trivial and len(rows) == pattern.rows == pattern.cols and tuple(cols) == tuple(range(pattern.cols)):
        ordering = list(superreg.antidiagonal_ordering(pattern))
    payload = {
        "rows": list(rows),
        "cols": list(cols),
        "order": len(rows),
        "trivial": trivial,
        "antidiagonal_ordering": ordering,
    }
    lines = [
        f"minor rows {list(rows)} cols {list(cols)}: "
        + ("trivial (no nonzero term)" if trivial else "nontrivial"),
    ]
    if ordering is not None:
        lines.append(f"antidiagonal column ordering: {ordering}")
    _emit(payload, args.json, lines)
    return EXIT_FALSE if trivial else EXIT_OK


def _resolve_field(args, indices, mults) -> FieldSpec:
    if args.field == "auto":
        pats = construct.exponent_pattern(args.n, args.k, indices, mults)
        depth = convcode.certification_depth(args.n, args.k, indices[0], mults[0])
        need = construct.field_degree_bound(
            construct.sliding_exponent_pattern(pats, depth)
        )
        return construct.certification_field(need)
    parts = _int_list(args.field)
    if len(parts) != 2:
        raise UsageError("--field must be 'auto' or 'p,N'")
    try:
        return gf.default_field(parts[0], parts[1])
    except gf.GFError as exc:
        raise UsageError(str(exc)) from exc


def _cmd_code_build(args) -> int:
    indices = _int_list(args.indices)
    mults = _int_list(args.mults)
    try:
        spec = convcode.CodeSpec(args.n, args.k, indices, mults)
    except convcode.InvalidSpec as exc:
        raise UsageError(str(exc)) from exc
    field = _resolve_field(args, spec.indices, spec.mults)
    import warnings as _warnings

    with _warnings.catch_warnings():
        _warnings.simplefilter("ignore", construct.CertificationFieldWarning)
        generator = construct.build_generator(
            args.n, args.k, spec.indices, spec.mults, field
        )
        cert = construct.certify_optimal(
            args.n, args.k, spec.indices, spec.mults, field,
            budget=args.budget, threads=args.threads,
            mode="parallel" if args.threads and args.threads > 1 else "deterministic",
        )
    gen_doc = generator_to_document(
        generator, construct.exponent_pattern(args.n, args.k, spec.indices, spec.mults)
    )
    cert_doc = certificate_to_document(cert)
    payload = {"generator": gen_doc, "certificate": cert_doc}
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, sort_keys=True, indent=2)
    lines = [
        f"generator over GF({field.p}^{field.N}), degree {generator.degree}",
        f"sliding depth {cert.depth}: "
        + ("superregular" if cert.superreg_report.is_superregular else "NOT superregular"),
        f"achieved codeword weight: {cert.achieved_weight}",
        f"certified distance: {cert.certified_distance}",
    ]
    _emit(payload, args.json, lines)
    return EXIT_OK if cert.certified_distance is not None else EXIT_FALSE


def _cmd_code_bounds(args) -> int:
    indices = _int_list(args.indices)
    mults = _int_list(args.mults)
    try:
        spec = convcode.CodeSpec(args.n, args.k, indices, mults)
    except convcode.InvalidSpec as exc:
        raise UsageError(str(exc)) from exc
    delta = convcode.code_degree(spec)
    payload = {
        "n": spec.n,
        "k": spec.k,
        "indices": list(spec.indices),
        "mults": list(spec.mults),
        "degree": delta,
        "generalized_singleton": convcode.generalized_singleton(spec.n, spec.k, delta),
        "optimal_bound": convcode.optimal_bound(spec.n, spec.indices[0], spec.mults[0]),
        "certification_depth": convcode.certification_depth(
            spec.n, spec.k, spec.indices[0], spec.mults[0]
        ),
        "mds_profile": convcode.is_mds_profile(spec),
    }
    _emit(
        payload,
        args.json,
        [
            f"degree delta = {payload['degree']}",
            f"generalized Singleton bound = {payload['generalized_singleton']}",
            f"optimal bound n(nu1+1)-m1+1 = {payload['optimal_bound']}",
            f"certification depth = {payload['certification_depth']}",
            f"compact (MDS) profile: {payload['mds_profile']}",
        ],
    )
    return EXIT_OK


def _cmd_code_distance(args) -> int:
    generator = parse_generator_document(_load_json(args.document))
    result = convcode.distance_up_to(generator, args.max_degree, budget=args.budget)
    payload = {
        "max_degree": args.max_degree,
        "value": result.value,
        "exhaustive": result.exhaustive,
        "checked": result.checked,
    }
    _emit(
        payload,
        args.json,
        [
            f"{result.value} ({'exhaustive' if result.exhaustive else 'sampled'}) "
            f"over messages of degree <= {args.max_degree} ({result.checked} codewords)"
        ],
    )
    return EXIT_OK


def _prime_powers_up_to(limit: int) -> list[tuple[int, int, int]]:
    out = []
    for p in range(2, limit + 1):
        if gf.is_probable_prime(p):
            q, n = p, 1
            while q <= limit:
                out.append((q, p, n))
                q *= p
                n += 1
    out.sort()
    return out


def _cmd_code_search_field(args) -> int:
    indices = _int_list(args.indices)
    mults = _int_list(args.mults)
    try:
        convcode.CodeSpec(args.n, args.k, indices, mults)
    except convcode.InvalidSpec as exc:
        raise UsageError(str(exc)) from exc
    patterns = construct.exponent_pattern(args.n, args.k, indices, mults)
    for q, p, n in _prime_powers_up_to(args.max_q):
        if q < args.min_q:
            continue
        field = gf.default_field(p, n)
        found = construct.search_superregular(
            patterns, field, trials=args.trials, seed=args.seed, budget=args.budget
        )
        if found is not None:
            payload = {
                "found": True,
                "q": q,
                "p": p,
                "N": n,
                "seed": args.seed,
                "trials": args.trials,
                "generator": generator_to_document(found),
            }
            _emit(
                payload,
                args.json,
                [f"superregular instance found over GF({q}) (p={p}, N={n})"],
            )
            return EXIT_OK
    payload = {
        "found": False,
        "q": None,
        "p": None,
        "N": None,
        "seed": args.seed,
        "trials": args.trials,
        "generator": None,
    }
    _emit(payload, args.json, [f"no instance found for q <= {args.max_q}"])
    return EXIT_FALSE


# ---------------------------------------------------------------------------
# parser wiring
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="srcodes",
        description="Exact superregularity checks and optimal convolutional codes.",
    )
    sub = parser.add_subparsers(dest="group", required=True)

    def common(p, budget=True, threads=False):
        p.add_argument("--json", action="store_true", help="machine-readable output")
        if budget:
            p.add_argument(
                "--budget", type=int, default=superreg.DEFAULT_MINOR_BUDGET,
                help="cap on determinant/codeword evaluations",
            )
        if threads:
            p.add_argument("--threads", type=int, default=None,
                           help="worker threads (>1 switches to parallel scan)")

    field = sub.add_parser("field", help="field inspection").add_subparsers(
        dest="command", required=True
    )
    p = field.add_parser("info", help="create a field and print its data")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--modulus", type=str, default=None,
                   help="comma-separated coefficients, constant term first")
    common(p, budget=False)
    p.set_defaults(func=_cmd_field_info)

    matrix = sub.add_parser("matrix", help="matrix checks").add_subparsers(
        dest="command", required=True
    )
    p = matrix.add_parser("check-superregular", help="decide superregularity")
    p.add_argument("document", help="matrix document path or - for stdin")
    common(p, threads=True)
    p.set_defaults(func=_cmd_check_superregular)

    pattern = sub.add_parser("pattern", help="support-pattern checks").add_subparsers(
        dest="command", required=True
    )
    p = pattern.add_parser("triviality", help="is the addressed minor trivial?")
    p.add_argument("document", help="pattern document path or - for stdin")
    p.add_argument("--rows", type=str, default=None, help="minor row set, e.g. 0,2")
    p.add_argument("--cols", type=str, default=None, help="minor column set")
    common(p, budget=False)
    p.set_defaults(func=_cmd_pattern_triviality)

    code = sub.add_parser("code", help="code construction and bounds").add_subparsers(
        dest="command", required=True
    )

    def code_params(p):
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--k", type=int, required=True)
        p.add_argument("--indices", type=str, required=True,
                       help="strictly increasing column-degree values, e.g. 0,1")
        p.add_argument("--mults", type=str, required=True,
                       help="multiplicities summing to k, e.g. 1,1")

    p = code.add_parser("build", help="build a generator and certify its distance")
    code_params(p)
    p.add_argument("--field", type=str, default="auto",
                   help="'auto' or 'p,N' (auto picks a certifiable degree)")
    p.add_argument("--out", type=str, default=None,
                   help="also write the JSON envelope to this path")
    common(p, threads=True)
    p.set_defaults(func=_cmd_code_build)

    p = code.add_parser("bounds", help="print the closed-form bounds")
    code_params(p)
    common(p, budget=False)
    p.set_defaults(func=_cmd_code_bounds)

    p = code.add_parser("distance", help="exhaustive distance upper bound")
    p.add_argument("document", help="generator document path or - for stdin")
    p.add_argument("--max-degree", type=int, required=True, dest="max_degree")
    common(p)
    p.set_defaults(func=_cmd_code_distance)

    p = code.add_parser("search-field", help="random small-field instance search")
    code_params(p)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True,
                   help="SplitMix64 seed (randomized commands never use ambient entropy)")
    p.add_argument("--min-q", type=int, default=2, dest="min_q")
    p.add_argument("--max-q", type=int, default=1024, dest="max_q")
    common(p)
    p.set_defaults(func=_cmd_code_search_field)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (gf.GFError, convcode.InvalidSpec, convcode.ZeroColumn,
            convcode.NotColumnReduced) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except superreg.BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except construct.HypothesisFailed as exc:
        print(f"hypothesis failed: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
