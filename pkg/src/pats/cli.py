"""Command-line front end.

Every subcommand is deterministic: fixed parameters produce byte-identical
output, and ``--manifest`` records a stable digest of the canonical JSON
result.  ``reproduce`` recomputes a bundled reference artifact and compares
it field by field, exiting 2 on any mismatch.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from fractions import Fraction
from importlib import resources

from . import __version__, repanalysis
from .dialgebra import format_word
from .exactla import DEFAULT_PRIME, is_prime
from .identities import (
    IdentityRecord,
    TernaryPolynomial,
    builtin_identity,
    expand_pats,
    find_identities,
    is_identity,
    nonlinear_identity,
)
from .symgroup import (
    Permutation,
    parse_partition,
    partitions_of,
    rep_matrix,
    standard_tableaux,
)
from .ternary import (
    ca_types,
    countsymmetry,
    enumerate_monomials_by_type,
    format_monomial,
    pa_types,
    parse_monomial,
    straighten,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_MISMATCH = 2


class UsageError(Exception):
    pass


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def result_digest(obj) -> str:
    return hashlib.sha256(canonical_json(obj).encode()).hexdigest()


def _load_golden(name: str):
    path = resources.files("pats").joinpath("golden", f"{name}.json")
    with path.open() as f:
        return json.load(f)


def _parse_modulus(text: str):
    if text.upper() == "Q":
        return None
    p = int(text)
    if not is_prime(p):
        raise UsageError(f"modulus must be prime or Q: {text}")
    return p


def _identity_json(rec: IdentityRecord) -> dict:
    poly = rec.polynomial
    terms = [
        {"coefficient": str(poly.terms[t]), "monomial": format_monomial(t)}
        for t in sorted(poly.terms, key=lambda t: format_monomial(t))
    ]
    return {
        "term_count": rec.term_count,
        "coefficients": sorted(str(c) for c in rec.coefficients),
        "types": [t + 1 for t in rec.types],
        "terms": terms,
    }


def parse_identity_json(obj: dict, degree: int) -> TernaryPolynomial:
    """Rebuild a polynomial from the JSON emitted by the identities command."""
    return TernaryPolynomial(
        {
            parse_monomial(t["monomial"]): Fraction(t["coefficient"])
            for t in obj["terms"]
        },
        degree=degree,
    )


# ---------------------------------------------------------------------------
# subcommands: each returns (json-able result, list of text lines)


def _cmd_types(args):
    n = args.degree
    result = {
        "degree": n,
        "ca": [str(t) for t in ca_types(n)],
        "pa": [str(t) for t in pa_types(n)],
        "countsymmetry": [countsymmetry(t) for t in pa_types(n)],
    }
    lines = [f"degree {n}: {len(result['ca'])} CA types, {len(result['pa'])} PA types"]
    lines += [f"  CA {i + 1}: {s}" for i, s in enumerate(result["ca"])]
    lines += [
        f"  PA {i + 1}: {s}   symmetries {d}"
        for i, (s, d) in enumerate(zip(result["pa"], result["countsymmetry"]))
    ]
    return result, lines


def _cmd_monomials(args):
    groups = enumerate_monomials_by_type(args.degree, args.vars)
    result = {
        "degree": args.degree,
        "vars": args.vars or "abcdefghijklmnopqrstuvwxyz"[: args.degree],
        "counts": [len(g) for g in groups],
        "total": sum(len(g) for g in groups),
        "monomials": [[format_monomial(m) for m in g] for g in groups],
    }
    lines = [f"{result['total']} monomials by type: {result['counts']}"]
    for i, g in enumerate(result["monomials"]):
        lines.append(f"type {i + 1}:")
        lines += [f"  {s}" for s in g]
    return result, lines


def _cmd_straighten(args):
    tree = parse_monomial(args.monomial)
    s, canon = straighten(tree)
    if s == 0:
        text = "0"
    else:
        text = ("-" if s < 0 else "") + format_monomial(canon)
    result = {
        "input": format_monomial(tree),
        "sign": s,
        "monomial": None if s == 0 else format_monomial(canon),
    }
    return result, [text]


def _cmd_expand(args):
    tree = parse_monomial(args.monomial)
    poly = expand_pats(tree)
    terms = {
        format_word(w): int(c)
        for w, c in poly.terms.items()
    }
    result = {"input": format_monomial(tree), "terms": terms}
    lines = [
        f"{'+' if terms[k] > 0 else '-'}{'' if abs(terms[k]) == 1 else abs(terms[k])}{k}"
        for k in sorted(terms)
    ]
    return result, [" ".join(lines) if lines else "0"]


def _cmd_identities(args):
    modulus = _parse_modulus(args.modulus)
    records = find_identities(args.degree, args.vars, modulus=modulus)
    result = {
        "degree": args.degree,
        "vars": args.vars or "abcdefghijklmnopqrstuvwxyz"[: args.degree],
        "modulus": "Q" if modulus is None else modulus,
        "nullity": len(records),
        "identities": [_identity_json(r) for r in records],
    }
    lines = [f"{len(records)} identities"]
    for i, r in enumerate(records):
        lines.append(
            f"{i + 1}: {r.term_count} terms, coefficients "
            f"{{{', '.join(str(c) for c in r.coefficients)}}}, "
            f"types {[t + 1 for t in r.types]}"
        )
    return result, lines


def _rank_row_json(row: repanalysis.RankRow) -> dict:
    out = {
        "partition": str(row.partition),
        "dimension": row.dimension,
        "symrank": row.symrank,
        "exprank": row.exprank,
        "newrank": row.newrank,
    }
    if row.symlifrank is not None:
        out["symlifrank"] = row.symlifrank
    return out


def _rank_rows_lines(rows, with_lift=False):
    head = f"{'partition':>12} {'dim':>5} {'symrank':>8}"
    if with_lift:
        head += f" {'symlifrank':>10}"
    head += f" {'exprank':>8} {'newrank':>8}"
    lines = [head]
    for r in rows:
        line = f"{r['partition']:>12} {r['dimension']:>5} {r['symrank']:>8}"
        if with_lift:
            line += f" {r.get('symlifrank', ''):>10}"
        line += f" {r['exprank']:>8} {r['newrank']:>8}"
        lines.append(line)
    return lines


def _rank_rows_parallel(lams, n, p, jobs):
    """Rank rows for the given partitions; ordering is canonical however
    many workers run."""
    if jobs > 1 and len(lams) > 1:
        import multiprocessing as mp

        with mp.get_context("fork").Pool(jobs) as pool:
            rows = pool.starmap(
                repanalysis.partition_ranks, [(lam, n, p) for lam in lams]
            )
        return list(rows)
    return [repanalysis.partition_ranks(lam, n, p) for lam in lams]


def _cmd_ranks(args):
    p = int(args.modulus)
    if not is_prime(p) or p <= args.degree:
        raise UsageError(f"modulus must be a prime > {args.degree}")
    parts = [parse_partition(args.partition)] if args.partition else None
    if parts and parts[0].n != args.degree:
        raise UsageError(f"partition {args.partition} is not of {args.degree}")
    if args.emit_matrix:
        if not parts:
            raise UsageError("--emit-matrix needs --partition")
        x = repanalysis.build_X_lambda(parts[0], args.degree, p=p)
        with open(args.emit_matrix, "w") as f:
            json.dump(
                {
                    "partition": str(parts[0]),
                    "degree": args.degree,
                    "modulus": p,
                    "shape": list(x.shape),
                    "entries": x.to_lists(),
                },
                f,
            )
    lams = parts or list(partitions_of(args.degree))
    rank_rows = _rank_rows_parallel(lams, args.degree, p, args.jobs)
    rows = [_rank_row_json(r) for r in rank_rows]
    checksum = sum(r.newrank * r.dimension for r in rank_rows)
    result = {
        "degree": args.degree,
        "modulus": p,
        "rows": rows,
        "checksum": checksum,
    }
    lines = _rank_rows_lines(rows, with_lift=args.degree == 9)
    lines.append(f"sum of newrank*dimension = {checksum}")
    return result, lines


def _cmd_degree9(args):
    p = int(args.modulus)
    if not is_prime(p) or p <= 9:
        raise UsageError("modulus must be a prime > 9")
    if args.partition:
        todo = [parse_partition(args.partition)]
        if todo[0].n != 9:
            raise UsageError(f"partition {args.partition} is not of 9")
    else:
        todo = list(partitions_of(9))
    cached: dict[str, dict] = {}
    if args.out_dir:
        os.makedirs(args.out_dir, exist_ok=True)
        for lam in todo:
            path = os.path.join(args.out_dir, f"partition_{lam}.json")
            if os.path.exists(path):
                with open(path) as f:
                    cached[str(lam)] = json.load(f)
    fresh = [lam for lam in todo if str(lam) not in cached]
    for r in _rank_rows_parallel(fresh, 9, p, args.jobs):
        row = _rank_row_json(r)
        row["no_new_identities"] = row["symlifrank"] == row["exprank"]
        cached[row["partition"]] = row
        if args.out_dir:
            path = os.path.join(args.out_dir, f"partition_{row['partition']}.json")
            with open(path, "w") as f:
                json.dump(row, f, indent=1, sort_keys=True)
    rows = [cached[str(lam)] for lam in todo]
    result = {
        "degree": 9,
        "modulus": p,
        "rows": rows,
        "all_equal": all(r["symlifrank"] == r["exprank"] for r in rows),
    }
    lines = _rank_rows_lines(rows, with_lift=True)
    lines.append(f"symlifrank == exprank for all rows: {result['all_equal']}")
    return result, lines


def _parse_perm(text: str, n: int) -> Permutation:
    if "," in text:
        images = [int(x) for x in text.split(",")]
    else:
        images = [int(ch) for ch in text.strip()]
    if len(images) != n:
        raise UsageError(f"permutation {text!r} does not have degree {n}")
    return Permutation(images)


def _cmd_clifton(args):
    lam = parse_partition(args.partition)
    perm = _parse_perm(args.perm, lam.n)
    modulus = _parse_modulus(args.modulus)
    m = rep_matrix(lam, perm, modulus)
    entries = [[str(m.entry(i, j)) for j in range(m.cols)] for i in range(m.rows)]
    result = {
        "partition": str(lam),
        "perm": list(perm.images),
        "modulus": "Q" if modulus is None else modulus,
        "dimension": m.rows,
        "matrix": entries,
    }
    width = max(len(e) for row in entries for e in row)
    lines = ["  ".join(e.rjust(width) for e in row) for row in entries]
    return result, lines


def _cmd_tableaux(args):
    lam = parse_partition(args.partition)
    tabs = standard_tableaux(lam)
    result = {
        "partition": str(lam),
        "dimension": len(tabs),
        "tableaux": [[list(row) for row in t.rows] for t in tabs],
    }
    lines = [f"{len(tabs)} standard tableaux of {lam}"]
    for i, t in enumerate(tabs):
        lines.append(f"T{i + 1}:")
        lines += ["  " + " ".join(f"{x:>2}" for x in row) for row in t.rows]
    return result, lines


# ---------------------------------------------------------------------------
# reproduction of the bundled reference artifacts


def _diff_report(name: str, want, got, lines: list[str]) -> bool:
    if want == got:
        lines.append(f"  {name}: ok")
        return True
    lines.append(f"  {name}: MISMATCH")
    lines.append(f"    expected: {json.dumps(want)[:400]}")
    lines.append(f"    computed: {json.dumps(got)[:400]}")
    return False


def _reproduce_table1(lines):
    golden = _load_golden("table1")
    from .identities import build_expansion_matrix

    m = build_expansion_matrix(3)
    got = [[int(m.entry(i, j)) for i in range(m.rows)] for j in range(m.cols)]
    ok = _diff_report("expansion matrix transpose", golden["matrix_transpose"], got, lines)
    null = m.nullspace_basis()
    ok &= _diff_report("nullspace", golden["nullspace"], null, lines)
    return ok, {"matrix_transpose": got, "nullspace": null}


def _reproduce_table2(lines):
    golden = _load_golden("table2")
    got = {
        "ca": {str(n): [str(t) for t in ca_types(n)] for n in (1, 3, 5, 7, 9)},
        "pa": {str(n): [str(t) for t in pa_types(n)] for n in (1, 3, 5, 7, 9)},
    }
    ok = _diff_report("completely alternating types", golden["ca"], got["ca"], lines)
    ok &= _diff_report("partially alternating types", golden["pa"], got["pa"], lines)
    return ok, got


def _reproduce_table4(lines):
    golden = _load_golden("table4")
    table = repanalysis.rank_table(7)
    got = [_rank_row_json(r) for r in table.rows]
    ok = True
    for want_row, got_row in zip(golden["rows"], got):
        ok &= _diff_report(f"partition {want_row['partition']}", want_row, got_row, lines)
    ok &= _diff_report("checksum", golden["checksum"], table.checksum(), lines)
    return ok, {"rows": got, "checksum": table.checksum()}


def _profile_of(records) -> list[dict]:
    """Multiset profile of identity records: how many share each
    (term count, absolute coefficients, types) signature."""
    counts: dict[tuple, int] = {}
    for rec in records:
        key = (
            rec.term_count,
            tuple(sorted({abs(int(c)) for c in rec.coefficients})),
            tuple(t + 1 for t in rec.types),
        )
        counts[key] = counts.get(key, 0) + 1
    return [
        {
            "terms": terms,
            "coefficients": list(coeffs),
            "types": list(types),
            "count": counts[(terms, coeffs, types)],
        }
        for terms, coeffs, types in sorted(counts)
    ]


def _reproduce_thm64(lines):
    golden = _load_golden("thm64")
    from .identities import build_expansion_matrix, orbit_dimension
    from .ternary import enumerate_monomials_by_type

    counts = [len(g) for g in enumerate_monomials_by_type(7)]
    m = build_expansion_matrix(7, modulus=DEFAULT_PRIME)
    records = find_identities(7, modulus=DEFAULT_PRIME)
    rank = m.cols - len(records)
    r_poly = builtin_identity("R")
    s_poly = builtin_identity("S")
    got = {
        "monomial_counts": counts,
        "matrix_shape": [m.rows, m.cols],
        "rank": rank,
        "nullity": len(records),
        "profile": _profile_of(records),
        "generator_term_counts": [r_poly.term_count, s_poly.term_count],
        "generators_are_identities": [is_identity(r_poly), is_identity(s_poly)],
        "orbit_dimensions": [orbit_dimension(r_poly), orbit_dimension(s_poly)],
    }
    ok = all(
        _diff_report(key, golden[key], got[key], lines)
        for key in sorted(golden)
    )
    return ok, got


def _reproduce_nonlinear(name, lines):
    golden = _load_golden(name)
    pattern = golden["pattern"]
    from .identities import build_expansion_matrix

    m = build_expansion_matrix(7, pattern, modulus=DEFAULT_PRIME)
    records = find_identities(7, pattern, modulus=DEFAULT_PRIME)
    built = [
        nonlinear_identity(pattern, k) for k in range(1, golden["printed_identities"] + 1)
    ]
    got = {
        "pattern": pattern,
        "monomial_counts": [len(g) for g in enumerate_monomials_by_type(7, pattern)],
        "matrix_shape": [m.rows, m.cols],
        "rank": m.cols - len(records),
        "nullity": len(records),
        "short_identity_count": sum(1 for r in records if r.term_count == 60),
        "printed_identities": len(built),
        "printed_term_counts": [b.term_count for b in built],
        "printed_pass": [is_identity(b) for b in built],
    }
    ok = all(_diff_report(key, golden[key], got[key], lines) for key in sorted(golden))
    return ok, got


def _reproduce_degree9(lines):
    golden = _load_golden("degree9")
    table = repanalysis.rank_table(9)
    got_rows = [_rank_row_json(r) for r in table.rows]
    ok = True
    for want_row, got_row in zip(golden["rows"], got_rows):
        ok &= _diff_report(f"partition {want_row['partition']}", want_row, got_row, lines)
    got = {
        "rows": got_rows,
        "all_equal": all(r["symlifrank"] == r["exprank"] for r in got_rows),
    }
    ok &= _diff_report("no new identities", golden["all_equal"], got["all_equal"], lines)
    return ok, got


_REPRODUCERS = {
    "table1": _reproduce_table1,
    "table2": _reproduce_table2,
    "table4": _reproduce_table4,
    "thm6.4": _reproduce_thm64,
    "thm7.6": lambda lines: _reproduce_nonlinear("thm76", lines),
    "thm7.7": lambda lines: _reproduce_nonlinear("thm77", lines),
    "thm7.8": lambda lines: _reproduce_nonlinear("thm78", lines),
    "degree9": _reproduce_degree9,
}


def _cmd_reproduce(args):
    lines = [f"reproduce {args.artifact}:"]
    ok, got = _REPRODUCERS[args.artifact](lines)
    lines.append("PASS" if ok else "FAIL")
    return {"artifact": args.artifact, "match": ok, "computed": got}, lines


# ---------------------------------------------------------------------------


def _csv_lines(result) -> list[str]:
    rows = result.get("rows")
    if not isinstance(rows, list) or not rows or not isinstance(rows[0], dict):
        raise UsageError("csv output is only available for rank tables")
    cols = list(rows[0].keys())
    out = [",".join(cols)]
    out += [",".join(str(r.get(c, "")) for c in cols) for r in rows]
    return out


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="pats",
        description="Identities of the partially alternating ternary sum in a dialgebra",
    )
    ap.add_argument("--manifest", metavar="PATH", help="write a run manifest JSON")
    ap.add_argument(
        "--format", choices=("text", "json", "csv"), default="text", help="output format"
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("types", help="association types of one degree")
    p.add_argument("--degree", type=int, required=True)
    p.set_defaults(func=_cmd_types)

    p = sub.add_parser("monomials", help="canonical monomials of one degree")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--vars", help="variable multiset, e.g. aaabcde")
    p.set_defaults(func=_cmd_monomials)

    p = sub.add_parser("straighten", help="canonical form of a monomial")
    p.add_argument("monomial")
    p.set_defaults(func=_cmd_straighten)

    p = sub.add_parser("expand", help="dialgebra expansion of a monomial")
    p.add_argument("monomial")
    p.set_defaults(func=_cmd_expand)

    p = sub.add_parser("identities", help="nullspace identities of one degree")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--vars")
    p.add_argument("--modulus", default=str(DEFAULT_PRIME), help="prime or Q")
    p.set_defaults(func=_cmd_identities)

    p = sub.add_parser("ranks", help="per-partition rank table")
    p.add_argument("--degree", type=int, default=7)
    p.add_argument("--partition", help="restrict to one partition, e.g. 421")
    p.add_argument("--modulus", default=str(DEFAULT_PRIME))
    p.add_argument("--jobs", type=int, default=1, help="parallel partition workers")
    p.add_argument("--emit-matrix", metavar="PATH", help="dump the X matrix as JSON")
    p.set_defaults(func=_cmd_ranks)

    p = sub.add_parser("degree9", help="degree-9 lifted rank comparison")
    p.add_argument("--partition")
    p.add_argument("--modulus", default=str(DEFAULT_PRIME))
    p.add_argument("--out-dir", help="per-partition result files (resumable)")
    p.add_argument("--jobs", type=int, default=1, help="parallel partition workers")
    p.set_defaults(func=_cmd_degree9)

    p = sub.add_parser("clifton", help="representation matrix of a permutation")
    p.add_argument("--partition", required=True)
    p.add_argument("--perm", required=True, help="images, e.g. 2134567")
    p.add_argument("--modulus", default="Q")
    p.set_defaults(func=_cmd_clifton)

    p = sub.add_parser("tableaux", help="standard tableaux of a partition")
    p.add_argument("--partition", required=True)
    p.set_defaults(func=_cmd_tableaux)

    p = sub.add_parser("reproduce", help="recompute a reference artifact")
    p.add_argument("artifact", choices=sorted(_REPRODUCERS))
    p.set_defaults(func=_cmd_reproduce)
    return ap


def dispatch(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    start = time.time()
    try:
        result, lines = args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    wall = time.time() - start
    if args.format == "json":
        print(json.dumps(result, indent=1, sort_keys=True))
    elif args.format == "csv":
        try:
            print("\n".join(_csv_lines(result)))
        except UsageError as e:
            print(f"error: {e}", file=sys.stderr)
            return EXIT_USAGE
    else:
        print("\n".join(lines))
    if args.manifest:
        manifest = {
            "command": args.command,
            "parameters": {
                k: v
                for k, v in vars(args).items()
                if k not in ("func", "manifest", "command") and v is not None
            },
            "wall_time_s": round(wall, 3),
            "digest": result_digest(result),
            "artifact_version": __version__,
        }
        with open(args.manifest, "w") as f:
            json.dump(manifest, f, indent=1, sort_keys=True)
    if args.command == "reproduce" and not result["match"]:
        return EXIT_MISMATCH
    return EXIT_OK


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
