"""Command-line entry point: capacity, rate, classify, scan, simulate, audit."""

from __future__ import annotations

import argparse
import csv
import json
import os
import random
import sys
from fractions import Fraction

from . import analysis, dss, plots
from .codes import (
    LinearCode,
    code_cyclic,
    code_mds,
    code_reed_muller,
    code_repetition,
    load_code,
)
from .fields import Field
from .ratematrix import (
    RateMatrix,
    load_rate_matrix,
    rate_matrix_to_text,
    save_rate_matrix,
)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_INDETERMINATE = 3


class UsageError(Exception):
    pass


def frac_str(fr: Fraction) -> str:
    return f"{fr.numerator}/{fr.denominator}"


def dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def default_seed() -> int:
    return int(os.environ.get("PIRCODEX_SEED", "0"))


# -- shared argument groups ----------------------------------------------------------

def add_code_args(sp: argparse.ArgumentParser):
    g = sp.add_argument_group("storage code")
    g.add_argument("--code", metavar="FILE", help="code file (field/dimensions/generator rows)")
    g.add_argument("--construct", choices=["cyclic", "rm", "mds", "repetition"],
                   help="build the code instead of reading a file")
    g.add_argument("--field", default="gf(2)", help="field spec, e.g. gf(5) or gf(2^4)")
    g.add_argument("--n", type=int, help="blocklength (cyclic, mds, repetition)")
    g.add_argument("--k", type=int, help="dimension (mds)")
    g.add_argument("--r", type=int, help="order (rm)")
    g.add_argument("--e", type=int, help="variables (rm)")
    g.add_argument("--gpoly", help="generator polynomial coefficients, ascending, e.g. 1,1,0,1")


def resolve_code(args) -> LinearCode:
    if args.code and args.construct:
        raise UsageError("give either --code or --construct, not both")
    if args.code:
        return load_code(args.code)
    if not args.construct:
        raise UsageError("a storage code is required (--code or --construct)")
    field = Field.parse(args.field)
    if args.construct == "cyclic":
        if args.n is None or not args.gpoly:
            raise UsageError("cyclic construction needs --n and --gpoly")
        coeffs = [int(t) for t in args.gpoly.split(",")]
        return code_cyclic(field, args.n, coeffs)
    if args.construct == "rm":
        if args.r is None or args.e is None:
            raise UsageError("rm construction needs --r and --e")
        return code_reed_muller(args.r, args.e)
    if args.construct == "mds":
        if args.n is None or args.k is None:
            raise UsageError("mds construction needs --n and --k")
        return code_mds(field, args.n, args.k)
    if args.n is None:
        raise UsageError("repetition construction needs --n")
    return code_repetition(field, args.n)


def add_lambda_args(sp: argparse.ArgumentParser):
    g = sp.add_argument_group("rate matrix")
    g.add_argument("--lambda", dest="lambda_file", metavar="FILE",
                   help="rate matrix file (nu kappa n header plus 0/1 rows)")
    g.add_argument("--lambda-mode", choices=["auto", "search"], default="auto",
                   help="derive the rate matrix: permutation families then "
                        "search (auto), or search only")
    g.add_argument("--kappa", type=int, help="column weight for an explicit search")
    g.add_argument("--nu", type=int, help="row count for an explicit search")


def resolve_lambda(args, code: LinearCode) -> RateMatrix:
    if args.lambda_file:
        return load_rate_matrix(args.lambda_file)
    if args.kappa is not None and args.nu is not None:
        from .ratematrix import search_rate_matrix
        outcome = search_rate_matrix(code, args.kappa, args.nu)
        if not outcome.found:
            raise UsageError(
                f"no rate matrix at kappa={args.kappa}, nu={args.nu} ({outcome.status})")
        return outcome.matrix
    if args.lambda_mode == "search":
        from .ratematrix import capacity_ratio_pairs, search_rate_matrix
        for kp, np_ in capacity_ratio_pairs(code):
            outcome = search_rate_matrix(code, kp, np_)
            if outcome.found:
                return outcome.matrix
        raise UsageError("search found no capacity-ratio rate matrix; "
                         "pass --kappa/--nu or a --lambda file")
    lam, note = analysis.find_capacity_matrix(code)
    if lam is None:
        raise UsageError(f"could not derive a rate matrix automatically: {note}")
    return lam


# -- subcommand handlers ----------------------------------------------------------------

def cmd_capacity(args) -> int:
    cap = (analysis.mds_pir_capacity_limit(args.n, args.k) if args.limit
           else analysis.mds_pir_capacity(args.n, args.k, args.files))
    if args.format == "json":
        print(dump_json({"n": args.n, "k": args.k,
                         "files": None if args.limit else args.files,
                         "capacity": frac_str(cap), "decimal": float(cap)}))
    else:
        print(f"{frac_str(cap)} ({float(cap):g})")
    return EXIT_OK


def cmd_rate(args) -> int:
    code = resolve_code(args)
    lam = resolve_lambda(args, code)
    rate = analysis.achievable_rate(lam, code, args.files)
    cap = analysis.mds_pir_capacity(code.n, code.k, args.files)
    payload = {
        "field": code.field.spec_string(),
        "n": code.n, "k": code.k,
        "kappa": lam.kappa, "nu": lam.nu,
        "files": args.files,
        "rate": frac_str(rate), "rate_decimal": float(rate),
        "capacity": frac_str(cap),
        "meets_capacity": rate == cap,
    }
    if args.curve_out:
        points = [(f, analysis.mds_pir_capacity(code.n, code.k, f),
                   analysis.rate_formula(lam.kappa, lam.nu, code.k, code.n, f))
                  for f in range(1, args.curve_max + 1)]
        csv_path = args.curve_out + ".csv"
        with open(csv_path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["files", "capacity", "rate"])
            for f, c, r in points:
                w.writerow([f, frac_str(c), frac_str(r)])
        png_path = plots.render_rate_curve(
            points, args.curve_out + ".png",
            label=f"[{code.n},{code.k}] with kappa/nu={lam.kappa}/{lam.nu}")
        payload["curve_csv"] = csv_path
        payload["curve_png"] = str(png_path)
    if args.format == "json":
        print(dump_json(payload))
    else:
        verdict = "meets capacity" if payload["meets_capacity"] else "below capacity"
        print(f"{frac_str(rate)} ({float(rate):g}), capacity {frac_str(cap)}: {verdict}")
        if args.curve_out:
            print(f"curve written to {payload['curve_csv']} and {payload['curve_png']}")
    return EXIT_OK


def cmd_classify(args) -> int:
    code = resolve_code(args)
    cls = analysis.classify(code, node_budget=args.budget)
    payload = {
        "field": code.field.spec_string(),
        "n": code.n, "k": code.k,
        "verdict": cls.verdict,
        "note": cls.note,
    }
    if cls.witness is not None:
        payload["kappa"] = cls.witness.kappa
        payload["nu"] = cls.witness.nu
        payload["rate_matrix"] = [list(r) for r in cls.witness.rows]
        if args.out_lambda:
            save_rate_matrix(cls.witness, args.out_lambda)
            payload["lambda_file"] = args.out_lambda
    if cls.failing is not None:
        payload["failing_s"], payload["failing_weight"] = cls.failing
    if args.format == "json":
        print(dump_json(payload))
    else:
        print(f"[{code.n},{code.k}] over {code.field.spec_string()}: {cls.verdict}")
        print(f"  {cls.note}")
        if cls.witness is not None:
            print(rate_matrix_to_text(cls.witness), end="")
    if cls.verdict == "capacity_achieving":
        return EXIT_OK
    if cls.verdict == "ruled_out":
        return EXIT_NEGATIVE
    return EXIT_INDETERMINATE


def cmd_interference(args) -> int:
    code = resolve_code(args)
    lam = resolve_lambda(args, code)
    from .ratematrix import interference, s_set, verify_claim1
    pair = interference(lam)
    report = verify_claim1(code, lam)
    payload = {
        "kappa": lam.kappa, "nu": lam.nu, "n": lam.n,
        "A": [list(r) for r in pair.A],
        "B": [list(r) for r in pair.B],
        "s_sets": {str(a): list(s_set(pair, a)) for a in range(1, lam.nu + 1)},
        "decodable": report.ok,
        "s_set_witnesses": [
            {"row": a, "coords": list(coords), "information_set": list(info)}
            for a, coords, info in report.s_set_witnesses
        ],
        "b_entry_witnesses": [
            {"b_row": i, "column": j, "coords": list(coords),
             "information_set": list(info)}
            for i, j, coords, info in report.b_entry_witnesses
        ],
    }
    if report.failure is not None:
        payload["failure"] = list(report.failure)
    if args.format == "json":
        print(dump_json(payload))
    else:
        print("A =")
        for r in pair.A:
            print("  " + " ".join(str(v) for v in r))
        print("B =")
        for r in pair.B:
            print("  " + " ".join(str(v) for v in r))
        for a in range(1, lam.nu + 1):
            print(f"S({a}|A) = {set(s_set(pair, a))}")
        print(f"every interference set decodable: {report.ok}")
    return EXIT_OK if report.ok else EXIT_NEGATIVE


def _parse_samples(specs) -> dict:
    out = {}
    for spec in specs or []:
        try:
            n, k, count = (int(t) for t in spec.split(":"))
        except ValueError as exc:
            raise UsageError(f"bad --sample spec {spec!r}, expected n:k:count") from exc
        out[(n, k)] = count
    return out


def cmd_scan(args) -> int:
    field = Field.parse(args.field)
    sample = _parse_samples(args.sample)
    ks = None
    if sample:
        ks = {}
        for (n, k) in sample:
            ks.setdefault(n, []).append(k)
    report = analysis.conjecture_scan(
        args.nmax, field, ks=ks, sample=sample or None, seed=args.seed,
        node_budget=args.budget, dedupe=not args.no_dedupe, jobs=args.jobs)
    summary = dict(report.summary(), seed=args.seed)
    if args.out:
        csv_path = args.out + ".csv"
        records = [r.to_record() for r in report.rows]
        with open(csv_path, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=list(records[0].keys()))
            w.writeheader()
            w.writerows(records)
        png_path = plots.render_scan_summary(report.rows, args.out + ".png")
        summary["csv"] = csv_path
        summary["png"] = str(png_path)
    if args.format == "json":
        rows = None
        if args.full:
            rows = [r.to_record() for r in report.rows]
        print(dump_json({"summary": summary, "rows": rows}))
    else:
        print(f"scanned {summary['codes']} codes: {summary['agreements']} agree, "
              f"{summary['disagreements']} disagree, "
              f"{summary['indeterminate']} indeterminate (seed {args.seed})")
        for r in report.disagreements:
            print(f"  DISAGREE [{r.n},{r.k}] {r.to_record()['generator']}")
        if args.out:
            print(f"table written to {summary['csv']}, figure to {summary['png']}")
    if report.disagreements:
        return EXIT_NEGATIVE
    if report.indeterminate:
        return EXIT_INDETERMINATE
    return EXIT_OK


def cmd_simulate(args) -> int:
    code = resolve_code(args)
    lam = resolve_lambda(args, code)
    beta = lam.nu**args.files
    rng = random.Random(f"{args.seed}:files")
    files = dss.random_files(code.field, args.files, beta, code.k, rng)
    storage = dss.encode_storage(files, code)
    result = dss.run_session(storage, code, lam, args.request,
                             seed=f"{args.seed}:session",
                             include_plan=args.include_plan)
    recovered = result.decoded == files[args.request - 1]
    payload = dict(result.trace, recovered=recovered, seed=args.seed)
    text = dump_json(payload)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    if args.format == "json":
        print(text)
    else:
        print(f"seed: {args.seed}")
        print(f"requested file {args.request} of {args.files}: "
              f"{'recovered' if recovered else 'RECOVERY FAILED'}")
        print(f"downloaded {result.download_total} symbols "
              f"({result.per_node_counts[0]} per node), rate {frac_str(result.rate)}")
    return EXIT_OK if recovered else EXIT_NEGATIVE


def cmd_audit(args) -> int:
    code = resolve_code(args)
    lam = resolve_lambda(args, code)
    report = dss.privacy_audit(code, lam, args.files, args.trials, seed=args.seed,
                               alpha=args.alpha,
                               disable_shuffle_for=args.negative_control)
    payload = report.to_json_dict()
    text = dump_json(payload)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    if args.format == "json":
        print(text)
    else:
        print(f"seed: {args.seed}")
        print(f"structural signature equality: {'ok' if report.structural_ok else 'FAILED'}")
        worst = min((t.p_value for t in report.tests), default=1.0)
        print(f"chi-square tests: {len(report.tests)}, smallest p = {worst:.3g}, "
              f"per-test threshold {report.per_test_alpha:.3g}")
        print(f"audit {'passed' if report.passed else 'FAILED'}")
    return EXIT_OK if report.passed else EXIT_NEGATIVE


# -- parser ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="pircodex",
        description="Private information retrieval over linear-coded storage: "
                    "rates, capacity tests, end-to-end simulation, privacy audits.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, formats=("text", "json")):
        sp.add_argument("--format", choices=formats, default="text")

    sp = sub.add_parser("capacity", help="MDS-PIR capacity for [n,k] storage and f files")
    sp.add_argument("n", type=int)
    sp.add_argument("k", type=int)
    sp.add_argument("files", type=int, nargs="?", default=1)
    sp.add_argument("--limit", action="store_true", help="many-files limit instead")
    common(sp)
    sp.set_defaults(handler=cmd_capacity)

    sp = sub.add_parser("rate", help="schedule rate for a code and rate matrix")
    add_code_args(sp)
    add_lambda_args(sp)
    sp.add_argument("--files", type=int, required=True)
    sp.add_argument("--curve-out", metavar="PREFIX",
                    help="write PREFIX.csv and PREFIX.png rate curves")
    sp.add_argument("--curve-max", type=int, default=8)
    common(sp)
    sp.set_defaults(handler=cmd_rate)

    sp = sub.add_parser("classify", help="is the code capacity-achieving?")
    add_code_args(sp)
    sp.add_argument("--budget", type=int, default=2_000_000,
                    help="search node budget")
    sp.add_argument("--out-lambda", metavar="FILE", help="save the witness rate matrix")
    common(sp)
    sp.set_defaults(handler=cmd_classify)

    sp = sub.add_parser("interference",
                        help="interference matrices and decodability of a rate matrix")
    add_code_args(sp)
    add_lambda_args(sp)
    common(sp)
    sp.set_defaults(handler=cmd_interference)

    sp = sub.add_parser("scan", help="agreement scan over all small binary codes")
    sp.add_argument("--nmax", type=int, required=True)
    sp.add_argument("--field", default="gf(2)")
    sp.add_argument("--sample", action="append", metavar="N:K:COUNT",
                    help="random spot check instead of exhaustive rows")
    sp.add_argument("--seed", type=int, default=default_seed())
    sp.add_argument("--budget", type=int, default=300_000)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--no-dedupe", action="store_true",
                    help="keep permutation-equivalent duplicates")
    sp.add_argument("--out", metavar="PREFIX", help="write PREFIX.csv and PREFIX.png")
    sp.add_argument("--full", action="store_true", help="include per-code rows in JSON")
    common(sp)
    sp.set_defaults(handler=cmd_scan)

    sp = sub.add_parser("simulate", help="end-to-end retrieval on random file contents")
    add_code_args(sp)
    add_lambda_args(sp)
    sp.add_argument("--files", type=int, required=True)
    sp.add_argument("--request", type=int, default=1, metavar="M")
    sp.add_argument("--seed", type=int, default=default_seed())
    sp.add_argument("--include-plan", action="store_true")
    sp.add_argument("--out", metavar="FILE", help="also write the JSON trace here")
    common(sp)
    sp.set_defaults(handler=cmd_simulate)

    sp = sub.add_parser("audit", help="privacy audit of the query distribution")
    add_code_args(sp)
    add_lambda_args(sp)
    sp.add_argument("--files", type=int, required=True)
    sp.add_argument("--trials", type=int, default=2000)
    sp.add_argument("--seed", type=int, default=default_seed())
    sp.add_argument("--alpha", type=float, default=0.01)
    sp.add_argument("--negative-control", type=int, metavar="M",
                    help="skip query shuffling when requesting file M "
                         "(the audit must then fail)")
    sp.add_argument("--out", metavar="FILE", help="also write the JSON report here")
    common(sp)
    sp.set_defaults(handler=cmd_audit)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.handler(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
