"""Command-line front end.

Exit codes: 0 success, 1 verification failure or internal consistency
error, 2 usage error.
"""

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from . import families, serialize, verify
from .asymptotics import alpha_digits
from .errors import ConsistencyError, DimensionCapError

ENV_OVERRIDE = "EXCY_MAX_DIM_OVERRIDE"


def dimension_cap():
    """Largest dimension accepted, raised by setting EXCY_MAX_DIM_OVERRIDE to an integer."""
    raw = os.environ.get(ENV_OVERRIDE)
    if not raw:
        return families.MAX_DIM
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{ENV_OVERRIDE} must be an integer, got {raw!r}") from None


class UsageError(Exception):
    pass


def _check_dim(value, flag, lowest=2):
    if value < lowest:
        raise UsageError(f"{flag} must be at least {lowest}, got {value}")
    cap = dimension_cap()
    if value > cap:
        raise UsageError(f"{flag} {value} exceeds the cap {cap}; set {ENV_OVERRIDE} to go higher")


def _emit(text, out):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _witness_text(exc):
    return json.dumps({k: serialize.exact_text(v) if not isinstance(v, (str, list, tuple)) else v
                       for k, v in exc.witness.items()}, default=str)


def cmd_generate(args):
    _check_dim(args.dim, "--dim", lowest=1 if args.family == "liu" else 2)
    record = families.build(args.family, args.dim, allow_large=True)
    if args.format == "json":
        _emit(serialize.to_json(record), args.out)
    else:
        _emit(serialize.to_text(record), args.out)
    return 0


def _run_named(job):
    name, max_dim, max_r = job
    return verify.run_suite(name, max_n=max_dim, max_r=max_r)


def cmd_verify(args):
    _check_dim(args.max_dim, "--max-dim")
    if args.max_r is not None and args.max_r < 1:
        raise UsageError(f"--max-r must be at least 1, got {args.max_r}")
    names = verify.SUITES if args.suite == "all" else (args.suite,)
    jobs = [(name, args.max_dim, args.max_r) for name in names]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            reports = list(pool.map(_run_named, jobs))
    else:
        reports = [_run_named(job) for job in jobs]
    if args.format == "json":
        _emit(json.dumps([r.to_dict() for r in reports], indent=2, sort_keys=True) + "\n", args.out)
    else:
        lines = []
        for r in reports:
            lines.extend(r.lines())
            s = r.to_dict()["summary"]
            lines.append(f"# {r.suite}: {s['pass']} pass, {s['fail']} fail, {s['inconclusive']} inconclusive")
        _emit("\n".join(lines) + "\n", args.out)
    return 0 if all(r.passed for r in reports) else 1


def cmd_scan_gcd(args):
    _check_dim(args.max_dim, "--max-dim")
    if args.jobs < 1:
        raise UsageError("--jobs must be positive")

    def show(entry):
        status = "PASS" if entry["gcd"] == 1 else "FAIL"
        print(f"{entry['n']}, {entry['gcd']}, {status}", flush=True)

    report, table = verify.scan_gcd_conjecture(
        args.max_dim, args.jobs, on_result=show, full=args.full_values)
    if args.out:
        doc = {"schema_version": serialize.SCHEMA_VERSION, "max_dim": str(args.max_dim),
               "entries": [{**e, "n": str(e["n"]), "gcd": str(e["gcd"]),
                            "status": "PASS" if e["gcd"] == 1 else "FAIL"} for e in table]}
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")
    return 0 if report.passed else 1


def cmd_alpha(args):
    if args.digits < 1:
        raise UsageError(f"--digits must be at least 1, got {args.digits}")
    if args.digits > 1000:
        raise UsageError("--digits above 1000 is not supported")
    text, enc = alpha_digits(args.digits)
    print(f"alpha = {text}")
    print(f"lo = {serialize.approx_text(enc.lo, 20)}")
    print(f"hi = {serialize.approx_text(enc.hi, 20)}")
    print(f"width < {serialize.approx_text(enc.width, 2)}")
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="excy", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="construct one example")
    g.add_argument("--family", required=True, choices=families.FAMILIES)
    g.add_argument("--dim", required=True, type=int)
    g.add_argument("--format", choices=("json", "text"), default="json")
    g.add_argument("--out")
    g.set_defaults(func=cmd_generate)

    v = sub.add_parser("verify", help="run identity and bound suites")
    v.add_argument("--suite", required=True, choices=verify.SUITES + ("all",))
    v.add_argument("--max-dim", type=int, default=10)
    v.add_argument("--max-r", type=int, help="largest r for product/qk (default from --max-dim)")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--format", choices=("json", "text"), default="text")
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("scan-gcd", help="check gcd(m'_n, E_n) = 1 dimension by dimension")
    s.add_argument("--max-dim", type=int, default=30)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--out")
    s.add_argument("--full-values", action="store_true",
                   help="write every value in full to --out (hundreds of MB near dimension 30)")
    s.set_defaults(func=cmd_scan_gcd)

    a = sub.add_parser("alpha", help="certified decimal value of alpha")
    a.add_argument("--digits", type=int, default=6)
    a.set_defaults(func=cmd_alpha)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, DimensionCapError) as exc:
        parser.print_usage(sys.stderr)
        print(f"excy: error: {exc}", file=sys.stderr)
        return 2
    except ConsistencyError as exc:
        print(f"excy: consistency check failed: {exc}", file=sys.stderr)
        print(f"witness: {_witness_text(exc)}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
