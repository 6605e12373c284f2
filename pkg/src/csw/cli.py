"""csw command line: build and check schemes, build norming families,
evaluate norms, run analyses and capture experiments.

Exit codes: 0 pass, 1 claim failure, 2 configuration error, 3 I/O error.
All numeric output is exact "p/q"; reports are deterministic byte-for-byte
for identical inputs.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
from fractions import Fraction

from . import analysis, norming, schemes
from .errors import ConfigError, CswError
from .vectors import format_rational, parse_rational, parse_vector

EXIT_PASS = 0
EXIT_CLAIM_FAILURE = 1
EXIT_CONFIG = 2
EXIT_IO = 3


def _out_path(path):
    if path is None:
        return None
    base = os.environ.get("CSW_OUT_DIR")
    if base and not os.path.isabs(path):
        return os.path.join(base, path)
    return path


def _write_atomic(path, text):
    path = _out_path(path)
    directory = os.path.dirname(path) or "."
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".csw-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(args, text):
    if getattr(args, "out", None):
        _write_atomic(args.out, text)
    else:
        print(text, end="" if text.endswith("\n") else "\n")


def _json_text(obj):
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _csv_text(rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue()


def _parse_int_list(text):
    text = (text or "").strip()
    if not text:
        return []
    return [int(v) for v in text.split(",")]


def _load_type(args) -> schemes.TypeSpec:
    spec = args.type
    if os.path.exists(spec) or spec.endswith(".json"):
        with open(spec, encoding="utf-8") as handle:
            obj = json.load(handle)
        if "type" in obj:
            obj = obj["type"]
        return schemes.validate_type(obj["m"], obj["n"], obj["r"])
    parts = spec.split(";")
    if len(parts) == 1:
        parts += ["", ""]
    if len(parts) != 3:
        raise ConfigError(f"inline type must be 'm-list;n-list;r-list', got {spec!r}")
    return schemes.validate_type(*(_parse_int_list(p) for p in parts))


def _load_scheme(path) -> schemes.Scheme:
    with open(path, encoding="utf-8") as handle:
        return schemes.scheme_from_json(json.load(handle))


def _load_family(path) -> norming.NormingFamily:
    with open(path, encoding="utf-8") as handle:
        return norming.family_from_json(json.load(handle))


# ---------------------------------------------------------------------------
# subcommand handlers

def cmd_type_validate(args):
    violations = schemes.type_violations(
        _parse_int_list(args.m), _parse_int_list(args.n), _parse_int_list(args.r))
    payload = {
        "valid": not violations,
        "violations": [
            {"k": k, "constraint": name, "message": msg}
            for k, name, msg in violations
        ],
    }
    _emit(args, _json_text(payload))
    return EXIT_PASS if not violations else EXIT_CLAIM_FAILURE


def cmd_scheme_build(args):
    ts = _load_type(args)
    scheme = schemes.build_scheme(ts)
    report = schemes.check_axioms(scheme)
    text = schemes.scheme_dumps(scheme) + "\n"
    if args.out:
        _write_atomic(args.out, text)
    else:
        print(text, end="")
    return EXIT_PASS if report.passed else EXIT_CLAIM_FAILURE


def cmd_scheme_check(args):
    scheme = _load_scheme(args.scheme)
    report = schemes.check_axioms(scheme)
    _emit(args, _json_text(report.to_json()))
    return EXIT_PASS if report.passed else EXIT_CLAIM_FAILURE


def cmd_norming_build(args):
    scheme = _load_scheme(args.scheme)
    report = schemes.check_axioms(scheme)
    if not report.passed:
        raise ConfigError("scheme fails its axioms; refusing to build a family")
    if args.space == "eps":
        family = norming.build_eps_family(scheme, parse_rational(args.param))
    else:
        family = norming.build_K_family(scheme, parse_rational(args.param),
                                        scale_cap=args.scale_cap)
    text = norming.family_dumps(family) + "\n"
    if args.out:
        _write_atomic(args.out, text)
    else:
        print(text, end="")
    return EXIT_PASS


def cmd_norm_eval(args):
    family = _load_family(args.family)
    vec = parse_vector(args.vec)
    value = norming.norm(vec, family, mode=args.norm_mode)
    print(format_rational(value))
    return EXIT_PASS


def cmd_analyze(args):
    family = _load_family(args.family)
    if args.what == "biorth":
        report = analysis.check_biorthogonality(family)
    elif args.what == "coherence":
        report = analysis.coherence_report(family, lp_every=args.lp_every)
    elif args.what == "welldef":
        report = analysis.well_definedness_report(
            family, samples=args.samples, seed=args.seed)
    else:  # basis-constant
        result = analysis.basis_constant(family)
        report = result.report
        report.meta["attaining_vector"] = result.attaining.to_json()
    if args.format == "csv":
        _emit(args, _csv_text(report.to_csv_rows()))
    else:
        _emit(args, _json_text(report.to_json()))
    return EXIT_PASS if report.passed else EXIT_CLAIM_FAILURE


def _experiment_family(args):
    ts = _load_type(args)
    scheme = schemes.build_scheme(ts)
    return scheme


def cmd_experiment_eps(args):
    eps = parse_rational(args.eps)
    if not (0 < eps < 1):
        raise ConfigError(f"eps must lie in (0, 1), got {format_rational(eps)}")
    m = Fraction(args.m) if args.m is not None else 2 * args.n * eps
    if m != int(m) or m < 1:
        raise ConfigError(f"m = 2 n eps = {format_rational(m)} is not a positive integer")
    if Fraction(int(m), 2 * args.n) != eps:
        raise ConfigError(f"m/(2n) = {format_rational(Fraction(int(m), 2 * args.n))} "
                          f"does not equal eps = {format_rational(eps)}")
    scheme = _experiment_family(args)
    family = norming.build_eps_family(scheme, eps)
    config = analysis.EpsExperimentConfig(
        n=args.n, m=int(m),
        pattern=parse_vector(args.pattern) if args.pattern else None)
    report = analysis.run_eps_experiment(scheme, family, config)
    _emit(args, _json_text(report.to_json()))
    return EXIT_PASS if report.passed else EXIT_CLAIM_FAILURE


def cmd_experiment_kbasis(args):
    K = parse_rational(args.k)
    L = parse_rational(args.L)
    kprime = parse_rational(args.kprime)
    if K <= 1:
        raise ConfigError(f"K must exceed 1, got {format_rational(K)}")
    if not (1 <= kprime < L < K):
        raise ConfigError(f"need 1 <= K' < L < K, got K'={format_rational(kprime)}, "
                          f"L={format_rational(L)}, K={format_rational(K)}")
    if Fraction(1) / K + Fraction(1, args.n) >= Fraction(1) / L:
        raise ConfigError(
            f"need 1/K + 1/n < 1/L: {format_rational(Fraction(1) / K)} + "
            f"1/{args.n} >= {format_rational(Fraction(1) / L)}")
    scheme = _experiment_family(args)
    family = norming.build_K_family(scheme, K, scale_cap=args.scale_cap)
    config = analysis.KExperimentConfig(
        n=args.n, L=L, kprime=kprime,
        pattern=parse_vector(args.pattern) if args.pattern else None)
    report = analysis.run_K_experiment(scheme, family, config)
    _emit(args, _json_text(report.to_json()))
    return EXIT_PASS if report.passed else EXIT_CLAIM_FAILURE


# ---------------------------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(
        prog="csw",
        description="Construction-scheme workbench: exact rational norms over "
                    "recursively amalgamated functional families.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_type = sub.add_parser("type", help="type arithmetic")
    type_sub = p_type.add_subparsers(dest="subcommand", required=True)
    p_tv = type_sub.add_parser("validate", help="check a type triple")
    p_tv.add_argument("--m", required=True, help="comma list, length depth+1")
    p_tv.add_argument("--n", default="", help="comma list, length depth")
    p_tv.add_argument("--r", default="", help="comma list, length depth")
    p_tv.add_argument("--out")
    p_tv.set_defaults(func=cmd_type_validate)

    p_scheme = sub.add_parser("scheme", help="build or check schemes")
    scheme_sub = p_scheme.add_subparsers(dest="subcommand", required=True)
    p_sb = scheme_sub.add_parser("build")
    p_sb.add_argument("--type", required=True,
                      help="inline 'm;n;r' (comma lists) or a JSON file")
    p_sb.add_argument("--out")
    p_sb.set_defaults(func=cmd_scheme_build)
    p_sc = scheme_sub.add_parser("check")
    p_sc.add_argument("scheme", help="scheme JSON file")
    p_sc.add_argument("--out")
    p_sc.set_defaults(func=cmd_scheme_check)

    p_norming = sub.add_parser("norming", help="build norming families")
    norming_sub = p_norming.add_subparsers(dest="subcommand", required=True)
    p_nb = norming_sub.add_parser("build")
    p_nb.add_argument("--scheme", required=True)
    p_nb.add_argument("--space", choices=("eps", "k"), required=True)
    p_nb.add_argument("--param", required=True, help="eps or K as 'p/q'")
    p_nb.add_argument("--scale-cap", dest="scale_cap", type=int, default=1)
    p_nb.add_argument("--out")
    p_nb.set_defaults(func=cmd_norming_build)

    p_norm = sub.add_parser("norm", help="evaluate norms")
    norm_sub = p_norm.add_subparsers(dest="subcommand", required=True)
    p_ne = norm_sub.add_parser("eval")
    p_ne.add_argument("--family", required=True)
    p_ne.add_argument("--vec", default="", help="'pos:val,pos:val' with p/q values")
    p_ne.add_argument("--norm-mode", dest="norm_mode", choices=("local", "all"),
                      default="local")
    p_ne.set_defaults(func=cmd_norm_eval)

    p_an = sub.add_parser("analyze", help="run verification sweeps")
    p_an.add_argument("what", choices=("biorth", "basis-constant", "coherence",
                                       "welldef"))
    p_an.add_argument("--family", required=True)
    p_an.add_argument("--format", choices=("json", "csv"), default="json")
    p_an.add_argument("--lp-every", dest="lp_every", type=int, default=0,
                      help="cross-check every n-th hull certificate via the raw LP")
    p_an.add_argument("--samples", type=int, default=200)
    p_an.add_argument("--seed", type=int, default=0)
    p_an.add_argument("--out")
    p_an.set_defaults(func=cmd_analyze)

    p_exp = sub.add_parser("experiment", help="capture experiments")
    exp_sub = p_exp.add_subparsers(dest="subcommand", required=True)
    p_ee = exp_sub.add_parser("eps")
    p_ee.add_argument("--type", required=True)
    p_ee.add_argument("--eps", required=True)
    p_ee.add_argument("--n", type=int, required=True)
    p_ee.add_argument("--m", type=int, default=None,
                      help="defaults to 2 n eps, which must be an integer")
    p_ee.add_argument("--pattern", default=None)
    p_ee.add_argument("--out")
    p_ee.set_defaults(func=cmd_experiment_eps)
    p_ek = exp_sub.add_parser("kbasis")
    p_ek.add_argument("--type", required=True)
    p_ek.add_argument("--k", required=True)
    p_ek.add_argument("--n", type=int, required=True)
    p_ek.add_argument("--L", required=True)
    p_ek.add_argument("--kprime", default="1")
    p_ek.add_argument("--scale-cap", dest="scale_cap", type=int, default=1)
    p_ek.add_argument("--pattern", default=None)
    p_ek.add_argument("--out")
    p_ek.set_defaults(func=cmd_experiment_kbasis)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as err:
        print(f"configuration error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    except (OSError, json.JSONDecodeError) as err:
        print(f"i/o error: {err}", file=sys.stderr)
        return EXIT_IO
    except CswError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    except ValueError as err:
        print(f"configuration error: {err}", file=sys.stderr)
        return EXIT_CONFIG


def console_main():
    sys.exit(main())


if __name__ == "__main__":
    console_main()
