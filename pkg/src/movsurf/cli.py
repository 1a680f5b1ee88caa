"""Batch command line interface.

Four subcommands operate on a JSON job file:

    movsurf check        --input job.json     condition battery only
    movsurf implicitize  --input job.json     full pipeline, prints |M|
    movsurf verify       --input job.json     pipeline + verification record
    movsurf hilbert      --input job.json     quotient-dimension table

Job file schema: {"m": int, "n": int, "a": [4 polynomial strings],
optional "seed": int, optional "assert_one_to_one": bool}.

Every flag can be preset through an environment variable with prefix
MOVSURF_ (e.g. MOVSURF_SEED=7, MOVSURF_DET_BACKEND=interp); explicit flags
win over the environment.  Exit codes: 0 success, 1 condition or
verification failure, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

from . import __version__
from .basepoints import CONDITION_NAMES, CheckConfig, check_all, hilbert_dim
from .implicitize import (ConditionError, PipelineConfig, VerificationError,
                          pipeline)
from .linalg import RatMatrix
from .ring import MixedBidegreeError, ParseError, parse
from .syzygy import Parametrization

ENV_PREFIX = "MOVSURF_"

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2


class InputError(Exception):
    pass


@dataclass
class JobSpec:
    m: int
    n: int
    a: list
    phi: Parametrization
    seed: int
    assert_one_to_one: bool


def _env(name, cast, fallback):
    raw = os.environ.get(ENV_PREFIX + name)
    if raw is None:
        return fallback
    try:
        return cast(raw)
    except ValueError:
        raise SystemExit("bad value for %s%s: %r" % (ENV_PREFIX, name, raw))


def _env_flag(name):
    raw = os.environ.get(ENV_PREFIX + name, "")
    return raw.lower() in ("1", "true", "yes", "on")


def build_parser():
    top = argparse.ArgumentParser(
        prog="movsurf",
        description="exact implicit equations of bidegree-(m,n) surface "
                    "parametrizations of P1 x P1, via moving planes and "
                    "moving quadrics")
    top.add_argument("--version", action="version", version=__version__)
    sub = top.add_subparsers(dest="command", required=True)
    for name, help_text in (
            ("check", "run the base-point condition battery"),
            ("implicitize", "compute the implicit equation"),
            ("verify", "compute and verify the implicit equation"),
            ("hilbert", "tabulate quotient dimensions over a bidegree rectangle")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--input", required=True, help="JSON job file")
        p.add_argument("--json", action="store_true",
                       default=_env_flag("JSON"),
                       help="emit a machine-readable JSON report")
        p.add_argument("--seed", type=int,
                       default=_env("SEED", int, None),
                       help="seed for coordinate changes and sampling")
        p.add_argument("--det-backend",
                       choices=("cofactor", "interp", "both", "auto"),
                       default=_env("DET_BACKEND", str, "auto"))
        p.add_argument("--sat-bound", type=int,
                       default=_env("SAT_BOUND", int, None),
                       help="saturation search bound (default 2*max(m,n)+2)")
        p.add_argument("--window", type=int,
                       default=_env("WINDOW", int, 3),
                       help="diagonal sampling window for stabilization")
        p.add_argument("--samples", type=int,
                       default=_env("SAMPLES", int, 100),
                       help="number of exact vanishing samples")
        p.add_argument("--force", action="store_true",
                       default=_env_flag("FORCE"),
                       help="emit results even when checks fail")
        p.add_argument("--output", default=_env("OUTPUT", str, None),
                       help="write the report to a file instead of stdout")
        if name == "hilbert":
            p.add_argument("--d1", default=None,
                           help="first-degree range LO:HI (default 0:2m)")
            p.add_argument("--d2", default=None,
                           help="second-degree range LO:HI (default 0:2n)")
            p.add_argument("--squared", action="store_true",
                           help="tabulate the squared ideal instead")
    return top


def load_jobspec(path, seed_override=None):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError("cannot read %s: %s" % (path, exc))
    except json.JSONDecodeError as exc:
        raise InputError("invalid JSON in %s: %s" % (path, exc))
    if not isinstance(data, dict):
        raise InputError("job file must hold a JSON object")
    try:
        m = int(data["m"])
        n = int(data["n"])
        strings = list(data["a"])
    except KeyError as exc:
        raise InputError("job file misses key %s" % exc)
    except (TypeError, ValueError):
        raise InputError("m and n must be integers, a must be a list")
    if len(strings) != 4:
        raise InputError("expected exactly 4 polynomials, got %d" % len(strings))
    if m < 1 or n < 1:
        raise InputError("m and n must be positive")
    polys = []
    for i, s in enumerate(strings):
        try:
            polys.append(parse(s, bidegree=(m, n)))
        except (ParseError, MixedBidegreeError, ValueError) as exc:
            raise InputError("a%d: %s" % (i, exc))
    try:
        phi = Parametrization(m, n, tuple(polys))
    except ValueError as exc:
        raise InputError(str(exc))
    seed = data.get("seed", 0)
    if seed_override is not None:
        seed = seed_override
    return JobSpec(m=m, n=n, a=strings, phi=phi, seed=int(seed),
                   assert_one_to_one=bool(data.get("assert_one_to_one", True)))


# ---------------------------------------------------------------------------
# serialization helpers


def _frac_str(x):
    f = Fraction(x)
    return str(f.numerator) if f.denominator == 1 else "%d/%d" % (f.numerator, f.denominator)


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return _frac_str(obj)
    if isinstance(obj, RatMatrix):
        return [[_frac_str(x) for x in row] for row in obj.entries]
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def conditions_block(report):
    block = {name: report.verdicts.get(name) for name in CONDITION_NAMES}
    block["names"] = dict(CONDITION_NAMES)
    block["witnesses"] = _jsonable(report.witnesses)
    block["k"] = report.k
    block["short_path"] = report.short_path
    block["all_passed"] = report.all_passed
    block["failure"] = report.failure
    return block


def change_block(report):
    if report.coordinate_change is None:
        return None
    return {"seed": report.coordinate_seed,
            "matrix": _jsonable(report.coordinate_change)}


def emit(args, text):
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def render_report(args, payload, human_lines):
    if args.json:
        return json.dumps(payload, indent=2, sort_keys=True)
    return "\n".join(human_lines)


def _check_config(spec, args):
    return CheckConfig(window=args.window, sat_bound=args.sat_bound,
                       seed=spec.seed, coord_bound=10)


def _pipeline_config(spec, args):
    return PipelineConfig(check=_check_config(spec, args),
                          det_backend=args.det_backend,
                          samples=args.samples,
                          verify_seed=spec.seed,
                          force=args.force,
                          assert_one_to_one=spec.assert_one_to_one)


def _human_conditions(report):
    lines = []
    for name in sorted(CONDITION_NAMES):
        verdict = report.verdicts.get(name)
        mark = "PASS" if verdict else "FAIL"
        lines.append("%s %-45s %s" % (name, CONDITION_NAMES[name], mark))
    lines.append("k = %s%s" % (report.k,
                               " (no base points: short path)" if report.short_path else ""))
    if report.coordinate_change is not None:
        lines.append("coordinate change applied (seed %d)" % report.coordinate_seed)
    lines.append("conditions: %s" % ("PASS" if report.all_passed else
                                     "FAIL at %s" % report.failure))
    return lines


def cmd_check(spec, args):
    t0 = time.perf_counter()
    report = check_all(spec.phi, _check_config(spec, args))
    elapsed = time.perf_counter() - t0
    payload = {
        "schema": 1,
        "command": "check",
        "m": spec.m, "n": spec.n, "a": spec.a, "seed": spec.seed,
        "conditions": conditions_block(report),
        "coordinate_change": change_block(report),
        "timings": {"total_s": elapsed},
    }
    emit(args, render_report(args, payload, _human_conditions(report)))
    return EXIT_OK if report.all_passed else EXIT_FAIL


def _run_pipeline(spec, args):
    config = _pipeline_config(spec, args)
    t0 = time.perf_counter()
    result = pipeline(spec.phi, config)
    elapsed = time.perf_counter() - t0
    return result, elapsed


def _result_payload(spec, args, result, elapsed, command):
    record = result.verification
    payload = {
        "schema": 1,
        "command": command,
        "m": spec.m, "n": spec.n, "a": spec.a, "seed": spec.seed,
        "conditions": conditions_block(result.report),
        "coordinate_change": change_block(result.report),
        "implicit": {
            "polynomial": result.polynomial.render(),
            "degree": result.degree,
            "k": result.k,
            "term_count": len(result.polynomial.terms),
            "backend": result.backend,
            "backend_agreement": result.backend_agreement,
            "projection_fallback": result.projection_fallback,
            "pivots": _jsonable(result.pivots),
        },
        "verification": {
            "samples": record.samples,
            "failures": _jsonable(record.failures),
            "vanishing_ok": record.vanishing_ok,
            "degree": record.degree,
            "expected_degree": record.expected_degree,
            "degree_ok": record.degree_ok,
            "x3_power": record.x3_power,
            "ok": record.ok,
        },
        "timings": {"total_s": elapsed},
    }
    return payload


def cmd_implicitize(spec, args):
    result, elapsed = _run_pipeline(spec, args)
    payload = _result_payload(spec, args, result, elapsed, "implicitize")
    lines = _human_conditions(result.report)
    lines.append("")
    lines.append("|M| = %s" % result.polynomial.render())
    lines.append("degree %d = 2mn - k with k = %d; %d terms; backend %s"
                 % (result.degree, result.k, len(result.polynomial.terms),
                    result.backend))
    record = result.verification
    lines.append("verification: %s (%d samples, x3 power %s)"
                 % ("PASS" if record.ok else "FAIL", record.samples,
                    record.x3_power))
    emit(args, render_report(args, payload, lines))
    return EXIT_OK if record.ok else EXIT_FAIL


def cmd_verify(spec, args):
    result, elapsed = _run_pipeline(spec, args)
    payload = _result_payload(spec, args, result, elapsed, "verify")
    record = result.verification
    lines = []
    lines.append("polynomial: %s" % result.polynomial.render())
    lines.append("vanishing: %s (%d exact samples, %d failures)"
                 % ("PASS" if record.vanishing_ok else "FAIL",
                    record.samples, len(record.failures)))
    lines.append("degree: %d expected %d -> %s"
                 % (record.degree, record.expected_degree,
                    "PASS" if record.degree_ok else "FAIL"))
    lines.append("x3 power: %s" % record.x3_power)
    lines.append("verification: %s" % ("PASS" if record.ok else "FAIL"))
    emit(args, render_report(args, payload, lines))
    return EXIT_OK if record.ok else EXIT_FAIL


def _parse_range(text, fallback):
    if text is None:
        return fallback
    try:
        lo, hi = text.split(":")
        lo, hi = int(lo), int(hi)
    except ValueError:
        raise InputError("range must look like LO:HI, got %r" % text)
    if lo < 0 or hi < lo:
        raise InputError("bad range %r" % text)
    return lo, hi


def cmd_hilbert(spec, args):
    d1 = _parse_range(args.d1, (0, 2 * spec.m))
    d2 = _parse_range(args.d2, (0, 2 * spec.n))
    gens = list(spec.phi.products()) if args.squared else list(spec.phi.a)
    t0 = time.perf_counter()
    table = {}
    for i in range(d1[0], d1[1] + 1):
        for j in range(d2[0], d2[1] + 1):
            table[(i, j)] = hilbert_dim(gens, (i, j))
    elapsed = time.perf_counter() - t0
    payload = {
        "schema": 1,
        "command": "hilbert",
        "m": spec.m, "n": spec.n, "a": spec.a, "seed": spec.seed,
        "squared": bool(args.squared),
        "d1": list(d1), "d2": list(d2),
        "table": {"%d,%d" % key: val for key, val in table.items()},
        "timings": {"total_s": elapsed},
    }
    lines = ["quotient dimensions%s:" % (" (squared ideal)" if args.squared else "")]
    header = "d1\\d2 " + " ".join("%5d" % j for j in range(d2[0], d2[1] + 1))
    lines.append(header)
    for i in range(d1[0], d1[1] + 1):
        lines.append("%5d " % i + " ".join(
            "%5d" % table[(i, j)] for j in range(d2[0], d2[1] + 1)))
    emit(args, render_report(args, payload, lines))
    return EXIT_OK


COMMANDS = {
    "check": cmd_check,
    "implicitize": cmd_implicitize,
    "verify": cmd_verify,
    "hilbert": cmd_hilbert,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        spec = load_jobspec(args.input, seed_override=args.seed)
    except InputError as exc:
        print("input error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT
    try:
        return COMMANDS[args.command](spec, args)
    except InputError as exc:
        print("input error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print("input error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT
    except ConditionError as exc:
        print("condition failure: %s" % exc, file=sys.stderr)
        if exc.report is not None and not args.json:
            for line in _human_conditions(exc.report):
                print(line, file=sys.stderr)
        return EXIT_FAIL
    except VerificationError as exc:
        print("verification failure: %s" % exc, file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
