"""``minfix`` command line: verify, census, bounds, polydensity, witness.

Every command builds a :class:`RunReport`.  Its body (everything except
timings) is serialized with sorted keys, so two runs with the same inputs
and seed give byte-identical bodies and the same digest.

Exit codes: 0 success, 1 property violation (including a theorem
violation), 2 malformed input.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

from . import __version__
from .bounds import (sweep_classical_orders, sweep_optimization, sweep_scott, sweep_unipotent,
                     sweep_zsigmondy)
from .constructions import GroupAction, alt_group, load_group_file
from .corollary import (DEFAULT_PRIME_CAP, PolynomialSyntaxError, density_scan,
                        irreducibility_certificate, parse_poly)
from .corpus import census
from .group import DEFAULT_SCAN_CAP, DEFAULT_SEED
from .verifier import MODES, TheoremViolation, neumann_witness, primitivity_report
from .witnesses import (CASES, WitnessError, verify_witness, witness_affine, witness_alternating,
                        witness_onan_scott, witness_parabolic)

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2

SWEEPS: dict[str, Callable[[int], Any]] = {
    "zsigmondy": lambda seed: sweep_zsigmondy(),
    "classical-orders": lambda seed: sweep_classical_orders(),
    "optimization": lambda seed: sweep_optimization(),
    "unipotent": lambda seed: sweep_unipotent(),
    "scott": lambda seed: sweep_scott(seed=seed),
}

REPORT_SCHEMA: dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["command", "parameters", "results", "passed", "version", "seed", "digest",
                 "timings"],
    "additionalProperties": False,
    "properties": {
        "command": {"enum": ["verify", "census", "bounds", "polydensity", "witness"]},
        "parameters": {"type": "object"},
        "results": {"type": "array", "items": {"type": "object"}},
        "passed": {"type": "boolean"},
        "version": {"type": "string"},
        "seed": {"type": "integer"},
        "digest": {"type": "string", "pattern": "^[0-9a-f]{64}$"},
        "timings": {"type": "object", "additionalProperties": {"type": "number"}},
    },
}


class InputError(ValueError):
    """Malformed command-line input (exit code 2)."""


@dataclass
class RunReport:
    command: str
    parameters: dict[str, Any]
    seed: int
    results: list[dict[str, Any]] = field(default_factory=list)
    passed: bool = True
    timings: dict[str, float] = field(default_factory=dict)
    version: str = __version__

    def body(self) -> dict[str, Any]:
        return {"command": self.command, "parameters": self.parameters, "results": self.results,
                "passed": self.passed, "version": self.version, "seed": self.seed}

    def body_json(self) -> str:
        return json.dumps(self.body(), sort_keys=True, separators=(",", ":"))

    @property
    def digest(self) -> str:
        return hashlib.sha256(self.body_json().encode()).hexdigest()

    def to_dict(self) -> dict[str, Any]:
        return {**self.body(), "digest": self.digest, "timings": self.timings}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


# -- tables --------------------------------------------------------------------


def _table(rows: list[dict[str, Any]], columns: Sequence[str]) -> str:
    cells = [[str(c) for c in columns]]
    cells += [["" if r.get(c) is None else str(r.get(c)) for c in columns] for r in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(columns))]
    lines = ["  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip() for row in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


TABLE_COLUMNS = {
    "verify": ("group", "degree", "order", "primitive", "regular", "fix", "fix_cubed", "strict",
               "cycle_type", "search_mode"),
    "census": ("label", "degree", "order", "primitive", "min_fix", "fix_cubed", "strict",
               "witness_cycle_type", "burnside", "skipped", "passed"),
    "bounds": ("sweep", "checked", "failures", "passed"),
    "polydensity": ("polynomial", "degree", "prime_bound", "counted", "density_exact",
                    "density_estimate", "mean_root_count", "certified"),
    "witness": ("case", "params", "cycle_type", "predicted_fix", "verified_fix", "path", "passed"),
}


def render(report: RunReport, fmt: str) -> str:
    if fmt == "json":
        return report.to_json()
    out = _table(report.results, TABLE_COLUMNS[report.command])
    status = "PASS" if report.passed else "FAIL"
    return f"{out}\n\n{report.command}: {status}  digest {report.digest[:16]}"


# -- commands ------------------------------------------------------------------


def cmd_verify(args, report: RunReport) -> None:
    try:
        G = load_group_file(args.group)
    except (OSError, ValueError) as exc:
        raise InputError(f"cannot load group file {args.group}: {exc}") from exc
    t0 = time.perf_counter()
    prim = primitivity_report(G)
    row: dict[str, Any] = {"group": os.path.basename(args.group), "degree": G.degree,
                           "order": G.order, "transitive": prim.transitive,
                           "primitive": prim.primitive, "regular": prim.regular,
                           "block_systems": [[[i + 1 for i in b] for b in s]
                                             for s in prim.block_systems]}
    report.timings["primitivity"] = time.perf_counter() - t0
    if not prim.primitive or prim.regular:
        row["certificate"] = None
        row["reason"] = "not primitive" if not prim.primitive else "regular"
        report.passed = False
    else:
        t0 = time.perf_counter()
        cert = neumann_witness(G, args.mode, cap=args.cap, seed=report.seed, jobs=args.jobs,
                               group_id=os.path.basename(args.group), report=prim)
        report.timings["witness"] = time.perf_counter() - t0
        d = cert.to_dict()
        row.update(certificate=d, fix=d["fix"], fix_cubed=d["fix_cubed"], strict=d["strict"],
                   cycle_type=d["cycle_type"], search_mode=d["search_mode"])
        report.passed = cert.weak and (cert.strict or not args.strict)
    report.results.append(row)


def cmd_census(args, report: RunReport) -> None:
    t0 = time.perf_counter()
    rows = census(max_degree=args.max_degree, max_order=args.max_order, cap=args.cap,
                  jobs=args.jobs)
    for r in rows:
        report.results.append(r.to_dict())
        report.timings[r.label] = r.seconds
    report.timings["total"] = time.perf_counter() - t0
    report.passed = all(r.passed and r.burnside_ok is not False for r in rows)


def cmd_bounds(args, report: RunReport) -> None:
    if not args.sweep:
        raise InputError("bounds needs --sweep")
    names = args.only or list(SWEEPS)
    for name in names:
        t0 = time.perf_counter()
        res = SWEEPS[name](report.seed)
        report.timings[name] = time.perf_counter() - t0
        report.results.append({"sweep": name, "checked": res.checked,
                               "failures": len(res.failures), "passed": res.ok,
                               "examples": [repr(f) for f in res.failures[:5]]})
        report.passed &= res.ok


def cmd_polydensity(args, report: RunReport) -> None:
    try:
        f = parse_poly(args.poly)
    except PolynomialSyntaxError as exc:
        raise InputError(f"bad polynomial {args.poly!r}: {exc}") from exc
    if len(f) < 2:
        raise InputError("polynomial must be nonconstant")
    if args.bound > args.cap:
        raise InputError(f"bound {args.bound} exceeds cap {args.cap}")
    verdict = (irreducibility_certificate(f) if len(f) >= 3 else None)
    t0 = time.perf_counter()
    dr = density_scan(f, args.bound, cap=args.cap, jobs=args.jobs)
    report.timings["scan"] = time.perf_counter() - t0
    row = dr.to_dict()
    row["certified"] = verdict.certified if verdict else True
    row["certificate_prime"] = verdict.prime if verdict else None
    row["rational_root"] = verdict.rational_root if verdict else True
    notes = list(row["notes"])
    if verdict and verdict.warning:
        notes.append("warning: " + verdict.warning)
    notes.append("the minimal non-Galois extension hypothesis is asserted by the user, not checked")
    row["notes"] = notes
    report.results.append(row)


def _witness_spec(args):
    case = args.case
    if case == "affine":
        return witness_affine(_need(args, "d"), _need(args, "p"))
    if case == "intransitive":
        return witness_alternating(case, n=_need(args, "n"), k=_need(args, "k"))
    if case in ("imprimitive", "product"):
        return witness_alternating(case, k=_need(args, "k"), t=_need(args, "t"))
    if case == "diagonal":
        return witness_onan_scott("diagonal", S=alt_group(args.n or 5))
    if case == "parabolic":
        return witness_parabolic(_need(args, "d"), _need(args, "p"))
    raise InputError(f"unknown case {case!r}")


def _need(args, name: str) -> int:
    v = getattr(args, name)
    if v is None:
        raise InputError(f"--case {args.case} needs --{name}")
    return v


def cmd_witness(args, report: RunReport) -> None:
    try:
        spec = _witness_spec(args)
    except WitnessError as exc:
        raise InputError(str(exc)) from exc
    t0 = time.perf_counter()
    value, path = verify_witness(spec)
    report.timings["verify"] = time.perf_counter() - t0
    if path == "bound":
        ok = bool(spec.extra["bound_holds"])
    else:
        ok = value == spec.predicted_fix
    row = {"case": spec.case, "params": dict(sorted(spec.params.items())),
           "cycle_type": list(spec.cycle_type) if spec.cycle_type else None,
           "predicted_fix": spec.predicted_fix, "verified_fix": value, "path": path,
           "passed": ok}
    if spec.element is not None:
        row["element"] = [i + 1 for i in spec.element.images]
    for key in ("subgroup_order", "centralizer_order", "bound_holds", "cube_below_degree"):
        if key in spec.extra:
            row[key] = spec.extra[key]
    report.results.append(row)
    report.passed = ok


COMMANDS = {"verify": cmd_verify, "census": cmd_census, "bounds": cmd_bounds,
            "polydensity": cmd_polydensity, "witness": cmd_witness}


# -- parser --------------------------------------------------------------------


def _seed_default() -> int:
    env = os.environ.get("MINFIX_SEED")
    if env is None:
        return DEFAULT_SEED
    try:
        return int(env)
    except ValueError:
        raise InputError(f"MINFIX_SEED must be an integer, got {env!r}") from None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for scans")
    common.add_argument("--seed", type=int, default=None,
                        help="RNG seed (default: $MINFIX_SEED or built-in)")
    common.add_argument("--output", help="also write the JSON report to this file")

    parser = _Parser(prog="minfix", description="Fixed-point witnesses in primitive groups.")
    parser.add_argument("--version", action="version", version=f"minfix {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("verify", parents=[common], help="certify one group from a JSON file")
    p.add_argument("--group", required=True, help="group file (1-based generators)")
    p.add_argument("--mode", choices=MODES, default="exhaustive")
    p.add_argument("--strict", action="store_true", help="require fix^3 < n")
    p.add_argument("--cap", type=int, default=DEFAULT_SCAN_CAP)

    p = sub.add_parser("census", parents=[common], help="sweep the built-in corpus")
    p.add_argument("--max-degree", type=int, default=100)
    p.add_argument("--max-order", type=int, default=10**7)
    p.add_argument("--cap", type=int, default=DEFAULT_SCAN_CAP)

    p = sub.add_parser("bounds", parents=[common], help="run the numeric bound sweeps")
    p.add_argument("--sweep", action="store_true")
    p.add_argument("--only", nargs="+", choices=list(SWEEPS))

    p = sub.add_parser("polydensity", parents=[common], help="root-count density over primes")
    p.add_argument("--poly", required=True)
    p.add_argument("--bound", type=int, default=10**5)
    p.add_argument("--cap", type=int, default=DEFAULT_PRIME_CAP)

    p = sub.add_parser("witness", parents=[common], help="build and check a witness element")
    p.add_argument("--case", required=True, choices=CASES)
    for name in ("n", "k", "t", "d", "p"):
        p.add_argument(f"--{name}", type=int)
    return parser


def run_command(argv: Sequence[str] | None = None) -> tuple[int, RunReport | None]:
    """Run one command; returns (exit code, report).  Prints nothing."""
    try:
        args = build_parser().parse_args(argv)
        seed = args.seed if args.seed is not None else _seed_default()
        if args.jobs < 1:
            raise InputError("--jobs must be >= 1")
        params = {k: v for k, v in sorted(vars(args).items())
                  if k not in ("command", "format", "output", "jobs", "seed")}
        report = RunReport(args.command, params, seed)
        try:
            COMMANDS[args.command](args, report)
        except TheoremViolation as exc:
            report.passed = False
            report.results.append({"violation": str(exc)})
            return EXIT_VIOLATION, report
    except InputError as exc:
        return EXIT_INPUT, RunReport("error", {"message": str(exc)}, DEFAULT_SEED, passed=False)
    return (EXIT_OK if report.passed else EXIT_VIOLATION), report


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except InputError as exc:
        print(f"minfix: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    code, report = run_command(argv)
    if code == EXIT_INPUT:
        print(f"minfix: error: {report.parameters['message']}", file=sys.stderr)
        return code
    if any("violation" in r for r in report.results):
        print(report.results[-1]["violation"], file=sys.stderr)
    print(render(report, args.format))
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(report.to_json() + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
