"""Command-line runner for every verification experiment.

Exit codes: 0 when every requested experiment passes, 1 on a verification
failure (or an inconclusive result), 2 on a usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import jsonschema

from . import asm, geodesic, lorentzian, whittaker
from .qsystem import classical, macdonald, msystem
from .reports import FAIL, INCONCLUSIVE, PASS, ExperimentReport, jsonable, report_schema

DEFAULT_SEED = 20240101
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(ValueError):
    pass


# -- helpers -------------------------------------------------------------------------


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _fraction_list(text: str) -> list[Fraction]:
    return [_fraction(x) for x in text.split(",") if x.strip()]


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a list of integers: {text!r}") from exc


def expect_failure(report: ExperimentReport, name: str) -> ExperimentReport:
    """Wrap a negative control: it passes when the wrapped check fails."""
    return ExperimentReport(
        name,
        {"control_of": report.experiment, **report.params},
        PASS if report.status == FAIL else FAIL,
        {"wrapped_status": report.status, **report.details},
        report.wall_time,
    )


def random_lorentz_params(rng: random.Random, count: int) -> list[lorentzian.LorentzParams]:
    out = []
    while len(out) < count:
        g = Fraction(rng.randint(1, 9), rng.randint(2, 20))
        a = Fraction(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 9))
        out.append(lorentzian.LorentzParams(g, a))
    return out


@dataclass
class Outcome:
    reports: list[ExperimentReport]
    table: list[list] | None = None  # first row is the header


# -- experiments ---------------------------------------------------------------------------


def _lorentzian_genfun(args) -> Outcome:
    if args.random:
        params = random_lorentz_params(random.Random(args.seed), args.random)
    else:
        params = [lorentzian.LorentzParams(args.g, args.a)]
    return Outcome([lorentzian.genfun_check(p, args.order, args.perturb) for p in params])


def _lorentzian_commute(args) -> Outcome:
    p1 = lorentzian.LorentzParams(args.g, args.a)
    p2 = lorentzian.LorentzParams(args.g, args.a2) if args.control else lorentzian.conjugate_parameter(p1, args.a2)
    report = lorentzian.commutation_residual(p1, p2, args.size, args.window)
    return Outcome([expect_failure(report, "lorentzian-commute-control") if args.control else report])


def _geodesic_soliton(args) -> Outcome:
    table = geodesic.coefficient_table(args.order, args.nmax)
    header = ["n"] + [f"g^{k}" for k in range(args.order + 1)]
    return Outcome([geodesic.soliton_report(args.order, args.nmax)], [header] + table)


def _geodesic_conserve(args) -> Outcome:
    return Outcome([geodesic.conserved_phi_check(args.nmax, args.order)])


def _asm_count(args) -> Outcome:
    report = asm.count_report(args.size)
    rows = [["n", "count"]] + [[r["n"], r["count"]] for r in report.details["table"]]
    return Outcome([report], rows)


def _asm_bijection(args) -> Outcome:
    return Outcome([asm.bijection_report(args.size)])


def _asm_lambdadet(args) -> Outcome:
    return Outcome([asm.lambda_det_identity(args.size)])


def _whittaker(args) -> Outcome:
    if args.type.upper() != "A":
        raise UsageError("only type A is supported from the command line")
    cd = whittaker.cartan_type_a(args.rank)
    lam = args.lam or [Fraction(5, 7), Fraction(3, 2), Fraction(1, 3), Fraction(2, 9)][: args.rank]
    mu = args.mu or [Fraction(1)] * args.rank
    if len(lam) != args.rank or len(mu) != args.rank:
        raise UsageError("--lambda and --mu need one value per node")
    hw = whittaker.HighestWeight(tuple(lam), tuple(mu))
    perturb = tuple(args.perturb) if args.perturb else None
    report = whittaker.whittaker_defect(cd, hw, args.depth, perturb)
    return Outcome([expect_failure(report, "whittaker-verify-control") if perturb else report])


def _qsystem_classical(args) -> Outcome:
    return Outcome([classical.classical_qsystem_check(args.nvars, args.nmax)])


def _qsystem_a1(args) -> Outcome:
    return Outcome([classical.a1_conserved_quantity(args.nmax, args.q0, args.q1, args.seed)])


def _qsystem_operators(args) -> Outcome:
    return Outcome([msystem.msystem_relations_check(args.nvars, args.degree_cap)])


def _qsystem_graded_char(args) -> Outcome:
    try:
        occ = json.loads(args.spec)
    except json.JSONDecodeError as exc:
        raise UsageError(f"--spec is not valid JSON: {exc}") from exc
    if not isinstance(occ, list) or not all(isinstance(r, list) for r in occ):
        raise UsageError("--spec must be a JSON list of lists")
    return Outcome([msystem.graded_character_report(msystem.GradedCharSpec(args.nvars, tuple(map(tuple, occ))))])


def _qsystem_qdet(args) -> Outcome:
    return Outcome([msystem.qdet_report(args.alpha, args.nvars, args.degree_cap, args.amax)])


def _dim_exchange(args) -> Outcome:
    currents = {"e": [False], "f": [True], "both": [False, True]}[args.current]
    reports = []
    for inv in currents:
        r = macdonald.dim_exchange_check(args.window, args.nvars, args.degree_cap, inverted=inv, swapped=args.control)
        reports.append(expect_failure(r, "dim-exchange-control") if args.control else r)
    return Outcome(reports)


def _macdonald_eigen(args) -> Outcome:
    return Outcome([macdonald.macdonald_eigencheck(tuple(args.partition), args.nvars)])


def _macdonald_tlimit(args) -> Outcome:
    return Outcome([macdonald.t_limit_check(args.nvars, args.degree_cap)])


# -- suites ------------------------------------------------------------------------------------


def suite_plan(suite: str, seed: int) -> list[tuple[str, Callable[[], list[ExperimentReport]]]]:
    """Ordered ``(label, thunk)`` pairs; every thunk returns reports that must pass."""
    full = suite == "full"
    F = Fraction
    rng = random.Random(seed)
    lorentz_random = random_lorentz_params(rng, 5)
    p1 = lorentzian.LorentzParams(F(1, 10), F(1, 2))
    A1, A2 = whittaker.cartan_type_a(1), whittaker.cartan_type_a(2)
    weights = [
        (A1, (F(5, 7),), (F(1),), 6),
        (A1, (F(-3, 11),), (F(2, 3),), 6),
        (A2, (F(5, 7), F(3, 2)), (F(1), F(1)), 4),
        (A2, (F(-2, 5), F(7, 3)), (F(1, 2), F(3)), 4),
    ]
    graded_specs = [[(a, n)] for a in (1, 2) for n in (1, 2, 3)] + [[(1, 1), (1, 1)], [(1, 1), (2, 1)], [(1, 2), (1, 1)], [(1, 1), (1, 1), (1, 1)]]
    if full:
        graded_specs += [[(2, 2), (1, 1)], [(1, 3), (2, 1)], [(1, 2), (1, 2), (2, 1)]]
    plan = [
        ("lorentzian-genfun", lambda: [lorentzian.genfun_check(p, 10) for p in lorentz_random]),
        ("lorentzian-genfun-control", lambda: [expect_failure(lorentzian.genfun_check(p1, 10, perturb=True), "lorentzian-genfun-control")]),
        ("lorentzian-commute", lambda: [lorentzian.commutation_residual(p1, lorentzian.conjugate_parameter(p1, F(2, 3)))]),
        ("lorentzian-commute-control", lambda: [expect_failure(lorentzian.commutation_residual(p1, lorentzian.LorentzParams(F(1, 10), F(2, 3))), "lorentzian-commute-control")]),
        ("geodesic-soliton", lambda: [geodesic.soliton_report(20, 8)]),
        ("geodesic-conserve", lambda: [geodesic.conserved_phi_check(8, 20)]),
        ("geodesic-conserve-control", lambda: [expect_failure(
            geodesic.conserved_phi_check(8, 20, replace={2: geodesic.limit_gf(20)}), "geodesic-conserve-control")]),
        ("asm-count", lambda: [asm.count_report(7 if full else 6)]),
        ("asm-bijection", lambda: [asm.bijection_report(6 if full else 5)]),
        ("asm-lambdadet", lambda: [asm.lambda_det_identity(5)]),
        ("whittaker-verify", lambda: [whittaker.whittaker_defect(cd, whittaker.HighestWeight(l, m), K) for cd, l, m, K in weights]),
        ("whittaker-verify-control", lambda: [expect_failure(
            whittaker.whittaker_defect(A2, whittaker.HighestWeight((F(5, 7), F(3, 2)), (1, 1)), 4, perturb=(1, 2)), "whittaker-verify-control")]),
        ("qsystem-classical", lambda: [classical.classical_qsystem_check(N, 4 if full else 3) for N in (2, 3, 4)]),
        ("qsystem-a1-conserved", lambda: [classical.a1_conserved_quantity(8, 1, 2), classical.a1_conserved_quantity(8, seed=seed)]),
        ("qsystem-operators", lambda: [msystem.msystem_relations_check(N, 4) for N in (1, 2, 3)]),
        ("qsystem-graded-char", lambda: [msystem.graded_character_report(msystem.GradedCharSpec.from_factors(3, s)) for s in graded_specs]),
        ("macdonald-tlimit", lambda: [macdonald.t_limit_check(N, 4 if full else 3) for N in (2, 3)]),
        ("macdonald-eigen", lambda: [
            macdonald.macdonald_eigencheck(lam, N)
            for N in (1, 2, 3)
            for d in range(0, (4 if full else 3) + 1)
            for lam in _partitions(d, N)
        ]),
        ("dim-exchange", lambda: [macdonald.dim_exchange_check(2, 3, 3, inverted=inv) for inv in (False, True)]),
        ("dim-exchange-control", lambda: [expect_failure(macdonald.dim_exchange_check(2, 3, 3, swapped=True), "dim-exchange-control")]),
        ("qsystem-qdet", lambda: [msystem.qdet_report(3, 3, 2, 2 if full else 1)]),
    ]
    return plan


def _partitions(d, N):
    from .exact.symmetric import partitions

    return list(partitions(d, N))


def run_all(suite: str = "quick", seed: int = DEFAULT_SEED) -> list[ExperimentReport]:
    if suite not in ("quick", "full"):
        raise UsageError("suite must be 'quick' or 'full'")
    plan = suite_plan(suite, seed)
    if not plan:
        raise RuntimeError("empty experiment registry")
    reports = []
    for _, thunk in plan:
        reports.extend(thunk())
    return reports


def _run_all(args) -> Outcome:
    return Outcome(run_all(args.suite, args.seed))


# -- registry and parser ---------------------------------------------------------------------------

REGISTRY: dict[str, tuple[Callable, Callable, str]] = {}


def register(name: str, configure: Callable, runner: Callable, help_text: str):
    REGISTRY[name] = (configure, runner, help_text)


def _none(p):
    pass


register("lorentzian-genfun", lambda p: (
    p.add_argument("--g", type=_fraction, default=Fraction(1, 10)),
    p.add_argument("--a", type=_fraction, default=Fraction(1, 2)),
    p.add_argument("--order", type=int, default=10),
    p.add_argument("--random", type=int, default=0, help="check this many seeded random (g, a) pairs instead"),
    p.add_argument("--perturb", action="store_true", help="flip the sign of the z w term"),
), _lorentzian_genfun, "transfer-matrix entries vs the generating function")
register("lorentzian-commute", lambda p: (
    p.add_argument("--g", type=_fraction, default=Fraction(1, 10)),
    p.add_argument("--a", type=_fraction, default=Fraction(1, 2)),
    p.add_argument("--a2", type=_fraction, default=Fraction(2, 3)),
    p.add_argument("--size", type=int, default=40),
    p.add_argument("--window", type=int, default=10),
    p.add_argument("--control", action="store_true", help="use (g, a2) instead of the conjugate; expects a failure"),
), _lorentzian_commute, "truncated commutator of two transfer matrices")
register("geodesic-soliton", lambda p: (
    p.add_argument("--order", type=int, default=20),
    p.add_argument("--nmax", type=int, default=8),
), _geodesic_soliton, "closed-form two-point function vs recursion and oracle")
register("geodesic-conserve", lambda p: (
    p.add_argument("--order", type=int, default=20),
    p.add_argument("--nmax", type=int, default=8),
), _geodesic_conserve, "conserved quantity along the geodesic recursion")
register("asm-count", lambda p: p.add_argument("--size", type=int, default=6), _asm_count, "ASM counts vs the product formula")
register("asm-bijection", lambda p: p.add_argument("--size", type=int, default=5), _asm_bijection, "ASM / six-vertex / osculating-path round trips")
register("asm-lambdadet", lambda p: p.add_argument("--size", type=int, default=5), _asm_lambdadet, "lambda-determinant of the Vandermonde matrix")
register("whittaker-verify", lambda p: (
    p.add_argument("--type", default="A"),
    p.add_argument("--rank", type=int, default=2),
    p.add_argument("--depth", type=int, default=4),
    p.add_argument("--lambda", dest="lam", type=_fraction_list, default=None),
    p.add_argument("--mu", type=_fraction_list, default=None),
    p.add_argument("--perturb", type=_int_list, default=None, help="double the coefficient of this word; expects a failure"),
), _whittaker, "path-model Whittaker vector relations via the pairing")
register("qsystem-classical", lambda p: (
    p.add_argument("--nvars", type=int, default=3),
    p.add_argument("--nmax", type=int, default=3),
), _qsystem_classical, "Q-system on rectangular Schur polynomials")
register("qsystem-a1", lambda p: (
    p.add_argument("--q0", type=_fraction, default=None),
    p.add_argument("--q1", type=_fraction, default=None),
    p.add_argument("--nmax", type=int, default=8),
), _qsystem_a1, "conserved quantity of the A1 Q-system")
register("qsystem-operators", lambda p: (
    p.add_argument("--nvars", type=int, default=3),
    p.add_argument("--degree-cap", type=int, default=4),
), _qsystem_operators, "M-system exchange and quantum Q-system relations")
register("qsystem-graded-char", lambda p: (
    p.add_argument("--nvars", type=int, default=3),
    p.add_argument("--spec", default="[[2]]", help="occupation matrix n[alpha-1][j-1] as JSON"),
), _qsystem_graded_char, "graded tensor-product characters")
register("qsystem-qdet", lambda p: (
    p.add_argument("--alpha", type=int, default=3),
    p.add_argument("--nvars", type=int, default=3),
    p.add_argument("--degree-cap", type=int, default=2),
    p.add_argument("--amax", type=int, default=1),
), _qsystem_qdet, "quantum determinant: product vs ASM expansion")
register("dim-exchange", lambda p: (
    p.add_argument("--window", type=int, default=2),
    p.add_argument("--nvars", type=int, default=3),
    p.add_argument("--degree-cap", type=int, default=3),
    p.add_argument("--current", choices=("e", "f", "both"), default="both"),
    p.add_argument("--control", action="store_true", help="use g(z,w) in both terms; expects a failure"),
), _dim_exchange, "exchange relation of the DIM currents, mode by mode")
register("macdonald-eigen", lambda p: (
    p.add_argument("--partition", type=_int_list, default=[2, 1]),
    p.add_argument("--nvars", type=int, default=3),
), _macdonald_eigen, "Macdonald polynomial eigencheck")
register("macdonald-tlimit", lambda p: (
    p.add_argument("--nvars", type=int, default=3),
    p.add_argument("--degree-cap", type=int, default=4),
), _macdonald_tlimit, "t -> infinity limit of the deformed operators")
register("run-all", lambda p: p.add_argument("--suite", choices=("quick", "full"), default="quick"), _run_all, "run a whole suite")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", metavar="PATH", help="write the report bundle as JSON ('-' for stdout)")
    common.add_argument("--csv", metavar="PATH", help="write a CSV table ('-' for stdout)")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help=f"seed for randomized inputs (default {DEFAULT_SEED})")
    common.add_argument("--timing", action="store_true", help="include wall times in the JSON output")
    parser = argparse.ArgumentParser(prog="intcomb", description="Exact verification of integrable-combinatorics identities.")
    sub = parser.add_subparsers(dest="experiment", metavar="EXPERIMENT")
    sub.required = True
    for name, (configure, _, help_text) in REGISTRY.items():
        configure(sub.add_parser(name, parents=[common], help=help_text))
    return parser


def bundle(reports: list[ExperimentReport], timing: bool = False) -> dict:
    statuses = [r.status for r in reports]
    out = {
        "reports": [r.to_dict(timing) for r in reports],
        "summary": {
            "total": len(reports),
            "passed": statuses.count(PASS),
            "failed": statuses.count(FAIL),
            "inconclusive": statuses.count(INCONCLUSIVE),
        },
    }
    jsonschema.validate(out, report_schema())
    return out


def _write(path: str, text: str, stdout):
    if path == "-":
        stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _csv_text(outcome: Outcome) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if outcome.table:
        for row in outcome.table:
            writer.writerow([jsonable(x) for x in row])
    else:
        writer.writerow(["experiment", "status", "params"])
        for r in outcome.reports:
            writer.writerow([r.experiment, r.status, json.dumps(jsonable(r.params), sort_keys=True)])
    return buf.getvalue()


def main(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    _, runner, _ = REGISTRY[args.experiment]
    start = time.perf_counter()
    try:
        outcome = runner(args)
    except (UsageError, ValueError, TypeError) as exc:
        print(f"usage error: {exc}", file=stderr)
        return EXIT_USAGE
    elapsed = time.perf_counter() - start
    for r in outcome.reports:
        label = " ".join(f"{k}={v}" for k, v in jsonable(r.params).items() if not isinstance(v, (dict, list)))
        print(f"{r.status.upper():<12} {r.experiment} {label}".rstrip(), file=stderr if "-" in (args.json, args.csv) else stdout)
    if args.json:
        _write(args.json, json.dumps(bundle(outcome.reports, args.timing), sort_keys=True, indent=2) + "\n", stdout)
    if args.csv:
        _write(args.csv, _csv_text(outcome), stdout)
    if args.timing:
        print(f"total wall time {elapsed:.2f}s", file=stderr)
    return EXIT_OK if all(r.passed for r in outcome.reports) else EXIT_FAIL


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
