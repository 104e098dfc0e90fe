"""Command-line front end.

Subcommands::

    deltatower tower build --utype 2,1 [--check] [--seed N] [--out FILE]
    deltatower grid verify [--max-cells 9]
    deltatower grid seqred --s 3,2,1 --mode reductions
    deltatower series --logd-system 2 --order 5 [--h EXPR] [--initial 1,1]
    deltatower series --element "b[1][1]*b[1][2]" --order 8 [--spec FILE]

Reports are line oriented: one ``CHECK <name> <PASS|FAIL> <millis>
[detail]`` line per check and a final ``RESULT <PASS|FAIL>``.  The exit
status is 0 exactly when every check passed.  Serialized reports omit
timing so they are byte-identical across runs for fixed arguments and
seed.  The environment variable DELTATOWER_BUDGET overrides the
exhaustive-verification cell budget (default 12).
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from dataclasses import dataclass, field
from itertools import permutations

from . import gridcheck
from .errors import BudgetExceeded, DeltaTowerError
from .grid import analysis_by_coreductions, analysis_by_reductions, build_seqred_a, build_seqred_b
from .operators import (
    apply_operator,
    build_E,
    decompose,
    expand,
    is_generic,
    logd_system,
    prolonged_residual,
    solve_prolonged,
)
from .relations import Verdict, certify_independence
from .series import Series
from .textio import parse_element
from .tower import (
    SeriesContext,
    TowerSpec,
    build_spec,
    delta_consistency_residual,
    eval_series,
    random_element,
)

DEFAULT_SEED = 20406
MAX_LEVELS = 3
MAX_RANK = 3
MAX_SERIES_ORDER = 64


@dataclass
class CheckRecord:
    name: str
    passed: bool
    millis: int
    detail: str | None = None

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tail = f" {self.detail}" if self.detail else ""
        return f"CHECK {self.name} {status} {self.millis}{tail}"


@dataclass
class RunReport:
    command: str
    arguments: tuple[str, ...]
    checks: list[CheckRecord] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def run(self, name: str, fn) -> None:
        """Execute one check; fn returns (ok, detail)."""
        start = time.perf_counter()
        ok, detail = fn()
        millis = int((time.perf_counter() - start) * 1000)
        self.checks.append(CheckRecord(name, ok, millis, detail))

    def lines(self) -> list[str]:
        out = [c.line() for c in self.checks]
        out.append(f"RESULT {'PASS' if self.passed else 'FAIL'}")
        return out

    def to_json(self) -> str:
        """Deterministic serialization: everything except elapsed times."""
        doc = {
            "command": self.command,
            "arguments": list(self.arguments),
            "checks": [
                {"name": c.name, "status": "PASS" if c.passed else "FAIL", "detail": c.detail}
                for c in self.checks
            ],
            "result": "PASS" if self.passed else "FAIL",
        }
        return json.dumps(doc, sort_keys=True)


def _parse_positive_ints(text: str, what: str) -> tuple[int, ...]:
    try:
        values = tuple(int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"{what} must be comma-separated integers")
    if not values or any(v < 1 for v in values):
        raise argparse.ArgumentTypeError(f"{what} must be positive integers")
    return values


def _parse_floats(text: str) -> list[float]:
    return [float(v) for v in text.split(",")]


def _cell_budget() -> int:
    raw = os.environ.get("DELTATOWER_BUDGET")
    if raw is None:
        return gridcheck.MAX_VERIFY_CELLS
    try:
        return int(raw)
    except ValueError:
        raise BudgetExceeded(f"DELTATOWER_BUDGET={raw!r} is not an integer")


# --- tower build -------------------------------------------------------------


def cmd_tower_build(args, argv) -> int:
    utype = args.utype
    if not args.force and (len(utype) > MAX_LEVELS or any(n > MAX_RANK for n in utype)):
        raise BudgetExceeded(
            f"U-type {','.join(map(str, utype))} exceeds the default budget "
            f"(<= {MAX_LEVELS} levels, ranks <= {MAX_RANK}); pass --force to override"
        )
    spec = build_spec(utype)
    operators = {i: build_E(spec, i) for i in range(1, spec.ell + 1)}
    for i in range(1, spec.ell + 1):
        print(f"E{i}: {operators[i].to_text()}")
    serialized = spec.to_json()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(serialized + "\n")
    else:
        print(serialized)
    if not args.check:
        return 0

    report = RunReport("tower build", tuple(argv))
    rng = random.Random(args.seed)
    for i in range(1, spec.ell + 1):
        op = operators[i]
        e_i = spec.e(i)

        def check_kernel(op=op, e_i=e_i, i=i):
            value = apply_operator(op, e_i, spec)
            return value.is_zero(), f"apply(E{i}, e_{i})"

        report.run(f"kernel_e{i}", check_kernel)

        def check_generic(e_i=e_i, i=i):
            deco = decompose(e_i, i, spec)
            return is_generic(deco), f"{len(deco.components)} eigencomponents"

        report.run(f"genericity_e{i}", check_generic)

        def check_symmetry(op=op, i=i):
            base = expand(op)
            for perm in permutations(op.factors):
                from .operators import FactoredOperator

                other = expand(FactoredOperator(i, perm))
                if other.coefficients != base.coefficients:
                    return False, "expansion depends on the factor order"
            return True, f"{len(op.factors)} factors, all orders agree"

        report.run(f"expand_symmetry_E{i}", check_symmetry)

        def check_expand_apply(op=op, rng=rng):
            probe = random_element(rng, spec, allow_denominator=False)
            expanded = expand(op)
            same = apply_operator(expanded, probe, spec) == apply_operator(op, probe, spec)
            return same, "factored and expanded forms agree on a random element"

        report.run(f"expand_apply_E{i}", check_expand_apply)

        def check_independence(i=i):
            trace = certify_independence(spec.generators(i), 2, spec, level=i)
            return (
                trace.verdict is Verdict.NO_NONTRIVIAL_RELATION,
                f"degree<=2, {len(trace.steps)} reduction steps",
            )

        report.run(f"independence_level{i}", check_independence)

    for line in report.lines():
        print(line)
    return 0 if report.passed else 1


# --- grid verify -------------------------------------------------------------


def cmd_grid_verify(args, argv) -> int:
    budget = _cell_budget()
    if args.max_cells > budget:
        raise BudgetExceeded(
            f"max-cells={args.max_cells} exceeds the exhaustive budget {budget}"
        )
    reports = gridcheck.run_grid_suite(max_cells=args.max_cells, budget=budget)
    run = RunReport("grid verify", tuple(argv))
    for prop in reports:
        detail = f"instances={prop.instances}"
        if prop.counterexample:
            detail += f" {prop.counterexample}"
        run.checks.append(CheckRecord(prop.name, prop.passed, prop.millis, detail))
    for line in run.lines():
        print(line)
    return 0 if run.passed else 1


# --- grid seqred -------------------------------------------------------------


def cmd_grid_seqred(args, argv) -> int:
    s = args.s
    if args.mode == "reductions":
        g, target = build_seqred_a(s)
        analysis = analysis_by_reductions(target, frozenset(), g)
    else:
        g, target = build_seqred_b(s)
        analysis = analysis_by_coreductions(target, frozenset(), g)
    utype = analysis.utype()
    print(f"grid: {g.depth}x{g.columns}")
    print(f"target: {sorted(target)}")
    print(f"utype: {','.join(map(str, utype))}")
    report = RunReport("grid seqred", tuple(argv))
    report.run(
        "utype_matches",
        lambda: (utype == tuple(s), f"expected {tuple(s)}, computed {utype}"),
    )
    for line in report.lines():
        print(line)
    return 0 if report.passed else 1


# --- series ------------------------------------------------------------------


def _infer_spec(elements) -> TowerSpec:
    """Smallest tower covering the generator/constant symbols mentioned."""
    max_level = 1
    ranks: dict[int, int] = {}
    for x in elements:
        for kind, level, index in x.variables():
            if kind in ("b", "c"):
                max_level = max(max_level, level)
                ranks[level] = max(ranks.get(level, 1), index)
    return TowerSpec(ranks=tuple(ranks.get(i, 1) for i in range(1, max_level + 1)))


def _format_series(s: Series) -> str:
    return "[" + ", ".join(repr(float(c)) for c in s.coeffs) + "]"


def cmd_series(args, argv) -> int:
    if args.order > MAX_SERIES_ORDER:
        raise BudgetExceeded(f"order {args.order} exceeds the cap {MAX_SERIES_ORDER}")
    report = RunReport("series", tuple(argv))
    if args.logd_system is not None:
        n = args.logd_system
        h = parse_element(args.h)
        system = logd_system(n, h)
        initial = args.initial if args.initial is not None else [1.0] * n
        if len(initial) != n:
            raise DeltaTowerError(f"expected {n} initial values, got {len(initial)}")
        if h.is_rational():
            spec = ctx = None
            h_series = Series.const(float(h.as_rational()), args.order)
        else:
            spec = _infer_spec([h])
            ctx = SeriesContext.default(spec, order=args.order)
            h_series = eval_series(h, ctx, spec)
        print(str(system))
        solution = solve_prolonged(system, initial, args.order, ctx, spec)
        for i, s in enumerate(solution, start=1):
            print(f"x_{i}: {_format_series(s)}")
        residual = prolonged_residual(system, solution, h_series)
        report.run("residual", lambda: (residual < 1e-9, f"defining-equation residual {residual:.3e}"))
    else:
        x = parse_element(args.element)
        if args.spec:
            with open(args.spec, encoding="utf-8") as fh:
                spec = TowerSpec.from_json(fh.read())
        else:
            spec = _infer_spec([x])
        ctx = SeriesContext.default(spec, order=args.order)
        s = eval_series(x, ctx, spec)
        print(f"element: {x}")
        print(f"series: {_format_series(s)}")
        residual = delta_consistency_residual(x, ctx, spec)
        report.run(
            "delta_consistency",
            lambda: (residual < 1e-9, f"derivation/series residual {residual:.3e}"),
        )
    for line in report.lines():
        print(line)
    return 0 if report.passed else 1


# --- entry point --------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="deltatower")
    sub = parser.add_subparsers(dest="command", required=True)

    tower = sub.add_parser("tower", help="tower constructions")
    tower_sub = tower.add_subparsers(dest="tower_command", required=True)
    build = tower_sub.add_parser("build", help="build the tower for a U-type")
    build.add_argument(
        "--utype",
        required=True,
        type=lambda t: _parse_positive_ints(t, "--utype"),
        help="comma-separated positive integers n_1,...,n_l",
    )
    build.add_argument("--check", action="store_true", help="run the verification checks")
    build.add_argument("--seed", type=int, default=DEFAULT_SEED)
    build.add_argument("--out", help="write the serialized tower to a file")
    build.add_argument("--force", action="store_true", help="ignore the size budget")
    build.set_defaults(fn=cmd_tower_build)

    grid = sub.add_parser("grid", help="grid model experiments")
    grid_sub = grid.add_subparsers(dest="grid_command", required=True)
    verify = grid_sub.add_parser("verify", help="exhaustive property verification")
    verify.add_argument("--max-cells", type=int, default=9)
    verify.set_defaults(fn=cmd_grid_verify)
    seqred = grid_sub.add_parser("seqred", help="prescribed-U-type constructions")
    seqred.add_argument(
        "--s", required=True, type=lambda t: _parse_positive_ints(t, "--s")
    )
    seqred.add_argument("--mode", choices=("reductions", "coreductions"), required=True)
    seqred.set_defaults(fn=cmd_grid_seqred)

    series = sub.add_parser("series", help="truncated series oracle")
    which = series.add_mutually_exclusive_group(required=True)
    which.add_argument("--logd-system", type=int, metavar="N")
    which.add_argument("--element", metavar="EXPR")
    series.add_argument("--order", type=int, default=12)
    series.add_argument("--h", default="0", help="right-hand side element")
    series.add_argument("--initial", type=_parse_floats, help="comma-separated initial values")
    series.add_argument("--spec", help="TowerSpec JSON file")
    series.add_argument("--seed", type=int, default=DEFAULT_SEED)
    series.set_defaults(fn=cmd_series)

    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args, argv)
    except DeltaTowerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
