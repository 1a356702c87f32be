"""Command-line entry point.

Every subcommand verifies a mathematical claim or runs a seeded experiment
and emits a machine-readable report (schema "bellkit/1").  Exit codes:
0 = claims verified / experiment completed, 1 = a verified-claim check
failed, 2 = usage or input error.  Reports are byte-identical for identical
seeds regardless of --threads.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import kolmogorov, nogo, superdet
from .errors import BellkitError
from .hilbert import Projection, StateVector, born_probability
from .observables import (
    Direction,
    bell_directions,
    constraint_set_from_json,
    pentagram,
    spin_observable,
    verify_line_products,
)
from .rng import generator, split

SCHEMA = "bellkit/1"

_EXIT_OK = 0
_EXIT_CLAIM_FAILED = 1
_EXIT_USAGE = 2


def _claim(name: str, passed: bool, detail: str) -> dict:
    return {"name": name, "passed": bool(passed), "detail": detail}


def _flatten(prefix: str, value, lines: list[str]):
    if isinstance(value, dict):
        for key in sorted(value):
            _flatten(f"{prefix}.{key}" if prefix else str(key), value[key], lines)
    elif isinstance(value, list) and any(isinstance(v, dict) for v in value):
        for i, v in enumerate(value):
            _flatten(f"{prefix}[{i}]", v, lines)
    elif isinstance(value, list) and len(value) > 8:
        lines.append(f"{prefix}: [{len(value)} entries]")
    else:
        lines.append(f"{prefix}: {value}")


def _render(report: dict, fmt: str) -> str:
    if fmt == "json":
        payload = {key: value for key, value in report.items() if key != "rows"}
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        for row in report["rows"]:
            writer.writerow(["" if cell is None else cell for cell in row])
        return buffer.getvalue()
    lines = [f"bellkit {report['command']}"]
    for claim in report["claims"]:
        status = "PASS" if claim["passed"] else "FAIL"
        lines.append(f"claim {claim['name']}: {status} ({claim['detail']})")
    body: list[str] = []
    _flatten("", report["result"], body)
    return "\n".join(lines + body) + "\n"


def _finish(args, command: str, params: dict, result: dict, claims: list[dict], rows) -> int:
    report = {
        "schema": SCHEMA,
        "command": command,
        "params": params,
        "result": result,
        "claims": claims,
        "rows": rows,
    }
    payload = _render(report, args.format)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)
    return _EXIT_OK if all(c["passed"] for c in claims) else _EXIT_CLAIM_FAILED


def _table_rows(table: nogo.FrequencyTable) -> list[list]:
    return table.to_rows()


# ---------------------------------------------------------------------------
# subcommand handlers


def _cmd_verify_pentagram(args) -> int:
    spec = pentagram()
    if args.spec:
        with open(args.spec) as fh:
            spec = constraint_set_from_json(fh.read())
    checks = verify_line_products(spec, tol=args.tol)
    degree_ok = all(count == 2 for count in spec.node_line_count())
    result = {
        "lines": [
            {
                "line": chk.line + 1,
                "commuting": chk.commuting,
                "product_sign": chk.product_sign,
                "max_error": chk.max_error,
                "matches_required": chk.matches_required,
            }
            for chk in checks
        ],
        "node_line_counts": spec.node_line_count(),
        "required_products": list(spec.required_products),
    }
    claims = [
        _claim(
            "lines-commute",
            all(c.commuting for c in checks),
            "all operators within each line commute",
        ),
        _claim(
            "line-products-match",
            all(c.matches_required for c in checks),
            "each line's operator product equals its required sign times identity",
        ),
        _claim("nodes-on-two-lines", degree_ok, "every node sits on exactly two lines"),
    ]
    rows = [["line", "commuting", "product_sign", "max_error", "matches_required"]]
    rows += [
        [c.line + 1, c.commuting, c.product_sign, c.max_error, c.matches_required]
        for c in checks
    ]
    return _finish(args, "verify-pentagram", {"tol": args.tol}, result, claims, rows)


def _cmd_ghz_exhaustive(args) -> int:
    search = nogo.ghz_exhaustive_search()
    odd = all(len(v) % 2 == 1 and len(v) >= 1 for v in search.per_assignment)
    result = {
        "satisfying_count": search.satisfying_count,
        "violation_histogram": {
            str(k): v for k, v in search.violation_histogram().items()
        },
        "per_assignment": [sorted(v) for v in search.per_assignment],
    }
    claims = [
        _claim(
            "no-satisfying-assignment",
            search.satisfying_count == 0,
            "none of the 64 assignments meets all four parity requirements",
        ),
        _claim(
            "violated-sets-odd",
            odd,
            "every assignment violates an odd number (>= 1) of requirements",
        ),
    ]
    rows = [["assignment_code", "violated_requirements"]]
    rows += [[code, " ".join(map(str, sorted(v)))] for code, v in enumerate(search.per_assignment)]
    return _finish(args, "ghz-exhaustive", {}, result, claims, rows)


def _cmd_bell_audit(args) -> int:
    if args.input:
        seq = nogo.read_assignments_csv(args.input)
        codes = np.array([a.to_code(nogo.BELL_OBSERVABLES) for a in seq], dtype=np.uint16)
        source = {"input": args.input, "length": len(seq)}
    else:
        codes = generator(args.seed).integers(0, 64, args.rounds, dtype=np.uint16)
        source = {"seed": args.seed, "rounds": args.rounds}
    audit = nogo.bell_frequency_audit_codes(codes)
    result = audit.to_dict()
    claims = [
        _claim(
            "bell-deviation-bound",
            audit.max_deviation >= args.epsilon,
            f"every assignment sequence misses the singlet targets by at least "
            f"{args.epsilon:g}",
        )
    ]
    source["epsilon"] = args.epsilon
    return _finish(args, "bell-audit", source, result, claims, _table_rows(audit.table))


def _cmd_bell_hull(args) -> int:
    check = nogo.bell_hull_infeasibility(args.epsilon)
    at_bound = (
        check if args.epsilon == 0.04 else nogo.bell_hull_infeasibility(0.04)
    )
    threshold = nogo.bell_hull_threshold()
    result = {
        "epsilon": check.epsilon,
        "feasible": check.feasible,
        "feasible_at_0.04": at_bound.feasible,
        "threshold": threshold,
    }
    claims = [
        _claim(
            "infeasible-at-0.04",
            not at_bound.feasible,
            "no mixture of the 64 assignments is within 4% of the singlet targets",
        )
    ]
    rows = [
        ["epsilon", "feasible", "threshold"],
        [check.epsilon, check.feasible, threshold],
    ]
    return _finish(args, "bell-hull", {"epsilon": args.epsilon}, result, claims, rows)


def _cmd_spin_half_audit(args) -> int:
    if args.candidate == "hemisphere":
        candidate = nogo.hemisphere_candidate()
    elif args.candidate == "constant":
        candidate = nogo.constant_candidate()
    else:
        raise ValueError(f"unknown candidate {args.candidate!r}")
    audit = nogo.spin_half_candidate_audit(
        candidate, args.theta, args.samples, args.seed, threads=args.threads
    )
    result = audit.to_dict()
    claims = []
    if args.candidate == "hemisphere":
        # hemisphere same-value fraction on a theta-circle is 1 - theta/pi
        analytic = 1.0 - args.theta / math.pi
        stderr = math.sqrt(analytic * (1.0 - analytic) / args.samples)
        claims.append(
            _claim(
                "hemisphere-estimate-matches-analytic",
                abs(audit.estimate - analytic) <= 6.0 * stderr,
                "sampled same-value fraction agrees with 1 - theta/pi",
            )
        )
        result["analytic_estimate"] = analytic
    rows = [["key", "value"]] + [[k, v] for k, v in sorted(result.items())]
    params = {
        "candidate": args.candidate,
        "theta": args.theta,
        "samples": args.samples,
        "seed": args.seed,
    }
    return _finish(args, "spin-half-audit", params, result, claims, rows)


def _default_model() -> kolmogorov.GeneralizedModel:
    a, b, c = bell_directions()
    eye = np.eye(2)
    generators = []
    for d in (a, b, c):
        plus = (np.eye(2) + spin_observable(d).matrix) / 2.0
        generators.append(Projection(np.kron(plus, eye)))
        generators.append(Projection(np.kron(eye, plus)))
    return kolmogorov.singlet_model(generators)


def _cmd_kolmogorov_check(args) -> int:
    if args.spec:
        with open(args.spec) as fh:
            model = kolmogorov.model_from_json(fh.read())
    else:
        model = _default_model()
    rng = generator(args.seed)
    max_residual = {}
    for dim in (2, 4, 8):
        psi_raw = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        psi = StateVector(psi_raw / np.linalg.norm(psi_raw))
        dim_model = kolmogorov.GeneralizedModel(dim, psi)
        worst = 0.0
        for _ in range(args.rounds):
            a, b = kolmogorov.random_commuting_projections(dim, rng)
            worst = max(worst, kolmogorov.check_additivity(dim_model, a, b).residual)
        max_residual[str(dim)] = worst
    rho_errors = [
        abs(
            kolmogorov.rho(model, kolmogorov.Event.of_sphere(g))
            - born_probability(model.psi, g)
        )
        for g in model.generators
    ]
    max_rho_error = max(rho_errors, default=0.0)
    result = {
        "max_additivity_residual": max_residual,
        "pairs_per_dim": args.rounds,
        "generators": len(model.generators),
        "max_rho_vs_born_error": max_rho_error,
    }
    claims = [
        _claim(
            "additivity-identity",
            all(v < args.tol for v in max_residual.values()),
            "rho(A&B) + rho(A|B) = rho(A) + rho(B) for commuting pairs",
        ),
        _claim(
            "rho-matches-born",
            max_rho_error < args.tol,
            "generator events carry exactly the quantum probabilities",
        ),
    ]
    rows = [["dim", "max_additivity_residual"]]
    rows += [[dim, res] for dim, res in sorted(max_residual.items())]
    rows.append(["rho_vs_born", max_rho_error])
    params = {"rounds": args.rounds, "seed": args.seed, "spec": args.spec, "tol": args.tol}
    return _finish(args, "kolmogorov-check", params, result, claims, rows)


def _random_direction_triple(rng: np.random.Generator) -> list[Direction]:
    while True:
        raw = rng.standard_normal((3, 3))
        raw /= np.linalg.norm(raw, axis=1, keepdims=True)
        dirs = [Direction.from_array(v) for v in raw]
        dots = [abs(dirs[i].dot(dirs[j])) for i, j in ((0, 1), (0, 2), (1, 2))]
        if max(dots) < 0.999:
            return dirs


def _cmd_red_small_heavy(args) -> int:
    fixture = kolmogorov.red_small_heavy_demo(list(bell_directions()))
    rng = generator(args.seed)
    all_hold = fixture.holds(args.tol)
    worst_rho = max(abs(r - 1.0) for r in fixture.rhos)
    for _ in range(args.rounds):
        rep = kolmogorov.red_small_heavy_demo(_random_direction_triple(rng))
        all_hold = all_hold and rep.holds(args.tol)
        worst_rho = max(worst_rho, max(abs(r - 1.0) for r in rep.rhos))
    result = {
        "fixture": fixture.to_dict(),
        "random_triples": args.rounds,
        "all_hold": all_hold,
        "max_rho_error": worst_rho,
    }
    claims = [
        _claim(
            "full-measure-but-empty-triple",
            all_hold,
            "each direction event has mixture 1 while the triple intersection is empty",
        )
    ]
    rows = [["key", "value"]]
    rows += [
        ["fixture_rhos", " ".join(repr(r) for r in fixture.rhos)],
        ["fixture_triple_empty", fixture.triple_empty],
        ["random_triples", args.rounds],
        ["all_hold", all_hold],
        ["max_rho_error", worst_rho],
    ]
    params = {"rounds": args.rounds, "seed": args.seed, "tol": args.tol}
    return _finish(args, "red-small-heavy", params, result, claims, rows)


def _ghz_strategy_from_flag(text: str):
    if text == "sampler":
        return superdet.GhzSampler()
    if text.startswith("fixed:"):
        return superdet.GhzFixed(int(text.split(":", 1)[1]))
    raise ValueError(f"unknown strategy {text!r} (use 'sampler' or 'fixed:<code>')")


def _singlet_strategy_from_flag(text: str):
    if text == "product":
        return superdet.SingletProductSampler()
    if text == "haar":
        return superdet.SingletHaarSampler()
    raise ValueError(f"unknown strategy {text!r} (use 'product' or 'haar')")


def _chooser_from_flag(text: str, one_based: bool) -> superdet.Chooser:
    if text in ("uniform", "adversarial"):
        return superdet.Chooser(text)
    if text.startswith("fixed:"):
        setting = int(text.split(":", 1)[1])
        return superdet.fixed_chooser(setting - 1 if one_based else setting)
    raise ValueError(f"unknown chooser {text!r}")


def _cmd_run_ghz(args) -> int:
    if args.spec:
        with open(args.spec) as fh:
            spec = superdet.experiment_from_json(fh.read())
        if spec.setup != "ghz":
            raise ValueError("experiment spec is not a ghz setup")
        report = superdet.run_experiment(spec, threads=args.threads)
    else:
        strategy = _ghz_strategy_from_flag(args.strategy)
        chooser = _chooser_from_flag(args.chooser, one_based=True)
        report = superdet.run_ghz_rounds(
            strategy, chooser, args.rounds, args.seed, threads=args.threads
        )
    claims = []
    if report.chooser["method"] == "uniform":
        sigma = math.sqrt(0.25 * 0.75 / report.rounds)
        claims.append(
            _claim(
                "satisfaction-bounded",
                report.satisfaction_frequency <= 0.75 + 4.0 * sigma,
                "free choice caps parity-line satisfaction at 75%",
            )
        )
    if report.chooser["method"] == "adversarial":
        claims.append(
            _claim(
                "adversary-never-fails",
                report.violations == 0,
                "a chooser that sees the hidden variable avoids every violation",
            )
        )
    result = report.to_dict()
    params = {"rounds": report.rounds, "seed": report.seed}
    return _finish(args, "run-ghz", params, result, claims, _table_rows(report.per_setting))


def _fan_directions(count: int) -> list[Direction]:
    """Non-collinear directions fanned over the open x-z half-plane."""
    return [
        Direction(math.sin(math.pi * (k + 0.5) / count), 0.0, math.cos(math.pi * (k + 0.5) / count))
        for k in range(count)
    ]


def _cmd_run_singlet(args) -> int:
    if args.spec:
        with open(args.spec) as fh:
            spec = superdet.experiment_from_json(fh.read())
        if spec.setup != "singlet":
            raise ValueError("experiment spec is not a singlet setup")
        report = superdet.run_experiment(spec, threads=args.threads)
        n_dirs = len(spec.directions)
        strategy_kind = spec.strategy.describe()["kind"]
    else:
        strategy = _singlet_strategy_from_flag(args.strategy)
        chooser = _chooser_from_flag(args.chooser, one_based=False)
        directions = _fan_directions(args.directions)
        report = superdet.run_singlet_rounds(
            strategy, directions, chooser, args.rounds, args.seed, threads=args.threads
        )
        n_dirs = args.directions
        strategy_kind = strategy.describe()["kind"]
    claims = []
    if report.chooser["method"] == "uniform":
        bound = (n_dirs - 2) / n_dirs
        sigma = math.sqrt(bound * (1.0 - bound) / report.rounds)
        claims.append(
            _claim(
                "violation-floor",
                report.violation_frequency >= bound - 4.0 * sigma,
                "a hidden state fits at most two directions, so free choice "
                f"violates at least {n_dirs - 2}/{n_dirs} of rounds",
            )
        )
    if report.chooser["method"] == "adversarial" and strategy_kind == "product-sampler":
        claims.append(
            _claim(
                "adversary-never-fails",
                report.violations == 0,
                "a chooser that sees the hidden state always finds a compatible direction",
            )
        )
    result = report.to_dict()
    params = {"rounds": report.rounds, "seed": report.seed, "directions": n_dirs}
    return _finish(
        args, "run-singlet", params, result, claims, _table_rows(report.per_setting)
    )


def _cmd_qm_reference(args) -> int:
    table = superdet.qm_reference_sample(args.rounds, args.seed, threads=args.threads)
    same_zero = all(
        entry.hits == 0
        for key, entry in table.counts.items()
        if key[0] == key[2]
    )
    cross_ok = True
    for key, entry in table.counts.items():
        if key[0] == key[2]:
            continue
        target = table.targets[key]
        stderr = math.sqrt(target * (1.0 - target) / entry.events)
        cross_ok = cross_ok and abs(entry.frequency - target) <= 6.0 * stderr
    result = {"table": table.to_dict(), "pairs": args.rounds}
    claims = [
        _claim(
            "same-direction-frequency-zero",
            same_zero,
            "equal-direction outcomes are opposite in every sampled pair",
        ),
        _claim(
            "cross-pairs-near-target",
            cross_ok,
            "cross-pair equal-outcome frequencies sit on the sin^2(theta/2) targets",
        ),
    ]
    params = {"pairs": args.rounds, "seed": args.seed}
    return _finish(args, "qm-reference", params, result, claims, _table_rows(table))


def _cmd_min_frequency(args) -> int:
    if args.input:
        seq = nogo.read_assignments_csv(args.input)
        codes = np.array([a.to_code(nogo.GHZ_OBSERVABLES) for a in seq], dtype=np.uint8)
        source = {"input": args.input, "length": len(seq)}
    else:
        codes = generator(args.seed).integers(0, 64, args.rounds, dtype=np.uint8)
        source = {"seed": args.seed, "rounds": args.rounds}
    audit = superdet.ghz_min_frequency_audit(codes)
    tight = superdet.ghz_min_frequency_audit(superdet.tight_min_frequency_sequence())
    result = {"audit": audit.to_dict(), "tight_fixture": tight.to_dict()}
    claims = [
        _claim(
            "min-frequency-bounded",
            audit.min_frequency <= 0.75,
            "four full-measure properties with empty intersection cannot all "
            "have frequency above 75%",
        ),
        _claim(
            "tight-fixture-at-bound",
            all(f == 0.75 for f in tight.frequencies),
            "the balanced one-violation-each sequence attains 0.75 exactly",
        ),
    ]
    rows = [["requirement", "frequency"]]
    rows += [[k + 1, f] for k, f in enumerate(audit.frequencies)]
    rows.append(["min", audit.min_frequency])
    return _finish(args, "min-frequency", source, result, claims, rows)


# ---------------------------------------------------------------------------
# argument parsing


def _add_common(parser: argparse.ArgumentParser, rounds_default: int | None = None):
    parser.add_argument("--seed", type=int, default=0, help="master RNG seed (default 0)")
    if rounds_default is not None:
        parser.add_argument(
            "--rounds", type=int, default=rounds_default,
            help=f"round/sample count (default {rounds_default})",
        )
    parser.add_argument("--out", help="write the report to this path instead of stdout")
    parser.add_argument(
        "--format", choices=("json", "csv", "text"), default="json",
        help="report format (default json)",
    )
    parser.add_argument(
        "--threads", type=int, default=1,
        help="parallel tally threads; the report is identical for any value",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bellkit",
        description="Desk-scale verifiers for the GHZ and Bell no-go facts, the "
        "pure-state mixture model, and super-deterministic setting-choice "
        "experiments.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "verify-pentagram",
        help="GHZ pentagram algebra: each line commutes; products are +I on the "
        "four rays and -I on the horizontal line",
    )
    _add_common(p)
    p.add_argument("--spec", help="JSON constraint set to audit instead of the built-in one")
    p.add_argument("--tol", type=float, default=1e-12, help="entrywise product tolerance")
    p.set_defaults(handler=_cmd_verify_pentagram)

    p = sub.add_parser(
        "ghz-exhaustive",
        help="GHZ parity fact: no +-1 assignment to the six spin tests satisfies "
        "all four parity requirements (exhaustive over 64)",
    )
    _add_common(p)
    p.set_defaults(handler=_cmd_ghz_exhaustive)

    p = sub.add_parser(
        "bell-audit",
        help="Bell frequency fact: every assignment sequence deviates by >= 4%% "
        "from the singlet pair targets",
    )
    _add_common(p, rounds_default=10000)
    p.add_argument("--input", help="CSV assignment sequence to audit (default: random)")
    p.add_argument(
        "--epsilon", type=float, default=0.04,
        help="deviation bound the claim checks (default 0.04)",
    )
    p.set_defaults(handler=_cmd_bell_audit)

    p = sub.add_parser(
        "bell-hull",
        help="Bell frequency fact, exact form: the 4%% ball around the singlet "
        "targets misses the hull of the 64 assignment frequency vectors",
    )
    _add_common(p)
    p.add_argument("--epsilon", type=float, default=0.04, help="max-norm radius to test")
    p.set_defaults(handler=_cmd_bell_hull)

    p = sub.add_parser(
        "spin-half-audit",
        help="spin-1/2 function audit: sampled same-value frequency on "
        "theta-circles vs the cos^2(theta/2) law (measurable candidates fail)",
    )
    _add_common(p)
    p.add_argument("--theta", type=float, default=2.0 * math.pi / 3.0)
    p.add_argument("--samples", type=int, default=100000)
    p.add_argument(
        "--candidate", default="hemisphere", choices=("hemisphere", "constant"),
        help="built-in candidate function (constant is rejected as not odd)",
    )
    p.set_defaults(handler=_cmd_spin_half_audit)

    p = sub.add_parser(
        "kolmogorov-check",
        help="mixture model: commuting additivity identity and agreement of "
        "generator mixtures with quantum probabilities",
    )
    _add_common(p, rounds_default=1000)
    p.add_argument("--spec", help="JSON model description to check")
    p.add_argument("--tol", type=float, default=1e-10, help="residual tolerance")
    p.set_defaults(handler=_cmd_kolmogorov_check)

    p = sub.add_parser(
        "red-small-heavy",
        help="mixture model paradox: three full-measure direction events on the "
        "singlet with exactly empty triple intersection",
    )
    _add_common(p, rounds_default=100)
    p.add_argument("--tol", type=float, default=1e-10, help="mixture-value tolerance")
    p.set_defaults(handler=_cmd_red_small_heavy)

    p = sub.add_parser(
        "run-ghz",
        help="three-spin rounds: free choice caps parity satisfaction at 75%%; "
        "an adversarial chooser hides every violation",
    )
    _add_common(p, rounds_default=100000)
    p.add_argument("--strategy", default="sampler", help="'sampler' or 'fixed:<code>'")
    p.add_argument(
        "--chooser", default="uniform",
        help="'uniform', 'adversarial', or 'fixed:<line 1..4>'",
    )
    p.add_argument("--spec", help="JSON experiment spec (overrides the flags)")
    p.set_defaults(handler=_cmd_run_ghz)

    p = sub.add_parser(
        "run-singlet",
        help="two-spin common-direction rounds: a hidden state fits at most two "
        "of L directions, so free choice violates >= (L-2)/L of rounds",
    )
    _add_common(p, rounds_default=100000)
    p.add_argument("--strategy", default="product", help="'product' or 'haar'")
    p.add_argument(
        "--chooser", default="uniform",
        help="'uniform', 'adversarial', or 'fixed:<index>'",
    )
    p.add_argument("--directions", type=int, default=10, help="size L of the direction menu")
    p.add_argument("--spec", help="JSON experiment spec (overrides the flags)")
    p.set_defaults(handler=_cmd_run_singlet)

    p = sub.add_parser(
        "qm-reference",
        help="genuine Born statistics for singlet pairs at the 120-degree "
        "directions: ~3/4 equal outcomes across pairs, never at equal settings",
    )
    _add_common(p, rounds_default=50000)
    p.set_defaults(handler=_cmd_qm_reference)

    p = sub.add_parser(
        "min-frequency",
        help="law-of-large-numbers failure: over four full-measure properties "
        "with empty intersection, some frequency is always <= 0.75",
    )
    _add_common(p, rounds_default=10000)
    p.add_argument("--input", help="CSV assignment sequence (default: random)")
    p.set_defaults(handler=_cmd_min_frequency)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (BellkitError, ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"bellkit: error: {exc}", file=sys.stderr)
        return _EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
