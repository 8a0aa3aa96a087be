"""
Subcommand handlers. Each returns (records, status) with status 0 ok/accept, 3 reject, 2 check breach.
"""
import argparse
import time
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from gowers_lab.ap_counter import (
    SetInstance,
    estimate_exact,
    estimate_quantum_t3,
    query_cost_report,
    u2_bounds,
)
from gowers_lab.data_models.models import Verdict
from gowers_lab.errors import ParameterError
from gowers_lab.gowers_circuit import run_shifted_with_state, run_ud, run_ud_sampled
from gowers_lab.group_core import GroupParams, GroupVector
from gowers_lab.harmonic import FunctionTable, gowers_norm_bruteforce
from gowers_lab.logger import logger
from gowers_lab.poly import Instance, parse_polynomial, random_polynomial
from gowers_lab.testers import (
    gap_from_delta,
    test_character_two_sided,
    test_degree_d_exact_vs_random,
    test_degree_d_far,
    test_linear,
)

CHECK_TOLERANCE = 1e-9
SHIFT_TOLERANCE = 1e-12
BENCH_DEFAULT_POLY = "x0"

Records = List[Dict[str, Any]]
Outcome = Tuple[Records, int]


def _params(args: argparse.Namespace) -> GroupParams:
    return GroupParams(args.p, args.n)


def _seeded(spec: str, label: str) -> List[str]:
    kind, _, rest = spec.partition(":")
    if not rest:
        raise ParameterError(f"{label} '{spec}' needs an explicit seed, e.g. {kind}:7")
    return rest.split(",")


def resolve_instance(args: argparse.Namespace, params: GroupParams, default: Optional[str] = None) -> Instance:
    """Exactly one of --poly, --table or --random (haar:SEED | poly:DEGREE,SEED); `default` is a fallback polynomial"""
    sources = [s for s in (args.poly, args.table, args.random) if s]
    if not sources and default is not None:
        return Instance.phase_poly(parse_polynomial(default, params))
    if len(sources) != 1:
        raise ParameterError("Give exactly one of --poly, --table or --random")
    if args.poly:
        return Instance.phase_poly(parse_polynomial(args.poly, params))
    if args.table:
        table = FunctionTable.load(args.table)
        if table.params != params:
            raise ParameterError(f"Table file is over F_{table.params.p}^{table.params.n}, not F_{params.p}^{params.n}")
        return Instance.custom(table)
    kind = args.random.partition(":")[0]
    values = _seeded(args.random, "Random instance")
    if kind == "haar" and len(values) == 1:
        return Instance.haar(params, int(values[0]))
    if kind == "poly" and len(values) == 2:
        return Instance.phase_poly(random_polynomial(params, int(values[0]), int(values[1])))
    raise ParameterError(f"Unknown random instance '{args.random}'; use haar:SEED or poly:DEGREE,SEED")


def resolve_table(args: argparse.Namespace, params: GroupParams, default: Optional[str] = None) -> FunctionTable:
    instance = resolve_instance(args, params, default)
    logger.info(f"Oracle instance {instance.describe()} over F_{params.p}^{params.n}")
    return instance.table


def resolve_set(args: argparse.Namespace, params: GroupParams) -> SetInstance:
    """--set random:DENSITY,SEED or a FunctionTable JSON file"""
    if args.set_spec.startswith("random"):
        values = _seeded(args.set_spec, "Random set")
        if len(values) != 2:
            raise ParameterError("Random sets are given as random:DENSITY,SEED")
        return SetInstance.random(params, float(values[0]), int(values[1]))
    instance = SetInstance.load(args.set_spec)
    if instance.params != params:
        raise ParameterError("Set file is over a different group")
    return instance


def parse_shifts(text: str, params: GroupParams) -> List[GroupVector]:
    """Comma-separated register values; each is a linear index or colon-separated coordinates"""
    shifts = []
    for item in text.split(","):
        item = item.strip()
        if ":" in item:
            shifts.append(params.vector([int(c) for c in item.split(":")]))
        else:
            shifts.append(params.element(int(item)))
    return shifts


def _breach(message: str) -> int:
    logger.error(f"Check failed: {message}")
    return 2


def cmd_norm(args: argparse.Namespace) -> Outcome:
    params = _params(args)
    instance = resolve_instance(args, params)
    f = instance.table
    d = args.d
    result = run_ud_sampled(f, d, args.m, args.seed) if args.m else run_ud(f, d)
    circuit = result.exact_expectation ** (1.0 / 2 ** d)
    brute = gowers_norm_bruteforce(f, d)
    record = {
        "command": "norm",
        "instance": instance.describe(),
        "d": d,
        "circuit_norm": circuit,
        "bruteforce_norm": brute,
        "difference": abs(circuit - brute),
        **result.report(),
    }
    status = 0
    if args.check and record["difference"] > CHECK_TOLERANCE:
        status = _breach(f"circuit and brute-force U^{d} norms differ by {record['difference']:.3e}")
    return [record], status


def _verdict_outcome(verdict: Verdict, args: argparse.Namespace, f: FunctionTable, order: int) -> Outcome:
    record = {
        "command": args.command,
        "kind": verdict.kind,
        "params": {"p": args.p, "n": args.n},
        "accept": verdict.accept,
        "p_hat": verdict.p_hat,
        "m": verdict.m_used,
        "seed": verdict.seed,
        "threshold": verdict.plan.threshold,
        "gap": verdict.plan.gap,
        "exact_probability": verdict.exact_probability,
        "total_oracle_queries": verdict.total_oracle_queries,
        "total_qfts": verdict.total_qfts,
    }
    if verdict.ground_truth is not None:
        record["ground_truth"] = verdict.ground_truth
    status = 0 if verdict.accept else 3
    if args.check:
        expected = gowers_norm_bruteforce(f, order) ** (2 ** (order + 1))
        if abs(expected - verdict.exact_probability) > CHECK_TOLERANCE:
            status = _breach("circuit zero probability disagrees with the brute-force norm")
        elif verdict.ground_truth is not None and verdict.ground_truth["far"] and verdict.accept:
            status = _breach("certified-far instance was accepted")
    return [record], status


def cmd_test_linear(args: argparse.Namespace) -> Outcome:
    f = resolve_table(args, _params(args))
    verdict = test_linear(f, args.eps, args.eta, args.seed, certify=args.certify)
    return _verdict_outcome(verdict, args, f, 2)


def cmd_test_poly(args: argparse.Namespace) -> Outcome:
    f = resolve_table(args, _params(args))
    if (args.gap is None) == (args.delta is None):
        raise ParameterError("Give exactly one of --gap or --delta")
    gap = args.gap if args.gap is not None else gap_from_delta(args.delta, args.d, args.exponent)
    verdict = test_degree_d_far(f, args.d, gap, args.eta, args.seed,
                                allow_any_regime=args.allow_any_regime,
                                certify_epsilon=args.eps if args.certify else None)
    return _verdict_outcome(verdict, args, f, args.d + 1)


def cmd_test_exact(args: argparse.Namespace) -> Outcome:
    f = resolve_table(args, _params(args))
    verdict = test_degree_d_exact_vs_random(f, args.d, args.eta, args.seed)
    return _verdict_outcome(verdict, args, f, args.d + 1)


def cmd_test_char(args: argparse.Namespace) -> Outcome:
    f = resolve_table(args, _params(args))
    verdict = test_character_two_sided(f, args.eps1, args.eps2, args.eta, args.seed, certify=args.certify)
    return _verdict_outcome(verdict, args, f, 2)


def cmd_count_3ap(args: argparse.Namespace) -> Outcome:
    params = _params(args)
    instance = resolve_set(args, params)
    if args.method == "exact":
        estimate = estimate_exact(instance)
    elif args.method == "quantum":
        mode = "sampled" if args.m else "exact_readout"
        estimate = estimate_quantum_t3(instance, mode=mode, m=args.m, seed=args.seed)
    else:
        estimate = u2_bounds(instance)
    records: Records = [{"command": "count-3ap", **estimate.model_dump(mode="json")}]
    if args.cost_eps is not None:
        records.append({"command": "count-3ap", "query_cost": query_cost_report(instance, args.cost_eps).model_dump(mode="json")})

    status = 0
    if args.check and args.method != "exact":
        exact = estimate_exact(instance)
        if args.method == "quantum" and not args.m and abs(estimate.count - exact.count) > 1e-6 * params.N ** 2:
            status = _breach(f"quantum count {estimate.count} differs from exact count {exact.count}")
        if args.method == "bounds" and estimate.t_interval and abs(exact.t_f) > estimate.t_interval[1] + CHECK_TOLERANCE:
            status = _breach("|T| exceeds the U^2 upper bound")
    return records, status


def cmd_noise_demo(args: argparse.Namespace) -> Outcome:
    params = _params(args)
    f = resolve_table(args, params)
    shifts = parse_shifts(args.shifts, params)
    result, state = run_shifted_with_state(f, args.d, shifts)
    expected = result.peak
    distribution = state.distribution()
    order = np.argsort(-distribution, kind="stable")[: args.top]
    peaks = []
    for index in order:
        registers, _ = state.layout.decompose(int(index))
        location = [list(v.coords) for v in registers]
        peaks.append({"location": location, "probability": float(distribution[index]),
                      "expected": location == expected})
    record = {"command": "noise-demo", "expected_peak": expected, "peaks": peaks, **result.report()}

    status = 0
    if args.check:
        unshifted = run_ud(f, args.d).zero_probability
        peak_probability = result.peak_probability or 0.0
        if abs(peak_probability - unshifted) > SHIFT_TOLERANCE:
            status = _breach("shifted peak probability differs from the unshifted zero probability")
        elif float(distribution.max()) > peak_probability + SHIFT_TOLERANCE:
            status = _breach("output distribution has a larger value away from the expected peak")
    return [record], status


def _parse_sweep(text: str) -> List[int]:
    name, _, span = text.partition("=")
    low, _, high = span.partition("..")
    if name != "d" or not low or not high:
        raise ParameterError(f"Sweep '{text}' must look like d=1..4")
    return list(range(int(low), int(high) + 1))


def cmd_bench(args: argparse.Namespace) -> Outcome:
    params = _params(args)
    f = resolve_table(args, params, default=BENCH_DEFAULT_POLY)
    rows: Records = []
    for d in _parse_sweep(args.sweep):
        start = time.perf_counter()
        result = run_ud(f, d)
        wall_ms = (time.perf_counter() - start) * 1000.0
        rows.append({"d": d, "amplitudes": result.amplitudes, "wall_ms": round(wall_ms, 3),
                     "queries": result.query_count, "qfts": result.qft_count})
    return rows, 0
