"""``graphburn`` command line.

Exit codes: 0 ok, 1 a verdict came back negative, 2 bad usage or input,
3 a search budget ran out.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .engine import (
    BurningSchedule,
    CoveringCertificate,
    covering_to_sequence,
    load_json,
    longest_path_lower_bound,
    sqrt_ceil,
    verify_covering,
    verify_sequence,
)
from .errors import (
    BudgetExceeded,
    BurningError,
    GraphError,
    InvalidInstance,
    NotOptimalSchedule,
    PartitionInvalid,
    StrategyError,
    StrategyInternalError,
    StructureViolation,
    Unsupported,
)
from .exact import SolverLimits, burning_number_exact
from .generators import (
    GenSpec,
    SplitMix64,
    generate,
    random_caterpillar,
    random_leafy_tree,
    random_p_caterpillar,
    random_tree,
    sidecar_text,
)
from .graph import read_graph, write_graph
from .recognition import classify_report, count_leaves, spine_decompose
from .reduction import (
    ReductionLayout,
    extract_partition,
    reduce_to_burning,
    solution_to_schedule,
    validate_instance,
    verify_partition,
)
from .strategies import METHODS, PROVEN, dispatch_strategy

EXIT_OK, EXIT_VERDICT, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

# negative answers about valid input, as opposed to malformed input
VERDICT_ERRORS = (PartitionInvalid, NotOptimalSchedule, StructureViolation, StrategyInternalError, Unsupported)

CLASSES = ("caterpillar", "2cat", "tree", "leafy")

CSV_COLUMNS = [
    "id", "class", "seed", "n", "l", "p", "leaves", "method", "steps_used",
    "sqrt_n", "bound", "verified", "within_bound", "lower_bound", "exact_b", "sandwich",
]


def _emit(args, payload: dict, text: str):
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def _write_json(path, obj):
    Path(path).write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def _limits(args) -> SolverLimits:
    return SolverLimits(args.node_budget, args.time_budget, getattr(args, "max_steps", None))


# -- subcommands --------------------------------------------------------------

def cmd_classify(args) -> int:
    report = classify_report(read_graph(args.graph))
    _emit(args, report, f"{report['class']} p={report['p']} l={report['l']} n={report['n']} leaves={report['leaves']}")
    return EXIT_OK


def cmd_solve(args) -> int:
    g = read_graph(args.graph)
    try:
        res = burning_number_exact(g, _limits(args))
    except BudgetExceeded as exc:
        payload = {"error": "budget exceeded", "lower_bound": exc.lower_bound, "upper_bound": exc.upper_bound, "nodes": exc.nodes}
        _emit(args, payload, f"budget exceeded: b >= {exc.lower_bound}" + (f", b <= {exc.upper_bound}" if exc.upper_bound else ""))
        return EXIT_BUDGET
    if args.schedule_out:
        _write_json(args.schedule_out, res.schedule.to_json())
    _emit(args, res.to_json(), f"b = {res.burning_number}")
    return EXIT_OK


def cmd_strategy(args) -> int:
    g = read_graph(args.graph)
    out = dispatch_strategy(g, args.method, _limits(args))
    if args.schedule_out:
        _write_json(args.schedule_out, out.schedule.to_json())
    if args.certificate_out:
        _write_json(args.certificate_out, out.certificate.to_json())
    verified = bool(verify_sequence(g, out.schedule))
    payload = out.to_json()
    payload.update({"n": g.n, "sqrt_n": sqrt_ceil(g.n), "verified": verified})
    _emit(args, payload, f"{out.method}: m = {out.steps_used} (ceil(sqrt(n)) = {sqrt_ceil(g.n)}, {out.status})")
    return EXIT_OK if verified else EXIT_VERDICT


def cmd_verify(args) -> int:
    g = read_graph(args.graph)
    if args.schedule:
        verdict = verify_sequence(g, BurningSchedule.from_json(load_json(args.schedule)))
    else:
        cert = CoveringCertificate.from_json(load_json(args.certificate))
        verdict = verify_covering(g, cert)
        if verdict and args.convert:
            _write_json(args.convert, covering_to_sequence(g, cert).to_json())
    _emit(args, verdict.to_json(), "valid" if verdict else f"invalid: {verdict.reason}")
    return EXIT_OK if verdict else EXIT_VERDICT


def _read_instance(path):
    obj = load_json(path)
    return validate_instance(obj["X"], obj["S"])


def _read_partition(path):
    obj = load_json(path)
    return obj["partition"] if isinstance(obj, dict) else obj


def cmd_reduce(args) -> int:
    if len(args.output) != 2:
        raise _Usage("reduce needs exactly two -o targets: graph file, then layout JSON")
    inst = _read_instance(args.instance)
    g, layout = reduce_to_burning(inst)
    write_graph(g, args.output[0])
    _write_json(args.output[1], layout.to_json())
    payload = {"n": g.n, "max_degree": g.max_degree(), "lower_bound": longest_path_lower_bound(g)}
    if args.partition:
        schedule = solution_to_schedule(inst, layout, _read_partition(args.partition))
        payload["schedule"] = schedule.to_json()
        payload["verified"] = bool(verify_sequence(g, schedule))
        if args.schedule_out:
            _write_json(args.schedule_out, schedule.to_json())
    _emit(args, payload, f"reduced graph: n = {g.n}, lower bound {payload['lower_bound']}")
    return EXIT_OK if payload.get("verified", True) else EXIT_VERDICT


def cmd_extract(args) -> int:
    g = read_graph(args.graph)
    layout = ReductionLayout.from_json(load_json(args.layout))
    schedule = BurningSchedule.from_json(load_json(args.schedule))
    partition = extract_partition(layout.instance, layout, schedule, g)
    payload = {"partition": [list(t) for t in partition], "steps": schedule.horizon, "optimal": True}
    _emit(args, payload, " ".join("{" + ",".join(map(str, t)) + "}" for t in partition) + f" ({schedule.horizon} steps, optimal)")
    return EXIT_OK


def cmd_verify_partition(args) -> int:
    inst = _read_instance(args.instance)
    ok = verify_partition(inst, _read_partition(args.partition))
    _emit(args, {"valid": ok}, "valid" if ok else "invalid")
    return EXIT_OK if ok else EXIT_VERDICT


def cmd_gen(args) -> int:
    spec = GenSpec(args.kind, args.seed, args.n, args.l, args.p, args.n_triples)
    made = generate(spec)
    if args.kind == "three_partition":
        inst, witness = made
        payload = {**inst.to_json(), "partition": [list(t) for t in witness], "spec": spec.to_json()}
        _write_json(args.output, payload)
        _emit(args, payload, f"instance with {len(inst.X)} elements, S = {inst.S}")
        return EXIT_OK
    write_graph(made, args.output)
    Path(str(args.output) + ".json").write_text(sidecar_text(spec, made), encoding="utf-8")
    _emit(args, {"n": made.n, "spec": spec.to_json()}, f"wrote {args.output} (n = {made.n})")
    return EXIT_OK


# -- check-conjecture ---------------------------------------------------------

@dataclass(frozen=True)
class _Job:
    idx: int
    cls: str
    seed: int
    n_min: int
    n_max: int
    exact_below: int
    node_budget: int
    time_budget: float
    timing: bool


def _make_instance(job: _Job):
    rng = SplitMix64(job.seed)
    if job.cls == "caterpillar":
        n = rng.between(job.n_min, job.n_max)
        l = rng.between(min(3, n), n)
        return random_caterpillar(n, l, rng.next_u64())
    if job.cls == "2cat":
        n = rng.between(max(5, job.n_min), max(5, job.n_max))
        return random_p_caterpillar(n, 2, rng.next_u64())
    if job.cls == "leafy":
        return random_leafy_tree(rng.next_u64())
    n = rng.between(job.n_min, job.n_max)
    return random_tree(n, rng.next_u64())


def run_job(job: _Job) -> dict:
    started = time.perf_counter()
    g = _make_instance(job)
    d = spine_decompose(g)
    out = dispatch_strategy(g, limits=SolverLimits(job.node_budget, job.time_budget))
    verified = bool(verify_sequence(g, out.schedule))
    root = sqrt_ceil(g.n)
    bound = root if out.status == PROVEN else out.bound_claimed
    lower = longest_path_lower_bound(g)
    row = {
        "id": job.idx, "class": job.cls, "seed": job.seed, "n": g.n, "l": d.l, "p": d.p,
        "leaves": count_leaves(g), "method": out.method, "steps_used": out.steps_used,
        "sqrt_n": root, "bound": bound, "verified": verified,
        "within_bound": out.steps_used <= bound, "lower_bound": lower, "exact_b": "", "sandwich": "",
    }
    if g.n < job.exact_below:
        try:
            b = burning_number_exact(g, SolverLimits(job.node_budget, job.time_budget)).burning_number
            row["exact_b"] = b
            row["sandwich"] = lower <= b <= out.steps_used <= bound
        except BudgetExceeded:
            row["exact_b"] = "budget"
    if job.timing:
        row["elapsed_s"] = f"{time.perf_counter() - started:.4f}"
    return row


def check_conjecture(cls, count, seed, n_min=1, n_max=100, exact_below=0, workers=1,
                     timing=False, node_budget=10**6, time_budget=30.0):
    """Rows for ``count`` generated instances, in id order."""
    stream = SplitMix64(seed)
    jobs = [
        _Job(i, cls, stream.next_u64(), n_min, n_max, exact_below, node_budget, time_budget, timing)
        for i in range(count)
    ]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(run_job, jobs, chunksize=8))
    return [run_job(j) for j in jobs]


def rows_to_csv(rows, timing=False) -> str:
    cols = CSV_COLUMNS + (["elapsed_s"] if timing else [])
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
    writer.writeheader()
    for r in rows:
        writer.writerow({k: r.get(k, "") for k in cols})
    return buf.getvalue()


def row_failed(r: dict) -> bool:
    return not r["verified"] or not r["within_bound"] or r["sandwich"] is False


def cmd_check_conjecture(args) -> int:
    rows = check_conjecture(
        args.cls, args.count, args.seed, args.n_min, args.n_max, args.exact_below,
        args.workers, args.timing, args.node_budget, args.time_budget,
    )
    text = rows_to_csv(rows, args.timing)
    if args.csv:
        Path(args.csv).write_text(text, encoding="utf-8", newline="")
    failures = [r["id"] for r in rows if row_failed(r)]
    summary = {
        "class": args.cls, "count": len(rows), "seed": args.seed,
        "violations": len(failures), "failed_ids": failures[:50],
        "methods": _tally(r["method"] for r in rows),
    }
    if args.json:
        print(json.dumps(summary, indent=2, sort_keys=True))
    else:
        if not args.csv:
            sys.stdout.write(text)
        print(f"{len(rows)} instances, {len(failures)} violations", file=sys.stderr if not args.csv else sys.stdout)
    return EXIT_VERDICT if failures else EXIT_OK


def _tally(items) -> dict:
    out = {}
    for x in items:
        out[x] = out.get(x, 0) + 1
    return dict(sorted(out.items()))


# -- parser -------------------------------------------------------------------

class _Usage(Exception):
    pass


def _add_budget(p, max_steps=False):
    p.add_argument("--node-budget", type=int, default=10**7)
    p.add_argument("--time-budget-s", "--time-budget", dest="time_budget", type=float, default=60.0)
    if max_steps:
        p.add_argument("--max-steps", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="graphburn", description="Graph burning toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.set_defaults(func=func)
        return p

    p = command("classify", cmd_classify, "path / spider / caterpillar / p-caterpillar")
    p.add_argument("graph")

    p = command("solve", cmd_solve, "exact burning number")
    p.add_argument("graph")
    p.add_argument("--schedule-out")
    _add_budget(p, max_steps=True)

    p = command("strategy", cmd_strategy, "constructive schedule for a tree")
    p.add_argument("graph")
    p.add_argument("--method", choices=METHODS, default="auto")
    p.add_argument("--schedule-out")
    p.add_argument("--certificate-out")
    _add_budget(p)

    p = command("verify", cmd_verify, "check a schedule or covering certificate")
    p.add_argument("graph")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--schedule")
    group.add_argument("--covering", "--certificate", dest="certificate", help="covering certificate JSON")
    p.add_argument("--convert", help="with --covering: write the equivalent schedule here")

    p = command("reduce", cmd_reduce, "3-partition instance to burning instance")
    p.add_argument("instance")
    p.add_argument("-o", "--output", action="append", default=[], help="graph file, then layout JSON")
    p.add_argument("--partition", help="witness partition JSON; emits the optimal schedule")
    p.add_argument("--schedule-out")

    p = command("extract", cmd_extract, "read a partition off an optimal schedule")
    p.add_argument("graph")
    p.add_argument("layout")
    p.add_argument("schedule")

    p = command("verify-partition", cmd_verify_partition, "check a 3-partition")
    p.add_argument("instance")
    p.add_argument("partition")

    p = command("gen", cmd_gen, "seeded instance generator")
    p.add_argument("kind", choices=("caterpillar", "p_caterpillar", "tree", "leafy", "three_partition"))
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--l", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--n-triples", type=int)
    p.add_argument("-o", "--output", required=True)

    p = command("check-conjecture", cmd_check_conjecture, "batch run with CSV report")
    p.add_argument("--class", dest="cls", choices=CLASSES, required=True)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--n-min", type=int, default=1)
    p.add_argument("--n-max", type=int, default=100)
    p.add_argument("--exact-below", type=int, default=0, help="also solve exactly when n is below this")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--timing", action="store_true", help="append an elapsed_s column")
    p.add_argument("--csv", help="write rows here instead of stdout")
    _add_budget(p)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except VERDICT_ERRORS as exc:
        print(f"failed: {exc}", file=sys.stderr)
        return EXIT_VERDICT
    except (_Usage, GraphError, InvalidInstance, OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (StrategyError, BurningError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERDICT


if __name__ == "__main__":
    sys.exit(main())
