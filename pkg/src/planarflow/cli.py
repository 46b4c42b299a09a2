"""Command-line entry point.

Results go to stdout as single-line ``key=value`` records; logging goes to
stderr. Exit codes: 0 success, 1 bad input or I/O, 2 an infeasible or
negative-cycle outcome (its certificate is printed), 3 a failed internal
invariant.
"""

from __future__ import annotations

import argparse
import logging
import random
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from contextlib import ExitStack
from fractions import Fraction
from pathlib import Path
from typing import Callable, Sequence

from pydantic import BaseModel

from planarflow.brute import (
    brute_distances,
    brute_has_negative_cycle,
    brute_max_flow,
    brute_perfect_matching,
)
from planarflow.config import get_settings, override_settings
from planarflow.errors import InvariantViolation, NegativeCycle, NotBipartite, PlanarflowError
from planarflow.graphcore.embedding import PlanarEmbedding
from planarflow.graphcore.generate import gen_planar
from planarflow.graphcore.io import format_graph, read_graph, write_graph
from planarflow.graphcore.network import FlowNetwork
from planarflow.models import InfeasibleRouting, OracleMode
from planarflow.oracle import (
    build_approx,
    build_feasible,
    exact_value,
    index_digest,
    load_index,
    query_approx,
    query_feasible,
    report_cut,
    save_index,
)
from planarflow.oracle.index import OracleIndex
from planarflow.paths import cycle_weight
from planarflow.proximity.base import EdgeRef
from planarflow.psssp import (
    bipartite_planar_matching,
    dart_edges,
    get_negcycle_solver,
    price_or_cycle,
    route_demands,
    sssp,
)
from planarflow.schemas import (
    BenchRecord,
    CutRecord,
    CycleRecord,
    DistanceRecord,
    FlowRecord,
    GraphSummary,
    IndexSummary,
    MatchingRecord,
    QueryRecord,
    RoutingRecord,
    VerifyRecord,
    format_record,
)
from planarflow.weights import INF

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_OUTCOME = 2
EXIT_INVARIANT = 3


def _emit(record: BaseModel) -> None:
    print(format_record(record))


def _cost_weights(net: FlowNetwork) -> list[int | None]:
    """Dart costs; darts without capacity are not edges."""
    return [e.cost if e.capacity != 0 else None for e in net]


def _cycle_record(cycle: Sequence[EdgeRef]) -> CycleRecord:
    return CycleRecord(status="negative_cycle", weight=cycle_weight(cycle), edges=[e.key[0] for e in cycle])


def _summary(index: OracleIndex, out: str | None = None, recomputed: list[int] | None = None) -> IndexSummary:
    return IndexSummary(
        lam=index.lam,
        mode=index.mode.value,
        nodes=len(index.tree),
        depth=index.tree.depth,
        digest=index_digest(index),
        out=out,
        recomputed=recomputed,
    )


# -- subcommands -------------------------------------------------------------


def cmd_gen(args: argparse.Namespace) -> int:
    net, emb = gen_planar(
        args.seed, args.n, (1, args.cap_max), (-args.cost_max, args.cost_max), directed=args.directed
    )
    if args.out is None:
        sys.stdout.write(format_graph(net, emb))
        return EXIT_OK
    write_graph(args.out, net, emb)
    _emit(GraphSummary(n=net.n, m=net.m, faces=len(emb.faces), components=len(emb.components()),
                       seed=args.seed, out=str(args.out)))
    return EXIT_OK


def cmd_sssp(args: argparse.Namespace) -> int:
    net, emb = read_graph(args.graph)
    try:
        dist = sssp(emb, _cost_weights(net), args.source)
    except NegativeCycle as exc:
        _emit(_cycle_record(exc.cycle))
        return EXIT_OUTCOME
    values = [None if d == INF else int(d) for d in dist]
    _emit(DistanceRecord(source=args.source, reachable=sum(v is not None for v in values), dist=values))
    return EXIT_OK


def cmd_negcycle(args: argparse.Namespace) -> int:
    net, emb = read_graph(args.graph)
    outcome = get_negcycle_solver(args.method)(emb, _cost_weights(net))
    if outcome.cycle is not None:
        _emit(_cycle_record(outcome.cycle))
        return EXIT_OUTCOME
    _emit(CycleRecord(status="feasible"))
    return EXIT_OK


def cmd_maxflow(args: argparse.Namespace) -> int:
    net, emb = read_graph(args.graph)
    s, t = args.source, args.sink
    if args.exact:
        _emit(FlowRecord(s=s, t=t, method="exact", value=exact_value(net, emb, s, t)))
        return EXIT_OK
    if args.eps is not None:
        eps = Fraction(args.eps)
        oracle = build_approx(net, emb, eps)
        _emit(FlowRecord(s=s, t=t, method="approx", value=query_approx(oracle, s, t), eps=str(eps)))
        return EXIT_OK
    index = build_feasible(net, emb, args.lam)
    cut = report_cut(index, s, t)
    _emit(FlowRecord(s=s, t=t, method="lambda", lam=args.lam, feasible=cut is None))
    if cut is None:
        return EXIT_OK
    _emit(CutRecord(s=s, t=t, lam=args.lam, status="cut", edges=cut, capacity=sum(int(net[d].capacity) for d in cut)))
    return EXIT_OUTCOME


def cmd_oracle_build(args: argparse.Namespace) -> int:
    net, emb = read_graph(args.graph)
    mode = OracleMode.DYNAMIC if args.dynamic or args.r is not None else OracleMode.STATIC
    index = build_feasible(net, emb, args.lam, mode, args.r)
    save_index(index, args.out)
    _emit(_summary(index, out=str(args.out)))
    return EXIT_OK


def cmd_oracle_query(args: argparse.Namespace) -> int:
    index = load_index(args.index)
    feasible = query_feasible(index, args.source, args.sink)
    _emit(QueryRecord(s=args.source, t=args.sink, lam=index.lam, feasible=feasible))
    return EXIT_OK if feasible else EXIT_OUTCOME


def cmd_oracle_update(args: argparse.Namespace) -> int:
    index = load_index(args.index)
    touched = index.update_capacity(args.edge, args.capacity)
    out = args.out if args.out is not None else args.index
    save_index(index, out)
    _emit(_summary(index, out=str(out), recomputed=touched))
    return EXIT_OK


def cmd_oracle_cut(args: argparse.Namespace) -> int:
    index = load_index(args.index)
    s, t = args.source, args.sink
    cut = report_cut(index, s, t)
    if cut is None:
        _emit(CutRecord(s=s, t=t, lam=index.lam, status="feasible"))
        return EXIT_OK
    capacity = sum(int(index.net[d].capacity) for d in cut)
    _emit(CutRecord(s=s, t=t, lam=index.lam, status="cut", edges=cut, capacity=capacity))
    return EXIT_OUTCOME


def _parse_ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}") from None


def cmd_route(args: argparse.Namespace) -> int:
    net, emb = read_graph(args.graph)
    result = route_demands(net, emb, args.demands)
    if isinstance(result, InfeasibleRouting):
        _emit(RoutingRecord(status="infeasible", deficit=result.deficit, cut=result.cut))
        return EXIT_OUTCOME
    _emit(RoutingRecord(status="routed", flow_edges=len(result.flow)))
    return EXIT_OK


def cmd_match(args: argparse.Namespace) -> int:
    _, emb = read_graph(args.graph)
    matching = bipartite_planar_matching(emb)
    if matching is None:
        _emit(MatchingRecord(status="none"))
        return EXIT_OUTCOME
    _emit(MatchingRecord(status="perfect", edges=matching))
    return EXIT_OK


def _bench_one(seed: int, n: int, task: str) -> BenchRecord:
    net, emb = gen_planar(seed, n, (1, 10), (-10, 10), directed=task == "sssp")
    start = time.perf_counter()
    if task == "sssp":
        outcome = price_or_cycle(emb, _cost_weights(net))
        result = "cycle" if outcome.has_cycle else "price"
    else:
        result = str(exact_value(net, emb, 0, n - 1))
    return BenchRecord(seed=seed, n=n, task=task, seconds=time.perf_counter() - start, result=result)


def cmd_bench(args: argparse.Namespace) -> int:
    jobs = [(args.seed + i, n, task) for n in args.sizes for task in args.tasks for i in range(args.repeat)]
    with ThreadPoolExecutor(max_workers=args.threads) as pool:
        records = list(pool.map(lambda job: _bench_one(*job), jobs))
    for rec in records:
        _emit(rec)
    return EXIT_OK


def verify_graph(net: FlowNetwork, emb: PlanarEmbedding, *, lam: int, pairs: int, seed: int) -> VerifyRecord:
    """Compare every public operation on one graph against the reference oracles."""
    rng = random.Random(seed)
    failed: list[str] = []
    checks = 0

    def check(name: str, ok: Callable[[], bool]) -> None:
        nonlocal checks
        checks += 1
        try:
            good = ok()
        except PlanarflowError as exc:
            logger.warning("check %s raised %s", name, exc)
            good = False
        if not good:
            failed.append(name)

    weights = _cost_weights(net)
    edges = dart_edges(emb, weights)
    outcome = price_or_cycle(emb, weights)
    check("negcycle", lambda: outcome.has_cycle == brute_has_negative_cycle(range(emb.n), edges))
    if not outcome.has_cycle:
        source = rng.randrange(net.n)
        ours = sssp(emb, weights, source)
        ref = brute_distances(range(emb.n), edges, source)
        check("sssp", lambda: all(ours[v] == ref.get(v, INF) for v in range(emb.n)))

    index = build_feasible(net, emb, lam)
    dynamic = build_feasible(net, emb, lam, OracleMode.DYNAMIC)
    oracle = build_approx(net, emb, Fraction(1, 4))
    for _ in range(pairs):
        s, t = rng.sample(range(net.n), 2)
        truth = brute_max_flow(net, s, t)
        check(f"exact:{s}-{t}", lambda: exact_value(net, emb, s, t) == truth)
        check(f"query:{s}-{t}", lambda: query_feasible(index, s, t) == (truth >= lam))
        check(f"dynamic:{s}-{t}", lambda: query_feasible(dynamic, s, t) == (truth >= lam))
        check(f"cut:{s}-{t}", lambda: (report_cut(index, s, t) is None) == (truth >= lam))
        value = query_approx(oracle, s, t)
        check(f"approx:{s}-{t}", lambda: Fraction(3, 4) * truth <= value <= truth)

    demands = [0] * net.n
    a, b = rng.sample(range(net.n), 2)
    demands[a], demands[b] = -1, 1
    routed = route_demands(net, emb, demands)
    check("route", lambda: isinstance(routed, InfeasibleRouting) == (brute_max_flow(net, a, b) < 1))
    try:
        matching = bipartite_planar_matching(emb)
    except NotBipartite:
        pass
    else:
        check("match", lambda: (matching is not None) == brute_perfect_matching(emb))
    return VerifyRecord(checks=checks, failures=len(failed), ok=not failed, failed=failed)


def cmd_verify(args: argparse.Namespace) -> int:
    net, emb = read_graph(args.graph)
    record = verify_graph(net, emb, lam=args.lam, pairs=args.pairs, seed=args.seed)
    _emit(record)
    return EXIT_OK if record.ok else EXIT_INVARIANT


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG")
    common.add_argument("--trace", action="store_true", help="enable invariant checks and circulation traces")
    common.add_argument("--seed", type=int, default=0)

    graph = argparse.ArgumentParser(add_help=False)
    graph.add_argument("--graph", type=Path, required=True, help="graph file (planarflow-graph v1)")

    pair = argparse.ArgumentParser(add_help=False)
    pair.add_argument("-s", "--source", type=int, required=True)
    pair.add_argument("-t", "--sink", type=int, required=True)

    parser = argparse.ArgumentParser(prog="planarflow", description="Planar flows, cuts and shortest paths")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="generate a random planar network")
    p.add_argument("--n", type=int, default=30)
    p.add_argument("--cap-max", type=int, default=10)
    p.add_argument("--cost-max", type=int, default=10)
    p.add_argument("--directed", action="store_true")
    p.add_argument("--out", type=Path, default=None)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("sssp", parents=[common, graph], help="distances by dart cost")
    p.add_argument("--source", type=int, default=0)
    p.set_defaults(func=cmd_sssp)

    p = sub.add_parser("negcycle", parents=[common, graph], help="negative cycle or feasible price")
    p.add_argument("--method", choices=["planar", "circulation"], default="planar")
    p.set_defaults(func=cmd_negcycle)

    p = sub.add_parser("maxflow", parents=[common, graph, pair], help="max s,t-flow")
    how = p.add_mutually_exclusive_group(required=True)
    how.add_argument("--exact", action="store_true")
    how.add_argument("--lambda", dest="lam", type=int)
    how.add_argument("--approx", "--eps", dest="eps", type=str)
    p.set_defaults(func=cmd_maxflow)

    oracle = sub.add_parser("oracle", help="feasibility index files")
    osub = oracle.add_subparsers(dest="action", required=True)
    p = osub.add_parser("build", parents=[common, graph])
    p.add_argument("--lambda", dest="lam", type=int, required=True)
    p.add_argument("--dynamic", action="store_true")
    p.add_argument("--r", type=int, default=None)
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(func=cmd_oracle_build)
    p = osub.add_parser("query", parents=[common, pair])
    p.add_argument("--index", type=Path, required=True)
    p.set_defaults(func=cmd_oracle_query)
    p = osub.add_parser("update", parents=[common])
    p.add_argument("--index", type=Path, required=True)
    p.add_argument("--edge", type=int, required=True)
    p.add_argument("--capacity", type=int, required=True)
    p.add_argument("--out", type=Path, default=None)
    p.set_defaults(func=cmd_oracle_update)
    p = osub.add_parser("cut", parents=[common, pair])
    p.add_argument("--index", type=Path, required=True)
    p.set_defaults(func=cmd_oracle_cut)

    p = sub.add_parser("route", parents=[common, graph], help="route vertex demands")
    p.add_argument("--demands", type=_parse_ints, required=True, help="comma separated, one per vertex")
    p.set_defaults(func=cmd_route)

    p = sub.add_parser("match", parents=[common, graph], help="perfect matching of a bipartite plane graph")
    p.set_defaults(func=cmd_match)

    p = sub.add_parser("bench", parents=[common], help="time solvers on generated graphs")
    p.add_argument("--sizes", type=_parse_ints, default=[50, 100])
    p.add_argument("--tasks", type=lambda s: s.split(","), default=["sssp", "maxflow"])
    p.add_argument("--repeat", type=int, default=1)
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("verify", parents=[common, graph], help="check every operation against reference oracles")
    p.add_argument("--lambda", dest="lam", type=int, default=2)
    p.add_argument("--pairs", type=int, default=5)
    p.set_defaults(func=cmd_verify)
    return parser


def _configure_logging(verbose: int) -> None:
    level = get_settings().log_level
    if verbose == 1:
        level = "INFO"
    elif verbose >= 2:
        level = "DEBUG"
    logging.basicConfig(
        stream=sys.stderr,
        level=getattr(logging, level),
        format="%(asctime)s [%(levelname)s] %(name)s: %(message)s",
    )


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        _configure_logging(args.verbose)
    except ValueError as exc:
        print(f"planarflow: {exc}", file=sys.stderr)
        return EXIT_INPUT
    with ExitStack() as stack:
        if args.trace:
            stack.enter_context(override_settings(debug_asserts=True))
            logging.getLogger("planarflow.circulation").setLevel(logging.DEBUG)
        try:
            return args.func(args)
        except InvariantViolation as exc:
            logger.error("internal invariant failed: %s", exc)
            return EXIT_INVARIANT
        except (PlanarflowError, OSError, ValueError) as exc:
            print(f"planarflow: {exc}", file=sys.stderr)
            return EXIT_INPUT


def main() -> None:
    sys.exit(run())
