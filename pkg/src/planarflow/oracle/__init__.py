"""Max-flow oracles over the dual negative-cycle test."""

from planarflow.oracle.approx import ApproxOracle, build_approx, lambda_grid, query_approx
from planarflow.oracle.exact import exact_value
from planarflow.oracle.index import (
    OracleIndex,
    PairData,
    build_feasible,
    dynamic_frontier,
    prepare,
    update_capacity,
)
from planarflow.oracle.query import QueryScratch, query_feasible, report_cut, run_query, verify_cut
from planarflow.oracle.serialize import dumps_index, index_digest, load_index, loads_index, save_index
from planarflow.oracle.venkatesan import ShiftedWeights, dual_weights, st_path, venkatesan_shift

__all__ = [
    "ApproxOracle",
    "OracleIndex",
    "PairData",
    "QueryScratch",
    "ShiftedWeights",
    "build_approx",
    "build_feasible",
    "dual_weights",
    "dumps_index",
    "dynamic_frontier",
    "exact_value",
    "index_digest",
    "lambda_grid",
    "load_index",
    "loads_index",
    "prepare",
    "query_approx",
    "query_feasible",
    "report_cut",
    "run_query",
    "save_index",
    "st_path",
    "update_capacity",
    "venkatesan_shift",
    "verify_cut",
]
