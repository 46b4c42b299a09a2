"""Exact max-flow value by binary search over the dual feasibility test."""

from __future__ import annotations

import logging

from planarflow.graphcore.embedding import PlanarEmbedding
from planarflow.graphcore.network import FlowNetwork
from planarflow.oracle.approx import flow_bound
from planarflow.oracle.venkatesan import st_path, venkatesan_shift
from planarflow.psssp.solver import price_or_cycle
from planarflow.weights import INF

logger = logging.getLogger(__name__)


def exact_value(net: FlowNetwork, emb: PlanarEmbedding, s: int, t: int) -> int:
    """Max s,t-flow value; each probe is one planar price computation on the shifted dual."""
    if s == t:
        raise ValueError("source and sink must differ")
    path = st_path(emb, s, t)
    if path is None:
        return 0
    out = [e for e in net if e.tail == s and e.head != s]
    if any(e.capacity == INF for e in out):
        # finite cuts elsewhere still bound the value
        hi = flow_bound(net) * net.n
    else:
        hi = sum(int(e.capacity) for e in out)
    lo = 0
    probes = 0
    while lo < hi:
        mid = (lo + hi + 1) // 2
        probes += 1
        dual, weights = venkatesan_shift(net, emb, path, mid)
        if price_or_cycle(dual, weights).has_cycle:
            hi = mid - 1
        else:
            lo = mid
    logger.info("exact flow %d -> %d = %d after %d probes", s, t, lo, probes)
    return lo
