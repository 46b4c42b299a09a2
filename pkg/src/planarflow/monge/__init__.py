"""Monge matrices, SMAWK, column minima and the Monge heap."""

from planarflow.monge.colmin import EnvelopeColMin
from planarflow.monge.heap import MongeHeap
from planarflow.monge.matrix import MongeMatrix, is_monge, split_until_monge
from planarflow.monge.smawk import smawk, smawk_minima
from planarflow.monge.views import MongeCP, MongeNN, MongeSource, monge_cp, monge_nn

__all__ = [
    "EnvelopeColMin",
    "MongeCP",
    "MongeHeap",
    "MongeMatrix",
    "MongeNN",
    "MongeSource",
    "is_monge",
    "monge_cp",
    "monge_nn",
    "smawk",
    "smawk_minima",
    "split_until_monge",
]
