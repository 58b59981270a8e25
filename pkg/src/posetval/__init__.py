"""Exact dyadic valuations on finite posets.

Order and way-below decisions via max-flow transport, representation of
probability valuations as monotone maps from binary-tree levels, quantile
adjunctions on chains, weak-convergence checks, and unit-interval samplers
whose laws are exact by counting.
"""

from . import errors
from .cantor import (Word, embed, level, project, pushforward_counting,
                     unit_to_word, word_to_unit)
from .chain import (Cdf, QuantileMap, cdf, lower_adjoint,
                    pushforward_lebesgue, quantile_leq)
from .dyadic import ONE, ZERO, Dyadic, parse_dyadic
from .flow import Flow, FlowNetwork, max_flow, min_cut
from .pipeline import (SkorohodWitness, SubprobabilityWitness, skorohod,
                       skorohod_sequence, skorohod_subprobability)
from .poset import Poset, UpperSet, format_poset, parse_poset
from .skorohod import (ApproximationSchedule, Layer, RepresentationMap,
                       build_schedule, convergence_check, format_map,
                       lift_step, parse_map, represent, represent_sequence,
                       represent_subprobability, sample)
from .valuation import (PosetMap, SimpleValuation, TransportPlan, add, delta,
                        format_valuation, integrate_monotone, leq, leq_oracle,
                        leq_witness, normalize, parse_valuation,
                        portmanteau_check, pushforward, scale, transport_plan,
                        way_below)

__all__ = [
    "Dyadic", "ZERO", "ONE", "parse_dyadic",
    "Poset", "UpperSet", "parse_poset", "format_poset",
    "FlowNetwork", "Flow", "max_flow", "min_cut",
    "SimpleValuation", "TransportPlan", "PosetMap", "delta", "scale", "add",
    "leq", "leq_oracle", "leq_witness", "transport_plan", "way_below",
    "integrate_monotone", "normalize", "pushforward", "portmanteau_check",
    "parse_valuation", "format_valuation",
    "Word", "level", "project", "embed", "pushforward_counting",
    "word_to_unit", "unit_to_word",
    "Cdf", "QuantileMap", "cdf", "lower_adjoint", "pushforward_lebesgue",
    "quantile_leq",
    "ApproximationSchedule", "Layer", "RepresentationMap", "build_schedule",
    "lift_step", "represent", "sample", "represent_sequence",
    "convergence_check", "represent_subprobability", "format_map",
    "parse_map",
    "SkorohodWitness", "SubprobabilityWitness", "skorohod",
    "skorohod_sequence", "skorohod_subprobability",
    "errors",
]
