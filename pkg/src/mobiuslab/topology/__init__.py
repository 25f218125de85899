"""Finite metric trees and graphs, dyadic addresses and dendrite models."""

from mobiuslab.topology.dendrite import (
    ArcDendrite,
    UniversalDendriteModel,
    build_universal_dendrite,
    space_from_dict,
)
from mobiuslab.topology.dyadic import ROOT, DyadicAddress, concat, dyadic_letters, parent
from mobiuslab.topology.graph import (
    POINT_TOL,
    Arc,
    MetricGraph,
    MetricTree,
    Point,
    circle,
    graph_from_dict,
    interval,
    random_point,
    random_tree,
    star,
)
from mobiuslab.topology.subsets import ComponentRegion, FreeArc, Subtree, first_point


def arc(space, x, y):
    return space.arc(x, y)


def distance(space, x, y):
    return space.distance(x, y)


def order(space, x):
    return space.order(x)


__all__ = [
    "POINT_TOL",
    "ROOT",
    "Arc",
    "ArcDendrite",
    "ComponentRegion",
    "DyadicAddress",
    "FreeArc",
    "MetricGraph",
    "MetricTree",
    "Point",
    "Subtree",
    "UniversalDendriteModel",
    "arc",
    "build_universal_dendrite",
    "circle",
    "concat",
    "distance",
    "dyadic_letters",
    "first_point",
    "graph_from_dict",
    "interval",
    "order",
    "parent",
    "random_point",
    "random_tree",
    "space_from_dict",
    "star",
]
