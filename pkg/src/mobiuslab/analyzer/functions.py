"""Bounded observables evaluated along orbits."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from mobiuslab.errors import SpaceMismatchError
from mobiuslab.topology.subsets import ComponentRegion, FreeArc


@dataclass(frozen=True)
class TestFunction:
    """A bounded function on a space; ``sup`` bounds ``|phi|`` everywhere."""

    __test__ = False  # not a pytest class

    kind: str
    fn: object = field(repr=False)
    sup: float
    description: str
    region: object = field(default=None, repr=False)

    def __call__(self, x):
        return self.fn(x)


def psi_U(space, U):
    """1 on ``U``, ``1/ord(x)`` on its boundary, 0 off the closure."""
    if not isinstance(U, (FreeArc, ComponentRegion)):
        raise ValueError("U must be an open free arc or a complement component")
    if U.space is not space:
        raise SpaceMismatchError("region belongs to another space")
    bnd = U.boundary()
    inv_order = {b: 1.0 / space.order(b) for b in bnd}

    def value(x):
        where = U.locate(x)
        if where == "inside":
            return 1.0
        if where == "outside":
            return 0.0
        if x in inv_order:
            return inv_order[x]
        # within tolerance of a boundary point: use the nearest one
        b = min(bnd, key=lambda p: space.distance(p, x))
        return inv_order[b]

    return TestFunction("psi_U", value, 1.0, f"psi[{U.describe()}]", region=U)


def constant_function(c):
    c = float(c)
    return TestFunction("constant", lambda x: c, abs(c), f"const({c!r})")


def coordinate_function(fn, sup, description):
    """A user-supplied continuous observable with a declared bound."""
    return TestFunction("coordinate", fn, float(sup), description)


def distance_to(space, base, scale=1.0, shift=0.0):
    """``scale * d(base, x) + shift``; Lipschitz with constant ``|scale|``."""
    space.check(base)
    if space.kind == "tree":
        reach = space.diameter()
    else:
        reach = space.total_length
    sup = abs(shift) + abs(scale) * reach
    return TestFunction(
        "coordinate",
        lambda x: scale * space.distance(base, x) + shift,
        sup,
        f"dist({base!r})*{scale!r}+{shift!r}",
    )


def circle_cosine(rotation):
    """``cos(2 pi s)`` in the circle coordinate of a rotation system."""
    coord = rotation.coordinate
    return TestFunction("coordinate", lambda x: math.cos(2.0 * math.pi * coord(x)), 1.0, "cos(2pi s)")


def interval_cosine(system):
    coord = system.coordinate
    return TestFunction("coordinate", lambda x: math.cos(math.pi * coord(x)), 1.0, "cos(pi t)")


def tabulated(values, default=0.0, description="table"):
    """Values looked up by exact point, ``default`` elsewhere."""
    values = dict(values)
    sup = max([abs(default)] + [abs(v) for v in values.values()])
    return TestFunction("tabulated", lambda x: values.get(x, default), sup, description)
