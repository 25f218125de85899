"""Build catalog systems from a descriptor tag and a parameter map."""

from __future__ import annotations

from mobiuslab.systems import catalog
from mobiuslab.topology.graph import graph_from_dict, interval, star


def _space(params, default):
    doc = params.get("space")
    if doc is None:
        return default()
    if doc == "star3":
        return star(3)
    if doc == "interval":
        return interval()
    return graph_from_dict(doc)


def _point(space, spec):
    if isinstance(spec, dict):
        if "vertex" in spec:
            return space.vertex_point(spec["vertex"])
        return space.point(spec["edge"], spec["t"])
    edge, t = spec
    return space.point(edge, t)


def _rotation(p):
    theta = p.get("theta", "golden")
    if theta == "golden":
        theta = (5 ** 0.5 - 1) / 2
    return catalog.make_rotation(float(theta))


def _periodic(p):
    space = _space(p, interval)
    return catalog.make_periodic(space, [_point(space, q) for q in p["points"]])


def _constant(p):
    space = _space(p, interval)
    return catalog.make_constant(space, _point(space, p.get("target", {"vertex": 0})))


def _monotone(p):
    space = _space(p, lambda: star(3))
    factor = float(p.get("contraction", 1.0))
    motion = None if factor == 1.0 else (lambda u, c=factor: c * u)
    return catalog.make_monotone_dendrite(space, branch_perm=p.get("perm"), arc_motion=motion, center=p.get("center", 0))


def _contracting(p):
    space = _space(p, lambda: star(3))
    o = _point(space, p.get("o", {"vertex": 0}))
    return catalog.make_contracting_dendrite(space, o, p.get("rate", 0.5))


BUILDERS = {
    "constant": _constant,
    "periodic": _periodic,
    "rotation": _rotation,
    "interval": lambda p: catalog.make_interval_map(p["knots_x"], p["knots_y"]),
    "tent": lambda p: catalog.make_tent(p.get("s", 2.0)),
    "odometer": lambda p: catalog.make_odometer(p["primes"], p.get("decay", 0.5)),
    "solenoid": lambda p: catalog.make_solenoid(p["levels"], p.get("gap", 1.0 / 3.0)),
    "monotone-dendrite": _monotone,
    "contracting-dendrite": _contracting,
    "nested": lambda p: catalog.make_nested_decomposition(p["n"], p.get("decay", 0.5)),
}

KNOWN_TAGS = tuple(sorted(BUILDERS))


class UnknownSystemError(ValueError):
    pass


def build_system(tag, params=None):
    """Instantiate a catalog system; unknown tags raise with the list of known ones."""
    try:
        builder = BUILDERS[tag]
    except KeyError:
        raise UnknownSystemError(f"unknown system tag {tag!r}; known tags: {', '.join(KNOWN_TAGS)}") from None
    return builder(dict(params or {}))


def parse_point(space, spec):
    return _point(space, spec)
