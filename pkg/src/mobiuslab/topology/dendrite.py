"""Dendrites glued from addressed arcs, including finite truncations of the
universal dendrite of order 3.

Every word ``w`` names an arc ``A_w = [a_w, b_w]``.  The root arc is
``[a_0, b_0]``; a child ``w`` is glued by ``a_w`` onto its parent arc at the
arclength fraction ``attach(w)`` in ``(0, 1]`` measured from the parent's
``a`` end (a fraction of 1 puts ``a_w`` on ``b_parent``).
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

from mobiuslab.errors import CapacityError
from mobiuslab.topology.dyadic import ROOT, DyadicAddress, dyadic_letters
from mobiuslab.topology.graph import MetricTree

DEFAULT_MAX_VERTICES = 1_000_000


@dataclass(frozen=True)
class ArcInfo:
    word: object
    a: int
    b: int
    length: float
    stops: tuple  # fractions along the arc where vertices sit, 0.0 first and 1.0 last
    edges: tuple  # edge ids between consecutive stops


class ArcDendrite:
    """A finite dendrite built from a prefix-closed set of words."""

    def __init__(self, words, root, length, attach, name="dendrite", max_vertices=DEFAULT_MAX_VERTICES):
        words = list(words)
        by_parent = {}
        for w in words:
            if w != root:
                by_parent.setdefault(_drop_last(w), []).append(w)
        self.root = root
        edges = []
        self.arcs = {}
        self._edge_owner = []  # edge -> (word, f0, f1)
        self._vertex_site = {}  # vertex -> (word, fraction) on the arc the vertex was created on
        a_of = {root: 0}
        self._vertex_site[0] = (root, 0.0)
        n_vertices = 1

        queue = deque([root])
        while queue:
            w = queue.popleft()
            if n_vertices > max_vertices:
                raise CapacityError(f"dendrite exceeds {max_vertices} vertices")
            a = a_of[w]
            kids = sorted(by_parent.get(w, ()), key=lambda c: (attach(c), c))
            b = n_vertices
            n_vertices += 1
            self._vertex_site[b] = (w, 1.0)
            stops = {0.0: a, 1.0: b}
            for c in kids:
                f = float(attach(c))
                if not 0.0 < f <= 1.0:
                    raise ValueError(f"attachment fraction {f} of {c!r} outside (0, 1]")
                if f not in stops:
                    stops[f] = n_vertices
                    self._vertex_site[n_vertices] = (w, f)
                    n_vertices += 1
                a_of[c] = stops[f]
            fr = sorted(stops)
            ln = float(length(w))
            if not ln > 0:
                raise ValueError(f"arc {w!r} has non-positive length")
            eids = []
            for f0, f1 in zip(fr, fr[1:]):
                eids.append(len(edges))
                edges.append((stops[f0], stops[f1], (f1 - f0) * ln))
                self._edge_owner.append((w, f0, f1))
            self.arcs[w] = ArcInfo(w, a, b, ln, tuple(fr), tuple(eids))
            queue.extend(kids)
        self.tree = MetricTree(n_vertices, edges, name=name)

    @property
    def words(self):
        return list(self.arcs)

    def depth_words(self, k):
        return [w for w in self.arcs if len(w) == k]

    def arc_length(self, w):
        return self.arcs[w].length

    def point_on_arc(self, w, s):
        """The point of ``A_w`` at arclength fraction ``s`` from ``a_w``."""
        info = self.arcs[w]
        s = float(s)
        if not 0.0 <= s <= 1.0:
            raise ValueError("fraction must be in [0, 1]")
        for i, (f0, f1) in enumerate(zip(info.stops, info.stops[1:])):
            if s <= f1 or i == len(info.edges) - 1:
                return self.tree.point(info.edges[i], (s - f0) / (f1 - f0))
        raise AssertionError

    def a_point(self, w):
        return self.tree.vertex_point(self.arcs[w].a)

    def b_point(self, w):
        return self.tree.vertex_point(self.arcs[w].b)

    def address_of(self, x):
        """``(w, s)`` locating ``x`` on the arc ``A_w`` it was created on."""
        self.tree.check(x)
        if x.vertex is not None:
            return self._vertex_site[x.vertex]
        w, f0, f1 = self._edge_owner[x.edge]
        return w, f0 + (f1 - f0) * x.t

    def arc_edges(self, w):
        return self.arcs[w].edges

    def subtree_words(self, w):
        """``w`` and all its descendants."""
        return [u for u in self.arcs if _is_prefix(w, u)]

    def to_dict(self):
        return {"kind": "arc_dendrite", "tree": self.tree.to_dict()}


def _drop_last(w):
    if isinstance(w, DyadicAddress):
        return DyadicAddress(w.letters[:-1])
    return w[:-1]


def _is_prefix(w, u):
    if isinstance(w, DyadicAddress):
        return u.letters[: len(w)] == w.letters
    return u[: len(w)] == w


class UniversalDendriteModel(ArcDendrite):
    """The truncation ``X^(m)`` of the order-3 universal dendrite.

    Letters are restricted to dyadic rationals with denominator at most
    ``max_denominator``; the arc ``A_alpha`` has length ``decay ** |alpha|``
    and is glued at fraction ``r_{k-1}`` (the last letter) of its parent.
    """

    def __init__(self, m=4, max_denominator=8, decay=0.5, max_vertices=DEFAULT_MAX_VERTICES):
        m = int(m)
        if m < 0:
            raise ValueError("depth m must be >= 0")
        if not 0.0 < decay < 1.0:
            raise ValueError("decay must lie in (0, 1)")
        letters = dyadic_letters(max_denominator)
        if m > 0 and not letters:
            raise ValueError("max_denominator must be >= 2 to have any letter")
        n_words = sum(len(letters) ** k for k in range(m + 1))
        if 2 * n_words + 1 > max_vertices:
            raise CapacityError(f"X^({m}) with {len(letters)} letters needs ~{2 * n_words + 1} vertices (budget {max_vertices})")
        words = [ROOT]
        layer = [ROOT]
        for _ in range(m):
            layer = [DyadicAddress(w.letters + (l,)) for w in layer for l in letters]
            words.extend(layer)
        self.m = m
        self.max_denominator = int(max_denominator)
        self.decay = float(decay)
        self.letters = tuple(DyadicAddress((l,)) for l in letters)
        super().__init__(
            words,
            ROOT,
            length=lambda w: decay ** len(w),
            attach=lambda w: w.last,
            name=f"X^({m})",
            max_vertices=max_vertices,
        )

    def expected_total_length(self):
        q = len(self.letters)
        return math.fsum((q ** k) * self.decay ** k for k in range(self.m + 1))

    def approximant(self, nu_prefix):
        """``b_{nu|k}``: the finite-depth stand-in for an endpoint of ``X^(inf)``."""
        return self.b_point(nu_prefix)

    def to_dict(self):
        return {"kind": "universal_dendrite", "m": self.m, "D": self.max_denominator, "lambda": self.decay}


def build_universal_dendrite(m=4, decay=0.5, max_denominator=8, max_vertices=DEFAULT_MAX_VERTICES):
    return UniversalDendriteModel(m=m, max_denominator=max_denominator, decay=decay, max_vertices=max_vertices)


def space_from_dict(doc):
    from mobiuslab.topology.graph import graph_from_dict

    kind = doc.get("kind")
    if kind == "universal_dendrite":
        return build_universal_dendrite(m=doc["m"], decay=doc["lambda"], max_denominator=doc["D"])
    if kind == "arc_dendrite":
        return graph_from_dict(doc["tree"])
    return graph_from_dict(doc)
