"""Subtrees, first-point retractions and open regions used by test functions."""

from __future__ import annotations

from dataclasses import dataclass

from mobiuslab.errors import SpaceMismatchError
from mobiuslab.topology.graph import POINT_TOL


@dataclass(frozen=True)
class Subtree:
    """A closed connected union of whole edges (or a single vertex)."""

    space: object
    edges: frozenset
    vertices: frozenset

    @classmethod
    def from_edges(cls, space, edges):
        edges = frozenset(int(e) for e in edges)
        verts = set()
        for e in edges:
            u, v, _ = space.edges[e]
            verts.update((u, v))
        sub = cls(space, edges, frozenset(verts))
        sub.validate()
        return sub

    @classmethod
    def from_vertex(cls, space, v):
        sub = cls(space, frozenset(), frozenset({int(v)}))
        sub.validate()
        return sub

    def validate(self):
        if not self.vertices:
            raise ValueError("subtree is empty")
        adj = {v: [] for v in self.vertices}
        for e in self.edges:
            u, v, _ = self.space.edges[e]
            adj[u].append(v)
            adj[v].append(u)
        start = next(iter(self.vertices))
        seen = {start}
        todo = [start]
        while todo:
            v = todo.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        if seen != set(self.vertices):
            raise ValueError("subtree is disconnected")

    def contains(self, x):
        if x.vertex is not None:
            return x.vertex in self.vertices
        return x.edge in self.edges


def first_point(space, A, x):
    """The retraction ``r_A``: ``x`` itself on ``A``, else where the arc from ``x`` enters ``A``."""
    space.check(x)
    if A.space is not space:
        raise SpaceMismatchError("subtree belongs to another space")
    if not A.vertices:
        raise ValueError("subtree is empty")
    if A.contains(x):
        return x
    anchor = space.vertex_point(min(A.vertices))
    path = space.arc(x, anchor)
    for v in path.vertices:
        if v in A.vertices:
            return space.vertex_point(v)
    raise AssertionError("arc into the subtree never met it")


@dataclass(frozen=True)
class FreeArc:
    """The open arc ``{(edge, t) : lo < t < hi}``; contains no vertex, hence no branch point."""

    space: object
    edge: int
    lo: float
    hi: float

    def __post_init__(self):
        if not 0 <= self.edge < len(self.space.edges):
            raise ValueError(f"no edge {self.edge}")
        if not 0.0 <= self.lo < self.hi <= 1.0:
            raise ValueError(f"free arc needs 0 <= lo < hi <= 1, got ({self.lo}, {self.hi})")

    @property
    def kind(self):
        return "free_arc"

    def boundary(self):
        return (self.space.point(self.edge, self.lo), self.space.point(self.edge, self.hi))

    def locate(self, x, tol=POINT_TOL):
        """'inside', 'boundary' or 'outside' for the closure test."""
        L = self.space.edges[self.edge][2]
        if x.vertex is not None:
            for b in self.boundary():
                if b.vertex == x.vertex:
                    return "boundary"
            return "outside"
        if x.edge != self.edge:
            return "outside"
        if abs(x.t - self.lo) * L <= tol or abs(x.t - self.hi) * L <= tol:
            return "boundary"
        if self.lo < x.t < self.hi:
            return "inside"
        return "outside"

    def describe(self):
        return f"arc(e{self.edge},{self.lo!r},{self.hi!r})"


@dataclass(frozen=True)
class ComponentRegion:
    """The component of ``X \\ {cut}`` that contains ``toward``."""

    space: object
    cut: object
    toward: object

    def __post_init__(self):
        self.space.check(self.cut, self.toward)
        if self.space.same_point(self.cut, self.toward):
            raise ValueError("toward must differ from the cut point")
        if self.space.kind != "tree":
            raise ValueError("complement components are only supported on trees")

    @property
    def kind(self):
        return "component"

    def boundary(self):
        return (self.cut,)

    def locate(self, x, tol=POINT_TOL):
        if self.space.distance(x, self.cut) <= tol:
            return "boundary"
        path = self.space.arc(x, self.toward)
        return "outside" if path.contains(self.cut) else "inside"

    def describe(self):
        return f"component(cut={self.cut!r},toward={self.toward!r})"
