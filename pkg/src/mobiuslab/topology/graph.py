"""Finite metric graphs and trees with points on edges.

A point is either a vertex or a pair ``(edge, t)`` with ``0 < t < 1``
measured from the edge's first endpoint; ``t`` of exactly 0 or 1 is always
normalized to the vertex form so that equality of points is decidable.
"""

from __future__ import annotations

import heapq
import itertools
import math
from collections import deque
from dataclasses import dataclass

from mobiuslab.errors import NonUniqueArcError, SpaceMismatchError

POINT_TOL = 1e-12

_uids = itertools.count(1)


@dataclass(frozen=True, slots=True)
class Point:
    space: int
    vertex: int | None = None
    edge: int | None = None
    t: float = 0.0

    @property
    def is_vertex(self):
        return self.vertex is not None

    def __repr__(self):
        if self.vertex is not None:
            return f"Point(v{self.vertex})"
        return f"Point(e{self.edge}, t={self.t!r})"


@dataclass(frozen=True)
class Arc:
    """An arc traversed from ``start`` to ``end``.

    ``segments`` are ``(edge, t_from, t_to)`` pieces in traversal order and
    ``vertices`` the vertices passed through (endpoints included when they
    are vertices).
    """

    start: Point
    end: Point
    segments: tuple
    seg_lengths: tuple
    vertices: tuple
    length: float
    space: "MetricGraph"

    @property
    def is_degenerate(self):
        return not self.segments and self.start == self.end

    def reversed(self):
        return Arc(
            start=self.end,
            end=self.start,
            segments=tuple((e, b, a) for e, a, b in reversed(self.segments)),
            seg_lengths=tuple(reversed(self.seg_lengths)),
            vertices=tuple(reversed(self.vertices)),
            length=self.length,
            space=self.space,
        )

    def edges(self):
        return tuple(e for e, _, _ in self.segments)

    def point_at(self, s):
        """The point at arclength ``s`` from ``start`` (clamped to the arc)."""
        if s <= 0 or not self.segments:
            return self.start
        if s >= self.length:
            return self.end
        for (e, a, b), ln in zip(self.segments, self.seg_lengths):
            if s <= ln:
                frac = s / ln if ln > 0 else 0.0
                return self.space.point(e, a + (b - a) * frac)
            s -= ln
        return self.end

    def contains(self, x, tol=POINT_TOL):
        """Whether ``x`` lies on the arc."""
        if x == self.start or x == self.end:
            return True
        if x.vertex is not None:
            return x.vertex in self.vertices
        for e, a, b in self.segments:
            if e == x.edge:
                lo, hi = min(a, b), max(a, b)
                if lo - tol <= x.t <= hi + tol:
                    return True
        return False


class MetricGraph:
    """A connected finite graph with positive edge lengths.

    Vertices are ``0 .. n_vertices - 1``.  Edges are ``(u, v, length)`` and
    are identified by their index, so parallel edges and loops are allowed.
    """

    kind = "graph"

    def __init__(self, n_vertices, edges, name=""):
        self.uid = next(_uids)
        self.name = name
        self.n_vertices = int(n_vertices)
        if self.n_vertices < 1:
            raise ValueError("a graph needs at least one vertex")
        self.edges = tuple((int(u), int(v), float(ln)) for u, v, ln in edges)
        self.adjacency = [[] for _ in range(self.n_vertices)]
        for i, (u, v, ln) in enumerate(self.edges):
            if not (0 <= u < self.n_vertices and 0 <= v < self.n_vertices):
                raise ValueError(f"edge {i} has an endpoint outside the vertex range")
            if not ln > 0 or not math.isfinite(ln):
                raise ValueError(f"edge {i} has non-positive length {ln}")
            self.adjacency[u].append((i, v))
            self.adjacency[v].append((i, u))
        if not self._connected():
            raise ValueError("graph is not connected")

    def __repr__(self):
        return f"{type(self).__name__}(V={self.n_vertices}, E={len(self.edges)})"

    def _connected(self):
        seen = {0}
        todo = [0]
        while todo:
            v = todo.pop()
            for _, w in self.adjacency[v]:
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        return len(seen) == self.n_vertices

    # points

    def point(self, edge, t):
        edge = int(edge)
        if not 0 <= edge < len(self.edges):
            raise ValueError(f"no edge {edge}")
        t = float(t)
        if not -POINT_TOL <= t <= 1 + POINT_TOL:
            raise ValueError(f"edge parameter {t} outside [0, 1]")
        u, v, _ = self.edges[edge]
        if t <= 0.0:
            return Point(self.uid, vertex=u)
        if t >= 1.0:
            return Point(self.uid, vertex=v)
        return Point(self.uid, edge=edge, t=t)

    def vertex_point(self, v):
        v = int(v)
        if not 0 <= v < self.n_vertices:
            raise ValueError(f"no vertex {v}")
        return Point(self.uid, vertex=v)

    def check(self, *points):
        for p in points:
            if p.space != self.uid:
                raise SpaceMismatchError(f"{p!r} does not belong to {self!r}")

    def edge_length(self, e):
        return self.edges[e][2]

    @property
    def total_length(self):
        return math.fsum(ln for _, _, ln in self.edges)

    @property
    def min_edge_length(self):
        return min(ln for _, _, ln in self.edges)

    def degree(self, v):
        return len(self.adjacency[v])

    def order(self, x):
        """Number of local arms at ``x``: 1 endpoint, 2 regular, >=3 branch point."""
        self.check(x)
        if x.vertex is None:
            return 2
        return self.degree(x.vertex)

    def endpoints(self):
        return [v for v in range(self.n_vertices) if self.degree(v) == 1]

    def branch_points(self):
        return [v for v in range(self.n_vertices) if self.degree(v) >= 3]

    def _exits(self, x):
        # (vertex, cost, segment) ways of leaving x to reach a vertex
        if x.vertex is not None:
            return [(x.vertex, 0.0, None)]
        u, v, ln = self.edges[x.edge]
        return [(u, x.t * ln, (x.edge, x.t, 0.0)), (v, (1.0 - x.t) * ln, (x.edge, x.t, 1.0))]

    def same_point(self, x, y, tol=POINT_TOL):
        return x == y or self.distance(x, y) <= tol

    # distances and arcs

    def distance(self, x, y):
        """Shortest-path distance (ties between routes do not affect the value)."""
        self.check(x, y)
        if x == y:
            return 0.0
        best = math.inf
        if x.vertex is None and x.edge == y.edge:
            best = abs(x.t - y.t) * self.edges[x.edge][2]
        targets = {}
        for v, c, _ in self._exits(y):
            targets[v] = min(targets.get(v, math.inf), c)
        dist = self._dijkstra([(v, c) for v, c, _ in self._exits(x)])
        for v, c in targets.items():
            best = min(best, dist.get(v, math.inf) + c)
        return best

    def _dijkstra(self, sources):
        dist = {}
        heap = [(c, v) for v, c in sources]
        heapq.heapify(heap)
        while heap:
            d, v = heapq.heappop(heap)
            if v in dist:
                continue
            dist[v] = d
            for e, w in sorted(self.adjacency[v]):
                if w not in dist:
                    heapq.heappush(heap, (d + self.edges[e][2], w))
        return dist

    def arc(self, x, y):
        """The unique arc from ``x`` to ``y``.

        Raises ``NonUniqueArcError`` when a cycle gives two or more arcs.
        """
        self.check(x, y)
        if x == y:
            return self._degenerate(x)
        paths = self._simple_arcs(x, y, limit=2)
        if len(paths) > 1:
            raise NonUniqueArcError(f"{x!r} and {y!r} are joined by several arcs", multiplicity=len(paths))
        return self._make_arc(x, y, paths[0])

    def _degenerate(self, x):
        verts = (x.vertex,) if x.vertex is not None else ()
        return Arc(x, x, (), (), verts, 0.0, self)

    def _simple_arcs(self, x, y, limit=None):
        # enumerate simple routes; each route is a list of (edge, t_from, t_to)
        out = []
        x_exits, y_exits = self._exits(x), self._exits(y)
        if x.vertex is None and y.vertex is None and x.edge == y.edge:
            out.append([(x.edge, x.t, y.t)])
            # any other route leaves x by the end away from y and comes back in by the other end
            away = 0 if x.t < y.t else 1
            x_exits = [x_exits[away]]
            y_exits = [y_exits[1 - away]]
        y_entry = {}
        for v, _, seg in y_exits:
            y_entry.setdefault(v, []).append(seg)
        x_edge = x.edge
        y_edge = y.edge

        def walk(v, seen, segs):
            if limit is not None and len(out) >= limit:
                return
            for seg in y_entry.get(v, ()):
                if seg is None:
                    out.append(list(segs))
                else:
                    e, t, end = seg
                    out.append(segs + [(e, end, t)])
                if limit is not None and len(out) >= limit:
                    return
            for e, w in sorted(self.adjacency[v]):
                if e == x_edge or e == y_edge or w in seen:
                    continue
                u0 = self.edges[e][0]
                if u0 == v and self.edges[e][1] == w:
                    seg = (e, 0.0, 1.0)
                else:
                    seg = (e, 1.0, 0.0)
                seen.add(w)
                walk(w, seen, segs + [seg])
                seen.discard(w)

        for v, _, seg in x_exits:
            start = [] if seg is None else [seg]
            walk(v, {v}, start)
        return out

    def _make_arc(self, x, y, segs):
        segs = tuple(segs)
        lengths = tuple(abs(b - a) * self.edges[e][2] for e, a, b in segs)
        verts = []
        if x.vertex is not None:
            verts.append(x.vertex)
        for e, a, b in segs:
            u, v, _ = self.edges[e]
            if b == 1.0:
                end = v
            elif b == 0.0:
                end = u
            else:
                continue
            if not verts or verts[-1] != end:
                verts.append(end)
        return Arc(x, y, segs, lengths, tuple(verts), math.fsum(lengths), self)

    def arc_multiplicity(self, x, y):
        self.check(x, y)
        if x == y:
            return 1
        return len(self._simple_arcs(x, y))

    # serialization

    def to_dict(self):
        return {
            "kind": self.kind,
            "name": self.name,
            "vertices": self.n_vertices,
            "edges": [[u, v, ln] for u, v, ln in self.edges],
        }


class MetricTree(MetricGraph):
    """A metric graph that is connected and acyclic (``|E| = |V| - 1``).

    Rooted at vertex 0 internally so that arcs come from parent pointers.
    """

    kind = "tree"

    def __init__(self, n_vertices, edges, name=""):
        super().__init__(n_vertices, edges, name=name)
        if len(self.edges) != self.n_vertices - 1:
            raise ValueError(f"not a tree: |E|={len(self.edges)} but |V|-1={self.n_vertices - 1}")
        n = self.n_vertices
        self.parent = [-1] * n
        self.parent_edge = [-1] * n
        self.hops = [0] * n
        self.root_dist = [0.0] * n
        order = [0]
        seen = [False] * n
        seen[0] = True
        q = deque([0])
        while q:
            v = q.popleft()
            for e, w in self.adjacency[v]:
                if not seen[w]:
                    seen[w] = True
                    self.parent[w] = v
                    self.parent_edge[w] = e
                    self.hops[w] = self.hops[v] + 1
                    self.root_dist[w] = self.root_dist[v] + self.edges[e][2]
                    order.append(w)
                    q.append(w)
        self.bfs_order = order

    def lca(self, a, b):
        while self.hops[a] > self.hops[b]:
            a = self.parent[a]
        while self.hops[b] > self.hops[a]:
            b = self.parent[b]
        while a != b:
            a = self.parent[a]
            b = self.parent[b]
        return a

    def vertex_distance(self, a, b):
        c = self.lca(a, b)
        return self.root_dist[a] + self.root_dist[b] - 2.0 * self.root_dist[c]

    def vertex_path(self, a, b):
        """Vertices and edges of the path ``a -> b``."""
        c = self.lca(a, b)
        up_v, up_e = [a], []
        while up_v[-1] != c:
            v = up_v[-1]
            up_e.append(self.parent_edge[v])
            up_v.append(self.parent[v])
        down_v, down_e = [b], []
        while down_v[-1] != c:
            v = down_v[-1]
            down_e.append(self.parent_edge[v])
            down_v.append(self.parent[v])
        verts = up_v + down_v[-2::-1]
        edges = up_e + down_e[::-1]
        return verts, edges

    def distance(self, x, y):
        self.check(x, y)
        if x == y:
            return 0.0
        if x.vertex is None and x.edge == y.edge:
            return abs(x.t - y.t) * self.edges[x.edge][2]
        best = math.inf
        for a, ca, _ in self._exits(x):
            for b, cb, _ in self._exits(y):
                best = min(best, ca + self.vertex_distance(a, b) + cb)
        return best

    def arc(self, x, y):
        self.check(x, y)
        if x == y:
            return self._degenerate(x)
        if x.vertex is None and x.edge == y.edge:
            return self._make_arc(x, y, [(x.edge, x.t, y.t)])
        best = None
        for a, ca, sa in self._exits(x):
            for b, cb, sb in self._exits(y):
                d = ca + self.vertex_distance(a, b) + cb
                if best is None or d < best[0]:
                    best = (d, a, sa, b, sb)
        _, a, sa, b, sb = best
        verts, edges = self.vertex_path(a, b)
        segs = [] if sa is None else [sa]
        for v, e in zip(verts, edges):
            segs.append((e, 0.0, 1.0) if self.edges[e][0] == v else (e, 1.0, 0.0))
        if sb is not None:
            e, t, end = sb
            segs.append((e, end, t))
        return self._make_arc(x, y, segs)

    def arc_multiplicity(self, x, y):
        self.check(x, y)
        return 1

    def diameter(self):
        """Largest vertex-to-vertex distance (attained at endpoints)."""
        def farthest(src):
            dist = self._dijkstra([(src, 0.0)])
            v = max(dist, key=lambda k: (dist[k], -k))
            return v, dist[v]

        a, _ = farthest(0)
        _, d = farthest(a)
        return d

    def continuity_delta(self, eps):
        """A ``delta`` in ``(0, eps)`` with ``d(x, y) < delta => diam([x, y]) < eps``.

        In a path-metric tree ``diam([x, y]) = d(x, y)``, so any ``delta <= eps``
        works; the scaled choice ``eps * min_edge / diameter`` is strictly
        below ``eps`` whenever the tree has two or more edges.
        """
        if eps <= 0:
            raise ValueError("eps must be positive")
        return eps * self.min_edge_length / self.diameter()


def star(n_branches=3, length=1.0):
    """Vertex 0 joined to ``n`` leaves by edges ``(0, i, length)``."""
    return MetricTree(n_branches + 1, [(0, i, length) for i in range(1, n_branches + 1)], name=f"star{n_branches}")


def interval(length=1.0):
    return MetricTree(2, [(0, 1, length)], name="interval")


def circle(n_arcs=2):
    """The unit circle as ``n`` arcs of length ``1/n`` oriented counterclockwise."""
    if n_arcs < 1:
        raise ValueError("need at least one arc")
    edges = [(i, (i + 1) % n_arcs, 1.0 / n_arcs) for i in range(n_arcs)]
    return MetricGraph(n_arcs, edges, name="circle")


def random_tree(n_vertices, rng, min_length=0.1, max_length=1.0):
    """A random recursive tree with uniform edge lengths."""
    edges = []
    for v in range(1, n_vertices):
        u = int(rng.integers(0, v))
        edges.append((u, v, float(rng.uniform(min_length, max_length))))
    return MetricTree(n_vertices, edges, name="random")


def random_point(space, rng):
    """A uniformly chosen edge and parameter (vertices are hit only by rounding)."""
    e = int(rng.integers(0, len(space.edges)))
    return space.point(e, float(rng.uniform(0.0, 1.0)))


def graph_from_dict(doc):
    kind = doc.get("kind", "graph")
    cls = MetricTree if kind == "tree" else MetricGraph
    if kind not in ("tree", "graph"):
        raise ValueError(f"unknown space kind {kind!r}")
    return cls(doc["vertices"], [tuple(e) for e in doc["edges"]], name=doc.get("name", ""))
