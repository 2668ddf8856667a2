"""Finite undirected simple graphs: topology queries, generators and file I/O.

Vertices are 1-based contiguous integers; bonds are stored canonically as
sorted (min, max) pairs so that serialization round-trips bit-exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "Graph", "ComponentLabeling", "cycle_rank", "connected_components",
    "bipartition", "chromatic_number", "generate", "graph_to_text",
    "graph_from_text", "graph_to_json", "graph_from_json",
]


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices 1..vertex_count."""

    vertex_count: int
    bonds: tuple = field(default=())

    def __post_init__(self):
        if self.vertex_count < 1:
            raise ValueError("vertex_count must be positive")
        canon = []
        seen = set()
        for (i, j) in self.bonds:
            if i == j:
                raise ValueError("self-loop at vertex %d" % i)
            if not (1 <= i <= self.vertex_count and 1 <= j <= self.vertex_count):
                raise ValueError("bond (%d,%d) out of range" % (i, j))
            b = (i, j) if i < j else (j, i)
            if b in seen:
                raise ValueError("duplicate bond %s" % (b,))
            seen.add(b)
            canon.append(b)
        object.__setattr__(self, "bonds", tuple(sorted(canon)))

    @property
    def bond_count(self):
        return len(self.bonds)

    def adjacency(self):
        """Adjacency matrix C with C[i,j] = 1 iff i ~ j (0-based array)."""
        C = np.zeros((self.vertex_count, self.vertex_count), dtype=np.int64)
        for (i, j) in self.bonds:
            C[i - 1, j - 1] = 1
            C[j - 1, i - 1] = 1
        return C

    def degrees(self):
        d = np.zeros(self.vertex_count, dtype=np.int64)
        for (i, j) in self.bonds:
            d[i - 1] += 1
            d[j - 1] += 1
        return d

    def neighbors(self):
        """Adjacency lists, 0-based."""
        adj = [[] for _ in range(self.vertex_count)]
        for (i, j) in self.bonds:
            adj[i - 1].append(j - 1)
            adj[j - 1].append(i - 1)
        return adj

    def neighbor_masks(self):
        """Per-vertex neighbor bitmask (bit v set iff vertex v+1 adjacent)."""
        masks = [0] * self.vertex_count
        for (i, j) in self.bonds:
            masks[i - 1] |= 1 << (j - 1)
            masks[j - 1] |= 1 << (i - 1)
        return masks

    def canonical_key(self):
        return (self.vertex_count, self.bonds)


@dataclass(frozen=True)
class ComponentLabeling:
    """Vertex -> component id (0-based labels, one per vertex)."""

    labels: tuple
    component_count: int


def connected_components(g: Graph) -> ComponentLabeling:
    labels = [-1] * g.vertex_count
    adj = g.neighbors()
    comp = 0
    for start in range(g.vertex_count):
        if labels[start] >= 0:
            continue
        stack = [start]
        labels[start] = comp
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if labels[w] < 0:
                    labels[w] = comp
                    stack.append(w)
        comp += 1
    return ComponentLabeling(tuple(labels), comp)


def cycle_rank(g: Graph) -> int:
    """Number of independent cycles, B - V + Co. Zero exactly on forests."""
    return g.bond_count - g.vertex_count + connected_components(g).component_count


def bipartition(g: Graph):
    """A proper 2-coloring as a tuple of 0/1, or None if an odd cycle exists."""
    color = [-1] * g.vertex_count
    adj = g.neighbors()
    for start in range(g.vertex_count):
        if color[start] >= 0:
            continue
        color[start] = 0
        stack = [start]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if color[w] < 0:
                    color[w] = 1 - color[u]
                    stack.append(w)
                elif color[w] == color[u]:
                    return None
    return tuple(color)


def chromatic_number(g: Graph, exact_limit: int = 12):
    """Chromatic number with an exactness flag.

    Exact (branch and bound over color assignments) for vertex counts up to
    exact_limit; beyond that returns 2 for bipartite graphs and a greedy
    upper bound otherwise, flagged inexact.
    """
    if g.bond_count == 0:
        return 1, True
    if bipartition(g) is not None:
        return 2, True
    if g.vertex_count > exact_limit:
        return _greedy_coloring_bound(g), False

    adj = g.neighbors()
    order = sorted(range(g.vertex_count), key=lambda v: -len(adj[v]))

    def colorable(k):
        colors = [-1] * g.vertex_count

        def place(t):
            if t == len(order):
                return True
            v = order[t]
            used = {colors[w] for w in adj[v] if colors[w] >= 0}
            # symmetry breaking: never open more than one new color
            cap = min(k, (max([colors[order[s]] for s in range(t)], default=-1) + 2))
            for col in range(cap):
                if col not in used:
                    colors[v] = col
                    if place(t + 1):
                        return True
                    colors[v] = -1
            return False

        return place(0)

    for k in range(3, g.vertex_count + 1):
        if colorable(k):
            return k, True
    return g.vertex_count, True


def _greedy_coloring_bound(g: Graph) -> int:
    adj = g.neighbors()
    order = sorted(range(g.vertex_count), key=lambda v: -len(adj[v]))
    colors = {}
    for v in order:
        used = {colors[w] for w in adj[v] if w in colors}
        col = 0
        while col in used:
            col += 1
        colors[v] = col
    return max(colors.values()) + 1


# ---------------------------------------------------------------------------
# generators

def generate(model, *, vertices=None, degree=None, prob=None, side=None,
             seed=None) -> Graph:
    """Deterministic graph generator.

    Models: path, cycle, complete, random_tree, gnp, random_regular,
    periodic_grid. Identical (model, params, seed) give identical bond sets.
    """
    if model == "path":
        _need(vertices is not None and vertices >= 1, "path needs vertices >= 1")
        return Graph(vertices, tuple((i, i + 1) for i in range(1, vertices)))
    if model == "cycle":
        _need(vertices is not None and vertices >= 3, "cycle needs vertices >= 3")
        bonds = [(i, i + 1) for i in range(1, vertices)] + [(1, vertices)]
        return Graph(vertices, tuple(bonds))
    if model == "complete":
        _need(vertices is not None and vertices >= 1, "complete needs vertices >= 1")
        bonds = [(i, j) for i in range(1, vertices + 1) for j in range(i + 1, vertices + 1)]
        return Graph(vertices, tuple(bonds))
    if model == "random_tree":
        _need(vertices is not None and vertices >= 1, "random_tree needs vertices >= 1")
        return _random_tree(vertices, np.random.default_rng(seed))
    if model == "gnp":
        _need(vertices is not None and vertices >= 1, "gnp needs vertices >= 1")
        _need(prob is not None and 0.0 <= prob <= 1.0, "gnp needs prob in [0,1]")
        rng = np.random.default_rng(seed)
        bonds = [(i, j) for i in range(1, vertices + 1) for j in range(i + 1, vertices + 1)
                 if rng.random() < prob]
        return Graph(vertices, tuple(bonds))
    if model == "random_regular":
        _need(vertices is not None and degree is not None, "random_regular needs vertices, degree")
        _need(0 <= degree < vertices, "need 0 <= degree < vertices")
        _need((degree * vertices) % 2 == 0,
              "infeasible: degree*vertices must be even (got %d*%d)" % (degree, vertices))
        return _random_regular(vertices, degree, np.random.default_rng(seed))
    if model == "periodic_grid":
        _need(side is not None and side >= 3, "periodic_grid needs side >= 3")
        return _periodic_grid(side)
    raise ValueError("unknown model %r" % model)


def _need(cond, msg):
    if not cond:
        raise ValueError(msg)


def _random_tree(n, rng) -> Graph:
    """Uniform labeled tree via a Pruefer sequence."""
    if n == 1:
        return Graph(1, ())
    if n == 2:
        return Graph(2, ((1, 2),))
    seq = [int(rng.integers(1, n + 1)) for _ in range(n - 2)]
    degree = [1] * (n + 1)
    for v in seq:
        degree[v] += 1
    bonds = []
    import heapq
    leaves = [v for v in range(1, n + 1) if degree[v] == 1]
    heapq.heapify(leaves)
    for v in seq:
        leaf = heapq.heappop(leaves)
        bonds.append((leaf, v))
        degree[v] -= 1
        if degree[v] == 1:
            heapq.heappush(leaves, v)
    u = heapq.heappop(leaves)
    w = heapq.heappop(leaves)
    bonds.append((u, w))
    return Graph(n, tuple(bonds))


def _random_regular(n, d, rng, max_tries=200) -> Graph:
    """Pairing (configuration) model with rejection of loops and multi-bonds."""
    if d == 0:
        return Graph(n, ())
    stubs = np.repeat(np.arange(1, n + 1), d)
    for _ in range(max_tries):
        perm = rng.permutation(stubs)
        bonds = set()
        ok = True
        for t in range(0, len(perm), 2):
            i, j = int(perm[t]), int(perm[t + 1])
            if i == j:
                ok = False
                break
            b = (i, j) if i < j else (j, i)
            if b in bonds:
                ok = False
                break
            bonds.add(b)
        if ok:
            return Graph(n, tuple(sorted(bonds)))
    raise ValueError("pairing model failed after %d tries (n=%d, d=%d)" % (max_tries, n, d))


def _periodic_grid(side) -> Graph:
    """side x side torus; every vertex has degree 4 and B = 2*V."""
    def vid(r, col):
        return r * side + col + 1

    bonds = set()
    for r in range(side):
        for col in range(side):
            v = vid(r, col)
            bonds.add(tuple(sorted((v, vid(r, (col + 1) % side)))))
            bonds.add(tuple(sorted((v, vid((r + 1) % side, col)))))
    return Graph(side * side, tuple(sorted(bonds)))


# ---------------------------------------------------------------------------
# file formats

def graph_to_text(g: Graph) -> str:
    lines = ["V %d" % g.vertex_count]
    lines += ["E %d %d" % b for b in g.bonds]
    return "\n".join(lines) + "\n"


def graph_from_text(text: str) -> Graph:
    v = None
    bonds = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "V":
            v = int(parts[1])
        elif parts[0] == "E":
            bonds.append((int(parts[1]), int(parts[2])))
        elif parts[0] in ("L", "BC"):
            continue  # metric extension lines, handled elsewhere
        else:
            raise ValueError("unrecognized line: %r" % line)
    if v is None:
        raise ValueError("missing V line")
    return Graph(v, tuple(bonds))


def graph_to_json(g: Graph) -> str:
    return json.dumps({"vertex_count": g.vertex_count,
                       "bonds": [list(b) for b in g.bonds]})


def graph_from_json(text: str) -> Graph:
    obj = json.loads(text)
    return Graph(obj["vertex_count"], tuple(tuple(b) for b in obj["bonds"]))
