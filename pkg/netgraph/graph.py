import hashlib
from dataclasses import dataclass, field
from functools import cached_property

import networkx as nx
import numpy as np

from influence_blocking.exceptions import ParameterError


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable simple graph with per-node weights.

    ``out_adj[i]`` is the sorted tuple of out-neighbours of ``i``; for an
    undirected graph it is the (symmetric) neighbourhood.  ``origin[i]`` is
    the index of node ``i`` in the graph this one was induced from by
    ``block``; a freshly built graph has ``origin == range(n)``.
    """

    n: int
    directed: bool
    out_adj: tuple
    weights: np.ndarray
    labels: tuple
    origin: tuple = field(default=())

    @classmethod
    def from_edges(cls, n, edges, directed=False, weights=None, labels=None, origin=None):
        if n < 0:
            raise ParameterError(f'node count must be nonnegative, got {n}')
        adjacency = [set() for _ in range(n)]
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise ParameterError(f'edge ({u}, {v}) out of range for {n} nodes')
            if u == v:
                raise ParameterError(f'self-loop on node {u}')
            if v in adjacency[u]:
                raise ParameterError(f'parallel edge ({u}, {v})')
            adjacency[u].add(v)
            if not directed:
                adjacency[v].add(u)

        if weights is None:
            weights = np.ones(n)
        weights = np.array(weights, dtype=float)
        if weights.shape != (n,):
            raise ParameterError(f'expected {n} weights, got {weights.shape}')
        if not np.all(np.isfinite(weights)) or np.any(weights < 0):
            raise ParameterError('weights must be finite and nonnegative')
        weights.setflags(write=False)

        if labels is None:
            labels = [str(i) for i in range(n)]
        if len(labels) != n:
            raise ParameterError(f'expected {n} labels, got {len(labels)}')
        if origin is None:
            origin = range(n)

        return cls(
            n=n,
            directed=bool(directed),
            out_adj=tuple(tuple(sorted(nbrs)) for nbrs in adjacency),
            weights=weights,
            labels=tuple(str(label) for label in labels),
            origin=tuple(int(o) for o in origin),
        )

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.n == other.n
            and self.directed == other.directed
            and self.out_adj == other.out_adj
            and self.labels == other.labels
            and np.array_equal(self.weights, other.weights)
        )

    def __hash__(self):
        return hash(self.digest)

    def __repr__(self):
        kind = 'directed' if self.directed else 'undirected'
        return f'<Graph {kind} n={self.n} m={self.m}>'

    @cached_property
    def in_adj(self):
        if not self.directed:
            return self.out_adj
        incoming = [[] for _ in range(self.n)]
        for u, nbrs in enumerate(self.out_adj):
            for v in nbrs:
                incoming[v].append(u)
        return tuple(tuple(nbrs) for nbrs in incoming)

    @property
    def m(self):
        arcs = sum(len(nbrs) for nbrs in self.out_adj)
        return arcs if self.directed else arcs // 2

    def edges(self):
        """Edges as ``(u, v)`` pairs; undirected edges are listed once with ``u < v``."""
        return [
            (u, v)
            for u, nbrs in enumerate(self.out_adj)
            for v in nbrs
            if self.directed or u < v
        ]

    @cached_property
    def arcs(self):
        """All arcs as ``(src, dst)`` arrays; undirected edges count in both directions."""
        src = np.fromiter((u for u, nbrs in enumerate(self.out_adj) for _ in nbrs), dtype=np.int64)
        dst = np.fromiter((v for nbrs in self.out_adj for v in nbrs), dtype=np.int64)
        src.setflags(write=False)
        dst.setflags(write=False)
        return src, dst

    def out_degrees(self):
        return np.array([len(nbrs) for nbrs in self.out_adj], dtype=np.int64)

    def in_degrees(self):
        return np.array([len(nbrs) for nbrs in self.in_adj], dtype=np.int64)

    def check_node(self, i):
        if not 0 <= i < self.n:
            raise ParameterError(f'node {i} out of range for {self.n} nodes')
        return int(i)

    def closed_out(self, i):
        """``{i}`` together with the nodes ``i`` points to."""
        return (i,) + self.out_adj[i]

    def closed_in(self, i):
        """``{i}`` together with the nodes pointing to ``i``."""
        return (i,) + self.in_adj[i]

    @cached_property
    def local_index(self):
        """Map from ``origin`` indices back to local node indices."""
        return {o: i for i, o in enumerate(self.origin)}

    def induced(self, keep, keep_origin=True):
        keep = sorted({self.check_node(i) for i in keep})
        position = {old: new for new, old in enumerate(keep)}
        edges = [
            (position[u], position[v])
            for u, v in self.edges()
            if u in position and v in position
        ]
        return Graph.from_edges(
            len(keep),
            edges,
            directed=self.directed,
            weights=self.weights[keep] if keep else np.zeros(0),
            labels=[self.labels[i] for i in keep],
            origin=[self.origin[i] for i in keep] if keep_origin else None,
        )

    def remove_edges(self, edges):
        """Return a copy without ``edges``; undirected edges match either orientation."""
        drop = set()
        for u, v in edges:
            if v not in self.out_adj[self.check_node(u)]:
                raise ParameterError(f'edge ({u}, {v}) is not in the graph')
            drop.add((u, v) if self.directed else (min(u, v), max(u, v)))
        return Graph.from_edges(
            self.n,
            [e for e in self.edges() if e not in drop],
            directed=self.directed,
            weights=self.weights,
            labels=self.labels,
            origin=self.origin,
        )

    def with_weights(self, weights):
        return Graph.from_edges(
            self.n, self.edges(), directed=self.directed,
            weights=weights, labels=self.labels, origin=self.origin,
        )

    @cached_property
    def digest(self):
        h = hashlib.sha256()
        h.update(f'{self.n}:{int(self.directed)}:'.encode())
        src, dst = self.arcs
        h.update(src.tobytes())
        h.update(dst.tobytes())
        h.update(np.ascontiguousarray(self.weights).tobytes())
        h.update(np.asarray(self.origin, dtype=np.int64).tobytes())
        return h.hexdigest()

    def to_networkx(self):
        nx_graph = nx.DiGraph() if self.directed else nx.Graph()
        nx_graph.add_nodes_from(range(self.n))
        nx_graph.add_edges_from(self.edges())
        return nx_graph
