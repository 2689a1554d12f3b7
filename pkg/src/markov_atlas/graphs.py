"""Simple graphs: blocks, bridges, and series-parallel structure.

Vertex order is significant throughout the package: it fixes the bit
positions of labelings, so every derived graph (block, bridge, induced
subgraph) keeps its vertices in the parent's order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from .errors import NoSuchPoles, NotSeriesParallel, ParseError

Edge = Tuple[int, int]


def _norm_edge(i: int, j: int) -> Edge:
    return (i, j) if i < j else (j, i)


class Graph:
    """Immutable simple graph over an ordered vertex list."""

    __slots__ = ("vertices", "edges", "_adj")

    def __init__(self, vertices: Sequence[str], edges: Iterable[Edge]):
        self.vertices = tuple(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex labels")
        n = len(self.vertices)
        es = set()
        for i, j in edges:
            if i == j:
                raise ValueError(f"loop edge at vertex {i}")
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"edge ({i},{j}) out of range")
            es.add(_norm_edge(i, j))
        self.edges: FrozenSet[Edge] = frozenset(es)
        self._adj: Optional[Dict[int, Set[int]]] = None

    # -- basics --------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    def index(self, label: str) -> int:
        return self.vertices.index(label)

    def adj(self) -> Dict[int, Set[int]]:
        if self._adj is None:
            a: Dict[int, Set[int]] = {i: set() for i in range(self.n)}
            for i, j in self.edges:
                a[i].add(j)
                a[j].add(i)
            self._adj = a
        return self._adj

    def degree(self, i: int) -> int:
        return len(self.adj()[i])

    def has_edge(self, i: int, j: int) -> bool:
        return _norm_edge(i, j) in self.edges

    def with_edge(self, i: int, j: int) -> "Graph":
        return Graph(self.vertices, set(self.edges) | {_norm_edge(i, j)})

    def edge_labels(self) -> List[Tuple[str, str]]:
        return [(self.vertices[i], self.vertices[j])
                for i, j in sorted(self.edges)]

    def subgraph(self, vertex_idxs: Iterable[int],
                 edges: Optional[Iterable[Edge]] = None) -> "Graph":
        """Subgraph on the given vertices (parent order preserved).

        With `edges` omitted, takes all induced edges.  Edge indices are
        remapped to the new vertex list.
        """
        keep = sorted(set(vertex_idxs))
        pos = {v: k for k, v in enumerate(keep)}
        if edges is None:
            edges = [e for e in self.edges if e[0] in pos and e[1] in pos]
        sub_edges = [(pos[i], pos[j]) for i, j in edges]
        return Graph([self.vertices[v] for v in keep], sub_edges)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Graph) and self.vertices == other.vertices
                and self.edges == other.edges)

    def __hash__(self) -> int:
        return hash((self.vertices, self.edges))

    def __repr__(self) -> str:
        return f"Graph({list(self.vertices)}, {sorted(self.edges)})"

    # -- global structure ----------------------------------------------

    def connected_components(self) -> List[List[int]]:
        seen: Set[int] = set()
        comps = []
        adj = self.adj()
        for s in range(self.n):
            if s in seen:
                continue
            stack, comp = [s], []
            seen.add(s)
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in adj[v]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.connected_components()) <= 1

    def is_forest(self) -> bool:
        return self.m == self.n - len(self.connected_components())

    def is_cycle(self) -> bool:
        return (self.n >= 3 and self.m == self.n and self.is_connected()
                and all(self.degree(v) == 2 for v in range(self.n)))


def parse_graph(text: str) -> Graph:
    """Parse edge-list text: one edge per line, `#` starts a comment.

    Vertices are ordered by first appearance; duplicate edges collapse.
    """
    labels: List[str] = []
    index: Dict[str, int] = {}
    edges: List[Edge] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected two vertex labels, got {parts!r}",
                             lineno)
        a, b = parts
        if a == b:
            raise ParseError(f"loop edge at {a!r}", lineno)
        for lab in (a, b):
            if lab not in index:
                index[lab] = len(labels)
                labels.append(lab)
        edges.append((index[a], index[b]))
    return Graph(labels, edges)


# -- blocks and cut vertices ------------------------------------------

def _block_decomposition(g: Graph):
    """Hopcroft-Tarjan: returns (list of edge sets, set of cut vertices)."""
    import sys

    adj = g.adj()
    disc: Dict[int, int] = {}
    low: Dict[int, int] = {}
    block_list: List[List[Edge]] = []
    cuts: Set[int] = set()
    counter = [0]
    edge_stack: List[Edge] = []

    def dfs(u: int, parent: Optional[int]):
        disc[u] = low[u] = counter[0]
        counter[0] += 1
        children = 0
        skipped_parent = False
        for w in sorted(adj[u]):
            if w == parent and not skipped_parent:
                skipped_parent = True  # simple graph: one edge to parent
                continue
            if w not in disc:
                edge_stack.append(_norm_edge(u, w))
                children += 1
                dfs(w, u)
                low[u] = min(low[u], low[w])
                if low[w] >= disc[u]:
                    if parent is not None:
                        cuts.add(u)
                    comp: List[Edge] = []
                    target = _norm_edge(u, w)
                    while True:
                        e = edge_stack.pop()
                        comp.append(e)
                        if e == target:
                            break
                    block_list.append(comp)
            elif disc[w] < disc[u]:
                edge_stack.append(_norm_edge(u, w))
                low[u] = min(low[u], disc[w])
        if parent is None and children >= 2:
            cuts.add(u)

    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, g.n * 4 + 100))
    try:
        for root in range(g.n):
            if root not in disc:
                dfs(root, None)
    finally:
        sys.setrecursionlimit(old_limit)
    return block_list, cuts


def blocks(g: Graph) -> List[Graph]:
    """Maximal 2-connected subgraphs plus bridge edges.

    Every edge appears in exactly one block; isolated vertices yield no
    block.  Blocks are returned as graphs over parent-ordered vertices.
    """
    edge_sets, _ = _block_decomposition(g)
    out = []
    for es in edge_sets:
        verts = sorted({v for e in es for v in e})
        out.append(g.subgraph(verts, es))
    out.sort(key=lambda b: sorted(g.index(v) for v in b.vertices))
    return out


def cut_vertices(g: Graph) -> Set[int]:
    _, cuts = _block_decomposition(g)
    return cuts


# -- bridges -----------------------------------------------------------

@dataclass(frozen=True)
class BridgePart:
    """A {u,v}-bridge: either the edge uv itself or all edges meeting
    one component of the graph minus {u, v}.

    `vertices` and `edges` are indices into the parent graph.
    """

    graph: Graph
    is_edge: bool
    vertices: Tuple[int, ...]
    edges: FrozenSet[Edge]


def bridges(g: Graph, u: int, v: int) -> List[BridgePart]:
    """Partition of E(g) into {u,v}-bridges, deterministic order (the
    uv edge bridge first, then by smallest contained vertex)."""
    if u == v:
        raise ValueError("bridge poles must be distinct")
    parts: List[Tuple[List[int], List[Edge]]] = []
    if g.has_edge(u, v):
        parts.append(([u, v], [_norm_edge(u, v)]))
    adj = g.adj()
    seen = {u, v}
    for s in range(g.n):
        if s in seen:
            continue
        stack, comp = [s], {s}
        seen.add(s)
        while stack:
            x = stack.pop()
            for w in adj[x]:
                if w not in seen and w not in (u, v):
                    seen.add(w)
                    comp.add(w)
                    stack.append(w)
        es = [e for e in g.edges if e[0] in comp or e[1] in comp]
        if es:
            verts = sorted({x for e in es for x in e})
            parts.append((verts, es))
    parts.sort(key=lambda p: (len(p[1]) != 1 or p[1][0] != _norm_edge(u, v),
                              p[0]))
    return [BridgePart(g.subgraph(vs, es), es == [_norm_edge(u, v)],
                       tuple(vs), frozenset(es))
            for vs, es in parts]


def find_parallel3_poles(g: Graph):
    """Smallest lexicographic vertex pair with >= 3 bridges.

    Exists for every 2-connected series-parallel graph that is not a
    cycle; raises NoSuchPoles otherwise.
    """
    for u in range(g.n):
        for v in range(u + 1, g.n):
            parts = bridges(g, u, v)
            if len(parts) >= 3:
                return u, v, parts
    raise NoSuchPoles(f"no vertex pair of {g!r} has three bridges")


# -- series-parallel decomposition ------------------------------------

@dataclass(frozen=True)
class SPTree:
    """Two-terminal series-parallel decomposition tree.

    Leaves carry an edge; serial nodes have exactly two children glued
    at `join`; parallel nodes have two or more children sharing both
    poles.  Vertices are stored as labels of the realized graph.
    """

    kind: str  # "leaf" | "serial" | "parallel"
    poles: Tuple[str, str]
    children: Tuple["SPTree", ...] = ()
    join: Optional[str] = None

    def realize_edges(self) -> Set[Tuple[str, str]]:
        if self.kind == "leaf":
            a, b = self.poles
            return {(a, b) if a <= b else (b, a)}
        out: Set[Tuple[str, str]] = set()
        for c in self.children:
            out |= c.realize_edges()
        return out

    def vertex_labels(self) -> Set[str]:
        return {v for e in self.realize_edges() for v in e}

    def to_json(self) -> dict:
        obj = {"kind": self.kind, "poles": list(self.poles)}
        if self.kind == "leaf":
            return obj
        if self.kind == "serial":
            obj["join"] = self.join
        obj["children"] = [c.to_json() for c in self.children]
        return obj

    @classmethod
    def from_json(cls, obj: dict) -> "SPTree":
        kind = obj["kind"]
        poles = tuple(obj["poles"])
        if kind == "leaf":
            return cls("leaf", poles)
        children = tuple(cls.from_json(c) for c in obj["children"])
        return cls(kind, poles, children, obj.get("join"))


def realize(tree: SPTree, vertex_order: Optional[Sequence[str]] = None) -> Graph:
    """Graph realized by a decomposition tree."""
    labels = tree.vertex_labels()
    if vertex_order is None:
        order = sorted(labels)
    else:
        order = [v for v in vertex_order if v in labels]
        if set(order) != labels:
            raise ValueError("vertex_order does not cover the tree")
    index = {v: i for i, v in enumerate(order)}
    edges = [(index[a], index[b]) for a, b in tree.realize_edges()]
    return Graph(order, edges)


def _flip(tree: SPTree) -> SPTree:
    """Reverse the pole orientation of a tree."""
    poles = (tree.poles[1], tree.poles[0])
    if tree.kind == "leaf":
        return SPTree("leaf", poles)
    if tree.kind == "serial":
        kids = tuple(_flip(c) for c in reversed(tree.children))
        return SPTree("serial", poles, kids, tree.join)
    return SPTree("parallel", poles, tuple(_flip(c) for c in tree.children))


def _canonical(tree: SPTree, rank: Dict[str, int]) -> SPTree:
    """Deterministic form: flatten same-pole parallel nests and sort
    parallel children by (smallest contained vertex rank, edge count)."""
    if tree.kind == "leaf":
        return tree
    if tree.kind == "serial":
        kids = tuple(_canonical(c, rank) for c in tree.children)
        return SPTree("serial", tree.poles, kids, tree.join)
    flat: List[SPTree] = []
    for c in tree.children:
        c = _canonical(c, rank)
        if c.kind == "parallel" and set(c.poles) == set(tree.poles):
            if c.poles != tree.poles:
                c = _flip(c)
            flat.extend(c.children)
        else:
            flat.append(c)

    def sort_key(c: SPTree):
        return (min(rank[v] for v in c.vertex_labels()),
                len(c.realize_edges()))

    return SPTree("parallel", tree.poles, tuple(sorted(flat, key=sort_key)))


def sp_decompose(g: Graph,
                 poles: Optional[Tuple[str, str]] = None) -> SPTree:
    """Decompose a two-terminal series-parallel graph.

    Runs series/parallel reductions on a multigraph copy: merge parallel
    edge pairs, suppress degree-2 non-pole vertices.  Succeeds iff a
    single edge remains; with `poles` given, pole vertices are never
    suppressed and the surviving edge must connect them.
    """
    if g.m == 0 or not g.is_connected():
        raise NotSeriesParallel("graph must be connected with an edge")
    pole_idx: Optional[Set[int]] = None
    if poles is not None:
        pole_idx = {g.index(poles[0]), g.index(poles[1])}
        if len(pole_idx) != 2:
            raise ValueError("poles must be two distinct vertices")

    # multigraph state: edge id -> (a, b, tree); incidence: vertex -> ids
    edges: Dict[int, Tuple[int, int, SPTree]] = {}
    incidence: Dict[int, Set[int]] = {i: set() for i in range(g.n)}
    next_id = 0
    for (i, j) in sorted(g.edges):
        leaf = SPTree("leaf", (g.vertices[i], g.vertices[j]))
        edges[next_id] = (i, j, leaf)
        incidence[i].add(next_id)
        incidence[j].add(next_id)
        next_id += 1

    def endpoint_pairs() -> Dict[Edge, List[int]]:
        by_pair: Dict[Edge, List[int]] = {}
        for eid, (a, b, _) in edges.items():
            by_pair.setdefault(_norm_edge(a, b), []).append(eid)
        return by_pair

    def oriented(eid: int, a: int) -> SPTree:
        """Tree of edge eid with its pole order starting at vertex a."""
        ea, eb, t = edges[eid]
        return t if ea == a else _flip(t)

    while len(edges) > 1:
        # parallel merge first (smallest endpoint pair)
        pair_ids = sorted((p, ids) for p, ids in endpoint_pairs().items()
                          if len(ids) >= 2)
        if pair_ids:
            (a, b), ids = pair_ids[0]
            ids = sorted(ids)
            kids = tuple(oriented(eid, a) for eid in ids)
            merged = SPTree("parallel",
                            (g.vertices[a], g.vertices[b]), kids)
            for eid in ids:
                ea, eb, _ = edges.pop(eid)
                incidence[ea].discard(eid)
                incidence[eb].discard(eid)
            edges[next_id] = (a, b, merged)
            incidence[a].add(next_id)
            incidence[b].add(next_id)
            next_id += 1
            continue
        # then suppress a degree-2 vertex
        candidates = [v for v in range(g.n)
                      if len(incidence[v]) == 2
                      and (pole_idx is None or v not in pole_idx)]
        if not candidates:
            break
        w = candidates[0]
        e1, e2 = sorted(incidence[w])
        a = edges[e1][0] if edges[e1][1] == w else edges[e1][1]
        b = edges[e2][0] if edges[e2][1] == w else edges[e2][1]
        # a == b would mean parallel edges, handled above
        t = SPTree("serial", (g.vertices[a], g.vertices[b]),
                   (oriented(e1, a), oriented(e2, w)), g.vertices[w])
        for eid in (e1, e2):
            ea, eb, _ = edges.pop(eid)
            incidence[ea].discard(eid)
            incidence[eb].discard(eid)
        edges[next_id] = (a, b, t)
        incidence[a].add(next_id)
        incidence[b].add(next_id)
        next_id += 1

    if len(edges) != 1:
        raise NotSeriesParallel(f"reduction stalled with {len(edges)} edges")
    (a, b, tree), = edges.values()
    if pole_idx is not None and {a, b} != pole_idx:
        raise NotSeriesParallel(
            f"reduction ended at {g.vertices[a]},{g.vertices[b]}, "
            f"not at the requested poles")
    if poles is not None and tree.poles != poles:
        tree = _flip(tree)
    rank = {v: i for i, v in enumerate(g.vertices)}
    return _canonical(tree, rank)


def _is_sp_reducible(g: Graph) -> bool:
    try:
        sp_decompose(g)
        return True
    except NotSeriesParallel:
        return False


def is_k4_minor_free(g: Graph) -> bool:
    """True iff the graph has no K4 minor.

    Decided block-wise: each block must be a single edge, a cycle, or
    series-parallel reducible.
    """
    for b in blocks(g):
        if b.m == 1 or b.is_cycle():
            continue
        if not _is_sp_reducible(b):
            return False
    return True


def complete_graph(labels: Sequence[str]) -> Graph:
    n = len(labels)
    return Graph(labels, [(i, j) for i in range(n) for j in range(i + 1, n)])


def cycle_graph(labels: Sequence[str]) -> Graph:
    n = len(labels)
    if n < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return Graph(labels, [(i, (i + 1) % n) for i in range(n)])
