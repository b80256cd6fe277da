"""Planarity filter and Kuratowski-subdivision witnesses for small graphs.

``find_kuratowski_subdivision`` first tries to embed the graph in the plane
block by block (Demoucron-Malgrange-Pertuiset: grow an embedded subgraph by
routing one bridge path into an admissible face at a time).  A successful
embedding certifies that no K5/K33 subdivision exists, so the answer is
None; otherwise an exhaustive backtracking search over branch-vertex
assignments and internally-disjoint path systems produces the witness.

The witness search is exponential in the worst case; the whole entry point
is capped at 60 vertices.  It exists to mechanize small link graphs, not to
be a production planarity test.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Set, Tuple

from .complexes import Complex, PreconditionError

KURATOWSKI_VERTEX_CAP = 60


@dataclass(frozen=True)
class KuratowskiWitness:
    """A subdivided complete (bipartite) graph found inside a graph.

    ``branch_vertices`` is a 5-tuple for K5 and a pair of 3-tuples for K33;
    ``paths`` are internally-disjoint vertex paths joining each required
    branch pair, endpoints included.
    """

    pattern: str  # "K5" or "K33"
    branch_vertices: tuple
    paths: Tuple[tuple, ...]


def _adjacency(g: Complex) -> Dict[int, Set[int]]:
    adj: Dict[int, Set[int]] = {v: set() for v in g.vertices}
    for a, b in g.faces(1):
        adj[a].add(b)
        adj[b].add(a)
    return adj


def find_kuratowski_subdivision(g: Complex) -> Optional[KuratowskiWitness]:
    """A K5 or K33 subdivision in the 1-skeleton, or None if the graph is planar."""
    if g.dim > 1:
        g = g.one_skeleton()
    if g.num_vertices > KURATOWSKI_VERTEX_CAP:
        raise PreconditionError(
            f"Kuratowski search is capped at {KURATOWSKI_VERTEX_CAP} vertices")
    adj = _adjacency(g)
    if _is_planar(adj):
        return None
    witness = _search_pattern(adj, "K5") or _search_pattern(adj, "K33")
    if witness is None:
        raise RuntimeError("internal inconsistency: graph judged non-planar "
                           "but no Kuratowski subdivision found")
    return witness


def is_planar_graph(g: Complex) -> bool:
    """Planarity of the 1-skeleton via the embedding filter."""
    if g.dim > 1:
        g = g.one_skeleton()
    return _is_planar(_adjacency(g))


# -- planar embedding (DMP) -------------------------------------------------

def _is_planar(adj: Dict[int, Set[int]]) -> bool:
    for block in _biconnected_blocks(adj):
        verts = {v for e in block for v in e}
        if len(verts) <= 4:
            continue
        m = len(block)
        if m > 3 * len(verts) - 6:
            return False
        sub = {v: set() for v in verts}
        for a, b in block:
            sub[a].add(b)
            sub[b].add(a)
        if not _dmp_planar_block(sub):
            return False
    return True


def _biconnected_blocks(adj: Dict[int, Set[int]]) -> List[Set[FrozenSet[int]]]:
    """Edge sets of the biconnected components (Hopcroft-Tarjan, iterative)."""
    index: Dict[int, int] = {}
    low: Dict[int, int] = {}
    blocks: List[Set[FrozenSet[int]]] = []
    estack: List[FrozenSet[int]] = []
    counter = itertools.count()
    for root in sorted(adj):
        if root in index:
            continue
        stack = [(root, None, iter(sorted(adj[root])))]
        index[root] = low[root] = next(counter)
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if w == parent:
                    continue
                e = frozenset((v, w))
                if w not in index:
                    estack.append(e)
                    index[w] = low[w] = next(counter)
                    stack.append((w, v, iter(sorted(adj[w]))))
                    advanced = True
                    break
                if index[w] < index[v]:
                    estack.append(e)
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                u = stack[-1][0]
                low[u] = min(low[u], low[v])
                if low[v] >= index[u]:
                    block: Set[FrozenSet[int]] = set()
                    while estack:
                        e = estack.pop()
                        block.add(e)
                        if e == frozenset((u, v)):
                            break
                    if block:
                        blocks.append(block)
    return blocks


def _dmp_planar_block(adj: Dict[int, Set[int]]) -> bool:
    """DMP embedding on a 2-connected graph: True iff an embedding completes."""
    cycle = _find_cycle(adj)
    faces: List[List[int]] = [list(cycle), list(reversed(cycle))]
    h_vertices: Set[int] = set(cycle)
    h_edges: Set[FrozenSet[int]] = {frozenset((cycle[i], cycle[(i + 1) % len(cycle)]))
                                    for i in range(len(cycle))}
    while True:
        fragments = _fragments(adj, h_vertices, h_edges)
        if not fragments:
            return True
        best = None
        for frag in fragments:
            attachments, inner = frag
            admissible = [i for i, f in enumerate(faces) if attachments <= set(f)]
            if not admissible:
                return False
            if best is None or len(admissible) < len(best[2]):
                best = (attachments, inner, admissible)
            if len(admissible) == 1:
                break
        attachments, inner, admissible = best
        path = _fragment_path(adj, attachments, inner)
        face = faces.pop(admissible[0])
        a, b = path[0], path[-1]
        i, j = face.index(a), face.index(b)
        if i <= j:
            seg1 = face[i:j + 1]
            seg2 = face[j:] + face[:i + 1]
        else:
            seg1 = face[i:] + face[:j + 1]
            seg2 = face[j:i + 1]
        interior = path[1:-1]
        faces.append(seg1 + list(reversed(interior)))
        faces.append(seg2 + list(interior))
        h_vertices.update(path)
        for t in range(len(path) - 1):
            h_edges.add(frozenset((path[t], path[t + 1])))


def _find_cycle(adj: Dict[int, Set[int]]) -> List[int]:
    # In an undirected depth-first search every visited non-parent neighbour
    # is an ancestor, so the first such edge closes a cycle.
    start = min(adj)
    parent: Dict[int, Optional[int]] = {start: None}

    def dfs(v: int) -> Optional[List[int]]:
        for w in sorted(adj[v]):
            if w == parent[v]:
                continue
            if w in parent:
                path = [v]
                u = parent[v]
                while u != w:
                    path.append(u)
                    u = parent[u]
                path.append(w)
                return path
            parent[w] = v
            found = dfs(w)
            if found is not None:
                return found
        return None

    cycle = dfs(start)
    if cycle is None:
        raise ValueError("graph has no cycle")
    return cycle


def _fragments(adj, h_vertices: Set[int], h_edges: Set[FrozenSet[int]]):
    """Bridges of the embedded subgraph: chords, and components of G - H with
    their attachment vertices.  Returned as (attachments, inner_vertices)."""
    out = []
    for v in sorted(h_vertices):
        for w in sorted(adj[v]):
            if w in h_vertices and v < w and frozenset((v, w)) not in h_edges:
                out.append((frozenset((v, w)), frozenset()))
    seen: Set[int] = set()
    for v in sorted(adj):
        if v in h_vertices or v in seen:
            continue
        comp = {v}
        queue = [v]
        attach: Set[int] = set()
        while queue:
            u = queue.pop()
            for w in adj[u]:
                if w in h_vertices:
                    attach.add(w)
                elif w not in comp:
                    comp.add(w)
                    queue.append(w)
        seen |= comp
        out.append((frozenset(attach), frozenset(comp)))
    return out


def _fragment_path(adj, attachments: FrozenSet[int], inner: FrozenSet[int]) -> List[int]:
    """A path between two attachment vertices through the fragment."""
    attach = sorted(attachments)
    if not inner:
        return attach[:2]
    start = attach[0]
    others = set(attach[1:])
    parent: Dict[int, Optional[int]] = {}
    queue = [w for w in sorted(adj[start]) if w in inner]
    for w in queue:
        parent[w] = None
    qi = 0
    while qi < len(queue):
        u = queue[qi]
        qi += 1
        for w in sorted(adj[u]):
            if w in others:
                path = [w, u]
                p = parent[u]
                while p is not None:
                    path.append(p)
                    p = parent[p]
                path.append(start)
                return list(reversed(path))
            if w in inner and w not in parent:
                parent[w] = u
                queue.append(w)
    raise ValueError("fragment with fewer than two reachable attachments")


# -- witness search ----------------------------------------------------------

def _search_pattern(adj, pattern: str) -> Optional[KuratowskiWitness]:
    min_deg = 4 if pattern == "K5" else 3
    cands = sorted(v for v in adj if len(adj[v]) >= min_deg)
    if pattern == "K5":
        if len(cands) < 5:
            return None
        for combo in itertools.combinations(cands, 5):
            pairs = list(itertools.combinations(combo, 2))
            paths = _disjoint_paths(adj, set(combo), pairs)
            if paths is not None:
                return KuratowskiWitness("K5", tuple(combo), tuple(paths))
        return None
    if len(cands) < 6:
        return None
    for combo in itertools.combinations(cands, 6):
        for left in itertools.combinations(combo[1:], 2):
            part1 = (combo[0],) + left
            part2 = tuple(v for v in combo if v not in part1)
            pairs = [(a, b) for a in part1 for b in part2]
            paths = _disjoint_paths(adj, set(combo), pairs)
            if paths is not None:
                return KuratowskiWitness("K33", (part1, part2), tuple(paths))
    return None


def _disjoint_paths(adj, branch: Set[int], pairs: List[tuple]) -> Optional[List[tuple]]:
    """Internally-disjoint paths joining every pair, or None.

    Paths avoid all branch vertices in their interior; interiors are pairwise
    disjoint.  For each pair, candidate paths are tried shortest first via
    iterative deepening so direct edges are always preferred.
    """
    n = len(adj)
    used: Set[int] = set()
    out: List[tuple] = []

    def paths_of_length(a: int, b: int, length: int):
        # simple paths a..b with exactly `length` edges, interior outside
        # used and branch vertices
        path = [a]
        on_path = {a}

        def step(v: int, remaining: int):
            if remaining == 1:
                if b in adj[v]:
                    yield path + [b]
                return
            for w in sorted(adj[v]):
                if w in on_path or w in used or w in branch:
                    continue
                path.append(w)
                on_path.add(w)
                yield from step(w, remaining - 1)
                path.pop()
                on_path.remove(w)

        yield from step(a, length)

    def solve(idx: int) -> bool:
        if idx == len(pairs):
            return True
        a, b = pairs[idx]
        for length in range(1, n + 1):
            for path in paths_of_length(a, b, length):
                interior = path[1:-1]
                used.update(interior)
                out.append(tuple(path))
                if solve(idx + 1):
                    return True
                out.pop()
                used.difference_update(interior)
        return False

    return out if solve(0) else None
