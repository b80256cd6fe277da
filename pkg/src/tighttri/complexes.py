"""Immutable abstract simplicial complexes: face queries, subcomplexes, manifold checks.

A complex is stored as the full downward closure of its facets, one sorted
tuple per face.  All values are immutable after construction, so derived
complexes are fresh objects and instances can be shared freely across
threads and used as cache keys.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Iterable, Optional


class MalformedComplexError(ValueError):
    """Facet input that does not describe a simplicial complex."""


class UnknownVertexError(ValueError):
    """An operation referenced a vertex that is not in the complex."""


class UnsupportedDimensionError(ValueError):
    """The requested decision procedure does not cover this dimension."""


class PreconditionError(ValueError):
    """An operation was called on input outside its stated domain."""


@dataclass(frozen=True)
class Verdict:
    """A boolean decision together with a machine-checkable witness.

    ``witness`` is ``None`` on success unless the operation documents a
    success certificate (e.g. a vertex-removal sequence).
    """

    ok: bool
    witness: Any = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok


Face = tuple  # sorted tuple of non-negative integer vertex labels


def _as_face(vertices: Iterable[int]) -> Face:
    vs = list(vertices)
    if not vs:
        raise MalformedComplexError("faces must be nonempty")
    for v in vs:
        if not isinstance(v, int) or isinstance(v, bool) or v < 0:
            raise MalformedComplexError(f"vertex labels must be non-negative integers, got {v!r}")
    face = tuple(sorted(vs))
    if len(set(face)) != len(face):
        raise MalformedComplexError(f"facet {tuple(vs)!r} contains a duplicate vertex")
    return face


class Complex:
    """A finite abstract simplicial complex.

    Construct with :meth:`from_facets`; the other constructors on this class
    and in this module all preserve closure, so faces never need re-deriving.
    """

    def __init__(self, faces_by_dim: tuple, _closed: bool = False):
        if not _closed:
            raise TypeError("use Complex.from_facets() to build a complex")
        self._faces = faces_by_dim  # tuple (per dim) of sorted tuples of faces
        self._hash: Optional[int] = None

    @classmethod
    def from_facets(cls, facets: Iterable[Iterable[int]]) -> "Complex":
        """Downward closure of the given facets; non-maximal inputs are absorbed."""
        cand = sorted({_as_face(f) for f in facets}, key=len, reverse=True)
        kept: list = []
        kept_sets: list = []
        for f in cand:
            fs = set(f)
            if any(fs <= ks for ks in kept_sets):
                continue
            kept.append(f)
            kept_sets.append(fs)
        by_dim: dict = {}
        for f in kept:
            for size in range(1, len(f) + 1):
                bucket = by_dim.setdefault(size - 1, set())
                bucket.update(itertools.combinations(f, size))
        dims = sorted(by_dim)
        faces = tuple(tuple(sorted(by_dim[k])) for k in dims)
        return cls(faces, _closed=True)

    @classmethod
    def _from_closed_faces(cls, faces_by_dim: Iterable[Iterable[Face]]) -> "Complex":
        """Fast path for face sets already known to be downward closed."""
        faces = tuple(tuple(sorted(bucket)) for bucket in faces_by_dim if bucket)
        return cls(faces, _closed=True)

    # -- basic queries ------------------------------------------------------

    @property
    def dim(self) -> int:
        """Maximum face dimension; -1 for the empty complex."""
        return len(self._faces) - 1

    def faces(self, k: int) -> tuple:
        """All k-dimensional faces, sorted lexicographically."""
        if 0 <= k <= self.dim:
            return self._faces[k]
        return ()

    @property
    def f_vector(self) -> tuple:
        return tuple(len(bucket) for bucket in self._faces)

    @property
    def num_vertices(self) -> int:
        return len(self._faces[0]) if self._faces else 0

    @cached_property
    def vertices(self) -> tuple:
        return tuple(f[0] for f in self.faces(0))

    @cached_property
    def vertex_set(self) -> frozenset:
        return frozenset(self.vertices)

    @cached_property
    def _face_set(self) -> frozenset:
        return frozenset(itertools.chain.from_iterable(self._faces))

    def has_face(self, face: Iterable[int]) -> bool:
        return tuple(sorted(face)) in self._face_set

    @cached_property
    def edges(self) -> frozenset:
        return frozenset(self.faces(1))

    @cached_property
    def _adjacency(self) -> dict:
        adj: dict = {v: set() for v in self.vertices}
        for a, b in self.faces(1):
            adj[a].add(b)
            adj[b].add(a)
        return {v: frozenset(nb) for v, nb in adj.items()}

    def neighbors(self, v: int) -> frozenset:
        try:
            return self._adjacency[v]
        except KeyError:
            raise UnknownVertexError(f"vertex {v} is not in the complex") from None

    @cached_property
    def _vertex_position(self) -> dict:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def _face_masks(self) -> tuple:
        """Per dimension, a bitmask over vertex positions for each face."""
        pos = self._vertex_position
        out = []
        for bucket in self._faces:
            masks = []
            for f in bucket:
                m = 0
                for v in f:
                    m |= 1 << pos[v]
                masks.append(m)
            out.append(tuple(masks))
        return tuple(out)

    @cached_property
    def facets(self) -> tuple:
        """Inclusion-maximal faces, sorted by descending dimension then label."""
        subsumed: set = set()
        maximal = []
        for k in range(self.dim, -1, -1):
            for f in self.faces(k):
                if f not in subsumed:
                    maximal.append(f)
            for f in self.faces(k):
                if len(f) > 1:
                    for i in range(len(f)):
                        subsumed.add(f[:i] + f[i + 1:])
        return tuple(sorted(maximal, key=lambda f: (-len(f), f)))

    # -- subcomplex constructors --------------------------------------------

    def induced(self, subset: Iterable[int]) -> "Complex":
        """Induced subcomplex on a vertex subset (all faces inside the subset)."""
        sub = frozenset(subset)
        if not sub <= self.vertex_set:
            missing = sorted(sub - self.vertex_set)
            raise UnknownVertexError(f"vertices {missing} are not in the complex")
        pos = self._vertex_position
        wmask = 0
        for v in sub:
            wmask |= 1 << pos[v]
        keep = ~wmask
        buckets = []
        for bucket, masks in zip(self._faces, self._face_masks):
            sel = tuple(f for f, m in zip(bucket, masks) if not (m & keep))
            if sel:
                buckets.append(sel)
        return Complex(tuple(buckets), _closed=True)

    def link(self, v: int) -> "Complex":
        """Faces disjoint from v whose union with v is again a face."""
        if v not in self.vertex_set:
            raise UnknownVertexError(f"vertex {v} is not in the complex")
        by_dim: dict = {}
        for bucket in self._faces[1:]:
            for f in bucket:
                if v in f:
                    rest = tuple(u for u in f if u != v)
                    by_dim.setdefault(len(rest) - 1, []).append(rest)
        dims = sorted(by_dim)
        return Complex(tuple(tuple(sorted(by_dim[k])) for k in dims), _closed=True)

    def antistar(self, v: int) -> "Complex":
        """Induced subcomplex on all vertices except v."""
        if v not in self.vertex_set:
            raise UnknownVertexError(f"vertex {v} is not in the complex")
        return self.induced(self.vertex_set - {v})

    def one_skeleton(self) -> "Complex":
        """The underlying graph: faces of dimension at most one."""
        return Complex(self._faces[:2], _closed=True)

    # -- predicates ----------------------------------------------------------

    def is_neighbourly(self) -> bool:
        """True iff every pair of vertices forms an edge."""
        n = self.num_vertices
        f1 = len(self.faces(1))
        return f1 == n * (n - 1) // 2

    @cached_property
    def _components(self) -> tuple:
        seen: set = set()
        comps = []
        for start in self.vertices:
            if start in seen:
                continue
            comp = {start}
            stack = [start]
            while stack:
                u = stack.pop()
                for w in self._adjacency[u]:
                    if w not in comp:
                        comp.add(w)
                        stack.append(w)
            seen |= comp
            comps.append(frozenset(comp))
        return tuple(sorted(comps, key=min))

    def components(self) -> tuple:
        """Connected components as frozensets of vertices, ordered by least vertex."""
        return self._components

    def is_connected(self) -> bool:
        return len(self._components) <= 1

    # -- value semantics -----------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Complex) and self._faces == other._faces

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._faces)
        return self._hash

    def __repr__(self) -> str:
        return f"Complex(f_vector={self.f_vector})"


def from_facets(facets: Iterable[Iterable[int]]) -> Complex:
    """Module-level alias for :meth:`Complex.from_facets`."""
    return Complex.from_facets(facets)


def connected_sum(x: Complex, y: Complex, facet_x: Iterable[int],
                  facet_y: Iterable[int], glue: dict) -> Complex:
    """Glue two d-manifold triangulations along a shared facet and delete it.

    ``glue`` maps the vertices of ``facet_y`` bijectively onto those of
    ``facet_x``.  The remaining vertices of ``y`` are relabelled with fresh
    labels above everything in use, so the inputs need not be disjoint.
    """
    fx = tuple(sorted(facet_x))
    fy = tuple(sorted(facet_y))
    d = x.dim
    if d != y.dim:
        raise PreconditionError(f"dimension mismatch: {x.dim} vs {y.dim}")
    if fx not in x.facets or len(fx) != d + 1:
        raise PreconditionError(f"{fx} is not a facet of the first complex")
    if fy not in y.facets or len(fy) != d + 1:
        raise PreconditionError(f"{fy} is not a facet of the second complex")
    if set(glue.keys()) != set(fy) or set(glue.values()) != set(fx):
        raise PreconditionError("gluing map is not a bijection from the second facet onto the first")
    fresh = max(x.vertex_set | y.vertex_set) + 1
    rename = dict(glue)
    for v in sorted(y.vertex_set - set(fy)):
        rename[v] = fresh
        fresh += 1
    new_facets = [f for f in x.facets if f != fx]
    for f in y.facets:
        if f == fy:
            continue
        new_facets.append(tuple(sorted(rename[u] for u in f)))
    out = Complex.from_facets(new_facets)
    assert out.num_vertices == x.num_vertices + y.num_vertices - (d + 1)
    return out


def _is_single_cycle(g: Complex) -> bool:
    if g.dim != 1 or g.num_vertices < 3:
        return False
    if any(len(g.neighbors(v)) != 2 for v in g.vertices):
        return False
    return g.is_connected()


def _two_sphere_check(s: Complex) -> tuple:
    """(ok, reason) for the combinatorial 2-sphere test."""
    if s.dim != 2:
        return False, "link is not 2-dimensional"
    if any(len(f) != 3 for f in s.facets):
        return False, "link is not pure"
    if not s.is_connected():
        return False, "link is disconnected"
    tri_count = {e: 0 for e in s.faces(1)}
    for t in s.faces(2):
        tri_count[t[:2]] += 1
        tri_count[t[::2]] += 1
        tri_count[t[1:]] += 1
    for e, c in tri_count.items():
        if c != 2:
            return False, f"edge {e} lies in {c} triangles"
    for v in s.vertices:
        if not _is_single_cycle(s.link(v)):
            return False, f"link of {v} inside the link is not a single cycle"
    f = s.f_vector
    if f[0] - f[1] + f[2] != 2:
        return False, "Euler characteristic differs from 2"
    return True, ""


def verify_closed_manifold(x: Complex) -> Verdict:
    """Decide whether the complex triangulates a closed manifold (dimension <= 3).

    Links are checked recursively: in dimension 1 every vertex must lie on
    exactly two edges, in dimension 2 every vertex link must be a single
    cycle, and in dimension 3 every vertex link must pass the combinatorial
    2-sphere test.  The witness on failure is the offending vertex or facet.
    """
    d = x.dim
    if d > 3:
        raise UnsupportedDimensionError(f"closed-manifold check supports dimension <= 3, got {d}")
    if d < 0:
        return Verdict(False, detail="empty complex")
    if d == 0:
        return Verdict(True, detail="closed 0-manifold (finite point set)")
    for f in x.facets:
        if len(f) != d + 1:
            return Verdict(False, witness=f, detail=f"not pure: maximal face {f} has dimension {len(f) - 1}")
    if d == 1:
        for v in x.vertices:
            if len(x.neighbors(v)) != 2:
                return Verdict(False, witness=v, detail=f"vertex {v} does not lie on exactly two edges")
        return Verdict(True, detail="closed 1-manifold (disjoint union of cycles)")
    if d == 2:
        for v in x.vertices:
            if not _is_single_cycle(x.link(v)):
                return Verdict(False, witness=v, detail=f"link of vertex {v} is not a single cycle")
        return Verdict(True, detail="closed 2-manifold")
    for v in x.vertices:
        ok, reason = _two_sphere_check(x.link(v))
        if not ok:
            return Verdict(False, witness=v, detail=f"link of vertex {v} is not a 2-sphere: {reason}")
    return Verdict(True, detail="closed 3-manifold")


def _vertex_signatures(x: Complex) -> dict:
    sig: dict = {v: [0] * (x.dim + 1) for v in x.vertices}
    for k in range(x.dim + 1):
        for f in x.faces(k):
            for v in f:
                sig[v][k] += 1
    return {v: tuple(s) for v, s in sig.items()}


def is_isomorphic(x: Complex, y: Complex) -> Optional[dict]:
    """A facet-preserving vertex bijection, or None.

    Plain backtracking over vertex assignments, pruned by per-vertex face
    counts and by edge/triangle consistency of the partial map.  Intended
    for the small instances arising in summand identification.
    """
    if x.f_vector != y.f_vector:
        return None
    if x.dim < 0:
        return {}
    sig_x = _vertex_signatures(x)
    sig_y = _vertex_signatures(y)
    if sorted(sig_x.values()) != sorted(sig_y.values()):
        return None
    by_sig: dict = {}
    for v, s in sig_y.items():
        by_sig.setdefault(s, []).append(v)
    for s in by_sig:
        by_sig[s].sort()

    # Rarest signature first, then expand along edges where possible.
    order: list = []
    placed: set = set()
    remaining = sorted(x.vertices, key=lambda v: (len(by_sig[sig_x[v]]), v))
    while remaining:
        pick = None
        for v in remaining:
            if any(u in placed for u in x.neighbors(v)):
                pick = v
                break
        if pick is None:
            pick = remaining[0]
        order.append(pick)
        placed.add(pick)
        remaining.remove(pick)

    has_tri_x = x.dim >= 2
    mapping: dict = {}
    used: set = set()

    def consistent(v: int, w: int) -> bool:
        for u, img in mapping.items():
            if ((min(u, v), max(u, v)) in x.edges) != ((min(img, w), max(img, w)) in y.edges):
                return False
        if has_tri_x:
            items = list(mapping.items())
            for i in range(len(items)):
                u1, w1 = items[i]
                for j in range(i + 1, len(items)):
                    u2, w2 = items[j]
                    if x.has_face((u1, u2, v)) != y.has_face((w1, w2, w)):
                        return False
        return True

    def extend(idx: int) -> bool:
        if idx == len(order):
            xf = {tuple(sorted(mapping[u] for u in f)) for f in x.facets}
            return xf == set(y.facets)
        v = order[idx]
        for w in by_sig[sig_x[v]]:
            if w in used or not consistent(v, w):
                continue
            mapping[v] = w
            used.add(w)
            if extend(idx + 1):
                return True
            del mapping[v]
            used.remove(w)
        return False

    return dict(mapping) if extend(0) else None
