"""Generators: stacked spheres, elementary handle additions, the handle-count
admissibility table, the randomized search for neighbourly handle quotients,
and topology classification of certified constructions.

Randomness comes from seeded ``random.Random`` instances only; every search
restart derives its generator from ``"<seed>:<restart>"``, so outcomes are
reproducible bit for bit and independent of worker count.
"""

from __future__ import annotations

import itertools
import math
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .complexes import (Complex, PreconditionError, UnsupportedDimensionError,
                        verify_closed_manifold)
from .homology import is_orientable
from .linalg import QQ, FieldSpec
from .tightness import cross_validate, is_tight_fast_3manifold

# A successful candidate is confirmed by the definitional decider only when
# the subset scan is this small (2**12 subsets); bigger quotients keep the
# polynomial certificate alone.
BRUTE_CONFIRM_MAX_VERTICES = 12


class AdmissibilityError(ValueError):
    """A handle addition request violates its gluing constraints."""


@dataclass(frozen=True)
class HandleStep:
    """One elementary handle addition: two disjoint facets and the vertex
    identification, stored as sorted (from, to) pairs."""

    facet1: tuple
    facet2: tuple
    bijection: tuple

    @classmethod
    def make(cls, facet1: Sequence[int], facet2: Sequence[int], bijection: Dict[int, int]) -> "HandleStep":
        return cls(tuple(sorted(facet1)), tuple(sorted(facet2)),
                   tuple(sorted(bijection.items())))


@dataclass(frozen=True)
class Certificate:
    """Construction trace: a stacked-sphere seed plus ordered handle steps.

    ``seed_params`` optionally records how the seed was generated
    (n, dim, rng seed); the facet list is authoritative for replay.
    """

    seed_facets: tuple
    steps: tuple
    final_f_vector: tuple
    rng_seed: Optional[str] = None
    seed_params: Optional[tuple] = None

    def seed_complex(self) -> Complex:
        return Complex.from_facets(self.seed_facets)

    def to_dict(self) -> dict:
        return {
            "seed_facets": [list(f) for f in self.seed_facets],
            "steps": [
                {
                    "facet1": list(s.facet1),
                    "facet2": list(s.facet2),
                    "bijection": [list(p) for p in s.bijection],
                }
                for s in self.steps
            ],
            "final_f_vector": list(self.final_f_vector),
            "rng_seed": self.rng_seed,
            "seed_params": list(self.seed_params) if self.seed_params else None,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "Certificate":
        steps = tuple(
            HandleStep(tuple(s["facet1"]), tuple(s["facet2"]),
                       tuple(tuple(p) for p in s["bijection"]))
            for s in doc.get("steps", ())
        )
        params = doc.get("seed_params")
        return cls(
            seed_facets=tuple(tuple(f) for f in doc["seed_facets"]),
            steps=steps,
            final_f_vector=tuple(doc["final_f_vector"]),
            rng_seed=doc.get("rng_seed"),
            seed_params=tuple(params) if params else None,
        )


def stacked_sphere(n: int, d: int, seed=0, tree: Optional[Sequence[int]] = None) -> Complex:
    """A stacked d-sphere on n vertices built by repeated facet subdivision.

    Starts from the boundary of the (d+1)-simplex and performs n-(d+2)
    subdivisions at facets chosen by the seeded generator, or at the given
    positions in the sorted facet list when ``tree`` is supplied.
    """
    if d not in (2, 3):
        raise UnsupportedDimensionError("stacked spheres are generated for d in {2, 3}")
    if n < d + 2:
        raise ValueError(f"a {d}-sphere needs at least {d + 2} vertices")
    steps = n - (d + 2)
    if tree is not None and len(tree) != steps:
        raise ValueError(f"tree must list {steps} facet choices")
    rng = random.Random(seed)
    facets = {tuple(c) for c in _boundary_facets(d + 1)}
    for i in range(steps):
        ordered = sorted(facets)
        pos = tree[i] if tree is not None else rng.randrange(len(ordered))
        if not 0 <= pos < len(ordered):
            raise ValueError(f"tree position {pos} out of range")
        target = ordered[pos]
        new_vertex = d + 2 + i
        facets.remove(target)
        for u in target:
            facets.add(tuple(sorted(set(target) - {u} | {new_vertex})))
    return Complex.from_facets(facets)


def _boundary_facets(dim_simplex: int):
    return itertools.combinations(range(dim_simplex + 1), dim_simplex)


def handle_addition(x: Complex, facet1: Sequence[int], facet2: Sequence[int],
                    bijection: Dict[int, int]) -> Complex:
    """Remove two disjoint facets of a connected closed 3-manifold and identify
    their vertices along the bijection.

    Admissibility requires v and bijection[v] to be non-adjacent for every v
    (identifying adjacent vertices would collapse an edge).  The result is
    re-verified as a closed 3-manifold and the f-vector must drop by exactly
    (4, 6, 4, 2); identifications that merge any extra faces are rejected.
    """
    f1 = tuple(sorted(facet1))
    f2 = tuple(sorted(facet2))
    man = verify_closed_manifold(x)
    if not man.ok or x.dim != 3 or not x.is_connected():
        raise PreconditionError(
            f"handle addition needs a connected closed 3-manifold: {man.detail or 'wrong dimension'}")
    if f1 not in x.facets or f2 not in x.facets:
        raise AdmissibilityError("both gluing sites must be facets")
    if set(f1) & set(f2):
        raise AdmissibilityError(f"facets {f1} and {f2} are not disjoint")
    if set(bijection.keys()) != set(f1) or set(bijection.values()) != set(f2):
        raise AdmissibilityError("bijection must map the first facet onto the second")
    for v, w in bijection.items():
        if w in x.neighbors(v):
            raise AdmissibilityError(f"vertices {v} and {w} are adjacent; gluing would collapse an edge")
    rename = {w: v for v, w in bijection.items()}
    new_facets = [tuple(sorted(rename.get(u, u) for u in f))
                  for f in x.facets if f not in (f1, f2)]
    result = Complex.from_facets(new_facets)
    f = x.f_vector
    expected = (f[0] - 4, f[1] - 6, f[2] - 4, f[3] - 2)
    if result.f_vector != expected:
        raise AdmissibilityError(
            f"identification merged extra faces: f-vector {result.f_vector}, expected {expected}")
    check = verify_closed_manifold(result)
    if not check.ok:
        raise AdmissibilityError(f"result is not a closed 3-manifold: {check.detail}")
    return result


@dataclass(frozen=True)
class AdmissibleK:
    """A handle count k in the family of known tight quotients: 80k+1 is a
    perfect square and the quotient vertex count f0 = (9 + sqrt(80k+1)) / 2
    lies in the realized progression f0 = 9 (mod 20)."""

    k: int
    f0: int


def admissible_k(limit: int) -> List[AdmissibleK]:
    """Handle counts up to ``limit`` in the constructible family k = 20j^2+9j+1.

    Every output satisfies the square condition (f0-4)(f0-5) = 20k exactly;
    the enumeration walks the vertex counts f0 = 9, 29, 49, ... for which
    tight quotients are actually realized.
    """
    if limit < 1:
        raise ValueError("limit must be at least 1")
    out = []
    j = 0
    while True:
        k = 20 * j * j + 9 * j + 1
        if k > limit:
            break
        out.append(AdmissibleK(k, 20 * j + 9))
        j += 1
    return out


def _vertex_count_for_k(k: int) -> int:
    s = math.isqrt(80 * k + 1)
    if s * s != 80 * k + 1:
        raise ValueError(f"k={k} is inadmissible: 80k+1 = {80 * k + 1} is not a perfect square")
    f0 = (9 + s) // 2
    if f0 % 20 != 9:
        raise ValueError(
            f"k={k} is outside the realized family: f0 = {f0} is not 9 (mod 20)")
    return f0


def candidate_handle_sites(x: Complex) -> List[tuple]:
    """Disjoint facet pairs with no edges between them, sorted.

    Any edge running between the two facets would merge with a facet edge
    under the identification, so these are the only sites where a handle can
    keep the f-vector bookkeeping exact.
    """
    facets = sorted(x.facets)
    out = []
    for i, f1 in enumerate(facets):
        for f2 in facets[i + 1:]:
            if set(f1) & set(f2):
                continue
            if any(w in x.neighbors(v) for v in f1 for w in f2):
                continue
            out.append((f1, f2))
    return out


def find_admissible_handle(x: Complex, rng: random.Random):
    """A random (facet1, facet2, bijection) expected to survive handle_addition.

    Beyond the pairwise non-adjacency, matched vertices must share no
    neighbour outside the two facets, otherwise the identification would
    merge a pair of edges.
    """
    sites = candidate_handle_sites(x)
    rng.shuffle(sites)
    for f1, f2 in sites:
        ext1 = {v: x.neighbors(v) - set(f1) for v in f1}
        ext2 = {w: x.neighbors(w) - set(f2) for w in f2}
        perms = list(itertools.permutations(f2))
        rng.shuffle(perms)
        for perm in perms:
            if all(not (ext1[v] & ext2[w]) for v, w in zip(f1, perm)):
                return f1, f2, dict(zip(f1, perm))
    return None


def _grow_search_sphere(n: int, rng: random.Random, bias: float = 0.85) -> Complex:
    """Stacked 3-sphere biased toward elongated simplex trees.

    A handle needs two facets with no edges between them, and at the tight
    13-vertex scale only near-path trees have such far-apart ends; uniform
    facet choice essentially never produces them.  With probability ``bias``
    each subdivision extends the newest branch, otherwise it hits a uniform
    random facet.
    """
    facets = {tuple(sorted(f)) for f in _boundary_facets(4)}
    continuation = None
    for w in range(5, n):
        if continuation is not None and continuation in facets and rng.random() < bias:
            target = continuation
        else:
            ordered = sorted(facets)
            target = ordered[rng.randrange(len(ordered))]
        facets.remove(target)
        for u in target:
            facets.add(tuple(sorted(set(target) - {u} | {w})))
        continuation = tuple(sorted((set(target) - {min(target)}) | {w}))
    return Complex.from_facets(facets)


def _search_attempt(seed, restart: int, k: int, n: int, field: FieldSpec):
    """One restart: fresh sphere, k random handles, neighbourliness filter,
    then the polynomial tightness check.  Returns (complex, certificate)."""
    rng = random.Random(f"{seed}:{restart}")
    sphere = _grow_search_sphere(n, rng)
    current = sphere
    steps: List[HandleStep] = []
    for _ in range(k):
        choice = find_admissible_handle(current, rng)
        if choice is None:
            return None
        f1, f2, bijection = choice
        try:
            current = handle_addition(current, f1, f2, bijection)
        except AdmissibilityError:
            return None
        steps.append(HandleStep.make(f1, f2, bijection))
    if not current.is_neighbourly():
        return None
    if not is_tight_fast_3manifold(current, field).verdict:
        return None
    cert = Certificate(
        seed_facets=tuple(sorted(sphere.facets)),
        steps=tuple(steps),
        final_f_vector=current.f_vector,
        rng_seed=f"{seed}:{restart}",
    )
    return current, cert


def search_tight(k: int, field: FieldSpec, budget: int = 10_000, seed=0,
                 jobs: int = 1) -> Optional[Tuple[Complex, Certificate]]:
    """Restart-based random search for a tight neighbourly handle quotient.

    Each restart builds a stacked 3-sphere on f0+4k vertices and applies k
    random admissible handle additions; a candidate is accepted when it is
    neighbourly and passes the polynomial tightness criterion over the given
    field, and small candidates are re-confirmed against the definitional
    decider before being returned.  Restarts are independent, so with
    ``jobs`` > 1 they run in parallel and the lowest successful restart
    index wins, keeping results seed-deterministic.
    """
    f0 = _vertex_count_for_k(k)  # raises for inadmissible k
    n = f0 + 4 * k
    found = None
    if jobs > 1:
        found = _search_parallel(seed, budget, k, n, field, jobs)
    else:
        for restart in range(budget):
            res = _search_attempt(seed, restart, k, n, field)
            if res is not None:
                found = res
                break
    if found is None:
        return None
    complex_, cert = found
    if complex_.num_vertices <= BRUTE_CONFIRM_MAX_VERTICES:
        cross_validate(complex_, field)  # raises on any disagreement
    return complex_, cert


def _search_parallel(seed, budget: int, k: int, n: int, field: FieldSpec, jobs: int):
    workers = min(jobs, os.cpu_count() or 1)
    block = max(workers * 4, 16)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        start = 0
        while start < budget:
            stop = min(start + block, budget)
            results = list(pool.map(_search_attempt,
                                    [seed] * (stop - start), range(start, stop),
                                    [k] * (stop - start), [n] * (stop - start),
                                    [field] * (stop - start)))
            for res in results:  # in restart order: lowest index wins
                if res is not None:
                    return res
            start = stop
    return None


@dataclass(frozen=True)
class TopologyClass:
    """Homeomorphism type of a certified handle quotient."""

    kind: str  # "S3" | "orientable-handle-sum" | "nonorientable-handle-sum"
    k: int

    def __str__(self) -> str:
        return self.kind if self.k == 0 else f"{self.kind}({self.k})"


def classify_topology(m: Complex, cert: Certificate) -> TopologyClass:
    """S3 for an empty certificate; otherwise the k-fold handle sum, split by
    rational orientability.  The certificate must replay onto ``m``."""
    from .stacked import verify_stacked_certificate

    v = verify_stacked_certificate(m, cert)
    if not v.ok:
        raise PreconditionError(f"certificate does not verify: {v.detail}")
    k = len(cert.steps)
    if k == 0:
        return TopologyClass("S3", 0)
    if is_orientable(m, QQ):
        return TopologyClass("orientable-handle-sum", k)
    return TopologyClass("nonorientable-handle-sum", k)
