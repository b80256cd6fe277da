"""Tightness deciders: definitional subset scan, the polynomial 3-manifold
criterion, the closed-surface criterion, and the surface f-vector arithmetic.

The brute-force decider enumerates induced subcomplexes by increasing vertex
count (then lexicographically) and stops at the first injectivity failure,
so the reported witness is deterministic.  The fast 3-manifold decider
checks orientability together with (f0-4)(f0-5) = 20*beta_1 over the field;
cross-validation of the two is the headline regression test and raises if
they ever disagree.
"""

from __future__ import annotations

import itertools
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional

from .complexes import Complex, PreconditionError, verify_closed_manifold
from .homology import betti, chain_data, induced_map_injective
from .linalg import FieldSpec

BRUTE_FORCE_VERTEX_CAP = 30
# Below this many subsets a parallel scan costs more than it saves.
PARALLEL_MIN_SUBSETS = 1 << 14
_CHUNK = 2048


class InternalInconsistencyError(RuntimeError):
    """The two tightness deciders disagreed; carries both reports."""

    def __init__(self, brute: "TightnessReport", fast: "TightnessReport"):
        super().__init__(
            f"tightness deciders disagree: brute={brute.verdict} fast={fast.verdict}")
        self.brute = brute
        self.fast = fast


@dataclass(frozen=True)
class TightnessReport:
    """Outcome of one tightness decision.

    ``witness`` is a ``(vertex subset, degree)`` pair and is present exactly
    when the brute-force method fails; the fast and surface methods record
    the data their criterion evaluated instead.
    """

    verdict: bool
    method: str  # "brute" | "fast-3manifold" | "surface"
    field: FieldSpec
    f_vector: tuple
    witness: Optional[tuple] = None
    orientable: Optional[bool] = None
    beta1: Optional[int] = None
    neighbourly: Optional[bool] = None
    subsets_scanned: int = 0
    elapsed: float = 0.0


def _subsets(vertices: tuple):
    n = len(vertices)
    for size in range(2, n):
        yield from itertools.combinations(vertices, size)


_WORKER: dict = {}


def _init_worker(x: Complex, field: FieldSpec) -> None:
    _WORKER["x"] = x
    _WORKER["field"] = field
    chain_data(x, field)


def _scan_chunk(chunk: list) -> Optional[tuple]:
    x = _WORKER["x"]
    field = _WORKER["field"]
    for j, w in enumerate(chunk):
        v = induced_map_injective(x, w, field)
        if not v.ok:
            return j, w, v.witness[0]
    return None


def is_tight_bruteforce(x: Complex, field: FieldSpec, *,
                        allow_exponential: bool = False,
                        jobs: Optional[int] = None) -> TightnessReport:
    """Definitional tightness: connectivity plus injectivity for every induced
    subcomplex on 2 <= |W| < f0 vertices (the full vertex set is trivially
    injective, singletons are automatic).

    Refuses more than 30 vertices unless ``allow_exponential`` is set.  With
    ``jobs`` > 1 large scans are sharded across processes; the merge keeps
    the first failure in enumeration order, so results do not depend on the
    worker count.
    """
    t0 = time.perf_counter()
    n = x.num_vertices
    if n == 0:
        raise PreconditionError("tightness needs a nonempty complex")
    if n > BRUTE_FORCE_VERTEX_CAP and not allow_exponential:
        raise PreconditionError(
            f"{n} vertices means 2**{n} subsets; pass allow_exponential=True "
            "(CLI: --i-know-this-is-exponential) to scan anyway")
    if not x.is_connected():
        return TightnessReport(False, "brute", field, x.f_vector,
                               witness=(x.vertices, 0),
                               subsets_scanned=0,
                               elapsed=time.perf_counter() - t0)
    chain_data(x, field)
    total = (1 << n) - n - 2 if n >= 2 else 0
    workers = jobs if jobs is not None else (os.cpu_count() or 1)
    if workers > 1 and total >= PARALLEL_MIN_SUBSETS:
        failure = _scan_parallel(x, field, workers)
    else:
        failure = None
        for i, w in enumerate(_subsets(x.vertices)):
            v = induced_map_injective(x, w, field)
            if not v.ok:
                failure = (i, w, v.witness[0])
                break
    elapsed = time.perf_counter() - t0
    if failure is None:
        return TightnessReport(True, "brute", field, x.f_vector,
                               subsets_scanned=total, elapsed=elapsed)
    idx, w, degree = failure
    return TightnessReport(False, "brute", field, x.f_vector,
                           witness=(w, degree), subsets_scanned=idx + 1,
                           elapsed=elapsed)


def _scan_parallel(x: Complex, field: FieldSpec, workers: int) -> Optional[tuple]:
    gen = _subsets(x.vertices)
    offset = 0
    pending: list = []
    with ProcessPoolExecutor(max_workers=workers, initializer=_init_worker,
                             initargs=(x, field)) as pool:
        done = False
        while not done or pending:
            while not done and len(pending) < 2 * workers:
                chunk = list(itertools.islice(gen, _CHUNK))
                if not chunk:
                    done = True
                    break
                pending.append((offset, pool.submit(_scan_chunk, chunk)))
                offset += len(chunk)
            if not pending:
                break
            base, fut = pending.pop(0)
            res = fut.result()
            if res is not None:
                for _, other in pending:
                    other.cancel()
                j, w, degree = res
                return base + j, w, degree
    return None


def is_tight_fast_3manifold(x: Complex, field: FieldSpec) -> TightnessReport:
    """Polynomial-time tightness for closed 3-manifolds: orientable over the
    field and (f0-4)(f0-5) == 20*beta_1.  Validates its own precondition
    rather than trusting the caller; the criterion is false for
    non-manifolds."""
    t0 = time.perf_counter()
    v = verify_closed_manifold(x)
    if not v.ok or x.dim != 3:
        raise PreconditionError(
            f"the fast criterion applies to closed 3-manifolds only: {v.detail or 'dimension ' + str(x.dim)}")
    b = betti(x, field)
    orientable = b[3] > 0
    f0 = x.f_vector[0]
    verdict = orientable and (f0 - 4) * (f0 - 5) == 20 * b[1]
    return TightnessReport(verdict, "fast-3manifold", field, x.f_vector,
                           orientable=orientable, beta1=b[1],
                           elapsed=time.perf_counter() - t0)


def is_tight_surface(x: Complex, field: FieldSpec) -> TightnessReport:
    """Closed-surface tightness: orientable over the field and neighbourly."""
    t0 = time.perf_counter()
    v = verify_closed_manifold(x)
    if not v.ok or x.dim != 2:
        raise PreconditionError(
            f"the surface criterion applies to closed 2-manifolds only: {v.detail or 'dimension ' + str(x.dim)}")
    orientable = betti(x, field)[2] > 0
    neigh = x.is_neighbourly()
    return TightnessReport(orientable and neigh, "surface", field, x.f_vector,
                           orientable=orientable, neighbourly=neigh,
                           elapsed=time.perf_counter() - t0)


@dataclass(frozen=True)
class SurfaceFVector:
    """Forced f-vector of a closed-surface triangulation, plus feasibility."""

    f_vector: tuple
    feasible: bool
    min_f0: int


def surface_fvector_bounds(chi: int, f0: int) -> SurfaceFVector:
    """For a closed surface of Euler characteristic chi, the f-vector is
    forced by f0: f1 = 3(f0-chi) and f2 = 2(f0-chi).  Feasibility needs
    f1 <= C(f0,2) — equivalently f0(f0-7) >= -6chi — and f2 <= C(f0,3).
    ``min_f0`` is the least vertex count passing both constraints."""
    if chi > 2:
        raise ValueError("closed surfaces have Euler characteristic at most 2")
    if f0 < 3:
        raise ValueError("need at least 3 vertices")

    def forced(n: int) -> tuple:
        return n, 3 * (n - chi), 2 * (n - chi)

    def ok(n: int) -> bool:
        _, f1, f2 = forced(n)
        return f1 <= math.comb(n, 2) and f2 <= math.comb(n, 3)

    n = 3
    while not ok(n):
        n += 1
    return SurfaceFVector(forced(f0), ok(f0), n)


@dataclass(frozen=True)
class CrossValidation:
    verdict: bool
    brute: TightnessReport
    fast: TightnessReport


def cross_validate(x: Complex, field: FieldSpec, *,
                   allow_exponential: bool = False,
                   jobs: Optional[int] = None) -> CrossValidation:
    """Run the definitional and the fast decider on a closed 3-manifold and
    demand identical verdicts.  A disagreement raises — it would mean a bug,
    never a mathematical possibility."""
    fast = is_tight_fast_3manifold(x, field)
    brute = is_tight_bruteforce(x, field, allow_exponential=allow_exponential, jobs=jobs)
    if fast.verdict != brute.verdict:
        raise InternalInconsistencyError(brute, fast)
    return CrossValidation(brute.verdict, brute, fast)
