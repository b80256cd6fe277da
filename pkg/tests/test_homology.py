import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tighttri import (Complex, PreconditionError, betti, boundary_matrix,
                      catalog, chain_data, from_facets, induced_map_injective,
                      is_orientable)
from tighttri.linalg import GF2, QQ, FieldSpec, dim_sum

FIELDS = [QQ, GF2, FieldSpec.gf(3), FieldSpec.gf(5)]


@st.composite
def small_complexes(draw, max_vertices=6):
    n = draw(st.integers(min_value=1, max_value=max_vertices))
    facets = draw(st.lists(
        st.lists(st.integers(0, n - 1), min_size=1, max_size=4, unique=True),
        min_size=1, max_size=6))
    return Complex.from_facets(facets)


class TestBoundaryMatrix:
    def test_single_edge_signs(self):
        x = from_facets([(3, 7)])
        m = boundary_matrix(x, 1, QQ)
        # columns follow the sorted vertex order (3), (7); dropping the first
        # vertex carries the positive sign
        assert m.to_lists() == [[-1, 1]]
        assert boundary_matrix(x, 1, GF2).to_lists() == [[1, 1]]

    def test_boundary_of_boundary_is_zero(self):
        x = catalog.boundary_simplex(3)
        for field in FIELDS:
            d2 = boundary_matrix(x, 2, field)
            d1 = boundary_matrix(x, 1, field)
            assert d2.matmul(d1).is_zero()

    def test_projective_plane_d2_rank_over_gf2(self):
        # chi = 1 with beta_0 = beta_2 = 1 over GF(2) forces rank 9
        assert boundary_matrix(catalog.projective_plane_6(), 2, GF2).rank() == 9

    def test_degree_out_of_range(self):
        with pytest.raises(ValueError):
            boundary_matrix(catalog.boundary_simplex(3), 3, QQ)

    @settings(max_examples=40, deadline=None)
    @given(small_complexes(), st.sampled_from(FIELDS))
    def test_chain_complex_identity(self, x, field):
        for k in range(2, x.dim + 1):
            dk = boundary_matrix(x, k, field)
            dk1 = boundary_matrix(x, k - 1, field)
            assert dk.matmul(dk1).is_zero()


class TestBetti:
    def test_three_sphere(self):
        assert betti(catalog.boundary_simplex(4), QQ) == (1, 0, 0, 1)
        assert betti(catalog.boundary_simplex(4), GF2) == (1, 0, 0, 1)

    def test_projective_plane(self):
        rp2 = catalog.projective_plane_6()
        assert betti(rp2, GF2) == (1, 1, 1)
        assert betti(rp2, QQ) == (1, 0, 0)
        assert betti(rp2, FieldSpec.gf(3)) == (1, 0, 0)

    def test_torus(self):
        assert betti(catalog.torus_7(), QQ) == (1, 2, 1)

    def test_icosahedron_is_a_2_sphere(self):
        assert betti(catalog.icosahedron(), QQ) == (1, 0, 1)

    def test_moebius_band_is_a_circle(self):
        assert betti(catalog.moebius_band_5(), QQ) == (1, 1, 0)

    def test_tight_quotient_beta1(self, tight9):
        m9, _ = tight9
        b = betti(m9, GF2)
        assert b[1] == 1
        assert (9 - 4) * (9 - 5) == 20 * b[1]

    @settings(max_examples=40, deadline=None)
    @given(small_complexes(), st.sampled_from(FIELDS))
    def test_euler_poincare(self, x, field):
        b = betti(x, field)
        f = x.f_vector
        assert sum((-1) ** k * b[k] for k in range(len(b))) == \
            sum((-1) ** k * f[k] for k in range(len(f)))

    @settings(max_examples=25, deadline=None)
    @given(small_complexes(), st.sampled_from(FIELDS), st.randoms(use_true_random=False))
    def test_relabel_invariance(self, x, field, rnd):
        labels = sorted(x.vertex_set)
        shuffled = list(labels)
        rnd.shuffle(shuffled)
        perm = dict(zip(labels, shuffled))
        y = Complex.from_facets([tuple(perm[v] for v in f) for f in x.facets])
        assert betti(x, field) == betti(y, field)


class TestOrientability:
    def test_three_sphere(self):
        assert is_orientable(catalog.boundary_simplex(4), QQ)

    def test_projective_plane(self):
        rp2 = catalog.projective_plane_6()
        assert not is_orientable(rp2, QQ)
        assert is_orientable(rp2, GF2)

    def test_requires_closed_manifold(self):
        with pytest.raises(PreconditionError):
            is_orientable(catalog.moebius_band_5(), QQ)

    def test_mod2_fundamental_class_on_corpus(self, corpus3):
        for name, x in corpus3:
            assert is_orientable(x, GF2), name

    def test_poincare_duality_mod2_on_corpus(self, corpus3):
        for name, x in corpus3:
            b = betti(x, GF2)
            assert b[0] == 1 and b[3] == 1 and b[1] == b[2], name


class TestInducedMapInjective:
    def test_full_vertex_set(self):
        x = catalog.projective_plane_6()
        assert induced_map_injective(x, x.vertex_set, GF2).ok

    def test_three_vertices_of_tetrahedron_boundary(self):
        # every 3-subset induces a solid triangle (the 2-face is a face), so
        # the map is injective; the boundary of the tetrahedron is tight
        x = catalog.boundary_simplex(3)
        for w in itertools.combinations(range(4), 3):
            assert induced_map_injective(x, w, QQ).ok

    def test_empty_triangle_fails_over_q(self):
        # {0,1,3} spans no triangle of the projective plane: a hollow 3-cycle
        # whose cycle bounds ambiently over Q (H_1 = 0) but not inside itself
        x = catalog.projective_plane_6()
        assert not x.has_face((0, 1, 3))
        v = induced_map_injective(x, (0, 1, 3), QQ)
        assert not v.ok
        degree, chain = v.witness
        assert degree == 1
        faces = [f for f, _ in chain]
        assert set(faces) == {(0, 1), (0, 3), (1, 3)}

    def test_empty_triangle_survives_over_gf2(self):
        x = catalog.projective_plane_6()
        assert induced_map_injective(x, (0, 1, 3), GF2).ok

    def test_witness_chain_bounds_ambiently_but_not_locally(self):
        x = catalog.projective_plane_6()
        v = induced_map_injective(x, (0, 1, 3), QQ)
        degree, chain = v.witness
        cd = chain_data(x, QQ)
        vec = [0] * len(x.faces(degree))
        for f, c in chain:
            vec[cd.index[degree][f]] = c
        amb = cd.boundary(degree + 1).rowspace_basis()
        assert not any(amb.reduce(vec))  # bounds in the ambient complex
        y = x.induced((0, 1, 3))
        assert y.dim == 1  # no triangles: nothing bounds inside

    def test_disconnected_subset_of_connected_complex(self):
        x = catalog.cycle_complex(6)
        v = induced_map_injective(x, (0, 3), QQ)
        assert not v.ok and v.witness[0] == 0

    def test_disconnected_ambient_complex(self):
        hexagons = [(i, (i + 1) % 6) for i in range(6)]
        x = from_facets(hexagons + [(a + 10, b + 10) for a, b in hexagons])
        # components of the subset landing in distinct ambient components: fine
        assert induced_map_injective(x, (0, 10), QQ).ok
        # two separated vertices of the same hexagon: both 0-cycles bound there
        assert not induced_map_injective(x, (0, 3), QQ).ok

    def test_unknown_vertices_rejected(self):
        with pytest.raises(ValueError):
            induced_map_injective(catalog.cycle_complex(3), (0, 9), QQ)

    def test_projective_plane_all_subsets_tight_over_gf2(self):
        x = catalog.projective_plane_6()
        for size in range(2, 6):
            for w in itertools.combinations(range(6), size):
                assert induced_map_injective(x, w, GF2).ok, w

    @settings(max_examples=40, deadline=None)
    @given(small_complexes(), st.sampled_from(FIELDS), st.data())
    def test_homologically_trivial_connected_subcomplexes_inject(self, x, field, data):
        if x.num_vertices < 2:
            return
        w = data.draw(st.sets(st.sampled_from(sorted(x.vertex_set)),
                              min_size=2, max_size=x.num_vertices))
        y = x.induced(w)
        if y.dim < 0 or not y.is_connected():
            return
        b = betti(y, field)
        if all(b[k] == 0 for k in range(1, len(b))):
            assert induced_map_injective(x, w, field).ok

    def test_degree_zero_matches_linear_algebra_oracle(self):
        # on graphs only degree 0 matters (no 2-faces, nothing bounds), so the
        # component fast path must agree with the rank formula
        rng = random.Random(99)
        for _ in range(40):
            n = rng.randrange(4, 9)
            edges = [(i, j) for i in range(n) for j in range(i + 1, n)
                     if rng.random() < 0.35]
            if not edges:
                continue
            x = Complex.from_facets(edges + [(v,) for v in range(n)])
            verts = sorted(x.vertex_set)
            w = tuple(sorted(rng.sample(verts, rng.randrange(2, len(verts) + 1))))
            got = induced_map_injective(x, w, GF2).ok
            y = x.induced(w)
            cdx, cdy = chain_data(x, GF2), chain_data(y, GF2)
            z0 = cdy.boundary(0).left_nullspace()
            emb = z0.embed_columns(len(x.faces(0)),
                                   [cdx.index[0][f] for f in y.faces(0)])
            b0x = cdx.boundary(1) if x.dim >= 1 else None
            inter = z0.nrows + b0x.rank() - dim_sum(emb, b0x)
            assert got == (inter == cdy.boundary(1).rank() if y.dim >= 1 else inter == 0)
