"""The projective line: points, distant graph, induced maps, harmonicity."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ringline import elemgrp, projline
from ringline.elemgrp import E_word, Mat2, is_invertible
from ringline.presets import corpus_rings, map_preset, ring_preset
from ringline.projline import (
    distant,
    enumerate_line,
    harmonic,
    induced_map,
    line_context,
)

POINT_COUNTS = {
    "zmod4": 6,
    "zmod6": 12,
    "gf4": 5,
    "m2f2": 35,
    "bm2": 24,
    "bm3": 108,
    "m2f2xm2f2": 1225,
}


@pytest.mark.parametrize("rname", sorted(POINT_COUNTS))
def test_point_counts(rname):
    line = enumerate_line(ring_preset(rname))
    assert len(line) == POINT_COUNTS[rname]


def test_zmod4_point_reps_frozen():
    line = enumerate_line(ring_preset("zmod4"))
    reps = [tuple(int(x) for x in line.reps[i]) for i in range(len(line))]
    assert reps == [(0, 1), (1, 0), (1, 1), (1, 2), (1, 3), (2, 1)]


def test_point_membership_against_unit_multiples():
    """Independent oracle for point equality: R(a, b) = R(c, d) exactly when
    (c, d) = (ua, ub) for a unit u.  Checked pairwise on the zmod(6) line."""
    ring = ring_preset("zmod6")
    line = enumerate_line(ring)
    pairs = [
        (a, b)
        for a in range(6)
        for b in range(6)
        if int(line.pair_point[a, b]) >= 0
    ]
    for a, b in pairs:
        i = int(line.pair_point[a, b])
        for c, d in pairs:
            j = int(line.pair_point[c, d])
            same = any(
                (ring.mul(u, a), ring.mul(u, b)) == (c, d) for u in ring.units()
            )
            assert (i == j) == same, ((a, b), (c, d))


def test_admissibility_zmod6():
    line = enumerate_line(ring_preset("zmod6"))
    assert int(line.pair_point[2, 2]) < 0  # not unimodular
    assert int(line.pair_point[2, 3]) >= 0
    assert int(line.pair_point[0, 0]) < 0


def test_completion_witnesses_are_invertible_with_point_first_row():
    line = enumerate_line(ring_preset("zmod6"))
    for i in range(len(line)):
        M = line.completions[i]
        assert is_invertible(M)
        assert (M.a, M.b) == (int(line.reps[i, 0]), int(line.reps[i, 1]))


EDGES = {"zmod4": 12, "zmod6": 36, "gf4": 10, "bm2": 192, "m2f2": 280}


@pytest.mark.parametrize("rname", sorted(EDGES))
def test_distant_graph_edges_and_connectivity(rname):
    ctx = line_context(ring_preset(rname))
    assert int(ctx.graph.adj.sum()) // 2 == EDGES[rname]
    assert ctx.graph.n_components == 1
    assert max(int(d) for d in ctx.graph.diameters) <= 2


def test_gf4_line_is_complete_graph():
    ctx = line_context(ring_preset("gf4"))
    n = len(ctx.line)
    assert int(ctx.graph.adj.sum()) == n * (n - 1)
    assert list(ctx.graph.diameters) == [1]


def test_distant_matches_stacked_invertibility():
    ring = ring_preset("zmod4")
    line = enumerate_line(ring)
    for i in range(len(line)):
        for j in range(len(line)):
            M = Mat2(
                ring,
                int(line.reps[i, 0]),
                int(line.reps[i, 1]),
                int(line.reps[j, 0]),
                int(line.reps[j, 1]),
            )
            assert distant(line, i, j) == is_invertible(M)


def test_point_action_matches_direct_arithmetic():
    ring = ring_preset("zmod6")
    line = enumerate_line(ring)
    act = projline.point_action(line)
    for p in range(len(line)):
        a, b = int(line.reps[p, 0]), int(line.reps[p, 1])
        for t in range(ring.size):
            x = ring.sub(ring.mul(a, t), b)
            assert int(act[p, t]) == int(line.pair_point[x, a])


def test_two_transitive_normalizer_moves_pairs_to_frame():
    ctx = line_context(ring_preset("zmod6"))
    line, bc = ctx.line, ctx.base
    act = bc.act
    base, zero_pt = line.base, line.point_of(0, 1)
    found = 0
    for i in range(len(line)):
        for j in range(len(line)):
            if i == j or not distant(line, i, j):
                continue
            word = projline.two_transitive_normalizer(bc, i, j)
            p, q = i, j
            for t in word:
                p, q = int(act[p, t]), int(act[q, t])
            assert (p, q) == (base, zero_pt)
            found += 1
    assert found == 72  # ordered distant pairs


def test_component_word_witnesses():
    ctx = line_context(ring_preset("bm2"))
    for p in range(len(ctx.line)):
        word = ctx.base.word(p)
        q = ctx.line.base
        for t in word:
            q = int(ctx.base.act[q, t])
        assert q == p


def test_harmonic_standard_quadruple():
    ring = ring_preset("zmod4")
    line = enumerate_line(ring)
    inf, zero = line.point_of(1, 0), line.point_of(0, 1)
    for u in (1, 3):
        assert harmonic(line, inf, zero, line.point_of(u, 1), line.point_of(ring.neg(u), 1))
    # in odd characteristic a repeated point is never the harmonic partner
    assert not harmonic(line, inf, zero, line.point_of(1, 1), line.point_of(1, 1))


def test_harmonic_in_characteristic_two_needs_equal_points():
    ring = ring_preset("bm2")
    line = enumerate_line(ring)
    inf, zero = line.point_of(1, 0), line.point_of(0, 1)
    u = line.point_of(1, 1)
    v = line.point_of(ring.element_index((1, 1, 0, 0)), 1)
    assert harmonic(line, inf, zero, u, u)
    assert not harmonic(line, inf, zero, u, v)


def test_harmonic_rejects_non_distant_input():
    ring = ring_preset("zmod4")
    line = enumerate_line(ring)
    inf, zero = line.point_of(1, 0), line.point_of(0, 1)
    with pytest.raises(ValueError):
        harmonic(line, inf, zero, line.point_of(2, 1), line.point_of(1, 1))


def test_induced_map_identity_is_identity_table():
    im = induced_map(map_preset("identity@gf4"))
    assert np.array_equal(im.table, np.arange(5))


def test_induced_map_reduction_table_frozen():
    im = induced_map(map_preset("reduce@zmod4"))
    assert [int(x) for x in im.table] == [0, 1, 2, 1, 2, 0]
    assert im.maps_onto_c2


def test_induced_map_certificate_names():
    im = induced_map(map_preset("transpose@m2f2"))
    names = [r["name"] for r in im.certificate]
    assert names[:3] == ["fundamental-triple", "affine-t1", "affine-1t"]
    assert "single-formula[m=2]" in names
    assert all(r["passed"] for r in im.certificate)


def test_equivariance_records():
    im = induced_map(map_preset("herzer-swap@bm2"))
    recs = projline.check_equivariance(im)
    assert [r["name"] for r in recs] == ["equivariance-diagram", "second-row[len<=2]"]
    assert all(r["passed"] for r in recs)


def test_harmonic_preservation_records():
    im = induced_map(map_preset("transpose@m2f2"))
    recs = projline.check_prop45(im)
    by_name = {r["name"]: r for r in recs}
    assert by_name["distant-pairs"]["passed"]
    assert by_name["distant-pairs"]["checked"] == 560
    assert by_name["harmonic-quadruples"]["passed"]
    assert by_name["harmonic-quadruples"]["mode"] == "exhaustive"
    assert by_name["harmonic-quadruples"]["checked"] == 3360
    assert by_name["distance-contraction"]["passed"]


def test_entrywise_point_map_for_homomorphism():
    jmap = map_preset("reduce@zmod4")
    dom = enumerate_line(jmap.domain)
    img = enumerate_line(jmap.codomain)
    table = projline.entrywise_point_map(jmap, dom, img)
    im = induced_map(jmap)
    assert np.array_equal(table, im.table)


def test_entrywise_point_map_rejects_proper_maps():
    jmap = map_preset("herzer-swap@bm2")
    dom = enumerate_line(jmap.domain)
    with pytest.raises(ValueError):
        projline.entrywise_point_map(jmap, dom, dom)


def test_alpha_star_star_is_multiplicative_for_antihomomorphism():
    jmap = map_preset("transpose@m2f2")
    ring = jmap.domain
    group = elemgrp.enumerate_E2(ring)
    rng = np.random.default_rng(4)
    for _ in range(40):
        A = group.mat(int(rng.integers(len(group))))
        B = group.mat(int(rng.integers(len(group))))
        lhs = projline.alpha_star_star(jmap, A * B)
        rhs = projline.alpha_star_star(jmap, A) * projline.alpha_star_star(jmap, B)
        assert lhs.key() == rhs.key()
    I = Mat2.identity(ring)
    assert projline.alpha_star_star(jmap, I).is_identity()


def test_extend_map_with_artificial_partition():
    """Splitting the connected line by hand and translating the second part
    through its own frame must reproduce the identity point map."""
    im = induced_map(map_preset("identity@gf4"))
    line = im.dom.line
    ids = list(range(len(line)))
    part2 = [i for i in ids if i != line.base][:2]
    part1 = [i for i in ids if i not in part2]
    A = line.completions[part2[0]]
    out = projline.extend_map(im, choices={1: (A, A)}, components=[part1, part2])
    assert np.array_equal(out, np.arange(len(line)))


def test_extend_map_requires_choices_for_extra_parts():
    im = induced_map(map_preset("identity@gf4"))
    line = im.dom.line
    part2 = [i for i in range(len(line)) if i != line.base][:2]
    part1 = [i for i in range(len(line)) if i not in part2]
    with pytest.raises(ValueError):
        projline.extend_map(im, components=[part1, part2])


def test_extend_map_default_is_full_induced_table():
    im = induced_map(map_preset("herzer-swap@bm3"))
    out = projline.extend_map(im)
    assert np.array_equal(out, im.table)


def test_embed_f4_line_into_matrix_line():
    from ringline.rings import subring_as_ring, subring_closure

    parent_ring = ring_preset("m2f2")
    omega = parent_ring.element_index(((0, 1), (1, 1)))
    elems, _ = subring_closure(parent_ring, (omega,))
    sub, elems_tuple, _ = subring_as_ring(parent_ring, sorted(elems))
    parent = enumerate_line(parent_ring)
    sub_line = enumerate_line(sub)
    emb = projline.embed_subline(parent, sub_line, elems_tuple, label="f4")
    assert len(emb) == 5
    assert len(set(emb.values())) == 5


def test_line_context_is_cached():
    ring = ring_preset("zmod4")
    assert line_context(ring) is line_context(ring)


@given(st.integers(0, 5), st.integers(0, 5))
@settings(max_examples=36, deadline=None)
def test_distant_is_symmetric(i, j):
    line = enumerate_line(ring_preset("zmod4"))
    assert distant(line, i, j) == distant(line, j, i)
