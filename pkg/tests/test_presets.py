"""The worked examples: commutator relations, the regular-representation
construction, and the non-closed image."""

import pytest

from ringline import presets
from ringline.elemgrp import E_word, Mat2
from ringline.presets import eps_indices, example_e, example_f, example_g, ring_preset


def test_corpus_and_map_orders_resolve():
    assert len(presets.corpus_rings()) == 6
    maps = presets.jordan_corpus()
    assert len(maps) == len(presets.MAP_ORDER)


def test_eps_indices_bm3():
    ring = ring_preset("bm3")
    e1, e2, e3 = eps_indices(ring)
    assert ring.mul(e1, e2) == e3


def test_eps_indices_rejects_other_kinds():
    with pytest.raises(ValueError):
        eps_indices(ring_preset("zmod4"))


def test_commutator_collapse_and_survival():
    """E(eps1) and E(eps3) commute; E(eps1) against E(eps2) leaves the
    diagonal matrix with entry 1 - eps3 on both slots."""
    out = example_e("gf2")
    recs = {r["name"]: r for r in out["records"]}
    assert recs["commutator-e1-e3"]["passed"]
    assert recs["commutator-e1-e2"]["passed"]

    ring = out["ring"]
    e1, e2, e3 = eps_indices(ring)
    c = E_word(ring, (e1, e2, ring.neg(e1), ring.neg(e2)))
    want = Mat2.diag(ring, ring.sub(ring.one, e3), ring.sub(ring.one, e3))
    assert c.key() == want.key()
    assert not c.is_identity()


def test_relation_group_witnesses():
    out = example_e("gf2")
    recs = {r["name"]: r for r in out["records"]}
    assert recs["nalpha-contains-diag"]["passed"]
    assert recs["nalpha-in-centre"]["passed"]
    assert recs["no-induced-group-map"]["passed"]
    assert out["nalpha"].all_scalar_central


def test_example_e_over_gf3():
    out = example_e("gf3", include_nalpha=False)
    assert all(r["passed"] for r in out["records"])


def test_no_induced_group_map_witness_pair():
    """Two generator sequences with equal word products whose images under
    the swap map have different products: the obstruction to a group-level
    extension of the map."""
    out = example_e("gf2")
    ring, jmap = out["ring"], out["jmap"]
    e1, e2, e3 = eps_indices(ring)
    T = (e1, e3, ring.neg(e1), ring.neg(e3))
    V = (ring.zero,) * 4
    assert E_word(ring, T).key() == E_word(ring, V).key()
    aT = tuple(jmap.apply(t) for t in T)
    aV = tuple(jmap.apply(t) for t in V)
    assert E_word(ring, aT).key() != E_word(ring, aV).key()


def test_regular_representation_first_row():
    out = example_f()
    recs = {r["name"]: r for r in out["records"]}
    assert recs["rho-first-row"]["passed"]
    assert recs["nbeta-element"]["passed"]


def test_conjugate_escapes_diagonal():
    out = example_f()
    recs = {r["name"]: r for r in out["records"]}
    assert recs["nonnormal-conjugate"]["passed"]
    assert "r_index" in recs["nonnormal-conjugate"]["witness"]


def test_dropped_generator_image_is_not_closed():
    out = example_g()
    (rec,) = out["records"]
    assert rec["passed"]
    assert rec["name"] == "image-not-closed"


def test_thm52_instances_shape():
    insts = presets.thm52_instances()
    assert len(insts) == 3
    expectations = {(i["expect_preserved"], i["expect_condition"]) for i in insts}
    assert expectations == {(True, True), (False, False)}
    names = [i["name"] for i in insts]
    assert len(set(names)) == 3


def test_frobenius_map_is_automorphism():
    jmap = presets.frobenius_map()
    assert jmap.is_homomorphism
    ring = jmap.domain
    for x in range(4):
        assert jmap.apply(x) == ring.mul(x, x)


def test_map_preset_cache():
    assert presets.map_preset("identity@gf4") is presets.map_preset("identity@gf4")
