"""Jordan map validation, classification, and the polynomial transfer checks."""

import numpy as np
import pytest

from ringline import freealg, jordan
from ringline.jordan import (
    AdditivityError,
    JordanLawError,
    MapSpec,
    UnitalityError,
    build_map,
)
from ringline.presets import jordan_corpus, map_preset, ring_preset


def test_identity_map_classification():
    jmap = map_preset("identity@gf4")
    assert jmap.is_homomorphism
    assert jmap.is_antihomomorphism  # the ring is commutative
    assert not jmap.proper
    assert jmap.image_closed


def test_reduction_map_is_onto_homomorphism():
    jmap = map_preset("reduce@zmod4")
    assert jmap.is_homomorphism
    assert jmap.codomain.size == 2
    assert tuple(jmap.image) == (0, 1)


def test_transpose_is_antihomomorphism_only():
    jmap = map_preset("transpose@m2f2")
    assert jmap.is_antihomomorphism
    assert not jmap.is_homomorphism
    assert jmap.anti_witness is None
    assert jmap.homo_witness is not None
    x, y = jmap.homo_witness
    R = jmap.domain
    assert jmap.apply(R.mul(x, y)) != R.mul(jmap.apply(x), jmap.apply(y))


def test_swap_involution_is_proper_jordan():
    jmap = map_preset("herzer-swap@bm2")
    assert jmap.proper
    assert not jmap.is_homomorphism
    assert not jmap.is_antihomomorphism
    assert jmap.image_closed


def test_product_of_homo_and_anti_is_proper():
    jmap = map_preset("product@m2f2xm2f2")
    assert jmap.proper


def test_dropped_generator_leaves_image_open():
    """Sending the third generator to zero keeps a subspace image whose
    closure regains that generator as a product of the other two."""
    jmap = map_preset("herzer-drop@bm2")
    assert not jmap.image_closed
    op, x, y, z = jmap.closure_witness
    assert op == "mul"
    assert z not in jmap.image
    R = jmap.domain
    eps3 = R.element_index((0, 0, 0, 1))
    assert z == eps3


def test_build_map_rejects_non_additive_table():
    z4 = ring_preset("zmod4")
    with pytest.raises(AdditivityError):
        build_map(MapSpec.table((0, 1, 1, 1)), z4, z4)


def test_build_map_rejects_non_unital_table():
    z4 = ring_preset("zmod4")
    with pytest.raises(UnitalityError):
        build_map(MapSpec.table((0, 0, 0, 0)), z4, z4)


def _linear_table(ring, images):
    """Table of the additive map sending the k-th basis vector of a
    16-element F2-algebra to images[k] (row-major little-endian digits)."""
    vals = []
    for c in range(16):
        digits = [(c >> k) & 1 for k in range(4)]
        acc = ring.zero
        for bit, img in zip(digits, images):
            if bit:
                acc = ring.add(acc, img)
        vals.append(acc)
    return tuple(vals)


def test_build_map_rejects_jordan_law_violation():
    m = ring_preset("m2f2")
    e11 = m.element_index(((1, 0), (0, 0)))
    e12 = m.element_index(((0, 1), (0, 0)))
    e22 = m.element_index(((0, 0), (0, 1)))
    # additive and unital, but e21 -> e12 breaks (aba)^f = f(a) f(b) f(a)
    table = _linear_table(m, (e11, e12, e12, e22))
    with pytest.raises(JordanLawError):
        build_map(MapSpec.table(table), m, m)


def test_spec_dict_roundtrip():
    spec = MapSpec.herzer(((1, 0, 0), (0, 0, 1), (0, 1, 0)))
    assert MapSpec.from_dict(spec.to_dict()) == spec


def test_apply_seq_and_as_fn():
    jmap = map_preset("reduce@zmod4")
    assert jmap.apply_seq((0, 1, 2, 3)) == (0, 1, 0, 1)
    fn = jmap.as_fn()
    assert fn(3) == 1


def test_values_are_write_protected():
    jmap = map_preset("identity@gf4")
    with pytest.raises(ValueError):
        jmap.values[0] = 1


def test_j_polynomial_full_window_all_corpus():
    f = freealg.e_ij(1, 3) * freealg.te_ij(1, 3)
    for rec in jordan.test_j_polynomial(f, jordan_corpus(), max_seq_len=3, label="w3"):
        assert rec["passed"], rec
        assert rec["name"] == "j-polynomial[w3]"


def test_j_polynomial_detects_non_symmetric_failure():
    """e(1,2) = x1 x2 - 1 transfers only through actual homomorphisms, so the
    swap involution must produce a witness."""
    f = freealg.e_ij(1, 2)
    jmap = map_preset("herzer-swap@bm2")
    (rec,) = jordan.test_j_polynomial(f, [jmap], max_seq_len=2, label="e12")
    assert not rec["passed"]
    assert rec["witness"] is not None


def test_j_polynomial_passes_for_homomorphism_on_any_poly():
    f = freealg.e_ij(1, 2)
    jmap = map_preset("reduce@zmod4")
    (rec,) = jordan.test_j_polynomial(f, [jmap], max_seq_len=2, label="e12")
    assert rec["passed"]


def test_entry_transfer_records():
    for jmap in jordan_corpus():
        rec = jordan.test_thm_inv0(jmap, max_seq_len=3)
        assert rec["passed"], rec
        assert rec["name"] == "entry-transfer"


def test_unit_behavior_record():
    rec = jordan.verify_unit_behavior(map_preset("herzer-swap@bm3"))
    assert rec["passed"]
    assert rec["checked"] == 54


def test_compose_through_matrix_ring():
    """The composite with the right regular representation lands in the
    degree-4 matrix ring and stays a Jordan map."""
    from ringline.presets import example_f

    out = example_f()
    beta = out["beta"]
    assert beta.codomain.label == "matrix(gf(2),4)"
    assert beta.jordan_law


def test_word_batches_sampled_mode_is_deterministic():
    d1, m1 = jordan._word_batches(81, 4, budget=10**5, seed=0)
    d2, m2 = jordan._word_batches(81, 4, budget=10**5, seed=0)
    assert m1 == m2 == "sampled"
    assert np.array_equal(d1, d2)
