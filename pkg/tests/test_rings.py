"""Finite ring construction, tables, units, subrings, regular representation."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ringline import rings
from ringline.presets import ring_preset
from ringline.rings import NotAUnitError, RingSpec, build_ring, subring_as_ring, subring_closure


def test_zmod_matches_modular_arithmetic():
    ring = ring_preset("zmod6")
    for a in range(6):
        for b in range(6):
            assert ring.add(a, b) == (a + b) % 6
            assert ring.mul(a, b) == (a * b) % 6
        assert ring.neg(a) == (-a) % 6
    assert ring.characteristic() == 6


def test_zmod_units_and_inverses():
    ring = ring_preset("zmod6")
    assert ring.units() == (1, 5)
    assert ring.inverse(5) == 5
    with pytest.raises(NotAUnitError):
        ring.inverse(3)
    assert int(ring.inv_table[2]) == -1


def test_gf4_field_structure():
    ring = ring_preset("gf4")
    assert ring.size == 4
    assert ring.characteristic() == 2
    # every nonzero element is a unit, multiplicative group is cyclic of order 3
    assert set(ring.units()) == {1, 2, 3}
    g = 2
    acc, seen = ring.one, set()
    for _ in range(3):
        acc = ring.mul(acc, g)
        seen.add(acc)
    assert ring.mul(g, ring.mul(g, g)) == ring.one
    assert seen == {1, 2, 3}


def test_matrix_ring_m2f2():
    ring = ring_preset("m2f2")
    assert ring.size == 16
    # |GL2(F2)| = 6, centre of a full matrix ring is the scalars
    assert len(ring.units()) == 6
    assert len(ring.centre()) == 2
    assert ring.central_units() == (ring.one,)
    e12 = ring.element_index(((0, 1), (0, 0)))
    e21 = ring.element_index(((0, 0), (1, 0)))
    e11 = ring.element_index(((1, 0), (0, 0)))
    assert ring.mul(e12, e21) == e11
    assert ring.mul(e12, e12) == ring.zero


def test_matrix_element_index_flat_and_nested_agree():
    ring = ring_preset("m2f2")
    assert ring.element_index((1, 0, 1, 1)) == ring.element_index(((1, 0), (1, 1)))


def test_element_index_rejects_numpy_ints():
    ring = ring_preset("zmod4")
    with pytest.raises(ValueError):
        ring.element_index(np.int32(2))
    with pytest.raises(ValueError):
        ring.element_index(True)


def test_bm_structure_constants():
    """The three-generator truncated product: eps1*eps2 = eps3 = -eps2*eps1,
    squares vanish, and eps3 kills everything."""
    ring = ring_preset("bm3")
    e1 = ring.element_index((0, 1, 0, 0))
    e2 = ring.element_index((0, 0, 1, 0))
    e3 = ring.element_index((0, 0, 0, 1))
    assert ring.mul(e1, e2) == e3
    assert ring.mul(e2, e1) == ring.neg(e3)
    assert ring.mul(e1, e1) == ring.zero
    assert ring.mul(e2, e2) == ring.zero
    assert ring.mul(e1, e3) == ring.zero
    assert ring.mul(e3, e2) == ring.zero
    assert ring.characteristic() == 3


def test_bm_units_are_one_plus_nilpotent():
    # unit iff the scalar coordinate is nonzero: 2 * 27 = 54 over gf(3)
    ring = ring_preset("bm3")
    assert len(ring.units()) == 54
    ring2 = ring_preset("bm2")
    assert len(ring2.units()) == 8


def test_product_ring_componentwise():
    ring = ring_preset("m2f2xm2f2")
    assert ring.size == 256
    assert ring.mul_table is not None, "size 256 still gets tables"
    a = ring.element_index((3, 5))
    b = ring.element_index((7, 2))
    left = ring_preset("m2f2")
    want = ring.element_index((left.mul(3, 7), left.mul(5, 2)))
    assert ring.mul(a, b) == want


@given(st.integers(0, 80), st.integers(0, 80), st.integers(0, 80))
@settings(max_examples=80, deadline=None)
def test_bm3_ring_axioms_sampled(a, b, c):
    ring = ring_preset("bm3")
    assert ring.mul(a, ring.mul(b, c)) == ring.mul(ring.mul(a, b), c)
    assert ring.mul(a, ring.add(b, c)) == ring.add(ring.mul(a, b), ring.mul(a, c))
    assert ring.add(a, ring.neg(a)) == ring.zero


def test_element_names_are_distinct():
    ring = ring_preset("bm2")
    names = [ring.name(i) for i in range(ring.size)]
    assert len(set(names)) == ring.size


def test_subring_closure_finds_f4_inside_m2f2():
    ring = ring_preset("m2f2")
    omega = ring.element_index(((0, 1), (1, 1)))
    elems, was_closed = subring_closure(ring, (omega,))
    assert len(elems) == 4
    omega2 = ring.mul(omega, omega)
    assert elems == frozenset({ring.zero, ring.one, omega, omega2})


def test_subring_as_ring_ops_agree_with_parent():
    ring = ring_preset("m2f2")
    omega = ring.element_index(((0, 1), (1, 1)))
    elems, _ = subring_closure(ring, (omega,))
    sub, elems_tuple, from_parent = subring_as_ring(ring, sorted(elems))
    assert sub.size == 4
    for i in range(4):
        for j in range(4):
            pi, pj = elems_tuple[i], elems_tuple[j]
            assert elems_tuple[sub.mul(i, j)] == ring.mul(pi, pj)
            assert elems_tuple[sub.add(i, j)] == ring.add(pi, pj)
    assert from_parent[elems_tuple[2]] == 2


def test_regular_representation_rows():
    """Row r of a's image holds the coordinates of basis_r * a."""
    base = build_ring(RingSpec.gf(2, 1))
    ring = ring_preset("bm2")
    target, rep = rings.regular_representation(ring)
    e1 = ring.element_index((0, 1, 0, 0))
    img = int(rep[e1])
    digits = []
    x = img
    for _ in range(16):
        digits.append(x % 2)
        x //= 2
    # basis (1, eps1, eps2, eps3) times eps1: eps1, 0, -eps3, 0
    rows = [digits[0:4], digits[4:8], digits[8:12], digits[12:16]]
    assert rows[0] == [0, 1, 0, 0]
    assert rows[1] == [0, 0, 0, 0]
    assert rows[2] == [0, 0, 0, 1]  # -eps3 = eps3 over gf(2)
    assert rows[3] == [0, 0, 0, 0]


def test_regular_representation_is_multiplicative():
    ring = ring_preset("bm2")
    target, rep = rings.regular_representation(ring)
    assert int(rep[ring.one]) == target.one
    rng = np.random.default_rng(1)
    for _ in range(60):
        a, b = int(rng.integers(16)), int(rng.integers(16))
        assert int(rep[ring.mul(a, b)]) == target.mul(int(rep[a]), int(rep[b]))
        assert int(rep[ring.add(a, b)]) == target.add(int(rep[a]), int(rep[b]))


def test_ring_cache_returns_same_object():
    a = build_ring(RingSpec.zmod(6))
    b = build_ring(RingSpec.zmod(6))
    assert a is b


def test_spec_roundtrip_through_dict():
    spec = RingSpec.bm(RingSpec.gf(3, 1), 3)
    assert RingSpec.from_dict(spec.to_dict()) == spec
    spec2 = RingSpec.product(RingSpec.zmod(4), RingSpec.gf(2, 2))
    assert RingSpec.from_dict(spec2.to_dict()) == spec2
