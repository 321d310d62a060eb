"""Subfield search, chain enumeration, and the preservation criterion."""

import itertools

import numpy as np
import pytest

from ringline import chains as ch
from ringline.presets import map_preset, ring_preset, thm52_instances
from ringline.projline import distant, line_context
from ringline.rings import RingTooLargeError


def _subfield(ring, size):
    match = [k for k in ch.find_subfields(ring) if k.size == size]
    assert match, f"no subfield of size {size} in {ring.label}"
    return match[0]


def test_subfield_inventory():
    """zmod(4) and zmod(6) have none (the prime subring is not a field),
    the field and matrix rings have the prime field and one quartic field,
    the truncated product rings only their base field."""
    inv = {
        name: [(k.size, k.central) for k in ch.find_subfields(ring_preset(name))]
        for name in ("zmod4", "zmod6", "gf4", "m2f2", "bm2", "bm3")
    }
    assert inv["zmod4"] == []
    assert inv["zmod6"] == []
    assert inv["gf4"] == [(2, True), (4, True)]
    assert inv["m2f2"] == [(2, True), (4, False)]
    assert inv["bm2"] == [(2, True)]
    assert inv["bm3"] == [(3, True)]


def test_f4_inside_m2f2_is_inner_invariant():
    kf = _subfield(ring_preset("m2f2"), 4)
    assert kf.inner_invariant
    assert not kf.central


def test_subfield_contains_zero_and_one():
    for k in ch.find_subfields(ring_preset("gf4")):
        assert ring_preset("gf4").zero in k.elems
        assert ring_preset("gf4").one in k.elems


def test_is_subfield_rejects_non_closed_subsets():
    ring = ring_preset("zmod4")
    assert not ch._is_subfield(ring, (0, 1))  # 1 + 1 = 2 escapes
    assert not ch._is_subfield(ring, (0, 2))  # no identity
    ring2 = ring_preset("gf4")
    assert ch._is_subfield(ring2, (0, 1))


CHAIN_COUNTS = {("gf4", 2): 10, ("gf4", 4): 1, ("m2f2", 4): 56, ("bm2", 2): 512}


@pytest.mark.parametrize("rname,ksize", sorted(CHAIN_COUNTS))
def test_chain_counts_against_triple_incidence(rname, ksize):
    """Independent oracle: three pairwise distant points lie on exactly one
    chain, so #chains = #(ordered distant triples) / (s+1)s(s-1) with
    s = |K|.  The triple count comes straight off the adjacency matrix."""
    ring = ring_preset(rname)
    ctx = line_context(ring)
    kf = _subfield(ring, ksize)
    found = ch.enumerate_chains(ctx, kf)
    assert len(found) == CHAIN_COUNTS[(rname, ksize)]

    adj = ctx.graph.adj
    t3 = 0
    for i in range(len(ctx.line)):
        nb = np.nonzero(adj[i])[0]
        t3 += int(adj[np.ix_(nb, nb)].sum())
    per_chain = (ksize + 1) * ksize * (ksize - 1)
    assert len(found) * per_chain == t3


def test_every_chain_is_pairwise_distant_and_right_sized():
    ctx = line_context(ring_preset("bm2"))
    kf = _subfield(ring_preset("bm2"), 2)
    for chain in ch.enumerate_chains(ctx, kf):
        ids = chain.sorted_ids
        assert len(ids) == 3
        for i, j in itertools.combinations(ids, 2):
            assert distant(ctx.line, i, j)


def test_chain_witness_maps_standard_chain():
    """Each chain's witness matrix carries the standard subline onto it."""
    ring = ring_preset("gf4")
    ctx = line_context(ring)
    kf = _subfield(ring, 2)
    standard = ch._subline_ids(ctx.line, kf)
    for chain in ch.enumerate_chains(ctx, kf):
        M = chain.witness
        image = set()
        for p in standard:
            a, b = int(ctx.line.reps[p, 0]), int(ctx.line.reps[p, 1])
            x, y = M.act_row(a, b)
            image.add(int(ctx.line.pair_point[x, y]))
        assert frozenset(image) == chain.ids


def test_gf4_chains_are_exactly_the_triples():
    """Over a field every pair of distinct points is distant, so the chains
    for the prime subfield are all 3-subsets of the 5 points."""
    ctx = line_context(ring_preset("gf4"))
    kf = _subfield(ring_preset("gf4"), 2)
    got = {chain.ids for chain in ch.enumerate_chains(ctx, kf)}
    want = {frozenset(c) for c in itertools.combinations(range(5), 3)}
    assert got == want


def test_d_c_family_members():
    ctx = line_context(ring_preset("gf4"))
    kf = _subfield(ring_preset("gf4"), 2)
    all_chains = {chain.ids for chain in ch.enumerate_chains(ctx, kf)}
    for c in ring_preset("gf4").units():
        assert ch.d_c_chain(ctx, kf, c) in all_chains
    with pytest.raises(ValueError):
        ch.d_c_chain(ctx, kf, 0)


def test_containment_test_agrees_with_enumeration():
    """Cross-validate the algebraic membership test against brute force over
    the enumerated chain set, for every subset of up to 4 points."""
    ring = ring_preset("gf4")
    ctx = line_context(ring)
    kf = _subfield(ring, 2)
    all_chains = [chain.ids for chain in ch.enumerate_chains(ctx, kf)]
    for size in range(1, 5):
        for subset in itertools.combinations(range(5), size):
            want = any(set(subset) <= c for c in all_chains)
            got = ch._contained_in_some_kchain(ctx.line, kf, list(subset))
            assert got == want, subset


def test_containment_test_on_matrix_ring():
    ring = ring_preset("m2f2")
    ctx = line_context(ring)
    kf = _subfield(ring, 4)
    all_chains = [chain.ids for chain in ch.enumerate_chains(ctx, kf)]
    rng = np.random.default_rng(0)
    for _ in range(200):
        size = int(rng.integers(2, 5))
        subset = sorted(int(x) for x in rng.choice(35, size=size, replace=False))
        want = any(set(subset) <= c for c in all_chains)
        got = ch._contained_in_some_kchain(ctx.line, kf, subset)
        assert got == want, subset


def test_enumerate_chains_cap():
    ctx = line_context(ring_preset("bm2"))
    kf = _subfield(ring_preset("bm2"), 2)
    with pytest.raises(RingTooLargeError):
        ch.enumerate_chains(ctx, kf, cap=10)


def test_chain_records_all_pass():
    ring = ring_preset("gf4")
    ctx = line_context(ring)
    for ksize in (2, 4):
        recs = ch.chain_records(ctx, _subfield(ring, ksize))
        for rec in recs:
            assert rec["passed"], rec
        names = [r["name"] for r in recs]
        assert names == [
            "chain-size-and-component",
            "distant-iff-common-chain",
            "distant-triple-on-chain",
            "dc-family-in-orbit",
            "gl2-stability",
        ]


def test_condition_holds_for_identity():
    jmap = map_preset("identity@gf4")
    kf = _subfield(jmap.domain, 2)
    rec = ch.check_condition_31(jmap, kf, kf)
    assert rec["passed"]
    assert rec["name"] == "kc-conjugacy"
    assert set(rec["witness"]["units"]) == {
        jmap.domain.name(u) for u in jmap.domain.units()
    }


def test_condition_fails_for_frobenius_against_prime_field():
    """x -> x^2 maps K c = F4 c onto F4 c^2, never inside F2 c^2."""
    jmap = map_preset("frobenius@gf4")
    k4 = _subfield(jmap.domain, 4)
    k2 = _subfield(jmap.codomain, 2)
    rec = ch.check_condition_31(jmap, k4, k2)
    assert not rec["passed"]
    assert "failing_c" in rec["witness"]


def test_condition_requires_matching_subfields():
    jmap = map_preset("identity@gf4")
    other = _subfield(ring_preset("m2f2"), 4)
    k2 = _subfield(jmap.domain, 2)
    with pytest.raises(ValueError):
        ch.check_condition_31(jmap, other, k2)


def test_thm52_instances_match_expectations():
    for inst in thm52_instances():
        recs = ch.check_thm52(inst["jmap"], inst["kf"], inst["kf2"])
        by_name = {r["name"]: r for r in recs}
        assert by_name["whitehead-diag"]["passed"], inst["name"]
        assert by_name["chain-preservation"]["passed"] == inst["expect_preserved"]
        assert by_name["kc-conjugacy"]["passed"] == inst["expect_condition"]
        assert by_name["chain-criterion-biconditional"]["passed"], inst["name"]


def test_thm52_violating_instance_has_whole_line_witness():
    inst = [i for i in thm52_instances() if not i["expect_preserved"]][0]
    recs = ch.check_thm52(inst["jmap"], inst["kf"], inst["kf2"])
    rec = [r for r in recs if r["name"] == "chain-preservation"][0]
    assert rec["witness"]["chain"] == [0, 1, 2, 3, 4]
