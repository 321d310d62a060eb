"""Named rings, Jordan maps, and worked examples shared by suites and the CLI.

The ring corpus collects small rings of different flavours: modular
integers, a field extension, a full matrix ring, split extensions of a
field by an alternating module product, and a direct product.  The map
corpus spans the Jordan-homomorphism landscape: ring homomorphisms,
antihomomorphisms, and proper Jordan maps built from both.

The `example_*` functions reproduce, as check records, the concrete
constructions that motivate the rest of the library: the commutators
that force a nontrivial N_alpha, the regular-representation embedding
whose N is not normal in the bigger elementary group, and a Jordan map
whose image fails to be a subring.
"""

from __future__ import annotations

from typing import Dict, List, Optional

from .elemgrp import E, E_word, Mat2, n_alpha
from .jordan import JordanMap, MapSpec, build_map
from .rings import FiniteRing, RingSpec, build_ring, _index_to_digits

__all__ = [
    "RING_ORDER",
    "MAP_ORDER",
    "CORPUS_RINGS",
    "ring_spec",
    "ring_preset",
    "corpus_rings",
    "map_preset",
    "jordan_corpus",
    "eps_indices",
    "frobenius_map",
    "example_e",
    "example_f",
    "example_g",
    "thm52_instances",
]

HERZER_SWAP_ROWS = ((1, 0, 0), (0, 0, 1), (0, 1, 0))
HERZER_DROP_ROWS = ((1, 0, 0), (0, 1, 0), (0, 0, 0))

_RING_SPECS: Dict[str, tuple] = {
    "zmod2": (RingSpec.zmod(2), None),
    "zmod4": (RingSpec.zmod(4), None),
    "zmod6": (RingSpec.zmod(6), None),
    "gf4": (RingSpec.gf(2, 2), None),
    "m2f2": (RingSpec.matrix(RingSpec.gf(2), 2), None),
    "bm2": (RingSpec.bm(RingSpec.gf(2), 3), None),
    "bm3": (RingSpec.bm(RingSpec.gf(3), 3), None),
    "m2f2xm2f2": (
        RingSpec.product(RingSpec.matrix(RingSpec.gf(2), 2), RingSpec.matrix(RingSpec.gf(2), 2)),
        None,
    ),
    "m4f2": (RingSpec.matrix(RingSpec.gf(2), 4), 80000),
}

RING_ORDER = tuple(_RING_SPECS)

# the exhaustive small-ring corpus used by the unit-implication sweeps
CORPUS_RINGS = ("zmod4", "zmod6", "gf4", "m2f2", "bm2", "bm3")

MAP_ORDER = (
    "identity@gf4",
    "reduce@zmod4",
    "transpose@m2f2",
    "product@m2f2xm2f2",
    "herzer-swap@bm2",
    "herzer-swap@bm3",
    "herzer-drop@bm2",
)

_MAP_CACHE: Dict[str, JordanMap] = {}


def ring_spec(name: str) -> RingSpec:
    return _RING_SPECS[name][0]


def ring_preset(name: str) -> FiniteRing:
    try:
        spec, cap = _RING_SPECS[name]
    except KeyError:
        raise ValueError(
            "unknown ring preset %r; choose from %s" % (name, ", ".join(RING_ORDER))
        ) from None
    if cap is None:
        return build_ring(spec)
    return build_ring(spec, cap=cap)


def corpus_rings() -> List[FiniteRing]:
    return [ring_preset(n) for n in CORPUS_RINGS]


def map_preset(name: str) -> JordanMap:
    if name in _MAP_CACHE:
        return _MAP_CACHE[name]
    if name == "identity@gf4":
        ring = ring_preset("gf4")
        jmap = build_map(MapSpec.identity(), ring, ring)
    elif name == "reduce@zmod4":
        jmap = build_map(
            MapSpec.table([0, 1, 0, 1]), ring_preset("zmod4"), ring_preset("zmod2")
        )
    elif name == "transpose@m2f2":
        ring = ring_preset("m2f2")
        jmap = build_map(MapSpec.transpose(), ring, ring)
    elif name == "product@m2f2xm2f2":
        ring = ring_preset("m2f2xm2f2")
        jmap = build_map(
            MapSpec.product(MapSpec.identity(), MapSpec.transpose()), ring, ring
        )
    elif name == "herzer-swap@bm2":
        ring = ring_preset("bm2")
        jmap = build_map(MapSpec.herzer(HERZER_SWAP_ROWS), ring, ring)
    elif name == "herzer-swap@bm3":
        ring = ring_preset("bm3")
        jmap = build_map(MapSpec.herzer(HERZER_SWAP_ROWS), ring, ring)
    elif name == "herzer-drop@bm2":
        ring = ring_preset("bm2")
        jmap = build_map(MapSpec.herzer(HERZER_DROP_ROWS), ring, ring)
    elif name == "frobenius@gf4":
        jmap = frobenius_map()
    else:
        raise ValueError(
            "unknown map preset %r; choose from %s (or frobenius@gf4)"
            % (name, ", ".join(MAP_ORDER))
        )
    _MAP_CACHE[name] = jmap
    return jmap


def jordan_corpus() -> List[JordanMap]:
    return [map_preset(n) for n in MAP_ORDER]


def eps_indices(ring: FiniteRing) -> tuple:
    """Element indices of the module basis (eps_1, eps_2, eps_3)."""
    if ring.spec.kind != "bm":
        raise ValueError("eps basis exists only in split-extension rings")
    zero = ring.base.zero
    one = ring.base.one
    rows = [[zero] * 4 for _ in range(3)]
    for k in range(3):
        rows[k][k + 1] = one
    return tuple(ring.element_index(tuple(r)) for r in rows)


def frobenius_map() -> JordanMap:
    """The squaring automorphism of the four-element field, as a value table."""
    ring = ring_preset("gf4")
    values = [ring.mul(i, i) for i in range(ring.size)]
    return build_map(MapSpec.table(values), ring, ring)


def _record(name: str, target: str, mode: str, checked: int, passed: bool, witness=None) -> dict:
    return {
        "name": name,
        "target": target,
        "mode": mode,
        "checked": int(checked),
        "passed": bool(passed),
        "witness": witness,
    }


def example_e(base: str = "gf2", include_nalpha: bool = True, max_len: int = 4) -> dict:
    """The module-swap automorphism with a nontrivial relation group.

    Over the split extension R = D + D^3 the swap of eps_2 and eps_3 is a
    proper Jordan automorphism.  Two short commutators separate it from
    any group homomorphism on the elementary group: one maps to the
    identity, the other to diag(1 - eps_3, 1 - eps_3).
    """
    ring_name = {"gf2": "bm2", "gf3": "bm3"}[base]
    ring = ring_preset(ring_name)
    jmap = map_preset("herzer-swap@%s" % ring_name)
    e1, e2, e3 = eps_indices(ring)
    target = "herzer-swap@%s" % ring.label
    records = []

    lhs1 = E_word(ring, (e1, e3, ring.neg(e1), ring.neg(e3)))
    records.append(
        _record(
            "commutator-e1-e3",
            target,
            "direct",
            1,
            lhs1.is_identity(),
            None if lhs1.is_identity() else {"got": repr(lhs1)},
        )
    )

    diag_entry = ring.sub(ring.one, e3)
    want = Mat2.diag(ring, diag_entry, diag_entry)
    lhs2 = E_word(ring, (e1, e2, ring.neg(e1), ring.neg(e2)))
    records.append(
        _record(
            "commutator-e1-e2",
            target,
            "direct",
            1,
            lhs2 == want,
            None if lhs2 == want else {"got": repr(lhs2)},
        )
    )

    result = None
    if include_nalpha:
        result = n_alpha(ring, ring, jmap.apply, max_len=max_len)
        key = want.key()
        records.append(
            _record(
                "nalpha-contains-diag",
                target,
                "relations[len<=%d]" % max_len,
                result.relations_checked,
                key in result.subgroup,
                {"subgroup_size": len(result.subgroup)},
            )
        )
        records.append(
            _record(
                "nalpha-in-centre",
                target,
                "relations[len<=%d]" % max_len,
                len(result.subgroup),
                result.all_scalar_central,
                None if result.all_scalar_central else {"failures": result.failures[:3]},
            )
        )

        # two words with the same E-product whose alpha images have
        # different E-products: no map of elementary groups can send
        # every E(T) to E(T^alpha)
        T = (e1, e3, ring.neg(e1), ring.neg(e3))
        V = (ring.zero,) * 4
        same = E_word(ring, T) == E_word(ring, V)
        Ta = jmap.apply_seq(T)
        Va = jmap.apply_seq(V)
        differ = E_word(ring, Ta) != E_word(ring, Va)
        records.append(
            _record(
                "no-induced-group-map",
                target,
                "direct",
                1,
                same and differ,
                {"T": [ring.name(t) for t in T], "V": [ring.name(v) for v in V]},
            )
        )

    return {"ring": ring, "jmap": jmap, "records": records, "nalpha": result}


def example_f() -> dict:
    """Composing the swap with the regular representation of R = D + D^3.

    The image of 1 - eps_3 under right multiplication has first row
    (1, 0, 0, -1), which is not central among 4x4 matrices; conjugating
    diag(u', u') by a suitable E(r') therefore leaves the diagonal,
    certifying that the relation group is not normal in the elementary
    group over the full matrix ring.
    """
    ring = ring_preset("bm2")
    big = ring_preset("m4f2")
    base = big.base
    rho = build_map(MapSpec.regular_rep(), ring, big)
    beta = build_map(
        MapSpec.compose(MapSpec.herzer(HERZER_SWAP_ROWS), ring.spec, MapSpec.regular_rep()),
        ring,
        big,
    )
    e1, e2, e3 = eps_indices(ring)
    target = "regular-rep@%s" % big.label
    records = []

    u = rho.apply(ring.sub(ring.one, e3))
    neg_one = base.neg(base.one)
    first_row = _index_to_digits(u, 16, base.size)[:4]
    want_row = [base.one, base.zero, base.zero, neg_one]
    records.append(
        _record(
            "rho-first-row",
            target,
            "direct",
            1,
            first_row == want_row,
            {"row": [base.name(v) for v in first_row]},
        )
    )

    word = (e1, e3, ring.neg(e1), ring.neg(e3))
    mapped = beta.apply_seq(word)
    D = Mat2.diag(big, u, u)
    got = E_word(big, mapped)
    records.append(
        _record(
            "nbeta-element",
            target,
            "direct",
            1,
            got == D,
            None if got == D else {"got": repr(got)},
        )
    )

    found = None
    checked = 0
    E0 = E(big, big.zero)
    for r in range(big.size):
        checked += 1
        Er = E(big, r)
        conj = (E0 * E(big, big.neg(r)) * E0) * D * Er
        if not conj.is_diagonal():
            found = r
            break
    records.append(
        _record(
            "nonnormal-conjugate",
            target,
            "search",
            checked,
            found is not None,
            None if found is None else {"r_index": int(found)},
        )
    )

    return {"ring": ring, "big": big, "rho": rho, "beta": beta, "records": records, "u": u}


def example_g() -> dict:
    """A Jordan map whose image is not closed under multiplication.

    Dropping eps_3 while fixing eps_1 and eps_2 keeps the Jordan law, but
    eps_3 = eps_1 eps_2 escapes the image, so the image is not a subring.
    """
    ring = ring_preset("bm2")
    jmap = map_preset("herzer-drop@bm2")
    e1, e2, e3 = eps_indices(ring)
    target = "herzer-drop@%s" % ring.label
    w = jmap.closure_witness
    escaped = not jmap.image_closed and e3 not in jmap.image
    witness_is_e3 = w is not None and w[3] == e3
    records = [
        _record(
            "image-not-closed",
            target,
            "direct",
            1,
            escaped and witness_is_e3,
            {"witness": None if w is None else [ring.name(w[1]), ring.name(w[2]), ring.name(w[3])]},
        )
    ]
    return {"ring": ring, "jmap": jmap, "records": records}


def thm52_instances() -> List[dict]:
    """The chain-criterion test set: two preserving maps and one violator."""
    from .chains import find_subfields

    bm3 = ring_preset("bm3")
    gf4 = ring_preset("gf4")
    subs_bm3 = find_subfields(bm3)
    subs_gf4 = find_subfields(gf4)
    k3 = subs_bm3[0]
    k2 = subs_gf4[0]
    k4 = subs_gf4[-1]
    assert k3.size == 3 and k2.size == 2 and k4.size == 4
    return [
        {
            "name": "herzer-swap@bm3;K=k3",
            "jmap": map_preset("herzer-swap@bm3"),
            "kf": k3,
            "kf2": k3,
            "expect_preserved": True,
            "expect_condition": True,
        },
        {
            "name": "identity@gf4;K=k2",
            "jmap": map_preset("identity@gf4"),
            "kf": k2,
            "kf2": k2,
            "expect_preserved": True,
            "expect_condition": True,
        },
        {
            "name": "frobenius@gf4;K=k4->k2",
            "jmap": frobenius_map(),
            "kf": k4,
            "kf2": k2,
            "expect_preserved": False,
            "expect_condition": False,
        },
    ]
