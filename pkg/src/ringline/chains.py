"""Chain geometries on the projective line over a finite ring.

A subfield K of R (unital, same identity as R) embeds its own projective
line into P(R) as the point set {R(k, 1) : k in K} together with R(1, 0).
The K-chains are the images of that subset under GL_2(R) acting on the
right; they are the blocks of an incidence geometry on P(R).

Chains are enumerated as an orbit closure under the generators E(t) and
diag(u, 1).  These generate GL_2(R) for every finite R: finite rings have
stable rank one, so any invertible matrix row-reduces to diag(u, v), and
diag(v, v**-1) = E(-v) E(-v**-1) E(-v) brings the second factor back into
the elementary group.  A cross-check against directly drawn invertible
matrices (exhaustive on small rings, sampled otherwise) guards the
generation claim empirically.

The main criterion ties the geometry to the algebra of a Jordan
homomorphism alpha: its induced point map sends K-chains into K'-chains
exactly when, for every unit c, the set (Kc)^alpha lies inside some
conjugate u'**-1 K' u' scaled by c^alpha.  `check_thm52` evaluates both
sides independently and reports whether they agree.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import kernels
from .elemgrp import E, Mat2, NonInvertible, invert
from .jordan import JordanMap, _pair_label
from .projline import InducedMap, Line, LineContext, induced_map, line_context
from .rings import FiniteRing, RingTooLargeError, subring_closure

__all__ = [
    "SubfieldK",
    "Chain",
    "find_subfields",
    "enumerate_chains",
    "chain_records",
    "d_c_chain",
    "check_condition_31",
    "check_thm52",
]

CHAIN_CAP = 200_000
FULL_MODE_LIMIT = 16


@dataclass(frozen=True)
class SubfieldK:
    """A subfield of a finite ring, as a sorted tuple of element indices.

    `central` records whether K lies in the centre of the ambient ring and
    `inner_invariant` whether u**-1 K u = K for every unit u; both are
    plain observations, not requirements.
    """

    ring: FiniteRing
    elems: Tuple[int, ...]
    central: bool
    inner_invariant: bool

    @property
    def size(self) -> int:
        return len(self.elems)

    @property
    def label(self) -> str:
        return "k%d[%s]" % (len(self.elems), ",".join(str(e) for e in self.elems))

    def __repr__(self) -> str:
        return "SubfieldK(%s in %s)" % (self.label, self.ring.label)


def _is_subfield(ring: FiniteRing, elems: Sequence[int]) -> bool:
    """True when the unital subset is a field.

    Checks closure under + and *, presence of 0 and 1, and that every
    nonzero element has a two-sided inverse inside the subset;
    commutativity is then automatic for finite division rings.
    """
    members = set(elems)
    if ring.zero not in members or ring.one not in members:
        return False
    for a in elems:
        for b in elems:
            if ring.add(a, b) not in members or ring.mul(a, b) not in members:
                return False
    for a in elems:
        if a == ring.zero:
            continue
        if not ring.is_unit(a):
            return False
        if ring.inverse(a) not in members:
            return False
    return True


def find_subfields(ring: FiniteRing, max_size: Optional[int] = None) -> List[SubfieldK]:
    """All unital subfields of the ring, smallest first.

    The multiplicative group of a finite field is cyclic, so every
    subfield is the closure of a single generator together with 1.
    Enumerating the closure of {g} for each ring element g therefore
    finds every subfield; the field test filters the rest.
    """
    if ring.mul_table is None:
        raise RingTooLargeError(
            "subfield search needs operation tables; ring %s is too large" % ring.label
        )
    found: Dict[Tuple[int, ...], SubfieldK] = {}
    centre = set(ring.centre())
    units = ring.units()
    for g in range(ring.size):
        closure, _ = subring_closure(ring, [g])
        if max_size is not None and len(closure) > max_size:
            continue
        elems = tuple(sorted(closure))
        if elems in found:
            continue
        if not _is_subfield(ring, elems):
            continue
        kset = set(elems)
        central = kset <= centre
        inner_invariant = True
        if not central:
            for u in units:
                ui = ring.inverse(u)
                conj = {ring.mul(ring.mul(ui, k), u) for k in elems}
                if conj != kset:
                    inner_invariant = False
                    break
        found[elems] = SubfieldK(ring, elems, central, inner_invariant)
    return sorted(found.values(), key=lambda k: (len(k.elems), k.elems))


@dataclass(frozen=True, eq=False)
class Chain:
    """A K-chain: a set of point ids plus one matrix carrying P(K) onto it."""

    ids: frozenset
    witness: Mat2

    @property
    def sorted_ids(self) -> Tuple[int, ...]:
        return tuple(sorted(self.ids))

    def __repr__(self) -> str:
        return "Chain(%s)" % (self.sorted_ids,)


def _subline_ids(line: Line, kf: SubfieldK) -> frozenset:
    """Point ids of the embedded projective line of the subfield."""
    ring = line.ring
    ids = {line.point_of(k, ring.one) for k in kf.elems}
    ids.add(line.base)
    assert len(ids) == kf.size + 1
    return frozenset(ids)


def _diag_action(line: Line, units: Sequence[int]) -> np.ndarray:
    """Table (P, |units|): point id of rep * diag(u, 1) per point and unit."""
    ring = line.ring
    a = line.reps[:, 0]
    b = line.reps[:, 1]
    cols = ring.mul_table[np.ix_(a, np.asarray(units, dtype=np.int64))]
    act = line.pair_point[cols, b[:, None]]
    assert (act >= 0).all()
    return act.astype(np.int32)


def enumerate_chains(ctx: LineContext, kf: SubfieldK, cap: int = CHAIN_CAP) -> List[Chain]:
    """Orbit of the embedded subline under right multiplication by GL_2.

    Breadth-first closure under the generators E(t), t in R, and
    diag(u, 1), u a unit.  Each chain keeps the matrix that produced it,
    so Chain.ids is always the image of the subline under Chain.witness.
    """
    line, graph = ctx.line, ctx.graph
    ring = line.ring
    if kf.ring is not ring:
        raise ValueError("subfield belongs to %s, not %s" % (kf.ring.label, ring.label))
    units = ring.units()
    eact = ctx.base.act
    dact = _diag_action(line, units)
    gens = [(E(ring, t), eact[:, t]) for t in range(ring.size)]
    gens += [(Mat2.diag(ring, u, ring.one), dact[:, j]) for j, u in enumerate(units)]

    start = tuple(sorted(_subline_ids(line, kf)))
    seen: Dict[Tuple[int, ...], Mat2] = {start: Mat2.identity(ring)}
    queue = deque([start])
    while queue:
        s = queue.popleft()
        w = seen[s]
        arr = np.asarray(s, dtype=np.int64)
        for gmat, col in gens:
            ns = tuple(sorted(int(p) for p in col[arr]))
            if ns not in seen:
                if len(seen) >= cap:
                    raise RingTooLargeError(
                        "chain orbit for %s exceeds cap %d" % (kf.label, cap)
                    )
                seen[ns] = w * gmat
                queue.append(ns)

    chains = [Chain(frozenset(s), seen[s]) for s in sorted(seen)]
    size = kf.size + 1
    for ch in chains:
        assert len(ch.ids) == size
        assert len({int(graph.comp[p]) for p in ch.ids}) == 1
    return chains


def d_c_chain(ctx: LineContext, kf: SubfieldK, c: int) -> frozenset:
    """The chain {R(kc, 1) : k in K} + {R(1, 0)} for a unit c."""
    line = ctx.line
    ring = line.ring
    if not ring.is_unit(c):
        raise ValueError("%s is not a unit in %s" % (ring.name(c), ring.label))
    ids = {line.point_of(ring.mul(k, c), ring.one) for k in kf.elems}
    ids.add(line.base)
    assert len(ids) == kf.size + 1
    return frozenset(ids)


def _chain_masks(line: Line, chains: Sequence[Chain]) -> np.ndarray:
    masks = np.zeros((len(chains), len(line)), dtype=bool)
    for i, ch in enumerate(chains):
        masks[i, list(ch.ids)] = True
    return masks


def _apply_gl2_batch(line: Line, start_reps: np.ndarray, a, b, c, d) -> np.ndarray:
    """Point ids of the subline images under a batch of matrices.

    start_reps has shape (S, 2); entry arrays have shape (W,).  Returns
    (W, S) sorted point ids, one row per matrix.
    """
    ring = line.ring
    mul = ring.mul_table
    add = ring.add_table
    ra = start_reps[:, 0][None, :]
    rb = start_reps[:, 1][None, :]
    x = add[mul[ra, a[:, None]], mul[rb, c[:, None]]]
    y = add[mul[ra, b[:, None]], mul[rb, d[:, None]]]
    pts = line.pair_point[x, y]
    assert (pts >= 0).all()
    return np.sort(pts, axis=1)


def _stability_batches(ring: FiniteRing, exhaustive: bool, samples: int, seed: int):
    """Yield entry arrays (a, b, c, d) of invertible matrices."""
    n = ring.size
    if exhaustive:
        total = n ** 4
        chunk = 1 << 16
        for lo in range(0, total, chunk):
            idx = np.arange(lo, min(lo + chunk, total), dtype=np.int64)
            a = (idx % n).astype(np.int32)
            b = ((idx // n) % n).astype(np.int32)
            c = ((idx // n ** 2) % n).astype(np.int32)
            d = ((idx // n ** 3) % n).astype(np.int32)
            flags, *_ = kernels.batch_invertible(
                ring.mul_table, ring.add_table, ring.one, ring.zero, a, b, c, d
            )
            if flags.any():
                yield a[flags], b[flags], c[flags], d[flags]
        return
    rng = np.random.default_rng(seed)
    kept = 0
    while kept < samples:
        draw = max(64, 2 * (samples - kept))
        ent = rng.integers(0, n, size=(4, draw)).astype(np.int32)
        flags, *_ = kernels.batch_invertible(
            ring.mul_table, ring.add_table, ring.one, ring.zero, *ent
        )
        if not flags.any():
            continue
        take = min(int(flags.sum()), samples - kept)
        pick = np.nonzero(flags)[0][:take]
        kept += take
        yield ent[0][pick], ent[1][pick], ent[2][pick], ent[3][pick]


def chain_records(
    ctx: LineContext,
    kf: SubfieldK,
    chains: Optional[Sequence[Chain]] = None,
    samples: int = 256,
    seed: int = 0,
) -> List[dict]:
    """Property checks for an enumerated chain family.

    The geometric facts here (chain size, single component, distant iff
    on a common chain, mutually distant triples covered, the D_c family,
    GL_2 stability) are verified rather than assumed; a failed record
    marks an external-property violation.
    """
    line, graph = ctx.line, ctx.graph
    ring = line.ring
    if chains is None:
        chains = enumerate_chains(ctx, kf)
    target = "%s;K=%s" % (ring.label, kf.label)
    npts = len(line)
    masks = _chain_masks(line, chains)
    records = []

    sizes_ok = all(len(ch.ids) == kf.size + 1 for ch in chains)
    comp_ok = all(len({int(graph.comp[p]) for p in ch.ids}) == 1 for ch in chains)
    records.append(
        {
            "name": "chain-size-and-component",
            "target": target,
            "mode": "exhaustive",
            "checked": len(chains),
            "passed": bool(sizes_ok and comp_ok),
            "witness": None,
        }
    )

    share = np.zeros((npts, npts), dtype=bool)
    for m in masks:
        share |= m[:, None] & m[None, :]
    np.fill_diagonal(share, False)
    pair_ok = bool((share == graph.adj).all())
    witness = None
    if not pair_ok:
        bad = np.argwhere(share != graph.adj)[0]
        witness = {"pair": [int(bad[0]), int(bad[1])]}
    records.append(
        {
            "name": "distant-iff-common-chain",
            "target": target,
            "mode": "exhaustive",
            "checked": npts * (npts - 1),
            "passed": pair_ok,
            "witness": witness,
        }
    )

    adj = graph.adj
    tri_needed = adj[:, :, None] & adj[:, None, :] & adj[None, :, :]
    tri_have = np.zeros_like(tri_needed)
    for m in masks:
        tri_have |= m[:, None, None] & m[None, :, None] & m[None, None, :]
    tri_ok = bool(not (tri_needed & ~tri_have).any())
    witness = None
    if not tri_ok:
        bad = np.argwhere(tri_needed & ~tri_have)[0]
        witness = {"triple": [int(v) for v in bad]}
    records.append(
        {
            "name": "distant-triple-on-chain",
            "target": target,
            "mode": "exhaustive",
            "checked": int(tri_needed.sum()),
            "passed": tri_ok,
            "witness": witness,
        }
    )

    chain_set = {ch.ids for ch in chains}
    units = ring.units()
    missing = [c for c in units if d_c_chain(ctx, kf, c) not in chain_set]
    records.append(
        {
            "name": "dc-family-in-orbit",
            "target": target,
            "mode": "exhaustive",
            "checked": len(units),
            "passed": not missing,
            "witness": None if not missing else {"c": ring.name(missing[0])},
        }
    )

    sorted_set = {ch.sorted_ids for ch in chains}
    start_reps = line.reps[sorted(_subline_ids(line, kf))]
    exhaustive = ring.size <= FULL_MODE_LIMIT
    checked = 0
    witness = None
    for a, b, c, d in _stability_batches(ring, exhaustive, samples, seed):
        rows = _apply_gl2_batch(line, start_reps, a, b, c, d)
        checked += rows.shape[0]
        for i in range(rows.shape[0]):
            if tuple(int(v) for v in rows[i]) not in sorted_set:
                witness = {
                    "matrix": [int(a[i]), int(b[i]), int(c[i]), int(d[i])]
                }
                break
        if witness:
            break
    records.append(
        {
            "name": "gl2-stability",
            "target": target,
            "mode": "exhaustive" if exhaustive else "sampled[%d;seed=%d]" % (samples, seed),
            "checked": checked,
            "passed": witness is None,
            "witness": witness,
        }
    )
    return records


def _contained_in_some_kchain(line: Line, kf: SubfieldK, pts: Sequence[int]) -> bool:
    """Whether the point set fits inside one K-chain of this line.

    Normalize by the inverse of the matrix stacking the first two
    representatives, sending them to R(1, 0) and R(0, 1).  The chains
    through that pair are {R((u**-1 k u) c, 1) : k in K} + {R(1, 0)}
    with c a unit and u ranging over units, so after normalization the
    remaining points R(t_i, 1) fit some chain exactly when a single unit
    conjugates every ratio t_i * t_1**-1 into K.
    """
    ring = line.ring
    ids = sorted({int(p) for p in pts})
    if len(ids) == 1:
        return True
    if len(ids) > kf.size + 1:
        return False
    r0 = line.reps[ids[0]]
    r1 = line.reps[ids[1]]
    stack = Mat2(ring, int(r0[0]), int(r0[1]), int(r1[0]), int(r1[1]))
    minv = invert(stack)
    if isinstance(minv, NonInvertible):
        return False
    if len(ids) == 2:
        return True
    mul = ring.mul_table
    inv = ring.inv_table
    ts = []
    for p in ids[2:]:
        ra, rb = (int(v) for v in line.reps[p])
        x, y = minv.act_row(ra, rb)
        if not (ring.is_unit(x) and ring.is_unit(y)):
            return False
        ts.append(int(mul[inv[y], x]))
    t1 = ts[0]
    ratios = [int(mul[t, inv[t1]]) for t in ts]
    kset = set(kf.elems)
    for u in ring.units():
        ui = inv[u]
        if all(int(mul[mul[u, r], ui]) in kset for r in ratios):
            return True
    return False


def check_condition_31(jmap: JordanMap, kf: SubfieldK, kf2: SubfieldK) -> dict:
    """For each unit c, search a unit u' with (Kc)^alpha inside (u'**-1 K' u') c^alpha.

    Returns a record whose witness carries the unit table on success and
    the first failing c otherwise.
    """
    dom, cod = jmap.domain, jmap.codomain
    if kf.ring is not dom or kf2.ring is not cod:
        raise ValueError("subfields must live in the map's domain and codomain")
    values = jmap.values
    mul, mul2 = dom.mul_table, cod.mul_table
    inv2 = cod.inv_table
    table: Dict[str, str] = {}
    failing = None
    checked = 0
    for c in dom.units():
        checked += 1
        image = {int(values[mul[k, c]]) for k in kf.elems}
        ca = int(values[c])
        found = None
        for u in cod.units():
            ui = inv2[u]
            rhs = {int(mul2[mul2[mul2[ui, k2], u], ca]) for k2 in kf2.elems}
            if image <= rhs:
                found = u
                break
        if found is None:
            failing = c
            break
        table[dom.name(c)] = cod.name(found)
    passed = failing is None
    return {
        "name": "kc-conjugacy",
        "target": "%s;%s->%s" % (_pair_label(jmap), kf.label, kf2.label),
        "mode": "exhaustive",
        "checked": checked,
        "passed": passed,
        "witness": {"units": table} if passed else {"failing_c": dom.name(failing)},
    }


def _translate_ids(eact: np.ndarray, ids: frozenset, word: Sequence[int]) -> frozenset:
    cur = np.asarray(sorted(ids), dtype=np.int64)
    for t in word:
        cur = eact[cur, int(t)]
    return frozenset(int(p) for p in cur)


def _image_ids(imap: InducedMap, ids: frozenset) -> frozenset:
    out = {int(imap.table[p]) for p in ids}
    assert all(p >= 0 for p in out)
    return frozenset(out)


def check_thm52(
    jmap: JordanMap,
    kf: SubfieldK,
    kf2: SubfieldK,
    imap: Optional[InducedMap] = None,
    samples: int = 48,
    seed: int = 0,
) -> List[dict]:
    """Chain preservation versus the unit-conjugacy condition, independently.

    Small rings (size <= 16 on both ends) test every enumerated K-chain
    against every enumerated K'-chain.  Larger domains fall back to the
    chains through the base pair: the D_c family for every unit c plus
    seeded E(t)-translates, whose images are tested by the normalized
    membership criterion.  The final record compares the two booleans.
    """
    dom, cod = jmap.domain, jmap.codomain
    if imap is None:
        imap = induced_map(jmap)
    dom_ctx, img_ctx = imap.dom, imap.img
    target = "%s;%s->%s" % (_pair_label(jmap), kf.label, kf2.label)
    records = []

    units = dom.units()
    wh_witness = None
    for b in units:
        bi = dom.inverse(b)
        lhs = E(dom, dom.neg(b)) * E(dom, dom.neg(bi)) * E(dom, dom.neg(b))
        if lhs != Mat2.diag(dom, b, bi):
            wh_witness = {"b": dom.name(b)}
            break
    records.append(
        {
            "name": "whitehead-diag",
            "target": dom.label,
            "mode": "exhaustive",
            "checked": len(units),
            "passed": wh_witness is None,
            "witness": wh_witness,
        }
    )

    full = dom.size <= FULL_MODE_LIMIT and cod.size <= FULL_MODE_LIMIT
    preserve_witness = None
    if full:
        dom_chains = enumerate_chains(dom_ctx, kf)
        img_chains = enumerate_chains(img_ctx, kf2)
        img_sets = [ch.ids for ch in img_chains]
        checked = 0
        for ch in dom_chains:
            checked += 1
            image = _image_ids(imap, ch.ids)
            if not any(image <= s for s in img_sets):
                preserve_witness = {"chain": list(ch.sorted_ids)}
                break
        mode = "full-orbit"
    else:
        eact = dom_ctx.base.act
        rng = np.random.default_rng(seed)
        todo = [(c, ()) for c in units]
        for _ in range(samples):
            c = units[int(rng.integers(0, len(units)))]
            word = tuple(int(t) for t in rng.integers(0, dom.size, size=int(rng.integers(1, 4))))
            todo.append((c, word))
        checked = 0
        for c, word in todo:
            checked += 1
            ids = d_c_chain(dom_ctx, kf, c)
            if word:
                ids = _translate_ids(eact, ids, word)
            image = _image_ids(imap, ids)
            if not _contained_in_some_kchain(img_ctx.line, kf2, image):
                preserve_witness = {"c": dom.name(c), "word": list(word)}
                break
        mode = "dc-family[%d translates;seed=%d]" % (samples, seed)
    preserved = preserve_witness is None
    records.append(
        {
            "name": "chain-preservation",
            "target": target,
            "mode": mode,
            "checked": checked,
            "passed": preserved,
            "witness": preserve_witness,
        }
    )

    cond = check_condition_31(jmap, kf, kf2)
    records.append(cond)

    records.append(
        {
            "name": "chain-criterion-biconditional",
            "target": target,
            "mode": mode,
            "checked": 1,
            "passed": bool(preserved == cond["passed"]),
            "witness": {"preserved": preserved, "condition": cond["passed"]},
        }
    )
    return records
