"""The projective line over a finite ring and its distant graph.

A point is the unit orbit R(a, b) of an admissible pair, i.e. of a first row
of an invertible 2x2 matrix.  This module enumerates the points with
canonical representatives and completion witnesses, builds the distant graph
with components, distances and diameters, transports points along the
elementary generators, and realizes the point mapping induced by a Jordan
homomorphism together with its consistency certificate, harmonicity and
contraction sweeps, and the pasted extension to the whole line.  Everything
runs on the ring's op tables; untabled rings are rejected.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from . import kernels
from .elemgrp import E, Mat2, NonInvertible, NonInvertibleError, invert, word_inverse
from .jordan import JordanMap, WORK_BUDGET, _pair_label
from .rings import FiniteRing, RingTooLargeError, subring_as_ring

HARMONIC_BUDGET = 10**5
# elementwise-op ceiling for the exhaustive adjacency cross-check
PAIR_CHECK_OPS = 2 * 10**8


@dataclass(frozen=True, eq=False)
class PointPL:
    """The point R(a, b), stored by its canonical representative pair.

    The canonical pair is the minimum of {(ua, ub) : u a unit} under the
    element-index lexicographic order.
    """

    ring: FiniteRing
    a: int
    b: int

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PointPL)
            and self.ring is other.ring
            and (self.a, self.b) == (other.a, other.b)
        )

    def __hash__(self) -> int:
        return hash((id(self.ring), self.a, self.b))

    def __repr__(self) -> str:
        R = self.ring
        return f"R({R.name(self.a)}, {R.name(self.b)})"


class Line:
    """All points of the projective line over a tabled finite ring."""

    def __init__(self, ring: FiniteRing, reps: np.ndarray, completions: list, pair_point: np.ndarray):
        self.ring = ring
        self.reps = reps
        self.completions = completions
        self.pair_point = pair_point
        self.points = [PointPL(ring, int(a), int(b)) for a, b in reps]
        self.markers: dict = {}
        self._base: Optional[int] = None
        ca, cb, cc, cd = (
            np.array([getattr(m, f) for m in completions], dtype=np.int32)
            for f in ("a", "b", "c", "d")
        )
        flags, pa, pb, qc, qd = kernels.batch_invertible(
            ring.mul_table, ring.add_table, ring.one, ring.zero, ca, cb, cc, cd
        )
        if not flags.all():
            raise AssertionError("a completion witness is not invertible")
        self.comp_inv = (pa, pb, qc, qd)

    def __len__(self) -> int:
        return len(self.points)

    def point(self, i: int) -> PointPL:
        return self.points[i]

    def point_id(self, p: Union[PointPL, int]) -> int:
        if isinstance(p, PointPL):
            if p.ring is not self.ring:
                raise ValueError("point belongs to a different line")
            i = int(self.pair_point[p.a, p.b])
        else:
            i = int(p)
            if not 0 <= i < len(self.points):
                raise ValueError(f"point id {i} out of range")
        if i < 0:
            raise ValueError(f"{p!r} is not a point of the line")
        return i

    def point_of(self, a, b) -> int:
        """Point id of R(a, b); raises if the pair is not admissible."""
        ia, ib = self.ring.element_index(a), self.ring.element_index(b)
        i = int(self.pair_point[ia, ib])
        if i < 0:
            raise ValueError(
                f"({self.ring.name(ia)}, {self.ring.name(ib)}) is not admissible over {self.ring.label}"
            )
        return i

    @property
    def base(self) -> int:
        if self._base is None:
            self._base = self.point_of(self.ring.one, self.ring.zero)
        return self._base


def _complete_pair(ring: FiniteRing, a: int, b: int) -> Mat2:
    """An invertible matrix with first row (a, b).

    A unit entry gives a closed-form second row; otherwise scan for t with
    a + b*t a unit (which always exists over a finite ring); otherwise fall
    back to the full search over second rows.
    """
    if ring.unit_mask[a]:
        return Mat2(ring, a, b, ring.zero, ring.one)
    if ring.unit_mask[b]:
        return Mat2(ring, a, b, ring.one, ring.zero)
    row = ring.add_table[a, ring.mul_table[b]]
    hits = np.nonzero(ring.unit_mask[row])[0]
    if hits.size:
        t = int(hits[0])
        return Mat2(ring, a, b, ring.neg(t), ring.one)
    for c in range(ring.size):
        for d in range(ring.size):
            M = Mat2(ring, a, b, c, d)
            if not isinstance(invert(M), NonInvertible):
                return M
    raise AssertionError(
        f"({ring.name(a)}, {ring.name(b)}) is right unimodular but has no completion"
    )


def enumerate_line(ring: FiniteRing) -> Line:
    """Enumerate P(R): admissible pairs grouped into unit orbits.

    Pairs are prefiltered by right unimodularity, reduced to one canonical
    representative per unit orbit, and completed to an invertible witness.
    Point ids are assigned in increasing order of the canonical pair.
    """
    if ring.mul_table is None:
        raise RingTooLargeError(f"line enumeration over {ring.label} needs op tables")
    n = ring.size
    runi = kernels.right_unimodular(ring.mul_table, ring.add_table, ring.one)
    units = np.array(ring.units(), dtype=np.int64)
    left = ring.mul_table[units].astype(np.int64)
    cankey = (left[:, :, None] * n + left[:, None, :]).min(axis=0)
    can_a, can_b = cankey // n, cankey % n
    if not (runi == runi[can_a, can_b]).all():
        raise AssertionError("right unimodularity is not constant on unit orbits")
    rep_keys = np.unique(cankey[runi])
    reps = np.stack([rep_keys // n, rep_keys % n], axis=1).astype(np.int32)
    completions = [_complete_pair(ring, int(a), int(b)) for a, b in reps]
    pair_point = np.full((n, n), -1, dtype=np.int32)
    flat_runi = runi.ravel()
    pair_point.ravel()[flat_runi] = np.searchsorted(rep_keys, cankey.ravel()[flat_runi])
    return Line(ring, reps, completions, pair_point)


def _transport(line: Line, i: int, pts: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Coordinates of the given points after point i moves to R(1, 0)."""
    R = line.ring
    mul, add = R.mul_table, R.add_table
    pa, pb, qc, qd = (int(t[i]) for t in line.comp_inv)
    c = line.reps[pts, 0]
    d = line.reps[pts, 1]
    return add[mul[c, pa], mul[d, qc]], add[mul[c, pb], mul[d, qd]]


def distant(line: Line, p, q) -> bool:
    """Whether the representatives of p and q stack to an invertible matrix."""
    i, j = line.point_id(p), line.point_id(q)
    _, y = _transport(line, i, np.array([j], dtype=np.int64))
    return bool(line.ring.unit_mask[y[0]])


@dataclass
class DistantGraph:
    """The distant relation with components, BFS distances and diameters."""

    line: Line
    adj: np.ndarray
    comp: np.ndarray
    dist: np.ndarray
    diameters: tuple[int, ...]
    n_components: int

    def distance(self, p, q) -> int:
        return int(self.dist[self.line.point_id(p), self.line.point_id(q)])

    def component_ids(self, label: int) -> np.ndarray:
        return np.nonzero(self.comp == label)[0]


def _bfs_all(adj: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    P = adj.shape[0]
    dist = np.full((P, P), -1, dtype=np.int16)
    for s in range(P):
        seen = np.zeros(P, dtype=bool)
        seen[s] = True
        dist[s, s] = 0
        frontier = seen.copy()
        d = 0
        while True:
            nxt = adj[frontier].any(axis=0) & ~seen
            if not nxt.any():
                break
            d += 1
            dist[s, nxt] = d
            seen |= nxt
            frontier = nxt
    comp = np.full(P, -1, dtype=np.int32)
    label = 0
    for s in range(P):
        if comp[s] < 0:
            comp[dist[s] >= 0] = label
            label += 1
    return comp, dist


def _cross_check_adjacency(line: Line, adj: np.ndarray, samples: int, seed: int) -> None:
    """Compare the transport test against stacked-matrix invertibility."""
    R = line.ring
    P = len(line)
    if P * P * R.size * R.size <= PAIR_CHECK_OPS:
        ii = np.repeat(np.arange(P, dtype=np.int64), P)
        jj = np.tile(np.arange(P, dtype=np.int64), P)
    else:
        rng = np.random.default_rng(seed)
        ii = rng.integers(0, P, size=samples)
        jj = rng.integers(0, P, size=samples)
    flags, *_ = kernels.batch_invertible(
        R.mul_table,
        R.add_table,
        R.one,
        R.zero,
        line.reps[ii, 0],
        line.reps[ii, 1],
        line.reps[jj, 0],
        line.reps[jj, 1],
    )
    bad = flags != adj[ii, jj]
    if bad.any():
        k = int(np.nonzero(bad)[0][0])
        raise AssertionError(
            f"transport and stacked tests disagree at points ({int(ii[k])}, {int(jj[k])})"
        )


def build_graph(line: Line, cross_check: bool = True, samples: int = 2048, seed: int = 0) -> DistantGraph:
    """Build the distant graph via the transport test.

    p is distant to q iff the second coordinate of q is a unit after p moves
    to R(1, 0).  The result is cross-checked against stacked invertibility,
    exhaustively when cheap and on a seeded pair sample otherwise.
    """
    R = line.ring
    P = len(line)
    pts = np.arange(P, dtype=np.int64)
    adj = np.zeros((P, P), dtype=bool)
    for i in range(P):
        _, y = _transport(line, i, pts)
        adj[i] = R.unit_mask[y]
    if not (adj == adj.T).all():
        raise AssertionError("the distant relation came out asymmetric")
    if adj.diagonal().any():
        raise AssertionError("a point came out distant to itself")
    if cross_check:
        _cross_check_adjacency(line, adj, samples, seed)
    comp, dist = _bfs_all(adj)
    n_comp = int(comp.max()) + 1 if P else 0
    diam = tuple(int(dist[np.ix_(comp == k, comp == k)].max()) for k in range(n_comp))
    return DistantGraph(line, adj, comp, dist, diam, n_comp)


def point_action(line: Line) -> np.ndarray:
    """Table act[p, t] = the point p * E(t), i.e. R(a, b) -> R(at - b, a)."""
    R = line.ring
    mul, add, neg = R.mul_table, R.add_table, R.neg_table
    a = line.reps[:, 0:1].astype(np.int64)
    b = line.reps[:, 1:2]
    ts = np.arange(R.size, dtype=np.int64)[None, :]
    x = add[mul[a, ts], neg[b]]
    act = line.pair_point[x, np.broadcast_to(a, x.shape)]
    if (act < 0).any():
        raise AssertionError("transport by a generator left the line")
    return act.astype(np.int32)


@dataclass
class BaseComponent:
    """The orbit of R(1, 0) under p -> p * E(t), with minimal witness words."""

    line: Line
    base: int
    act: np.ndarray
    ids: np.ndarray
    order: list[int]
    parent: dict[int, tuple[int, int]]

    def word(self, p) -> tuple[int, ...]:
        """A minimal word T with R(1, 0) * E(T) = p."""
        i = self.line.point_id(p)
        if i != self.base and i not in self.parent:
            raise ValueError("point is not in the base component")
        out: list[int] = []
        while i != self.base:
            i, t = self.parent[i]
            out.append(t)
        out.reverse()
        return tuple(out)

    def __contains__(self, p) -> bool:
        i = self.line.point_id(p)
        return i == self.base or i in self.parent


def component_of_base(line: Line, graph: DistantGraph) -> BaseComponent:
    """BFS the generator orbit of R(1, 0) and check it against the graph.

    Asserts that the orbit equals the graph component of the base point and
    that each witness word length equals the BFS distance.
    """
    act = point_action(line)
    base = line.base
    parent: dict[int, tuple[int, int]] = {}
    order = [base]
    seen = {base}
    head = 0
    n = line.ring.size
    while head < len(order):
        p = order[head]
        head += 1
        for t in range(n):
            q = int(act[p, t])
            if q not in seen:
                seen.add(q)
                parent[q] = (p, t)
                order.append(q)
    ids = np.array(sorted(seen), dtype=np.int64)
    if not np.array_equal(ids, np.nonzero(graph.comp == graph.comp[base])[0]):
        raise AssertionError("the generator orbit of the base point is not its graph component")
    bc = BaseComponent(line, base, act, ids, order, parent)
    for p in order:
        if len(bc.word(p)) != int(graph.dist[base, p]):
            raise AssertionError(f"witness length differs from graph distance at point {p}")
    return bc


@dataclass
class LineContext:
    """A line bundled with its graph and base component, built once per ring."""

    line: Line
    graph: DistantGraph
    base: BaseComponent


def line_context(ring: FiniteRing) -> LineContext:
    ctx = getattr(ring, "_line_context", None)
    if ctx is None:
        line = enumerate_line(ring)
        graph = build_graph(line)
        ctx = LineContext(line, graph, component_of_base(line, graph))
        ring._line_context = ctx
    return ctx


def two_transitive_normalizer(bc: BaseComponent, p, q) -> tuple[int, ...]:
    """A word W with p * E(W) = R(1, 0) and q * E(W) = R(0, 1).

    Undo the witness word of p, read q off the resulting frame as R(t, 1),
    then append (0, -t).  The result is verified by acting on both points.
    """
    line = bc.line
    R = line.ring
    i, j = line.point_id(p), line.point_id(q)
    if not distant(line, i, j):
        raise ValueError("the two points are not distant")
    if i not in bc or j not in bc:
        raise ValueError("point is not in the base component")
    back = word_inverse(R, bc.word(i))
    cur = j
    for t in back:
        cur = int(bc.act[cur, t])
    x, y = int(line.reps[cur, 0]), int(line.reps[cur, 1])
    t = R.mul(R.inverse(y), x)
    w = back + (R.zero, R.neg(t))
    pi, qi = i, j
    for letter in w:
        pi = int(bc.act[pi, letter])
        qi = int(bc.act[qi, letter])
    if pi != bc.base or qi != line.point_of(R.zero, R.one):
        raise AssertionError("normalizer word failed to act as computed")
    return w


def embed_subline(parent: Line, sub_line: Line, to_parent: Sequence[int], label: Optional[str] = None) -> dict[int, int]:
    """Identify the points of a subring line inside the parent line.

    Returns {sub point id: parent point id}; asserts the embedding is
    injective and marks the image points on the parent line.
    """
    to_par = np.asarray(to_parent, dtype=np.int64)
    ids = parent.pair_point[to_par[sub_line.reps[:, 0]], to_par[sub_line.reps[:, 1]]]
    if (ids < 0).any():
        k = int(np.nonzero(ids < 0)[0][0])
        raise AssertionError(f"subring point {k} is not admissible in the parent")
    if np.unique(ids).size != ids.size:
        raise AssertionError("the subring line does not embed injectively")
    parent.markers[label or sub_line.ring.label] = {int(ids[i]): i for i in range(len(sub_line))}
    return {i: int(ids[i]) for i in range(len(sub_line))}


# -- the induced point mapping ------------------------------------------------


@dataclass
class InducedMap:
    """The point map C -> C'' realized as a table, with its certificate."""

    jmap: JordanMap
    dom: LineContext
    img: LineContext
    table: np.ndarray
    c_ids: np.ndarray
    sub: FiniteRing
    sub_to_parent: tuple
    c2_ids: frozenset
    certificate: list
    observed_injective: bool
    maps_onto_c2: bool

    def apply(self, p) -> int:
        i = self.dom.line.point_id(p)
        j = int(self.table[i])
        if j < 0:
            raise ValueError("point is not in the base component")
        return j


def _word_chunks(n: int, length: int, chunk: int = 1 << 20):
    """Yield (length, w) digit blocks enumerating all words of the length."""
    total = n**length
    for lo in range(0, max(total, 1), chunk):
        hi = min(lo + chunk, total)
        if hi <= lo:
            break
        idx = np.arange(lo, hi, dtype=np.int64)
        digits = np.empty((length, idx.size), dtype=np.int32)
        for k in range(length):
            digits[k] = (idx // n**k) % n
        yield digits


def _first_rows(ring: FiniteRing, digits: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    return kernels.eval_words_e(
        ring.mul_table, ring.add_table, ring.neg_table, ring.one, ring.zero, digits
    )


def _word_sweep_records(jmap: JordanMap, dom: LineContext, img: LineContext, table: np.ndarray, max_len: int) -> list[dict]:
    """Well-definedness and stabilizer transfer over all words up to max_len.

    Words with the same domain point must give the same image point (checked
    through a first-image bucket array, which also cross-validates the
    transported table), and a first row (unit, 0) must map to a first row
    (unit', 0').
    """
    R, Rp = jmap.domain, jmap.codomain
    n = R.size
    first_img = np.full(len(dom.line), -1, dtype=np.int64)
    checked = transfer_checked = 0
    wd_witness = st_witness = None
    for length in range(max_len + 1):
        for digits in _word_chunks(n, length):
            en, enm1 = _first_rows(R, digits)
            men, menm1 = _first_rows(Rp, jmap.values[digits])
            pts = dom.line.pair_point[en, enm1]
            mpts = img.line.pair_point[men, menm1]
            if (pts < 0).any() or (mpts < 0).any():
                raise AssertionError("a generator-word first row is not admissible")
            fresh = first_img[pts] < 0
            first_img[pts[fresh]] = mpts[fresh]
            bad = first_img[pts] != mpts
            if bad.any() and wd_witness is None:
                k = int(np.nonzero(bad)[0][0])
                wd_witness = {
                    "word": [R.name(int(digits[r, k])) for r in range(length)],
                    "point": int(pts[k]),
                    "image": int(mpts[k]),
                    "expected": int(first_img[pts[k]]),
                }
            stab = R.unit_mask[en] & (enm1 == R.zero)
            transfer_checked += int(stab.sum())
            ok = Rp.unit_mask[men[stab]] & (menm1[stab] == Rp.zero)
            if not ok.all() and st_witness is None:
                k = int(np.nonzero(stab)[0][np.nonzero(~ok)[0][0]])
                st_witness = {"word": [R.name(int(digits[r, k])) for r in range(length)]}
            checked += digits.shape[1]
    covered = first_img >= 0
    if wd_witness is None and not (first_img[covered] == table[covered]).all():
        k = int(np.nonzero(first_img[covered] != table[covered])[0][0])
        p = int(np.nonzero(covered)[0][k])
        wd_witness = {"point": p, "image": int(table[p]), "expected": int(first_img[p])}
    label = _pair_label(jmap)
    return [
        {
            "name": f"well-defined[len<={max_len}]",
            "target": label,
            "mode": "exhaustive",
            "checked": checked,
            "passed": wd_witness is None,
            "witness": wd_witness,
        },
        {
            "name": f"stabilizer-transfer[len<={max_len}]",
            "target": label,
            "mode": "exhaustive",
            "checked": transfer_checked,
            "passed": st_witness is None,
            "witness": st_witness,
        },
    ]


def _single_formula_record(jmap: JordanMap, dom: LineContext, img: LineContext, table: np.ndarray, c_ids: np.ndarray) -> dict:
    """The one-shot description over words of length m = max(2, diameter)."""
    R, Rp = jmap.domain, jmap.codomain
    n = R.size
    m = max(2, dom.graph.diameters[int(dom.graph.comp[dom.line.base])])
    if n**m > WORK_BUDGET:
        raise RingTooLargeError("the closed-formula sweep exceeds the work budget")
    witness = None
    seen = np.zeros(len(dom.line), dtype=bool)
    for digits in _word_chunks(n, m):
        en, enm1 = _first_rows(R, digits)
        men, menm1 = _first_rows(Rp, jmap.values[digits])
        pts = dom.line.pair_point[en, enm1]
        mpts = img.line.pair_point[men, menm1]
        seen[pts] = True
        bad = table[pts] != mpts
        if bad.any() and witness is None:
            k = int(np.nonzero(bad)[0][0])
            witness = {
                "word": [R.name(int(digits[r, k])) for r in range(m)],
                "image": int(mpts[k]),
                "expected": int(table[pts[k]]),
            }
    if witness is None and not np.array_equal(np.nonzero(seen)[0], c_ids):
        witness = {"uncovered": int(len(c_ids) - int(seen[c_ids].sum()))}
    return {
        "name": f"single-formula[m={m}]",
        "target": _pair_label(jmap),
        "mode": "exhaustive",
        "checked": n**m,
        "passed": witness is None,
        "witness": witness,
    }


def _triple_and_affine_records(jmap: JordanMap, dom: LineContext, img: LineContext, table: np.ndarray) -> list[dict]:
    R, Rp = jmap.domain, jmap.codomain
    label = _pair_label(jmap)
    records = []
    triple = [(R.one, R.zero), (R.zero, R.one), (R.one, R.one)]
    timg = [(Rp.one, Rp.zero), (Rp.zero, Rp.one), (Rp.one, Rp.one)]
    witness = None
    for (a, b), (a2, b2) in zip(triple, timg):
        if table[dom.line.point_of(a, b)] != img.line.point_of(a2, b2):
            witness = {"pair": (R.name(a), R.name(b))}
            break
    records.append(
        {
            "name": "fundamental-triple",
            "target": label,
            "mode": "exhaustive",
            "checked": 3,
            "passed": witness is None,
            "witness": witness,
        }
    )
    ts = np.arange(R.size, dtype=np.int64)
    vts = jmap.values[ts]
    for name, dom_pts, img_pts in (
        ("affine-t1", dom.line.pair_point[ts, R.one], img.line.pair_point[vts, Rp.one]),
        ("affine-1t", dom.line.pair_point[R.one, ts], img.line.pair_point[Rp.one, vts]),
    ):
        bad = table[dom_pts] != img_pts
        witness = None
        if bad.any():
            witness = {"t": R.name(int(ts[np.nonzero(bad)[0][0]]))}
        records.append(
            {
                "name": name,
                "target": label,
                "mode": "exhaustive",
                "checked": R.size,
                "passed": witness is None,
                "witness": witness,
            }
        )
    return records


def induced_map(jmap: JordanMap, dom_ctx: Optional[LineContext] = None, img_ctx: Optional[LineContext] = None, max_pair_len: int = 3) -> InducedMap:
    """Realize R(1,0)E(T) -> R'(1',0')E(T^alpha) as a table over C.

    The table is transported along the witness words; the certificate then
    re-derives it from scratch: the fundamental triple, both affine actions,
    well-definedness and stabilizer transfer over all words up to
    ``max_pair_len``, the closed degree-m formula with coverage of C, and
    containment of the image in the embedded line over the subring generated
    by the image (with equality when the image is closed).  A certificate
    failure raises, since it would falsify the implementation.
    """
    dom = dom_ctx or line_context(jmap.domain)
    img = img_ctx or line_context(jmap.codomain)
    bc = dom.base
    table = np.full(len(dom.line), -1, dtype=np.int32)
    table[bc.base] = img.base.base
    for p in bc.order[1:]:
        prev, t = bc.parent[p]
        table[p] = img.base.act[table[prev], int(jmap.values[t])]
    c_ids = bc.ids

    records = _triple_and_affine_records(jmap, dom, img, table)
    records.extend(_word_sweep_records(jmap, dom, img, table, max_pair_len))
    records.append(_single_formula_record(jmap, dom, img, table, c_ids))

    sub, to_parent, _ = subring_as_ring(jmap.codomain, sorted(jmap.image_closure))
    sctx = line_context(sub)
    emb = embed_subline(img.line, sctx.line, to_parent, label=f"closure[{_pair_label(jmap)}]")
    c2_ids = frozenset(emb[int(i)] for i in sctx.base.ids)
    image_pts = frozenset(int(table[i]) for i in c_ids)
    label = _pair_label(jmap)
    records.append(
        {
            "name": "image-in-c2",
            "target": label,
            "mode": "exhaustive",
            "checked": len(c_ids),
            "passed": image_pts <= c2_ids,
            "witness": None if image_pts <= c2_ids else {"stray": sorted(image_pts - c2_ids)[:4]},
        }
    )
    if jmap.image_closed:
        records.append(
            {
                "name": "c2-equality",
                "target": label,
                "mode": "exhaustive",
                "checked": len(c2_ids),
                "passed": image_pts == c2_ids,
                "witness": None if image_pts == c2_ids else {"missed": sorted(c2_ids - image_pts)[:4]},
            }
        )
    failed = [r for r in records if not r["passed"]]
    if failed:
        raise AssertionError(
            f"induced-map certificate failed: {failed[0]['name']}: {failed[0]['witness']}"
        )
    return InducedMap(
        jmap=jmap,
        dom=dom,
        img=img,
        table=table,
        c_ids=c_ids,
        sub=sub,
        sub_to_parent=to_parent,
        c2_ids=c2_ids,
        certificate=records,
        observed_injective=len(image_pts) == len(c_ids),
        maps_onto_c2=image_pts == c2_ids,
    )


def check_equivariance(imap: InducedMap, max_row_len: int = 2) -> list[dict]:
    """The action diagram and the second-row correspondence.

    For every p in C and t in R the image of p * E(t) must be
    p^oa * E(t^alpha); and for every word V up to ``max_row_len`` the second
    rows of E(V) and E(V^alpha) must be oa-corresponding points.
    """
    jm = imap.jmap
    R, Rp = jm.domain, jm.codomain
    dom, img = imap.dom, imap.img
    table = imap.table
    c = imap.c_ids
    label = _pair_label(jm)
    lhs = table[dom.base.act[c]]
    rhs = img.base.act[table[c][:, None], jm.values[None, :]]
    bad = lhs != rhs
    witness = None
    if bad.any():
        i, j = (int(x[0]) for x in np.nonzero(bad))
        witness = {"point": int(c[i]), "t": R.name(j)}
    records = [
        {
            "name": "equivariance-diagram",
            "target": label,
            "mode": "exhaustive",
            "checked": int(c.size) * R.size,
            "passed": witness is None,
            "witness": witness,
        }
    ]
    checked = 0
    witness = None
    for length in range(max_row_len + 1):
        for digits in _word_chunks(R.size, length):
            _, _, cc, dd = kernels.eval_words_eword(
                R.mul_table, R.add_table, R.neg_table, R.one, R.zero, digits
            )
            _, _, mc, md = kernels.eval_words_eword(
                Rp.mul_table, Rp.add_table, Rp.neg_table, Rp.one, Rp.zero, jm.values[digits]
            )
            pts = dom.line.pair_point[cc, dd]
            mpts = img.line.pair_point[mc, md]
            bad = table[pts] != mpts
            if bad.any() and witness is None:
                k = int(np.nonzero(bad)[0][0])
                witness = {"word": [R.name(int(digits[r, k])) for r in range(length)]}
            checked += digits.shape[1]
    records.append(
        {
            "name": f"second-row[len<={max_row_len}]",
            "target": label,
            "mode": "exhaustive",
            "checked": checked,
            "passed": witness is None,
            "witness": witness,
        }
    )
    return records


# -- harmonic quadruples -------------------------------------------------------


def _frame_coords(line: Line, i0, i1, pts: np.ndarray, strict: bool = True):
    """Coordinates of points in the frame moving (p0, p1) to (R(1,0), R(0,1)).

    i0 and i1 may be scalars or arrays (one frame per row).  Returns (x, y,
    ok) where ok flags rows whose base pair is distant; strict mode raises on
    a non-distant base pair instead.
    """
    R = line.ring
    mul, add, neg, inv = R.mul_table, R.add_table, R.neg_table, R.inv_table
    i0 = np.asarray(i0, dtype=np.int64)
    i1 = np.asarray(i1, dtype=np.int64)
    pa, pb, qc, qd = (t[i0] for t in line.comp_inv)
    c1 = line.reps[i1, 0]
    d1 = line.reps[i1, 1]
    wx = add[mul[c1, pa], mul[d1, qc]]
    wy = add[mul[c1, pb], mul[d1, qd]]
    ok = R.unit_mask[wy]
    if strict and not ok.all():
        raise ValueError("the first two points are not distant")
    wyi = inv[wy]
    k10 = neg[mul[wyi, wx]]
    m00 = add[pa, mul[pb, k10]]
    m01 = mul[pb, wyi]
    m10 = add[qc, mul[qd, k10]]
    m11 = mul[qd, wyi]
    cc = line.reps[pts, 0]
    dd = line.reps[pts, 1]
    x = add[mul[cc, m00], mul[dd, m10]]
    y = add[mul[cc, m01], mul[dd, m11]]
    return x, y, ok


def harmonic(line: Line, p0, p1, p2, p3) -> bool:
    """Whether (p0, p1, p2, p3) is a harmonic quadruple.

    After the frame moves (p0, p1) to (R(1,0), R(0,1)), the last two points
    must read R(u, 1) and R(-u, 1) for one unit u.  Preconditions: p0 and p1
    are distant and each of p2, p3 is distant to both; in characteristic 2
    this forces p2 = p3.
    """
    R = line.ring
    i0, i1 = line.point_id(p0), line.point_id(p1)
    pts = np.array([line.point_id(p2), line.point_id(p3)], dtype=np.int64)
    x, y, _ = _frame_coords(line, i0, i1, pts)
    if not (R.unit_mask[y].all() and R.unit_mask[x].all()):
        raise ValueError("quadruple violates the distance preconditions")
    u = R.mul(R.inverse(int(y[0])), int(x[0]))
    v = R.mul(R.inverse(int(y[1])), int(x[1]))
    return v == R.neg(u)


def check_prop45(imap: InducedMap, budget: int = HARMONIC_BUDGET, seed: int = 0) -> list[dict]:
    """Distant pairs, harmonic quadruples and distance contraction under oa.

    Distant pairs and distances are swept exhaustively over C x C.  Harmonic
    quadruples are generated as (p0, p1, R(u,1)M0, R(-u,1)M0) over ordered
    distant base pairs and units u, exhaustively up to the budget and by
    seeded sampling beyond it.
    """
    jm = imap.jmap
    R, Rp = jm.domain, jm.codomain
    dom, img = imap.dom, imap.img
    line, iline = dom.line, img.line
    table = imap.table
    c = imap.c_ids
    label = _pair_label(jm)
    timg = table[c]

    adjd = dom.graph.adj[np.ix_(c, c)]
    adji = img.graph.adj[timg][:, timg]
    bad = adjd & ~adji
    witness = None
    if bad.any():
        i, j = (int(x[0]) for x in np.nonzero(bad))
        witness = {"pair": (int(c[i]), int(c[j]))}
    records = [
        {
            "name": "distant-pairs",
            "target": label,
            "mode": "exhaustive",
            "checked": int(adjd.sum()),
            "passed": witness is None,
            "witness": witness,
        }
    ]

    ii, jj = np.nonzero(adjd)
    p0s, p1s = c[ii], c[jj]
    units = np.array(R.units(), dtype=np.int64)
    total = p0s.size * units.size
    if total <= budget:
        mode = "exhaustive"
        P0 = np.repeat(p0s, units.size)
        P1 = np.repeat(p1s, units.size)
        U = np.tile(units, p0s.size)
    else:
        mode = "sampled"
        rng = np.random.default_rng(seed)
        k = rng.integers(0, p0s.size, size=budget)
        P0, P1 = p0s[k], p1s[k]
        U = units[rng.integers(0, units.size, size=budget)]
    mul, add, neg = R.mul_table, R.add_table, R.neg_table
    a0, b0 = line.reps[P0, 0], line.reps[P0, 1]
    a1, b1 = line.reps[P1, 0], line.reps[P1, 1]
    P2 = line.pair_point[add[mul[U, a0], a1], add[mul[U, b0], b1]]
    NU = neg[U]
    P3 = line.pair_point[add[mul[NU, a0], a1], add[mul[NU, b0], b1]]
    if (P2 < 0).any() or (P3 < 0).any():
        raise AssertionError("a constructed harmonic point is not admissible")
    x, y, _ = _frame_coords(line, P0, P1, P2)
    if not ((R.inv_table[y] >= 0).all() and (mul[R.inv_table[y], x] == U).all()):
        raise AssertionError("the domain quadruple failed its own harmonicity")
    x, y, _ = _frame_coords(line, P0, P1, P3)
    if not (mul[R.inv_table[y], x] == NU).all():
        raise AssertionError("the domain quadruple failed its own harmonicity")
    Q0, Q1, Q2, Q3 = table[P0], table[P1], table[P2], table[P3]
    imul, iinv, ineg, iunit = Rp.mul_table, Rp.inv_table, Rp.neg_table, Rp.unit_mask
    x2, y2, ok = _frame_coords(iline, Q0, Q1, Q2, strict=False)
    x3, y3, ok3 = _frame_coords(iline, Q0, Q1, Q3, strict=False)
    ok &= ok3 & iunit[x2] & iunit[y2] & iunit[x3] & iunit[y3]
    u2 = imul[iinv[y2], x2]
    u3 = imul[iinv[y3], x3]
    bad = ~(ok & (u3 == ineg[u2]))
    witness = None
    if bad.any():
        k = int(np.nonzero(bad)[0][0])
        witness = {"quadruple": (int(P0[k]), int(P1[k]), int(P2[k]), int(P3[k]))}
    records.append(
        {
            "name": "harmonic-quadruples",
            "target": label,
            "mode": mode,
            "checked": int(P0.size),
            "passed": witness is None,
            "witness": witness,
        }
    )

    dd = dom.graph.dist[np.ix_(c, c)]
    di = img.graph.dist[timg][:, timg]
    viol = (di < 0) | (di > dd)
    witness = None
    if viol.any():
        i, j = (int(x[0]) for x in np.nonzero(viol))
        witness = {"pair": (int(c[i]), int(c[j])), "dist": int(dd[i, j]), "image_dist": int(di[i, j])}
    records.append(
        {
            "name": "distance-contraction",
            "target": label,
            "mode": "exhaustive",
            "checked": int(c.size) ** 2,
            "passed": witness is None,
            "witness": witness,
        }
    )
    return records


# -- extensions to the whole line ----------------------------------------------


def extend_map(imap: InducedMap, choices: Optional[dict] = None, components: Optional[list] = None) -> np.ndarray:
    """Paste the induced map to a total point map on the line.

    ``components`` partitions the domain point ids (default: the graph
    components).  The part containing R(1, 0) keeps the induced table; every
    other part mu needs ``choices[mu] = (A, A2)`` with A invertible over the
    domain and its first row a point of the part, and A2 invertible over the
    codomain.  On that part the map reads p -> (p * A^-1)^oa * A2.
    """
    dom, img = imap.dom, imap.img
    line, iline = dom.line, img.line
    if components is None:
        components = [dom.graph.component_ids(k) for k in range(dom.graph.n_components)]
    choices = choices or {}
    out = np.full(len(line), -1, dtype=np.int32)
    for mu, part in enumerate(components):
        part = np.asarray(part, dtype=np.int64)
        if (part == line.base).any():
            if (imap.table[part] < 0).any():
                raise AssertionError("the induced table misses a point of the base part")
            out[part] = imap.table[part]
            continue
        if mu not in choices:
            raise ValueError(f"no choice matrices given for part {mu}")
        A, A2 = choices[mu]
        if A.ring is not line.ring or A2.ring is not iline.ring:
            raise ValueError("choice matrices live over the wrong rings")
        Ainv = invert(A)
        if isinstance(Ainv, NonInvertible) or isinstance(invert(A2), NonInvertible):
            raise ValueError(f"choice matrices for part {mu} must be invertible")
        first = int(line.pair_point[A.a, A.b])
        if first < 0 or not (part == first).any():
            raise ValueError(f"the first row of A must represent a point of part {mu}")
        for i in part:
            x, y = Ainv.act_row(int(line.reps[i, 0]), int(line.reps[i, 1]))
            q = int(line.pair_point[x, y])
            j = int(imap.table[q]) if q >= 0 else -1
            if j < 0:
                raise AssertionError("a translate left the base component")
            gx, gy = A2.act_row(int(iline.reps[j, 0]), int(iline.reps[j, 1]))
            out[i] = iline.point_of(gx, gy)
    return out


def entrywise_point_map(jmap: JordanMap, dom_line: Line, img_line: Line) -> np.ndarray:
    """R(a, b) -> R'(a^alpha, b^alpha) on the whole line; homomorphisms only."""
    if not jmap.is_homomorphism:
        raise ValueError("the entrywise point map needs a ring homomorphism")
    va = jmap.values[dom_line.reps[:, 0]]
    vb = jmap.values[dom_line.reps[:, 1]]
    out = img_line.pair_point[va, vb]
    if (out < 0).any():
        raise AssertionError("an entrywise image pair is not admissible")
    return out.astype(np.int32)


def alpha_star(jmap: JordanMap, M: Mat2) -> Mat2:
    """The entrywise image of a matrix."""
    if M.ring is not jmap.domain:
        raise ValueError("matrix lives over the wrong ring")
    v = jmap.values
    return Mat2(jmap.codomain, int(v[M.a]), int(v[M.b]), int(v[M.c]), int(v[M.d]))


def alpha_star_star(jmap: JordanMap, M: Mat2) -> Mat2:
    """The lift E(0')^-1 ((M^T)^entrywise)^-1 E(0') for antihomomorphisms."""
    Rp = jmap.codomain
    N = invert(alpha_star(jmap, M.transpose()))
    if isinstance(N, NonInvertible):
        raise NonInvertibleError("the transposed entrywise image is not invertible")
    e0 = E(Rp, Rp.zero)
    e0inv = Mat2(Rp, Rp.zero, Rp.neg(Rp.one), Rp.one, Rp.zero)
    return e0inv * N * e0


def sigma_point_map(dom_line: Line, img_line: Line, sigma) -> np.ndarray:
    """The map R(1,0)M -> R'(1',0')M^sigma read off the completion witnesses."""
    out = np.full(len(dom_line), -1, dtype=np.int32)
    for i, M in enumerate(dom_line.completions):
        S = sigma(M)
        out[i] = img_line.point_of(S.a, S.b)
    return out
