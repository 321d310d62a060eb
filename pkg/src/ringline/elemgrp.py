"""The group of 2x2 elementary matrices E(t) = [[t, 1], [-1, 0]] over a ring.

Matrices are stored entrywise as element indices of a :class:`FiniteRing`.
Words are sequences of element indices; ``E_word`` multiplies out the
corresponding generator product left to right.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Union

import numpy as np

from . import kernels
from .rings import (
    FiniteRing,
    RingTooLargeError,
    _digits_to_index,
    _index_to_digits,
    subring_closure,
)


class NonInvertibleError(ValueError):
    """Raised when a 2x2 matrix has no two-sided inverse over its ring."""


@dataclass(frozen=True)
class NonInvertible:
    """Witness that a matrix is singular: two distinct rows with equal image."""

    row1: tuple[int, int]
    row2: tuple[int, int]


@dataclass(frozen=True, eq=False)
class Mat2:
    """A 2x2 matrix [[a, b], [c, d]] with entries given as element indices."""

    ring: FiniteRing
    a: int
    b: int
    c: int
    d: int

    def key(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Mat2)
            and self.ring is other.ring
            and self.key() == other.key()
        )

    def __hash__(self) -> int:
        return hash((id(self.ring), self.a, self.b, self.c, self.d))

    def __repr__(self) -> str:
        R = self.ring
        return f"[[{R.name(self.a)}, {R.name(self.b)}], [{R.name(self.c)}, {R.name(self.d)}]]"

    @classmethod
    def identity(cls, ring: FiniteRing) -> "Mat2":
        return cls(ring, ring.one, ring.zero, ring.zero, ring.one)

    @classmethod
    def diag(cls, ring: FiniteRing, u, v) -> "Mat2":
        return cls(ring, ring.element_index(u), ring.zero, ring.zero, ring.element_index(v))

    @classmethod
    def scalar(cls, ring: FiniteRing, u) -> "Mat2":
        return cls.diag(ring, u, u)

    @classmethod
    def from_rows(cls, ring: FiniteRing, rows) -> "Mat2":
        (a, b), (c, d) = rows
        ei = ring.element_index
        return cls(ring, ei(a), ei(b), ei(c), ei(d))

    def __mul__(self, other: "Mat2") -> "Mat2":
        if not isinstance(other, Mat2):
            return NotImplemented
        if self.ring is not other.ring:
            raise ValueError("matrices over different rings")
        R = self.ring
        return Mat2(
            R,
            R.add(R.mul(self.a, other.a), R.mul(self.b, other.c)),
            R.add(R.mul(self.a, other.b), R.mul(self.b, other.d)),
            R.add(R.mul(self.c, other.a), R.mul(self.d, other.c)),
            R.add(R.mul(self.c, other.b), R.mul(self.d, other.d)),
        )

    def act_row(self, x: int, y: int) -> tuple[int, int]:
        """Image of the row vector (x, y) under right multiplication."""
        R = self.ring
        return (
            R.add(R.mul(x, self.a), R.mul(y, self.c)),
            R.add(R.mul(x, self.b), R.mul(y, self.d)),
        )

    def transpose(self) -> "Mat2":
        return Mat2(self.ring, self.a, self.c, self.b, self.d)

    def neg(self) -> "Mat2":
        R = self.ring
        return Mat2(R, R.neg(self.a), R.neg(self.b), R.neg(self.c), R.neg(self.d))

    def is_identity(self) -> bool:
        R = self.ring
        return self.key() == (R.one, R.zero, R.zero, R.one)

    def is_diagonal(self) -> bool:
        R = self.ring
        return self.b == R.zero and self.c == R.zero

    def inverse(self) -> "Mat2":
        inv = invert(self)
        if isinstance(inv, NonInvertible):
            raise NonInvertibleError(f"{self!r} is not invertible over {self.ring.label}")
        return inv


def E(ring: FiniteRing, t) -> Mat2:
    """The elementary generator [[t, 1], [-1, 0]]."""
    ti = ring.element_index(t)
    return Mat2(ring, ti, ring.one, ring.neg(ring.one), ring.zero)


def E_word(ring: FiniteRing, word: Sequence) -> Mat2:
    """The product E(t_1) E(t_2) ... E(t_n) for a word (t_1, ..., t_n)."""
    acc = Mat2.identity(ring)
    for t in word:
        acc = acc * E(ring, t)
    return acc


def word_inverse(ring: FiniteRing, word: Sequence) -> tuple[int, ...]:
    """A word W with E_word(W) = E_word(word)^-1, using E(t)^-1 = E(0)E(-t)E(0)."""
    out: list[int] = []
    for t in reversed([ring.element_index(t) for t in word]):
        out.extend((ring.zero, ring.neg(t), ring.zero))
    return tuple(out)


def invert(M: Mat2) -> Union[Mat2, NonInvertible]:
    """Two-sided inverse of ``M``, or a :class:`NonInvertible` witness.

    Over a tabled ring this decides whether right multiplication permutes the
    row space R^2 and reads the inverse rows off the preimages of (1, 0) and
    (0, 1); if not, it returns two distinct rows with the same image.  Over an
    untabled matrix ring with a field base it flattens the 2x2 block matrix
    and runs Gauss-Jordan over the base field.  Results are cached per ring.
    """
    R = M.ring
    cache = getattr(R, "_inv2_cache", None)
    if cache is None:
        cache = {}
        R._inv2_cache = cache
    key = M.key()
    if key in cache:
        return cache[key]
    result = _invert_uncached(M)
    cache[key] = result
    return result


def _invert_uncached(M: Mat2) -> Union[Mat2, NonInvertible]:
    R = M.ring
    if R.mul_table is not None:
        flags, pa, pb, qc, qd = kernels.batch_invertible(
            R.mul_table,
            R.add_table,
            R.one,
            R.zero,
            np.array([M.a], dtype=np.int32),
            np.array([M.b], dtype=np.int32),
            np.array([M.c], dtype=np.int32),
            np.array([M.d], dtype=np.int32),
        )
        if flags[0]:
            return Mat2(R, int(pa[0]), int(pb[0]), int(qc[0]), int(qd[0]))
        return _collision_witness(M)
    if R.spec.kind == "matrix" and R.spec.params[0].kind == "gf":
        return _invert_block_matrix(M)
    raise RingTooLargeError(
        f"inverting 2x2 matrices over {R.label} needs op tables or a matrix ring"
    )


def _collision_witness(M: Mat2) -> NonInvertible:
    seen: dict[tuple[int, int], tuple[int, int]] = {}
    for x in range(M.ring.size):
        for y in range(M.ring.size):
            img = M.act_row(x, y)
            if img in seen:
                return NonInvertible(seen[img], (x, y))
            seen[img] = (x, y)
    raise AssertionError("row action is injective; matrix is invertible")


def _invert_block_matrix(M: Mat2) -> Union[Mat2, NonInvertible]:
    """Gauss-Jordan on the flattened 2m x 2m matrix over the base field.

    Row operations are mirrored on an identity block W, so on full rank
    W = M^-1; on rank deficiency a leftover zero row of the reduced matrix
    gives a left kernel vector (the corresponding row of W).
    """
    R = M.ring
    base, m = R.base, R.msize
    n2 = 2 * m

    def block(idx: int):
        digits = _index_to_digits(idx, m * m, base.size)
        return [[digits[r * m + c] for c in range(m)] for r in range(m)]

    blocks = [[block(M.a), block(M.b)], [block(M.c), block(M.d)]]
    aug = [
        [blocks[br][bc][r][c] for bc in range(2) for c in range(m)]
        for br in range(2)
        for r in range(m)
    ]
    w = [[base.one if r == c else base.zero for c in range(n2)] for r in range(n2)]
    rank = 0
    for col in range(n2):
        pivot = next((r for r in range(rank, n2) if aug[r][col] != base.zero), None)
        if pivot is None:
            continue
        aug[rank], aug[pivot] = aug[pivot], aug[rank]
        w[rank], w[pivot] = w[pivot], w[rank]
        pv = base.inverse(aug[rank][col])
        aug[rank] = [base.mul(pv, v) for v in aug[rank]]
        w[rank] = [base.mul(pv, v) for v in w[rank]]
        for r in range(n2):
            if r == rank or aug[r][col] == base.zero:
                continue
            f = aug[r][col]
            aug[r] = [base.sub(v, base.mul(f, u)) for v, u in zip(aug[r], aug[rank])]
            w[r] = [base.sub(v, base.mul(f, u)) for v, u in zip(w[r], w[rank])]
        rank += 1

    def encode_rows(rows) -> int:
        digits = [rows[r][c] for r in range(m) for c in range(m)]
        return _digits_to_index(digits, base.size)

    if rank < n2:
        v = w[rank]
        zero_rows = [[base.zero] * m for _ in range(m - 1)]
        x = encode_rows([v[:m]] + zero_rows)
        y = encode_rows([v[m:]] + zero_rows)
        return NonInvertible((x, y), (R.zero, R.zero))

    def unblock(br: int, bc: int) -> int:
        return _digits_to_index(
            [w[br * m + r][bc * m + c] for r in range(m) for c in range(m)], base.size
        )

    return Mat2(R, unblock(0, 0), unblock(0, 1), unblock(1, 0), unblock(1, 1))


def is_invertible(M: Mat2) -> bool:
    return isinstance(invert(M), Mat2)


# -- group enumeration -------------------------------------------------------


class GroupTable:
    """The group generated by all E(t), enumerated breadth first.

    ``elements`` holds entry 4-tuples in discovery order (identity first);
    ``word(i)`` reconstructs a minimal generator word for element i (the
    first one found under ascending generator order).
    """

    def __init__(self, ring: FiniteRing, elements, parents):
        self.ring = ring
        self.elements = elements
        self.parents = parents
        self.index = {key: i for i, key in enumerate(elements)}

    def __len__(self) -> int:
        return len(self.elements)

    def mat(self, i: int) -> Mat2:
        return Mat2(self.ring, *self.elements[i])

    def find(self, M: Mat2) -> Optional[int]:
        return self.index.get(M.key())

    def __contains__(self, M) -> bool:
        key = M.key() if isinstance(M, Mat2) else tuple(M)
        return key in self.index

    def word(self, i: int) -> tuple[int, ...]:
        letters: list[int] = []
        while i > 0:
            parent, letter = self.parents[i]
            letters.append(letter)
            i = parent
        return tuple(reversed(letters))


def enumerate_E2(ring: FiniteRing, cap: int = 1_000_000) -> GroupTable:
    """Enumerate the group generated by the E(t) with minimal witness words."""
    if ring.mul_table is None:
        raise RingTooLargeError(
            f"enumerating the elementary group over {ring.label} needs op tables"
        )
    n = ring.size
    mt, at, ng = ring.mul_table, ring.add_table, ring.neg_table
    n64 = np.int64(n)

    def keys_of(a, b, c, d):
        return ((a.astype(np.int64) * n64 + b) * n64 + c) * n64 + d

    ident = (ring.one, ring.zero, ring.zero, ring.one)
    elements = [ident]
    parents: list[tuple[int, int]] = [(-1, -1)]
    index = {((ident[0] * n + ident[1]) * n + ident[2]) * n + ident[3]: 0}
    frontier = [0]
    gens = np.arange(n, dtype=np.int32)
    while frontier:
        ea = np.array([elements[i][0] for i in frontier], dtype=np.int32)
        eb = np.array([elements[i][1] for i in frontier], dtype=np.int32)
        ec = np.array([elements[i][2] for i in frontier], dtype=np.int32)
        ed = np.array([elements[i][3] for i in frontier], dtype=np.int32)
        # right-multiply every frontier element by every generator E(t)
        na = at[mt[ea[:, None], gens[None, :]], ng[eb][:, None]]
        nb = np.broadcast_to(ea[:, None], na.shape)
        nc = at[mt[ec[:, None], gens[None, :]], ng[ed][:, None]]
        nd = np.broadcast_to(ec[:, None], na.shape)
        keys = keys_of(na.ravel(), nb.ravel(), nc.ravel(), nd.ravel())
        flat = (na.ravel(), nb.ravel(), nc.ravel(), nd.ravel())
        _, first = np.unique(keys, return_index=True)
        new_frontier = []
        for pos in np.sort(first):
            key = int(keys[pos])
            if key in index:
                continue
            idx = len(elements)
            if idx >= cap:
                raise RingTooLargeError(
                    f"elementary group over {ring.label} exceeds cap {cap}"
                )
            row, col = divmod(int(pos), n)
            elements.append(tuple(int(v[pos]) for v in flat))
            parents.append((frontier[row], col))
            index[key] = idx
            new_frontier.append(idx)
        frontier = new_frontier
    return GroupTable(ring, elements, parents)


def centre_H(ring: FiniteRing, group: Optional[GroupTable] = None, cross_check: bool = True) -> list[Mat2]:
    """Members of the elementary group of the form diag(a, a), a a central unit.

    With ``cross_check`` the result is compared against the set of group
    members commuting with every generator E(t); a mismatch raises.
    """
    if group is None:
        group = enumerate_E2(ring)
    out = []
    for a in ring.central_units():
        M = Mat2.scalar(ring, a)
        if M.key() in group.index:
            out.append(M)
    if cross_check:
        commuting = _commuting_members(ring, group)
        if commuting != {M.key() for M in out}:
            raise AssertionError(
                f"centre mismatch over {ring.label}: diag form {len(out)}, "
                f"commuting members {len(commuting)}"
            )
    return out


def _commuting_members(ring: FiniteRing, group: GroupTable) -> set:
    mt, at, ng = ring.mul_table, ring.add_table, ring.neg_table
    ea = np.array([e[0] for e in group.elements], dtype=np.int32)
    eb = np.array([e[1] for e in group.elements], dtype=np.int32)
    ec = np.array([e[2] for e in group.elements], dtype=np.int32)
    ed = np.array([e[3] for e in group.elements], dtype=np.int32)
    ok = np.ones(len(group.elements), dtype=bool)
    for t in range(ring.size):
        # M * E(t) entries
        ra = at[mt[ea, t], ng[eb]]
        rb = ea
        rc = at[mt[ec, t], ng[ed]]
        rd = ec
        # E(t) * M entries
        la = at[mt[t, ea], ec]
        lb = at[mt[t, eb], ed]
        lc = ng[ea]
        ld = ng[eb]
        ok &= (ra == la) & (rb == lb) & (rc == lc) & (rd == ld)
    return {
        (int(ea[i]), int(eb[i]), int(ec[i]), int(ed[i]))
        for i in np.nonzero(ok)[0]
    }


def is_scalar_central_unit(M: Mat2, subset: Optional[frozenset] = None) -> bool:
    """Whether M = diag(a, a) with a a central unit (of the subring ``subset``).

    With ``subset`` given, a must lie in it, commute with all of it, and its
    inverse must lie in it again; otherwise the whole ring is used.
    """
    R = M.ring
    if not M.is_diagonal() or M.a != M.d:
        return False
    a = M.a
    if not R.is_unit(a):
        return False
    if subset is None:
        return a in set(R.centre())
    if a not in subset:
        return False
    if R.inverse(a) not in subset:
        return False
    return all(R.mul(a, s) == R.mul(s, a) for s in subset)


# -- relations and their images ----------------------------------------------


def identity_relations(ring: FiniteRing, max_len: int) -> list[tuple[int, ...]]:
    """All words T with |T| <= max_len and E_word(T) = identity."""
    if ring.mul_table is None:
        raise RingTooLargeError(f"relation sweep over {ring.label} needs op tables")
    rows = kernels.identity_words_upto(
        ring.mul_table, ring.add_table, ring.neg_table, ring.one, ring.zero, max_len
    )
    return [tuple(int(t) for t in row if t >= 0) for row in rows]


@dataclass
class NAlphaResult:
    """The subgroup generated by E_word(T^alpha) over identity words T, |T| <= L.

    The sweep is length bounded, so this is a subgroup of the full normal
    subgroup and ``complete`` stays False.  ``all_scalar_central`` reports
    whether every subgroup member is diag(a, a) with a central unit of the
    subring generated by the image of alpha.
    """

    max_len: int
    relations_checked: int
    generators: list[tuple[int, int, int, int]]
    witnesses: list[tuple[int, ...]]
    subgroup: list[tuple[int, int, int, int]]
    all_scalar_central: bool
    failures: list[tuple[int, int, int, int]]
    complete: bool = False


def n_alpha(
    source: FiniteRing,
    target: FiniteRing,
    alpha_fn: Callable[[int], int],
    max_len: int = 4,
    image: Optional[Sequence[int]] = None,
    cap: int = 100_000,
) -> NAlphaResult:
    """Collect E_word(T^alpha) over identity words T and close under the group ops."""
    relations = identity_relations(source, max_len)
    if image is None:
        image = [alpha_fn(i) for i in range(source.size)]
    closure, _ = subring_closure(target, image)

    gens: dict[tuple[int, int, int, int], tuple[int, ...]] = {}
    for word in relations:
        mapped = tuple(alpha_fn(t) for t in word)
        key = E_word(target, mapped).key()
        if key not in gens:
            gens[key] = word

    ident = Mat2.identity(target).key()
    subgroup = {ident}
    gen_mats = [Mat2(target, *k) for k in gens]
    frontier = [Mat2(target, *ident)]
    while frontier:
        nxt = []
        for M in frontier:
            for G in gen_mats:
                for N in (M * G, M * G.inverse()):
                    if N.key() not in subgroup:
                        if len(subgroup) >= cap:
                            raise RingTooLargeError("generated subgroup exceeds cap")
                        subgroup.add(N.key())
                        nxt.append(N)
        frontier = nxt

    failures = [
        key for key in sorted(subgroup)
        if not is_scalar_central_unit(Mat2(target, *key), closure)
    ]
    gen_keys = sorted(gens)
    return NAlphaResult(
        max_len=max_len,
        relations_checked=len(relations),
        generators=gen_keys,
        witnesses=[gens[k] for k in gen_keys],
        subgroup=sorted(subgroup),
        all_scalar_central=not failures,
        failures=failures,
    )


# -- invariant sweeps ---------------------------------------------------------


def _all_words_digits(n: int, length: int):
    """Digit matrix (length, n**length) of all words, lexicographic columns."""
    total = n**length
    idx = np.arange(total, dtype=np.int64)
    digits = np.empty((length, total), dtype=np.int32)
    rem = idx
    for k in range(length - 1, -1, -1):
        digits[k] = rem % n
        rem = rem // n
    return digits


def check_first_row_lemma(ring: FiniteRing, max_len: int = 4) -> dict:
    """First row of E_word(T) equals (e(n) at T, e(n-1) at T), exhaustively."""
    mt, at, ng = ring.mul_table, ring.add_table, ring.neg_table
    checked = 0
    for length in range(max_len + 1):
        digits = _all_words_digits(ring.size, length)
        en, enm1 = kernels.eval_words_e(mt, at, ng, ring.one, ring.zero, digits)
        a, b, _, _ = kernels.eval_words_eword(mt, at, ng, ring.one, ring.zero, digits)
        if not ((en == a).all() and (enm1 == b).all()):
            bad = int(np.nonzero((en != a) | (enm1 != b))[0][0])
            word = tuple(int(v) for v in digits[:, bad])
            return {"name": "first-row-form", "checked": checked, "passed": False, "witness": {"ring": ring.label, "word": word}}
        checked += digits.shape[1]
    return {"name": "first-row-form", "checked": checked, "passed": True, "witness": None}


def check_conjugation_words(ring: FiniteRing, max_len: int = 3) -> dict:
    """E_word((s,) + T + (0,-s,0)) equals the matrix product E(s) E(T) E(s)^-1.

    Cross-checks the sweep kernels against direct 2x2 multiplication.
    """
    mt, at, ng = ring.mul_table, ring.add_table, ring.neg_table
    checked = 0
    for length in range(max_len + 1):
        digits = _all_words_digits(ring.size, length)
        total = digits.shape[1]
        a, b, c, d = kernels.eval_words_eword(mt, at, ng, ring.one, ring.zero, digits)
        for s in range(ring.size):
            head = np.full((1, total), s, dtype=np.int32)
            tail = np.empty((3, total), dtype=np.int32)
            tail[0] = ring.zero
            tail[1] = ring.neg(s)
            tail[2] = ring.zero
            conj = np.concatenate([head, digits, tail], axis=0)
            ca, cb, cc, cd = kernels.eval_words_eword(mt, at, ng, ring.one, ring.zero, conj)
            Es = E(ring, s)
            Esi = Es.inverse()
            for col in range(total):
                M = Es * Mat2(ring, int(a[col]), int(b[col]), int(c[col]), int(d[col])) * Esi
                if M.key() != (int(ca[col]), int(cb[col]), int(cc[col]), int(cd[col])):
                    word = tuple(int(v) for v in digits[:, col])
                    return {
                        "name": "conjugation-word",
                        "checked": checked,
                        "passed": False,
                        "witness": {"ring": ring.label, "s": int(s), "word": word},
                    }
                checked += 1
    return {"name": "conjugation-word", "checked": checked, "passed": True, "witness": None}


def check_unit_entry_implication(ring: FiniteRing, max_len: int = 3) -> dict:
    """If the leading entry e(n) at T is a unit, so is its reversed twin."""
    mt, at, ng = ring.mul_table, ring.add_table, ring.neg_table
    unit = np.zeros(ring.size, dtype=bool)
    unit[list(ring.units())] = True
    checked = 0
    for length in range(max_len + 1):
        digits = _all_words_digits(ring.size, length)
        en, _ = kernels.eval_words_e(mt, at, ng, ring.one, ring.zero, digits)
        ten, _ = kernels.eval_words_e(mt, at, ng, ring.one, ring.zero, digits[::-1])
        bad = unit[en] & ~unit[ten]
        if bad.any():
            col = int(np.nonzero(bad)[0][0])
            word = tuple(int(v) for v in digits[:, col])
            return {
                "name": "unit-entry-implication",
                "checked": checked,
                "passed": False,
                "witness": {"ring": ring.label, "word": word},
            }
        checked += digits.shape[1]
    return {"name": "unit-entry-implication", "checked": checked, "passed": True, "witness": None}
