"""Finite unital rings with exact arithmetic.

Elements are integer indices 0 .. size-1 in construction order.  Rings at or
below the table limit materialize full numpy operation tables (the form the
compute kernels consume); larger rings keep closed-form operations only.
Supported constructions: integers mod n, Galois fields gf(p, k), square
matrix rings, finite direct products, and split extensions B + M of a base
field D by a D-bimodule M with an alternating bilinear product.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

DEFAULT_SIZE_CAP = 4096
TABLE_LIMIT = 256

# the exterior-style module product on D^3: eps1*eps2 = eps3 = -eps2*eps1,
# every other basis product zero
EXTERIOR3 = ((1, 2, 3, 1), (2, 1, 3, -1))


class RingTooLargeError(ValueError):
    pass


class NotAUnitError(ValueError):
    pass


# ---------------------------------------------------------------------------
# specs


@dataclass(frozen=True)
class RingSpec:
    """Canonical, hashable description of a supported ring construction."""

    kind: str
    params: tuple

    @classmethod
    def zmod(cls, n: int) -> "RingSpec":
        if n < 2:
            raise ValueError("modulus must be >= 2")
        return cls("zmod", (int(n),))

    @classmethod
    def gf(cls, p: int, k: int = 1, modulus: Sequence[int] | None = None) -> "RingSpec":
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        if k < 1:
            raise ValueError("extension degree must be >= 1")
        if k == 1:
            return cls("gf", (int(p), 1, None))
        if modulus is None:
            modulus = _first_irreducible(p, k)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree k")
        if not _is_irreducible(modulus, p):
            raise ValueError(f"modulus {modulus} is reducible over gf({p})")
        return cls("gf", (int(p), int(k), modulus))

    @classmethod
    def matrix(cls, base: "RingSpec", size: int) -> "RingSpec":
        if size not in (2, 4):
            raise ValueError("matrix size must be 2 or 4")
        return cls("matrix", (base, int(size)))

    @classmethod
    def product(cls, *factors: "RingSpec") -> "RingSpec":
        if len(factors) < 2:
            raise ValueError("a product needs at least two factors")
        return cls("product", tuple(factors))

    @classmethod
    def bm(
        cls,
        base: "RingSpec",
        mdim: int,
        table: Sequence[tuple[int, int, int, int]] = EXTERIOR3,
        chi: str = "identity",
    ) -> "RingSpec":
        if base.kind != "gf":
            raise ValueError("the split-extension base must be a field")
        if chi != "identity":
            raise ValueError("only the identity weight map is supported")
        if mdim < 1:
            raise ValueError("module dimension must be >= 1")
        canon = tuple(sorted((int(i), int(j), int(k), int(c)) for i, j, k, c in table))
        for i, j, k, _c in canon:
            if not (1 <= i <= mdim and 1 <= j <= mdim and 1 <= k <= mdim):
                raise ValueError(f"module product table indexes out of range: {(i, j, k)}")
        return cls("bm", (base, int(mdim), canon, chi))

    def to_dict(self) -> dict:
        if self.kind == "zmod":
            return {"kind": "zmod", "n": self.params[0]}
        if self.kind == "gf":
            p, k, modulus = self.params
            out = {"kind": "gf", "p": p, "k": k}
            if modulus is not None:
                out["modulus"] = list(modulus)
            return out
        if self.kind == "matrix":
            base, size = self.params
            return {"kind": "matrix", "base": base.to_dict(), "size": size}
        if self.kind == "product":
            return {"kind": "product", "factors": [f.to_dict() for f in self.params]}
        if self.kind == "bm":
            base, mdim, table, chi = self.params
            return {
                "kind": "bm",
                "base": base.to_dict(),
                "mdim": mdim,
                "table": [list(row) for row in table],
                "chi": chi,
            }
        raise ValueError(f"unknown ring kind {self.kind!r}")

    @classmethod
    def from_dict(cls, data: dict) -> "RingSpec":
        kind = data.get("kind")
        if kind == "zmod":
            return cls.zmod(data["n"])
        if kind == "gf":
            return cls.gf(data["p"], data.get("k", 1), data.get("modulus"))
        if kind == "matrix":
            return cls.matrix(cls.from_dict(data["base"]), data["size"])
        if kind == "product":
            return cls.product(*(cls.from_dict(f) for f in data["factors"]))
        if kind == "bm":
            return cls.bm(
                cls.from_dict(data["base"]),
                data["mdim"],
                tuple(tuple(row) for row in data.get("table", EXTERIOR3)),
                data.get("chi", "identity"),
            )
        raise ValueError(f"unknown ring kind {kind!r}")


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _poly_mul_mod(a, b, modulus, p):
    # coefficient lists, little-endian, reduced mod the monic modulus
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] = (out[i + j] + ca * cb) % p
    k = len(modulus) - 1
    while len(out) > k:
        lead = out.pop()
        if lead:
            for i in range(k):
                out[-k + i] = (out[-k + i] - lead * modulus[i]) % p
    while len(out) < k:
        out.append(0)
    return out


def _is_irreducible(modulus, p):
    k = len(modulus) - 1
    for deg in range(1, k // 2 + 1):
        for tail in itertools.product(range(p), repeat=deg):
            divisor = list(tail) + [1]
            if _poly_divides(divisor, modulus, p):
                return False
    return True


def _poly_divides(d, f, p):
    f = list(f)
    dd = len(d) - 1
    inv_lead = pow(d[-1], -1, p)
    while len(f) - 1 >= dd:
        lead = f[-1]
        if lead:
            q = lead * inv_lead % p
            for i in range(dd + 1):
                f[len(f) - 1 - dd + i] = (f[len(f) - 1 - dd + i] - q * d[i]) % p
        f.pop()
        if not any(f):
            return True
    return not any(f)


def _first_irreducible(p, k):
    for tail in itertools.product(range(p), repeat=k):
        cand = tuple(tail) + (1,)
        if _is_irreducible(cand, p):
            return cand
    raise ValueError(f"no irreducible polynomial of degree {k} over gf({p})")


# ---------------------------------------------------------------------------
# elements


@dataclass(frozen=True)
class RingElem:
    """Convenience wrapper pairing an element index with its ring."""

    ring: "FiniteRing"
    index: int

    def _other(self, value) -> int:
        if isinstance(value, RingElem):
            if value.ring is not self.ring:
                raise ValueError("elements belong to different rings")
            return value.index
        if isinstance(value, int):
            return self.ring.scalar(value)
        return NotImplemented

    def __add__(self, other):
        j = self._other(other)
        if j is NotImplemented:
            return NotImplemented
        return RingElem(self.ring, self.ring.add(self.index, j))

    __radd__ = __add__

    def __sub__(self, other):
        j = self._other(other)
        if j is NotImplemented:
            return NotImplemented
        return RingElem(self.ring, self.ring.sub(self.index, j))

    def __rsub__(self, other):
        j = self._other(other)
        if j is NotImplemented:
            return NotImplemented
        return RingElem(self.ring, self.ring.sub(j, self.index))

    def __mul__(self, other):
        j = self._other(other)
        if j is NotImplemented:
            return NotImplemented
        return RingElem(self.ring, self.ring.mul(self.index, j))

    def __rmul__(self, other):
        j = self._other(other)
        if j is NotImplemented:
            return NotImplemented
        return RingElem(self.ring, self.ring.mul(j, self.index))

    def __neg__(self):
        return RingElem(self.ring, self.ring.neg(self.index))

    def is_unit(self) -> bool:
        return self.ring.is_unit(self.index)

    def inverse(self) -> "RingElem":
        return RingElem(self.ring, self.ring.inverse(self.index))

    def name(self) -> str:
        return self.ring.name(self.index)

    def __repr__(self):
        return f"<{self.ring.label}:{self.name()}>"


# ---------------------------------------------------------------------------
# the ring class


class FiniteRing:
    """A finite unital ring over indices 0 .. size-1.

    Construction validates the axioms: exhaustively (vectorized over the op
    tables) at or below the table limit, by seeded random sampling above it.
    """

    def __init__(
        self,
        spec: RingSpec,
        size: int,
        zero: int,
        one: int,
        add_fn: Callable[[int, int], int],
        mul_fn: Callable[[int, int], int],
        neg_fn: Callable[[int], int],
        namer: Callable[[int], str],
        label: str,
        table_builder: Optional[Callable[[], tuple]] = None,
        inverse_fn: Optional[Callable[[int], int]] = None,
        table_limit: int = TABLE_LIMIT,
    ):
        self.spec = spec
        self.size = size
        self.zero = zero
        self.one = one
        self.label = label
        self._add_fn = add_fn
        self._mul_fn = mul_fn
        self._neg_fn = neg_fn
        self._namer = namer
        self._inverse_fn = inverse_fn
        self._units: Optional[tuple[int, ...]] = None
        self._centre: Optional[tuple[int, ...]] = None
        self._scalars: dict[int, int] = {}
        self._char: Optional[int] = None

        self.add_table = self.mul_table = self.neg_table = None
        self.inv_table = self.unit_mask = None
        if size <= table_limit:
            if table_builder is not None:
                add_t, mul_t = table_builder()
            else:
                idx = range(size)
                add_t = np.array([[add_fn(i, j) for j in idx] for i in idx], dtype=np.int32)
                mul_t = np.array([[mul_fn(i, j) for j in idx] for i in idx], dtype=np.int32)
            self.add_table = np.ascontiguousarray(add_t, dtype=np.int32)
            self.mul_table = np.ascontiguousarray(mul_t, dtype=np.int32)
            neg_t = np.empty(size, dtype=np.int32)
            zero_row = np.nonzero(self.add_table == zero)
            neg_t[zero_row[0]] = zero_row[1]
            self.neg_table = neg_t
            for t in (self.add_table, self.mul_table, self.neg_table):
                t.setflags(write=False)
            self._validate_tables()
            self._compute_units_from_tables()
        else:
            self._validate_sampled()

    # -- scalar ops --------------------------------------------------------

    def add(self, i: int, j: int) -> int:
        if self.add_table is not None:
            return int(self.add_table[i, j])
        return self._add_fn(i, j)

    def mul(self, i: int, j: int) -> int:
        if self.mul_table is not None:
            return int(self.mul_table[i, j])
        return self._mul_fn(i, j)

    def neg(self, i: int) -> int:
        if self.neg_table is not None:
            return int(self.neg_table[i])
        return self._neg_fn(i)

    def sub(self, i: int, j: int) -> int:
        return self.add(i, self.neg(j))

    def elem(self, i: int) -> RingElem:
        if not 0 <= i < self.size:
            raise ValueError(f"element index {i} out of range")
        return RingElem(self, i)

    def zero_elem(self) -> RingElem:
        return RingElem(self, self.zero)

    def one_elem(self) -> RingElem:
        return RingElem(self, self.one)

    def scalar_elem(self, c: int) -> RingElem:
        return RingElem(self, self.scalar(c))

    def characteristic(self) -> int:
        if self._char is None:
            n, acc = 1, self.one
            while acc != self.zero:
                acc = self.add(acc, self.one)
                n += 1
                if n > self.size + 1:
                    raise RuntimeError("additive order of 1 exceeds ring size")
            self._char = n
        return self._char

    def scalar(self, c: int) -> int:
        """The image of the integer c under the unique map from the integers."""
        c = c % self.characteristic()
        if c not in self._scalars:
            acc = self.zero
            for _ in range(c):
                acc = self.add(acc, self.one)
            self._scalars[c] = acc
        return self._scalars[c]

    # -- units and centre ---------------------------------------------------

    def _compute_units_from_tables(self):
        mt = self.mul_table
        right = mt == self.one
        cand = right & right.T
        has = cand.any(axis=1)
        inv = np.where(has, cand.argmax(axis=1), -1).astype(np.int32)
        inv.setflags(write=False)
        self.inv_table = inv
        mask = has.copy()
        mask.setflags(write=False)
        self.unit_mask = mask
        self._units = tuple(int(i) for i in np.nonzero(has)[0])

    def is_unit(self, i: int) -> bool:
        if self.unit_mask is not None:
            return bool(self.unit_mask[i])
        if self._inverse_fn is not None:
            return self._inverse_fn(i) >= 0
        return self._search_inverse(i) >= 0

    def inverse(self, i: int) -> int:
        if self.inv_table is not None:
            j = int(self.inv_table[i])
        elif self._inverse_fn is not None:
            j = self._inverse_fn(i)
        else:
            j = self._search_inverse(i)
        if j < 0:
            raise NotAUnitError(f"{self.name(i)} is not a unit in {self.label}")
        return j

    def _search_inverse(self, i: int) -> int:
        for j in range(self.size):
            if self._mul_fn(i, j) == self.one and self._mul_fn(j, i) == self.one:
                return j
        return -1

    def units(self) -> tuple[int, ...]:
        if self._units is None:
            self._units = tuple(i for i in range(self.size) if self.is_unit(i))
        return self._units

    def centre(self) -> tuple[int, ...]:
        if self._centre is None:
            if self.mul_table is None:
                raise RingTooLargeError(f"centre of {self.label} needs op tables")
            mask = (self.mul_table == self.mul_table.T).all(axis=1)
            self._centre = tuple(int(i) for i in np.nonzero(mask)[0])
        return self._centre

    def central_units(self) -> tuple[int, ...]:
        zc = set(self.centre())
        return tuple(u for u in self.units() if u in zc)

    # -- names -------------------------------------------------------------

    def name(self, i: int) -> str:
        return self._namer(i)

    def element_index(self, value) -> int:
        """Accept an index, a RingElem of this ring, or a structured name."""
        if isinstance(value, RingElem):
            if value.ring is not self:
                raise ValueError("element belongs to a different ring")
            return value.index
        if isinstance(value, bool):
            raise ValueError("booleans are not element designators")
        if isinstance(value, int):
            if not 0 <= value < self.size:
                raise ValueError(f"element index {value} out of range for {self.label}")
            return value
        if isinstance(value, (list, tuple)):
            return _encode_structured(self, value)
        raise ValueError(f"cannot interpret {value!r} as an element of {self.label}")

    def __repr__(self):
        return f"FiniteRing({self.label}, size={self.size})"

    # -- axiom validation ----------------------------------------------------

    def _validate_tables(self):
        at, mt = self.add_table, self.mul_table
        n = self.size
        if not (at == at.T).all():
            raise ValueError(f"{self.label}: addition is not commutative")
        idx = np.arange(n)
        if not (at[self.zero] == idx).all():
            raise ValueError(f"{self.label}: 0 is not an additive identity")
        if not (mt[self.one] == idx).all() or not (mt[:, self.one] == idx).all():
            raise ValueError(f"{self.label}: 1 is not a multiplicative identity")
        if not ((at == self.zero).sum(axis=1) == 1).all():
            raise ValueError(f"{self.label}: some element lacks a unique additive inverse")
        for a in range(n):
            # associativity of + and *, and both distributive laws, sliced by a
            if not (at[at[a], :] == at[a, at]).all():
                raise ValueError(f"{self.label}: addition is not associative at {a}")
            if not (mt[mt[a], :] == mt[a, mt]).all():
                raise ValueError(f"{self.label}: multiplication is not associative at {a}")
            if not (mt[a, at] == at[np.ix_(mt[a], mt[a])]).all():
                raise ValueError(f"{self.label}: left distributivity fails at {a}")
            if not (mt[at, a] == at[np.ix_(mt[:, a], mt[:, a])]).all():
                raise ValueError(f"{self.label}: right distributivity fails at {a}")

    def _validate_sampled(self, samples: int = 2000, seed: int = 0):
        rng = np.random.Generator(np.random.PCG64(seed))
        n = self.size
        add, mul, neg = self._add_fn, self._mul_fn, self._neg_fn
        for _ in range(samples):
            a, b, c = (int(x) for x in rng.integers(0, n, size=3))
            if add(a, b) != add(b, a):
                raise ValueError(f"{self.label}: addition not commutative at {(a, b)}")
            if add(add(a, b), c) != add(a, add(b, c)):
                raise ValueError(f"{self.label}: addition not associative at {(a, b, c)}")
            if mul(mul(a, b), c) != mul(a, mul(b, c)):
                raise ValueError(f"{self.label}: multiplication not associative at {(a, b, c)}")
            if mul(a, add(b, c)) != add(mul(a, b), mul(a, c)):
                raise ValueError(f"{self.label}: left distributivity fails at {(a, b, c)}")
            if mul(add(a, b), c) != add(mul(a, c), mul(b, c)):
                raise ValueError(f"{self.label}: right distributivity fails at {(a, b, c)}")
            if add(a, neg(a)) != self.zero:
                raise ValueError(f"{self.label}: negation fails at {a}")
            if mul(a, self.one) != a or mul(self.one, a) != a:
                raise ValueError(f"{self.label}: 1 is not an identity at {a}")


def _encode_structured(ring: FiniteRing, value) -> int:
    kind = ring.spec.kind
    if kind == "gf":
        p, k, _ = ring.spec.params
        if len(value) != k:
            raise ValueError(f"expected {k} coefficients")
        return sum((int(c) % p) * p**i for i, c in enumerate(value))
    if kind == "bm":
        base = ring.base
        digits = [base.element_index(v) for v in value]
        if len(digits) != ring.mdim + 1:
            raise ValueError(f"expected {ring.mdim + 1} components")
        return _digits_to_index(digits, base.size)
    if kind == "product":
        digits = [f.element_index(v) for f, v in zip(ring.factors, value)]
        if len(value) != len(ring.factors):
            raise ValueError("component count does not match factor count")
        return _digits_to_index(digits, [f.size for f in ring.factors])
    if kind == "matrix":
        base, m = ring.base, ring.msize
        flat = [x for row in value for x in row] if isinstance(value[0], (list, tuple)) else list(value)
        if len(flat) != m * m:
            raise ValueError(f"expected {m * m} entries")
        digits = [base.element_index(v) for v in flat]
        return _digits_to_index(digits, base.size)
    raise ValueError(f"structured names are not defined for {kind} rings")


def _digits_to_index(digits, radix) -> int:
    if isinstance(radix, int):
        radix = [radix] * len(digits)
    idx = 0
    for d, r in zip(reversed(digits), reversed(radix)):
        idx = idx * r + d
    return idx


def _index_to_digits(idx, count, radix):
    if isinstance(radix, int):
        radix = [radix] * count
    out = []
    for r in radix:
        out.append(idx % r)
        idx //= r
    return out


# ---------------------------------------------------------------------------
# builders

_RING_CACHE: dict = {}


def build_ring(spec: RingSpec, cap: int = DEFAULT_SIZE_CAP, table_limit: int = TABLE_LIMIT) -> FiniteRing:
    key = (spec, cap, table_limit)
    if key not in _RING_CACHE:
        _RING_CACHE[key] = _build_ring(spec, cap, table_limit)
    return _RING_CACHE[key]


def _build_ring(spec: RingSpec, cap: int, table_limit: int) -> FiniteRing:
    size = ring_size(spec)
    if size > cap:
        raise RingTooLargeError(
            f"ring of size {size} exceeds the cap {cap}; pass a larger cap to allow it"
        )
    if spec.kind == "zmod":
        return _build_zmod(spec, table_limit)
    if spec.kind == "gf":
        return _build_gf(spec, table_limit)
    if spec.kind == "matrix":
        return _build_matrix(spec, cap, table_limit)
    if spec.kind == "product":
        return _build_product(spec, cap, table_limit)
    if spec.kind == "bm":
        return _build_bm(spec, cap, table_limit)
    raise ValueError(f"unknown ring kind {spec.kind!r}")


def ring_size(spec: RingSpec) -> int:
    if spec.kind == "zmod":
        return spec.params[0]
    if spec.kind == "gf":
        p, k, _ = spec.params
        return p**k
    if spec.kind == "matrix":
        base, m = spec.params
        return ring_size(base) ** (m * m)
    if spec.kind == "product":
        out = 1
        for f in spec.params:
            out *= ring_size(f)
        return out
    if spec.kind == "bm":
        base, mdim, _, _ = spec.params
        return ring_size(base) ** (mdim + 1)
    raise ValueError(f"unknown ring kind {spec.kind!r}")


def _build_zmod(spec, table_limit):
    n = spec.params[0]

    def table_builder():
        idx = np.arange(n, dtype=np.int64)
        return (idx[:, None] + idx[None, :]) % n, (idx[:, None] * idx[None, :]) % n

    return FiniteRing(
        spec, n, 0, 1 % n,
        add_fn=lambda i, j: (i + j) % n,
        mul_fn=lambda i, j: (i * j) % n,
        neg_fn=lambda i: (-i) % n,
        namer=str,
        label=f"zmod({n})",
        table_builder=table_builder,
        table_limit=table_limit,
    )


def _build_gf(spec, table_limit):
    p, k, modulus = spec.params
    if k == 1:
        def table_builder():
            idx = np.arange(p, dtype=np.int64)
            return (idx[:, None] + idx[None, :]) % p, (idx[:, None] * idx[None, :]) % p

        return FiniteRing(
            spec, p, 0, 1,
            add_fn=lambda i, j: (i + j) % p,
            mul_fn=lambda i, j: (i * j) % p,
            neg_fn=lambda i: (-i) % p,
            namer=str, label=f"gf({p})",
            table_builder=table_builder if p <= table_limit else None,
            table_limit=table_limit,
        )
    size = p**k

    def decode(i):
        return _index_to_digits(i, k, p)

    def encode(coeffs):
        return _digits_to_index([c % p for c in coeffs], p)

    def add_fn(i, j):
        return encode([a + b for a, b in zip(decode(i), decode(j))])

    def mul_fn(i, j):
        return encode(_poly_mul_mod(decode(i), decode(j), modulus, p))

    def neg_fn(i):
        return encode([-a for a in decode(i)])

    def namer(i):
        return "(" + ",".join(str(c) for c in decode(i)) + ")"

    return FiniteRing(
        spec, size, 0, 1, add_fn, mul_fn, neg_fn, namer,
        label=f"gf({p},{k})", table_limit=table_limit,
    )


def _build_matrix(spec, cap, table_limit):
    base_spec, m = spec.params
    base = build_ring(base_spec, cap, table_limit)
    nb = base.size
    mm = m * m
    size = nb**mm
    base_is_prime_field = base_spec.kind in ("gf", "zmod") and _is_prime(ring_size(base_spec))
    field_like = base_spec.kind == "gf" or base_is_prime_field

    def decode(i):
        return _index_to_digits(i, mm, nb)

    def encode(digits):
        return _digits_to_index(digits, nb)

    def add_fn(i, j):
        return encode([base.add(a, b) for a, b in zip(decode(i), decode(j))])

    def neg_fn(i):
        return encode([base.neg(a) for a in decode(i)])

    def mul_fn(i, j):
        a, b = decode(i), decode(j)
        out = []
        for r in range(m):
            for c in range(m):
                acc = base.zero
                for t in range(m):
                    acc = base.add(acc, base.mul(a[r * m + t], b[t * m + c]))
                out.append(acc)
        return encode(out)

    def namer(i):
        d = decode(i)
        rows = [",".join(base.name(d[r * m + c]) for c in range(m)) for r in range(m)]
        return "[" + ";".join(rows) + "]"

    inverse_fn = None
    if field_like and size > table_limit:
        inverse_fn = lambda i: _matrix_inverse_over_field(base, m, decode(i), encode)

    ring = FiniteRing(
        spec, size, 0, encode([base.one if r == c else base.zero for r in range(m) for c in range(m)]),
        add_fn, mul_fn, neg_fn, namer,
        label=f"matrix({base.label},{m})",
        inverse_fn=inverse_fn,
        table_limit=table_limit,
    )
    ring.base = base
    ring.msize = m
    return ring


def _matrix_inverse_over_field(base, m, entries, encode):
    """Gauss-Jordan over a field base; returns the encoded inverse or -1."""
    aug = [[entries[r * m + c] for c in range(m)] for r in range(m)]
    inv = [[base.one if r == c else base.zero for c in range(m)] for r in range(m)]
    for col in range(m):
        pivot = next((r for r in range(col, m) if base.is_unit(aug[r][col])), None)
        if pivot is None:
            return -1
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv[col], inv[pivot] = inv[pivot], inv[col]
        s = base.inverse(aug[col][col])
        aug[col] = [base.mul(s, x) for x in aug[col]]
        inv[col] = [base.mul(s, x) for x in inv[col]]
        for r in range(m):
            if r != col and aug[r][col] != base.zero:
                f = aug[r][col]
                aug[r] = [base.sub(x, base.mul(f, y)) for x, y in zip(aug[r], aug[col])]
                inv[r] = [base.sub(x, base.mul(f, y)) for x, y in zip(inv[r], inv[col])]
    return encode([inv[r][c] for r in range(m) for c in range(m)])


def _build_product(spec, cap, table_limit):
    factors = [build_ring(f, cap, table_limit) for f in spec.params]
    sizes = [f.size for f in factors]
    size = int(np.prod(sizes))

    def decode(i):
        return _index_to_digits(i, len(sizes), sizes)

    def encode(digits):
        return _digits_to_index(digits, sizes)

    def add_fn(i, j):
        return encode([f.add(a, b) for f, a, b in zip(factors, decode(i), decode(j))])

    def mul_fn(i, j):
        return encode([f.mul(a, b) for f, a, b in zip(factors, decode(i), decode(j))])

    def neg_fn(i):
        return encode([f.neg(a) for f, a in zip(factors, decode(i))])

    def namer(i):
        return "(" + ",".join(f.name(a) for f, a in zip(factors, decode(i))) + ")"

    def table_builder():
        idx = np.arange(size, dtype=np.int64)
        digits, rem = [], idx
        for s in sizes:
            digits.append(rem % s)
            rem = rem // s
        add_t = np.zeros((size, size), dtype=np.int64)
        mul_t = np.zeros((size, size), dtype=np.int64)
        weight = 1
        for f, d, s in zip(factors, digits, sizes):
            at = np.asarray(f.add_table, dtype=np.int64)
            mt = np.asarray(f.mul_table, dtype=np.int64)
            add_t += weight * at[np.ix_(d, d)]
            mul_t += weight * mt[np.ix_(d, d)]
            weight *= s
        return add_t, mul_t

    builder = table_builder if size <= table_limit and all(f.add_table is not None for f in factors) else None
    ring = FiniteRing(
        spec, size, 0, encode([f.one for f in factors]),
        add_fn, mul_fn, neg_fn, namer,
        label="x".join(f.label for f in factors),
        table_builder=builder,
        table_limit=table_limit,
    )
    ring.factors = factors
    return ring


def _build_bm(spec, cap, table_limit):
    base_spec, mdim, table, _chi = spec.params
    base = build_ring(base_spec, cap, table_limit)
    nb = base.size
    size = nb ** (mdim + 1)

    # structure constants: mprod[i][j] is the coefficient vector of eps_i*eps_j
    mprod = [[[base.zero] * mdim for _ in range(mdim)] for _ in range(mdim)]
    for i, j, k, c in table:
        mprod[i - 1][j - 1][k - 1] = base.add(mprod[i - 1][j - 1][k - 1], base.scalar(c))
    _validate_module_product(base, mdim, mprod, spec)

    def decode(i):
        return _index_to_digits(i, mdim + 1, nb)

    def encode(digits):
        return _digits_to_index(digits, nb)

    def add_fn(i, j):
        return encode([base.add(a, b) for a, b in zip(decode(i), decode(j))])

    def neg_fn(i):
        return encode([base.neg(a) for a in decode(i)])

    def mul_fn(i, j):
        x, y = decode(i), decode(j)
        b1, m1 = x[0], x[1:]
        b2, m2 = y[0], y[1:]
        out = [base.mul(b1, b2)]
        for t in range(mdim):
            acc = base.add(base.mul(b1, m2[t]), base.mul(b2, m1[t]))
            for u in range(mdim):
                for v in range(mdim):
                    coeff = mprod[u][v][t]
                    if coeff != base.zero:
                        acc = base.add(acc, base.mul(base.mul(m1[u], m2[v]), coeff))
            out.append(acc)
        return encode(out)

    def namer(i):
        return "(" + ",".join(base.name(c) for c in decode(i)) + ")"

    ring = FiniteRing(
        spec, size, 0, encode([base.one] + [base.zero] * mdim),
        add_fn, mul_fn, neg_fn, namer,
        label=f"bm({base.label},{mdim})",
        table_limit=table_limit,
    )
    ring.base = base
    ring.mdim = mdim
    ring.mprod = mprod
    return ring


def _validate_module_product(base, mdim, mprod, spec):
    zero_vec = [base.zero] * mdim
    for i in range(mdim):
        if mprod[i][i] != zero_vec:
            raise ValueError(f"{spec}: module product is not alternating at eps{i + 1}^2")
        for j in range(mdim):
            if [base.neg(c) for c in mprod[j][i]] != mprod[i][j]:
                raise ValueError(f"{spec}: module product is not antisymmetric at ({i + 1},{j + 1})")
    # associativity of triple basis products, both bracketings via structure constants
    for i in range(mdim):
        for j in range(mdim):
            for k in range(mdim):
                left = _module_mul_vec(base, mdim, mprod, mprod[i][j], unit_vec(base, mdim, k))
                right = _module_mul_vec(base, mdim, mprod, unit_vec(base, mdim, i), mprod[j][k])
                if left != right:
                    raise ValueError(
                        f"{spec}: module product is not associative at ({i + 1},{j + 1},{k + 1})"
                    )


def unit_vec(base, mdim, k):
    v = [base.zero] * mdim
    v[k] = base.one
    return v


def _module_mul_vec(base, mdim, mprod, v, w):
    out = [base.zero] * mdim
    for u in range(mdim):
        if v[u] == base.zero:
            continue
        for t in range(mdim):
            if w[t] == base.zero:
                continue
            coeff = base.mul(v[u], w[t])
            for s in range(mdim):
                c = mprod[u][t][s]
                if c != base.zero:
                    out[s] = base.add(out[s], base.mul(coeff, c))
    return out


# ---------------------------------------------------------------------------
# subrings and closures


def subring_closure(ring: FiniteRing, seed: Sequence[int]) -> tuple[frozenset, bool]:
    """Smallest subset containing the seed, 0 and 1 and closed under +, -, *.

    Returns the closure and a flag telling whether the seed set was already
    closed (i.e. equal to its closure).
    """
    seed_set = {ring.element_index(s) for s in seed}
    closure = set(seed_set) | {ring.zero, ring.one}
    frontier = list(closure)
    while frontier:
        fresh = []
        for a in frontier:
            n = ring.neg(a)
            if n not in closure:
                closure.add(n)
                fresh.append(n)
        for a in list(closure):
            for b in frontier:
                for c in (ring.add(a, b), ring.mul(a, b), ring.mul(b, a)):
                    if c not in closure:
                        closure.add(c)
                        fresh.append(c)
        frontier = fresh
    return frozenset(closure), frozenset(seed_set) == frozenset(closure)


_SUBRING_CACHE: dict = {}


def subring_as_ring(ring: FiniteRing, subset: Sequence[int]):
    """Reindex a multiplicatively and additively closed subset as its own ring.

    Returns (subring, to_parent, from_parent); raises if the subset is not a
    unital subring of the parent.
    """
    elems = tuple(sorted(ring.element_index(s) for s in subset))
    key = (id(ring), elems)
    if key in _SUBRING_CACHE:
        return _SUBRING_CACHE[key]
    if ring.zero not in elems or ring.one not in elems:
        raise ValueError("a unital subring must contain 0 and 1")
    from_parent = {p: i for i, p in enumerate(elems)}

    def wrap(fn):
        def inner(*args):
            out = fn(*(elems[a] for a in args))
            if out not in from_parent:
                raise ValueError(f"subset is not closed: escaped via {ring.name(out)}")
            return from_parent[out]

        return inner

    sub = FiniteRing(
        RingSpec("subring", (ring.spec, elems)),
        len(elems), from_parent[ring.zero], from_parent[ring.one],
        wrap(ring.add), wrap(ring.mul), wrap(ring.neg),
        namer=lambda i: ring.name(elems[i]),
        label=f"sub[{len(elems)}]({ring.label})",
    )
    sub.parent = ring
    result = (sub, elems, from_parent)
    _SUBRING_CACHE[key] = result
    return result


def regular_representation(ring: FiniteRing, cap: int = 80000):
    """Represent a split-extension ring by right multiplication on itself.

    The target is the matrix ring of degree mdim+1 over the base field, in the
    basis (1, eps_1, ..., eps_mdim); row r of the image of ``a`` holds the
    coordinates of basis_r * a, so the map is a ring monomorphism for matrices
    acting on coordinate rows from the right.
    """
    if ring.spec.kind != "bm":
        raise ValueError("the regular representation is provided for split-extension rings")
    base = ring.base
    dim = ring.mdim + 1
    target_spec = RingSpec.matrix(ring.spec.params[0], dim)
    target = build_ring(target_spec, cap=cap)
    basis = [_digits_to_index(unit_vec(base, dim, r), base.size) for r in range(dim)]
    values = []
    for a in range(ring.size):
        rows = []
        for r in range(dim):
            image = ring.mul(basis[r], a)
            rows.extend(_index_to_digits(image, dim, base.size))
        values.append(_digits_to_index(rows, base.size))
    return target, tuple(values)
