"""Finite groups with an enumerated element table and a multiplication oracle.

Three backends (permutations, matrices over GF(p), class-2 power-commutator
data) and two combinators (direct and central product).  Every group numbers
its elements ``0 .. order-1`` with 0 the identity; algorithms elsewhere in the
package only ever see these indices.

Permutations compose left to right: ``(x*y)[k] = y[x[k]]``.
Commutators are ``[a, b] = a^-1 b^-1 a b``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import product as iproduct
from math import gcd

import numpy as np

from . import bitset
from .errors import (
    ElementCapExceeded,
    InconsistentData,
    IndexOutOfRange,
    InvalidPermutation,
    NotCentral,
    NotIsomorphism,
    SingularGenerator,
)
from .gfp import check_prime, decode, encode

ELEMENT_CAP = 50_000
TABLE_CAP = 4096


class FiniteGroup:
    """Base class.  Subclasses provide ``element``, ``index_of`` and the row
    products; everything else is derived from those."""

    backend: str = "abstract"

    def __init__(self, order: int, generator_indices):
        self.order = int(order)
        self.generator_indices = tuple(int(g) for g in generator_indices)
        self.embeddings: dict[str, int] = {}
        self._table: np.ndarray | None = None
        self._inverses: np.ndarray | None = None
        self._centralizer_cache: dict[int, int] = {}

    # -- backend hooks -------------------------------------------------
    def element(self, i: int):
        raise NotImplementedError

    def index_of(self, rep) -> int:
        raise NotImplementedError

    def _row(self, i: int) -> np.ndarray:
        """Indices of i*g for every g."""
        raise NotImplementedError

    def _col(self, i: int) -> np.ndarray:
        """Indices of g*i for every g."""
        raise NotImplementedError

    # -- uniform oracle -------------------------------------------------
    @property
    def size(self) -> int:
        # Number of points in the bitset universe; equals the order here.
        return self.order

    @property
    def full_bits(self) -> int:
        return (1 << self.order) - 1

    def check_index(self, i) -> int:
        i = int(i)
        if not 0 <= i < self.order:
            raise IndexOutOfRange(f"element index {i} outside 0..{self.order - 1}")
        return i

    @property
    def table(self) -> np.ndarray | None:
        """Full Cayley table, built lazily when the order is at most TABLE_CAP."""
        if self._table is None and self.order <= TABLE_CAP:
            t = np.empty((self.order, self.order), dtype=np.int32)
            for i in range(self.order):
                t[i] = self._row(i)
            self._table = t
        return self._table

    def row(self, i: int) -> np.ndarray:
        t = self.table
        return t[i].astype(np.int64) if t is not None else self._row(i)

    def col(self, i: int) -> np.ndarray:
        t = self.table
        return t[:, i].astype(np.int64) if t is not None else self._col(i)

    def mul(self, i: int, j: int) -> int:
        t = self.table
        if t is not None:
            return int(t[i, j])
        return int(self._row(i)[j])

    def mul_many(self, a, b) -> np.ndarray:
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        t = self.table
        if t is not None:
            return t[a, b].astype(np.int64)
        return np.array([self.mul(x, y) for x, y in zip(a.ravel(), b.ravel())],
                        dtype=np.int64).reshape(a.shape)

    @property
    def inverses(self) -> np.ndarray:
        if self._inverses is None:
            inv = np.empty(self.order, dtype=np.int64)
            for i in range(self.order):
                inv[i] = int(np.flatnonzero(self.row(i) == 0)[0])
            self._inverses = inv
        return self._inverses

    def inv(self, i: int) -> int:
        return int(self.inverses[i])

    def power(self, i: int, k: int) -> int:
        return int(self.power_many(np.array([i]), k)[0])

    def power_many(self, idx, k: int) -> np.ndarray:
        idx = np.asarray(idx, dtype=np.int64)
        result = np.zeros_like(idx)
        base = idx.copy()
        while k:
            if k & 1:
                result = self.mul_many(result, base)
            k >>= 1
            if k:
                base = self.mul_many(base, base)
        return result

    def commutator(self, i: int, j: int) -> int:
        inv = self.inverses
        return self.mul(self.mul(int(inv[i]), int(inv[j])), self.mul(i, j))

    def commutator_many(self, a, b) -> np.ndarray:
        inv = self.inverses
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        return self.mul_many(self.mul_many(inv[a], inv[b]), self.mul_many(a, b))

    def element_centralizer_bits(self, x: int) -> int:
        bits = self._centralizer_cache.get(x)
        if bits is None:
            bits = bitset.from_mask(self.row(x) == self.col(x))
            self._centralizer_cache[x] = bits
        return bits

    def centralizer_bits(self, bits: int, gens=None) -> int:
        """Intersection of the element centralizers of ``gens`` (default: every
        element of ``bits``)."""
        if gens is None:
            gens = bitset.to_indices(bits, self.size)
        acc = self.full_bits
        for g in gens:
            acc &= self.element_centralizer_bits(int(g))
        return acc

    def order_of(self, bits: int) -> int:
        return bitset.popcount(bits)

    def __repr__(self) -> str:
        return f"<{type(self).__name__} backend={self.backend} order={self.order}>"


def element_order(G: FiniteGroup, x: int) -> int:
    """Least k >= 1 with x**k equal to the identity."""
    x = G.check_index(x)
    k, cur = 1, x
    while cur != 0:
        cur = G.mul(cur, x)
        k += 1
    return k


# ---------------------------------------------------------------------------
# Representation backends: permutations and matrices
# ---------------------------------------------------------------------------

class _RepGroup(FiniteGroup):
    """Elements are fixed-width integer rows; products are computed on rows."""

    def __init__(self, reps: np.ndarray, generator_indices):
        self._reps = reps
        self._reps.setflags(write=False)
        self._index = {r.tobytes(): k for k, r in enumerate(reps)}
        super().__init__(len(reps), generator_indices)

    def _prod(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def _lookup(self, rows: np.ndarray) -> np.ndarray:
        rows = np.ascontiguousarray(rows, dtype=self._reps.dtype)
        return np.fromiter((self._index[r.tobytes()] for r in rows), dtype=np.int64,
                           count=len(rows))

    def _row(self, i):
        return self._lookup(self._prod(self._reps[i][None, :], self._reps))

    def _col(self, i):
        return self._lookup(self._prod(self._reps, self._reps[i][None, :]))

    def mul(self, i, j):
        if self._table is not None:
            return int(self._table[i, j])
        r = self._prod(self._reps[i][None, :], self._reps[j][None, :])
        return int(self._lookup(r)[0])

    def index_of(self, rep) -> int:
        key = np.asarray(rep, dtype=self._reps.dtype).ravel().tobytes()
        try:
            return self._index[key]
        except KeyError:
            raise KeyError(f"{rep!r} is not an element of this group") from None


def _closure(identity: np.ndarray, gens: list[np.ndarray], prod, cap: int):
    """BFS closure from the identity under right multiplication by generators."""
    elems = [identity]
    seen = {identity.tobytes(): 0}
    gen_idx = []
    for g in gens:
        key = g.tobytes()
        if key not in seen:
            seen[key] = len(elems)
            elems.append(g)
            if len(elems) > cap:
                raise ElementCapExceeded(f"closure exceeds element cap {cap}")
        gen_idx.append(seen[key])
    queue = deque(range(len(elems)))
    while queue:
        k = queue.popleft()
        x = elems[k]
        for g in gens:
            y = prod(x[None, :], g[None, :])[0]
            key = y.tobytes()
            if key not in seen:
                seen[key] = len(elems)
                elems.append(y)
                if len(elems) > cap:
                    raise ElementCapExceeded(f"closure exceeds element cap {cap}")
                queue.append(seen[key])
    return np.array(elems), gen_idx


class PermutationGroup(_RepGroup):
    backend = "Permutation"

    def __init__(self, reps, generator_indices, degree: int):
        self.degree = degree
        super().__init__(reps, generator_indices)

    @staticmethod
    def _prod_static(a, b):
        # (x*y)[k] = y[x[k]]
        a, b = np.broadcast_arrays(a, b)
        return np.take_along_axis(b, a.astype(np.int64), axis=1)

    def _prod(self, a, b):
        return self._prod_static(a, b)

    def element(self, i):
        return tuple(int(v) for v in self._reps[self.check_index(i)])


def from_permutations(generators, n: int | None = None, cap: int = ELEMENT_CAP) -> PermutationGroup:
    """Group generated by permutations given as image lists on ``0..n-1``."""
    gens = [list(g) for g in generators]
    if n is None:
        n = len(gens[0]) if gens else 1
    arrs = []
    for g in gens:
        if len(g) != n or sorted(g) != list(range(n)):
            raise InvalidPermutation(f"{g!r} is not a permutation of 0..{n - 1}")
        arrs.append(np.array(g, dtype=np.int16 if n < 32000 else np.int32))
    ident = np.arange(n, dtype=arrs[0].dtype if arrs else np.int16)
    reps, gen_idx = _closure(ident, arrs, PermutationGroup._prod_static, cap)
    return PermutationGroup(reps, gen_idx, n)


def cycles_to_perm(cycles, n: int) -> list[int]:
    """Image list of a product of disjoint cycles, e.g. ``[(0, 1, 2)]``."""
    img = list(range(n))
    for c in cycles:
        for a, b in zip(c, c[1:] + c[:1]):
            img[a] = b
    return img


class MatrixGroup(_RepGroup):
    backend = "MatrixGFp"

    def __init__(self, reps, generator_indices, modulus: int, dim: int):
        self.modulus = modulus
        self.dim = dim
        super().__init__(reps, generator_indices)

    def _prod(self, a, b):
        return _matprod(a, b, self.modulus, self.dim)

    def element(self, i):
        r = self._reps[self.check_index(i)]
        return tuple(tuple(int(v) for v in r[k * self.dim:(k + 1) * self.dim])
                     for k in range(self.dim))


def _matprod(a, b, m, dim):
    a, b = np.broadcast_arrays(a, b)
    A = a.reshape(-1, dim, dim).astype(np.int64)
    B = b.reshape(-1, dim, dim).astype(np.int64)
    return (np.matmul(A, B) % m).reshape(len(a), dim * dim).astype(a.dtype)


def _det_mod(M: np.ndarray, m: int) -> int:
    # Exact integer determinant via fraction-free elimination (Bareiss).
    A = [[int(x) for x in r] for r in M]
    n = len(A)
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for r in range(k + 1, n):
                if A[r][k] != 0:
                    A[k], A[r] = A[r], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return (sign * A[n - 1][n - 1]) % m if n else 1


def from_matrices_mod(m: int, dim: int, generators, cap: int = ELEMENT_CAP) -> MatrixGroup:
    """Matrix group over Z/mZ; ``from_matrices_gfp`` is the prime-modulus front end."""
    arrs = []
    for g in generators:
        M = np.array(g, dtype=np.int64).reshape(dim, dim) % m
        if gcd(_det_mod(M, m), m) != 1:
            raise SingularGenerator(f"generator is not invertible mod {m}:\n{M}")
        arrs.append(M.ravel().astype(np.int32))
    ident = np.eye(dim, dtype=np.int32).ravel()
    reps, gen_idx = _closure(ident, arrs, lambda a, b: _matprod(a, b, m, dim), cap)
    return MatrixGroup(reps, gen_idx, m, dim)


def from_matrices_gfp(p: int, dim: int, generators, cap: int = ELEMENT_CAP) -> MatrixGroup:
    p = check_prime(p)
    return from_matrices_mod(p, dim, generators, cap)


# ---------------------------------------------------------------------------
# Class-2 backend
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Class2Data:
    """Exponent-vector presentation of a class-2 p-group.

    Elements are pairs ``(u, z)`` meaning ``x_1^u_1 ... x_d^u_d * z`` with
    ``z`` in an elementary abelian central subgroup of rank ``e``.
    ``B[i][j]`` is the exponent vector of ``[x_i, x_j]`` and ``q[i]`` that of
    ``x_i^p``.
    """

    p: int
    d: int
    e: int
    B: np.ndarray
    q: np.ndarray = None

    def __post_init__(self):
        p = check_prime(self.p)
        B = np.array(self.B, dtype=np.int64).reshape(self.d, self.d, self.e) % p
        q = (np.zeros((self.d, self.e), dtype=np.int64) if self.q is None
             else np.array(self.q, dtype=np.int64).reshape(self.d, self.e) % p)
        B.setflags(write=False)
        q.setflags(write=False)
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "q", q)
        for i in range(self.d):
            if B[i, i].any():
                raise InconsistentData(f"B[{i}][{i}] must be zero")
            for j in range(i + 1, self.d):
                if ((B[i, j] + B[j, i]) % p).any():
                    raise InconsistentData(f"B[{j}][{i}] must equal -B[{i}][{j}]")
        if p != 2 and q.any():
            raise InconsistentData("odd p requires q = 0 (exponent-p quotient)")

    @property
    def order(self) -> int:
        return self.p ** (self.d + self.e)

    def form(self, u, v) -> np.ndarray:
        """B(u, v) = exponent vector of the commutator [x^u, x^v]."""
        return np.einsum("i,ijk,j->k", np.asarray(u), self.B, np.asarray(v)) % self.p

    def __eq__(self, other):
        return (isinstance(other, Class2Data) and (self.p, self.d, self.e) == (other.p, other.d, other.e)
                and np.array_equal(self.B, other.B) and np.array_equal(self.q, other.q))

    def __hash__(self):
        return hash((self.p, self.d, self.e, self.B.tobytes(), self.q.tobytes()))

    @classmethod
    def from_commutators(cls, p: int, d: int, e: int, commutators: dict, powers: dict | None = None):
        """Build from ``{(i, j): z-vector}`` for i < j; alternation fills the rest."""
        B = np.zeros((d, d, e), dtype=np.int64)
        for (i, j), vec in commutators.items():
            B[i, j] = vec
            B[j, i] = -np.asarray(vec)
        q = np.zeros((d, e), dtype=np.int64)
        for i, vec in (powers or {}).items():
            q[i] = vec
        return cls(p, d, e, B, q)

    def direct_sum(self, other: "Class2Data") -> "Class2Data":
        """Data of the direct product of the two groups."""
        if self.p != other.p:
            raise ValueError("direct sum needs a common prime")
        d, e = self.d + other.d, self.e + other.e
        B = np.zeros((d, d, e), dtype=np.int64)
        B[:self.d, :self.d, :self.e] = self.B
        B[self.d:, self.d:, self.e:] = other.B
        q = np.zeros((d, e), dtype=np.int64)
        q[:self.d, :self.e] = self.q
        q[self.d:, self.e:] = other.q
        return Class2Data(self.p, d, e, B, q)

    def to_dict(self) -> dict:
        return {"p": self.p, "d": self.d, "e": self.e,
                "B": self.B.tolist(), "q": self.q.tolist()}


class Class2Group(FiniteGroup):
    """Element index = code of the concatenated exponent vector (u, z).

    Multiplication uses the class-2 collection formula
    ``(u,z)(v,w) = (u+v, z+w + sum_{i>j} u_i v_j B[i][j] + carries)``
    where each coordinate i with ``u_i + v_i >= p`` contributes ``q[i]``.
    """

    backend = "Class2"

    def __init__(self, data: Class2Data):
        self.data = data
        p, d, e = data.p, data.d, data.e
        self._p, self._d, self._e = p, d, e
        self._low = np.tril(np.ones((d, d), dtype=np.int64), -1)[:, :, None] * data.B
        gens = [p**i for i in range(d + e)]
        super().__init__(p ** (d + e), gens)

    def _split(self, codes):
        digits = decode(codes, self._p, self._d + self._e)
        return digits[..., :self._d], digits[..., self._d:]

    def mul_codes(self, a, b) -> np.ndarray:
        a, b = np.broadcast_arrays(np.atleast_1d(np.asarray(a, dtype=np.int64)),
                                   np.atleast_1d(np.asarray(b, dtype=np.int64)))
        p = self._p
        ua, za = self._split(a)
        ub, zb = self._split(b)
        t = np.tensordot(ua, self._low, axes=([ua.ndim - 1], [0]))
        corr = np.einsum("...je,...j->...e", t, ub)
        carry = ((ua + ub) >= p).astype(np.int64) @ self.data.q
        u = (ua + ub) % p
        z = (za + zb + corr + carry) % p
        return encode(np.concatenate([u, z], axis=-1), p)

    @property
    def table(self):
        # Row products are cheap here, so only tabulate small groups.
        if self._table is None and self.order <= 1024:
            return FiniteGroup.table.fget(self)
        return self._table

    def _row(self, i):
        return self.mul_codes(i, np.arange(self.order))

    def _col(self, i):
        return self.mul_codes(np.arange(self.order), i)

    def mul(self, i, j):
        if self.table is not None:
            return int(self._table[i, j])
        return int(self.mul_codes(i, j)[0])

    def mul_many(self, a, b):
        if self.table is not None:
            return super().mul_many(a, b)
        a = np.asarray(a, dtype=np.int64)
        return self.mul_codes(a, b).reshape(np.broadcast(a, np.asarray(b)).shape)

    @property
    def inverses(self):
        if self._inverses is None:
            p = self._p
            u, z = self._split(np.arange(self.order))
            _, wz = self._split(self.mul_codes(encode(u, p), encode((-u) % p, p)))
            self._inverses = encode(np.concatenate([(-u) % p, (-z - wz) % p], axis=-1), p)
        return self._inverses

    def element(self, i):
        u, z = self._split(np.array([self.check_index(i)]))
        return tuple(int(v) for v in u[0]), tuple(int(v) for v in z[0])

    def index_of(self, rep) -> int:
        u, z = rep
        return int(encode(np.concatenate([np.asarray(u), np.asarray(z)]) % self._p, self._p))

    def central_bits(self) -> int:
        """Bitset of the designated central subgroup {(0, z)}."""
        idx = np.arange(self._p**self._e, dtype=np.int64) * self._p**self._d
        return bitset.from_indices(idx, self.order)


def from_class2_data(data: Class2Data, cap: int = ELEMENT_CAP) -> Class2Group:
    if data.order > cap:
        raise ElementCapExceeded(f"order {data.order} exceeds element cap {cap}")
    G = Class2Group(data)
    gens = G.generator_indices
    for a, b, c in iproduct(gens, repeat=3):
        if G.mul(G.mul(a, b), c) != G.mul(a, G.mul(b, c)):
            raise InconsistentData(f"associativity fails on generators {a}, {b}, {c}")
    return G


# ---------------------------------------------------------------------------
# Combinators
# ---------------------------------------------------------------------------

class ProductGroup(FiniteGroup):
    """Direct product; element index ``i1 * |G2| + i2``."""

    backend = "DirectProduct"

    def __init__(self, G1: FiniteGroup, G2: FiniteGroup):
        self.factors = (G1, G2)
        n2 = G2.order
        gens = [g * n2 for g in G1.generator_indices] + list(G2.generator_indices)
        super().__init__(G1.order * n2, gens or [0])
        self.embeddings = {
            "first": bitset.from_indices(np.arange(G1.order) * n2, self.order),
            "second": bitset.from_indices(np.arange(n2), self.order),
        }

    def split(self, i):
        return divmod(int(i), self.factors[1].order)

    def element(self, i):
        a, b = self.split(self.check_index(i))
        return (self.factors[0].element(a), self.factors[1].element(b))

    def index_of(self, rep) -> int:
        G1, G2 = self.factors
        return G1.index_of(rep[0]) * G2.order + G2.index_of(rep[1])

    def _row(self, i):
        a, b = self.split(i)
        G1, G2 = self.factors
        return (G1.row(a)[:, None] * G2.order + G2.row(b)[None, :]).ravel()

    def _col(self, i):
        a, b = self.split(i)
        G1, G2 = self.factors
        return (G1.col(a)[:, None] * G2.order + G2.col(b)[None, :]).ravel()

    def mul(self, i, j):
        if self._table is not None:
            return int(self._table[i, j])
        a, b = self.split(i)
        c, d = self.split(j)
        G1, G2 = self.factors
        return G1.mul(a, c) * G2.order + G2.mul(b, d)


def direct_product(G1: FiniteGroup, G2: FiniteGroup, cap: int = ELEMENT_CAP) -> ProductGroup:
    if G1.order * G2.order > cap:
        raise ElementCapExceeded(f"order {G1.order * G2.order} exceeds element cap {cap}")
    return ProductGroup(G1, G2)


class TableGroup(FiniteGroup):
    """A group given directly by its Cayley table (quotients, induced subgroups)."""

    backend = "Table"

    def __init__(self, table: np.ndarray, reps: list, generator_indices, backend: str = "Table"):
        self.backend = backend
        self._reps = list(reps)
        self._index = {r: k for k, r in enumerate(self._reps)}
        super().__init__(len(reps), generator_indices)
        self._table = np.asarray(table, dtype=np.int32)

    @property
    def table(self):
        return self._table

    def element(self, i):
        return self._reps[self.check_index(i)]

    def index_of(self, rep):
        return self._index[rep]

    def _row(self, i):
        return self._table[i].astype(np.int64)

    def _col(self, i):
        return self._table[:, i].astype(np.int64)


def central_product(G1: FiniteGroup, G2: FiniteGroup, identification,
                    cap: int = ELEMENT_CAP) -> TableGroup:
    """Quotient of G1 x G2 by the anti-diagonal {(a, b^-1)} of an isomorphism
    between central subgroups, given on generators as ``[(a_index, b_index), ...]``.

    Element representatives are the smallest direct-product index in each coset.
    """
    from .subgroups import center, generated_subgroup

    D = ProductGroup(G1, G2)
    n2 = G2.order
    Z1, Z2 = center(G1).bits, center(G2).bits
    pairs = [(G1.check_index(a), G2.check_index(b)) for a, b in identification]
    for a, b in pairs:
        if not (Z1 >> a) & 1 or not (Z2 >> b) & 1:
            raise NotCentral(f"identified generators ({a}, {b}) are not both central")
    anti = generated_subgroup(D, [a * n2 + G2.inv(b) for a, b in pairs])
    Zl = generated_subgroup(G1, [a for a, _ in pairs])
    Zr = generated_subgroup(G2, [b for _, b in pairs])
    if (anti.bits & D.embeddings["first"]) != 1 or (anti.bits & D.embeddings["second"]) != 1 \
            or not anti.order == Zl.order == Zr.order:
        raise NotIsomorphism("generator map does not extend to an isomorphism of central subgroups")
    N = anti.elements
    order = D.order // len(N)
    if order > min(cap, TABLE_CAP):
        raise ElementCapExceeded(f"central product of order {order} exceeds table cap")
    coset = np.full(D.order, -1, dtype=np.int64)
    reps = []
    for x in range(D.order):
        if coset[x] < 0:
            members = D.mul_many(x, N) if len(N) else np.array([x])
            coset[members] = len(reps)
            reps.append(x)
    table = np.empty((order, order), dtype=np.int32)
    rep_arr = np.array(reps)
    for k, r in enumerate(reps):
        table[k] = coset[D.row(r)[rep_arr]]
    gens = sorted({int(coset[g]) for g in D.generator_indices} - {0}) or [0]
    G = TableGroup(table, [D.element(r) for r in reps], gens, backend="CentralProduct")
    G.embeddings = {
        "first": bitset.from_indices(np.unique(coset[np.arange(G1.order) * n2]), order),
        "second": bitset.from_indices(np.unique(coset[np.arange(n2)]), order),
    }
    return G


def induced_group(G: FiniteGroup, H) -> TableGroup:
    """Subgroup H of G as a standalone group (indices renumbered, identity first)."""
    elems = H.elements
    pos = np.full(G.order, -1, dtype=np.int64)
    pos[elems] = np.arange(len(elems))
    table = np.empty((len(elems), len(elems)), dtype=np.int32)
    for k, x in enumerate(elems):
        table[k] = pos[G.row(int(x))[elems]]
    from .subgroups import small_generating_set
    gens = [int(pos[g]) for g in small_generating_set(H)]
    sub = TableGroup(table, [G.element(int(x)) for x in elems], gens or [0], backend="Induced")
    sub.parent_indices = elems
    return sub
