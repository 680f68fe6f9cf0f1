"""Bilinear fast path for class-2 groups.

When the commutator form of ``Class2Data`` has trivial radical, the designated
central subgroup Z is all of Z(G), every CD member contains Z, and subgroups
between Z and G correspond to subspaces of GF(p)^d.  ``BilinearModel`` exposes
the quotient G/Z as the bitset universe (one point per vector of GF(p)^d,
numbered by vector code) with the same oracle surface as ``FiniteGroup``; the
only group-theoretic information that survives the quotient is carried by the
centralizer, which is computed from the form:

    C(U) <-> U^perp = {v : B(u, v) = 0 for all u in U}.

Orders are reported for the real subgroups, i.e. ``p**e`` times the number of
vectors.
"""
from __future__ import annotations

import numpy as np

from . import bitset
from .errors import FamilyCapExceeded, RadicalNotTrivial, TooLarge
from .gfp import all_vectors, decode, encode, nullspace, rank, rref
from .groups import Class2Data, Class2Group
from .subgroups import FAMILY_CAP, CentralizerFamily, Subgroup, intersection_closure

UNIVERSE_CAP = 1 << 20


def radical(data: Class2Data) -> np.ndarray:
    """Basis (rows) of {u : B(u, v) = 0 for all v}."""
    p, d, e = data.p, data.d, data.e
    # row (j, k) of the system: sum_i u_i B[i][j][k] = 0
    A = data.B.transpose(1, 2, 0).reshape(d * e, d)
    return nullspace(A, p, ncols=d)


class BilinearModel:
    backend = "Bilinear"

    def __init__(self, data: Class2Data):
        p, d, e = data.p, data.d, data.e
        if p**d > UNIVERSE_CAP:
            raise TooLarge(f"p^d = {p**d} exceeds the fast-path universe cap")
        rad = radical(data)
        if len(rad):
            raise RadicalNotTrivial(f"commutator form has a radical of dimension {len(rad)}")
        self.data = data
        self.p, self.d, self.e = p, d, e
        self.size = p**d
        self.order = p ** (d + e)
        self.vectors = all_vectors(p, d)
        self.generator_indices = tuple(p**i for i in range(d))
        self._inverses = encode((-self.vectors) % p, p)
        self._cent_cache: dict[int, int] = {}

    # -- oracle surface ---------------------------------------------------
    @property
    def full_bits(self) -> int:
        return (1 << self.size) - 1

    @property
    def inverses(self) -> np.ndarray:
        return self._inverses

    def mul_many(self, a, b) -> np.ndarray:
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        return encode((decode(a, self.p, self.d) + decode(b, self.p, self.d)) % self.p, self.p)

    def mul(self, i: int, j: int) -> int:
        return int(self.mul_many(i, j))

    def row(self, i: int) -> np.ndarray:
        return self.mul_many(i, np.arange(self.size))

    col = row

    def commutator_many(self, a, b) -> np.ndarray:
        # Commutators of the real group lie in Z, the identity of G/Z.
        a, b = np.broadcast_arrays(np.asarray(a), np.asarray(b))
        return np.zeros(a.shape, dtype=np.int64)

    def power_many(self, idx, k: int) -> np.ndarray:
        return encode((decode(idx, self.p, self.d) * k) % self.p, self.p)

    def order_of(self, bits: int) -> int:
        return bitset.popcount(bits) * self.p**self.e

    # -- linear algebra -----------------------------------------------------
    def form_rows(self, u) -> np.ndarray:
        """e x d matrix A_u with A_u @ v = B(u, v)."""
        return np.einsum("i,ijk->kj", np.asarray(u, dtype=np.int64), self.data.B) % self.p

    def solution_bits(self, A) -> int:
        """Bitset of {v : A @ v = 0}."""
        A = np.asarray(A, dtype=np.int64).reshape(-1, self.d)
        if A.shape[0] == 0:
            return self.full_bits
        ok = ~((self.vectors @ A.T) % self.p).any(axis=1)
        return bitset.from_mask(ok)

    def span_bits(self, vectors) -> int:
        vectors = np.asarray(vectors, dtype=np.int64).reshape(-1, self.d)
        if vectors.shape[0] == 0 or not vectors.any():
            return 1
        basis, _ = rref(vectors, self.p)
        return self.solution_bits(nullspace(basis, self.p))

    def basis_of(self, bits: int) -> np.ndarray:
        """Reduced echelon basis of the span of the vectors in ``bits``."""
        vecs = self.vectors[bitset.to_indices(bits, self.size)]
        if not vecs.any():
            return np.zeros((0, self.d), dtype=np.int64)
        return rref(vecs, self.p)[0]

    def dim_of(self, bits: int) -> int:
        n = bitset.popcount(bits)
        k = 0
        while n > 1:
            n //= self.p
            k += 1
        return k

    def element_centralizer_bits(self, x: int) -> int:
        bits = self._cent_cache.get(x)
        if bits is None:
            bits = self.solution_bits(self.form_rows(self.vectors[x]))
            self._cent_cache[x] = bits
        return bits

    def centralizer_bits(self, bits: int, gens=None) -> int:
        vecs = self.vectors[list(gens)] if gens is not None else self.basis_of(bits)
        if len(vecs) == 0:
            return self.full_bits
        basis = rref(vecs, self.p)[0] if np.any(vecs) else vecs[:0]
        rows = [self.form_rows(u) for u in basis]
        return self.solution_bits(np.vstack(rows)) if rows else self.full_bits

    def product_bits(self, a: int, b: int) -> int:
        return self.span_bits(np.vstack([self.basis_of(a), self.basis_of(b)]))

    def projective_points(self) -> np.ndarray:
        """Codes of the nonzero vectors whose first nonzero coordinate is 1."""
        v = self.vectors[1:]
        first = v[np.arange(len(v)), (v != 0).argmax(axis=1)]
        return np.flatnonzero(first == 1) + 1

    def bicentralizer_family(self, cap: int = FAMILY_CAP) -> CentralizerFamily:
        # Scalar multiples share a centralizer, so one point per line suffices.
        seen: dict[int, int] = {}
        for x in self.projective_points():
            c = self.element_centralizer_bits(int(x))
            seen.setdefault(c, int(x))
        seeds = sorted(seen, key=lambda c: bitset.sort_key(c, self.size))
        fam = intersection_closure(seeds, self.full_bits, cap)
        members = sorted((Subgroup(self, b) for b in fam), key=Subgroup.sort_key)
        return CentralizerFamily(members, [seen[c] for c in seeds])

    def large_closed_subspaces(self, min_dim: int, cap: int = FAMILY_CAP) -> list[int]:
        """Members of the bicentralizer family of dimension >= ``min_dim``.

        Intersections only shrink, so a breadth-first descent from the whole
        space that discards anything below ``min_dim`` still reaches every
        such member; members of dimension exactly ``min_dim`` are leaves.
        """
        seeds: dict[int, int] = {}
        for x in self.projective_points():
            seeds.setdefault(self.element_centralizer_bits(int(x)), int(x))
        seed_list = sorted(seeds, key=lambda c: bitset.sort_key(c, self.size))
        threshold = self.p**min_dim
        top = self.full_bits
        seen = {top}
        frontier = [top]
        while frontier:
            nxt = []
            for V in frontier:
                if V != top and V.bit_count() <= threshold:
                    continue
                for s in seed_list:
                    W = V & s
                    if W != V and W not in seen and W.bit_count() >= threshold:
                        seen.add(W)
                        nxt.append(W)
                if len(seen) > cap:
                    raise FamilyCapExceeded(f"closed-subspace search exceeds {cap} members")
            frontier = nxt
        return sorted(seen, key=lambda b: bitset.sort_key(b, self.size))

    def fast_centralizer_bits(self, bits: int) -> int:
        """C(V) for a subspace V, intersecting cached point centralizers over
        its echelon basis (echelon rows are projective representatives)."""
        acc = self.full_bits
        for row in self.basis_of(bits):
            acc &= self.element_centralizer_bits(int(encode(row, self.p)))
        return acc

    # -- translation to the expanded group --------------------------------
    def to_group_bits(self, bits: int, G: Class2Group) -> int:
        """Element bitset in ``from_class2_data(data)`` of the preimage of ``bits``."""
        mask = bitset.to_mask(bits, self.size)
        return bitset.from_mask(np.tile(mask, self.p**self.e))

    def canonical_id(self, bits: int) -> str:
        return self.basis_of(bits).astype(np.uint8).tobytes().hex() or "0"

    def __repr__(self) -> str:
        return f"<BilinearModel p={self.p} d={self.d} e={self.e}>"


def restricted_data(data: Class2Data, basis) -> Class2Data:
    """Class2Data of the subgroup <x^b : b in basis> Z, generators x^b in order."""
    p, e = data.p, data.e
    basis = np.asarray(basis, dtype=np.int64)
    m = len(basis)
    B = np.einsum("si,ijk,tj->stk", basis, data.B, basis) % p
    q = np.zeros((m, e), dtype=np.int64)
    if p == 2:
        low = np.tril(np.ones((data.d, data.d), dtype=np.int64), -1)[:, :, None] * data.B
        for s, b in enumerate(basis):
            q[s] = (np.einsum("i,ijk,j->k", b, low, b) + b @ data.q) % p
    return Class2Data(p, m, e, B, q)


def form_rank(data: Class2Data) -> int:
    p, d, e = data.p, data.d, data.e
    return rank(data.B.transpose(1, 2, 0).reshape(d * e, d), p)
