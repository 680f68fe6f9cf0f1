"""Subgroups as bitsets over the element indices of an ambient group.

The functions here only use the oracle surface shared by ``FiniteGroup`` and
``BilinearModel`` (``size``, ``mul_many``, ``inverses``, ``centralizer_bits``,
``order_of``), so the CD machinery runs unchanged on either.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import bitset
from .errors import FamilyCapExceeded, IndexOutOfRange, OracleCapExceeded

FAMILY_CAP = 100_000
ORACLE_CAP = 128


class Subgroup:
    """A subgroup of ``ambient`` given by the bitset of its element indices.

    Two subgroups compare equal only when they share the same ambient object.
    """

    __slots__ = ("ambient", "bits", "_order", "_elements", "_gens")

    def __init__(self, ambient, bits: int):
        self.ambient = ambient
        self.bits = int(bits)
        self._order = None
        self._elements = None
        self._gens = None

    @property
    def order(self) -> int:
        if self._order is None:
            self._order = self.ambient.order_of(self.bits)
        return self._order

    @property
    def elements(self) -> np.ndarray:
        if self._elements is None:
            self._elements = bitset.to_indices(self.bits, self.ambient.size)
        return self._elements

    @property
    def size(self) -> int:
        """Number of universe points (equals ``order`` on concrete groups)."""
        return bitset.popcount(self.bits)

    def __contains__(self, x) -> bool:
        return bool((self.bits >> int(x)) & 1)

    def __le__(self, other: "Subgroup") -> bool:
        return self.ambient is other.ambient and bitset.is_subset(self.bits, other.bits)

    def __lt__(self, other: "Subgroup") -> bool:
        return self <= other and self.bits != other.bits

    def __eq__(self, other) -> bool:
        return isinstance(other, Subgroup) and self.ambient is other.ambient and self.bits == other.bits

    def __hash__(self) -> int:
        return hash((id(self.ambient), self.bits))

    def __and__(self, other: "Subgroup") -> "Subgroup":
        return Subgroup(self.ambient, self.bits & other.bits)

    def sort_key(self):
        return (self.order, bitset.sort_key(self.bits, self.ambient.size)[1])

    def __repr__(self) -> str:
        return f"<Subgroup order={self.order}>"


def _close(G, start_bits: int, gens) -> int:
    """Smallest subset containing ``start_bits`` (a subgroup or {identity}) and
    closed under right multiplication by ``gens``."""
    gens = np.asarray(sorted(set(int(g) for g in gens)), dtype=np.int64)
    mask = bitset.to_mask(start_bits | 1, G.size)
    if gens.size == 0:
        return bitset.from_mask(mask)
    frontier = np.flatnonzero(mask)
    while frontier.size:
        prods = G.mul_many(frontier[:, None], gens[None, :]).ravel()
        prods = np.unique(prods)
        new = prods[~mask[prods]]
        mask[new] = True
        frontier = new
    return bitset.from_mask(mask)


def generated_subgroup(G, seeds) -> Subgroup:
    """Least subgroup containing ``seeds`` (element indices)."""
    seeds = [int(s) for s in seeds]
    for s in seeds:
        if not 0 <= s < G.size:
            raise IndexOutOfRange(f"element index {s} outside 0..{G.size - 1}")
    H = Subgroup(G, _close(G, 1, seeds))
    H._gens = tuple(sorted(set(seeds) - {0}))
    return H


def join(G, *subgroups: Subgroup) -> Subgroup:
    seeds = []
    for H in subgroups:
        seeds.extend(small_generating_set(H))
    return generated_subgroup(G, seeds)


def small_generating_set(H: Subgroup) -> tuple[int, ...]:
    """Greedy generating set: scan elements, keep those outside the span so far."""
    if H._gens is None:
        G = H.ambient
        gens: list[int] = []
        span = 1
        for x in H.elements:
            x = int(x)
            if not (span >> x) & 1:
                gens.append(x)
                span = _close(G, span, gens)
                if span == H.bits:
                    break
        H._gens = tuple(gens)
    return H._gens


def whole(G) -> Subgroup:
    return Subgroup(G, G.full_bits)


def trivial(G) -> Subgroup:
    return Subgroup(G, 1)


def centralizer(G, H: Subgroup) -> Subgroup:
    """C_G(H), intersecting element centralizers over a generating set of H."""
    return Subgroup(G, G.centralizer_bits(H.bits, small_generating_set(H)))


def center(G) -> Subgroup:
    return centralizer(G, whole(G))


def is_abelian(H: Subgroup) -> bool:
    C = centralizer(H.ambient, H)
    return H <= C


def conjugate_bits(G, H: Subgroup, g: int) -> int:
    """Bitset of g^-1 H g."""
    inv = G.inverses
    els = H.elements
    return bitset.from_indices(G.mul_many(G.mul_many(inv[g], els), g), G.size)


def is_normal(G, H: Subgroup, by: Subgroup | None = None) -> bool:
    """True when H is normalized by ``by`` (default: all of G)."""
    gens = small_generating_set(by) if by is not None else G.generator_indices
    hg = np.asarray(small_generating_set(H), dtype=np.int64)
    if hg.size == 0:
        return True
    inv = G.inverses
    mask = bitset.to_mask(H.bits, G.size)
    for g in gens:
        conj = G.mul_many(G.mul_many(inv[g], hg), g)
        if not mask[conj].all():
            return False
    return True


def normal_closure(G, seeds, within: Subgroup | None = None) -> Subgroup:
    """Smallest subgroup containing seeds and normalized by ``within`` (default G)."""
    conj_gens = small_generating_set(within) if within is not None else G.generator_indices
    K = generated_subgroup(G, seeds)
    inv = G.inverses
    while True:
        gens = np.asarray(small_generating_set(K), dtype=np.int64)
        mask = bitset.to_mask(K.bits, G.size)
        extra = []
        for g in conj_gens:
            if gens.size:
                conj = G.mul_many(G.mul_many(inv[g], gens), g)
                extra.extend(int(c) for c in conj[~mask[conj]])
        if not extra:
            return K
        K = generated_subgroup(G, list(gens) + extra)


def commutator_subgroup(G, A: Subgroup, B: Subgroup) -> Subgroup:
    """[A, B], generated by all commutators [a, b] with a in A, b in B."""
    a = A.elements
    seeds = set()
    for b in B.elements:
        seeds.update(np.unique(G.commutator_many(a, int(b))).tolist())
    return generated_subgroup(G, seeds)


def commutators_within(G, A: Subgroup, B: Subgroup, C: Subgroup) -> bool:
    """Every commutator [a, b] (a in A, b in B) lies in C.  When C is a
    subgroup this is exactly [A, B] <= C."""
    mask = bitset.to_mask(C.bits, G.size)
    a = A.elements
    for b in B.elements:
        if not mask[G.commutator_many(a, int(b))].all():
            return False
    return True


def derived_subgroup(G, H: Subgroup | None = None) -> Subgroup:
    H = whole(G) if H is None else H
    a = H.elements
    seeds = set()
    for g in small_generating_set(H):
        seeds.update(np.unique(G.commutator_many(a, g)).tolist())
    return normal_closure(G, seeds, within=H)


def setwise_product(G, H: Subgroup, K: Subgroup) -> int:
    """Bitset of HK = {hk}."""
    if hasattr(G, "product_bits"):
        return G.product_bits(H.bits, K.bits)
    k = K.elements
    mask = np.zeros(G.size, dtype=bool)
    for h in H.elements:
        mask[G.mul_many(int(h), k)] = True
    return bitset.from_mask(mask)


@dataclass
class CentralizerFamily:
    members: list[Subgroup]
    generated_from: list[int]


def element_centralizers(G) -> tuple[np.ndarray, list[int], list[int]]:
    """Per-element centralizer id, the distinct centralizer bitsets and one
    representative element for each."""
    ids = np.empty(G.size, dtype=np.int64)
    distinct: dict[int, int] = {}
    reps: list[int] = []
    for x in range(G.size):
        c = G.element_centralizer_bits(x)
        k = distinct.get(c)
        if k is None:
            k = distinct[c] = len(reps)
            reps.append(x)
        ids[x] = k
    return ids, list(distinct), reps


def intersection_closure(seeds, top: int, cap: int = FAMILY_CAP) -> set[int]:
    """All intersections of subsets of ``seeds`` (the empty intersection is ``top``)."""
    family = {top}
    for s in seeds:
        new = {f & s for f in family}
        family |= new
        if len(family) > cap:
            raise FamilyCapExceeded(f"bicentralizer family exceeds {cap} members")
    return family


def bicentralizer_family(G, cap: int = FAMILY_CAP) -> CentralizerFamily:
    """Intersection closure of the element centralizers.

    This is exactly the set of centralizers C_G(X) of subsets X, hence it
    contains every bicentralizer C_G(C_G(H)).
    """
    if hasattr(G, "bicentralizer_family"):
        return G.bicentralizer_family(cap)
    _, cents, reps = element_centralizers(G)
    order = sorted(range(len(cents)), key=lambda k: bitset.sort_key(cents[k], G.size))
    fam = intersection_closure([cents[k] for k in order], G.full_bits, cap)
    members = sorted((Subgroup(G, b) for b in fam), key=Subgroup.sort_key)
    return CentralizerFamily(members, [reps[k] for k in order])


def all_subgroups(G, cap: int = ORACLE_CAP) -> list[Subgroup]:
    """Every subgroup, by iterated cyclic extension from the trivial subgroup."""
    if G.size > cap:
        raise OracleCapExceeded(f"all_subgroups limited to order {cap}, got {G.size}")
    seen: dict[int, list[int]] = {1: []}
    queue = [1]
    while queue:
        H = queue.pop()
        gens = seen[H]
        covered = H
        for x in range(G.size):
            if (covered >> x) & 1:
                continue
            K = _close(G, H, gens + [x])
            # <H, xh> = <H, x>, so the whole coset xH is done
            covered |= bitset.from_indices(G.mul_many(x, bitset.to_indices(H, G.size)), G.size)
            if K not in seen:
                seen[K] = gens + [x]
                queue.append(K)
    out = []
    for bits, gens in seen.items():
        H = Subgroup(G, bits)
        H._gens = tuple(gens)
        out.append(H)
    return sorted(out, key=Subgroup.sort_key)
