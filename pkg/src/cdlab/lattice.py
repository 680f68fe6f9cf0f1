"""Finite lattices given by their order relation, shape classification,
products and isomorphism."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iproduct

import networkx as nx
import numpy as np

from .errors import TooLarge
from .gfp import prime_factors, prime_power_exponent

ISO_NODE_CAP = 64


class FiniteLattice:
    """Nodes ``0..n-1`` with ``leq[i, j]`` true iff node i <= node j."""

    def __init__(self, leq, labels=None):
        self.leq = np.asarray(leq, dtype=bool)
        self.n = len(self.leq)
        self.labels = list(labels) if labels is not None else list(range(self.n))
        self._join = self._meet = None

    @classmethod
    def from_bitsets(cls, bits: list[int], labels=None) -> "FiniteLattice":
        n = len(bits)
        leq = np.array([[bits[i] & ~bits[j] == 0 for j in range(n)] for i in range(n)], dtype=bool)
        return cls(leq, labels)

    @classmethod
    def chain(cls, length: int) -> "FiniteLattice":
        idx = np.arange(length + 1)
        return cls(idx[:, None] <= idx[None, :])

    @classmethod
    def quasi_antichain(cls, width: int) -> "FiniteLattice":
        n = width + 2
        leq = np.eye(n, dtype=bool)
        leq[0, :] = True
        leq[:, n - 1] = True
        return cls(leq)

    def lt(self) -> np.ndarray:
        return self.leq & ~np.eye(self.n, dtype=bool)

    @property
    def covers(self) -> list[tuple[int, int]]:
        """Pairs (i, j) with i < j and nothing strictly between."""
        lt = self.lt()
        between = (lt.astype(np.int64) @ lt.astype(np.int64)) > 0
        cov = lt & ~between
        return [(int(i), int(j)) for i, j in zip(*np.nonzero(cov))]

    @property
    def bottom(self) -> int:
        cand = np.flatnonzero(self.leq.all(axis=1))
        return int(cand[0])

    @property
    def top(self) -> int:
        cand = np.flatnonzero(self.leq.all(axis=0))
        return int(cand[0])

    def upper_covers(self, i: int) -> list[int]:
        return [b for a, b in self.covers if a == i]

    def atoms(self) -> list[int]:
        return self.upper_covers(self.bottom) if self.n > 1 else []

    def coatoms(self) -> list[int]:
        t = self.top
        return [a for a, b in self.covers if b == t]

    def is_lattice(self) -> bool:
        try:
            self._tables()
        except ValueError:
            return False
        return True

    def _tables(self):
        if self._join is None:
            n = self.leq.shape[0]
            rank = self.leq.sum(axis=0)  # number of elements below
            join = np.empty((n, n), dtype=np.int64)
            meet = np.empty((n, n), dtype=np.int64)
            for i in range(n):
                for j in range(n):
                    ub = np.flatnonzero(self.leq[i] & self.leq[j])
                    lb = np.flatnonzero(self.leq[:, i] & self.leq[:, j])
                    if ub.size == 0 or lb.size == 0:
                        raise ValueError("not a lattice")
                    u = ub[np.argmin(rank[ub])]
                    l_ = lb[np.argmax(rank[lb])]
                    if not self.leq[u, ub].all() or not self.leq[lb, l_].all():
                        raise ValueError("not a lattice")
                    join[i, j] = u
                    meet[i, j] = l_
            self._join, self._meet = join, meet
        return self._join, self._meet

    def join(self, i: int, j: int) -> int:
        return int(self._tables()[0][i, j])

    def meet(self, i: int, j: int) -> int:
        return int(self._tables()[1][i, j])

    def is_modular(self) -> bool:
        """Modular law a <= c  =>  a v (b ^ c) = (a v b) ^ c; equivalent to having no N5."""
        J, M = self._tables()
        for a in range(self.n):
            for c in np.flatnonzero(self.leq[a]):
                lhs = J[a, M[:, c]]
                rhs = M[J[a, :], c]
                if not np.array_equal(lhs, rhs):
                    return False
        return True

    def find_pentagon(self):
        """An N5 sublattice (0, a, b, c, 1) with a < c and b incomparable, or None."""
        J, M = self._tables()
        lt = self.lt()
        for a, c in zip(*np.nonzero(lt)):
            for b in range(self.n):
                if self.leq[a, b] or self.leq[b, a] or self.leq[c, b] or self.leq[b, c]:
                    continue
                if J[a, b] == J[c, b] and M[a, b] == M[c, b]:
                    return (int(M[a, b]), int(a), int(b), int(c), int(J[a, b]))
        return None

    def maximal_chain_lengths(self) -> set[int]:
        cov = self.covers
        succ: dict[int, list[int]] = {i: [] for i in range(self.n)}
        for a, b in cov:
            succ[a].append(b)
        lengths: dict[int, set[int]] = {}

        def walk(i):
            if i not in lengths:
                lengths[i] = {0} if not succ[i] else {1 + x for s in succ[i] for x in walk(s)}
            return lengths[i]

        return walk(self.bottom) if self.n else set()

    def is_chain(self) -> bool:
        return bool((self.leq | self.leq.T).all())

    def interval_nodes(self, lo: int, hi: int) -> list[int]:
        return [k for k in range(self.n) if self.leq[lo, k] and self.leq[k, hi]]

    def sublattice(self, nodes: list[int]) -> "FiniteLattice":
        idx = np.asarray(nodes, dtype=np.int64)
        return FiniteLattice(self.leq[np.ix_(idx, idx)], [self.labels[k] for k in nodes])

    def hasse_graph(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.covers)
        return g


def lattice_product(L1: FiniteLattice, L2: FiniteLattice) -> FiniteLattice:
    """Componentwise order on pairs; node ``i * L2.n + j`` is (i, j)."""
    leq = np.einsum("ik,jl->ijkl", L1.leq, L2.leq).reshape(L1.n * L2.n, L1.n * L2.n)
    labels = [(a, b) for a, b in iproduct(L1.labels, L2.labels)]
    return FiniteLattice(leq, labels)


def _invariants(L: FiniteLattice) -> list[tuple]:
    down = L.leq.sum(axis=0)
    up = L.leq.sum(axis=1)
    g = L.hasse_graph()
    return [(int(down[k]), int(up[k]), g.in_degree(k), g.out_degree(k)) for k in range(L.n)]


def lattice_isomorphic(L1: FiniteLattice, L2: FiniteLattice) -> bool:
    """Order isomorphism test on Hasse diagrams (degree/level refinement, then
    VF2 backtracking).  Refuses lattices above ISO_NODE_CAP nodes."""
    if max(L1.n, L2.n) > ISO_NODE_CAP:
        raise TooLarge(f"isomorphism limited to {ISO_NODE_CAP} nodes")
    if L1.n != L2.n:
        return False
    inv1, inv2 = _invariants(L1), _invariants(L2)
    if sorted(inv1) != sorted(inv2):
        return False
    g1, g2 = L1.hasse_graph(), L2.hasse_graph()
    nx.set_node_attributes(g1, dict(enumerate(inv1)), "inv")
    nx.set_node_attributes(g2, dict(enumerate(inv2)), "inv")
    matcher = nx.algorithms.isomorphism.DiGraphMatcher(
        g1, g2, node_match=lambda a, b: a["inv"] == b["inv"])
    return matcher.is_isomorphic()


@dataclass
class AtomInfo:
    node: int
    order: int | None = None
    abelian: bool | None = None
    dual: int | None = None


@dataclass
class ShapeReport:
    kind: str                      # "Chain" | "QuasiAntichain" | "Other"
    length: int | None = None      # chain length n
    w: int | None = None
    t: int | None = None
    u: int | None = None
    p: int | None = None
    a: int | None = None
    b: int | None = None
    atoms: list[AtomInfo] = field(default_factory=list)
    violation: str | None = None

    def label(self) -> str:
        if self.kind == "Chain":
            return f"Chain({self.length})"
        if self.kind == "QuasiAntichain":
            return f"QuasiAntichain{{w={self.w},t={self.t},u={self.u}}}"
        return "Other"

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "label": self.label()}
        for k in ("length", "w", "t", "u", "p", "a", "b", "violation"):
            v = getattr(self, k)
            if v is not None:
                d[k] = v
        d["atoms"] = [{"node": a.node, "order": str(a.order) if a.order is not None else None,
                       "abelian": a.abelian, "dual": a.dual} for a in self.atoms]
        return d


def classify_shape(L: FiniteLattice, orders=None, abelian=None, duality=None) -> ShapeReport:
    """Chain(n), QuasiAntichain{w, t, u} or Other.

    ``orders``/``abelian``/``duality`` are per-node lists; ``duality`` maps a
    node to its dual node (or None when the dual lies outside ``L``).  For
    width >= 3 the prime data (p, a, b) are derived from |top/bottom| and w;
    when they do not fit the expected pattern ``violation`` says why.
    """
    if L.n == 0:
        return ShapeReport("Other")
    if L.is_chain():
        return ShapeReport("Chain", length=L.n - 1)
    bot, top = L.bottom, L.top
    atoms = [k for k in range(L.n) if k not in (bot, top)]
    lt = L.lt()
    if not all(lt[bot, k] and lt[k, top] for k in atoms) or any(lt[i, j] for i in atoms for j in atoms):
        return ShapeReport("Other")
    w = len(atoms)
    infos = [AtomInfo(k,
                      orders[k] if orders is not None else None,
                      abelian[k] if abelian is not None else None,
                      duality[k] if duality is not None else None) for k in atoms]
    rep = ShapeReport("QuasiAntichain", w=w, atoms=infos)
    if duality is not None and all(duality[k] in atoms for k in atoms):
        rep.t = sum(1 for k in atoms if duality[k] == k)
        rep.u = sum(1 for k in atoms if duality[k] != k) // 2
    elif abelian is not None:
        rep.t = sum(1 for k in atoms if abelian[k])
    if w >= 3 and orders is not None:
        index = orders[top] // orders[bot]
        primes = prime_factors(index)
        if len(primes) != 1:
            rep.violation = f"|H/L| = {index} is not a prime power"
            return rep
        p = primes[0]
        k = prime_power_exponent(index, p)
        b = prime_power_exponent(w - 1, p)
        if k % 2:
            rep.violation = f"|H/L| = {p}^{k} has odd exponent"
        elif b is None or b == 0:
            rep.violation = f"w - 1 = {w - 1} is not a positive power of {p}"
        else:
            rep.p, rep.a, rep.b = p, k // 2, b
    return rep
