"""Builders for the example groups and the small-group catalog."""
from __future__ import annotations

import inspect
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from math import factorial

import numpy as np

from .errors import CapExceeded, InvalidPrime
from .gfp import GFq, is_prime
from .groups import (
    ELEMENT_CAP,
    Class2Data,
    FiniteGroup,
    central_product,
    cycles_to_perm,
    direct_product,
    from_class2_data,
    from_matrices_gfp,
    from_matrices_mod,
    from_permutations,
)


def _prime(p: int) -> int:
    if not isinstance(p, (int, np.integer)) or not is_prime(int(p)):
        raise InvalidPrime(f"{p!r} is not a prime")
    return int(p)


# ---------------------------------------------------------------------------
# Permutation families
# ---------------------------------------------------------------------------

def metacyclic(n: int, s: int, r: int, t: int = 0) -> FiniteGroup:
    """<a, b | a^n = 1, b^s = a^t, b a b^-1 = a^r> on its right regular action.

    Elements a^i b^j are numbered ``i + n*j``.
    """
    if pow(r, s, n) != 1 % n or (t * r - t) % n:
        raise ValueError(f"inconsistent metacyclic parameters n={n}, s={s}, r={r}, t={t}")
    rpow = [pow(r, j, n) for j in range(s)]

    def mul(i, j, k, l):
        a = i + k * rpow[j]
        b = j + l
        if b >= s:
            b -= s
            a += t
        return a % n + n * b

    N = n * s
    ga = [mul(x % n, x // n, 1, 0) for x in range(N)]
    gb = [mul(x % n, x // n, 0, 1) for x in range(N)]
    return from_permutations([ga, gb] if s > 1 else [ga], N)


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("cyclic group needs n >= 1")
    return from_permutations([[(k + 1) % n for k in range(n)]], n)


def elementary_abelian(p: int, k: int) -> FiniteGroup:
    p = _prime(p)
    gens = []
    for i in range(k):
        perm = list(range(p * k))
        for x in range(p):
            perm[i * p + x] = i * p + (x + 1) % p
        gens.append(perm)
    return from_permutations(gens, p * k) if k else from_permutations([[0]], 1)


def dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order 2n (D4 has order 8)."""
    return metacyclic(n, 2, n - 1)


def quaternion(order: int) -> FiniteGroup:
    """Generalized quaternion group of order ``order`` (a power of 2, >= 8)."""
    n = order // 2
    return metacyclic(n, 2, n - 1, n // 2)


def semidihedral(order: int) -> FiniteGroup:
    n = order // 2
    return metacyclic(n, 2, n // 2 - 1)


def modular(order: int) -> FiniteGroup:
    """Modular p-group M_(2^k): a^b = a^(1 + 2^(k-2))."""
    n = order // 2
    return metacyclic(n, 2, n // 2 + 1)


def symmetric(n: int) -> FiniteGroup:
    if n <= 1:
        return from_permutations([[0]], 1)
    if n == 2:
        return from_permutations([[1, 0]], 2)
    return from_permutations([cycles_to_perm([(0, 1)], n), cycles_to_perm([tuple(range(n))], n)], n)


# ---------------------------------------------------------------------------
# Class-2 families
# ---------------------------------------------------------------------------

def extraspecial_data(p: int) -> Class2Data:
    """Exponent-p extraspecial group of order p^3 (D4 for p = 2)."""
    p = _prime(p)
    return Class2Data.from_commutators(p, 2, 1, {(0, 1): [1]})


def quaternion_data() -> Class2Data:
    return Class2Data.from_commutators(2, 2, 1, {(0, 1): [1]}, {0: [1], 1: [1]})


def extraspecial(p: int, variant: str = "plus", backend: str = "class2") -> FiniteGroup:
    """Extraspecial group of order p^3.

    ``plus``: D4 for p = 2, exponent p otherwise.  ``minus``: Q8 for p = 2,
    exponent p^2 otherwise (a permutation group, outside the class-2 data).
    """
    p = _prime(p)
    if variant not in ("plus", "minus"):
        raise ValueError(f"unknown variant {variant!r}")
    if variant == "plus":
        if backend == "class2":
            return from_class2_data(extraspecial_data(p))
        return dihedral(4) if p == 2 else unitriangular(p, 3)
    if p == 2:
        return from_class2_data(quaternion_data()) if backend == "class2" else quaternion(8)
    return metacyclic(p * p, p, 1 + p)


def unitriangular(m: int, dim: int) -> FiniteGroup:
    """Lower unitriangular ``dim x dim`` matrices over Z/m, generated by the
    elementary matrices just below the diagonal."""
    gens = []
    for i in range(1, dim):
        M = np.eye(dim, dtype=np.int64)
        M[i, i - 1] = 1
        gens.append(M)
    if is_prime(m):
        return from_matrices_gfp(m, dim, gens)
    return from_matrices_mod(m, dim, gens)


def heisenberg_data(p: int, n: int) -> Class2Data:
    """Lower unitriangular 3x3 matrices over GF(p^n) as class-2 data.

    Generators x_i = I + w_i E21, y_j = I + w_j E32 for a GF(p)-basis w of
    GF(p^n); [x_i, y_j] is the coordinate vector of w_i w_j in the (3,1) slot.
    """
    p = _prime(p)
    F = GFq(p, n)
    basis = F.basis()
    com = {}
    for i, a in enumerate(basis):
        for j, b in enumerate(basis):
            com[(i, n + j)] = list(F.mul(a, b))
    return Class2Data.from_commutators(p, 2 * n, n, com)


def heisenberg(p: int, n: int, backend: str = "matrix", cap: int = ELEMENT_CAP) -> FiniteGroup:
    """The group of 3x3 lower unitriangular matrices over GF(p^n).

    ``matrix`` represents GF(p^n) by n x n multiplication matrices, so the
    group lives in GL(3n, p); ``class2`` expands ``heisenberg_data``.
    """
    p = _prime(p)
    if n < 1:
        raise ValueError("n must be positive")
    if p ** (3 * n) > cap:
        raise CapExceeded(f"order {p ** (3 * n)} exceeds the element cap; use heisenberg_data")
    if backend == "class2":
        return from_class2_data(heisenberg_data(p, n), cap)
    F = GFq(p, n)
    gens = []
    for w in F.basis():
        blk = F.mult_matrix(w)
        for r, c in ((1, 0), (2, 1)):
            M = np.eye(3 * n, dtype=np.int64)
            M[r * n:(r + 1) * n, c * n:(c + 1) * n] = blk
            gens.append(M)
    return from_matrices_gfp(p, 3 * n, gens, cap)


def width2_abelian_data(p: int) -> Class2Data:
    """Generators m1, m2, n1, n2 with [m_i, n_j] = z_ij the only nontrivial commutators."""
    p = _prime(p)
    com = {}
    for i in range(2):
        for j in range(2):
            z = [0] * 4
            z[2 * i + j] = 1
            com[(i, 2 + j)] = z
    return Class2Data.from_commutators(p, 4, 4, com)


def width2_abelian(p: int, cap: int = ELEMENT_CAP) -> FiniteGroup:
    return from_class2_data(width2_abelian_data(p), cap)


_PAIRS = [(0, 1), (0, 2), (1, 2)]


def _bigex_data(p: int, sign: int) -> Class2Data:
    # generators x_1..x_3 (indices 0-2) and y_1..y_3 (3-5); center z_12, z_13, z_23
    p = _prime(p)
    com = {}
    for k, (i, j) in enumerate(_PAIRS):
        z = [0, 0, 0]
        z[k] = 1
        com[(i, j)] = z
        com[(i + 3, j + 3)] = [sign * c for c in z]
    return Class2Data.from_commutators(p, 6, 3, com)


def bigex_data(p: int) -> Class2Data:
    """[x_i, x_j] = [y_i, y_j] = z_ij, [x_i, y_j] = 1, all generators of order p."""
    return _bigex_data(p, 1)


def bigex2_data(p: int) -> Class2Data:
    """As ``bigex_data`` but with [y_i, y_j] = z_ij^-1."""
    return _bigex_data(p, -1)


def bigex(p: int, cap: int = ELEMENT_CAP) -> FiniteGroup:
    return from_class2_data(bigex_data(p), cap)


def bigex2(p: int, cap: int = ELEMENT_CAP) -> FiniteGroup:
    return from_class2_data(bigex2_data(p), cap)


def bigex_atom_basis(p: int, k: int) -> np.ndarray:
    """Basis of M_k / Z in GF(p)^6: M_0 = <x_i>, M_p = <y_i>, else <x_i y_i^k>."""
    B = np.zeros((3, 6), dtype=np.int64)
    for i in range(3):
        if k == p:
            B[i, 3 + i] = 1
        else:
            B[i, i] = 1
            B[i, 3 + i] = k % p
    return B


def bigex_central_product(p: int) -> FiniteGroup:
    """bigex(p) rebuilt as the central product of M_0 and M_p over their centers."""
    M = from_class2_data(extraspecial_like_m0(p))
    Z = [p ** (3 + k) for k in range(3)]
    return central_product(M, M, list(zip(Z, Z)), cap=p**9)


def extraspecial_like_m0(p: int) -> Class2Data:
    """M_0 = <x_1, x_2, x_3> Z: [x_i, x_j] = z_ij, order p^6."""
    com = {}
    for k, (i, j) in enumerate(_PAIRS):
        z = [0, 0, 0]
        z[k] = 1
        com[(i, j)] = z
    return Class2Data.from_commutators(_prime(p), 3, 3, com)


# ---------------------------------------------------------------------------
# Specs and catalog
# ---------------------------------------------------------------------------

_BUILDERS = {
    "cyclic": lambda n: cyclic(n),
    "elementary_abelian": lambda p, k: elementary_abelian(p, k),
    "dihedral": lambda n: dihedral(n),
    "quaternion": lambda order: quaternion(order),
    "semidihedral": lambda order: semidihedral(order),
    "modular": lambda order: modular(order),
    "symmetric": lambda n: symmetric(n),
    "unitriangular": lambda m, dim: unitriangular(m, dim),
    "extraspecial": lambda p, variant="plus": extraspecial(p, variant),
    "heisenberg": lambda p, n: heisenberg(p, n),
    "width2_abelian": lambda p: width2_abelian(p),
    "bigex": lambda p: bigex(p),
    "bigex2": lambda p: bigex2(p),
}

_DATA = {
    "extraspecial": lambda p, variant="plus": (extraspecial_data(p) if variant == "plus"
                                               else quaternion_data() if p == 2 else None),
    "heisenberg": lambda p, n: heisenberg_data(p, n),
    "width2_abelian": lambda p: width2_abelian_data(p),
    "bigex": lambda p: bigex_data(p),
    "bigex2": lambda p: bigex2_data(p),
}

_ORDER = {
    "cyclic": lambda n: n,
    "elementary_abelian": lambda p, k: p**k,
    "dihedral": lambda n: 2 * n,
    "quaternion": lambda order: order,
    "semidihedral": lambda order: order,
    "modular": lambda order: order,
    "symmetric": lambda n: factorial(n),
    "unitriangular": lambda m, dim: m ** (dim * (dim - 1) // 2),
    "extraspecial": lambda p, variant="plus": p**3,
    "heisenberg": lambda p, n: p ** (3 * n),
    "width2_abelian": lambda p: p**8,
    "bigex": lambda p: p**9,
    "bigex2": lambda p: p**9,
}

CONSTRUCTION_NAMES = tuple(_BUILDERS) + ("direct_product", "central_product")


@dataclass(frozen=True)
class ConstructionSpec:
    """A named construction with its parameters; products carry component specs.

    ``central_product`` identifies the full centers of two class-2 components
    generator by generator and is only supported for components given by
    class-2 data with equal e.
    """

    name: str
    params: dict = field(default_factory=dict, hash=False, compare=True)
    components: tuple = ()

    def __post_init__(self):
        if self.name not in CONSTRUCTION_NAMES:
            raise ValueError(f"unknown construction {self.name!r}")
        if self.name in ("direct_product", "central_product") and len(self.components) != 2:
            raise ValueError(f"{self.name} needs two components")
        if self.name in _ORDER:
            try:
                bound = inspect.signature(_ORDER[self.name]).bind(**self.params)
            except TypeError as exc:
                raise ValueError(str(exc)) from None
            # signature order, so labels do not depend on how params were written
            object.__setattr__(self, "params", dict(bound.arguments))
        for key in ("p",):
            if key in self.params:
                _prime(self.params[key])

    def __hash__(self):
        return hash((self.name, tuple(sorted(self.params.items())), self.components))

    @property
    def order(self) -> int:
        if self.name == "direct_product":
            return self.components[0].order * self.components[1].order
        if self.name == "central_product":
            a, b = self.components
            return a.order * b.order // a.p_power_center()
        return _ORDER[self.name](**self.params)

    def p_power_center(self) -> int:
        data = self.data()
        return data.p**data.e

    @property
    def label(self) -> str:
        if self.components:
            sep = " x " if self.name == "direct_product" else " o "
            return "(" + sep.join(c.label for c in self.components) + ")"
        args = ",".join(str(v) for v in self.params.values())
        return f"{self.name}({args})"

    def data(self) -> Class2Data | None:
        """Class-2 data when the construction has a fast-path description."""
        if self.name == "direct_product":
            a, b = (c.data() for c in self.components)
            if a is not None and b is not None and a.p == b.p:
                return a.direct_sum(b)
            return None
        if self.name == "central_product":
            return None
        maker = _DATA.get(self.name)
        return maker(**self.params) if maker else None

    def build(self, cap: int = ELEMENT_CAP) -> FiniteGroup:
        if self.order > cap:
            raise CapExceeded(f"{self.label} has order {self.order} > element cap {cap}")
        if self.name == "direct_product":
            return direct_product(self.components[0].build(cap), self.components[1].build(cap), cap)
        if self.name == "central_product":
            a, b = self.components
            Ga, Gb = from_class2_data(a.data(), cap), from_class2_data(b.data(), cap)
            da = a.data()
            z = [da.p ** (da.d + k) for k in range(da.e)]
            return central_product(Ga, Gb, list(zip(z, z)), cap)
        return _BUILDERS[self.name](**self.params)

    def to_dict(self) -> dict:
        out = {"name": self.name, "params": dict(self.params)}
        if self.components:
            out["components"] = [c.to_dict() for c in self.components]
        return out

    @classmethod
    def from_dict(cls, d: dict) -> "ConstructionSpec":
        extra = set(d) - {"name", "params", "components"}
        if extra:
            raise ValueError(f"unknown construction fields {sorted(extra)}")
        comps = tuple(cls.from_dict(c) for c in d.get("components", ()))
        return cls(d["name"], dict(d.get("params", {})), comps)


def spec(name: str, *components, **params) -> ConstructionSpec:
    return ConstructionSpec(name, params, tuple(components))


def _base_catalog(max_order: int) -> list[ConstructionSpec]:
    out = [spec("cyclic", n=n) for n in range(1, max_order + 1)]
    for p in (2, 3, 5, 7, 11):
        k = 2
        while p**k <= max_order:
            # 2^7 is left out: its 29,212 subgroups make the oracle too slow
            if (p, k) != (2, 7):
                out.append(spec("elementary_abelian", p=p, k=k))
            k += 1
    out += [spec("dihedral", n=n) for n in range(3, max_order // 2 + 1)]
    for name in ("quaternion", "semidihedral", "modular"):
        size = 8 if name == "quaternion" else 16
        while size <= max_order:
            out.append(spec(name, order=size))
            size *= 2
    out += [spec("symmetric", n=n) for n in (3, 4, 5) if factorial(n) <= max_order]
    for p in (3, 5):
        if p**3 <= max_order:
            out += [spec("extraspecial", p=p, variant="plus"), spec("extraspecial", p=p, variant="minus")]
    if 64 <= max_order:
        out.append(spec("heisenberg", p=2, n=2))
        out.append(spec("unitriangular", m=2, dim=4))
        out.append(spec("unitriangular", m=4, dim=3))
    return out


# Small factors used for the direct-product part of the catalog.
_FACTORS = [("cyclic", {"n": n}) for n in (2, 3, 4, 5)] + [
    ("elementary_abelian", {"p": 2, "k": 2}),
    ("symmetric", {"n": 3}),
    ("dihedral", {"n": 4}),
    ("quaternion", {"order": 8}),
    ("dihedral", {"n": 5}),
    ("extraspecial", {"p": 3, "variant": "plus"}),
    ("extraspecial", {"p": 3, "variant": "minus"}),
    ("dihedral", {"n": 6}),
    ("dihedral", {"n": 8}),
    ("quaternion", {"order": 16}),
    ("semidihedral", {"order": 16}),
    ("modular", {"order": 16}),
]


def catalog(max_order: int = 128) -> list[ConstructionSpec]:
    """Deterministic oracle corpus: the listed families up to ``max_order`` plus
    direct products of pairs of small factors, at least one of them nonabelian."""
    out = _base_catalog(max_order)
    factors = [spec(n, **p) for n, p in _FACTORS]
    abelian = {"cyclic", "elementary_abelian"}
    for a, b in combinations_with_replacement(factors, 2):
        if a.order * b.order <= max_order and not (a.name in abelian and b.name in abelian):
            out.append(spec("direct_product", a, b))
    return out


def example_specs() -> list[ConstructionSpec]:
    """The worked examples, including those beyond the oracle range."""
    out = []
    for p in (2, 3, 5):
        out += [spec("extraspecial", p=p, variant="plus"), spec("extraspecial", p=p, variant="minus")]
    out += [spec("extraspecial", p=7, variant="plus")]
    for p, n in ((2, 1), (3, 1), (2, 2), (5, 1), (2, 3), (3, 2)):
        out.append(spec("heisenberg", p=p, n=n))
    out.append(spec("width2_abelian", p=2))
    out.append(spec("width2_abelian", p=3))
    for p in (2, 3, 5):
        out += [spec("bigex", p=p), spec("bigex2", p=p)]
    return out
