"""Linear algebra over GF(p) and small extension fields GF(p^n).

Matrices are int64 numpy arrays with entries reduced into ``range(p)``.
Vectors of GF(p)^d are numbered little-endian: ``code(v) = sum(v[i] * p**i)``;
the same numbering is used for the u-part of class-2 group elements.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import InvalidPrime


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def check_prime(p: int) -> int:
    if not isinstance(p, (int, np.integer)) or not is_prime(int(p)):
        raise InvalidPrime(f"{p!r} is not a prime")
    return int(p)


def prime_power_exponent(n: int, p: int) -> int | None:
    """Return k with p**k == n, or None."""
    if n < 1:
        return None
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k if n == 1 else None


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def rref(a, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form mod p, zero rows dropped."""
    m = np.array(a, dtype=np.int64) % p
    if m.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        m[r] = (m[r] * pow(int(m[r, c]), -1, p)) % p
        col = m[:, c].copy()
        col[r] = 0
        m = (m - np.outer(col, m[r])) % p
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(a, p: int) -> int:
    a = np.asarray(a)
    if a.size == 0:
        return 0
    return len(rref(a, p)[1])


def nullspace(a, p: int, ncols: int | None = None) -> np.ndarray:
    """Rows of the result form an echelon-style basis of {x : a @ x = 0}."""
    a = np.asarray(a, dtype=np.int64)
    if a.size == 0:
        n = a.shape[1] if a.ndim == 2 and a.shape[1] else ncols
        return np.eye(n, dtype=np.int64)
    r, piv = rref(a, p)
    n = a.shape[1]
    free = [j for j in range(n) if j not in piv]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for row, pc in enumerate(piv):
            basis[k, pc] = (-r[row, f]) % p
    return rref(basis, p)[0] if len(free) else basis


def span_basis(vectors, p: int, d: int) -> np.ndarray:
    vectors = np.asarray(vectors, dtype=np.int64).reshape(-1, d)
    if vectors.shape[0] == 0:
        return np.zeros((0, d), dtype=np.int64)
    return rref(vectors, p)[0]


@lru_cache(maxsize=64)
def _all_vectors(p: int, d: int) -> np.ndarray:
    codes = np.arange(p**d, dtype=np.int64)
    out = (codes[:, None] // (p ** np.arange(d, dtype=np.int64))[None, :]) % p
    out.setflags(write=False)
    return out


def all_vectors(p: int, d: int) -> np.ndarray:
    """All of GF(p)^d, row ``i`` being the vector with code ``i``."""
    return _all_vectors(p, d)


def encode(vectors, p: int) -> np.ndarray:
    vectors = np.asarray(vectors, dtype=np.int64)
    d = vectors.shape[-1]
    return vectors @ (p ** np.arange(d, dtype=np.int64))


def decode(codes, p: int, d: int) -> np.ndarray:
    codes = np.asarray(codes, dtype=np.int64)
    return (codes[..., None] // (p ** np.arange(d, dtype=np.int64))) % p


# Conway polynomials for p**n <= 64, coefficients low degree first, monic.
CONWAY = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 1, 1, 0, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (5, 2): (2, 4, 1),
    (7, 2): (3, 6, 1),
}


def _poly_mod(a: list[int], f: tuple[int, ...], p: int) -> list[int]:
    """Remainder of a by the monic polynomial f (low degree first)."""
    a = list(a)
    m = len(f) - 1
    for k in range(len(a) - 1, m - 1, -1):
        c = a[k] % p
        if c:
            for j in range(m + 1):
                a[k - m + j] = (a[k - m + j] - c * f[j]) % p
    return [x % p for x in a[:m]]


def _monic(p: int, deg: int):
    for v in all_vectors(p, deg):
        yield tuple(int(x) for x in v) + (1,)


def first_irreducible(p: int, n: int) -> tuple[int, ...]:
    """First monic irreducible of degree n in lexicographic order, by trial division."""
    for f in _monic(p, n):
        if f[0] == 0:
            continue
        if all(any(_poly_mod(f, g, p)) for d in range(1, n // 2 + 1) for g in _monic(p, d)):
            return f
    raise ValueError(f"no irreducible polynomial of degree {n} over GF({p})")


class GFq:
    """GF(p^n) as GF(p)[w]/(f), elements are coordinate vectors of length n."""

    def __init__(self, p: int, n: int):
        self.p = check_prime(p)
        if n < 1:
            raise ValueError("extension degree must be positive")
        self.n = n
        if n == 1:
            self.poly = (0, 1)
        elif (p, n) in CONWAY:
            self.poly = CONWAY[(p, n)]
        else:
            self.poly = first_irreducible(p, n)

    def mul(self, a, b) -> tuple[int, ...]:
        p, n = self.p, self.n
        prod = [0] * (2 * n - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] = (prod[i + j] + x * y) % p
        for k in range(2 * n - 2, n - 1, -1):
            c = prod[k]
            if c:
                prod[k] = 0
                for j in range(n):
                    prod[k - n + j] = (prod[k - n + j] - c * self.poly[j]) % p
        return tuple(prod[:n])

    def basis(self) -> list[tuple[int, ...]]:
        return [tuple(int(i == k) for i in range(self.n)) for k in range(self.n)]

    def mult_matrix(self, a) -> np.ndarray:
        """Matrix of x -> a*x acting on coordinate column vectors."""
        cols = [self.mul(a, e) for e in self.basis()]
        return np.array(cols, dtype=np.int64).T % self.p

    def elements(self) -> list[tuple[int, ...]]:
        return [tuple(int(x) for x in v) for v in all_vectors(self.p, self.n)]
