"""Dense exact linear algebra over a prime field F_p.

Matrices are numpy int64 arrays with entries reduced to [0, p).  Vectors are
columns when a matrix acts on them; subspaces are stored by an RREF basis whose
rows span the subspace, which makes subspace equality a plain array comparison.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InputError

DEFAULT_P = 101
# keeps n * p^2 well inside int64 for the matrix sizes used here
MAX_P = 1 << 24


def is_prime(p):
    p = int(p)
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    p: int = DEFAULT_P

    def __post_init__(self):
        if not is_prime(self.p):
            raise InputError(f"modulus {self.p} is not prime")
        if self.p >= MAX_P:
            raise InputError(f"modulus {self.p} too large (limit {MAX_P})")

    def inv(self, a):
        a = int(a) % self.p
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, self.p - 2, self.p)


def asmat(m, p, shape=None):
    """Return m as a reduced int64 array (copy)."""
    a = np.array(m, dtype=np.int64)
    if shape is not None:
        a = a.reshape(shape)
    return a % p


def mul(a, b, p):
    return (np.asarray(a, dtype=np.int64) @ np.asarray(b, dtype=np.int64)) % p


def identity(n):
    return np.eye(n, dtype=np.int64)


def zeros(r, c):
    return np.zeros((r, c), dtype=np.int64)


def rref(m, p):
    """Reduced row echelon form.  Returns (R, pivot columns); R keeps all rows."""
    a = asmat(m, p)
    if a.ndim != 2:
        raise InputError("rref expects a 2-d matrix")
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r, c:] = (a[r, c:] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            a[hit, c:] = (a[hit, c:] - np.outer(col[hit], a[r, c:])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rref_rank(m, p):
    """(RREF of m, rank)."""
    r, piv = rref(m, p)
    return r, len(piv)


def rank(m, p):
    m = np.asarray(m)
    if m.size == 0:
        return 0
    return len(rref(m, p)[1])


@dataclass(frozen=True, eq=False)
class Subspace:
    """Subspace of F_p^n given by an RREF row basis."""

    ambient_dim: int
    basis: np.ndarray
    p: int = DEFAULT_P
    pivots: tuple = field(default=())

    @property
    def dim(self):
        return self.basis.shape[0]

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.p == other.p
            and self.basis.shape == other.basis.shape
            and bool(np.all(self.basis == other.basis))
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.p, self.basis.tobytes()))

    def coords(self, v):
        """Coordinates of v (vector or columns) in the basis; assumes v lies in the span."""
        v = np.asarray(v, dtype=np.int64)
        return v[list(self.pivots)] % self.p

    def contains(self, v):
        v = np.asarray(v, dtype=np.int64) % self.p
        if v.ndim == 1:
            v = v[:, None]
        if self.dim == 0:
            return not v.any()
        back = self.basis.T @ self.coords(v)
        return not ((v - back) % self.p).any()

    def contains_space(self, other):
        return other.dim == 0 or self.contains(other.basis.T)

    def complement_projection(self):
        """Projection F_p^n -> F_p^n / self in coordinates of the non-pivot columns.

        Returns (pi, section): pi is q x n, section is n x q with pi @ section = I.
        """
        n = self.ambient_dim
        piv = list(self.pivots)
        free = [c for c in range(n) if c not in set(piv)]
        q = len(free)
        pi = zeros(q, n)
        sec = zeros(n, q)
        for j, c in enumerate(free):
            pi[j, c] = 1
            sec[c, j] = 1
        if piv:
            pi[:, piv] = (-self.basis[:, free].T) % self.p
        return pi, sec


def span(vectors, n, p):
    """Subspace spanned by the rows of `vectors` (an iterable or k x n array)."""
    v = np.asarray(vectors, dtype=np.int64).reshape(-1, n) if n else np.zeros((0, 0), np.int64)
    if v.shape[0] == 0 or n == 0:
        return Subspace(n, zeros(0, n), p, ())
    r, piv = rref(v, p)
    return Subspace(n, r[: len(piv)].copy(), p, tuple(piv))


def column_span(m, p):
    m = np.asarray(m, dtype=np.int64)
    return span(m.T, m.shape[0], p)


def sum_spaces(spaces, n, p):
    rows = [s.basis for s in spaces if s.dim]
    if not rows:
        return span(zeros(0, n), n, p)
    return span(np.vstack(rows), n, p)


def kernel_basis(m, p):
    """Subspace {v : m v = 0}."""
    m = np.asarray(m, dtype=np.int64)
    rows, cols = m.shape
    if rows == 0:
        return span(identity(cols), cols, p)
    r, piv = rref(m, p)
    pset = set(piv)
    free = [c for c in range(cols) if c not in pset]
    k = zeros(len(free), cols)
    for j, c in enumerate(free):
        k[j, c] = 1
        for i, pc in enumerate(piv):
            k[j, pc] = (-r[i, c]) % p
    return span(k, cols, p)


def kronecker(a, b, p):
    """Kronecker product with a-index major blocks."""
    return np.kron(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)) % p


def inverse(m, p):
    m = asmat(m, p)
    n = m.shape[0]
    if m.shape != (n, n):
        raise InputError("inverse of a non-square matrix")
    r, piv = rref(np.hstack([m, identity(n)]), p)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise ZeroDivisionError("matrix is singular")
    return r[:, n:].copy()


def is_invertible(m, p):
    m = np.asarray(m)
    return m.shape[0] == m.shape[1] and rank(m, p) == m.shape[0]


def det(m, p):
    """Determinant mod p by elimination."""
    a = asmat(m, p)
    n = a.shape[0]
    d = 1
    for c in range(n):
        nz = np.flatnonzero(a[c:, c])
        if nz.size == 0:
            return 0
        k = c + int(nz[0])
        if k != c:
            a[[c, k]] = a[[k, c]]
            d = -d
        piv = int(a[c, c])
        d = (d * piv) % p
        inv = pow(piv, p - 2, p)
        below = a[c + 1:, c]
        if below.any():
            f = (below * inv) % p
            a[c + 1:, c:] = (a[c + 1:, c:] - np.outer(f, a[c, c:])) % p
    return d % p


def solve(a, b, p):
    """Some x with a x = b (b may have several columns); None when inconsistent."""
    a = asmat(a, p)
    b = asmat(b, p)
    vec = b.ndim == 1
    if vec:
        b = b[:, None]
    rows, cols = a.shape
    r, piv = rref(np.hstack([a, b]), p)
    if any(c >= cols for c in piv):
        return None
    x = zeros(cols, b.shape[1])
    for i, c in enumerate(piv):
        x[c] = r[i, cols:]
    return x[:, 0] if vec else x
