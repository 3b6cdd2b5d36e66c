"""Independent reference computations used to freeze [DERIVED] values.

Nothing here calls the resolution, Hom or tensor code of the package: linear algebra
mod p is redone from scratch, resolutions are deliberately non-minimal (one redundant
projective summand per degree), Hom is solved from the commutation equations and
tensor products are quotients by the balancing relations.
"""
from __future__ import annotations

import itertools

import numpy as np


# --- linear algebra mod p ----------------------------------------------------------------

def row_reduce(m, p):
    m = np.array(m, dtype=np.int64) % p
    rows, cols = m.shape if m.ndim == 2 else (0, 0)
    piv = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        m[[r, k]] = m[[k, r]]
        m[r] = m[r] * pow(int(m[r, c]), p - 2, p) % p
        for i in range(rows):
            if i != r and m[i, c]:
                m[i] = (m[i] - m[i, c] * m[r]) % p
        piv.append(c)
        r += 1
    return m[:r], piv


def rank(m, p):
    m = np.asarray(m)
    if m.size == 0:
        return 0
    return len(row_reduce(m, p)[1])


def nullspace(m, p):
    """Columns spanning {v : m v = 0}."""
    m = np.asarray(m, dtype=np.int64)
    n = m.shape[1]
    if m.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    R, piv = row_reduce(m, p)
    free = [c for c in range(n) if c not in piv]
    out = np.zeros((n, len(free)), dtype=np.int64)
    for k, f in enumerate(free):
        out[f, k] = 1
        for i, c in enumerate(piv):
            out[c, k] = (-R[i, f]) % p
    return out


def colspace(m, p):
    """Columns forming a basis of the column space of m."""
    m = np.asarray(m, dtype=np.int64)
    if m.size == 0:
        return np.zeros((m.shape[0], 0), dtype=np.int64)
    R, piv = row_reduce(m.T, p)
    return R.T.copy()


def solve_full_rank(B, Y, p):
    """X with B X = Y for B of full column rank."""
    aug = np.hstack([B, Y]) % p
    R, piv = row_reduce(aug, p)
    k = B.shape[1]
    assert piv[:k] == list(range(k))
    return R[:k, k:] % p


# --- modules as plain matrices --------------------------------------------------------

class Mod:
    """Right module over an algebra with structure constants C: x . b_i = A[i] x."""

    def __init__(self, C, A, p):
        self.C, self.A, self.p = C, np.asarray(A, dtype=np.int64) % p, p

    @property
    def dim(self):
        return self.A.shape[1]

    def act(self, lam):
        return np.tensordot(np.asarray(lam, dtype=np.int64), self.A, 1) % self.p


def right_mult_mats(C, p):
    # lambda * b_i = R[i] lambda, R[i][k, j] = C[j, i, k]
    return np.transpose(C, (1, 2, 0)) % p


def submodule(mod, B):
    """Restriction of mod to the invariant subspace spanned by the columns of B."""
    p = mod.p
    A = np.array([solve_full_rank(B, Ai @ B % p, p) for Ai in mod.A]).reshape(len(mod.A), B.shape[1], B.shape[1])
    return Mod(mod.C, A, p)


def generated(mod, vecs):
    p = mod.p
    if not vecs:
        return np.zeros((mod.dim, 0), dtype=np.int64)
    cols = [Ai @ v % p for v in vecs for Ai in mod.A]
    return colspace(np.array(cols).T, p)


class Projective:
    """P = e_{t_1} Lambda + ... + e_{t_g} Lambda inside Lambda^g."""

    def __init__(self, C, idem, ts, p):
        self.ts = list(ts)
        d = C.shape[0]
        R = right_mult_mats(C, p)
        blocks = []
        for t in ts:
            # e_t Lambda = span of e_t * b_j
            e = idem[t]
            cols = np.array([np.tensordot(e, C[:, j, :], 1) % p for j in range(d)]).T
            blocks.append(colspace(cols, p))
        self.blocks = blocks
        tot = sum(b.shape[1] for b in blocks)
        B = np.zeros((d * len(ts), tot), dtype=np.int64)
        c = 0
        for j, b in enumerate(blocks):
            B[j * d:(j + 1) * d, c:c + b.shape[1]] = b
            c += b.shape[1]
        self.B = B  # basis of P in Lambda^g
        ambient = np.array([np.kron(np.eye(len(ts), dtype=np.int64), Ri) for Ri in R]).reshape(d, d * len(ts), d * len(ts)) \
            if ts else np.zeros((d, 0, 0), dtype=np.int64)
        self.module = submodule(Mod(C, ambient, p), B) if ts else Mod(C, np.zeros((d, 0, 0)), p)


def oracle_resolution(x, idem, length, redundant=True):
    """Maps D_1, ..., D_length between non-minimal projective terms P_0, P_1, ... and the
    augmentation P_0 -> x.  Returns (terms, maps) with maps[0] the augmentation."""
    p, C = x.p, x.C
    terms, maps = [], []
    cur = x
    inc = np.eye(x.dim, dtype=np.int64)  # current syzygy inside the previous term
    for k in range(length + 1):
        gens = []
        span = np.zeros((cur.dim, 0), dtype=np.int64)
        for t in range(len(idem)):
            img = colspace(cur.act(idem[t]), p)
            for v in img.T:
                if rank(np.hstack([span, v[:, None]]), p) > span.shape[1]:
                    gens.append((t, v))
                    span = generated(cur, [g for _, g in gens])
        if redundant and gens:
            gens.append(gens[0])
        P = Projective(C, idem, [t for t, _ in gens], p)
        d = C.shape[0]
        # element (lambda_j) of P goes to sum_j v_j . lambda_j
        amb = np.zeros((cur.dim, d * len(gens)), dtype=np.int64)
        for j, (_, v) in enumerate(gens):
            for i in range(d):
                amb[:, j * d + i] = cur.A[i] @ v % p
        cover = amb @ P.B % p if gens else np.zeros((cur.dim, 0), dtype=np.int64)
        terms.append(P.module)
        maps.append(inc @ cover % p)
        K = nullspace(cover, p)
        if P.module.dim == 0:
            break
        cur = submodule(P.module, K) if K.shape[1] else Mod(C, np.zeros((d, 0, 0)), p)
        inc = K
    return terms, maps


# --- Hom, Ext, Tor ------------------------------------------------------------------------

def hom_basis(x, y):
    """Basis of Hom(x, y) as (dim y x dim x) matrices from T A^x_i = A^y_i T."""
    p = x.p
    n, m = x.dim, y.dim
    if n == 0 or m == 0:
        return []
    eqs = [np.kron(Ax.T, np.eye(m, dtype=np.int64)) - np.kron(np.eye(n, dtype=np.int64), Ay)
           for Ax, Ay in zip(x.A, y.A)]
    N = nullspace(np.vstack(eqs) % p, p)
    return [N[:, k].reshape(n, m).T for k in range(N.shape[1])]


def ext_dims(x, y, idem, K):
    p = x.p
    terms, maps = oracle_resolution(x, idem, K + 1)
    homs = [hom_basis(P, y) for P in terms]

    def delta_rank(k):
        # Hom(P_{k-1}, y) -> Hom(P_k, y)
        if k == 0 or k >= len(terms) or not homs[k - 1]:
            return 0
        imgs = np.array([(T @ maps[k] % p).reshape(-1) for T in homs[k - 1]]).T
        return rank(imgs, p)

    out = []
    for k in range(K + 1):
        h = len(homs[k]) if k < len(terms) else 0
        out.append(h - delta_rank(k) - delta_rank(k + 1))
    return out


def tor_dims(x, left_mats, idem, K):
    """Tor_k(x, N) for a left module N given by b_i . n = L[i] n."""
    p = x.p
    L = np.asarray(left_mats, dtype=np.int64) % p
    nN = L.shape[1]
    terms, maps = oracle_resolution(x, idem, K + 1)
    I = np.eye(nN, dtype=np.int64)
    rels = []
    for P in terms:
        if P.dim == 0 or nN == 0:
            rels.append(np.zeros((P.dim * nN, 0), dtype=np.int64))
            continue
        gens = [np.kron(Ai, I) - np.kron(np.eye(P.dim, dtype=np.int64), Li) for Ai, Li in zip(P.A, L)]
        rels.append(colspace(np.hstack(gens) % p, p))

    def cdim(k):
        return terms[k].dim * nN - rels[k].shape[1] if k < len(terms) else 0

    def drank(k):
        if k == 0 or k >= len(terms) or cdim(k) == 0:
            return 0
        D = np.kron(maps[k], I) % p
        W = rels[k - 1]
        return rank(np.hstack([D, W]), p) - W.shape[1]

    return [cdim(k) - drank(k) - drank(k + 1) for k in range(K + 1)]


def injective_dimension_of_regular(alg, K):
    """id Lambda_Lambda = max{i : Ext^i(S, Lambda) != 0 over simples S}, scanning i <= K."""
    p, C, idem = alg.p, alg.C, alg.idempotents
    reg = Mod(C, right_mult_mats(C, p), p)
    best = 0
    for t in range(len(idem)):
        dims = ext_dims(simple(alg, t), reg, idem, K)
        best = max([best] + [i for i in range(1, K + 1) if dims[i]])
    return best


def simple(alg, t):
    """The simple module at vertex t: b_i acts by its e_t-coefficient modulo the radical."""
    p, d = alg.p, alg.dim
    basis = np.vstack([alg.idempotents, alg.rad.basis]).T % p  # columns e_1..e_r, rad
    coeffs = solve_full_rank(basis, np.eye(d, dtype=np.int64), p)
    return Mod(alg.C, coeffs[t].reshape(d, 1, 1), p)


def to_mod(x):
    """Plain-matrix copy of a package module."""
    return Mod(x.algebra.C, x.action, x.p)


# --- enumeration ------------------------------------------------------------------------------

def zero_one_representations(alg, max_dim, representation):
    """All quiver representations with total dimension 1..max_dim and arrow matrices with
    entries in {0, 1} satisfying the relations (via the given constructor)."""
    arrows = alg.arrows
    out = []
    for dims in itertools.product(range(max_dim + 1), repeat=alg.r):
        if not 0 < sum(dims) <= max_dim:
            continue
        shapes = [(dims[t], dims[s]) for (s, t, _) in arrows]
        sizes = [a * b for a, b in shapes]
        for bits in itertools.product((0, 1), repeat=sum(sizes)):
            mats, o = [], 0
            for (a, b), sz in zip(shapes, sizes):
                mats.append(np.array(bits[o:o + sz], dtype=np.int64).reshape(a, b))
                o += sz
            x = representation(alg, list(dims), mats)
            if x is not None:
                out.append(x)
    return out
