"""Minimal projective resolutions, homological dimensions, Ext and Tor.

A projective term P = e_{t_1} Lambda + ... + e_{t_m} Lambda is recorded by its vertex
tuple.  The differential P_k -> P_{k-1} is stored both as a vector-space matrix and as
an m_{k-1} x m_k matrix of algebra elements lam[j, i] in e_{t_j} Lambda e_{t_i}, with
d(g_i) = sum_j g_j lam[j, i] on the generators g_i = e_{t_i}.  Hom(P, Y) and P (x) N
then reduce to sums of Y e_t and e_t N.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import exactlinalg as la
from . import modules as md
from .errors import InputError


def default_cutoff(alg):
    return 2 * alg.dim + 4


# --- dimension results ----------------------------------------------------------

@dataclass(frozen=True)
class DimResult:
    kind: str  # "Finite" | "Infinite" | "Unknown"
    value: int | None = None
    offset: int | None = None
    period: int | None = None
    cutoff: int | None = None

    @property
    def finite(self):
        return self.kind == "Finite"

    @property
    def infinite(self):
        return self.kind == "Infinite"

    @property
    def unknown(self):
        return self.kind == "Unknown"

    def to_json(self):
        if self.kind == "Finite":
            return {"kind": "Finite", "value": self.value}
        if self.kind == "Infinite":
            return {"kind": "Infinite", "offset": self.offset, "period": self.period}
        return {"kind": "Unknown", "cutoff": self.cutoff}

    def __str__(self):
        if self.kind == "Finite":
            return f"Finite({self.value})"
        if self.kind == "Infinite":
            return f"Infinite(offset {self.offset}, period {self.period})"
        return f"Unknown(cutoff {self.cutoff})"


def Finite(d):
    return DimResult("Finite", int(d))


def dim_max(results):
    """Maximum of DimResults: Infinite dominates, then Unknown, else the largest value."""
    results = list(results)
    if not results:
        return Finite(0)
    for r in results:
        if r.infinite:
            return r
    for r in results:
        if r.unknown:
            return r
    return Finite(max(r.value for r in results))


# --- projective terms ------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ProjTerm:
    algebra: object
    ts: tuple
    module: md.RightModule
    offsets: tuple
    bases: tuple  # per summand: rows = basis of e_t Lambda in Lambda coordinates
    pivots: tuple

    @property
    def dim(self):
        return self.module.dim

    def elements(self, v):
        """Split a vector of P into algebra elements, one per summand."""
        v = np.asarray(v, dtype=np.int64)
        p = self.algebra.p
        return [v[self.offsets[j]:self.offsets[j + 1]] @ self.bases[j] % p for j in range(len(self.ts))]

    def from_elements(self, elems):
        out = np.zeros(self.dim, dtype=np.int64)
        for j, lam in enumerate(elems):
            out[self.offsets[j]:self.offsets[j + 1]] = np.asarray(lam)[list(self.pivots[j])]
        return out


@lru_cache(maxsize=None)
def proj_term(alg, ts):
    ts = tuple(int(t) for t in ts)
    mods, bases, pivs, offs = [], [], [], [0]
    for t in ts:
        m, U = md.projective_summand(alg, t)
        mods.append(m)
        bases.append(U.basis)
        pivs.append(U.pivots)
        offs.append(offs[-1] + U.dim)
    module = md.direct_sum(*mods) if mods else md.zero_module(alg)
    return ProjTerm(alg, ts, module, tuple(offs), tuple(bases), tuple(pivs))


def projective_cover(x):
    """(P, cover matrix, generators): P = sum e_t Lambda over a basis of the top of x,
    generator j is sent to the vector generators[j] of x e_{t_j}."""
    alg, p = x.algebra, x.p
    W = md.radical_submodule(x)
    cur = W.basis
    rank = W.dim
    ts, gens = [], []
    for t, e in enumerate(alg.idempotents):
        for v in x.act(e).T:
            if not v.any():
                continue
            test = np.vstack([cur, v[None, :]])
            if la.rank(test, p) > rank:
                cur = test
                rank += 1
                ts.append(t)
                gens.append(v.copy())
    P = proj_term(alg, tuple(ts))
    cover = la.zeros(x.dim, P.dim)
    for j, (t, g) in enumerate(zip(ts, gens)):
        for c, u in enumerate(P.bases[j]):
            cover[:, P.offsets[j] + c] = x.act(u) @ g % p
    return P, cover, gens


# --- minimal resolutions ------------------------------------------------------------

@dataclass(eq=False)
class MinimalResolution:
    module: md.RightModule
    terms: list = field(default_factory=list)  # ProjTerm per degree
    maps: list = field(default_factory=list)  # maps[k]: P_k -> P_{k-1} (k >= 1); maps[0]: P_0 -> X
    lam: list = field(default_factory=list)  # lam[k] (k >= 1): (m_{k-1}, m_k, d) algebra elements
    syzygies: list = field(default_factory=list)  # syzygies[k] = (Omega^k, inclusion into P_{k-1}); k = 0 is X
    status: tuple = ()  # ("Finished", L) | ("Periodic", o, per) | ("Truncated", cutoff)
    witness: np.ndarray | None = None
    unknown_iso: bool = False

    @property
    def term_vertices(self):
        return [t.ts for t in self.terms]

    def term(self, k):
        if k < len(self.terms):
            return self.terms[k]
        if self.status and self.status[0] == "Finished":
            return proj_term(self.module.algebra, ())
        raise IndexError(f"resolution computed only to degree {len(self.terms) - 1}")

    def lam_at(self, k):
        """Algebra-element matrix of d_k (k >= 1)."""
        if k < len(self.lam) and self.lam[k] is not None:
            return self.lam[k]
        a, b = self.term(k - 1), self.term(k)
        return np.zeros((len(a.ts), len(b.ts), self.module.algebra.dim), dtype=np.int64)

    def known_to(self):
        """Largest degree whose term is known (inf when finished)."""
        if self.status and self.status[0] == "Finished":
            return float("inf")
        return len(self.terms) - 1

    def dimension(self):
        kind = self.status[0]
        if kind == "Finished":
            return Finite(self.status[1])
        if kind == "Periodic":
            return DimResult("Infinite", offset=self.status[1], period=self.status[2])
        return DimResult("Unknown", cutoff=self.status[1])


def minimal_resolution(x, cutoff=None, length=0, seed=0):
    """Minimal projective resolution of x.  Stops when a syzygy vanishes (Finished),
    when a syzygy is isomorphic to an earlier one (Periodic), or after `cutoff`
    terms (Truncated); terms are computed at least up to degree `length`."""
    alg, p = x.algebra, x.p
    if cutoff is None:
        cutoff = default_cutoff(alg)
    res = MinimalResolution(x)
    res.syzygies.append((x, None))
    res.lam.append(None)
    cur = x
    k = 0
    if x.dim == 0:
        res.status = ("Finished", 0)
        return res
    while True:
        P, cover, gens = projective_cover(cur)
        res.terms.append(P)
        if k == 0:
            res.maps.append(cover)
        else:
            inc = res.syzygies[k][1]
            res.maps.append(inc @ cover % p)
            prev = res.terms[k - 1]
            lam = np.zeros((len(prev.ts), len(P.ts), alg.dim), dtype=np.int64)
            for i, g in enumerate(gens):
                for j, el in enumerate(prev.elements(inc @ g % p)):
                    lam[j, i] = el
            res.lam.append(lam)
        K = la.kernel_basis(cover, p)
        omega, inc = md.submodule(P.module, K)
        res.syzygies.append((omega, inc))
        k += 1
        if omega.dim == 0:
            res.status = ("Finished", k - 1)
            return res
        if not res.status:
            for j in range(k):
                prev_mod = res.syzygies[j][0]
                iso = md.iso_test(prev_mod, omega, seed=seed)
                if iso.status == "Iso":
                    res.status = ("Periodic", j, k - j)
                    res.witness = iso.witness
                    break
                if iso.status == "Unknown":
                    res.unknown_iso = True
            if not res.status and k > cutoff:
                res.status = ("Truncated", cutoff)
        if res.status and k > length:
            return res
        cur = omega


_RES_CACHE_KEY = "_resolution_cache"


def resolution(x, cutoff=None, length=0, seed=0):
    """Memoized minimal_resolution (cached on the module object)."""
    if cutoff is None:
        cutoff = default_cutoff(x.algebra)
    cache = x.__dict__.setdefault(_RES_CACHE_KEY, {})
    key = (cutoff, seed)
    res = cache.get(key)
    if res is None or res.known_to() < length:
        res = minimal_resolution(x, cutoff, length, seed)
        cache[key] = res
    return res


def proj_dimension(x, cutoff=None, seed=0):
    return resolution(x, cutoff, seed=seed).dimension()


def inj_dimension(x, cutoff=None, seed=0):
    """id of x via pd of the dual over the opposite algebra."""
    return proj_dimension(md.dual(x), cutoff, seed)


def flat_dimension(x, cutoff=None, seed=0):
    # finitely generated over a finite-dimensional algebra: fd = pd
    return proj_dimension(x, cutoff, seed)


def global_dimension(alg, cutoff=None):
    return dim_max(proj_dimension(md.simple_module(alg, t), cutoff) for t in range(alg.r))


def is_projective(x):
    """pd x = 0, decided by a single projective cover."""
    if x.dim == 0:
        return True
    P, cover, _ = projective_cover(x)
    return P.dim == x.dim


def check_resolution(res):
    """List of problems with minimality or exactness (empty when fine)."""
    out = []
    p = res.module.p
    for k in range(1, len(res.terms)):
        d_k = res.maps[k]
        d_prev = res.maps[k - 1]
        if (d_prev @ d_k % p).any():
            out.append(f"d{k - 1} d{k} != 0")
        R = md.radical_submodule(res.terms[k - 1].module)
        if d_k.size and not R.contains(d_k):
            out.append(f"image of d{k} not in radical")
        rk_prev = la.rank(d_prev, p)
        ker_prev = res.terms[k - 1].dim - rk_prev
        if la.rank(d_k, p) != ker_prev:
            out.append(f"not exact at degree {k - 1}")
    if res.terms and la.rank(res.maps[0], p) != res.module.dim:
        out.append("augmentation not surjective")
    return out


# --- Ext ------------------------------------------------------------------------------

def _weight_blocks(y):
    """Per vertex t: (B_t, C_t) with columns of B_t a basis of y e_t and C_t the
    coordinate map onto it."""
    W, Winv, offs = y.weights
    return [(W[:, offs[t]:offs[t + 1]], Winv[offs[t]:offs[t + 1], :]) for t in range(y.algebra.r)]


def _cochain_map(res, k, y, blocks):
    """Matrix of Hom(P_{k-1}, y) -> Hom(P_k, y), phi -> phi o d_k."""
    p = y.p
    A, B = res.term(k - 1), res.term(k)
    rows = [blocks[t][0].shape[1] for t in B.ts]
    cols = [blocks[t][0].shape[1] for t in A.ts]
    M = la.zeros(sum(rows), sum(cols))
    lam = res.lam_at(k)
    ro = np.concatenate([[0], np.cumsum(rows)]).astype(int)
    co = np.concatenate([[0], np.cumsum(cols)]).astype(int)
    for i, ti in enumerate(B.ts):
        for j, tj in enumerate(A.ts):
            el = lam[j, i]
            if not el.any():
                continue
            M[ro[i]:ro[i + 1], co[j]:co[j + 1]] = blocks[ti][1] @ (y.act(el) @ blocks[tj][0] % p) % p
    return M


def ext_dims(x, y, K, cutoff=None, seed=0):
    """[dim Ext^i(x, y) for i in 0..K]; entries None where the resolution is unknown."""
    if not md.same_algebra(x.algebra, y.algebra):
        raise InputError("Ext over different algebras")
    res = resolution(x, cutoff, length=K + 1, seed=seed)
    p = y.p
    blocks = _weight_blocks(y)
    known = res.known_to()

    def cdim(k):
        return sum(blocks[t][0].shape[1] for t in res.term(k).ts)

    ranks = {}

    def rk(k):
        if k not in ranks:
            ranks[k] = 0 if k == 0 else la.rank(_cochain_map(res, k, y, blocks), p)
        return ranks[k]

    out = []
    for i in range(K + 1):
        if i + 1 > known:
            out.append(None)
            continue
        out.append(cdim(i) - rk(i + 1) - rk(i))
    return out


def ext_dim(x, y, i, cutoff=None):
    return ext_dims(x, y, i, cutoff)[i]


# --- Tor ------------------------------------------------------------------------------

def _left_blocks(n):
    """Per vertex t: (B_t, C_t) for e_t N inside a left module (bimodule) N."""
    return _weight_blocks(n.as_left)


def _chain_map(res, k, n, blocks):
    """Matrix of P_k (x) N -> P_{k-1} (x) N."""
    p = n.p
    A, B = res.term(k - 1), res.term(k)
    rows = [blocks[t][0].shape[1] for t in A.ts]
    cols = [blocks[t][0].shape[1] for t in B.ts]
    M = la.zeros(sum(rows), sum(cols))
    lam = res.lam_at(k)
    ro = np.concatenate([[0], np.cumsum(rows)]).astype(int)
    co = np.concatenate([[0], np.cumsum(cols)]).astype(int)
    for i, ti in enumerate(B.ts):
        for j, tj in enumerate(A.ts):
            el = lam[j, i]
            if not el.any():
                continue
            M[ro[j]:ro[j + 1], co[i]:co[i + 1]] = blocks[tj][1] @ (n.act_left(el) @ blocks[ti][0] % p) % p
    return M


def tor_dims(x, n, K, cutoff=None, seed=0):
    """[dim Tor_i(x, n) for i in 0..K] for a left module n (a Bimodule whose left algebra
    is x's algebra)."""
    if not md.same_algebra(x.algebra, n.left_algebra):
        raise InputError("Tor over different algebras")
    res = resolution(x, cutoff, length=K + 1, seed=seed)
    p = n.p
    blocks = _left_blocks(n)
    known = res.known_to()

    def cdim(k):
        return sum(blocks[t][0].shape[1] for t in res.term(k).ts)

    ranks = {}

    def rk(k):
        if k not in ranks:
            ranks[k] = 0 if k == 0 else la.rank(_chain_map(res, k, n, blocks), p)
        return ranks[k]

    out = []
    for i in range(K + 1):
        if i + 1 > known:
            out.append(None)
            continue
        out.append(cdim(i) - rk(i) - rk(i + 1))
    return out


def tor_modules(x, n, K, cutoff=None, seed=0):
    """[Tor_i(x, n) for i in 0..K] as right modules over n's right algebra (None where
    unknown)."""
    res = resolution(x, cutoff, length=K + 1, seed=seed)
    p = n.p
    blocks = _left_blocks(n)
    S = n.right_algebra
    known = res.known_to()

    def chain_module(k):
        P = res.term(k)
        dims = [blocks[t][0].shape[1] for t in P.ts]
        tot = sum(dims)
        act = np.zeros((S.dim, tot, tot), dtype=np.int64)
        o = 0
        for t, dt in zip(P.ts, dims):
            B, Cc = blocks[t]
            for b in range(S.dim):
                act[b, o:o + dt, o:o + dt] = Cc @ (n.right[b] @ B % p) % p
            o += dt
        return md.RightModule(S, act)

    out = []
    for i in range(K + 1):
        if i + 1 > known:
            out.append(None)
            continue
        Ci = chain_module(i)
        if i == 0:
            Z = la.span(la.identity(Ci.dim), Ci.dim, p)
        else:
            Z = la.kernel_basis(_chain_map(res, i, n, blocks), p)
        zmod, inc = md.submodule(Ci, Z)
        img = _chain_map(res, i + 1, n, blocks)
        img_in_z = Z.coords(img) if Z.dim else la.zeros(0, img.shape[1])
        B = la.column_span(img_in_z, p) if img_in_z.size else la.span(la.zeros(0, Z.dim), Z.dim, p)
        h, _ = md.quotient(zmod, B)
        out.append(h)
    return out
