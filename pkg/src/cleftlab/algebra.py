"""Finite-dimensional split basic algebras over F_p given by structure constants.

Convention: b_i * b_j = sum_k C[i, j, k] b_k.  Left and right multiplication by
b_i act on column coefficient vectors through ``left_mats[i]`` and ``right_mats[i]``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import exactlinalg as la
from .errors import FieldTooSmall, InputError, NotFiniteDimensional


@dataclass(frozen=True, eq=False)
class Algebra:
    field: la.PrimeField
    dim: int
    basis_names: tuple
    C: np.ndarray  # (d, d, d)
    unit: np.ndarray  # (d,)
    idempotents: np.ndarray  # (r, d)
    radical_basis: la.Subspace | None = None
    name: str = ""
    meta: dict = field(default_factory=dict, compare=False)

    @property
    def p(self):
        return self.field.p

    @property
    def r(self):
        return self.idempotents.shape[0]

    def __repr__(self):
        label = self.name or "Algebra"
        return f"<{label} dim={self.dim} p={self.p} vertices={self.r}>"

    # --- multiplication -------------------------------------------------
    def mul(self, x, y):
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        return np.einsum("i,j,ijk->k", x, y, self.C) % self.p

    @cached_property
    def left_mats(self):
        """L[i] with L[i] @ y = b_i * y."""
        return np.ascontiguousarray(np.transpose(self.C, (0, 2, 1))) % self.p

    @cached_property
    def right_mats(self):
        """R[i] with R[i] @ y = y * b_i."""
        return np.ascontiguousarray(np.transpose(self.C, (1, 2, 0))) % self.p

    def left_mult(self, x):
        return np.tensordot(np.asarray(x, dtype=np.int64), self.left_mats, 1) % self.p

    def right_mult(self, x):
        return np.tensordot(np.asarray(x, dtype=np.int64), self.right_mats, 1) % self.p

    def basis_vector(self, i):
        v = np.zeros(self.dim, dtype=np.int64)
        v[i] = 1
        return v

    # --- radical and generators ----------------------------------------
    @cached_property
    def rad(self):
        """The radical: supplied basis if given (validated separately), else trace-form radical."""
        if self.radical_basis is not None:
            return self.radical_basis
        return radical(self)

    @cached_property
    def rad_power_dims(self):
        """Dimensions of rad, rad^2, ... down to 0."""
        dims = []
        cur = self.rad
        seen = 0
        while cur.dim and seen <= self.dim:
            dims.append(cur.dim)
            cur = _ideal_product(self, cur, self.rad)
            seen += 1
        return dims

    @cached_property
    def arrows(self):
        """Homogeneous lifts of a basis of e_s (rad/rad^2) e_t, as (s, t, vector)."""
        p = self.p
        rad = self.rad
        rad2 = _ideal_product(self, rad, rad)
        out = []
        for s in range(self.r):
            Ls = self.left_mult(self.idempotents[s])
            for t in range(self.r):
                Rt = self.right_mult(self.idempotents[t])
                block = la.mul(la.mul(Ls, Rt, p), rad.basis.T, p) if rad.dim else la.zeros(self.dim, 0)
                cur = rad2.basis
                for v in block.T:
                    if not v.any():
                        continue
                    test = np.vstack([cur, v[None, :]])
                    if la.rank(test, p) > cur.shape[0]:
                        cur = la.span(test, self.dim, p).basis
                        out.append((s, t, v.copy()))
        return tuple(out)

    @cached_property
    def generators(self):
        """Idempotents followed by arrows; these generate the algebra."""
        gens = [e.copy() for e in self.idempotents]
        gens += [v for (_, _, v) in self.arrows]
        return np.array(gens, dtype=np.int64).reshape(len(gens), self.dim)

    @cached_property
    def opposite(self):
        op = opposite_algebra(self)
        op.__dict__["opposite"] = self
        return op

    @cached_property
    def word_basis(self):
        """(words, M): words are tuples of generator indices whose products form a
        basis; M[i] expresses b_i in that basis of words."""
        p, d = self.p, self.dim
        gens = self.generators
        words, vecs = [], []
        frontier = []
        for gi in range(len(gens)):
            frontier.append(((gi,), gens[gi]))
        cur = la.zeros(0, d)
        while frontier and len(words) < d:
            nxt = []
            for w, v in frontier:
                if not v.any():
                    continue
                test = np.vstack([cur, v[None, :]])
                if la.rank(test, p) > len(words):
                    words.append(w)
                    vecs.append(v)
                    cur = test
                    for gi in range(len(gens)):
                        nxt.append((w + (gi,), self.mul(v, gens[gi])))
            frontier = nxt
        if len(words) < d:
            raise InputError("idempotents and arrows do not generate the algebra")
        W = np.array(vecs, dtype=np.int64)  # rows = word vectors
        # b_i = sum_w M[i, w] word_w  <=>  W^T M^T = I
        M = la.solve(W.T, la.identity(d), p).T
        return tuple(words), M


def _ideal_product(a, U, V):
    """Span of products u*v, u in U, v in V."""
    if U.dim == 0 or V.dim == 0:
        return la.span(la.zeros(0, a.dim), a.dim, a.p)
    prods = np.einsum("ai,bj,ijk->abk", U.basis, V.basis, a.C).reshape(-1, a.dim)
    return la.span(prods % a.p, a.dim, a.p)


def radical(a):
    """Jacobson radical as the radical of the trace form Tr(L_x L_y) (needs p > dim)."""
    p, d = a.p, a.dim
    if p <= d:
        raise FieldTooSmall(f"p = {p} must exceed dim = {d}")
    tr = np.einsum("ikk->i", a.left_mats) % p  # Tr(L_{b_k})
    T = (a.C.reshape(d * d, d) @ tr % p).reshape(d, d)
    # for p > d the form radical is a nil ideal, hence the Jacobson radical
    return la.kernel_basis(T.T, p)


def make_algebra(p, C, unit, idempotents, names=None, radical_rows=None, name=""):
    """Build an Algebra from dense structure constants (arrays or nested lists)."""
    fld = p if isinstance(p, la.PrimeField) else la.PrimeField(int(p))
    C = np.array(C, dtype=np.int64) % fld.p
    if C.ndim != 3 or C.shape[0] != C.shape[1] or C.shape[1] != C.shape[2]:
        raise InputError(f"structure constants must be d x d x d, got {C.shape}")
    d = C.shape[0]
    unit = np.array(unit, dtype=np.int64).reshape(-1) % fld.p
    if unit.shape != (d,):
        raise InputError("unit has wrong length")
    idem = np.array(idempotents, dtype=np.int64).reshape(-1, d) % fld.p
    names = tuple(names) if names is not None else tuple(f"b{i}" for i in range(d))
    if len(names) != d:
        raise InputError("basis_names has wrong length")
    rad = None
    if radical_rows is not None:
        rad = la.span(np.array(radical_rows, dtype=np.int64).reshape(-1, d), d, fld.p)
    return Algebra(fld, d, names, C, unit, idem, rad, name)


def validate_algebra(a, limit=50):
    """List of violated axioms (empty means valid)."""
    p, d = a.p, a.dim
    out = []
    if a.C.shape != (d, d, d) or a.unit.shape != (d,) or a.idempotents.ndim != 2:
        raise InputError("malformed algebra dimensions")
    if p <= d:
        out.append(f"field: p = {p} does not exceed dim = {d}")
    C = a.C
    # associativity: (b_i b_j) b_l = b_i (b_j b_l)
    for i in range(d):
        lhs = np.tensordot(C[i], C, axes=(1, 0)) % p  # (b_i b_j) b_l
        rhs = np.einsum("jlk,km->jlm", C, C[i]) % p  # b_i (b_j b_l)
        bad = np.argwhere((lhs - rhs) % p != 0)
        seen = set()
        for j, l, _ in bad:
            if (j, l) in seen:
                continue
            seen.add((j, l))
            out.append(f"associativity: (b{i}*b{j})*b{l} != b{i}*(b{j}*b{l})")
            if len(out) >= limit:
                return out
    # unit
    L1 = np.tensordot(a.unit, a.left_mats, 1) % p
    R1 = np.tensordot(a.unit, a.right_mats, 1) % p
    I = la.identity(d)
    for i in range(d):
        if (L1[:, i] != I[:, i]).any():
            out.append(f"unit: 1*b{i} != b{i}")
        if (R1[:, i] != I[:, i]).any():
            out.append(f"unit: b{i}*1 != b{i}")
    # idempotents
    E = a.idempotents
    r = E.shape[0]
    for s in range(r):
        for t in range(r):
            prod = a.mul(E[s], E[t])
            want = E[s] if s == t else np.zeros(d, dtype=np.int64)
            if (prod != want).any():
                out.append(f"idempotents: e{s}*e{t} wrong" if s != t else f"idempotents: e{s}^2 != e{s}")
    if r and ((E.sum(axis=0) - a.unit) % p).any():
        out.append("idempotents: sum != 1")
    if r == 0 and d > 0:
        out.append("idempotents: empty set")
    if out:
        return out[:limit]
    # radical checks
    try:
        trace_rad = radical(a)
    except FieldTooSmall as exc:
        out.append(f"radical: {exc}")
        return out
    R = a.radical_basis if a.radical_basis is not None else trace_rad
    if R.dim:
        if not R.contains(np.hstack([a.left_mats[k] @ R.basis.T % p for k in range(d)])):
            out.append("radical: not a left ideal")
        if not R.contains(np.hstack([a.right_mats[k] @ R.basis.T % p for k in range(d)])):
            out.append("radical: not a right ideal")
        cur, n = R, 0
        while cur.dim and n <= d:
            cur = _ideal_product(a, cur, R)
            n += 1
        if cur.dim:
            out.append("radical: not nilpotent")
    if not (R == trace_rad):
        out.append("radical: supplied basis differs from trace-form radical")
    if d - R.dim != r:
        out.append(f"radical: dim A/rad = {d - R.dim} but {r} idempotents (not split basic)")
    return out[:limit]


# --- derived algebras ----------------------------------------------------

def opposite_algebra(a):
    C = np.ascontiguousarray(np.transpose(a.C, (1, 0, 2)))
    rad = None if a.radical_basis is None else a.radical_basis
    return Algebra(a.field, a.dim, a.basis_names, C, a.unit.copy(), a.idempotents.copy(),
                   rad, (a.name + "^op") if a.name else "")


def enveloping_algebra(a):
    """A (x) A^op with basis b_i (x) b_j at index i*d + j."""
    d, p = a.dim, a.p
    if p <= d * d:
        raise FieldTooSmall(f"p = {p} must exceed dim^2 = {d * d}")
    Cop = np.transpose(a.C, (1, 0, 2))
    C = np.einsum("ikm,jln->ijklmn", a.C, Cop).reshape(d * d, d * d, d * d) % p
    unit = np.kron(a.unit, a.unit) % p
    idem = np.array([np.kron(es, et) for es in a.idempotents for et in a.idempotents]) % p
    R = a.rad
    rows = []
    I = la.identity(d)
    for v in R.basis:
        for w in I:
            rows.append(np.kron(v, w))
            rows.append(np.kron(w, v))
    rad_rows = np.array(rows, dtype=np.int64).reshape(-1, d * d)
    names = tuple(f"{x}|{y}" for x in a.basis_names for y in a.basis_names)
    return make_algebra(a.field, C, unit, idem, names, rad_rows, (a.name + "^e") if a.name else "")


def tensor_algebra(a, b):
    """A (x) B with basis a_i (x) b_j at index i*dim(B) + j."""
    if a.p != b.p:
        raise InputError("tensor product of algebras over different fields")
    da, db = a.dim, b.dim
    d = da * db
    C = np.einsum("ikm,jln->ijklmn", a.C, b.C).reshape(d, d, d) % a.p
    unit = np.kron(a.unit, b.unit) % a.p
    idem = np.array([np.kron(es, et) for es in a.idempotents for et in b.idempotents],
                    dtype=np.int64).reshape(-1, d) % a.p
    rows = [np.kron(v, w) for v in a.rad.basis for w in la.identity(db)]
    rows += [np.kron(w, v) for w in la.identity(da) for v in b.rad.basis]
    names = tuple(f"{x}|{y}" for x in a.basis_names for y in b.basis_names)
    return make_algebra(a.field, C, unit, idem, names, np.array(rows, dtype=np.int64).reshape(-1, d),
                        f"{a.name or 'A'}(x){b.name or 'B'}")


def product_algebra(a, b):
    """A x B with basis A-basis followed by B-basis."""
    if a.p != b.p:
        raise InputError("product of algebras over different fields")
    da, db = a.dim, b.dim
    d = da + db
    C = np.zeros((d, d, d), dtype=np.int64)
    C[:da, :da, :da] = a.C
    C[da:, da:, da:] = b.C
    unit = np.concatenate([a.unit, b.unit])
    idem = [np.concatenate([e, np.zeros(db, np.int64)]) for e in a.idempotents]
    idem += [np.concatenate([np.zeros(da, np.int64), e]) for e in b.idempotents]
    rad_rows = [np.concatenate([v, np.zeros(db, np.int64)]) for v in a.rad.basis]
    rad_rows += [np.concatenate([np.zeros(da, np.int64), v]) for v in b.rad.basis]
    names = tuple(a.basis_names) + tuple(b.basis_names)
    if len(set(names)) < len(names):
        names = tuple(f"A.{x}" for x in a.basis_names) + tuple(f"B.{x}" for x in b.basis_names)
    return make_algebra(a.field, C, unit, idem, names,
                        np.array(rad_rows, dtype=np.int64).reshape(-1, d),
                        f"{a.name or 'A'}x{b.name or 'B'}")


def field_algebra(p=la.DEFAULT_P):
    return make_algebra(p, [[[1]]], [1], [[1]], ["1"], np.zeros((0, 1)), "k")


def path_algebra(n_vertices, arrows, relations=(), length_cap=8, p=la.DEFAULT_P, name=""):
    """Path algebra kQ/I.

    Paths compose left to right: for a: s -> t and b: t -> u the product a*b is the
    path "a b".  With this convention right modules are quiver representations and
    e_s (path) e_t = path for a path from s to t.

    arrows: list of (name, source, target); relations: list of {path: coeff} where a
    path is a tuple of arrow names (length >= 2).
    """
    fld = la.PrimeField(p)
    p = fld.p
    names = [a[0] for a in arrows]
    if len(set(names)) != len(names):
        raise InputError("duplicate arrow names")
    src = {a[0]: int(a[1]) for a in arrows}
    tgt = {a[0]: int(a[2]) for a in arrows}
    for a in arrows:
        if not (0 <= src[a[0]] < n_vertices and 0 <= tgt[a[0]] < n_vertices):
            raise InputError(f"arrow {a[0]} has a bad endpoint")
    # enumerate paths of length 0..cap
    paths = [("e", v) for v in range(n_vertices)]
    by_len = [[(a,) for a in names]]
    for _ in range(length_cap - 1):
        nxt = [w + (a,) for w in by_len[-1] for a in names if tgt[w[-1]] == src[a]]
        if not nxt:
            break
        by_len.append(nxt)
    nontriv = [w for level in by_len for w in level]
    allpaths = paths + nontriv
    index = {w: i for i, w in enumerate(allpaths)}
    N = len(allpaths)

    def concat(u, v):
        """Product of two basis paths, or None when zero."""
        if u[0] == "e":
            if v[0] == "e":
                return u if u[1] == v[1] else None
            return v if src[v[0]] == u[1] else None
        if v[0] == "e":
            return u if tgt[u[-1]] == v[1] else None
        if tgt[u[-1]] != src[v[0]]:
            return None
        return u + v

    rel_vecs = []
    for rel in relations:
        rel = {tuple(k): int(c) for k, c in dict(rel).items()}
        for w in rel:
            if len(w) < 2 or any(a not in src for a in w):
                raise InputError(f"bad relation path {w}")
            if any(tgt[w[i]] != src[w[i + 1]] for i in range(len(w) - 1)):
                raise InputError(f"relation path {w} is not composable")
        for u in allpaths:
            for v in allpaths:
                vec = np.zeros(N, dtype=np.int64)
                any_term = False
                for w, c in rel.items():
                    x = concat(u, w)
                    x = concat(x, v) if x is not None else None
                    if x is not None and x in index:
                        vec[index[x]] += c
                        any_term = True
                if any_term and (vec % p).any():
                    rel_vecs.append(vec % p)
    # all paths longer than the cap are treated as zero; reduce long paths first
    order = sorted(range(N), key=lambda i: (-len(allpaths[i]) if allpaths[i][0] != "e" else 1, i))
    perm = np.array(order)
    I = la.span(np.array(rel_vecs, dtype=np.int64).reshape(-1, N)[:, perm], N, p)
    longest = by_len[-1] if len(by_len) == length_cap else []
    for w in longest:
        vec = np.zeros(N, dtype=np.int64)
        vec[index[w]] = 1
        if not I.contains(vec[perm]):
            raise NotFiniteDimensional(f"path {' '.join(w)} of length {length_cap} survives")
    pi, sec = I.complement_projection()
    free = [int(perm[c]) for c in range(N) if sec[c].any()]
    free.sort()
    survivors = [allpaths[i] for i in free]
    d = len(survivors)
    if p <= d:
        raise FieldTooSmall(f"p = {p} must exceed dim = {d}")
    # coordinates in the quotient: pi acts on permuted vectors
    pos = {}
    for j in range(pi.shape[0]):
        c = int(np.flatnonzero(sec[:, j])[0])
        pos[int(perm[c])] = j
    qorder = [pos[i] for i in free]

    def project(path):
        vec = np.zeros(N, dtype=np.int64)
        vec[index[path]] = 1
        q = pi @ vec[perm] % p
        return q[qorder]

    C = np.zeros((d, d, d), dtype=np.int64)
    for i, u in enumerate(survivors):
        for j, v in enumerate(survivors):
            x = concat(u, v)
            if x is not None and x in index:
                C[i, j] = project(x)
    unit = np.zeros(d, dtype=np.int64)
    idem = np.zeros((n_vertices, d), dtype=np.int64)
    for v in range(n_vertices):
        k = survivors.index(("e", v))
        unit[k] = 1
        idem[v, k] = 1
    bnames = [f"e{w[1] + 1}" if w[0] == "e" else "".join(w) for w in survivors]
    rad_rows = [la.identity(d)[i] for i, w in enumerate(survivors) if w[0] != "e"]
    return make_algebra(fld, C, unit, idem, bnames,
                        np.array(rad_rows, dtype=np.int64).reshape(-1, d), name)


def structure_table_iso(a, b, perm):
    """True when b_i of `a` maps to b_perm[i] of `b` as an algebra isomorphism."""
    if a.dim != b.dim:
        return False
    perm = list(perm)
    for i, j, k in itertools.product(range(a.dim), repeat=3):
        if a.C[i, j, k] != b.C[perm[i], perm[j], perm[k]]:
            return False
    return True


def find_basis_relabeling(a, b):
    """A permutation of basis indices carrying a's table to b's, or None (brute force)."""
    if a.dim != b.dim or a.dim > 8:
        return None
    for perm in itertools.permutations(range(a.dim)):
        if structure_table_iso(a, b, perm):
            return perm
    return None
