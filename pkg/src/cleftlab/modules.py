"""Right modules and bimodules over split basic algebras, with maps between them.

Convention (used everywhere): a right module stores one matrix A_i per basis
element b_i of its algebra with x . b_i = A_i x for column vectors x, so products
compose contravariantly, A_{b_i b_j} = A_j A_i.  A bimodule additionally stores
left matrices L_i with b_i . x = L_i x, composing covariantly.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import numpy as np

from . import exactlinalg as la
from .algebra import Algebra, field_algebra, tensor_algebra
from .errors import InputError


def same_algebra(a, b):
    if a is b:
        return True
    return (
        a.dim == b.dim
        and a.p == b.p
        and np.array_equal(a.C, b.C)
        and np.array_equal(a.idempotents, b.idempotents)
    )


def _combine(mats, x, p):
    """sum_i x_i mats[i]."""
    return np.tensordot(np.asarray(x, dtype=np.int64), mats, 1) % p


@dataclass(frozen=True, eq=False)
class RightModule:
    algebra: Algebra
    action: np.ndarray  # (d, n, n)
    name: str = ""

    @property
    def dim(self):
        return self.action.shape[1]

    @property
    def p(self):
        return self.algebra.p

    def __repr__(self):
        return f"<RightModule {self.name or ''} dim={self.dim} over {self.algebra!r}>"

    def act(self, x):
        """Matrix of the action of the algebra element x."""
        return _combine(self.action, x, self.p)

    @cached_property
    def gen_action(self):
        return np.array([self.act(g) for g in self.algebra.generators]).reshape(
            len(self.algebra.generators), self.dim, self.dim)

    @cached_property
    def weights(self):
        """(W, Winv, offsets): columns of W are bases of X e_1, X e_2, ... in order."""
        p = self.p
        cols, offs = [], [0]
        for e in self.algebra.idempotents:
            sub = la.column_span(self.act(e), p)
            cols.append(sub.basis.T)
            offs.append(offs[-1] + sub.dim)
        W = np.hstack(cols) if cols else la.zeros(self.dim, 0)
        if W.shape[1] != self.dim:
            raise InputError("idempotents do not decompose the module")
        Winv = la.inverse(W, p) if self.dim else la.zeros(0, 0)
        return W, Winv, tuple(offs)

    @property
    def dim_vector(self):
        offs = self.weights[2]
        return tuple(offs[t + 1] - offs[t] for t in range(self.algebra.r))

    @cached_property
    def arrow_blocks(self):
        """For each arrow (s, t, v): the block of x -> x.v from X e_s to X e_t in the weight basis."""
        W, Winv, offs = self.weights
        out = []
        for s, t, v in self.algebra.arrows:
            a = la.mul(la.mul(Winv, self.act(v), self.p), W, self.p)
            out.append(a[offs[t]:offs[t + 1], offs[s]:offs[s + 1]])
        return out


@dataclass(frozen=True, eq=False)
class Bimodule:
    left_algebra: Algebra
    right_algebra: Algebra
    left: np.ndarray  # (dL, n, n)
    right: np.ndarray  # (dR, n, n)
    name: str = ""

    @property
    def dim(self):
        return self.left.shape[1]

    @property
    def p(self):
        return self.right_algebra.p

    def __repr__(self):
        return f"<Bimodule {self.name or ''} dim={self.dim}>"

    def act_left(self, x):
        return _combine(self.left, x, self.p)

    def act_right(self, x):
        return _combine(self.right, x, self.p)

    @cached_property
    def as_right(self):
        return RightModule(self.right_algebra, self.right, self.name)

    @cached_property
    def as_left(self):
        """The left module viewed as a right module over the opposite algebra."""
        return RightModule(self.left_algebra.opposite, self.left, self.name)


@dataclass(frozen=True, eq=False)
class ModuleMap:
    source: RightModule
    target: RightModule
    matrix: np.ndarray

    def is_homomorphism(self):
        m = self.matrix
        p = self.source.p
        for As, At in zip(self.source.action, self.target.action):
            if ((m @ As - At @ m) % p).any():
                return False
        return True


# --- validation -------------------------------------------------------------

def _check_right(alg, mats, tag, out, limit):
    p, d = alg.p, alg.dim
    n = mats.shape[1]
    if mats.shape != (d, n, n):
        raise InputError(f"{tag}action has shape {mats.shape}, expected ({d}, {n}, {n})")
    if ((_combine(mats, alg.unit, p) - la.identity(n)) % p).any():
        out.append(f"{tag}unit: sum u_k A_k != I")
    lhs = np.tensordot(alg.C, mats, axes=(2, 0)) % p  # [i, j] -> sum_k c_ij^k A_k
    for i, j in itertools.product(range(d), repeat=2):
        if ((lhs[i, j] - mats[j] @ mats[i]) % p).any():
            out.append(f"{tag}compatibility: pair ({i},{j})")
            if len(out) >= limit:
                return


def _check_left(alg, mats, tag, out, limit):
    p, d = alg.p, alg.dim
    n = mats.shape[1]
    if mats.shape != (d, n, n):
        raise InputError(f"{tag}action has shape {mats.shape}, expected ({d}, {n}, {n})")
    if ((_combine(mats, alg.unit, p) - la.identity(n)) % p).any():
        out.append(f"{tag}unit: sum u_k L_k != I")
    lhs = np.tensordot(alg.C, mats, axes=(2, 0)) % p
    for i, j in itertools.product(range(d), repeat=2):
        if ((lhs[i, j] - mats[i] @ mats[j]) % p).any():
            out.append(f"{tag}compatibility: pair ({i},{j})")
            if len(out) >= limit:
                return


def validate_module(x, limit=50):
    """List of violated module axioms; empty means valid."""
    out = []
    if isinstance(x, RightModule):
        _check_right(x.algebra, x.action, "", out, limit)
        return out
    if isinstance(x, Bimodule):
        if x.left.shape[1:] != x.right.shape[1:]:
            raise InputError("left and right actions have different sizes")
        _check_left(x.left_algebra, x.left, "left ", out, limit)
        _check_right(x.right_algebra, x.right, "right ", out, limit)
        p = x.p
        for i, L in enumerate(x.left):
            for j, R in enumerate(x.right):
                if ((L @ R - R @ L) % p).any():
                    out.append(f"commutation: pair ({i},{j})")
                    if len(out) >= limit:
                        return out
        return out
    raise InputError(f"not a module: {type(x).__name__}")


# --- basic constructors -----------------------------------------------------

def regular_module(alg):
    return RightModule(alg, alg.right_mats.copy(), "regular")


def regular_bimodule(alg):
    return Bimodule(alg, alg, alg.left_mats.copy(), alg.right_mats.copy(), "regular")


def zero_module(alg):
    return RightModule(alg, np.zeros((alg.dim, 0, 0), dtype=np.int64), "0")


def simple_module(alg, t):
    """One-dimensional simple module at vertex t: e_t acts by 1, the radical by 0."""
    # x . b = (coefficient of e_t in b modulo rad) x
    coeffs = _top_coefficients(alg)[:, t]
    return RightModule(alg, coeffs.reshape(alg.dim, 1, 1).copy(), f"S{t + 1}")


@lru_cache(maxsize=None)
def _top_coefficients(alg):
    """d x r matrix: image of b_i in A/rad = k^r (coordinates on the idempotents)."""
    p, d = alg.p, alg.dim
    # solve b_i = sum_t c_t e_t + rad
    M = np.vstack([alg.idempotents, alg.rad.basis]).T if alg.rad.dim else alg.idempotents.T
    sol = la.solve(M, la.identity(d), p)
    if sol is None:
        raise InputError("algebra is not split basic over its idempotents")
    return sol[: alg.r].T.copy() % p


def left_simple(alg, t):
    """Simple left module at vertex t as a (alg, k)-bimodule."""
    k = field_algebra(alg.p)
    coeffs = _top_coefficients(alg)[:, t]
    return Bimodule(alg, k, coeffs.reshape(alg.dim, 1, 1).copy(), np.ones((1, 1, 1), np.int64), f"S{t + 1}")


def left_module(alg, left_mats, name=""):
    """A left module given by L-matrices, stored as an (alg, k)-bimodule."""
    left_mats = np.asarray(left_mats, dtype=np.int64) % alg.p
    n = left_mats.shape[1]
    k = field_algebra(alg.p)
    return Bimodule(alg, k, left_mats, la.identity(n)[None, :, :].copy(), name)


def left_regular(alg):
    return left_module(alg, alg.left_mats, "regular")


def direct_sum(*mods):
    if not mods:
        raise InputError("empty direct sum")
    alg = mods[0].algebra
    n = sum(m.dim for m in mods)
    act = np.zeros((alg.dim, n, n), dtype=np.int64)
    o = 0
    for m in mods:
        if not same_algebra(m.algebra, alg):
            raise InputError("direct sum over different algebras")
        act[:, o:o + m.dim, o:o + m.dim] = m.action
        o += m.dim
    return RightModule(alg, act, "+".join(m.name or "?" for m in mods))


def direct_sum_bimodules(*mods):
    L, R = mods[0].left_algebra, mods[0].right_algebra
    n = sum(m.dim for m in mods)
    left = np.zeros((L.dim, n, n), dtype=np.int64)
    right = np.zeros((R.dim, n, n), dtype=np.int64)
    o = 0
    for m in mods:
        left[:, o:o + m.dim, o:o + m.dim] = m.left
        right[:, o:o + m.dim, o:o + m.dim] = m.right
        o += m.dim
    return Bimodule(L, R, left, right, "+".join(m.name or "?" for m in mods))


def dual(x):
    """D(X) = Hom_k(X, k).  A right module becomes a right module over the opposite
    algebra (transposed matrices); a bimodule (S, R) becomes a bimodule (R, S)."""
    if isinstance(x, RightModule):
        return RightModule(x.algebra.opposite, np.transpose(x.action, (0, 2, 1)).copy(), f"D({x.name})")
    return Bimodule(x.right_algebra, x.left_algebra, np.transpose(x.right, (0, 2, 1)).copy(),
                    np.transpose(x.left, (0, 2, 1)).copy(), f"D({x.name})")


def restrict(x, hom_matrix, source_alg):
    """Restriction of scalars along an algebra map h: source_alg -> x.algebra given by
    its matrix (dim target x dim source)."""
    act = np.tensordot(np.asarray(hom_matrix, dtype=np.int64).T, x.action, 1) % x.p
    return RightModule(source_alg, act.reshape(source_alg.dim, x.dim, x.dim), x.name)


def module_from_generators(alg, gen_mats, name=""):
    """Module from action matrices of alg.generators (idempotents then arrows).

    Returns None when the data does not define a module (relations violated)."""
    p = alg.p
    gen_mats = [np.asarray(g, dtype=np.int64) % p for g in gen_mats]
    n = gen_mats[0].shape[0] if gen_mats else 0
    words, M = alg.word_basis
    wmats = []
    for w in words:
        A = la.identity(n)
        for g in w:
            A = gen_mats[g] @ A % p
        wmats.append(A)
    wmats = np.array(wmats).reshape(len(words), n, n)
    act = np.tensordot(M, wmats, 1) % p
    x = RightModule(alg, act, name)
    if validate_module(x, limit=1):
        return None
    for g, A in zip(alg.generators, gen_mats):
        if (x.act(g) != A).any():
            return None
    return x


def representation(alg, dims, arrow_mats, name=""):
    """Module from a dimension vector and one matrix per arrow (shape d_t x d_s for an
    arrow s -> t), in the weight basis.  None if relations fail."""
    p = alg.p
    n = sum(dims)
    offs = np.concatenate([[0], np.cumsum(dims)]).astype(int)
    gens = []
    for t in range(alg.r):
        E = la.zeros(n, n)
        for i in range(offs[t], offs[t + 1]):
            E[i, i] = 1
        gens.append(E)
    for (s, t, _), m in zip(alg.arrows, arrow_mats):
        A = la.zeros(n, n)
        A[offs[t]:offs[t + 1], offs[s]:offs[s + 1]] = np.asarray(m, dtype=np.int64).reshape(dims[t], dims[s])
        gens.append(A)
    return module_from_generators(alg, gens, name)


# --- Hom ---------------------------------------------------------------------

def hom_space(x, y):
    """Basis of Hom(x, y) as an array of matrices (h, dim y, dim x)."""
    if not same_algebra(x.algebra, y.algebra):
        raise InputError("Hom between modules over different algebras")
    p = x.p
    WX, WXi, ox = x.weights
    WY, WYi, oy = y.weights
    r = x.algebra.r
    dx = [ox[t + 1] - ox[t] for t in range(r)]
    dy = [oy[t + 1] - oy[t] for t in range(r)]
    uoff = [0]
    for t in range(r):
        uoff.append(uoff[-1] + dx[t] * dy[t])
    nu = uoff[-1]
    if nu == 0:
        return np.zeros((0, y.dim, x.dim), dtype=np.int64)
    rows = []
    for (s, t, _), ax, ay in zip(x.algebra.arrows, x.arrow_blocks, y.arrow_blocks):
        ne = dy[t] * dx[s]
        if ne == 0:
            continue
        E = la.zeros(ne, nu)
        if dx[t] * dy[t]:
            E[:, uoff[t]:uoff[t + 1]] += np.kron(la.identity(dy[t]), ax.T)
        if dx[s] * dy[s]:
            E[:, uoff[s]:uoff[s + 1]] -= np.kron(ay, la.identity(dx[s]))
        rows.append(E % p)
    K = la.kernel_basis(np.vstack(rows) if rows else la.zeros(0, nu), p)
    out = np.zeros((K.dim, y.dim, x.dim), dtype=np.int64)
    for h, vec in enumerate(K.basis):
        Tp = la.zeros(y.dim, x.dim)
        for t in range(r):
            Tp[oy[t]:oy[t + 1], ox[t]:ox[t + 1]] = vec[uoff[t]:uoff[t + 1]].reshape(dy[t], dx[t])
        out[h] = la.mul(la.mul(WY, Tp, p), WXi, p)
    return out


def hom_basis(x, y):
    return [ModuleMap(x, y, T) for T in hom_space(x, y)]


def hom_dim(x, y):
    return hom_space(x, y).shape[0]


# --- tensor products ------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class TensorData:
    module: object
    pi: np.ndarray  # quotient coordinates from x (x)_k m
    sec: np.ndarray


def _balance_relations(right_gen_mats, left_gen_mats, p):
    """Column span of (A_g (x) I - I (x) L_g) over generators g."""
    nx = right_gen_mats.shape[1]
    nm = left_gen_mats.shape[1]
    cols = [np.kron(A, la.identity(nm)) - np.kron(la.identity(nx), L)
            for A, L in zip(right_gen_mats, left_gen_mats)]
    if not cols or nx * nm == 0:
        return la.span(la.zeros(0, nx * nm), nx * nm, p)
    return la.column_span(np.hstack(cols) % p, p)


def tensor_data(x, m):
    """x (x)_Gamma m for a right module x over Gamma and a (Gamma, Gamma')-bimodule m."""
    if not same_algebra(x.algebra, m.left_algebra):
        raise InputError("tensor: algebra mismatch")
    p = x.p
    gens = x.algebra.generators
    lg = np.array([m.act_left(g) for g in gens]).reshape(len(gens), m.dim, m.dim)
    W = _balance_relations(x.gen_action, lg, p)
    pi, sec = W.complement_projection()
    Inx = la.identity(x.dim)
    act = np.array([pi @ np.kron(Inx, R) % p @ sec % p for R in m.right]).reshape(
        m.right_algebra.dim, pi.shape[0], pi.shape[0])
    return TensorData(RightModule(m.right_algebra, act, f"{x.name}(x){m.name}"), pi, sec)


def tensor_over_algebra(x, m):
    return tensor_data(x, m).module


def tensor_bimodules_data(m1, m2):
    """m1 (x)_Gamma' m2 for an (S, Gamma')-bimodule m1 and a (Gamma', T)-bimodule m2."""
    if not same_algebra(m1.right_algebra, m2.left_algebra):
        raise InputError("tensor: algebra mismatch")
    p = m1.p
    gens = m1.right_algebra.generators
    rg = np.array([m1.act_right(g) for g in gens]).reshape(len(gens), m1.dim, m1.dim)
    lg = np.array([m2.act_left(g) for g in gens]).reshape(len(gens), m2.dim, m2.dim)
    W = _balance_relations(rg, lg, p)
    pi, sec = W.complement_projection()
    q = pi.shape[0]
    I1, I2 = la.identity(m1.dim), la.identity(m2.dim)
    left = np.array([pi @ np.kron(L, I2) % p @ sec % p for L in m1.left]).reshape(len(m1.left), q, q)
    right = np.array([pi @ np.kron(I1, R) % p @ sec % p for R in m2.right]).reshape(len(m2.right), q, q)
    b = Bimodule(m1.left_algebra, m2.right_algebra, left, right, f"{m1.name}(x){m2.name}")
    return TensorData(b, pi, sec)


def tensor_bimodules(m1, m2):
    return tensor_bimodules_data(m1, m2).module


def tensor_map(f, td_src, td_tgt, h):
    """Induced map f (x) h between tensor products; h is the bimodule map matrix."""
    p = f.source.p
    big = np.kron(f.matrix, h) % p
    return ModuleMap(td_src.module, td_tgt.module, td_tgt.pi @ big % p @ td_src.sec % p)


# --- Hom from a bimodule -----------------------------------------------------------

def hom_from_bimodule(b, y):
    """Hom_R(b, y) for an (S, R)-bimodule b and a right R-module y, as a right S-module
    via (phi . s)(m) = phi(s . m)."""
    if not same_algebra(b.right_algebra, y.algebra):
        raise InputError("Hom: algebra mismatch")
    bm = RightModule(b.right_algebra, b.right)
    H = hom_space(bm, y)  # (h, dim y, dim b)
    h = H.shape[0]
    p = y.p
    S = b.left_algebra
    if h == 0:
        return RightModule(S, np.zeros((S.dim, 0, 0), dtype=np.int64), f"Hom({b.name},{y.name})"), H
    flat = H.reshape(h, -1).T  # columns = basis maps
    act = np.zeros((S.dim, h, h), dtype=np.int64)
    for i, L in enumerate(b.left):
        imgs = np.einsum("hab,bc->hac", H, L) % p  # phi o L_i
        sol = la.solve(flat, imgs.reshape(h, -1).T, p)
        if sol is None:
            raise InputError("Hom space not closed under the induced action")
        act[i] = sol
    return RightModule(S, act, f"Hom({b.name},{y.name})"), H


# --- kernels, cokernels, submodules --------------------------------------------------

def submodule(x, U):
    """Submodule spanned by Subspace U (assumed invariant); returns (module, inclusion)."""
    p = x.p
    inc = U.basis.T.copy()
    if U.dim == 0:
        return RightModule(x.algebra, np.zeros((x.algebra.dim, 0, 0), dtype=np.int64)), inc
    imgs = np.einsum("iab,bc->iac", x.action, inc) % p
    act = imgs[:, list(U.pivots), :]
    if ((np.einsum("ab,ibc->iac", inc, act) - imgs) % p).any():
        raise InputError("subspace is not a submodule")
    return RightModule(x.algebra, act % p), inc


def quotient(x, U):
    """x / U for an invariant subspace U; returns (module, projection matrix)."""
    p = x.p
    pi, sec = U.complement_projection()
    act = np.einsum("ab,ibc,cd->iad", pi, x.action, sec) % p
    return RightModule(x.algebra, act), pi


def generated_submodule(x, vectors):
    """Subspace x . Lambda generated by the given vectors (rows or 1-d)."""
    p = x.p
    if x.dim == 0:
        return la.span(la.zeros(0, 0), 0, p)
    V = np.asarray(vectors, dtype=np.int64).reshape(-1, x.dim)
    if V.shape[0] == 0:
        return la.span(la.zeros(0, x.dim), x.dim, p)
    imgs = np.einsum("iab,kb->ika", x.action, V) % p
    return la.span(imgs.reshape(-1, x.dim), x.dim, p)


def map_kernel_cokernel(f):
    """((kernel module, inclusion), (cokernel module, projection)) of a ModuleMap."""
    p = f.source.p
    K = la.kernel_basis(f.matrix, p)
    kmod, inc = submodule(f.source, K)
    img = la.column_span(f.matrix, p) if f.matrix.size else la.span(la.zeros(0, f.target.dim), f.target.dim, p)
    cmod, proj = quotient(f.target, img)
    return (kmod, ModuleMap(kmod, f.source, inc)), (cmod, ModuleMap(f.target, cmod, proj))


def radical_submodule(x):
    """x . rad as a subspace."""
    p = x.p
    R = x.algebra.rad
    if R.dim == 0 or x.dim == 0:
        return la.span(la.zeros(0, x.dim), x.dim, p)
    mats = np.tensordot(R.basis, x.action, 1) % p
    return la.column_span(np.hstack(list(mats)), p)


def top_dims(x):
    """dim of (x / x rad) e_t for each vertex t."""
    W = radical_submodule(x)
    quo, _ = quotient(x, W)
    return quo.dim_vector


# --- isomorphism -------------------------------------------------------------------

@dataclass(frozen=True)
class IsoResult:
    status: str  # "Iso" | "NotIso" | "Unknown"
    reason: str = ""
    witness: np.ndarray | None = field(default=None, compare=False)

    def __bool__(self):
        return self.status == "Iso"


GRID_BUDGET = 20000


def iso_test(x, y, seed=0, samples=200):
    """Decide x = y.  Invertible Hom element found -> Iso; dimension or Hom-dimension
    obstruction -> NotIso; otherwise the determinant polynomial of a generic Hom element
    is evaluated on a grid {0..n}^h, which certifies NotIso when it vanishes everywhere
    (degree in each variable is at most n < p)."""
    p = x.p
    if x.dim != y.dim:
        return IsoResult("NotIso", "dimension")
    if x.dim_vector != y.dim_vector:
        return IsoResult("NotIso", "dimension vector")
    if x.dim == 0:
        return IsoResult("Iso", "zero", la.zeros(0, 0))
    H = hom_space(x, y)
    h = H.shape[0]
    if h == 0:
        return IsoResult("NotIso", "Hom = 0")
    if hom_dim(x, x) != h or hom_dim(y, y) != h or hom_dim(y, x) != h:
        return IsoResult("NotIso", "Hom dimension")
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        c = rng.integers(0, p, size=h)
        T = np.tensordot(c, H, 1) % p
        if la.is_invertible(T, p):
            return IsoResult("Iso", "random", T)
    n = x.dim
    if n < p and (n + 1) ** h <= GRID_BUDGET:
        for c in itertools.product(range(n + 1), repeat=h):
            T = np.tensordot(np.array(c, dtype=np.int64), H, 1) % p
            if la.det(T, p):
                return IsoResult("Iso", "grid", T)
        return IsoResult("NotIso", "determinant vanishes identically")
    return IsoResult("Unknown", "search inconclusive")


def bimodule_as_module(b):
    """An (R, S)-bimodule as a right module over R^op (x) S, x . (r (x) s) = r x s."""
    R, S = b.left_algebra, b.right_algebra
    env = tensor_algebra(R.opposite, S)
    act = np.einsum("iab,jbc->ijac", b.left, b.right).reshape(env.dim, b.dim, b.dim) % b.p
    return RightModule(env, act, b.name)


def bimodule_iso_test(b1, b2, seed=0):
    return iso_test(bimodule_as_module(b1), bimodule_as_module(b2), seed=seed)


# --- projectives and random modules ---------------------------------------------------

@lru_cache(maxsize=None)
def projective_summand(alg, t):
    """(e_t Lambda as a module, U): rows of U are its basis inside Lambda."""
    p = alg.p
    U = la.column_span(alg.left_mult(alg.idempotents[t]), p)
    mod, _ = submodule(regular_module(alg), U)
    return RightModule(alg, mod.action, f"P{t + 1}"), U


def projective_module(alg, ts):
    if not ts:
        return zero_module(alg)
    return direct_sum(*[projective_summand(alg, t)[0] for t in ts])


def injective_module(alg, t):
    """D(Lambda e_t): the injective hull of the simple at t."""
    op = alg.opposite
    return dual(projective_summand(op, t)[0])


def injective_cogenerator(alg):
    """D(_Lambda Lambda) as a right Lambda-module."""
    return RightModule(alg, np.transpose(alg.left_mats, (0, 2, 1)).copy(), "D(Lambda)")


def random_module(alg, rng, max_dim=None, tries=50):
    """A random quotient of a random projective (or, sometimes, a random submodule of an
    injective).  Deterministic given the rng state."""
    p = alg.p
    for _ in range(tries):
        kind = rng.integers(0, 3)
        k = int(rng.integers(1, 3))
        ts = sorted(int(t) for t in rng.integers(0, alg.r, size=k))
        if kind < 2:
            P = projective_module(alg, ts)
            ngen = int(rng.integers(0, 3))
            vecs = rng.integers(0, p, size=(ngen, P.dim))
            # keep generators homogeneous and inside the radical half the time
            for v in vecs:
                e = alg.idempotents[int(rng.integers(0, alg.r))]
                v[:] = P.act(e) @ v % p
                if rng.integers(0, 2):
                    R = radical_submodule(P)
                    if R.dim:
                        v[:] = R.basis.T @ rng.integers(0, p, size=R.dim) % p
            U = generated_submodule(P, vecs)
            x, _ = quotient(P, U)
        else:
            I = direct_sum(*[injective_module(alg, t) for t in ts])
            vec = rng.integers(0, p, size=(k, I.dim))
            U = generated_submodule(I, vec)
            x, _ = submodule(I, U)
        if x.dim == 0 or (max_dim is not None and x.dim > max_dim):
            continue
        return RightModule(alg, x.action, "random")
    return simple_module(alg, int(rng.integers(0, alg.r)))
