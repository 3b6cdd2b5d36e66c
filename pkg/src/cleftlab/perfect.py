"""Perfectness tests for a Gamma-bimodule M, including nilpotence of its tensor powers,
and the F-projectivity test for F = - (x)_Gamma M on right Gamma-modules."""
from __future__ import annotations

from dataclasses import dataclass, field

from . import homology as hm
from . import modules as md
from .cleft import tensor_powers

PROBE = 3  # window used when a certified bound is not available


@dataclass(frozen=True)
class NilpotencyResult:
    index: int | None
    cutoff: int
    repeat: tuple | None = None  # (i, j): M^(x)i = M^(x)j as bimodules, i < j

    @property
    def finite(self):
        return self.index is not None

    def to_json(self):
        if self.finite:
            return {"kind": "Some", "value": self.index}
        out = {"kind": "NotWithin", "cutoff": self.cutoff}
        if self.repeat:
            out["repeat"] = list(self.repeat)
        return out

    def __str__(self):
        return f"Some({self.index})" if self.finite else f"NotWithin({self.cutoff})"


def nilpotency_index(m, cutoff=16, seed=0):
    """Smallest s with M^(x)s = 0.  When no power vanishes within the cutoff, looks for
    two isomorphic nonzero powers, which proves M is not nilpotent."""
    if m.dim == 0:
        return NilpotencyResult(1, cutoff)
    pows, _ = tensor_powers(m, cutoff)
    for j, t in enumerate(pows, start=1):
        if t.dim == 0:
            return NilpotencyResult(j, cutoff)
    for j in range(2, len(pows) + 1):
        for i in range(1, j):
            a, b = pows[i - 1], pows[j - 1]
            if a.dim == b.dim and md.bimodule_iso_test(a, b, seed=seed).status == "Iso":
                return NilpotencyResult(None, cutoff, (i, j))
    return NilpotencyResult(None, cutoff)


@dataclass
class PerfectReport:
    nilpotency: NilpotencyResult
    fd_left: hm.DimResult
    pd_right: hm.DimResult
    power_fd_left: list  # DimResult of M^(x)q as a left module, q = 1, 2, ...
    power_pd_right: list
    tor_table: dict  # (i, j) -> dim Tor_i(M, M^(x)j) (None if unknown)
    condition_R: dict
    n: int | None
    n_coperfect: int | None
    coperfect: dict
    verdict: str  # "Perfect" | "NotPerfect" | "Unknown"
    reason: str = ""
    powers: list = field(default_factory=list, repr=False)

    @property
    def s(self):
        return self.nilpotency.index

    @property
    def perfect(self):
        return self.verdict == "Perfect"

    def to_json(self):
        return {
            "nilpotency_index": self.nilpotency.to_json(),
            "fd_left": self.fd_left.to_json(),
            "pd_right": self.pd_right.to_json(),
            "power_fd_left": [r.to_json() for r in self.power_fd_left],
            "power_pd_right": [r.to_json() for r in self.power_pd_right],
            "tor_table": {f"{i},{j}": v for (i, j), v in sorted(self.tor_table.items())},
            "condition_R": dict(self.condition_R),
            "n": self.n,
            "n_coperfect": self.n_coperfect,
            "coperfect": dict(self.coperfect),
            "verdict": self.verdict,
            "reason": self.reason,
        }


def _degree_bound(r):
    return r.value if r.finite else PROBE


def _bound_from_powers(results):
    """max (pd + q) over the listed powers, or None if some pd is not finite."""
    if not all(r.finite for r in results):
        return None
    return max((r.value + q for q, r in enumerate(results, start=1)), default=0)


def perfect_report(m, res_cutoff=None, nilp_cutoff=16, seed=0):
    nil = nilpotency_index(m, nilp_cutoff, seed)
    fd_left = hm.flat_dimension(m.as_left, res_cutoff, seed)
    pd_right = hm.proj_dimension(m.as_right, res_cutoff, seed)
    # powers M^(x)q for q < s, or a short probe window when s is not known
    upto = nil.index - 1 if nil.finite else min(nilp_cutoff, PROBE)
    pows = tensor_powers(m, upto)[0][:upto] if upto > 0 else []
    pows = [t for t in pows if t.dim]
    power_fd = [hm.flat_dimension(t.as_left, res_cutoff, seed) for t in pows]
    power_pd = [hm.proj_dimension(t.as_right, res_cutoff, seed) for t in pows]

    # Tor_i(M, M^(x)j) vanishes for i > pd of M on the right
    top = _degree_bound(pd_right)
    table = {}
    for j, t in enumerate(pows, start=1):
        dims = hm.tor_dims(m.as_right, t, top, res_cutoff, seed)
        for i in range(1, top + 1):
            table[(i, j)] = dims[i]
    witness = next((k for k, v in sorted(table.items()) if v), None)
    unknown = [k for k, v in table.items() if v is None]
    if witness is not None:
        cond = {"pass": False, "witness": list(witness)}
    elif unknown or not pd_right.finite or not nil.finite:
        cond = {"pass": None, "witness": None}
    else:
        cond = {"pass": True, "witness": None}

    failures, open_ = [], []
    if nil.repeat:
        failures.append(f"not nilpotent: M^(x){nil.repeat[0]} = M^(x){nil.repeat[1]}")
    elif not nil.finite:
        open_.append(f"no vanishing tensor power within {nilp_cutoff}")
    for label, r in (("fd of M on the left", fd_left), ("pd of M on the right", pd_right)):
        if r.infinite:
            failures.append(f"{label} is infinite")
        elif r.unknown:
            open_.append(f"{label} unknown")
    if witness is not None:
        failures.append(f"Tor_{witness[0]}(M, M^(x){witness[1]}) != 0")
    elif cond["pass"] is None and pd_right.finite and nil.finite:
        open_.append("Tor table has unknown cells")

    n = _bound_from_powers(power_fd) if nil.finite else None
    n_co = _bound_from_powers(power_pd) if nil.finite else None
    if failures:
        verdict, reason = "NotPerfect", "; ".join(failures + open_)
    elif open_:
        verdict, reason = "Unknown", "; ".join(open_)
    elif n is None or n_co is None:
        verdict, reason = "Unknown", "pd of a tensor power unknown"
    else:
        verdict, reason = "Perfect", ""

    coperfect = {"derived": verdict == "Perfect", "spot_check": None}
    if verdict == "Perfect":
        coperfect["spot_check"] = _coperfect_spot_check(m, pows, power_pd, res_cutoff, seed)
    return PerfectReport(nil, fd_left, pd_right, power_fd, power_pd, table, cond, n, n_co,
                         coperfect, verdict, reason, pows)


def _coperfect_spot_check(m, pows, power_pd, res_cutoff, seed):
    """Ext^i(M^(x)j, Hom(M, D Gamma)) = 0 for i >= 1; the range stops at pd of M^(x)j."""
    gamma = m.right_algebra
    hom_mi, _ = md.hom_from_bimodule(m, md.injective_cogenerator(gamma))
    for j, (t, r) in enumerate(zip(pows, power_pd), start=1):
        top = _degree_bound(r)
        dims = hm.ext_dims(t.as_right, hom_mi, top, res_cutoff, seed)
        for i in range(1, top + 1):
            if dims[i] != 0:
                return False
    return True


# --- F-projectivity -------------------------------------------------------------------

@dataclass
class FProjectiveResult:
    passed: bool | None
    table: dict  # (i, j) -> dim Tor_i(X, M^(x)j)
    first_failure: tuple | None
    symmetric: dict  # (i, j) -> dim Tor_i(F^j X, M), j >= 0
    equivalence_ok: bool
    closure_ok: bool | None

    def to_json(self):
        return {
            "pass": self.passed,
            "table": {f"{i},{j}": v for (i, j), v in sorted(self.table.items())},
            "first_failure": list(self.first_failure) if self.first_failure else None,
            "symmetric": {f"{i},{j}": v for (i, j), v in sorted(self.symmetric.items())},
            "equivalence_ok": self.equivalence_ok,
            "closure_ok": self.closure_ok,
        }


def _tor_table(x, pows, top, cutoff, seed):
    table = {}
    for j, t in enumerate(pows, start=1):
        dims = hm.tor_dims(x, t, top, cutoff, seed)
        for i in range(1, top + 1):
            table[(i, j)] = dims[i]
    return table


def _verdict(table):
    bad = next((k for k, v in sorted(table.items()) if v), None)
    if bad is not None:
        return False, bad
    if any(v is None for v in table.values()):
        return None, None
    return True, None


def f_projective_test(x, m, report, res_cutoff=None, seed=0):
    """Tor_i(X, M^(x)j) = 0 for i, j >= 1, together with the equivalent form
    Tor_i(F^j X, M) = 0 (j >= 0) and closure of F-projectives under F."""
    pows = report.powers
    top = max((_degree_bound(r) for r in report.power_fd_left), default=0)
    table = _tor_table(x, pows, top, res_cutoff, seed)
    passed, first = _verdict(table)

    sym = {}
    fx = x
    images = []
    for j in range(len(pows) + 1):
        if j:
            fx = md.tensor_over_algebra(fx, m)
            images.append(fx)
        dims = hm.tor_dims(fx, m, top, res_cutoff, seed) if pows else [fx.dim]
        for i in range(1, top + 1):
            sym[(i, j)] = dims[i]
    sym_pass, _ = _verdict(sym)
    equivalence_ok = passed is None or sym_pass is None or passed == sym_pass

    closure = None
    if passed:
        closure = all(_verdict(_tor_table(y, pows, top, res_cutoff, seed))[0] for y in images)
    return FProjectiveResult(passed, table, first, sym, equivalence_ok, closure)
