"""Singularity-category checks: whether the derived functors of F land in finite
projective dimension (with a report built on that), plus a probe of Ext agreement
along e in high degrees."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import homology as hm
from . import modules as md
from .cleft import functor_F, functor_e
from .errors import GeneratorReductionError
from .gorenstein import derived_bounds, gorenstein_report, gproj_test, n_F
from .perfect import perfect_report

GUARD_SAMPLES = 10


@dataclass
class LsgFResult:
    criterion: str  # "Vanishes" | "Fails" | "Unknown" | "Not-Applicable"
    witness: tuple | None = None  # (simple index, degree)
    table: dict = field(default_factory=dict)  # (t, i) -> DimResult of pd Tor_i(S_t, M)
    guard: dict = field(default_factory=dict)
    reason: str = ""

    def to_json(self):
        return {
            "criterion": self.criterion,
            "witness": list(self.witness) if self.witness else None,
            "table": {f"{t},{i}": r.to_json() for (t, i), r in sorted(self.table.items())},
            "guard": dict(self.guard),
            "reason": self.reason,
        }


def _derived_F_pds(x, m, n, cutoff, seed):
    """pd of Tor_i(x, M) for 0 <= i <= n."""
    mods = hm.tor_modules(x, m, n, cutoff, seed)
    return [hm.proj_dimension(t, cutoff, seed) if t is not None else hm.DimResult("Unknown", cutoff=cutoff)
            for t in mods]


def lsgf_check(suite, report=None, cutoff=None, seed=0, guard_samples=GUARD_SAMPLES):
    """Decide whether every L_iF(S), S simple, has finite projective dimension.  The same
    is then checked on seeded random Gamma-modules as a guard on the reduction to simples."""
    pr = report or perfect_report(suite.m, cutoff, seed=seed)
    if pr.verdict != "Perfect":
        return LsgFResult("Not-Applicable", reason=f"kernel bimodule {pr.verdict}")
    gamma, m, n = suite.gamma, suite.m, max(pr.n, 1)
    table = {}
    witness, unknown = None, False
    for t in range(gamma.r):
        for i, r in enumerate(_derived_F_pds(md.simple_module(gamma, t), m, n, cutoff, seed)):
            table[(t, i)] = r
            if r.infinite and witness is None:
                witness = (t, i)
            unknown = unknown or r.unknown
    if witness is not None:
        crit = "Fails"
    elif unknown:
        crit = "Unknown"
    else:
        crit = "Vanishes"

    rng = np.random.default_rng(seed)
    bad, checked = [], 0
    for k in range(guard_samples):
        x = md.random_module(gamma, rng)
        pds = _derived_F_pds(x, m, n, cutoff, seed)
        checked += 1
        if any(r.infinite for r in pds):
            bad.append(k)
    guard = {"samples": checked, "seed": seed, "infinite": bad, "passed": not (crit == "Vanishes" and bad)}
    if not guard["passed"]:
        raise GeneratorReductionError(f"random Gamma-modules {bad} violate a criterion all simples pass")
    return LsgFResult(crit, witness, table, guard)


@dataclass
class SingEquivReport:
    criterion: LsgFResult
    consistency_checks: list  # (name, "pass" | "fail" | "unknown" | "skipped")
    gldim_biconditional: str
    conclusion: str
    seed: int

    @property
    def failed(self):
        return [name for name, st in self.consistency_checks if st == "fail"]

    def to_json(self):
        return {
            "criterion": self.criterion.to_json(),
            "consistency_checks": [list(c) for c in self.consistency_checks],
            "gldim_biconditional": self.gldim_biconditional,
            "conclusion": self.conclusion,
            "seed": self.seed,
        }


def _status(flags):
    flags = list(flags)
    if False in flags:
        return "fail"
    if None in flags:
        return "unknown"
    return "pass"


def sing_equiv_report(suite, lambda_samples=None, report=None, cutoff=None, seed=0, n_random=10):
    pr = report or perfect_report(suite.m, cutoff, seed=seed)
    crit = lsgf_check(suite, pr, cutoff, seed)
    if crit.criterion == "Not-Applicable":
        return SingEquivReport(crit, [], "skipped", "hypotheses not met", seed)
    lam, gamma = suite.lam, suite.gamma
    samples = list(lambda_samples) if lambda_samples is not None else \
        [md.simple_module(lam, t) for t in range(lam.r)] + [md.regular_module(lam)]
    rng = np.random.default_rng(seed)
    samples += [md.random_module(lam, rng) for _ in range(n_random)]

    nf = n_F(suite, cutoff)
    eq_flags, bound_flags = [], []
    for x in samples:
        d = hm.proj_dimension(x, cutoff, seed)
        de = hm.proj_dimension(functor_e(suite, x), cutoff, seed)
        if d.unknown or de.unknown:
            eq_flags.append(None)
            continue
        eq_flags.append(d.finite == de.finite)
        if d.finite and de.finite and nf.finite:
            lo, hi = derived_bounds(de.value, nf.value, pr.s, pr.n)
            bound_flags.append(lo <= d.value <= hi)
    checks = [("pd reflection", _status(eq_flags)), ("pd bounds", _status(bound_flags))]

    gl_l = hm.global_dimension(lam, cutoff)
    gl_g = hm.global_dimension(gamma, cutoff)
    if crit.criterion != "Vanishes":
        gl = "skipped"
    elif gl_l.unknown or gl_g.unknown:
        gl = "unknown"
    else:
        gl = "pass" if gl_l.finite == gl_g.finite else "fail"
    checks.append(("gldim biconditional", gl))

    gr_l, gr_g = gorenstein_report(lam, cutoff, seed), gorenstein_report(gamma, cutoff, seed)
    if gr_l.verdict == gr_g.verdict == "Gorenstein":
        flags = []
        gsamples = [md.simple_module(gamma, t) for t in range(gamma.r)] + [md.regular_module(gamma)]
        for y in gsamples:
            if gproj_test(y, gr_g, cutoff):
                r = hm.proj_dimension(functor_F(suite, y), cutoff, seed)
                flags.append(None if r.unknown else r.finite)
        checks.append(("F on Gproj has finite pd", _status(flags)))
    else:
        checks.append(("F on Gproj has finite pd", "skipped"))

    if crit.criterion == "Vanishes":
        conclusion = "e: D_sg(Lambda) -> D_sg(Gamma) is an equivalence"
        meta = suite.meta
        if meta.get("kind") == "triangular":
            b = meta["B"]
            if hm.global_dimension(b, cutoff).finite:
                conclusion += f"; D_sg(Lambda) ~ D_sg(A x B) ~ D_sg(A) with A = {meta['A'].name}"
    elif crit.criterion == "Fails":
        conclusion = "e does not induce an equivalence of singularity categories"
    else:
        conclusion = "undecided"
    return SingEquivReport(crit, checks, gl, conclusion, seed)


# --- eventually homological isomorphism ------------------------------------------------

def _agreement_from(a, b, k0):
    """Least k such that a and b agree from k to the end of the window (None if the last
    entries differ)."""
    start = None
    for off in range(len(a) - 1, -1, -1):
        if a[off] != b[off]:
            break
        start = k0 + off
    return start


def ehi_thresholds(suite, report, cutoff=None):
    """Degree thresholds from which e must induce Ext isomorphisms under either set of
    hypotheses (None when a hypothesis cannot be certified)."""
    pr = report
    n, s = max(pr.n, 1), pr.s
    gamma = suite.gamma
    nf = n_F(suite, cutoff)
    # sup pd F(X) over all X: composition factors of X (x) M live where M e_t != 0
    support = [t for t in range(gamma.r) if suite.m.act_right(gamma.idempotents[t]).any()]
    nf_all = hm.dim_max(hm.proj_dimension(md.simple_module(gamma, t), cutoff) for t in support)
    out = {"n": n, "s": s, "n_F": nf.to_json(), "n_F_all": nf_all.to_json(), "a": None, "b": None}
    if nf.finite and nf_all.finite:
        # sup pd G(X) via the reflection bound applied to e G = F e
        n_a = max(nf_all.value, nf.value + n - 1) + (s - 1) * (nf.value + 1)
        gl = hm.global_dimension(suite.lam, cutoff)
        if gl.finite:
            n_a = min(n_a, gl.value)
        out["n_A"] = n_a
        out["a"] = max(nf.value + 1, n_a + 2) + n - 1
    if nf_all.finite:
        out["b"] = nf_all.value + s + n - 1
    cands = [v for v in (out["a"], out["b"]) if v is not None]
    out["threshold"] = min(cands) if cands else None
    return out


@dataclass
class EHIRow:
    lam_dims: list
    gam_dims: list
    agree_from: int | None
    stable: bool

    def to_json(self):
        return {"lambda": self.lam_dims, "gamma": self.gam_dims, "agree_from": self.agree_from,
                "stable": self.stable}


def ehi_probe(suite, pairs, window=(1, 8), report=None, cutoff=None, seed=0):
    """Compare dim Ext^k_Lambda(X, Y) with dim Ext^k_Gamma(eX, eY) on a degree window."""
    pr = report or perfect_report(suite.m, cutoff, seed=seed)
    k0, k1 = window
    thr = ehi_thresholds(suite, pr, cutoff) if pr.verdict == "Perfect" else {"threshold": None}
    rows, violations, unknown = [], [], False
    for idx, (x, y) in enumerate(pairs):
        a = hm.ext_dims(x, y, k1 + 2, cutoff, seed)
        b = hm.ext_dims(functor_e(suite, x), functor_e(suite, y), k1 + 2, cutoff, seed)
        if any(v is None for v in a + b):
            unknown = True
        start = _agreement_from(a[k0:k1 + 1], b[k0:k1 + 1], k0)
        wider = _agreement_from(a[k0:k1 + 3], b[k0:k1 + 3], k0)
        stable = start is None or wider == start
        rows.append(EHIRow(a[k0:k1 + 1], b[k0:k1 + 1], start, stable))
        t = thr["threshold"]
        if t is not None:
            for k in range(max(t, k0), k1 + 1):
                if a[k] != b[k]:
                    violations.append((idx, k))
                    break
    if violations:
        verdict = "FAIL"
    elif unknown:
        verdict = "Inconclusive"
    elif thr["threshold"] is None:
        verdict = "Not-Applicable"
    else:
        verdict = "PASS"
    return {"window": [k0, k1], "thresholds": thr, "rows": rows, "violations": violations,
            "verdict": verdict, "seed": seed}


def random_pairs(lam, count, seed=0, max_dim=None):
    rng = np.random.default_rng(seed)
    return [(md.random_module(lam, rng, max_dim), md.random_module(lam, rng, max_dim)) for _ in range(count)]
