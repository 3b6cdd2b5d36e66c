"""Iwanaga-Gorenstein verdicts, the transfer of Gorensteinness along a cleft extension,
Gorenstein-projective membership and projective/injective dimension reflection along e."""
from __future__ import annotations

from dataclasses import dataclass

from . import homology as hm
from . import modules as md
from .cleft import CleftSuite, ThetaExtensionData, functor_F, functor_Fp, functor_e, functor_l, \
    functor_q, theta_extension
from .errors import InputError, NotCertifiedGorenstein
from .perfect import perfect_report

INF = "inf"


@dataclass
class GorensteinReport:
    algebra: object
    id_right: hm.DimResult
    id_left: hm.DimResult
    silp_proxy: hm.DimResult
    spli_proxy: hm.DimResult
    verdict: str  # "Gorenstein" | "NotGorenstein" | "Unknown"

    def to_json(self):
        return {
            "algebra": self.algebra.name,
            "dim": self.algebra.dim,
            "id_right": self.id_right.to_json(),
            "id_left": self.id_left.to_json(),
            "silp_proxy": self.silp_proxy.to_json(),
            "spli_proxy": self.spli_proxy.to_json(),
            "verdict": self.verdict,
        }


def gorenstein_report(lam, cutoff=None, seed=0):
    id_right = hm.inj_dimension(md.regular_module(lam), cutoff, seed)
    # the left regular module is the regular right module of the opposite algebra
    id_left = hm.inj_dimension(md.regular_module(lam.opposite), cutoff, seed)
    spli = hm.proj_dimension(md.injective_cogenerator(lam), cutoff, seed)
    if id_right.finite and id_left.finite:
        verdict = "Gorenstein"
    elif id_right.infinite or id_left.infinite:
        verdict = "NotGorenstein"
    else:
        verdict = "Unknown"
    return GorensteinReport(lam, id_right, id_left, id_right, spli, verdict)


def _val(r):
    return r.value if r.finite else INF


def _chain(base, mid, n, s):
    """[base - n + 1, mid, base + n + s]; holds when the ends bracket mid, or when
    both base and mid are infinite."""
    if base.unknown or mid.unknown:
        return [None, None, None], None
    if base.infinite or mid.infinite:
        return [INF, _val(mid), INF], base.infinite and mid.infinite
    lo, hi = base.value - n + 1, base.value + n + s
    return [lo, mid.value, hi], lo <= mid.value <= hi


@dataclass
class TransferReport:
    gamma: GorensteinReport | None
    lam: GorensteinReport | None
    perfect: object
    biconditional: bool | None
    silp_chain: list
    spli_chain: list
    silp_ok: bool | None
    spli_ok: bool | None
    verdict: str  # "PASS" | "FAIL" | "Not-Applicable" | "Inconclusive"
    reason: str = ""

    def to_json(self):
        return {
            "gamma": self.gamma.to_json() if self.gamma else None,
            "lambda": self.lam.to_json() if self.lam else None,
            "perfect": self.perfect.to_json(),
            "biconditional": self.biconditional,
            "silp_chain": self.silp_chain,
            "spli_chain": self.spli_chain,
            "verdict": self.verdict,
            "reason": self.reason,
        }


def transfer_report(suite, cutoff=None, nilp_cutoff=16, seed=0, report=None):
    """Check that Lambda is Gorenstein iff Gamma is, and the silp/spli inequality chains,
    for a cleft suite (or theta-extension data) whose kernel bimodule is perfect."""
    if isinstance(suite, ThetaExtensionData):
        suite = theta_extension(suite)
    if not isinstance(suite, CleftSuite):
        raise InputError("transfer_report needs a cleft suite or theta-extension data")
    pr = report or perfect_report(suite.m, cutoff, nilp_cutoff, seed)
    if pr.verdict != "Perfect":
        return TransferReport(None, None, pr, None, [], [], None, None, "Not-Applicable",
                              f"kernel bimodule {pr.verdict}: {pr.reason}")
    g = gorenstein_report(suite.gamma, cutoff, seed)
    lam = gorenstein_report(suite.lam, cutoff, seed)
    # the bounds need n >= 1 (F = 0 satisfies the vanishing condition for n = 1)
    n, n_co, s = max(pr.n, 1), max(pr.n_coperfect, 1), pr.s
    silp_chain, silp_ok = _chain(g.silp_proxy, lam.silp_proxy, n, s)
    spli_chain, spli_ok = _chain(g.spli_proxy, lam.spli_proxy, n_co, s)
    if "Unknown" in (g.verdict, lam.verdict):
        bic = None
    else:
        bic = (g.verdict == "Gorenstein") == (lam.verdict == "Gorenstein")
    flags = (bic, silp_ok, spli_ok)
    if False in flags:
        verdict = "FAIL"
        bad = [name for name, f in zip(("biconditional", "silp chain", "spli chain"), flags) if f is False]
        reason = "violated: " + ", ".join(bad)
    elif None in flags:
        verdict, reason = "Inconclusive", "some dimension unknown"
    else:
        verdict, reason = "PASS", ""
    return TransferReport(g, lam, pr, bic, silp_chain, spli_chain, silp_ok, spli_ok, verdict, reason)


# --- Gorenstein projectives -------------------------------------------------------------

def gproj_test(x, report, cutoff=None):
    """Over a certified Gorenstein algebra with id = d: x is Gorenstein projective iff
    Ext^i(x, Lambda) = 0 for 1 <= i <= d."""
    if report.verdict != "Gorenstein" or not report.id_right.finite:
        raise NotCertifiedGorenstein(f"algebra {report.algebra.name!r} is not certified Gorenstein")
    if not md.same_algebra(x.algebra, report.algebra):
        raise InputError("module and report are over different algebras")
    d = report.id_right.value
    if d == 0:
        return True
    dims = hm.ext_dims(x, md.regular_module(report.algebra), d, cutoff)
    if any(v is None for v in dims[1:]):
        from .errors import Inconclusive
        raise Inconclusive("Ext window not computable")
    return all(v == 0 for v in dims[1:])


def gproj_transfer_check(suite, gamma_samples, lambda_samples, g_report, l_report, cutoff=None):
    """Membership of l- and q-images: x in Gproj Gamma => l(x) in Gproj Lambda (and
    conversely), y in Gproj Lambda => q(y) in Gproj Gamma.  Returns a list of failures."""
    fails = []
    for k, x in enumerate(gamma_samples):
        a = gproj_test(x, g_report, cutoff)
        b = gproj_test(functor_l(suite, x), l_report, cutoff)
        if a != b:
            fails.append(f"Gamma sample {k}: Gproj {a} but l-image {b}")
    for k, y in enumerate(lambda_samples):
        if gproj_test(y, l_report, cutoff) and not gproj_test(functor_q(suite, y), g_report, cutoff):
            fails.append(f"Lambda sample {k}: q-image not Gorenstein projective")
    return fails


# --- dimension reflection along e ---------------------------------------------------------

def n_F(suite, cutoff=None):
    """max over vertices t of pd F(e_t Gamma)."""
    g = suite.gamma
    return hm.dim_max(hm.proj_dimension(functor_F(suite, md.projective_summand(g, t)[0]), cutoff)
                      for t in range(g.r))


def n_Fp(suite, cutoff=None):
    """max over vertices t of id F'(I_t) for the indecomposable injectives I_t."""
    g = suite.gamma
    return hm.dim_max(hm.inj_dimension(functor_Fp(suite, md.injective_module(g, t)), cutoff)
                      for t in range(g.r))


def stated_bounds(d_e, nf, m):
    """(d_e - nf, d_e + (m + 1) nf)."""
    return d_e - nf, d_e + (m + 1) * nf


def derived_bounds(d_e, nf, m, n):
    """(d_e - nf, max(d_e, nf + n - 1) + (m - 1)(nf + 1)); valid also when nf = 0."""
    n = max(n, 1)
    return d_e - nf, max(d_e, nf + n - 1) + (m - 1) * (nf + 1)


@dataclass
class ReflectionSample:
    d: hm.DimResult  # dimension over Lambda
    d_e: hm.DimResult  # dimension of e(X) over Gamma
    equivalence: bool | None
    stated: tuple | None
    stated_ok: bool | None
    derived: tuple | None
    derived_ok: bool | None

    def to_json(self):
        return {
            "dim": self.d.to_json(), "dim_e": self.d_e.to_json(), "equivalence": self.equivalence,
            "stated": list(self.stated) if self.stated else None, "stated_ok": self.stated_ok,
            "derived": list(self.derived) if self.derived else None, "derived_ok": self.derived_ok,
        }


def reflection_sample(suite, x, nf, m, n, kind="pd", cutoff=None):
    """Compare pd (or id) of x with that of e(x) and test both bound forms."""
    dim_fn = hm.proj_dimension if kind == "pd" else hm.inj_dimension
    d = dim_fn(x, cutoff)
    d_e = dim_fn(functor_e(suite, x), cutoff)
    if d.unknown or d_e.unknown:
        return ReflectionSample(d, d_e, None, None, None, None, None)
    eq = d.finite == d_e.finite
    if not (d.finite and d_e.finite and nf.finite and m is not None):
        return ReflectionSample(d, d_e, eq, None, None, None, None)
    st = stated_bounds(d_e.value, nf.value, m)
    dv = derived_bounds(d_e.value, nf.value, m, n)
    return ReflectionSample(d, d_e, eq, st, st[0] <= d.value <= st[1], dv, dv[0] <= d.value <= dv[1])
