"""Suite runner: per case, validation, perfectness, construction identities, Gorenstein
transfer, singular equivalence, Ext agreement and dimension reflection."""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import curated
from . import files
from . import modules as md
from .algebra import validate_algebra
from .cleft import validate_theta, ThetaExtensionData, verify_cleft_identities
from .errors import CleftLabError, InputError
from .exactlinalg import DEFAULT_P, is_prime
from .gorenstein import n_F, reflection_sample, transfer_report
from .perfect import perfect_report
from .singularity import ehi_probe, random_pairs, sing_equiv_report

PASS, FAIL, UNKNOWN, NA = "PASS", "FAIL", "INCONCLUSIVE", "NOT-APPLICABLE"
CHECKS = ("validation", "perfect", "identities", "transfer", "singularity", "ehi", "reflection")
LABELS = {
    "validation": "Validation",
    "perfect": "Perfect bimodule",
    "identities": "Cleft identities",
    "transfer": "Gorenstein transfer",
    "singularity": "Singular equivalence",
    "ehi": "Ext agreement",
    "reflection": "pd reflection",
    "reflection_stated": "pd reflection (stated bound)",
}
EXIT = {PASS: 0, NA: 0, FAIL: 1, UNKNOWN: 3}
SEED_ENV = "CLEFTLAB_SEED"


@dataclass
class SuiteConfig:
    p: int = DEFAULT_P
    cutoff_res: int | None = None
    cutoff_nilp: int = 16
    ext_window: tuple = (1, 8)
    seed: int = 0
    cases: list = field(default_factory=list)  # dicts with "id" and a source
    checks: tuple = CHECKS
    samples: int = 20
    base: str = "."

    def validate(self):
        if not is_prime(self.p):
            raise InputError(f"p = {self.p} is not prime")
        if self.cutoff_res is not None and self.cutoff_res < 1 or self.cutoff_nilp < 1:
            raise InputError("cutoffs must be >= 1")
        k0, k1 = self.ext_window
        if not 0 <= k0 <= k1:
            raise InputError("ext window must satisfy 0 <= k0 <= k1")
        unknown = set(self.checks) - set(CHECKS)
        if unknown:
            raise InputError(f"unknown checks: {sorted(unknown)}")
        ids = [c.get("id") for c in self.cases]
        if any(i is None for i in ids) or len(set(ids)) != len(ids):
            raise InputError("every case needs a unique id")
        for c in self.cases:
            for key in ("manifest", "algebra"):
                if key in c and c[key] not in curated.ALGEBRAS and not (Path(self.base) / c[key]).exists():
                    raise InputError(f"case {c['id']}: {key} {c[key]!r} not found")

    def to_json(self):
        return {"p": self.p, "cutoff_res": self.cutoff_res, "cutoff_nilp": self.cutoff_nilp,
                "ext_window": list(self.ext_window), "seed": self.seed, "checks": list(self.checks),
                "samples": self.samples, "cases": sorted((dict(c) for c in self.cases), key=lambda c: c["id"])}


def config_from_json(d, base="."):
    cut = d.get("cutoffs", {})
    cfg = SuiteConfig(
        p=int(d.get("p", DEFAULT_P)),
        cutoff_res=cut.get("resolution", d.get("cutoff_res")),
        cutoff_nilp=int(cut.get("nilpotency", d.get("cutoff_nilp", 16))),
        ext_window=tuple(cut.get("ext_window", d.get("ext_window", (1, 8)))),
        seed=int(d.get("seed", 0)),
        cases=list(d.get("cases", [])),
        checks=tuple(d.get("checks", CHECKS)),
        samples=int(d.get("samples", 20)),
        base=str(base),
    )
    return cfg


def curated_config(**kw):
    cases = [{"id": name, "suite": name} for name in ("E2", "E3", "E4", "E6")]
    return SuiteConfig(cases=cases, **kw)


def apply_seed_env(cfg):
    if os.environ.get(SEED_ENV):
        try:
            cfg.seed = int(os.environ[SEED_ENV])
        except ValueError:
            raise InputError(f"{SEED_ENV} must be an integer") from None
    return cfg


# --- per-case checks ---------------------------------------------------------------------

def _algebra_case(case, cfg):
    a = files.load_algebra(case["algebra"], cfg.base, cfg.p)
    bad = validate_algebra(a)
    return {"validation": {"status": FAIL if bad else PASS, "violations": bad}}


def _load_suite(case, cfg):
    if "suite" in case:
        if case["suite"] not in curated.SUITES:
            raise InputError(f"unknown curated suite {case['suite']!r}")
        return curated.SUITES[case["suite"]](cfg.p)
    return files.load_manifest(Path(cfg.base) / case["manifest"], cfg.p, cfg.cutoff_nilp)


def _reflection(suite, pr, cfg):
    rng = np.random.default_rng(cfg.seed)
    nf = n_F(suite, cfg.cutoff_res)
    rows, excluded = [], []
    eq_ok = derived_ok = stated_ok = True
    for k in range(cfg.samples):
        x = md.random_module(suite.lam, rng)
        r = reflection_sample(suite, x, nf, pr.s, pr.n, "pd", cfg.cutoff_res)
        if r.equivalence is None:
            excluded.append(k)
            continue
        rows.append(r.to_json())
        eq_ok &= r.equivalence
        if r.stated_ok is not None:
            stated_ok &= r.stated_ok
            derived_ok &= r.derived_ok
    main = {"status": PASS if eq_ok and derived_ok else FAIL, "n_F": nf.to_json(), "m": pr.s,
            "n": pr.n, "samples": rows, "excluded_unknown": excluded}
    stated = {"status": PASS if stated_ok else FAIL,
              "violations": [i for i, r in enumerate(rows) if r["stated_ok"] is False]}
    return main, stated


def _suite_case(case, cfg, suite=None):
    out = {}
    checks = set(cfg.checks)
    cut = cfg.cutoff_res
    suite = suite or _load_suite(case, cfg)
    if "validation" in checks:
        bad = [f"Gamma: {v}" for v in validate_algebra(suite.gamma)]
        bad += [f"theta data: {v}" for v in validate_theta(ThetaExtensionData.trivial(suite.gamma, suite.m))]
        bad += [f"Lambda: {v}" for v in validate_algebra(suite.lam)]
        bad += [f"suite: {v}" for v in suite.check()]
        out["validation"] = {"status": FAIL if bad else PASS, "violations": bad}
    pr = perfect_report(suite.m, cut, cfg.cutoff_nilp, cfg.seed)
    if "perfect" in checks:
        out["perfect"] = {"status": UNKNOWN if pr.verdict == "Unknown" else PASS, "report": pr.to_json()}
    if "identities" in checks:
        res = verify_cleft_identities(suite, curated.gamma_samples(suite.gamma), curated.lambda_samples(suite.lam))
        out["identities"] = {"status": FAIL if res["failures"] else PASS, **res}
    gated = pr.verdict == "Perfect"
    if "transfer" in checks:
        t = transfer_report(suite, cut, cfg.cutoff_nilp, cfg.seed, report=pr)
        status = {"PASS": PASS, "FAIL": FAIL, "Not-Applicable": NA, "Inconclusive": UNKNOWN}[t.verdict]
        body = t.to_json()
        body.pop("perfect")
        out["transfer"] = {"status": status, "report": body}
    if "singularity" in checks:
        r = sing_equiv_report(suite, report=pr, cutoff=cut, seed=cfg.seed)
        crit = r.criterion.criterion
        if crit == "Not-Applicable":
            status = NA
        elif r.failed:
            status = FAIL
        elif crit == "Unknown" or any(st == "unknown" for _, st in r.consistency_checks):
            status = UNKNOWN
        else:
            status = PASS
        out["singularity"] = {"status": status, "report": r.to_json()}
    if "ehi" in checks:
        if gated:
            pairs = random_pairs(suite.lam, cfg.samples, cfg.seed)
            e = ehi_probe(suite, pairs, cfg.ext_window, pr, cut, cfg.seed)
            status = {"PASS": PASS, "FAIL": FAIL, "Inconclusive": UNKNOWN, "Not-Applicable": NA}[e["verdict"]]
            body = dict(e, rows=[row.to_json() for row in e["rows"]], violations=[list(v) for v in e["violations"]])
            out["ehi"] = {"status": status, "report": body}
        else:
            out["ehi"] = {"status": NA}
    if "reflection" in checks:
        if gated:
            out["reflection"], out["reflection_stated"] = _reflection(suite, pr, cfg)
        else:
            out["reflection"] = {"status": NA}
    return out


def _worst(statuses):
    statuses = list(statuses)
    if FAIL in statuses:
        return FAIL
    if UNKNOWN in statuses:
        return UNKNOWN
    return PASS


def run_case(case, cfg):
    try:
        if "algebra" in case:
            checks = _algebra_case(case, cfg)
        else:
            checks = _suite_case(case, cfg)
    except InputError as exc:
        return {"id": case["id"], "status": "INPUT-ERROR", "error": str(exc), "checks": {}}
    except CleftLabError as exc:
        return {"id": case["id"], "status": FAIL, "error": f"{type(exc).__name__}: {exc}", "checks": {}}
    return {"id": case["id"], "status": _worst(c["status"] for c in checks.values()), "checks": checks}


def _run_one(args):
    return run_case(*args)


def run_suite(cfg, jobs=1):
    """(exit code, bundle).  Exit 0 all pass, 1 violation, 2 input error, 3 inconclusive."""
    cfg.validate()
    cases = sorted(cfg.cases, key=lambda c: c["id"])
    if jobs > 1 and len(cases) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_run_one, [(c, cfg) for c in cases]))
    else:
        results = [run_case(c, cfg) for c in cases]
    results.sort(key=lambda r: r["id"])
    statuses = [r["status"] for r in results]
    if "INPUT-ERROR" in statuses:
        code = 2
    else:
        code = EXIT[_worst(statuses)]
    bundle = {"config": cfg.to_json(), "cases": results, "exit_code": code}
    return code, bundle


def summary_text(bundle):
    lines = []
    for r in bundle["cases"]:
        lines.append(f"case {r['id']}: {r['status']}")
        if "error" in r:
            lines.append(f"  error: {r['error']}")
        for key, label in LABELS.items():
            c = r["checks"].get(key)
            if c is None:
                continue
            extra = ""
            if key == "perfect":
                rep = c["report"]
                extra = f" ({rep['verdict']}, s = {rep['nilpotency_index'].get('value', 'none')}, n = {rep['n']})"
            elif key == "validation" and c["violations"]:
                extra = f" ({c['violations'][0]})"
            lines.append(f"  {label}: {c['status']}{extra}")
    lines.append(f"exit code: {bundle['exit_code']}")
    return "\n".join(lines) + "\n"
