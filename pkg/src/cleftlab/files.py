"""JSON formats for algebras, modules, bimodules and construction manifests.

Algebra: {"field": {"p": p}, "dim": d, "basis_names": [...], "structure_constants":
[[ [[k, c], ...] for j ] for i ], "unit": [...], "idempotents": [[...]], "radical": [[...]]}.
Module: {"algebra": path-or-id, "dim": n, "action": [n x n per basis element]}; a bimodule
adds "left_action" (and "left_algebra" when the two algebras differ).
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from . import curated
from . import modules as md
from .algebra import make_algebra
from .cleft import (ThetaExtensionData, morita_context_ring, theta_extension, trivial_extension,
                    triangular_matrix_ring, truncated_tensor_ring)
from .errors import InputError
from .exactlinalg import DEFAULT_P, is_prime

CONSTRUCTIONS = ("theta", "trivial", "tensor", "triangular", "morita")


def _read(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from None


def _ints(x, what):
    try:
        return np.array(x, dtype=np.int64)
    except (TypeError, ValueError, OverflowError):
        raise InputError(f"{what}: expected integers") from None


# --- algebras -------------------------------------------------------------------------

def algebra_to_json(a):
    sc = []
    for i in range(a.dim):
        row = []
        for j in range(a.dim):
            nz = np.nonzero(a.C[i, j])[0]
            row.append([[int(k), int(a.C[i, j, k])] for k in nz])
        sc.append(row)
    out = {
        "field": {"p": a.p},
        "dim": a.dim,
        "basis_names": list(a.basis_names),
        "structure_constants": sc,
        "unit": [int(v) for v in a.unit],
        "idempotents": a.idempotents.astype(int).tolist(),
        "radical": a.rad.basis.astype(int).tolist(),
    }
    if a.name:
        out["name"] = a.name
    return out


def algebra_from_json(d, p=None):
    try:
        prime = int(d["field"]["p"]) if p is None else int(p)
        dim = int(d["dim"])
        sc = d["structure_constants"]
        unit = d["unit"]
        idem = d["idempotents"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"algebra file: missing or malformed field {exc}") from None
    if not is_prime(prime):
        raise InputError(f"p = {prime} is not prime")
    if len(sc) != dim or any(len(row) != dim for row in sc):
        raise InputError("structure_constants must be a dim x dim table of sparse lists")
    C = np.zeros((dim, dim, dim), dtype=np.int64)
    for i, row in enumerate(sc):
        for j, entries in enumerate(row):
            for entry in entries:
                k, c = (int(v) for v in entry)
                if not 0 <= k < dim:
                    raise InputError(f"structure constant index {k} out of range at ({i},{j})")
                C[i, j, k] = (C[i, j, k] + c) % prime
    names = d.get("basis_names")
    rad = d.get("radical")
    return make_algebra(prime, C, _ints(unit, "unit"), _ints(idem, "idempotents"), names,
                        None if rad is None else _ints(rad, "radical").reshape(-1, dim), d.get("name", ""))


def load_algebra(ref, base=None, p=None):
    """An algebra from a curated id or a JSON path (relative to base)."""
    if isinstance(ref, dict):
        return algebra_from_json(ref, p)
    if ref in curated.ALGEBRAS:
        return curated.ALGEBRAS[ref](p or DEFAULT_P)
    path = Path(base or ".") / ref
    return algebra_from_json(_read(path), p)


def save_json(obj, path):
    Path(path).write_text(dumps(obj))


def dumps(obj):
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


# --- modules ----------------------------------------------------------------------------

def module_to_json(x, algebra_ref):
    if isinstance(x, md.Bimodule):
        out = {"algebra": algebra_ref, "dim": x.dim, "action": x.right.astype(int).tolist(),
               "left_action": x.left.astype(int).tolist()}
        return out
    return {"algebra": algebra_ref, "dim": x.dim, "action": x.action.astype(int).tolist()}


def _mats(raw, count, n, what):
    a = _ints(raw, what)
    if a.size == 0 and n == 0:
        return np.zeros((count, 0, 0), dtype=np.int64)
    if a.shape != (count, n, n):
        raise InputError(f"{what}: expected shape ({count}, {n}, {n}), got {a.shape}")
    return a


def module_from_json(d, base=None, p=None, algebra=None, left_algebra=None):
    alg = algebra or load_algebra(d["algebra"], base, p)
    n = int(d["dim"])
    act = _mats(d["action"], alg.dim, n, "action") % alg.p
    if "left_action" not in d:
        x = md.RightModule(alg, act, d.get("name", ""))
    else:
        lalg = left_algebra or (load_algebra(d["left_algebra"], base, p) if "left_algebra" in d else alg)
        left = _mats(d["left_action"], lalg.dim, n, "left_action") % alg.p
        x = md.Bimodule(lalg, alg, left, act, d.get("name", ""))
    bad = md.validate_module(x)
    if bad:
        raise InputError("module axioms violated: " + "; ".join(bad[:3]))
    return x


def load_module(path, p=None, algebra=None, left_algebra=None):
    path = Path(path)
    return module_from_json(_read(path), path.parent, p, algebra, left_algebra)


# --- construction manifests ---------------------------------------------------------------

def suite_from_manifest(d, base=None, p=None, nilp_cutoff=16):
    """Build the cleft suite described by a construction manifest."""
    kind = d.get("construct")
    if kind == "curated":
        name = d.get("id")
        if name not in curated.SUITES:
            raise InputError(f"unknown curated suite {name!r}")
        return curated.SUITES[name](p or DEFAULT_P)
    if kind not in CONSTRUCTIONS:
        raise InputError(f"unknown construction {kind!r}")
    base = Path(base or ".")
    name = d.get("name", "")
    if kind in ("triangular", "morita"):
        a = load_algebra(d["A"], base, p)
        b = load_algebra(d["B"], base, p)
        n = load_module(base / d["bimodule"], p, algebra=b, left_algebra=a)
        if kind == "triangular":
            return triangular_matrix_ring(a, b, n, name)
        m = load_module(base / d["bimodule2"], p, algebra=a, left_algebra=b)
        return morita_context_ring(a, b, n, m, d.get("phi"), d.get("psi"), name)
    gamma = load_algebra(d["gamma"], base, p)
    m = load_module(base / d["bimodule"], p, algebra=gamma, left_algebra=gamma)
    if not isinstance(m, md.Bimodule):
        raise InputError("bimodule file lacks left_action")
    if kind == "trivial":
        return trivial_extension(gamma, m, name)
    if kind == "tensor":
        return truncated_tensor_ring(gamma, m, int(d.get("cutoff", nilp_cutoff)), name)
    theta = d.get("theta")
    th = np.zeros((m.dim, m.dim * m.dim), np.int64) if theta is None else _ints(theta, "theta")
    return theta_extension(ThetaExtensionData(gamma, m, th), name)


def load_manifest(path, p=None, nilp_cutoff=16):
    path = Path(path)
    return suite_from_manifest(_read(path), path.parent, p, nilp_cutoff)


def suite_descriptor(suite):
    return {
        "f": suite.f.astype(int).tolist(),
        "g": suite.g.astype(int).tolist(),
        "m_basis": [int(i) for i in range(suite.gamma.dim, suite.lam.dim)],
    }


def export_curated(name, outdir, p=DEFAULT_P):
    """Write a curated suite as algebra, bimodule and manifest files; returns the manifest path."""
    if name not in curated.SUITES:
        raise InputError(f"unknown curated suite {name!r}")
    suite = curated.SUITES[name](p)
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    meta = suite.meta
    if meta.get("kind") == "triangular":
        save_json(algebra_to_json(meta["A"]), out / "A.json")
        save_json(algebra_to_json(meta["B"]), out / "B.json")
        n = meta["N"]
        save_json(dict(module_to_json(n, "B.json"), left_algebra="A.json"), out / "N.json")
        manifest = {"construct": "triangular", "A": "A.json", "B": "B.json", "bimodule": "N.json", "name": name}
    elif meta.get("kind") == "trivial":
        save_json(algebra_to_json(suite.gamma), out / "gamma.json")
        save_json(module_to_json(suite.m, "gamma.json"), out / "M.json")
        manifest = {"construct": "trivial", "gamma": "gamma.json", "bimodule": "M.json", "name": name}
    else:
        raise InputError(f"export of {meta.get('kind')!r} suites is not supported")
    path = out / "manifest.json"
    save_json(manifest, path)
    return path
