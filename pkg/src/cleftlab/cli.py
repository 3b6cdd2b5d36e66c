"""Command-line driver.  Exit codes: 0 pass, 1 property violation, 2 input error,
3 inconclusive."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import files
from . import homology as hm
from . import modules as md
from . import verify
from .algebra import validate_algebra
from .errors import CleftLabError, Inconclusive, InputError
from .gorenstein import gorenstein_report, transfer_report
from .perfect import perfect_report
from .singularity import ehi_probe, random_pairs, sing_equiv_report


def _window(text):
    try:
        lo, hi = (int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("expected k0,k1") from None
    return lo, hi


def _common():
    c = argparse.ArgumentParser(add_help=False)
    c.add_argument("--p", type=int, default=None, help="field modulus")
    c.add_argument("--cutoff-res", type=int, default=None, help="resolution cutoff")
    c.add_argument("--cutoff-nilp", type=int, default=16, help="nilpotency cutoff")
    c.add_argument("--ext-window", type=_window, default=(1, 8), help="Ext degree window k0,k1")
    c.add_argument("--seed", type=int, default=None)
    c.add_argument("--jobs", type=int, default=1)
    c.add_argument("--out", default=None, help="write the JSON report here")
    c.add_argument("--format", choices=("json", "text"), default="text")
    return c


def build_parser():
    common = _common()
    ap = argparse.ArgumentParser(prog="cleftlab", description="Homological checks for cleft extensions of finite-dimensional algebras.")
    sub = ap.add_subparsers(dest="group", required=True)

    g = sub.add_parser("algebra").add_subparsers(dest="cmd", required=True)
    for name in ("check", "info"):
        g.add_parser(name, parents=[common]).add_argument("algebra", help="algebra JSON or curated id")

    g = sub.add_parser("bimodule").add_subparsers(dest="cmd", required=True)
    g.add_parser("perfect", parents=[common]).add_argument("bimodule", help="bimodule JSON")

    g = sub.add_parser("construct").add_subparsers(dest="cmd", required=True)
    for name in files.CONSTRUCTIONS:
        g.add_parser(name, parents=[common]).add_argument("manifest", help="construction manifest JSON")

    g = sub.add_parser("homology").add_subparsers(dest="cmd", required=True)
    for name in ("pd", "id"):
        g.add_parser(name, parents=[common]).add_argument("module")
    for name in ("ext", "tor"):
        q = g.add_parser(name, parents=[common])
        q.add_argument("module")
        q.add_argument("other", help="second module (for tor: a bimodule file)")

    g = sub.add_parser("gorenstein").add_subparsers(dest="cmd", required=True)
    g.add_parser("check", parents=[common]).add_argument("algebra")
    g.add_parser("transfer", parents=[common]).add_argument("manifest")

    g = sub.add_parser("singularity").add_subparsers(dest="cmd", required=True)
    g.add_parser("check", parents=[common]).add_argument("manifest")
    q = g.add_parser("ehi", parents=[common])
    q.add_argument("manifest")
    q.add_argument("--pairs", type=int, default=20)

    q = sub.add_parser("export", parents=[common], help="write a curated suite as JSON files")
    q.add_argument("suite", help="curated suite id (E2, E3, E4, E6)")
    q.add_argument("directory")

    g = sub.add_parser("verify").add_subparsers(dest="cmd", required=True)
    q = g.add_parser("suite", parents=[common])
    q.add_argument("config", nargs="?", help="suite config JSON")
    q.add_argument("--curated", action="store_true", help="run the built-in cases E2, E3, E4, E6")
    return ap


def _emit(args, report, text):
    if args.out:
        files.save_json(report, args.out)
    if args.format == "json":
        sys.stdout.write(files.dumps(report))
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _dimres_code(r):
    return 3 if r.unknown else 0


def _seed(args):
    """CLEFTLAB_SEED, when set, overrides --seed."""
    cfg = verify.SuiteConfig(seed=args.seed or 0)
    return verify.apply_seed_env(cfg).seed


def _manifest_suite(args):
    return files.load_manifest(args.manifest, args.p, args.cutoff_nilp)


def cmd_algebra(args):
    a = files.load_algebra(args.algebra, p=args.p)
    if args.cmd == "check":
        bad = validate_algebra(a)
        text = "valid" if not bad else "\n".join(bad)
        _emit(args, {"algebra": a.name, "violations": bad}, text)
        return 1 if bad else 0
    bad = validate_algebra(a)
    if bad:
        _emit(args, {"violations": bad}, "\n".join(bad))
        return 1
    gl = hm.global_dimension(a, args.cutoff_res)
    rep = {"name": a.name, "dim": a.dim, "p": a.p, "vertices": a.r,
           "radical_layers": list(a.rad_power_dims), "global_dimension": gl.to_json()}
    text = "\n".join(f"{k}: {v}" for k, v in rep.items())
    _emit(args, rep, text)
    return 0


def cmd_bimodule(args):
    m = files.load_module(args.bimodule, args.p)
    if not isinstance(m, md.Bimodule):
        raise InputError("file has no left_action; not a bimodule")
    pr = perfect_report(m, args.cutoff_res, args.cutoff_nilp, _seed(args))
    text = (f"verdict: {pr.verdict}\nnilpotency: {pr.nilpotency}\nfd_left: {pr.fd_left}\n"
            f"pd_right: {pr.pd_right}\nn: {pr.n}\n" + (f"reason: {pr.reason}\n" if pr.reason else ""))
    _emit(args, pr.to_json(), text)
    return 3 if pr.verdict == "Unknown" else 0


def cmd_construct(args):
    raw = files._read(args.manifest)
    if raw.get("construct") != args.cmd:
        raise InputError(f"manifest constructs {raw.get('construct')!r}, not {args.cmd!r}")
    suite = files.suite_from_manifest(raw, Path(args.manifest).parent, args.p, args.cutoff_nilp)
    rep = {"algebra": files.algebra_to_json(suite.lam), "suite": files.suite_descriptor(suite)}
    _emit(args, rep, f"constructed {suite.lam.name or 'Lambda'} of dimension {suite.lam.dim}")
    return 0


def cmd_homology(args):
    x = files.load_module(args.module, args.p)
    if isinstance(x, md.Bimodule):
        x = x.as_right
    seed = _seed(args)
    if args.cmd in ("pd", "id"):
        fn = hm.proj_dimension if args.cmd == "pd" else hm.inj_dimension
        r = fn(x, args.cutoff_res, seed)
        _emit(args, {args.cmd: r.to_json()}, f"{args.cmd} = {r}")
        return _dimres_code(r)
    k0, k1 = args.ext_window
    if args.cmd == "ext":
        y = files.load_module(args.other, args.p, algebra=x.algebra)
        dims = hm.ext_dims(x, y.as_right if isinstance(y, md.Bimodule) else y, k1, args.cutoff_res, seed)
    else:
        n = files.load_module(args.other, args.p, left_algebra=x.algebra)
        if not isinstance(n, md.Bimodule):
            raise InputError("tor needs a bimodule file (left_action over the module's algebra)")
        dims = hm.tor_dims(x, n, k1, args.cutoff_res, seed)
    table = {str(i): dims[i] for i in range(k0, k1 + 1)}
    _emit(args, {args.cmd: table}, "\n".join(f"{args.cmd}^{i}: {v}" for i, v in table.items()))
    return 3 if any(v is None for v in table.values()) else 0


def cmd_gorenstein(args):
    seed = _seed(args)
    if args.cmd == "check":
        a = files.load_algebra(args.algebra, p=args.p)
        r = gorenstein_report(a, args.cutoff_res, seed)
        text = (f"verdict: {r.verdict}\nid_right: {r.id_right}\nid_left: {r.id_left}\n"
                f"spli proxy: {r.spli_proxy}")
        _emit(args, r.to_json(), text)
        return 3 if r.verdict == "Unknown" else 0
    suite = _manifest_suite(args)
    t = transfer_report(suite, args.cutoff_res, args.cutoff_nilp, seed)
    text = f"Gorenstein transfer: {t.verdict}" + (f" ({t.reason})" if t.reason else "")
    text += f"\nsilp chain: {t.silp_chain}\nspli chain: {t.spli_chain}"
    _emit(args, t.to_json(), text)
    return {"PASS": 0, "Not-Applicable": 0, "FAIL": 1, "Inconclusive": 3}[t.verdict]


def cmd_singularity(args):
    seed = _seed(args)
    suite = _manifest_suite(args)
    if args.cmd == "check":
        r = sing_equiv_report(suite, cutoff=args.cutoff_res, seed=seed)
        lines = [f"criterion: {r.criterion.criterion}"] + [f"{n}: {s}" for n, s in r.consistency_checks]
        lines.append(f"conclusion: {r.conclusion}")
        _emit(args, r.to_json(), "\n".join(lines))
        if r.failed:
            return 1
        return 3 if r.criterion.criterion == "Unknown" else 0
    pairs = random_pairs(suite.lam, args.pairs, seed)
    e = ehi_probe(suite, pairs, args.ext_window, cutoff=args.cutoff_res, seed=seed)
    body = dict(e, rows=[row.to_json() for row in e["rows"]], violations=[list(v) for v in e["violations"]])
    text = (f"Ext agreement: {e['verdict']}\nthreshold: {e['thresholds'].get('threshold')}\n"
            f"agreement from: {[row.agree_from for row in e['rows']]}")
    _emit(args, body, text)
    return {"PASS": 0, "Not-Applicable": 0, "FAIL": 1, "Inconclusive": 3}[e["verdict"]]


def cmd_verify(args):
    if args.config:
        path = Path(args.config)
        cfg = verify.config_from_json(files._read(path), path.parent)
    elif args.curated:
        cfg = verify.curated_config()
    else:
        raise InputError("give a suite config or --curated")
    if args.p is not None:
        cfg.p = args.p
    if args.cutoff_res is not None:
        cfg.cutoff_res = args.cutoff_res
    if args.cutoff_nilp != 16:
        cfg.cutoff_nilp = args.cutoff_nilp
    if args.ext_window != (1, 8):
        cfg.ext_window = args.ext_window
    if args.seed is not None:
        cfg.seed = args.seed
    verify.apply_seed_env(cfg)
    code, bundle = verify.run_suite(cfg, args.jobs)
    _emit(args, bundle, verify.summary_text(bundle))
    return code


def cmd_export(args):
    path = files.export_curated(args.suite, args.directory, args.p or files.DEFAULT_P)
    print(path)
    return 0


COMMANDS = {"export": cmd_export, "algebra": cmd_algebra, "bimodule": cmd_bimodule, "construct": cmd_construct,
            "homology": cmd_homology, "gorenstein": cmd_gorenstein, "singularity": cmd_singularity,
            "verify": cmd_verify}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return COMMANDS[args.group](args)
    except (InputError, KeyError, json.JSONDecodeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except CleftLabError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 3 if isinstance(exc, Inconclusive) else 1


if __name__ == "__main__":
    sys.exit(main())
