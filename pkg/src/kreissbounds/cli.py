"""Command-line interface.

Subcommands
-----------
analyze    read a matrix JSON file (or stdin) and report its resolvent
           quantities as JSON
verify     run inequality checks over generated instances, one CSV/JSON row
           per (instance, inequality); nonzero exit if any check fails
sweep      Cartesian parameter sweep with quantity/bound/fitted-constant
           columns and an optional heatmap figure
gallery    dump a gallery instance as matrix (or rational function) JSON
bernstein  lower-bound search for the Bernstein constants

Exit codes: 0 success, 1 some verify row failed, 2 malformed input/grid,
3 eigensolver non-convergence, 4 hypothesis violation (without --skip-unmet).

CSV columns for `verify` (fixed order):
    inequality_id,n,r,alpha,l,p,norm,lhs,rhs,margin,pass
CSV columns for `sweep` (fixed order):
    family,n,r,alpha,l,norm,seed,P,r_T,rho_alpha,thm3_rhs,rho_alpha_k,
    thm4_fit,rho_strong_l,thm7_fit,sharpness_probe,cot_ref
Floats are written with repr (shortest round-trip), decimal point '.'.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import bounds, gallery, linalg, resolvent
from .bernstein import bernstein_lower_search, conjectured_h2_slope
from .errors import HypothesisViolation, NonConvergence
from .gallery import InstanceSpec
from .heatmap import heatmap_data, render_heatmap
from .records import CSV_COLUMNS
from .resolvent import Iterated, Kreiss, Strong

RATIONAL_IDS = ("bernstein_thmA", "hardy_w")

SWEEP_COLUMNS = ("family", "n", "r", "alpha", "l", "norm", "seed", "P", "r_T",
                 "rho_alpha", "thm3_rhs", "rho_alpha_k", "thm4_fit",
                 "rho_strong_l", "thm7_fit", "sharpness_probe", "cot_ref")


def _fmt(x) -> str:
    if x is None or x == "":
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, str):
        return x
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if math.isnan(x):
        return "nan"
    return repr(x)


def _parse_values(text: str, cast):
    """'2..16' -> range, 'a,b,c' -> list, 'x' -> [x]."""
    text = text.strip()
    if ".." in text and cast is int:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [cast(tok) for tok in text.split(",") if tok != ""]


def _parse_p(tok: str) -> float:
    return math.inf if tok in ("inf", "oo") else float(tok)


def _write_text(args, text: str) -> None:
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _sup_summary(res: resolvent.SupResult) -> dict:
    if math.isinf(res.value):
        return {"value": None, "divergent": True}
    return {
        "value": res.value,
        "divergent": False,
        "argmax": None if res.argmax is None else [res.argmax.real, res.argmax.imag],
        "converged": res.converged,
        "at_infinity": res.at_infinity,
    }


# -- analyze -------------------------------------------------------------------


def _cmd_analyze(args) -> int:
    try:
        if args.input:
            with open(args.input, "r", encoding="utf-8") as fh:
                doc = json.load(fh)
        else:
            doc = json.load(sys.stdin)
        T = linalg.matrix_from_json(doc)
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        spec = linalg.spectrum(T)
    except NonConvergence as exc:
        print(f"error: eigensolver did not converge: {exc}", file=sys.stderr)
        return 3
    norm = args.norm
    P = resolvent.power_bound(T, norm, spec)
    report = {
        "n": T.shape[0],
        "norm": norm,
        "spectral_radius": spec.spectral_radius,
        "spectrum": [[z.real, z.imag] for z in spec.eigenvalues],
        "power_bound": ({"value": None, "unbounded": True, "k_attained": P.k_attained,
                         "certified": False} if math.isinf(P.value) else
                        {"value": P.value, "unbounded": False, "k_attained": P.k_attained,
                         "certified": P.certified}),
        "kreiss": _sup_summary(resolvent.sup_weighted_resolvent(T, norm, Kreiss(1.0), spec)),
        "kreiss_alpha": {},
        "strong": {},
        "lemma2_samples": None,
    }
    for alpha in (0.25, 0.5, 0.75):
        res = resolvent.sup_weighted_resolvent(T, norm, Kreiss(alpha), spec)
        report["kreiss_alpha"][str(alpha)] = _sup_summary(res)
    for l in (1, 2, 3):
        res = resolvent.sup_weighted_resolvent(T, norm, Strong(l), spec)
        report["strong"][str(l)] = _sup_summary(res)
    if spec.spectral_radius < 1.0 - 1e-10 and math.isfinite(P.value):
        samples = []
        for mod in (1.25, 2.0, 3.0):
            lam = mod * complex(math.cos(0.3), math.sin(0.3))
            for l in (1, 2, 3):
                bound = resolvent.lemma2_bound(T, lam, l, norm, spec, P.value)
                direct = resolvent._point_norm(T, lam, l, norm)
                samples.append({"lambda": [lam.real, lam.imag], "l": l,
                                "bound": bound, "resolvent_norm": direct})
        report["lemma2_samples"] = samples
    if args.plot:
        thetas, ss, vals = heatmap_data(T, Kreiss(1.0), norm)
        render_heatmap(args.plot, thetas, ss, vals,
                       title=f"(|lambda|-1) ||R(lambda)||, n={T.shape[0]}, {norm}")
    _write_text(args, json.dumps(report, indent=2) + "\n")
    return 0


# -- instance generation ---------------------------------------------------------


def _family_instances(args):
    """Yield dicts: matrix/rational instance + per-instance params."""
    family = args.family
    if family and family.lstrip().startswith("{"):
        spec_obj = InstanceSpec.from_json(family)
        built = spec_obj.build()
        item = {"family": spec_obj.kind, "n": spec_obj.n, "seed": spec_obj.seed,
                "r": spec_obj.params.get("r")}
        if spec_obj.kind == "random_rational":
            item["rational"] = built
        else:
            item["matrix"] = built
            item["spec"] = spec_obj.spectrum()
        yield item
        return

    if family not in gallery.KINDS:
        raise ValueError(f"unknown family {family!r}")
    ns = _parse_values(args.n, int) if args.n else [4]
    rs = _parse_values(args.r, float) if args.r else [None]
    trials = args.trials
    deterministic = family in ("jordan_nilpotent", "cot_matrix", "mobius_of_nilpotent")
    for n in ns:
        for r in rs:
            for trial in range(trials):
                seed = (args.seed, n, trial)
                item = {"family": family, "n": n, "r": r, "seed": args.seed + trial}
                if family == "jordan_nilpotent":
                    item["matrix"] = gallery.jordan_nilpotent(n)
                    item["spec"] = gallery.known_spectrum(family, n, {})
                elif family == "cot_matrix":
                    item["matrix"] = gallery.cot_matrix(n)
                    item["spec"] = gallery.known_spectrum(family, n, {})
                elif family == "mobius_of_nilpotent":
                    rr = 0.5 if r is None else r
                    item["matrix"] = gallery.mobius_of_nilpotent(n, rr)
                    item["spec"] = gallery.known_spectrum(family, n, {"r": rr})
                    item["r"] = rr
                elif family == "bidiagonal":
                    rr = 0.5 if r is None else r
                    rng = np.random.default_rng(seed)
                    pts = gallery._random_spectrum_diag(n, rr, rng)
                    item["matrix"] = gallery.bidiagonal(pts)
                    item["spec"] = linalg.Spectrum.from_eigenvalues(pts)
                    item["r"] = rr
                elif family == "random_contraction":
                    item["matrix"] = gallery.random_contraction(
                        n, seed, args.norm, args.allow_unit_radius)
                elif family == "random_spectrum":
                    rr = 0.9 if r is None else r
                    item["matrix"] = gallery.random_spectrum(n, rr, seed)
                    item["spec"] = gallery.known_spectrum(
                        family, n, {"r": rr, "seed": seed})
                    item["r"] = rr
                elif family == "random_rational":
                    rr = 0.5 if r is None else r
                    item["rational"] = gallery.random_rational(n, rr, seed)
                    item["r"] = rr
                yield item
                if deterministic:
                    break


# -- verify ----------------------------------------------------------------------


def _cmd_verify(args) -> int:
    ids = [tok for tok in args.ids.split(",") if tok]
    for iid in ids:
        if iid not in bounds.INEQUALITY_IDS:
            print(f"error: unknown inequality id {iid!r}", file=sys.stderr)
            return 2
    alphas = _parse_values(args.alpha, float) if args.alpha else [None]
    ls = _parse_values(args.l, int) if args.l else [None]
    ps = [_parse_p(tok) for tok in args.p.split(",")] if args.p else [None]

    records = []
    try:
        instances = list(_family_instances(args))
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    unmet = 0
    for item in instances:
        for iid in ids:
            for alpha in alphas:
                for l in ls:
                    for p in ps:
                        params = {"n": item["n"]}
                        if item.get("r") is not None:
                            params["r"] = item["r"]
                        if alpha is not None:
                            params["alpha"] = alpha
                        if l is not None:
                            params["l"] = l
                        if p is not None:
                            params["p"] = p
                        if iid == "thm3_sharpness":
                            params.setdefault("alpha", 0.5)
                            params.setdefault("r", 0.9)
                        try:
                            if iid in RATIONAL_IDS:
                                if "rational" not in item:
                                    print(f"error: {iid} needs --family random_rational",
                                          file=sys.stderr)
                                    return 2
                                rec = bounds.verify(iid, rational=item["rational"],
                                                    params=params)
                            elif iid == "thm3_sharpness":
                                rec = bounds.verify(iid, params=params)
                            else:
                                if "matrix" not in item:
                                    print(f"error: {iid} needs a matrix family",
                                          file=sys.stderr)
                                    return 2
                                rec = bounds.verify(iid, matrix=item["matrix"],
                                                    norm=args.norm, params=params,
                                                    spec=item.get("spec"))
                        except HypothesisViolation as exc:
                            if args.skip_unmet:
                                unmet += 1
                                print(f"skipped ({iid}, n={item['n']}): {exc}",
                                      file=sys.stderr)
                                continue
                            print(f"error: hypothesis violation for {iid}: {exc}",
                                  file=sys.stderr)
                            return 4
                        rec.params.setdefault("norm", args.norm if "matrix" in item else "")
                        records.append(rec)

    if args.format == "json":
        docs = [{"inequality_id": r.inequality_id, "lhs": r.lhs,
                 "rhs": (None if math.isinf(r.rhs) else r.rhs),
                 "margin": (None if math.isinf(r.margin) else r.margin),
                 "pass": r.passed, "params": _json_params(r.params)} for r in records]
        _write_text(args, json.dumps(docs, indent=2) + "\n")
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for r in records:
            writer.writerow(r.csv_row())
        _write_text(args, buf.getvalue())
    if any(not r.passed for r in records):
        return 1
    return 0


def _json_params(params: dict) -> dict:
    out = {}
    for k, v in params.items():
        if isinstance(v, float) and math.isinf(v):
            out[k] = "inf"
        else:
            out[k] = v
    return out


# -- sweep -----------------------------------------------------------------------


def _cmd_sweep(args) -> int:
    alphas = _parse_values(args.alpha, float) if args.alpha else [None]
    ls = _parse_values(args.l, int) if args.l else [None]
    try:
        instances = list(_family_instances(args))
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if not instances:
        print("error: empty sweep grid", file=sys.stderr)
        return 2
    if any("matrix" not in item for item in instances):
        print("error: sweep requires a matrix family", file=sys.stderr)
        return 2

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SWEEP_COLUMNS)
    for item in instances:
        T = item["matrix"]
        spec = item.get("spec") or linalg.spectrum(T)
        n = item["n"]
        P = resolvent.power_bound(T, args.norm, spec).value
        r_T = spec.spectral_radius
        for alpha in alphas:
            for l in ls:
                row = {"family": item["family"], "n": n, "r": item.get("r"),
                       "alpha": alpha, "l": l, "norm": args.norm,
                       "seed": item.get("seed"), "P": P, "r_T": r_T}
                if alpha is not None:
                    val = resolvent.sup_weighted_resolvent(T, args.norm, Kreiss(alpha), spec).value
                    row["rho_alpha"] = val
                    if r_T < 1.0 and math.isfinite(P):
                        row["thm3_rhs"] = bounds.thm3_constant(n, r_T, alpha) * P
                if alpha is not None and l is not None and r_T < 1.0 - 1e-9 and math.isfinite(P):
                    val = resolvent.sup_weighted_resolvent(T, args.norm, Iterated(l, alpha), spec).value
                    row["rho_alpha_k"] = val
                    row["thm4_fit"] = val / (n ** l * (1.0 - r_T) ** (alpha - 1.0) * P)
                if l is not None:
                    val = resolvent.sup_weighted_resolvent(T, args.norm, Strong(l), spec).value
                    row["rho_strong_l"] = val
                    if math.isfinite(P):
                        row["thm7_fit"] = val / (n ** (l + 0.5) * P)
                if item["family"] == "mobius_of_nilpotent" and alpha is not None and item.get("r"):
                    rec = bounds.thm3_sharpness_probe(n, alpha, item["r"])
                    row["sharpness_probe"] = rec.params["probe"]
                    row["cot_ref"] = rec.params["cot"]
                writer.writerow([_fmt(row.get(col, "")) for col in SWEEP_COLUMNS])
    if args.plot:
        item = instances[0]
        alpha = alphas[0]
        l = ls[0]
        if alpha is not None:
            weight, label = Kreiss(alpha), f"(|lambda|-1)^{alpha} ||R||"
        elif l is not None:
            weight, label = Strong(l), f"dist^{l} ||R^{l}||"
        else:
            weight, label = Kreiss(1.0), "(|lambda|-1) ||R||"
        thetas, ss, vals = heatmap_data(item["matrix"], weight, args.norm)
        render_heatmap(args.plot, thetas, ss, vals,
                       title=f"{label}, {item['family']} n={item['n']}")
    _write_text(args, buf.getvalue())
    return 0


# -- gallery ----------------------------------------------------------------------


def _cmd_gallery(args) -> int:
    try:
        instances = list(_family_instances(args))
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    item = instances[0]
    if "rational" in item:
        doc = item["rational"].to_json()
    else:
        doc = linalg.matrix_to_json(item["matrix"])
    _write_text(args, json.dumps(doc, indent=1) + "\n")
    return 0


# -- bernstein ----------------------------------------------------------------------


def _cmd_bernstein(args) -> int:
    n = int(args.n) if args.n else 4
    r = float(args.r) if args.r else 0.5
    p = _parse_p(args.p) if args.p else math.inf
    res = bernstein_lower_search(n, r, p, budget=args.budget, seed=args.seed,
                                 mode=args.mode)
    doc = {
        "n": n, "r": r, "p": ("inf" if p == math.inf else p), "mode": args.mode,
        "best_ratio": res.best_ratio,
        "upper_bound": ("inf" if math.isinf(res.upper_bound) else res.upper_bound),
        "evaluations": res.evaluations,
        "ratio_over_n": res.best_ratio / n,
        "conjectured_h2_slope": conjectured_h2_slope(r),
        "witness": res.witness.to_json(),
    }
    _write_text(args, json.dumps(doc, indent=2) + "\n")
    return 0


# -- parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="kreissbounds", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, family=True):
        p.add_argument("--norm", choices=linalg.NORM_KINDS, default="l2")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--output", default=None)
        if family:
            p.add_argument("--family", default="random_contraction",
                           help="gallery family name or an InstanceSpec JSON object")
            p.add_argument("--n", default=None, help="int, comma list, or lo..hi range")
            p.add_argument("--r", default=None, help="float or comma list")
            p.add_argument("--trials", type=int, default=1)
            p.add_argument("--allow-unit-radius", action="store_true",
                           help="generate exact contractions (norm 1) instead of 0.999")

    p = sub.add_parser("analyze", help="resolvent quantities of one matrix file")
    p.add_argument("--input", default=None, help="matrix JSON path (default: stdin)")
    p.add_argument("--plot", default=None, help="heatmap output path (.svg/.png)")
    common(p, family=False)
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("verify", help="run inequality checks, CSV/JSON out")
    p.add_argument("--ids", required=True, help="comma list of inequality ids: "
                   + ",".join(bounds.INEQUALITY_IDS))
    p.add_argument("--alpha", default=None, help="float or comma list")
    p.add_argument("--l", default=None, help="int, comma list, or lo..hi range")
    p.add_argument("--p", default=None, help="float/'inf' or comma list")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--skip-unmet", action="store_true",
                   help="skip instances violating an inequality hypothesis")
    common(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("sweep", help="Cartesian sweep with quantity columns")
    p.add_argument("--alpha", default=None, help="float or comma list")
    p.add_argument("--l", default=None, help="int, comma list, or lo..hi range")
    p.add_argument("--plot", default=None, help="heatmap of the first instance")
    common(p)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("gallery", help="dump one gallery instance as JSON")
    p.add_argument("--dump", action="store_true", help="write the instance (default)")
    common(p)
    p.set_defaults(func=_cmd_gallery)

    p = sub.add_parser("bernstein", help="Bernstein constant lower-bound search")
    p.add_argument("--n", default=None)
    p.add_argument("--r", default=None)
    p.add_argument("--p", default=None)
    p.add_argument("--budget", type=int, default=2000)
    p.add_argument("--mode", choices=("h1", "h2"), default="h1")
    common(p, family=False)
    p.set_defaults(func=_cmd_bernstein)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NonConvergence as exc:
        print(f"error: eigensolver did not converge: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    sys.exit(main())
