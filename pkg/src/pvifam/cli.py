"""Command-line driver: every verification as a subcommand with text or JSON reports."""

from __future__ import annotations

import argparse
import json
import os
import platform
import re
import sys
import time
from concurrent.futures import ProcessPoolExecutor

import gmpy2

from . import __version__
from .exactalg import backend_name, to_text

SCHEMA_VERSION = 1
STATUSES = ("MATCH", "CORRECTED", "PASS", "INFO", "FAIL")


def _q(x):
    return str(x)


def _quad(v):
    return [_q(x) for x in v]


# -- work items (module level so they pickle) --------------------------------

def item_table1(key):
    from .tables import audit_row
    v = audit_row(key)
    status = v.status
    if status != "FAIL" and v.residue_zero is False:
        status = "FAIL"
    return {"item": key, "status": status, "detail": v.to_json()}


def item_table3(face, seeds):
    from .ramification import INF, face_partitions
    from .tables import face_stabilizer, load_tables
    row = load_tables().table3[face]
    got = face_partitions(face, seeds=range(1, seeds + 1))
    printed = {0: row["t0"], 1: row["t1"], INF: row["tinf"]}
    stab = face_stabilizer(face).label
    ok = all(got[k] == printed[k] for k in printed) and stab == row["stabilizer"]
    return {
        "item": face,
        "status": "PASS" if ok else "FAIL",
        "detail": {
            "seeds": seeds,
            "partitions": {str(k): str(got[k]) for k in (0, 1, INF)},
            "printed": {str(k): str(printed[k]) for k in (0, 1, INF)},
            "stabilizer": stab,
            "printed_stabilizer": row["stabilizer"],
        },
    }


def item_span(key):
    from .tables import affine_span, audited_subspace, load_tables, membership, verify_generation
    pts = load_tables().special_points(key)
    inside = membership(key)
    ok = verify_generation(key) and all(inside.values())
    sub = audited_subspace(key)
    return {
        "item": key,
        "status": "PASS" if ok else "FAIL",
        "detail": {
            "points": [_quad(p) for p in pts],
            "span": affine_span(pts).as_pattern(),
            "audited": None if sub is None else sub.as_pattern(),
            "all_points_inside": all(inside.values()),
        },
    }


def item_pf(row, variant):
    from .picardfuchs import (
        HISTORICAL_4C, derive_row, herfurtner, orbit_matches, weierstrass_invariants,
    )
    from .pvi import pvi_residue
    sol = derive_row(row, variant)
    disc, delta = weierstrass_invariants(herfurtner(row))
    matches = orbit_matches(sol)
    residue = not pvi_residue(sol.curve, sol.alpha)
    notes = []
    if row == 4 and variant == "pf1" and any(m.key == "4C" for m in matches):
        notes.append(HISTORICAL_4C)
    corrected = sorted({m.key for m in matches if m.curve_source == "corrected"})
    if corrected:
        notes.append("matched through the audited curve of " + ", ".join(corrected))
    ok = residue and matches and all(m.residue_zero for m in matches)
    return {
        "item": f"row{row}/{variant}",
        "status": "PASS" if ok else "FAIL",
        "detail": {
            "discriminant": to_text(disc),
            "delta": to_text(delta),
            "p0": to_text(sol.ode.p0),
            "scheme": [{"locus": l, "exponents": list(e), "kind": k} for l, e, k in sol.scheme.rows()],
            "lambda": sol.renorm.lam_text(),
            "t": sol.renorm.t_text(),
            "ordering": {k: str(p.locus) for k, p in sol.renorm.ordering.items()},
            "curve": to_text(sol.curve),
            "alpha": _quad(sol.alpha),
            "residue_zero": residue,
            "named": sorted({m.key for m in matches}),
            "matches": [{"key": m.key, "alpha": _quad(m.alpha), "element": m.element,
                         "curve": m.curve_source} for m in matches],
            "notes": notes,
        },
    }


def item_4a_parametrization():
    from .exactalg import RatFunc, parse_poly
    from .picardfuchs import derive_row, eliminate_parameter, reparametrization
    from .tables import load_tables
    lam = RatFunc(parse_poly("c^2 - c + 1"), parse_poly("c^2*(2 - c)"))
    t = RatFunc(parse_poly("2*c - 1"), parse_poly("c^3*(2 - c)"))
    sol = derive_row(4, "pf2")
    try:
        a_c, w_c = reparametrization(sol.renorm, lam, t)
        found = True
    except ValueError:
        a_c = w_c = None
        found = False
    curve = eliminate_parameter(lam, t)
    same = curve.equal_up_to_unit(load_tables().table1["4A"]["curve"])
    return {
        "item": "4A-parametrization",
        "status": "PASS" if found and same else "FAIL",
        "detail": {"lambda": str(lam), "t": str(t), "a": str(a_c), "w": str(w_c),
                   "curve": to_text(curve), "equals_4A": same},
    }


def item_calibration():
    from .picardfuchs import calibrate_convention
    chosen, counts = calibrate_convention()
    return {"item": "alpha-convention", "status": "PASS" if chosen else "FAIL",
            "detail": {"chosen": chosen, "points_reached": counts}}


def item_stabilizers():
    from .tables import stabilizer_checks
    checks = stabilizer_checks()
    bad = [c for c in checks if not (c.solution_ok and c.equation_ok)]
    return {
        "item": "stabilizers",
        "status": "PASS" if not bad else "FAIL",
        "detail": {
            "checked": len(checks),
            "mismatches": [{"table": c.table, "key": c.key, "block": c.block,
                            "printed_solution": c.printed_solution, "solution": c.solution,
                            "printed_equation": c.printed_equation,
                            "pointwise": list(c.pointwise), "setwise": c.setwise} for c in bad],
        },
    }


def item_orbit(key):
    from .symmetry import curve_orbit, quadruple_action, stabilizer_of_curve
    from .tables import SOLUTION_KEYS, audited_curve, audited_subspace, load_tables
    ds = load_tables()
    curve = audited_curve(key)
    sub = audited_subspace(key)
    images = []
    for g, img in sorted(curve_orbit(curve).items(), key=lambda kv: (len(kv[0].word), kv[0].word)):
        name = next((k for k in SOLUTION_KEYS if img.equal_up_to_unit(audited_curve(k))), None)
        images.append({"element": str(g), "curve": to_text(img), "name": name,
                       "base_point": None if sub is None else _quad(quadruple_action(g, sub.base))})
    stab = stabilizer_of_curve(curve)
    names = sorted({i["name"] for i in images if i["name"]})
    return {"item": key, "status": "PASS" if all(i["name"] for i in images) else "FAIL",
            "detail": {"stabilizer": stab.label, "orbit_names": names, "images": images,
                       "printed_curve": to_text(ds.table1[key]["curve"])}}


def item_belyi(beta):
    from .pvi import build_curve_poly
    from .ramification import belyi_check
    res = belyi_check(build_curve_poly(beta))
    return {"item": "beta=" + ",".join(map(str, beta)), "status": "INFO",
            "detail": {"belyi": res.belyi, "extra_factor": to_text(res.extra_factor),
                       "discriminant": to_text(res.discriminant)}}


def item_okamoto():
    from .tables import okamoto_remark_check
    ok = okamoto_remark_check()
    return {"item": "okamoto", "status": "PASS" if ok else "FAIL", "detail": {}}


# -- scheduling ---------------------------------------------------------------

def _timed(fn, args):
    t0 = time.perf_counter()
    try:
        out = fn(*args)
    except Exception as exc:  # a crashing item is a FAIL verdict, not a crash of the run
        out = {"item": "/".join(map(str, args)) or fn.__name__, "status": "FAIL",
               "detail": {"error": f"{type(exc).__name__}: {exc}"}}
    out["seconds"] = round(time.perf_counter() - t0, 3)
    return out


def run_items(items, jobs=1):
    """Evaluate ``(group, fn, args)`` items; results are sorted by ``(group, item)``."""
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            futs = [(g, ex.submit(_timed, fn, args)) for g, fn, args in items]
            results = [(g, f.result()) for g, f in futs]
    else:
        results = [(g, _timed(fn, args)) for g, fn, args in items]
    out = []
    for g, r in results:
        r["group"] = g
        out.append(r)
    return sorted(out, key=lambda r: (r["group"], r["item"]))


def _items(args):
    from .tables import SOLUTION_KEYS, load_tables
    ds = load_tables()
    cmd = args.command
    if cmd == "verify-table1":
        return [("table1", item_table1, (k,)) for k in sorted(ds.table1)]
    if cmd == "verify-table3":
        return [("table3", item_table3, (f, args.seeds)) for f in sorted(ds.table3)]
    if cmd == "verify-span":
        return [("span", item_span, (k,)) for k in SOLUTION_KEYS]
    if cmd == "derive-pf":
        items = [("pf", item_pf, (args.row, args.system))]
        if args.row == 4 and args.system == "pf2":
            items.append(("pf", item_4a_parametrization, ()))
        return items
    if cmd == "s4":
        if args.orbit not in ds.table1 or args.orbit[0] == "1":
            raise SystemExit(_usage_error(f"unknown solution key {args.orbit!r}"))
        return [("s4", item_orbit, (args.orbit,))]
    if cmd == "belyi":
        return [("belyi", item_belyi, (args.beta,))]
    if cmd == "okamoto-check":
        return [("okamoto", item_okamoto, ())]
    if cmd == "all":
        ns = argparse.Namespace(seeds=args.seeds)
        items = []
        for sub in ("verify-table1", "verify-table3", "verify-span"):
            ns.command = sub
            items += _items(ns)
        items += [("pf", item_pf, (r, v)) for r in range(1, 6) for v in ("pf1", "pf2")]
        items += [("pf", item_4a_parametrization, ()), ("pf", item_calibration, ()),
                  ("s4", item_stabilizers, ()), ("okamoto", item_okamoto, ())]
        return items
    raise SystemExit(_usage_error(f"unknown command {cmd!r}"))


def _usage_error(msg):
    print(f"pvifam: error: {msg}", file=sys.stderr)
    return 2


def toolchain():
    return {"pvifam": __version__, "python": platform.python_version(),
            "gmpy2": gmpy2.version(), "kernels": backend_name()}


def build_report(command, results, with_timing=True):
    counts = {s: sum(r["status"] == s for r in results) for s in STATUSES}
    verdicts = [{k: r[k] for k in ("group", "item", "status", "detail")} for r in results]
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "toolchain": toolchain(),
        "verdicts": verdicts,
        "summary": {s.lower(): n for s, n in counts.items()},
    }
    if with_timing:
        report["timing"] = {f"{r['group']}/{r['item']}": r["seconds"] for r in results}
    return report


def _color(status, stream):
    if os.environ.get("NO_COLOR") is not None or not stream.isatty():
        return status
    code = {"FAIL": "31", "CORRECTED": "33", "MATCH": "32", "PASS": "32"}.get(status)
    return f"\033[{code}m{status}\033[0m" if code else status


def _readable(text):
    """Compact form of canonical polynomial text for terminal output."""
    text = re.sub(r"(?<![\d/])1 \* ", "", text)
    return text.replace(" + -", " - ").replace(" * ", "*")


def _brief(r):
    d = r["detail"]
    g = r["group"]
    if "error" in d:
        return d["error"]
    if g == "table1":
        s = f"printed {d['printed']}  solved {d['solved']}"
        if d["corrected_constants"]:
            s += "  constants " + ", ".join(f"slot {c['slot']}: {c['printed']} -> {c['solved']}"
                                             for c in d["corrected_constants"])
        if d["corrected_curve"]:
            s += f"  curve -> {d['corrected_curve']}"
        return s
    if g == "table3":
        p = d["partitions"]
        return f"t=0 {p['0']}  t=1 {p['1']}  t=inf {p['inf']}  stabilizer {d['stabilizer']}"
    if g == "span":
        return f"span {d['span']}  audited {d['audited']}"
    if g == "pf" and "scheme" in d:
        lines = [f"curve {d['curve']}", f"alpha ({', '.join(d['alpha'])})",
                 f"lambda = {d['lambda']}", f"t = {d['t']}"]
        lines += [f"{s['locus']}: ({', '.join(s['exponents'])}) {s['kind']}" for s in d["scheme"]]
        lines.append("named " + " ".join(d["named"]))
        lines += d["notes"]
        return "\n    ".join(lines)
    if g == "pf" and "equals_4A" in d:
        return f"a = {d['a']}  w = {d['w']}  curve {d['curve']}"
    if g == "pf":
        return f"chosen {d['chosen']}  " + ", ".join(f"{k} {n}" for k, n in sorted(d["points_reached"].items()))
    if g == "s4" and "images" in d:
        return f"stabilizer {d['stabilizer']}  orbit {' '.join(d['orbit_names'])}"
    if g == "s4":
        bad = [f"{m['table']}/{m['key']}/{m['block']}" for m in d["mismatches"]]
        return f"{d['checked']} checked" + (f"  mismatched {' '.join(bad)}" if bad else "")
    if g == "belyi":
        return "Belyi" if d["belyi"] else f"not Belyi, extra factor {d['extra_factor']}"
    return ""


def render_text(report, stream=sys.stdout):
    out = [f"{report['command']}  (pvifam {report['toolchain']['pvifam']}, "
           f"kernels {report['toolchain']['kernels']})"]
    for v in report["verdicts"]:
        out.append(f"  {v['group']:8s} {v['item']:18s} {_color(v['status'], stream)}  {_readable(_brief(v))}")
    s = report["summary"]
    out.append("summary: " + ", ".join(f"{k} {n}" for k, n in s.items() if n))
    if s["corrected"]:
        out.append(f"warning: {s['corrected']} corrected verdict(s)")
    return "\n".join(out)


def _common(defaults):
    """Output options, accepted before or after the subcommand."""
    p = argparse.ArgumentParser(add_help=False)
    kw = {} if defaults else {"default": argparse.SUPPRESS}
    p.add_argument("--format", choices=("text", "json"), **(kw or {"default": "text"}))
    p.add_argument("--jobs", type=int, help="worker processes", **(kw or {"default": 1}))
    p.add_argument("--no-timing", action="store_true",
                   help="omit wall times so reports are byte-identical across runs", **kw)
    return p


def make_parser():
    p = argparse.ArgumentParser(prog="pvifam", description=__doc__, parents=[_common(True)])
    sub = p.add_subparsers(dest="command", required=True)
    common = [_common(False)]

    def add(name, help):
        return sub.add_parser(name, help=help, parents=common)

    add("verify-table1", "audit the rows of Table 1")
    t3 = add("verify-table3", "ramification partitions of the 10 faces")
    t3.add_argument("--seeds", type=int, default=5)
    add("verify-span", "span of the special points per solution")
    pf = add("derive-pf", "run the Picard-Fuchs pipeline on one deformation")
    pf.add_argument("--row", type=int, choices=range(1, 6), required=True)
    pf.add_argument("--system", choices=("pf1", "pf2"), required=True)
    s4 = add("s4", "S4 orbit of a solution")
    s4.add_argument("--orbit", required=True, metavar="KEY")
    be = add("belyi", "Belyi test of the curve N_beta")
    be.add_argument("--beta", required=True, type=_beta)
    add("okamoto-check", "parameter-level Okamoto image of 1A in 2A")
    al = add("all", "every verification")
    al.add_argument("--seeds", type=int, default=5)
    return p


def _beta(text):
    from .exactalg import to_rational
    try:
        vals = tuple(to_rational(x.strip()) for x in text.split(","))
    except (ValueError, TypeError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc
    if len(vals) != 4 or not any(vals):
        raise argparse.ArgumentTypeError("beta needs four numbers, not all zero")
    return vals


def main(argv=None):
    args = make_parser().parse_args(argv)
    if args.jobs < 1:
        return _usage_error("--jobs must be positive")
    if getattr(args, "seeds", 1) < 1:
        return _usage_error("--seeds must be positive")
    results = run_items(_items(args), args.jobs)
    report = build_report(args.command, results, with_timing=not args.no_timing)
    if args.format == "json":
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        print(render_text(report))
    return 1 if report["summary"]["fail"] else 0


if __name__ == "__main__":
    sys.exit(main())
