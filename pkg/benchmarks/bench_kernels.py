"""Compare the compiled and pure-Python polynomial kernels.

Run from the repository root::

    python3 benchmarks/bench_kernels.py [--repeat N] [--json]

Each workload is timed on both backends (best of ``--repeat`` runs) and
the results of the two backends are checked for equality.
"""

import argparse
import json
import time

from pvifam.exactalg import discriminant, use_backend
from pvifam.exactalg.kernels import compiled_available
from pvifam.picardfuchs import derive, herfurtner
from pvifam.pvi import build_curve_poly, pvi_residue, solve_alpha_subspace, symbolic_curve_poly
from pvifam.tables import load_tables


def _curve(key):
    return load_tables().table1[key]["curve"]


WORKLOADS = {
    "mul N_beta^4": lambda: build_curve_poly((1, 2, 3, 9)) ** 4,
    "mul symbolic N^3": lambda: symbolic_curve_poly() ** 3,
    "disc 5A": lambda: discriminant(_curve("5A"), "lam"),
    "residue 4A": lambda: pvi_residue(_curve("4A"), (1, 1, 1, 1)),
    "alpha subspace 3D": lambda: solve_alpha_subspace(_curve("3D")),
    "pipeline row 1 pf2": lambda: derive(herfurtner(1), "pf2").curve,
    "pipeline row 4 pf2": lambda: derive(herfurtner(4), "pf2").curve,
}


def best_of(fn, repeat):
    best, value = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        value = fn()
        best = min(best, time.perf_counter() - t0)
    return best, value


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)
    if not compiled_available():
        raise SystemExit("compiled kernels are not built; run `pip install -e . --no-build-isolation`")
    load_tables()
    rows = []
    for name, fn in WORKLOADS.items():
        use_backend("python")
        t_py, v_py = best_of(fn, args.repeat)
        use_backend("compiled")
        t_c, v_c = best_of(fn, args.repeat)
        rows.append({"workload": name, "python_s": round(t_py, 4), "compiled_s": round(t_c, 4),
                     "speedup": round(t_py / t_c, 2), "same_result": v_py == v_c})
    if args.json:
        print(json.dumps(rows, indent=2))
        return
    print(f"{'workload':22s} {'python [s]':>11s} {'compiled [s]':>13s} {'speedup':>8s}  same")
    for r in rows:
        print(f"{r['workload']:22s} {r['python_s']:11.4f} {r['compiled_s']:13.4f} "
              f"{r['speedup']:7.2f}x  {r['same_result']}")


if __name__ == "__main__":
    main()
