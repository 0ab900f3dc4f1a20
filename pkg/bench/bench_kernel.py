#!/usr/bin/env python3
"""Benchmark the compiled polynomial kernel against the pure-Python fallback.

Runs a handful of representative workloads (raw kernel products plus whole
verification passes) in two subprocesses, one per backend, and prints a
comparison table.  Usage:

    python3 bench/bench_kernel.py [--repeat N]
"""

import argparse
import json
import os
import subprocess
import sys

WORKLOADS = """
import time, json
from fractions import Fraction
import random

from jetpoisson import backend
from jetpoisson import poissonlie as pl, quantum as qt, density as dn
from jetpoisson.coeffpoly import LaurentPoly, param, x_var


def raw_products():
    rng = random.Random(0)
    polys = []
    for _ in range(40):
        p = LaurentPoly.zero()
        for _ in range(25):
            term = LaurentPoly.const(Fraction(rng.randint(-9, 9) or 1, rng.randint(1, 6)))
            for v in rng.sample(range(1, 9), 4):
                term = term * LaurentPoly.var(x_var(v), rng.randint(1, 3))
            p = p + term
        polys.append(p)
    acc = LaurentPoly.zero()
    for i in range(len(polys) - 1):
        acc = acc + polys[i] * polys[i + 1]
    return len(acc.terms)


def phi_equation():
    lam = LaurentPoly.var(param("lam"))
    phi = pl.phi_extended_family(2, lam, 13)
    assert pl.verify_phi_equation(phi, 12).passed


def bracket_pipeline():
    om = pl.build_omega(pl.phi_power_family(2), 6)
    assert pl.verify_jacobi(om).passed
    assert pl.verify_multiplicativity(om).passed


def quantum_overlaps():
    R = qt.relation_set_catalog("R2")
    assert qt.pbw_overlap_check(R).passed
    assert qt.verify_delta_homomorphism(R).passed


def density_check():
    assert dn.verify_density_action(pl.phi_power_family(1), "lam", 3).passed


def run(repeat):
    results = {}
    for name, fn in (("raw-products", raw_products),
                     ("phi-equation-deg12", phi_equation),
                     ("bracket-pipeline-n6", bracket_pipeline),
                     ("quantum-R2", quantum_overlaps),
                     ("density-n3", density_check)):
        best = None
        for _ in range(repeat):
            t0 = time.perf_counter()
            fn()
            dt = time.perf_counter() - t0
            best = dt if best is None else min(best, dt)
        results[name] = best
    print(json.dumps({"backend": backend.BACKEND, "results": results}))


import sys as _sys
run(int(_sys.argv[1]))
"""


def measure(pure: bool, repeat: int) -> dict:
    env = dict(os.environ)
    if pure:
        env["JETPOISSON_PURE"] = "1"
    else:
        env.pop("JETPOISSON_PURE", None)
    proc = subprocess.run([sys.executable, "-c", WORKLOADS, str(repeat)],
                          capture_output=True, text=True, env=env)
    if proc.returncode != 0:
        raise SystemExit(proc.stderr)
    return json.loads(proc.stdout)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    compiled = measure(False, args.repeat)
    pure = measure(True, args.repeat)
    if compiled["backend"] == pure["backend"]:
        print("note: compiled kernel unavailable; both runs used the pure backend")
    print(f"{'workload':24s} {'pure [ms]':>12s} {compiled['backend'] + ' [ms]':>12s} {'speedup':>9s}")
    for name, t_pure in pure["results"].items():
        t_c = compiled["results"][name]
        print(f"{name:24s} {t_pure * 1e3:12.2f} {t_c * 1e3:12.2f} {t_pure / t_c:8.2f}x")


if __name__ == "__main__":
    main()
