"""The compiled kernel and the pure-Python kernel compute identical results
on identical raw data."""

import random

import pytest

from jetpoisson import _kernel_py as kpy
from jetpoisson import backend

try:
    from jetpoisson import _kernel as kc
except ImportError:
    kc = None

needs_compiled = pytest.mark.skipif(kc is None, reason="compiled kernel not built")


def random_raw_poly(rng, nvars=4, nterms=6):
    poly = {}
    for _ in range(nterms):
        key = tuple(sorted((v, rng.randint(-2, 3)) for v in rng.sample(range(10), nvars)
                    if rng.random() < 0.8))
        key = tuple((c, e) for c, e in key if e)
        poly[key] = kpy.rat_norm(rng.randint(-9, 9) or 1, rng.randint(1, 9))
    return {k: c for k, c in poly.items() if c[0]}


def test_selected_backend_reports_name():
    assert backend.BACKEND in ("c", "python")


@needs_compiled
def test_rationals_agree():
    rng = random.Random(2)
    for _ in range(200):
        a = (rng.randint(-30, 30), rng.randint(1, 12))
        b = (rng.randint(-30, 30), rng.randint(1, 12))
        a, b = kpy.rat_norm(*a), kpy.rat_norm(*b)
        assert kc.rat_add(a, b) == kpy.rat_add(a, b)
        assert kc.rat_mul(a, b) == kpy.rat_mul(a, b)
        assert kc.rat_norm(a[0] * 6, a[1] * 4) == kpy.rat_norm(a[0] * 6, a[1] * 4)


@needs_compiled
def test_poly_ops_agree():
    rng = random.Random(4)
    for _ in range(40):
        p, q = random_raw_poly(rng), random_raw_poly(rng)
        assert kc.poly_add(p, q) == kpy.poly_add(p, q)
        assert kc.poly_sub(p, q) == kpy.poly_sub(p, q)
        assert kc.poly_neg(p) == kpy.poly_neg(p)
        assert kc.poly_mul(p, q) == kpy.poly_mul(p, q)
        assert kc.poly_scale(p, 3, 7) == kpy.poly_scale(p, 3, 7)
        acc1, acc2 = dict(q), dict(q)
        assert kc.poly_iadd_mul(acc1, p, q) == kpy.poly_iadd_mul(acc2, p, q)


@needs_compiled
def test_key_merge_agrees():
    rng = random.Random(6)
    for _ in range(100):
        ka = tuple(sorted((v, rng.randint(-2, 2)) for v in rng.sample(range(8), 3)))
        kb = tuple(sorted((v, rng.randint(-2, 2)) for v in rng.sample(range(8), 3)))
        ka = tuple((c, e) for c, e in ka if e)
        kb = tuple((c, e) for c, e in kb if e)
        assert kc.key_mul(ka, kb) == kpy.key_mul(ka, kb)


def test_results_identical_under_forced_pure_backend():
    # the same verification computed in a subprocess on the pure kernel
    import json
    import os
    import subprocess
    import sys

    script = (
        "from jetpoisson import poissonlie as pl, report as rep;"
        "om = pl.build_omega(pl.phi_power_family(2), 4);"
        "print(rep.emit_report([pl.verify_jacobi(om)], 'json'))"
    )
    outputs = []
    for pure in ("", "1"):
        env = dict(os.environ)
        if pure:
            env["JETPOISSON_PURE"] = pure
        else:
            env.pop("JETPOISSON_PURE", None)
        proc = subprocess.run([sys.executable, "-c", script],
                              capture_output=True, text=True, env=env, timeout=300)
        assert proc.returncode == 0, proc.stderr
        outputs.append(proc.stdout)
    assert outputs[0] == outputs[1]
    assert json.loads(outputs[0])[0]["status"] == "pass"
