#!/usr/bin/env python3
"""Smoke test for the gencat_py extension module.

Builds nothing itself: compile the module first with

    cargo build --release -p gencat-python

then run

    python3 python/smoke_test.py
"""

import math
import pathlib
import shutil
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def import_module():
    candidates = [
        ROOT / "target" / "release" / "libgencat_py.so",
        ROOT / "target" / "debug" / "libgencat_py.so",
    ]
    for built in candidates:
        if built.exists():
            staging = pathlib.Path(tempfile.mkdtemp(prefix="gencat_py_"))
            shutil.copy2(built, staging / "gencat_py.so")
            sys.path.insert(0, str(staging))
            import gencat_py

            return gencat_py
    sys.exit(
        "libgencat_py.so not found; run `cargo build --release -p gencat-python` first"
    )


def close(a, b, tol=1e-12):
    return abs(a - b) <= tol


def main():
    m = import_module()

    # exact combinatorics
    assert m.catalan(0) == 1
    assert m.catalan(3) == 5
    assert m.catalan(10) == 16796
    assert m.catalan_triangle(3, 2) == 5
    assert m.pi_coeffs(3) == [0, 2, 2, 1]
    for n in range(9):
        closed = m.pi_coeffs(n, "closed")
        for method in ("enum", "conv", "linear"):
            assert m.pi_coeffs(n, method) == closed, (n, method)
    assert m.pi_eval(20, 1) == m.catalan(20)
    assert m.generalized_catalan_neg1(4) == -2
    assert m.pi_eval(4, -1) == m.generalized_catalan_neg1(4)

    paths = m.dyck_paths(2)
    assert sorted(paths) == sorted(["+-+-", "++--"])
    assert m.touch_count("+-+-") == 2
    assert len(m.dyck_paths(7)) == 429
    assert len(m.nc_pair_partitions(7)) == 429

    # C_n(d) reverses onto pi_n(d)
    for n in range(1, 7):
        c = m.c_poly_coeffs(n)
        pi = m.pi_coeffs(n, "enum")
        padded = c + [0] * (n + 1 - len(c))
        assert padded[::-1] == pi, n

    # analytic layer
    assert close(m.sqrt_branch(3 + 0j), math.sqrt(5))
    s = m.semicircle_stieltjes(3 + 0j)
    assert close(s, (-3 + math.sqrt(5)) / 2)
    root = 3 / math.sqrt(2)
    assert abs(m.q_limit(3.0, root + 0j)) <= 1e-12
    kind, values = m.limit_outliers(-1.0)
    assert kind == "complex-pair"
    assert close(values[0], 1j / math.sqrt(2), 1e-12)
    assert m.limit_outliers(1.5)[0] == "none"
    assert m.neg_inv_q_series(1.0, 3) == [-1.0, -1.0, -2.0]

    g = m.jacobi_resolvent(1.0, 3 + 0j, 400)
    assert abs(g + 1 / m.q_limit(1.0, 3 + 0j)) <= 1e-6

    alpha = m.invert_series(1.0, [-1.0, 0.0, -1.0, 0.0, -2.0, 0.0, -5.0, 0.0])
    assert close(alpha[0], -1.0)
    assert close(alpha[2], 1.0) and close(alpha[4], 1.0) and close(alpha[6], 2.0)

    # sampling determinism and moments
    w1 = m.WignerSample(200, "gaussian", seed=7, trial=0)
    w2 = m.WignerSample(200, "gaussian", seed=7, trial=0)
    assert w1.entry(0, 0) == w2.entry(0, 0)
    assert w1.dim() == 201
    assert w1.moment_e0(1.0, 0) == 1.0

    # with rademacher entries the n = 2 moment is deterministic
    # (every squared entry is exactly 1/N), hence zero standard error
    rows = m.monte_carlo_moments(300, 1.0, "rademacher", seed=3, n_max=2, trials=8)
    n, mean, stderr = rows[-1]
    assert n == 2 and abs(mean - 1.0) < 0.3 and stderr == 0.0
    rows = m.monte_carlo_moments(300, 1.0, "gaussian", seed=3, n_max=2, trials=8)
    n, mean, stderr = rows[-1]
    assert n == 2 and abs(mean - 1.0) < 0.3 and stderr > 0

    # secular model of a sample
    model = w1.secular()
    assert close(sum(model.weights()), model.measure_moment(0))
    lams = model.lambdas()
    assert lams == sorted(lams)
    q = model.eval_weyl(1.0, 5 + 0j)
    assert abs(q - (5 + 0j)) < 1.5  # dominated by z/d far from the bulk

    # synthetic secular model: z/4 - 1/z has roots +-2
    synth = m.SecularModel(0.0, [0.0], [1.0])
    lower, upper = synth.real_outliers(4.0)
    assert close(lower, -2.0, 1e-10) and close(upper, 2.0, 1e-10)
    z = synth.complex_outlier(-1.0)
    assert close(z, 1j, 1e-10)

    zs = [3 + 0j, 2j, -4 + 0j, 1 + 2j, -2 - 3j]
    small = m.WignerSample(50, "gaussian", seed=1, trial=0)
    assert small.permutation_similarity(-1.0, 3, zs)

    print("smoke test: all checks passed")


if __name__ == "__main__":
    main()
