"""Acceptance criteria, one test each.  Every test records a single
PASS/FAIL line that is repeated in the terminal summary.

Run alone with ``pytest tests/test_acceptance.py -v``.  Thresholds are the
stated ones; nothing is loosened, so a criterion that cannot be met at
desk scale shows up as a failing test.
"""

import hashlib
import math
import time

import numpy as np
import pytest

from cubica.characters import characters_for_conductor, enumerate_cubic_characters
from cubica.cli import main as cli_main
from cubica.eisenstein import EisensteinInt
from cubica.gauss import identity_suite, poisson_1d_check, poisson_2d_check, poisson_2d_resolved
from cubica.hecke import dedekind_constants, dedekind_residue_probe, hecke_residue_probe
from cubica.large_sieve import empirical_ratio, norm_exact
from cubica.lfunctions import l_value_afe, l_value_hurwitz
from cubica.moments import central_values, constant_c_report, first_moment, nonvanishing_count
from cubica.symbol import symbol, symbol_by_factorization
from cubica.weights import GaussianWeight

E = EisensteinInt
SEED = 20240601


def _random_primary(rng, X):
    r = int(math.sqrt(4 * X / 3) / 3) + 1
    while True:
        n = E(1 + 3 * int(rng.integers(-r, r + 1)), 3 * int(rng.integers(-r, r + 1)))
        if 1 < n.norm() <= X:
            return n


def test_c01_symbol_oracle(acceptance):
    rng = np.random.default_rng(SEED)
    t0 = time.perf_counter()
    mismatches = 0
    for _ in range(10_000):
        n = _random_primary(rng, 10**6)
        m = E(int(rng.integers(-2000, 2001)), int(rng.integers(-2000, 2001)))
        if symbol(m, n) != symbol_by_factorization(m, n):
            mismatches += 1
    dt = time.perf_counter() - t0
    ok = mismatches == 0 and dt < 30
    assert acceptance(1, ok, f"symbol reciprocity vs definition: 10000 pairs, {mismatches} mismatches, {dt:.1f}s (< 30s)")


def test_c02_gauss_identities(acceptance):
    rep = identity_suite(2000, tol=1e-9)
    counts = ", ".join(f"{r.name}={r.instances}" for r in rep.results.values())
    ok = rep.passed and rep.max_rel_deviation < 1e-9
    assert acceptance(2, ok, f"Gauss identities to norm 2000: max rel dev {rep.max_rel_deviation:.2e} (< 1e-9); {counts}")


def test_c03_afe(acceptance):
    split, oracle = 0.0, 0.0
    chars = enumerate_cubic_characters(500)
    for chi in chars:
        r = math.sqrt(chi.conductor)
        vals = [l_value_afe(chi, A).value for A in (r / 2, r, 2 * r)]
        split = max(split, max(abs(x - y) for x in vals for y in vals))
        oracle = max(oracle, abs(vals[1] - l_value_hurwitz(chi).value))
    ok = split < 1e-8 and oracle < 1e-6
    assert acceptance(3, ok, f"AFE on {len(chars)} characters q<=500: split dev {split:.1e} (< 1e-8), Hurwitz dev {oracle:.1e} (< 1e-6)")


def test_c04_first_moment(acceptance):
    t0 = time.perf_counter()
    r1 = first_moment(1000)
    r2 = first_moment(30000)
    dt = time.perf_counter() - t0
    e1, e2 = abs(r1.ratio - 1), abs(r2.ratio - 1)
    ok = e1 <= 0.15 and e2 <= 0.10 and e2 <= e1 and dt <= 3600
    assert acceptance(
        4,
        ok,
        f"first moment ratio {r1.ratio:.4f} at Q=1e3 (need |r-1|<=0.15), {r2.ratio:.4f} at Q=3e4 (need <=0.10), "
        f"error shrinks: {e2 <= e1}, {dt:.0f}s",
    )


def test_c05_constant_c(acceptance):
    rep = constant_c_report()
    k = dedekind_constants()
    probe = dedekind_residue_probe(1e-3)
    c_omega_ok = abs(k.c_omega - 2 * math.pi / (6 * math.sqrt(3))) < 1e-6 and abs(k.c_omega - 0.604600) < 1e-6
    ok = rep.route_gap < 1e-6 and rep.c > 0 and c_omega_ok and abs(probe - k.c_omega) < 1e-2
    assert acceptance(
        5,
        ok,
        f"c = {rep.c:.10f} > 0; Z(3/2) series {rep.z_series:.9f} vs Euler {rep.z_euler:.9f} gap {rep.route_gap:.1e} (< 1e-6); "
        f"c_omega {k.c_omega:.6f}, residue probe {probe:.5f} (within 1e-2)",
    )


def test_c06_hecke_residue(acceptance):
    r = hecke_residue_probe(8, 1e-3, 10**6)
    target = dedekind_constants().c_omega / 2
    rel = abs(r.estimate - target) / target
    assert acceptance(6, rel < 0.01, f"(s-1)L(s,psi_8) at s=1.001: {r.estimate:.6f} vs c_omega/2 = {target:.5f}, rel {rel:.2e} (< 1%)")


def test_c07_large_sieve_exact(acceptance):
    worst_dual, mono_ok, n = 0.0, True, 0
    for Q in (10, 25, 50, 100, 200):
        for M in (5, 10, 25, 50, 100, 200):
            b1, b2, b3 = (norm_exact(w, Q, M).value for w in ("B1", "B2", "B3"))
            c1 = norm_exact("C1", Q, M).value
            worst_dual = max(worst_dual, abs(c1 - b1) / max(b1, 1e-300))
            mono_ok &= b1 <= b2 * (1 + 1e-12) and b2 <= b3 * (1 + 1e-12)
            n += 1
    ok = worst_dual < 1e-10 and mono_ok
    assert acceptance(7, ok, f"{n} instances Q,M<=200: duality rel dev {worst_dual:.1e} (< 1e-10), B1<=B2<=B3 on all: {mono_ok}")


def test_c08_large_sieve_empirical(acceptance):
    qs = []
    for Q in (50, 100, 200, 400, 800, 1600, 3200):
        for M in (math.isqrt(Q), Q):
            qs.append(empirical_ratio(Q, M, trials=50, seed=SEED).quotient)
    spread = max(qs) / min(qs)
    assert acceptance(8, spread < 10, f"quotient T/(|a|^2 Delta) in [{min(qs):.2e}, {max(qs):.2e}] over 14 grid points, spread {spread:.1f}x (need < 10x)")


def test_c09_second_moment_shape(acceptance):
    chars = enumerate_cubic_characters(2000)
    L = central_values(chars)
    qs = np.array([c.conductor for c in chars])
    vals = {Q: math.fsum((np.abs(L[qs <= Q]) ** 2).tolist()) for Q in (250, 500, 1000, 2000)}
    C = vals[250] / 250**1.2
    ratios = {Q: v / (C * Q**1.2) for Q, v in vals.items()}
    ok = all(r <= 3 for r in ratios.values())
    shown = ", ".join(f"{Q}: {r:.2f}" for Q, r in ratios.items())
    assert acceptance(9, ok, f"second moment / (C Q^(6/5)), C fitted at 250: {shown} (all <= 3)")


def test_c10_nonvanishing(acceptance):
    r = nonvanishing_count(2000, 1e-6)
    assert acceptance(10, r.count == r.total, f"|L(1/2,chi)| > 1e-6 for {r.count}/{r.total} characters q<=2000, min |L| = {r.min_abs:.3e}")


def test_c11_poisson(acceptance):
    gw = GaussianWeight(1.5, 0.5)
    d1 = max(poisson_1d_check(chi, gw, M) for q, M in ((7, 10), (13, 25)) for chi in characters_for_conductor(q))
    d2, branch = poisson_2d_resolved(E(1, 3), E(1, 0), M=20)
    d3 = poisson_2d_check(E(1, 3), E(-2, -3), M=20)
    ok = d1 < 1e-8 and d2 < 1e-6 and d3 < 1e-6
    assert acceptance(
        11,
        ok,
        f"1-D Poisson dev {d1:.1e} (< 1e-8); 2-D (1+3w, 1) dev {d2:.1e} with sqrt(-3) = {branch}, "
        f"nontrivial pair (1+3w, -2-3w) dev {d3:.1e} (< 1e-6)",
    )


CLI_RUNS = [
    ["enumerate-characters", "--Q", "1000"],
    ["lvalue", "--Q", "200"],
    ["first-moment", "--Q", "500"],
    ["second-moment", "--Q", "250", "--t", "1"],
    ["hecke-moments", "--M", "50"],
    ["constant-c"],
    ["gauss-identities", "--Q", "300"],
    ["gauss-average", "--Q", "100", "--m", "2"],
    ["large-sieve-exact", "--Q", "50", "--M", "20"],
    ["large-sieve-empirical", "--Q", "100", "--M", "10", "--trials", "50", "--seed", "7"],
    ["delta-table", "--Q", "100", "1000", "10000", "--M", "10", "100"],
    ["nonvanishing", "--Q", "500"],
    ["poisson-check"],
]


def _digest(d):
    return {p.name: hashlib.sha256(p.read_bytes()).hexdigest() for p in sorted(d.iterdir())}


def test_c12_determinism(acceptance, tmp_path):
    differing = []
    for argv in CLI_RUNS:
        out = tmp_path / argv[0]
        full = argv + ["--output", str(out), "--cache-dir", str(tmp_path / "cache")]
        assert cli_main(full) == 0
        first = _digest(out)
        assert cli_main(full) == 0
        if _digest(out) != first:
            differing.append(argv[0])
    ok = not differing
    assert acceptance(12, ok, f"{len(CLI_RUNS)} CLI commands rerun: {'all outputs hash-identical' if ok else 'differ: ' + ', '.join(differing)}")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-s"]))
