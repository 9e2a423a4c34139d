"""Desk-scale acceptance checks, one test per criterion.

Each test prints a single ``criterion N: PASS|FAIL`` line (visible with -s or
in the captured output of a failure) and fails normally when its check fails.
"""
import cmath
import json
import math
import subprocess
import sys
import time
import warnings

import numpy as np
import pytest

import oracles
from koenigs_shift import criteria as cr
from koenigs_shift import domains as dm
from koenigs_shift import hypgeom as hg
from koenigs_shift import models as md

C, D = cr.Verdict.CONVERGENT, cr.Verdict.DIVERGENT
MODELS = [md.HalfPlaneTranslation(), md.VerticalSectorModel(1, math.pi / 6), md.SlitPlaneModel()]


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\ncriterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
        assert ok, detail
    return emit


def random_step(rng, k_min=2, k_max=8):
    k = int(rng.integers(k_min, k_max + 1))
    a = np.concatenate([[0.0], np.cumsum(rng.uniform(0.2, 3.0, k))])
    b = np.cumsum(rng.uniform(0.2, 4.0, k))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", dm.StepShapeWarning)
        return dm.StepDomain(tuple(a), tuple(b))


def test_worked_example(report):
    expected = {0.0: cr.Decision.INFINITE_SHIFT, 0.25: cr.Decision.FINITE_SHIFT,
                0.5: cr.Decision.FINITE_SHIFT, 1.0: cr.Decision.FINITE_SHIFT}
    lines, ok = [], True
    for eps, want in expected.items():
        start = time.perf_counter()
        got = cr.classify_shift(dm.GraphDomain(dm.XLogEps(eps)),
                                cr.ClassifyOptions(tail=cr.ClosedForm("xlog", {"eps": eps}))).decision
        took = time.perf_counter() - start
        ok &= got is want and took < 10
        lines.append(f"eps={eps}:{got.value}({took:.2f}s)")
    report(1, ok, " ".join(lines))


def test_starlike_heights(report):
    g = dm.GraphDomain(dm.XLogEps(0.0))
    j = np.arange(2, 51, dtype=float)
    err = float(np.max(np.abs(dm.bstar_heights(g, j) / (j * np.log(j)) - 1)))
    report(2, err <= 1e-12, f"max relative error {err:.2e}")


def test_step_eta_closed_form(report):
    rng = np.random.default_rng(2024)
    worst = 0.0
    for _ in range(10):
        s = random_step(rng)
        c, _ = dm.cd_sequences(s)
        radii = np.geomspace(c[0], 3 * c[-1], 100)
        closed = dm.eta_step_array(s, radii)
        numeric = np.array([dm.eta(s, r) for r in radii])
        scalar = np.array([dm.eta_step_closed_form(s, r) for r in radii])
        worst = max(worst, float(np.max(np.abs(numeric - closed))), float(np.max(np.abs(scalar - closed))))
    report(3, worst <= 1e-8, f"max abs error {worst:.2e} over 1000 radii")


def test_step_sandwich(report):
    rng = np.random.default_rng(77)
    domains = []
    while len(domains) < 20:
        k = int(rng.integers(2, 7))
        a = np.concatenate([[0.0], np.cumsum(rng.uniform(0.3, 2.0, k))])
        b = a[1:] / np.minimum.accumulate(1 / rng.uniform(2.0, 6.0, k))
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", dm.StepShapeWarning)
            s = dm.StepDomain(tuple(a), tuple(b))
        if all(cr.sandwich_conditions_hold(s, j) for j in range(1, s.steps)):
            domains.append(s)
    checked, worst = 0, -math.inf
    for s in domains:
        c, d = dm.cd_sequences(s)
        f = lambda r, s=s: (math.pi - dm.eta_step_closed_form(s, r)) / r  # noqa: E731
        for k in range(1, s.steps):
            value = oracles.integrate(f, c[k - 1], d[k - 1]) + oracles.integrate(f, d[k - 1], c[k])
            lo, hi = cr.step_integral_sandwich(s, k)
            worst = max(worst, lo - 1e-6 - value, value - hi - 1e-6)
            checked += 1
    report(4, worst <= 0, f"{checked} intervals on 20 domains, worst excess {worst:.2e}")


def test_criterion_agreement(report):
    k = np.arange(1, 2001)
    lines, ok = [], True
    for power, want in ((1, D), (2, C)):
        s = dm.StepDomain(tuple(np.r_[0, k]), tuple(k * np.log(k + 1) ** power))
        tail = cr.ClosedForm("powerlog", {"c": 1, "p": 1, "q": power, "shift": 1})
        verdicts = (cr.series_criterion(s, 1, 100_000, tail).tail_verdict,
                    cr.step_series(s, tail).tail_verdict,
                    cr.karamanlis_integral(s, 1, 1e4, tail=tail).verdict)
        partials = [cr.karamanlis_integral(s, 1, r).partial_integral for r in (1e2, 1e3, 1e4)]
        ok &= all(v is want for v in verdicts) and partials == sorted(partials)
        lines.append(f"s={power}:{'/'.join(v.value for v in verdicts)}")
    for eps, want in ((0.0, D), (0.25, C), (0.5, C), (1.0, C)):
        g = dm.GraphDomain(dm.XLogEps(eps))
        tail = cr.ClosedForm("xlog", {"eps": eps})
        verdicts = (cr.series_criterion(g, 2, 100_000, tail).tail_verdict,
                    cr.karamanlis_integral(g, 2, 1e4, tail=tail).verdict)
        ok &= all(v is want for v in verdicts)
        lines.append(f"eps={eps}:{'/'.join(v.value for v in verdicts)}")
    report(5, ok, " ".join(lines))


def test_speed_characterization(report):
    grid = np.geomspace(1, 1e4, 100)
    half = md.speed_gap(MODELS[0], grid)
    sector_end = md.speed_gap(MODELS[1], grid)
    sector_10 = md.speed_gap(MODELS[1], grid[grid <= 10])
    ok = half <= 1.0 and sector_end > 2 * sector_10
    report(6, ok, f"half-plane gap {half:.4f}; sector {sector_10:.3f} at t=10 -> {sector_end:.3f}")


def test_geodesic_gap(report):
    gaps = [md.geodesic_gap(MODELS[0], r) for r in (2, 10, 100, 1000)]
    report(7, max(gaps) <= 1e-12, f"max gap {max(gaps):.1e}")


def test_pythagoras(report):
    grid = np.geomspace(1, 1e4, 100)
    worst = -math.inf
    for m in MODELS:
        for t in grid:
            s = md.speeds(m, t)
            worst = max(worst, s.v_orth + s.v_tang - 0.5 * math.log(2) - s.v - 1e-9,
                        s.v - s.v_orth - s.v_tang - 1e-9, s.v_tang - s.v_orth - 4 * math.log(2))
    report(8, worst <= 0, f"300 samples, worst violation {worst:.2e}")


def test_hyperbolic_step(report):
    golden = math.log((1 + math.sqrt(5)) / 2)
    half = md.hyperbolic_step(MODELS[0], 0, [1, 10, 1e3]).value
    slit = md.hyperbolic_step(MODELS[2], 0, np.geomspace(1, 1e4, 20)).value
    ok = abs(half - golden) <= 1e-6 and slit <= 1e-3
    report(9, ok, f"half-plane {half:.10f}; slit {slit:.2e}")


def test_semigroup_and_koenigs_relation(report):
    rng = np.random.default_rng(10)
    lines, ok = [], True
    for m in MODELS:
        law = rel = 0.0
        for _ in range(1000):
            z = 0.99 * math.sqrt(rng.random()) * cmath.exp(1j * rng.uniform(-math.pi, math.pi))
            s, t = rng.uniform(0, 10, 2)
            law = max(law, abs(md.orbit(m, z, s + t) - md.orbit(m, md.orbit(m, z, t), s)))
            # relation checked in half-plane coordinates, where h and phi_t are evaluated
            w = hg.cayley(1, z)
            rel = max(rel, abs(m.forward(md.psi(m, w, t)) - m.forward(w) - 1j * t))
        ok &= law <= 1e-10 and rel <= 1e-10
        lines.append(f"{type(m).__name__}: law {law:.1e} relation {rel:.1e}")
    report(10, ok, "; ".join(lines))


def test_metric_oracles(report):
    rng = np.random.default_rng(11)
    z = np.sqrt(rng.random((1000, 2))) * 0.999 * np.exp(1j * rng.uniform(-math.pi, math.pi, (1000, 2)))
    cayley_err = max(abs(hg.disc_distance(p, q) - hg.halfplane_distance(hg.cayley(1, p), hg.cayley(1, q)))
                     for p, q in z)
    oracle_err = max(abs(hg.disc_distance(p, q) - oracles.disc_distance(p, q)) / max(1, oracles.disc_distance(p, q))
                     for p, q in z[:200])
    ws = rng.uniform(0.01, 10, 50) + 1j * rng.uniform(-10, 10, 50)
    competitors = np.exp(rng.uniform(math.log(1e-3), math.log(1e3), 1000))
    beaten = all(hg.halfplane_distance(w, hg.diameter_projection(w)) <= hg.halfplane_distance(w, s) + 1e-12
                 for w in ws for s in competitors)
    ok = cayley_err <= 1e-12 and beaten and oracle_err <= 1e-9
    report(11, ok, f"Cayley invariance {cayley_err:.1e}; projection minimal on 50x1000: {beaten}")


def test_quasi_geodesic_constants(report):
    exact = hg.quasi_geodesic_constants(math.pi / 4) == (2.0, math.log(2))
    full = hg.SectorParams(math.pi / 2, 0.0)
    rng = np.random.default_rng(12)
    pts = np.exp(rng.uniform(-7, 7, (1000, 2)))
    err = max(abs(hg.sector_distance(full, a, b) - hg.halfplane_distance(a, b)) for a, b in pts)
    report(12, exact and err <= 1e-12, f"(2, log 2) exact: {exact}; half-plane consistency {err:.1e}")


def test_cli_determinism(report, tmp_path):
    configs = {
        "classify": {"command": "classify", "domain": {"type": "graph", "family": "xlog", "eps": 0.5}},
        "speeds": {"command": "speeds", "model": {"type": "sector", "p": [1, 0], "alpha": 0.5235987755982988},
                   "tGrid": {"start": 1, "stop": 1e4, "num": 100, "spacing": "log"}},
    }
    ok = True
    for name, cfg in configs.items():
        path = tmp_path / f"{name}.json"
        path.write_text(json.dumps(cfg))
        outs = {subprocess.run([sys.executable, "-m", "koenigs_shift.cli", cfg["command"], "--config",
                                str(path)], capture_output=True, check=False).stdout for _ in range(2)}
        ok &= len(outs) == 1 and b"error" not in next(iter(outs))
    report(13, ok, "two runs per config, byte-identical reports")
