"""End-to-end acceptance criteria 1-11, one pass/fail line each."""
import json
import math
import time

import numpy as np

from uentropy.caratheodory import (bowen_entropy_estimate, max_separated_count,
                                   min_spanning_count, upper_capacity_entropy, word_sample)
from uentropy.cli import main
from uentropy.local_entropy import enlarged_ball_contains, vitali_select
from uentropy.measures import MarkovMeasure
from uentropy.metrics import CylinderMetric
from uentropy.multifractal import (Potential, legendre_spectrum, level_set_entropy,
                                   pressure_sft, spectrum_identity_check)
from uentropy.separation import (GluingPlan, binary_entropy, exact_hamming_separated,
                                 glue_orbits, hamming_ball_size, max_hamming_separated,
                                 pairwise_hamming, s_quantities, uniform_separation_probe)
from uentropy.systems import (LinearLeaf, cat_map, cat_rotation_product, full_shift,
                              golden_mean_shift)
from uentropy.unstable import (default_schedule, delta_independence_check, leaf_sample,
                               unstable_bowen_entropy, unstable_upper_capacity_entropy)

LOG_LAM = math.log((3 + math.sqrt(5)) / 2)
LOG_PHI = math.log((1 + math.sqrt(5)) / 2)
ONE = Potential.cylinder_indicator("1")

_cat = {}


def _cat_estimates(tmp_path):
    if not _cat:
        t0 = time.perf_counter()
        code = main(["estimate-entropy", "--out", str(tmp_path / "cat")])
        _cat["time"] = time.perf_counter() - t0
        _cat["code"] = code
        s = json.loads((tmp_path / "cat" / "summary.json").read_text())
        _cat["uc"] = s["estimates"]["upper_capacity"]["sup_estimate"]
        _cat["b"] = s["estimates"]["bowen"]["sup_estimate"]
    return _cat


def test_criterion_01_cat_map(tmp_path, acceptance):
    r = _cat_estimates(tmp_path)
    sched = default_schedule(cat_map())
    ok = (r["code"] == 0 and 0.91 <= r["uc"] <= 1.01 and 0.91 <= r["b"] <= 1.01
          and r["time"] < 60 and max(sched.n) <= 18 and sched.grid <= 4001)
    acceptance(1, ok, f"h_UC={r['uc']:.4f} h_B={r['b']:.4f} truth={LOG_LAM:.4f} "
                      f"time={r['time']:.1f}s")


def test_criterion_02_center_neutral(tmp_path, acceptance):
    r = _cat_estimates(tmp_path)
    p = cat_rotation_product()
    uc = unstable_upper_capacity_entropy(p).sup_estimate
    b = unstable_bowen_entropy(p).sup_estimate
    ok = abs(uc - r["uc"]) <= 0.02 and abs(b - r["b"]) <= 0.02
    acceptance(2, ok, f"product h_UC={uc:.4f} h_B={b:.4f} vs cat {r['uc']:.4f}/{r['b']:.4f}")


def test_criterion_03_symbolic(acceptance):
    out = []
    ok = True
    for system, truth, tol in ((full_shift(2), math.log(2), 0.01),
                               (golden_mean_shift(), LOG_PHI, 0.03)):
        t0 = time.perf_counter()
        uc = unstable_upper_capacity_entropy(system).sup_estimate
        b = unstable_bowen_entropy(system).sup_estimate
        dt = time.perf_counter() - t0
        ok &= abs(uc - truth) <= tol and abs(b - truth) <= tol and dt < 10
        out.append(f"{system.name}: {uc:.4f}/{b:.4f} ({dt:.1f}s)")
    acceptance(3, ok, "; ".join(out))


def test_criterion_04_sandwich(acceptance):
    metric = CylinderMetric(0.5, 2)
    cases = 0
    ok = True
    for system in (full_shift(2), golden_mean_shift()):
        S = word_sample(system.words(14))
        for n in range(1, 13):
            for eps in (0.5, 0.25, 0.125):
                N2 = max_separated_count(S, n, 2 * eps, metric)[0]
                Sp = min_spanning_count(S, n, eps, metric)
                N1 = max_separated_count(S, n, eps, metric)[0]
                ok &= N2 <= Sp <= N1
                cases += 1
    rng = np.random.default_rng(7)
    for _ in range(100):
        seg = LinearLeaf(cat_map(), rng.random(2), rng.uniform(0.02, 0.2))
        S = leaf_sample(seg, int(rng.integers(20, 400)))
        lm = seg.bowen_metric()
        n, eps = int(rng.integers(1, 8)), float(rng.uniform(0.005, 0.1))
        N2 = max_separated_count(S, n, 2 * eps, lm)[0]
        Sp = min_spanning_count(S, n, eps, lm)
        N1 = max_separated_count(S, n, eps, lm)[0]
        ok &= N2 <= Sp <= N1
        cases += 1
    acceptance(4, ok, f"{cases} instances")


def _verdicts(tmp_path, theorem):
    out = tmp_path / theorem
    code = main(["check", theorem, "--out", str(out)])
    rows = json.loads((out / "summary.json").read_text())["rows"]
    return code, rows


def test_criterion_05_distribution_principle(tmp_path, acceptance):
    cu, up = _verdicts(tmp_path, "a_upper")
    cl, lo = _verdicts(tmp_path, "a_lower")
    seg = LinearLeaf(cat_map(), [0.3, 0.6], 0.1)
    rng = np.random.default_rng(11)
    vit = True
    for _ in range(100):
        k = int(rng.integers(1, 50))
        balls = [(seg.chart(rng.uniform(-0.08, 0.08)), int(rng.integers(1, 5)),
                  float(rng.uniform(0.002, 0.02))) for _ in range(k)]
        chosen = vitali_select(seg, balls)
        ts = [(float(seg.coordinates(balls[i][0])), seg.ball_radius(balls[i][1], balls[i][2]))
              for i in chosen]
        vit &= all(abs(a[0] - b[0]) > a[1] + b[1] for i, a in enumerate(ts) for b in ts[i + 1:])
        vit &= all(any(enlarged_ball_contains(seg, balls[j], balls[i]) for j in chosen)
                   for i in range(k))
    ok = (cu == 0 and cl == 0 and len(up) == 6 and len(lo) == 6
          and all(r["status"] == "PASS" for r in up + lo) and vit)
    acceptance(5, ok, f"a_upper {sum(r['status'] == 'PASS' for r in up)}/6, "
                      f"a_lower {sum(r['status'] == 'PASS' for r in lo)}/6, vitali {vit}")


def test_criterion_06_variational(tmp_path, acceptance):
    code, rows = _verdicts(tmp_path, "b")
    maximal = [r for r in rows if r["instance"] != "cat/fixed-point"]
    ok = (code == 0 and all(r["status"] == "PASS" for r in rows) and len(maximal) == 3
          and all(abs(r["lhs"] - r["rhs"]) <= 0.05 for r in maximal))
    acceptance(6, ok, ", ".join(f"{r['instance']} {r['lhs']:.3f}<={r['rhs']:.3f}" for r in rows))


def test_criterion_07_spectrum(acceptance):
    t0 = time.perf_counter()
    fs = full_shift(2)
    grid = np.arange(1, 10) / 10
    gaps = [abs(level_set_entropy(fs, ONE, a, n_schedule=[2000]).value - binary_entropy(a))
            for a in grid]
    g = spectrum_identity_check(golden_mean_shift(), ONE, grid)
    golden_ok = all(s in ("PASS", "level_unreachable") for s in g.status) and all(
        l <= r + 0.03 for l, r, s in zip(g.lhs, g.rhs, g.status) if s != "level_unreachable")
    dt = time.perf_counter() - t0
    ok = max(gaps) <= 0.05 and golden_ok and dt < 30
    acceptance(7, ok, f"max |lhs - H(a)| = {max(gaps):.4f}, golden ok {golden_ok}, "
                      f"time={dt:.1f}s")


def test_criterion_08_hamming(acceptance):
    ok = True
    for k in (2, 3):
        for n in range(1, 15):
            for r in range(n + 1):
                exact, bound = hamming_ball_size(n, r, k)
                ok &= exact == sum(math.comb(n, i) * (k - 1) ** i for i in range(r + 1))
                if 0 < r / n <= 1 - 1 / k:
                    ok &= exact <= bound * (1 + 1e-12)
    rng = np.random.default_rng(3)
    inst = 0
    for _ in range(100):
        W = np.unique(rng.integers(0, 2, size=(int(rng.integers(2, 25)), 8)), axis=0)
        t = int(rng.integers(0, 5))
        ok &= len(max_hamming_separated(W, t)) == len(exact_hamming_separated(W, t))
        inst += 1
    ok &= len(max_hamming_separated(full_shift(2).words(3), 2)) == 2
    ok &= len(max_hamming_separated(full_shift(2).words(4), 1)) == 8
    acceptance(8, ok, f"ball sizes n<=14 k in (2,3); {inst} exact-vs-auto instances")


def test_criterion_09_gluing(acceptance):
    g = golden_mean_shift()
    plans = [GluingPlan([["00", "11"], ["000", "011", "101"]]),
             GluingPlan([["000", "111"]] * 3),
             GluingPlan([["0110", "1001", "0000"], ["1111", "0000"], ["01", "10"]]),
             GluingPlan([["01"], ["10"]], g),
             GluingPlan([["01", "00"], ["10", "00"]], g)]
    ok = True
    details = []
    for plan in plans:
        res = glue_orbits(plan)
        ok &= res.cardinality == res.expected == math.prod(len(b) for b in plan.block_sets)
        ok &= res.collision_free
        if res.separation_ok is not None:
            n = min(len(w) for w in res.words)
            D = pairwise_hamming(np.stack([w[:n] for w in res.words]))
            ok &= res.separation_ok and D[np.triu_indices(len(D), 1)].min() >= res.required
        for w in res.words:
            ok &= bool(plan.system.contains(w[None, :]).all())
        details.append(str(res.cardinality))
    acceptance(9, ok, "cardinalities " + ",".join(details))


def test_criterion_10_uniform_separation(acceptance):
    fs, g = full_shift(2), golden_mean_shift()
    ok = True
    out = []
    for mu, system in ((MarkovMeasure.bernoulli([0.5, 0.5]), fs), (MarkovMeasure.parry(g), g)):
        for n in (14, 16):
            for kappa in (0.2, 0.3):
                r = uniform_separation_probe(system, mu, kappa, n)
                ok &= r.passed and r.achieved >= mu.entropy() - kappa
    for mu, system in ((MarkovMeasure.bernoulli([0.5, 0.5]), fs),
                       (MarkovMeasure.bernoulli([0.7, 0.3]), fs), (MarkovMeasure.parry(g), g)):
        s = s_quantities(system, mu)
        h = mu.entropy()
        ok &= abs(s.s_lower - h) <= 0.05 and abs(s.s_upper - h) <= 0.05
        out.append(f"{mu.name}: {s.s_lower:.3f}/{s.s_upper:.3f} vs {h:.3f}")
    acceptance(10, ok, "; ".join(out))


def _no11(w):
    w = np.asarray(w)
    return not np.any((w[:-1] == 1) & (w[1:] == 1))


def test_criterion_11_properties(acceptance):
    fs = full_shift(2)
    metric = CylinderMetric(0.5, 2)
    checks = {}
    S = word_sample(fs.words(12))
    sub = S.take(np.flatnonzero([_no11(w) for w in S.points]))
    checks["monotone"] = all(max_separated_count(sub, n, 0.5, metric)[0]
                             <= max_separated_count(S, n, 0.5, metric)[0] for n in range(1, 12))
    sched = default_schedule(fs)
    a = unstable_bowen_entropy(fs, _no11, schedule=sched).sup_estimate
    b = unstable_bowen_entropy(fs, lambda w: w[0] == 1 and w[1] == 1,
                               schedule=sched).sup_estimate
    ab = unstable_bowen_entropy(fs, lambda w: _no11(w) or (w[0] == 1 and w[1] == 1),
                                schedule=sched).sup_estimate
    checks["union"] = abs(ab - max(a, b)) <= 0.05
    W = golden_mean_shift().words(13)
    Z = word_sample(W[W[:, 0] == 0])
    fZ = word_sample(np.unique(Z.points[:, 1:], axis=0))
    checks["invariance"] = abs(bowen_entropy_estimate(Z, [(2, 0.5)], metric).s_star
                               - bowen_entropy_estimate(fZ, [(2, 0.5)], metric).s_star) <= 0.05
    rep = unstable_upper_capacity_entropy(cat_map())
    checks["delta_spread"] = delta_independence_check(rep) <= 0.05
    phi = Potential.locally_constant([[0.3, 1.0], [-0.5, 2.0]])
    P = np.array([pressure_sft(golden_mean_shift(), phi, q) for q in np.linspace(-5, 5, 101)])
    checks["convexity"] = bool((P[:-2] - 2 * P[1:-1] + P[2:] >= -1e-9).all())
    av = np.linspace(0.02, 0.48, 47)
    L = np.array([legendre_spectrum(golden_mean_shift(), ONE, x) for x in av])
    checks["concavity"] = bool((L[:-2] - 2 * L[1:-1] + L[2:] <= 1e-9).all())
    checks["upper_capacity_oracle"] = abs(
        upper_capacity_entropy(S, [0.5], range(1, 13), metric).value - math.log(2)) < 1e-9
    acceptance(11, all(checks.values()),
               ", ".join(f"{k} {'ok' if v else 'FAIL'}" for k, v in checks.items())
               + " (suite runtime reported below)")
