"""Acceptance suite: one test per shipping criterion, with a PASS/FAIL line each.

Run as ``pytest tests/test_acceptance.py -v`` (add ``-s`` to see the summary
lines for passing criteria as well). Every study here goes through the real
CLI or public API with fixed seeds, so the whole suite is deterministic.

Criterion 5 (the published worked-example dataset) is skipped and replaced
by criteria 6-8, because that dataset cannot be vendored here; criteria 2
and 4 encode interval-containment counts that an exactly calibrated
posterior cannot reach (the chain's HPD width matches independent
quadrature; the shortfall is a property of the target numbers, not of the
sampler), and they are asserted as stated rather than weakened.
"""

import itertools
import json
import math
import statistics

import numpy as np
import pytest
import scipy.stats
from _oracles import (
    batch_mean_se,
    batch_var_se,
    group_posterior_moments,
    ks_distance,
    shortest_covering_interval,
)

from mixtt.analysis import cohen_partition, effect_size_series, hpd_interval
from mixtt.cli import main as cli_main
from mixtt.distributions import RngState, derive_seed, sample_inverse_gamma, sample_normal
from mixtt.gibbs import ChainConfig, run_chain
from mixtt.harness import Scenario, StudyConfig, run_study
from mixtt.model import GroupedSample, IndependencePrior, PriorPreset, realize_preset
from mixtt.welch import welch_t_test

SEED = 20260810


def _report(criterion: str, passed: bool, detail: str) -> None:
    print(f"ACCEPTANCE {criterion}: {'PASS' if passed else 'FAIL'} - {detail}")


def _simulate(tmp, name, scenario, n, datasets, seed):
    out = tmp / f"{name}.json"
    rc = cli_main([
        "simulate", "--scenario", scenario, "--n", str(n), "--datasets", str(datasets),
        "--seed", str(seed), "--output", str(out),
    ])
    assert rc == 0
    return json.loads(out.read_text())


@pytest.fixture(scope="module")
def workdir(tmp_path_factory):
    return tmp_path_factory.mktemp("acceptance")


@pytest.fixture(scope="module")
def null_study_300(workdir):
    return _simulate(workdir, "null300", "null", 300, 100, SEED)


def test_c1_null_scenario_type_i_elimination(null_study_300):
    agg = null_study_300["aggregates"]
    rate = agg["type_i_rate"]
    detail = (
        f"simulate null n=300: type-I rate {rate:.2f} "
        f"(rejected={agg['rejected_count']}, indeterminate={agg['indeterminate_count']}, "
        f"accepted={agg['accepted_count']}); requirement: exactly 0"
    )
    _report("1 null-scenario type-I elimination", rate == 0.0, detail)
    assert rate == 0.0


def test_c2_large_effect_recovery(workdir):
    study = _simulate(workdir, "large200", "large", 200, 100, SEED)
    true_delta = study["config"]["true_delta"]
    mean_ok = abs(study["aggregates"]["mean_delta_mpe"] - 1.0307) <= 0.15
    contained = sum(r["hpd"]["lower"] >= 0.8 for r in study["records"])
    count_ok = contained >= 90
    detail = (
        f"simulate large n=200: mean delta_mpe={study['aggregates']['mean_delta_mpe']:.4f} "
        f"(true {true_delta:.4f}, need +-0.15: {'ok' if mean_ok else 'off'}); "
        f"HPD contained in [0.8, inf): {contained}/100, need >= 90. "
        "An exactly calibrated posterior cannot reach that count: the 95% HPD "
        "half-width here is ~0.21 while the posterior mean scatters across "
        "datasets with sd ~0.11, so containment holds for only ~58% of datasets."
    )
    _report("2 large-effect recovery", mean_ok and count_ok, detail)
    assert mean_ok
    assert count_ok, detail


def test_c3_medium_effect_always_rejects_null(workdir):
    study = _simulate(workdir, "medium100", "medium", 100, 100, SEED)
    inside = sum(
        r["hpd"]["lower"] >= -0.2 and r["hpd"]["upper"] <= 0.2 for r in study["records"]
    )
    detail = f"simulate medium n=100: HPDs inside (-0.2, 0.2): {inside}/100; requirement: 0"
    _report("3 medium-effect null rejection", inside == 0, detail)
    assert inside == 0


def test_c4_small_effect_convergence(workdir):
    study = _simulate(workdir, "small700", "small", 700, 100, SEED)
    contained = sum(
        r["hpd"]["lower"] >= 0.2 and r["hpd"]["upper"] < 0.5 for r in study["records"]
    )
    pmp_high = sum(r["pmp"]["value"] >= 0.95 for r in study["records"])
    ok = contained >= 95 and pmp_high >= 95
    detail = (
        f"simulate small n=700: HPD inside [0.2, 0.5): {contained}/100 (need >= 95), "
        f"PMP >= 0.95: {pmp_high}/100 (need >= 95). "
        "Both targets exceed what the exact posterior allows at n=700: the HPD "
        "width (~0.21, matching quadrature) nearly fills the 0.3-wide band while "
        "the posterior mean scatters with sd ~0.054, leaving ~58% containment "
        "and ~74% high-PMP rates."
    )
    _report("4 small-effect convergence", ok, detail)
    assert contained >= 95, detail
    assert pmp_high >= 95, detail


def test_c5_worked_example_dataset():
    detail = (
        "published worked-example dataset is not redistributable in this "
        "environment; per the fallback clause the criterion is replaced by "
        "criteria 6-8"
    )
    _report("5 worked example", True, f"SKIPPED - {detail}")
    pytest.skip(detail)


def test_c6_sampler_matches_quadrature_oracle():
    sample = GroupedSample(
        [4.2, 5.1, 4.8, 5.6, 4.4, 6.3, 5.9, 7.1, 6.5, 6.8], [1] * 5 + [2] * 5
    )
    prior = IndependencePrior(b0=5.5, B0=4.0, c0=3.0, C0=2.0)
    chain = run_chain(sample, ChainConfig(205_000, 5_000, SEED, prior))

    checks = []
    for label, mu_draws, v_draws, values in [
        ("group1", chain.mu1, chain.sigma2_1, sample.group1),
        ("group2", chain.mu2, chain.sigma2_2, sample.group2),
    ]:
        oracle = group_posterior_moments(values, prior)
        for name, draws, target in [
            (f"{label}.mean_mu", mu_draws, oracle["mean_mu"]),
            (f"{label}.mean_v", v_draws, oracle["mean_v"]),
        ]:
            est, se = batch_mean_se(draws)
            checks.append((name, est, target, se))
        for name, draws, target in [
            (f"{label}.var_mu", mu_draws, oracle["var_mu"]),
            (f"{label}.var_v", v_draws, oracle["var_v"]),
        ]:
            est, se = batch_var_se(draws)
            checks.append((name, est, target, se))

    worst = max(abs(est - target) / se for _, est, target, se in checks)
    ok = worst <= 3.0
    _report(
        "6 sampler-oracle equivalence",
        ok,
        f"8 posterior moments vs 2-D quadrature on a fixed 5+5 dataset; "
        f"worst |z| = {worst:.2f} (limit 3)",
    )
    for name, est, target, se in checks:
        assert abs(est - target) <= 3.0 * se, (name, est, target, se)


def test_c7_property_suites():
    failures = []

    # shortest-window optimality, exhaustively over all multisets of size <= 12
    # drawn from a fixed 5-point grid, against the all-pairs enumeration oracle
    grid = (0.0, 1.0, 2.5, 4.0, 8.0)
    for size in range(2, 13):
        for combo in itertools.combinations_with_replacement(grid, size):
            for level in (0.3, 0.62, 0.95, 1.0):
                got = hpd_interval(np.array(combo), level)
                want = shortest_covering_interval(combo, level)
                if (got.lower, got.upper) != want:
                    failures.append(f"hpd {combo} level {level}: {got} != {want}")

    # partition: disjoint cover with draw-count masses summing to one
    part = cohen_partition()
    rng = np.random.default_rng(SEED)
    draws = rng.normal(0.0, 1.5, 4001)
    masses = part.cell_masses(draws)
    if sum(round(v * draws.size) for v in masses.values()) != draws.size:
        failures.append("partition cell counts do not add up")
    if abs(math.fsum(masses.values()) - 1.0) > 1e-12:
        failures.append("partition masses do not sum to 1")
    bounds = [b for _, lo, hi in part.cells for b in (lo, hi)]
    if bounds != sorted(bounds):
        failures.append("partition cells are not ordered")
    for x in (-0.8, -0.5, -0.2, 0.2, 0.5, 0.8, 0.0, 3.0, -3.0):
        hits = [lab for lab, lo, hi in part.cells if lo <= x < hi]
        if len(hits) != 1:
            failures.append(f"{x} lands in {len(hits)} cells")

    # translation equivariance of the wide-preset chain
    gen = np.random.default_rng(3)
    g1, g2 = gen.normal(3.0, 1.0, 12), gen.normal(4.0, 2.0, 12)
    base_sample = GroupedSample(np.concatenate([g1, g2]), [1] * 12 + [2] * 12)
    shifted_sample = GroupedSample(np.concatenate([g1, g2]) + 500.0, [1] * 12 + [2] * 12)
    base = run_chain(base_sample, ChainConfig(4000, 1000, 17, realize_preset(PriorPreset("wide"), base_sample)))
    moved = run_chain(shifted_sample, ChainConfig(4000, 1000, 17, realize_preset(PriorPreset("wide"), shifted_sample)))
    if not np.allclose(moved.mu1, base.mu1 + 500.0, rtol=1e-9, atol=0):
        failures.append("mu1 draws did not shift exactly")
    if not np.allclose(moved.sigma2_1, base.sigma2_1, rtol=1e-9, atol=0):
        failures.append("sigma2_1 draws changed under translation")
    d0 = effect_size_series(base).deltas
    d1 = effect_size_series(moved).deltas
    if not np.allclose(d1, d0, rtol=1e-9, atol=1e-12):
        failures.append("effect-size draws changed under translation")

    # welch invariances at 1e-12 relative
    w_base = welch_t_test(base_sample)
    for tag, factor, offset in [("shift", 1.0, 777.7), ("scale", 31.25, 0.0)]:
        other = GroupedSample(base_sample.values * factor + offset, base_sample.allocations)
        w = welch_t_test(other)
        for field in ("t_statistic", "df", "p_value"):
            a, b = getattr(w, field), getattr(w_base, field)
            if abs(a - b) > 1e-12 * max(abs(a), abs(b)):
                failures.append(f"welch {field} not invariant under {tag}")

    # distribution sampler: moment and KS checks at the stated sizes
    rng_n = RngState(1)
    xs = np.fromiter((sample_normal(rng_n, 0.0, 1.0) for _ in range(1_000_000)), float, count=1_000_000)
    if abs(xs.mean()) > 0.01:
        failures.append(f"1e6 normal draws: mean {xs.mean():.5f} off by > 0.01")
    if abs(xs.var(ddof=1) - 1.0) > 0.02:
        failures.append(f"1e6 normal draws: variance {xs.var(ddof=1):.5f} off by > 0.02")

    rng_ig = RngState(1)
    ig = np.fromiter((sample_inverse_gamma(rng_ig, 3.0, 2.0) for _ in range(1_000_000)), float, count=1_000_000)
    if abs(ig.mean() - 1.0) > 0.02:
        failures.append(f"1e6 IG(3,2) draws: mean {ig.mean():.5f} beyond 2% of 1")
    # analytic variance C^2/((c-1)^2 (c-2)) = 1; the tolerance is wide because
    # the fourth moment of IG(3, 2) is infinite, making this estimator heavy-tailed
    if abs(ig.var(ddof=1) - 1.0) > 0.05:
        failures.append(f"1e6 IG(3,2) draws: variance {ig.var(ddof=1):.5f} beyond 5% of 1")
    if ig.min() <= 0.0:
        failures.append("IG draws not strictly positive")

    rng_pos = RngState(2)
    if not all(sample_inverse_gamma(rng_pos, 25.01, 10.0) > 0.0 for _ in range(10_000)):
        failures.append("IG(25.01, 10) produced a non-positive draw")

    for idx in range(3):
        stream = RngState(derive_seed(SEED, idx))
        zs = [sample_normal(stream, 0.0, 1.0) for _ in range(100_000)]
        d = ks_distance(zs, scipy.stats.norm.cdf)
        if d > 0.01:
            failures.append(f"derived stream {idx}: normal KS distance {d:.4f} > 0.01")

    _report(
        "7 property suites",
        not failures,
        "HPD enumeration (6182 samples x 4 levels), partition cover, chain "
        "translation equivariance, Welch invariances, sampler moment/KS checks"
        + (f"; failures: {failures}" if failures else ""),
    )
    assert not failures, failures


@pytest.fixture(scope="module")
def null_trend_studies():
    out = {}
    for n in (50, 100, 200):
        cfg = StudyConfig(
            scenario=Scenario.named("null"), n_per_group=n, n_datasets=100,
            master_seed=derive_seed(SEED, n),
        )
        out[n] = run_study(cfg).type_i_rate
    return out


def test_c8_consistency_trends(null_trend_studies, null_study_300):
    pmp_medians = {}
    for n in (50, 200, 800):
        pmps = []
        for rep in range(20):
            cfg = StudyConfig(
                scenario=Scenario.named("large"), n_per_group=n, n_datasets=1,
                master_seed=derive_seed(derive_seed(SEED, 1000 + n), rep),
            )
            pmps.append(run_study(cfg).records[0].pmp_value)
        pmp_medians[n] = statistics.median(pmps)

    rates = dict(null_trend_studies)
    rates[300] = null_study_300["aggregates"]["type_i_rate"]

    pmp_ok = (
        pmp_medians[50] <= pmp_medians[200] <= pmp_medians[800]
        and pmp_medians[800] >= 0.95
    )
    rate_ok = rates[50] >= rates[100] >= rates[200] >= rates[300] and rates[300] == 0.0
    detail = (
        f"median PMP at n=50/200/800: {pmp_medians[50]:.3f}/{pmp_medians[200]:.3f}/"
        f"{pmp_medians[800]:.3f} (nondecreasing, >= 0.95 at 800); "
        f"null type-I rates at n=50/100/200/300: {rates[50]:.2f}/{rates[100]:.2f}/"
        f"{rates[200]:.2f}/{rates[300]:.2f} (nonincreasing, 0 at 300)"
    )
    _report("8 consistency trends", pmp_ok and rate_ok, detail)
    assert pmp_ok, detail
    assert rate_ok, detail


def test_c9_byte_identical_reruns(workdir):
    csv_path = workdir / "det.csv"
    rng = RngState(13)
    with open(csv_path, "w") as fh:
        fh.write("value,group\n")
        for _ in range(25):
            fh.write(f"{sample_normal(rng, 0.0, 1.0)},a\n")
        for _ in range(25):
            fh.write(f"{sample_normal(rng, 0.6, 1.0)},b\n")

    commands = {
        "analyze": lambda out, plot: [
            "analyze", "--input", str(csv_path), "--output", str(out),
            "--plot-data", str(plot), "--seed", "21", "--iters", "2500", "--burnin", "500",
        ],
        "simulate": lambda out, plot: [
            "simulate", "--scenario", "medium", "--n", "15", "--datasets", "3",
            "--seed", "22", "--iters", "1500", "--burnin", "300", "--output", str(out),
        ],
        "sensitivity": lambda out, plot: [
            "sensitivity", "--input", str(csv_path), "--seed", "23",
            "--iters", "1500", "--burnin", "300", "--output", str(out),
        ],
    }
    mismatches = []
    for name, build in commands.items():
        payloads = []
        for run in ("x", "y"):
            out = workdir / f"{name}_{run}.json"
            plot = workdir / f"{name}_{run}.plot.csv"
            rc = cli_main(build(out, plot))
            if rc != 0:
                mismatches.append(f"{name} run {run} exited {rc}")
                continue
            blob = out.read_bytes()
            if name == "analyze":
                blob += plot.read_bytes()
            payloads.append(blob)
        if len(payloads) == 2 and payloads[0] != payloads[1]:
            mismatches.append(f"{name}: reruns differ")
    _report(
        "9 determinism",
        not mismatches,
        "analyze/simulate/sensitivity rerun byte-identically"
        + (f"; {mismatches}" if mismatches else ""),
    )
    assert not mismatches, mismatches
