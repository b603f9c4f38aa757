"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines live.
The benchmark grid (5 families x 4 cells x 10 seeds) is executed once per
session through the same plan machinery the CLI uses.
"""

from fractions import Fraction

import numpy as np
import pytest

from mmkmeans import (
    RunConfig,
    adjusted_mutual_information,
    adjusted_rand_index,
    contingency,
    homogeneity_completeness_v,
    majorizer,
    objective_complete,
    objective_observed,
    run_lloyd,
    run_mm,
    silhouette,
    silhouette_samples,
)
from mmkmeans.harness.experiment import default_plan, execute_plan, median_metric
from mmkmeans.lloyd import assign_step, centroid_update_step
from mmkmeans.metrics import expected_mutual_information, mutual_information
from mmkmeans.mm import CompletedDataset, impute_step, init_fully_observed, initial_imputation

SEEDS = tuple(range(10))
FAMILIES = ("circles", "moons", "blobs", "varied", "aniso")
AGREEMENT = ("homogeneity", "completeness", "v_measure", "ari", "ami")


def announce(criterion: str, ok: bool, detail: str):
    print(f"ACCEPTANCE {criterion}: {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, f"{criterion}: {detail}"


@pytest.fixture(scope="module")
def grid():
    plan = default_plan(seeds=SEEDS)
    return execute_plan(plan)


def medians(grid, family, algo, fraction):
    return {attr: median_metric(grid, family, algo, fraction, attr) for attr in AGREEMENT + ("silhouette",)}


def test_criterion_1_blobs_complete(grid):
    cell = medians(grid, "blobs", "lloyd", 0.0)
    five_perfect = all(round(cell[attr], 3) == 1.0 for attr in AGREEMENT)
    sil_ok = abs(cell["silhouette"] - 0.829) <= 0.05
    times = [
        row.metrics.time_seconds
        for row in grid
        if row.dataset.startswith("blobs") and row.algorithm == "lloyd"
    ]
    fast = max(times) < 1.0
    announce(
        "1 (blobs, complete data)",
        five_perfect and sil_ok and fast,
        f"agreement medians {[round(cell[a], 3) for a in AGREEMENT]}, "
        f"silhouette {cell['silhouette']:.3f} (0.829+-0.05), max fit {max(times):.3f}s",
    )


def test_criterion_2_blobs_missing(grid):
    details = []
    ok = True
    for fraction in (0.1, 0.3, 0.5):
        cell = medians(grid, "blobs", "mm", fraction)
        rounded = [round(cell[attr], 3) for attr in AGREEMENT]
        ok &= all(value == 1.0 for value in rounded)
        details.append(f"{int(fraction * 100)}%: {rounded}")
    announce("2 (blobs, mm at 10/30/50% missing)", ok, "; ".join(details))


def test_criterion_3_circles_carry_no_class_signal(grid):
    ok = True
    details = []
    for algo, fraction in (("lloyd", 0.0), ("mm", 0.1), ("mm", 0.3), ("mm", 0.5)):
        cell = medians(grid, "circles", algo, fraction)
        good = (
            cell["homogeneity"] <= 0.01
            and abs(cell["ari"]) <= 0.02
            and abs(cell["silhouette"] - 0.35) <= 0.05
        )
        ok &= good
        details.append(
            f"{algo}@{fraction:g}: h={cell['homogeneity']:.4f} ari={cell['ari']:.4f} "
            f"sil={cell['silhouette']:.3f}"
        )
    announce("3 (noisy circles)", ok, "; ".join(details))


def test_criterion_4_moons(grid):
    complete = medians(grid, "moons", "lloyd", 0.0)
    at30 = medians(grid, "moons", "mm", 0.3)
    ok = (
        abs(complete["ari"] - 0.483) <= 0.06
        and abs(complete["v_measure"] - 0.385) <= 0.05
        and abs(at30["ari"] - complete["ari"]) <= 0.05
        and abs(at30["v_measure"] - complete["v_measure"]) <= 0.05
    )
    announce(
        "4 (noisy moons)",
        ok,
        f"complete ari={complete['ari']:.3f} (0.483+-0.06) v={complete['v_measure']:.3f} "
        f"(0.385+-0.05); mm@30% ari={at30['ari']:.3f} v={at30['v_measure']:.3f}",
    )


def test_criterion_5_varied_and_aniso(grid):
    varied = median_metric(grid, "varied", "lloyd", 0.0, "ari")
    aniso = median_metric(grid, "aniso", "lloyd", 0.0, "ari")
    ok = abs(varied - 0.731) <= 0.12 and abs(aniso - 0.578) <= 0.12
    announce(
        "5 (varied/aniso)",
        ok,
        f"varied ari={varied:.3f} (0.731+-0.12), aniso ari={aniso:.3f} (0.578+-0.12)",
    )


def test_criterion_6_robustness_to_half_missing(grid):
    ok = True
    details = []
    for family in FAMILIES:
        dv = abs(
            median_metric(grid, family, "mm", 0.5, "v_measure")
            - median_metric(grid, family, "lloyd", 0.0, "v_measure")
        )
        da = abs(
            median_metric(grid, family, "mm", 0.5, "ari")
            - median_metric(grid, family, "lloyd", 0.0, "ari")
        )
        ok &= dv <= 0.10 and da <= 0.10
        details.append(f"{family}: dV={dv:.3f} dARI={da:.3f}")
    announce("6 (robustness at 50% missing)", ok, "; ".join(details))


# --- criterion 7: randomized property suites, 1000 trials each ---


def random_objective_instance(seed):
    r = np.random.default_rng(seed)
    m = int(r.integers(3, 25))
    d = int(r.integers(1, 4))
    k = int(r.integers(1, 4))
    points = r.normal(scale=r.uniform(0.5, 2.5), size=(m, d))
    observed = r.random((m, d)) > r.uniform(0.1, 0.7)
    assignment = r.integers(0, k, size=m)
    model = r.normal(size=(k, d))
    anchor = r.normal(size=(k, d))
    return points, observed, assignment, model, anchor


def test_criterion_7a_tangency_1000(grid):
    for seed in range(1000):
        points, observed, assignment, model, _ = random_objective_instance(seed)
        f = objective_observed(points, observed, assignment, model)
        g = majorizer(points, observed, assignment, model, model)
        assert g == f, f"trial {seed}"
    announce("7a (tangency, 1000 trials)", True, "majorizer(A|A) == observed objective exactly")


def test_criterion_7b_domination_1000(grid):
    for seed in range(1000):
        points, observed, assignment, model, anchor = random_objective_instance(seed)
        f = objective_observed(points, observed, assignment, model)
        g = majorizer(points, observed, assignment, model, anchor)
        assert f <= g * (1 + 1e-12) + 1e-12, f"trial {seed}"
    announce("7b (domination, 1000 trials)", True, "observed objective <= majorizer")


def small_mm_problem(seed):
    r = np.random.default_rng(seed)
    m = int(r.integers(8, 26))
    d = int(r.integers(2, 4))
    k = int(r.integers(2, 4))
    points = r.normal(scale=2.0, size=(m, d))
    observed = r.random((m, d)) > 0.35
    return points, observed, k


def test_criterion_7c_mm_descent_1000(grid):
    for seed in range(1000):
        points, observed, k = small_mm_problem(seed)
        result = run_mm(points, observed, RunConfig(k=k, seed=seed, max_iter=15))
        objectives = [rec.objective for rec in result.trace.iterations]
        for prev, cur in zip(objectives, objectives[1:]):
            assert cur <= prev * (1 + 1e-9) + 1e-12, f"trial {seed}: {objectives}"
    announce("7c (mm descent, 1000 trials)", True, "observed objective never increases")


def test_criterion_7d_zero_missing_equivalence_1000(grid):
    for seed in range(1000):
        r = np.random.default_rng(seed)
        m = int(r.integers(6, 22))
        d = int(r.integers(1, 4))
        k = int(r.integers(2, min(m, 5)))
        points = r.normal(size=(m, d))
        config = RunConfig(k=k, seed=seed, max_iter=12)
        a = run_lloyd(points, config)
        b = run_mm(points, np.ones((m, d), dtype=bool), config)
        assert len(a.trace.iterations) == len(b.trace.iterations), f"trial {seed}"
        for ra, rb in zip(a.trace.iterations, b.trace.iterations):
            assert np.array_equal(ra.centroids, rb.centroids), f"trial {seed}"
            assert ra.objective == rb.objective and ra.movement == rb.movement, f"trial {seed}"
    announce("7d (zero-missing equivalence, 1000 trials)", True, "identical traces")


def test_criterion_7e_observed_immutability_1000(grid):
    for seed in range(1000):
        points, observed, k = small_mm_problem(seed)
        rng = np.random.default_rng(seed)
        centroids = init_fully_observed(points, observed, k, rng)
        completed = CompletedDataset.create(points, observed)
        initial_imputation(completed, centroids, rng)
        assert np.array_equal(completed.working[observed], points[observed]), f"trial {seed}"
        for _ in range(6):
            assignment = assign_step(completed.working, centroids)
            centroids = centroid_update_step(completed.working, assignment, k, centroids)
            impute_step(completed, assignment, centroids)
            assert np.array_equal(completed.working[observed], points[observed]), f"trial {seed}"
    announce("7e (observed-data immutability, 1000 trials)", True, "observed slots bit-exact")


def test_criterion_7f_metric_permutation_invariance_1000(grid):
    for seed in range(1000):
        r = np.random.default_rng(seed)
        m = int(r.integers(4, 40))
        truth = r.integers(0, int(r.integers(2, 5)), size=m)
        pred = r.integers(0, int(r.integers(2, 5)), size=m)
        relabel = r.permutation(int(pred.max()) + 1)
        t1 = contingency(truth, pred)
        t2 = contingency(truth, relabel[pred])
        assert homogeneity_completeness_v(t1) == homogeneity_completeness_v(t2), f"trial {seed}"
        assert adjusted_rand_index(t1) == adjusted_rand_index(t2), f"trial {seed}"
        assert adjusted_mutual_information(t1) == adjusted_mutual_information(t2), f"trial {seed}"
    announce("7f (metric permutation invariance, 1000 trials)", True, "exact equality")


def ari_from_pair_counts(truth, pred):
    """O(m^2) pair classifier, independent of the contingency route."""
    same_t = truth[:, None] == truth[None, :]
    same_p = pred[:, None] == pred[None, :]
    upper = np.triu(np.ones_like(same_t, dtype=bool), k=1)
    both = int((same_t & same_p & upper).sum())
    t_pairs = int((same_t & upper).sum())
    p_pairs = int((same_p & upper).sum())
    pairs = int(upper.sum())
    expected = Fraction(t_pairs * p_pairs, pairs)
    maximum = Fraction(t_pairs + p_pairs, 2)
    if maximum == expected:
        return 1.0
    return float((both - expected) / (maximum - expected))


def test_criterion_7g_ari_brute_force_1000(grid):
    for seed in range(1000):
        r = np.random.default_rng(seed)
        m = int(r.integers(2, 51))
        truth = r.integers(0, int(r.integers(1, 6)), size=m)
        pred = r.integers(0, int(r.integers(1, 6)), size=m)
        mine = adjusted_rand_index(contingency(truth, pred))
        assert mine == ari_from_pair_counts(truth, pred), f"trial {seed}"
    announce("7g (ARI pair-counting equivalence, 1000 trials, m<=50)", True, "exact match")


# --- criterion 8: oracle suite ---


def test_criterion_8a_centroid_update_stationarity(grid):
    for seed in range(50):
        r = np.random.default_rng(seed)
        m = int(r.integers(6, 30))
        d = int(r.integers(1, 4))
        k = int(r.integers(1, 4))
        points = r.normal(scale=2.0, size=(m, d))
        assignment = r.integers(0, k, size=m)
        updated = centroid_update_step(points, assignment, k, r.normal(size=(k, d)))
        base = objective_complete(points, assignment, updated)
        for c in range(k):
            for j in range(d):
                for delta in np.linspace(-0.5, 0.5, 21):
                    if delta == 0:
                        continue
                    perturbed = updated.copy()
                    perturbed[c, j] += delta
                    value = objective_complete(points, assignment, perturbed)
                    assert value >= base, f"seed {seed} c={c} j={j} delta={delta}"
    announce("8a (centroid update beats grid perturbations)", True,
             "mean centroid minimal along every scanned coordinate")


def test_criterion_8b_ami_vs_permutation_sampled_emi(grid):
    """Exact expected MI sits within 3 standard errors of a >=100k-permutation estimate."""
    cases = [
        (np.array([0, 0, 0, 1, 1, 2]), np.array([0, 1, 1, 0, 2, 2])),
        (np.array([0, 0, 1, 1, 2, 2]), np.array([0, 0, 1, 1, 0, 1])),
        (np.array([0, 1, 0, 1, 0, 1]), np.array([1, 1, 0, 0, 1, 0])),
    ]
    details = []
    for truth, pred in cases:
        exact = expected_mutual_information(contingency(truth, pred))
        r = np.random.default_rng(13)
        n_perm = 100_000
        samples = np.empty(n_perm)
        for t in range(n_perm):
            samples[t] = mutual_information(contingency(truth, r.permutation(pred)))
        estimate = float(samples.mean())
        se = float(samples.std(ddof=1) / np.sqrt(n_perm))
        assert abs(exact - estimate) <= 3 * se, f"{exact} vs {estimate} +- {se}"
        details.append(f"|{exact:.5f}-{estimate:.5f}|<={3 * se:.5f}")
    announce("8b (AMI expected-MI vs permutation sampling)", True, "; ".join(details))


def test_criterion_8c_silhouette_hand_instance(grid):
    points = np.array([[0.0], [1.0], [10.0], [11.0]])
    pred = np.array([0, 0, 1, 1])
    outer = (10.5 - 1.0) / 10.5
    inner = (9.5 - 1.0) / 9.5
    per_sample = silhouette_samples(points, pred)
    expected = np.array([outer, inner, inner, outer])
    ok = np.allclose(per_sample, expected, rtol=0, atol=1e-9) and abs(
        silhouette(points, pred) - expected.mean()
    ) <= 1e-9
    announce(
        "8c (silhouette all-pairs hand instance)",
        bool(ok),
        f"per-sample {np.round(per_sample, 6).tolist()} == all-pairs values to 1e-9",
    )
