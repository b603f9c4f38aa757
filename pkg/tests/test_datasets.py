import numpy as np
import pytest

from mmkmeans import DatasetSpec, generate, inject_missing
from mmkmeans.datasets import (
    ANISO_TRANSFORM,
    BLOBS_CENTERS,
    CIRCLE_RADII,
    VARIED_ANISO_CENTERS,
    VARIED_STDS,
    blob_points,
    split_evenly,
)

ALL_FAMILIES = ("circles", "moons", "blobs", "varied", "aniso")


class TestSpecValidation:
    def test_unknown_family(self):
        with pytest.raises(ValueError):
            DatasetSpec(family="bogus")

    def test_negative_noise(self):
        with pytest.raises(ValueError):
            DatasetSpec(family="moons", noise=-0.1)

    def test_n_below_cluster_count(self):
        with pytest.raises(ValueError):
            DatasetSpec(family="blobs", n=2)

    @pytest.mark.parametrize("family,k", [("circles", 2), ("moons", 2), ("blobs", 3), ("varied", 3), ("aniso", 3)])
    def test_k_true(self, family, k):
        assert DatasetSpec(family=family).k_true == k


def test_split_evenly():
    assert split_evenly(500, 2) == [250, 250]
    assert split_evenly(500, 3) == [167, 167, 166]
    assert split_evenly(5, 3) == [2, 2, 1]


class TestGenerate:
    def test_noiseless_circles_have_exact_radii(self):
        data = generate(DatasetSpec(family="circles", n=40, noise=0.0, seed=3))
        radii = np.linalg.norm(data.points, axis=1)
        expected = np.asarray(CIRCLE_RADII)[data.labels]
        assert np.allclose(radii, expected, rtol=0, atol=1e-12)

    def test_blobs_shape_and_labels(self):
        data = generate(DatasetSpec(family="blobs", n=500, seed=7))
        assert data.points.shape == (500, 2)
        assert sorted(np.unique(data.labels)) == [0, 1, 2]
        assert sorted(np.bincount(data.labels)) == [166, 167, 167]

    def test_aniso_is_transformed_blob_draw(self):
        spec = DatasetSpec(family="aniso", n=120, seed=11)
        data = generate(spec)
        rng = np.random.default_rng(spec.seed)
        base, labels = blob_points(spec.n, (1.0, 1.0, 1.0), VARIED_ANISO_CENTERS, rng)
        assert np.array_equal(data.points, base @ ANISO_TRANSFORM)
        assert np.array_equal(data.labels, labels)

    @pytest.mark.parametrize("family", ALL_FAMILIES)
    def test_bit_identical_regeneration(self, family):
        spec = DatasetSpec(family=family, n=200, seed=13)
        a = generate(spec)
        b = generate(spec)
        assert np.array_equal(a.points, b.points)
        assert np.array_equal(a.labels, b.labels)

    def test_different_seeds_differ(self):
        a = generate(DatasetSpec(family="moons", n=100, seed=0))
        b = generate(DatasetSpec(family="moons", n=100, seed=1))
        assert not np.array_equal(a.points, b.points)

    def test_varied_component_spreads(self):
        data = generate(DatasetSpec(family="varied", n=3000, seed=5))
        for c, expected in enumerate(VARIED_STDS):
            spread = data.points[data.labels == c].std(axis=0).mean()
            assert spread == pytest.approx(expected, rel=0.15)

    def test_blob_labels_match_generating_centers(self):
        """At 5 sigma per coordinate, effectively every sample sits near its center."""
        for family, centers, stds in (
            ("blobs", BLOBS_CENTERS, (1.0, 1.0, 1.0)),
            ("varied", VARIED_ANISO_CENTERS, VARIED_STDS),
        ):
            data = generate(DatasetSpec(family=family, n=600, seed=2))
            deviation = np.abs(data.points - centers[data.labels])
            bounds = np.asarray(stds)[data.labels][:, None] * 5
            assert (deviation <= bounds).all(axis=1).mean() >= 0.99

    def test_aniso_labels_match_after_inverse_transform(self):
        data = generate(DatasetSpec(family="aniso", n=600, seed=2))
        pre_image = data.points @ np.linalg.inv(ANISO_TRANSFORM)
        deviation = np.abs(pre_image - VARIED_ANISO_CENTERS[data.labels])
        assert (deviation <= 5.0).all(axis=1).mean() >= 0.99

    def test_curve_families_hug_their_skeletons(self):
        n = 400
        noise = 0.05
        for family in ("circles", "moons"):
            data = generate(DatasetSpec(family=family, n=n, noise=noise, seed=9))
            skeleton = generate(DatasetSpec(family=family, n=n, noise=0.0, seed=9))
            # nearest skeleton point of the matching component
            ok = 0
            for i in range(n):
                same = skeleton.labels == data.labels[i]
                gap = np.linalg.norm(skeleton.points[same] - data.points[i], axis=1).min()
                ok += gap <= 6 * noise
            assert ok / n >= 0.99


class TestInjectMissing:
    def test_zero_fraction_all_observed(self):
        points = np.zeros((10, 2))
        mask = inject_missing(points, 0.0, np.random.default_rng(0))
        assert mask.all()

    def test_full_fraction_none_observed(self):
        points = np.zeros((10, 2))
        mask = inject_missing(points, 1.0, np.random.default_rng(0))
        assert not mask.any()

    def test_half_fraction_on_500x2_hides_exactly_500(self):
        points = np.zeros((500, 2))
        mask = inject_missing(points, 0.5, np.random.default_rng(4))
        assert (~mask).sum() == 500

    @pytest.mark.parametrize("fraction", [0.1, 0.25, 0.333, 0.7, 0.9])
    def test_exact_cardinality(self, fraction):
        points = np.zeros((37, 3))
        mask = inject_missing(points, fraction, np.random.default_rng(8))
        assert (~mask).sum() == round(fraction * 37 * 3)

    def test_deterministic_given_rng_seed(self):
        points = np.zeros((50, 2))
        a = inject_missing(points, 0.3, np.random.default_rng(42))
        b = inject_missing(points, 0.3, np.random.default_rng(42))
        assert np.array_equal(a, b)

    def test_fraction_out_of_range(self):
        with pytest.raises(ValueError):
            inject_missing(np.zeros((5, 2)), 1.5, np.random.default_rng(0))
        with pytest.raises(ValueError):
            inject_missing(np.zeros((5, 2)), -0.1, np.random.default_rng(0))

    def test_spread_is_element_wise(self):
        """Missing elements land on individual coordinates, not whole rows."""
        points = np.zeros((200, 2))
        mask = inject_missing(points, 0.5, np.random.default_rng(11))
        partial = (mask.sum(axis=1) == 1).sum()
        assert partial > 50
