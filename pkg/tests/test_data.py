import math

import numpy as np
import pytest

from quatbench import data
from quatbench.errors import InvalidCount, InvalidFraction, ZeroNorm
from quatbench.quats import Quaternion, quat_scale


class TestGeneration:
    def test_range_and_count(self):
        quats = data.generate_quaternions(1000, seed=42)
        assert len(quats) == 1000
        arr = np.array([q.components() for q in quats])
        assert (arr >= 0.0).all() and (arr < 1.0).all()

    def test_deterministic(self):
        a = data.generate_quaternions(50, seed=7)
        b = data.generate_quaternions(50, seed=7)
        assert a == b
        c = data.generate_quaternions(50, seed=8)
        assert a != c

    def test_component_means(self):
        arr = np.array([q.components() for q in data.generate_quaternions(100_000, seed=1)])
        assert np.abs(arr.mean(axis=0) - 0.5).max() < 0.01

    def test_zero_count_rejected(self):
        with pytest.raises(InvalidCount):
            data.generate_quaternions(0, seed=1)


class TestLabels:
    def test_both_classes_present(self):
        labels = data.assign_labels(1000, seed=42)
        assert set(np.unique(labels)) == {0, 1}

    def test_deterministic(self):
        assert np.array_equal(data.assign_labels(100, seed=3), data.assign_labels(100, seed=3))

    def test_balance(self):
        labels = data.assign_labels(100_000, seed=5)
        assert abs(labels.mean() - 0.5) < 0.01

    def test_independent_of_feature_stream(self):
        # label stream must not move when the feature stream is consumed
        labels_alone = data.assign_labels(100, seed=11)
        data.generate_quaternions(100, seed=11)
        assert np.array_equal(labels_alone, data.assign_labels(100, seed=11))

    def test_zero_count_rejected(self):
        with pytest.raises(InvalidCount):
            data.assign_labels(0, seed=1)


class TestFeaturize:
    def test_quaternion_layout(self):
        np.testing.assert_array_equal(
            data.featurize_quaternion(Quaternion(0.1, 0.2, 0.3, 0.4)), [0.1, 0.2, 0.3, 0.4]
        )
        assert data.featurize_quaternion(Quaternion(1, 0, 0, 0)).shape == (4,)

    def test_matrix_identity(self):
        np.testing.assert_array_equal(
            data.featurize_matrix(Quaternion(1, 0, 0, 0)), [1, 0, 0, 0, 1, 0, 0, 0, 1]
        )

    def test_matrix_rot90_x(self):
        c = math.sqrt(0.5)
        got = data.featurize_matrix(Quaternion(c, c, 0, 0))
        np.testing.assert_allclose(got, [1, 0, 0, 0, 0, -1, 0, 1, 0], atol=1e-12)

    def test_matrix_scale_invariant(self):
        q = Quaternion(0.3, -0.2, 0.9, 0.1)
        np.testing.assert_array_equal(
            data.featurize_matrix(q), data.featurize_matrix(quat_scale(2.0, q))
        )

    def test_matrix_zero_quaternion_raises(self):
        with pytest.raises(ZeroNorm):
            data.featurize_matrix(Quaternion(0, 0, 0, 0))

    def test_matrix_features_orthogonal(self):
        for q in data.generate_quaternions(100, seed=2):
            r = data.featurize_matrix(q).reshape(3, 3)
            assert np.max(np.abs(r.T @ r - np.eye(3))) <= 1e-9
            assert abs(np.linalg.det(r) - 1.0) <= 1e-9


class TestSplit:
    def test_paper_partition(self):
        split = data.split_indices(1000, 0.2, 0.0, seed=42)
        assert len(split.test) == 200
        assert len(split.validation) == 0
        assert len(split.train) == 800
        joined = np.sort(np.concatenate([split.train, split.validation, split.test]))
        np.testing.assert_array_equal(joined, np.arange(1000))

    def test_validation_carveout(self):
        split = data.split_indices(1000, 0.2, 0.1, seed=42)
        assert len(split.test) == 200
        assert len(split.validation) == 100
        assert len(split.train) == 700

    def test_deterministic(self):
        a = data.split_indices(500, 0.2, 0.1, seed=9)
        b = data.split_indices(500, 0.2, 0.1, seed=9)
        np.testing.assert_array_equal(a.train, b.train)
        np.testing.assert_array_equal(a.test, b.test)

    @pytest.mark.parametrize("test_f,val_f", [(0.0, 0.0), (1.0, 0.0), (1.2, 0.0), (0.2, 0.8), (0.2, -0.1)])
    def test_bad_fractions(self, test_f, val_f):
        with pytest.raises(InvalidFraction):
            data.split_indices(100, test_f, val_f, seed=1)


class TestDataset:
    def test_build_quaternion_is_raw_components(self):
        ds = data.build_dataset(20, seed=4, representation="quaternion")
        quats = data.generate_quaternions(20, seed=4)
        np.testing.assert_array_equal(ds.features, [q.components() for q in quats])
        np.testing.assert_array_equal(ds.labels, data.assign_labels(20, seed=4))

    def test_build_matrix_width(self):
        ds = data.build_dataset(20, seed=4, representation="matrix")
        assert ds.feature_width == 9
        assert ds.features.shape == (20, 9)

    def test_unknown_representation(self):
        with pytest.raises(ValueError):
            data.build_dataset(5, seed=1, representation="euler")

    def test_immutable(self):
        ds = data.build_dataset(5, seed=1)
        with pytest.raises(ValueError):
            ds.features[0, 0] = 3.0

    def test_label_validation(self):
        with pytest.raises(ValueError):
            data.Dataset(np.zeros((2, 4)), np.array([0, 2]), 4, seed=None)


class TestRoundTrip:
    def test_csv(self):
        ds = data.build_dataset(30, seed=6, representation="matrix")
        text = data.dataset_to_csv(ds)
        assert text.splitlines()[0] == "f0,f1,f2,f3,f4,f5,f6,f7,f8,label"
        back = data.dataset_from_csv(text)
        np.testing.assert_array_equal(back.features, ds.features)
        np.testing.assert_array_equal(back.labels, ds.labels)
        assert back.seed is None

    def test_json(self):
        ds = data.build_dataset(30, seed=6)
        back = data.dataset_from_json(data.dataset_to_json(ds))
        np.testing.assert_array_equal(back.features, ds.features)
        np.testing.assert_array_equal(back.labels, ds.labels)
        assert back.seed == 6

    def test_csv_rejects_garbage(self):
        with pytest.raises(ValueError):
            data.dataset_from_csv("a,b\n1,2\n")
        with pytest.raises(ValueError):
            data.dataset_from_csv("")

    def test_matrix_features_recoverable_from_quaternion_export(self):
        ds = data.build_dataset(25, seed=8, representation="quaternion")
        matrix_direct = data.featurize(data.generate_quaternions(25, seed=8), "matrix")
        back = data.dataset_from_csv(data.dataset_to_csv(ds))
        quats = data.quaternions_from_features(back.features)
        matrix_rebuilt = data.featurize(quats, "matrix")
        np.testing.assert_array_equal(matrix_direct, matrix_rebuilt)
