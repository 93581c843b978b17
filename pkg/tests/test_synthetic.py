import numpy as np
import pytest

from chaoselm import generate_dataset, generate_signals, load_manifest, load_split
from chaoselm.synthetic import CLASS_SPECS


class TestGenerateSignals:
    def test_shapes(self):
        signals = generate_signals(classes=3, windows_per_class=4, window_len=64)
        assert sorted(signals) == [1, 2, 3]
        assert all(sig.size == 4 * 64 for sig in signals.values())

    def test_deterministic(self):
        a = generate_signals(classes=2, windows_per_class=2, window_len=64, seed=5)
        b = generate_signals(classes=2, windows_per_class=2, window_len=64, seed=5)
        for label in a:
            assert np.array_equal(a[label], b[label])

    def test_seed_changes_output(self):
        a = generate_signals(classes=2, windows_per_class=2, window_len=64, seed=5)
        b = generate_signals(classes=2, windows_per_class=2, window_len=64, seed=6)
        assert not np.array_equal(a[1], b[1])

    def test_class_count_validation(self):
        with pytest.raises(ValueError):
            generate_signals(classes=1)
        with pytest.raises(ValueError):
            generate_signals(classes=len(CLASS_SPECS) + 1)

    def test_fault_classes_are_louder_than_normal(self):
        signals = generate_signals(classes=11, windows_per_class=2, window_len=512)
        normal_rms = np.sqrt(np.mean(signals[1] ** 2))
        for label in range(2, 12):
            assert np.sqrt(np.mean(signals[label] ** 2)) > 2 * normal_rms


class TestGenerateDataset:
    def test_writes_loadable_dataset(self, tmp_path):
        manifest_path = generate_dataset(
            tmp_path, classes=2, windows_per_class=6, window_len=128, seed=3
        )
        manifest = load_manifest(manifest_path)
        assert len(manifest.entries) == 2
        split = load_split(manifest)
        assert (len(split.train), len(split.verify), len(split.test)) == (8, 2, 2)

    def test_byte_identical_regeneration(self, tmp_path):
        kwargs = dict(classes=2, windows_per_class=3, window_len=128, seed=11)
        first = generate_dataset(tmp_path / "a", **kwargs)
        second = generate_dataset(tmp_path / "b", **kwargs)
        assert first.read_bytes() == second.read_bytes()
        for entry_a, entry_b in zip(
            load_manifest(first).entries, load_manifest(second).entries
        ):
            assert entry_a.path.read_bytes() == entry_b.path.read_bytes()
