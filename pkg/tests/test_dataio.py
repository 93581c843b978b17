import json

import numpy as np
import pytest

from chaoselm import (
    DatasetManifest,
    ManifestEntry,
    ParseError,
    SignalTooShort,
    SignalWindow,
    TooFewWindows,
    load_manifest,
    load_signal,
    load_split,
    save_manifest,
    split_windows,
    window_signal,
)


class TestLoadSignal:
    def test_two_lines(self, tmp_path):
        path = tmp_path / "s.txt"
        path.write_text("1.0\n-2.5\n")
        assert load_signal(path).tolist() == [1.0, -2.5]

    def test_crlf(self, tmp_path):
        path = tmp_path / "s.txt"
        path.write_bytes(b"1.0\r\n2.0\r\n")
        assert load_signal(path).tolist() == [1.0, 2.0]

    def test_csv_header_autodetected(self, tmp_path):
        path = tmp_path / "s.csv"
        path.write_text("acceleration\n0.5\n-0.5\n")
        assert load_signal(path).tolist() == [0.5, -0.5]

    def test_trailing_comma(self, tmp_path):
        path = tmp_path / "s.csv"
        path.write_text("1.5,\n2.5,\n")
        assert load_signal(path).tolist() == [1.5, 2.5]

    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.txt"
        path.write_text("")
        with pytest.raises(ParseError, match="empty"):
            load_signal(path)

    def test_header_only(self, tmp_path):
        path = tmp_path / "s.csv"
        path.write_text("value\n")
        with pytest.raises(ParseError):
            load_signal(path)

    def test_bad_line_reported_with_number(self, tmp_path):
        path = tmp_path / "s.txt"
        path.write_text("1.0\n2.0\noops\n4.0\n")
        with pytest.raises(ParseError, match=":3:"):
            load_signal(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ParseError):
            load_signal(tmp_path / "nope.txt")

    def test_full_size_class_file(self, dataset_dir):
        manifest = load_manifest(dataset_dir)
        signal = load_signal(manifest.entries[0].path)
        assert signal.size == 60 * 2048


class TestWindowSignal:
    def test_non_overlapping(self):
        windows = window_signal(np.arange(10.0), 4, 4)
        assert len(windows) == 2
        assert windows[0].tolist() == [0, 1, 2, 3]
        assert windows[1].tolist() == [4, 5, 6, 7]

    def test_overlapping(self):
        assert len(window_signal(np.arange(10.0), 4, 2)) == 4

    def test_default_stride_is_window_len(self):
        assert len(window_signal(np.arange(12.0), 4)) == 3

    def test_reference_window_count(self):
        signal = np.zeros(122880)
        assert len(window_signal(signal, 2048, 2048)) == 60

    def test_too_short(self):
        with pytest.raises(SignalTooShort):
            window_signal(np.arange(3.0), 4)

    def test_round_trip_prefix(self):
        rng = np.random.default_rng(0)
        signal = rng.standard_normal(1000)
        windows = window_signal(signal, 128, 128)
        rebuilt = np.concatenate(windows)
        assert np.array_equal(rebuilt, signal[: len(rebuilt)])


def make_windows(label, count, length=8, offset=0.0):
    return [
        SignalWindow(np.full(length, offset + i, dtype=float) + [0.5] * length,
                     label=label)
        for i in range(count)
    ]


class TestSplit:
    def test_sixty_windows_4_1_1(self):
        per_class = {1: make_windows(1, 60)}
        split = split_windows(per_class)
        assert (len(split.train), len(split.verify), len(split.test)) == (40, 10, 10)

    def test_six_windows(self):
        per_class = {1: make_windows(1, 6)}
        split = split_windows(per_class)
        assert (len(split.train), len(split.verify), len(split.test)) == (4, 1, 1)

    def test_contiguous_order(self):
        per_class = {1: make_windows(1, 6)}
        split = split_windows(per_class)
        firsts = [w.samples[0] for w in split.train + split.verify + split.test]
        assert firsts == sorted(firsts)

    def test_no_window_in_two_splits(self):
        per_class = {1: make_windows(1, 12), 2: make_windows(2, 12)}
        split = split_windows(per_class)
        seen = {id(w) for w in split.train}
        assert not seen & {id(w) for w in split.verify}
        assert not seen & {id(w) for w in split.test}
        total = len(split.train) + len(split.verify) + len(split.test)
        assert total == 24

    def test_labels_preserved(self):
        per_class = {1: make_windows(1, 6), 4: make_windows(4, 6)}
        split = split_windows(per_class)
        assert {w.label for w in split.train} == {1, 4}

    def test_too_few(self):
        with pytest.raises(TooFewWindows):
            split_windows({1: make_windows(1, 2)})

    def test_shuffle_deterministic(self):
        per_class = {1: make_windows(1, 30)}
        a = split_windows(per_class, seed=9, shuffle=True)
        b = split_windows(per_class, seed=9, shuffle=True)
        assert [w.samples[0] for w in a.train] == [w.samples[0] for w in b.train]

    def test_shuffle_differs_from_contiguous(self):
        per_class = {1: make_windows(1, 30)}
        shuffled = split_windows(per_class, seed=9, shuffle=True)
        plain = split_windows(per_class)
        assert [w.samples[0] for w in shuffled.train] != (
            [w.samples[0] for w in plain.train]
        )


class TestManifest:
    def test_ratio_validation(self):
        entry = ManifestEntry(path="x.txt", label=1)
        with pytest.raises(ValueError):
            DatasetManifest(entries=[entry], split=(0.5, 0.2, 0.2))
        with pytest.raises(ValueError):
            DatasetManifest(entries=[entry], split=(1.2, -0.1, -0.1))

    def test_default_ratios_accepted(self):
        manifest = DatasetManifest(entries=[ManifestEntry(path="x", label=1)])
        assert abs(sum(manifest.split) - 1.0) <= 1e-9

    def test_window_len_validation(self):
        with pytest.raises(ValueError):
            DatasetManifest(entries=[], window_len=1)

    def test_label_validation(self):
        with pytest.raises(ValueError):
            DatasetManifest(entries=[ManifestEntry(path="x", label=0)])

    def test_save_load_round_trip(self, tmp_path):
        signal = tmp_path / "sig" / "a.txt"
        signal.parent.mkdir()
        signal.write_text("1.0\n2.0\n3.0\n4.0\n")
        manifest = DatasetManifest(
            entries=[ManifestEntry(path=signal, label=2, class_name="fault")],
            window_len=2,
            stride=2,
            seed=5,
            shuffle=True,
        )
        path = tmp_path / "manifest.json"
        save_manifest(manifest, path)
        loaded = load_manifest(path)
        assert loaded.window_len == 2
        assert loaded.seed == 5
        assert loaded.shuffle is True
        assert loaded.entries[0].label == 2
        assert loaded.entries[0].class_name == "fault"
        assert loaded.entries[0].path == signal.resolve()
        data = json.loads(path.read_text())
        assert data["entries"][0]["path"] == "sig/a.txt"

    def test_load_split_end_to_end(self, tmp_path):
        signal = tmp_path / "a.txt"
        rng = np.random.default_rng(1)
        signal.write_text(
            "\n".join(repr(v) for v in rng.uniform(-1, 1, 24).tolist())
        )
        manifest = DatasetManifest(
            entries=[ManifestEntry(path=signal, label=1)], window_len=4, stride=4
        )
        split = load_split(manifest)
        assert (len(split.train), len(split.verify), len(split.test)) == (4, 1, 1)
        assert all(w.label == 1 for w in split.train)
