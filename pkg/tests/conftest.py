import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from chaoselm import SignalWindow, generate_signals, split_windows, window_signal


@pytest.fixture(scope="session")
def reference_split():
    """The default 11-class synthetic dataset, windowed and split in memory."""
    signals = generate_signals()
    per_class = {
        label: [SignalWindow(w, label=label) for w in window_signal(sig, 2048)]
        for label, sig in signals.items()
    }
    return split_windows(per_class)


@pytest.fixture(scope="session")
def dataset_dir(tmp_path_factory):
    """The default synthetic dataset written to disk, with its manifest."""
    from chaoselm import generate_dataset

    out = tmp_path_factory.mktemp("dataset")
    manifest_path = generate_dataset(out)
    return manifest_path
