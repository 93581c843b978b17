"""Signal ingestion, windowing, labeling, and deterministic splitting."""

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import ParseError, SignalTooShort, TooFewWindows
from .features import SignalWindow

DEFAULT_WINDOW_LEN = 2048
# train : verify : test = 4 : 1 : 1
DEFAULT_SPLIT = (4 / 6, 1 / 6, 1 / 6)


@dataclass
class ManifestEntry:
    path: Path
    label: int
    class_name: str = ""


@dataclass
class DatasetManifest:
    """Declarative description of signal files, labels, windowing and split."""

    entries: list[ManifestEntry]
    window_len: int = DEFAULT_WINDOW_LEN
    stride: int | None = None
    split: tuple[float, float, float] = DEFAULT_SPLIT
    seed: int = 0
    shuffle: bool = False

    def __post_init__(self):
        if self.stride is None:
            self.stride = self.window_len
        if self.window_len < 2:
            raise ValueError(f"window_len must be >= 2, got {self.window_len}")
        if self.stride < 1:
            raise ValueError(f"stride must be >= 1, got {self.stride}")
        ratios = tuple(float(r) for r in self.split)
        if len(ratios) != 3 or any(r <= 0 for r in ratios):
            raise ValueError(f"split needs three positive ratios, got {self.split}")
        if abs(sum(ratios) - 1.0) > 1e-9:
            raise ValueError(f"split ratios must sum to 1, got {sum(ratios)!r}")
        self.split = ratios
        for entry in self.entries:
            if entry.label < 1:
                raise ValueError(f"labels start at 1, got {entry.label}")


@dataclass
class SplitDataset:
    """Disjoint train / verify / test window lists, each window labeled."""

    train: list[SignalWindow] = field(default_factory=list)
    verify: list[SignalWindow] = field(default_factory=list)
    test: list[SignalWindow] = field(default_factory=list)

    def part(self, name: str) -> list[SignalWindow]:
        try:
            return getattr(self, name)
        except AttributeError:
            raise ValueError(f"no split part named {name!r}") from None


def labels_of(windows) -> np.ndarray:
    return np.asarray([w.label for w in windows], dtype=np.int64)


def load_signal(path) -> np.ndarray:
    """Read one real per line (UTF-8, LF or CRLF, optional one-column CSV header)."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    lines = text.splitlines()
    tokens = []
    line_numbers = []
    for lineno, line in enumerate(lines, start=1):
        token = line.strip().rstrip(",")
        if token:
            tokens.append(token)
            line_numbers.append(lineno)
    if not tokens:
        raise ParseError(f"{path}: empty signal file")
    start = 0
    try:
        float(tokens[0])
    except ValueError:
        start = 1  # header row of a one-column CSV
        if len(tokens) == 1:
            raise ParseError(f"{path}: no data after header") from None
    try:
        return np.array(tokens[start:], dtype=np.float64)
    except ValueError:
        for token, lineno in zip(tokens[start:], line_numbers[start:]):
            try:
                float(token)
            except ValueError:
                raise ParseError(
                    f"{path}:{lineno}: cannot parse {token!r} as a number"
                ) from None
        raise  # pragma: no cover - unreachable, the loop always finds the line


def window_signal(signal, window_len: int, stride: int | None = None) -> list[np.ndarray]:
    """Cut a signal into windows at offsets 0, stride, 2*stride, ...

    A trailing partial window is discarded; the count is
    floor((len - window_len) / stride) + 1.
    """
    signal = np.asarray(signal, dtype=np.float64)
    if stride is None:
        stride = window_len
    if signal.size < window_len:
        raise SignalTooShort(
            f"signal has {signal.size} points, window needs {window_len}"
        )
    count = (signal.size - window_len) // stride + 1
    return [signal[k * stride : k * stride + window_len].copy() for k in range(count)]


def split_windows(per_class: dict[int, list[SignalWindow]],
                  ratios=DEFAULT_SPLIT, seed: int = 0,
                  shuffle: bool = False) -> SplitDataset:
    """Partition each class's windows into train / verify / test.

    Default is contiguous in time (no shuffling), which avoids leakage
    between adjacent windows; verify and test sizes are floored, the
    remainder goes to train. Deterministic for fixed inputs.
    """
    r_train, r_verify, r_test = ratios
    rng = np.random.default_rng(seed)
    result = SplitDataset()
    for label in sorted(per_class):
        windows = list(per_class[label])
        n = len(windows)
        if n < 3:
            raise TooFewWindows(f"class {label} has {n} windows; need at least 3")
        if shuffle:
            order = rng.permutation(n)
            windows = [windows[i] for i in order]
        # The 1e-9 slack absorbs ratio round-off (e.g. 60 * (1/6) = 9.999...).
        n_verify = int(math.floor(n * r_verify + 1e-9))
        n_test = int(math.floor(n * r_test + 1e-9))
        n_train = n - n_verify - n_test
        result.train.extend(windows[:n_train])
        result.verify.extend(windows[n_train : n_train + n_verify])
        result.test.extend(windows[n_train + n_verify :])
    return result


def load_manifest(path) -> DatasetManifest:
    """Parse a manifest JSON file; entry paths are relative to its directory."""
    path = Path(path)
    data = json.loads(path.read_text())
    base = path.parent
    entries = [
        ManifestEntry(
            path=(base / e["path"]).resolve(),
            label=int(e["label"]),
            class_name=e.get("class_name", ""),
        )
        for e in data["entries"]
    ]
    return DatasetManifest(
        entries=entries,
        window_len=int(data.get("window_len", DEFAULT_WINDOW_LEN)),
        stride=(int(data["stride"]) if data.get("stride") is not None else None),
        split=tuple(data.get("split", DEFAULT_SPLIT)),
        seed=int(data.get("seed", 0)),
        shuffle=bool(data.get("shuffle", False)),
    )


def save_manifest(manifest: DatasetManifest, path) -> None:
    """Write a manifest with entry paths relative to the manifest directory."""
    path = Path(path)
    data = {
        "entries": [
            {
                "path": _relative_to(entry.path, path.parent),
                "label": entry.label,
                "class_name": entry.class_name,
            }
            for entry in manifest.entries
        ],
        "window_len": manifest.window_len,
        "stride": manifest.stride,
        "split": list(manifest.split),
        "seed": manifest.seed,
        "shuffle": manifest.shuffle,
    }
    path.write_text(json.dumps(data, indent=2) + "\n")


def _relative_to(target: Path, base: Path) -> str:
    try:
        return Path(target).resolve().relative_to(base.resolve()).as_posix()
    except ValueError:
        return Path(target).resolve().as_posix()


def class_windows(manifest: DatasetManifest) -> dict[int, list[SignalWindow]]:
    """Load and window every manifest entry, grouped by class label."""
    per_class: dict[int, list[SignalWindow]] = {}
    for entry in manifest.entries:
        signal = load_signal(entry.path)
        for samples in window_signal(signal, manifest.window_len, manifest.stride):
            per_class.setdefault(entry.label, []).append(
                SignalWindow(samples, label=entry.label)
            )
    return per_class


def load_split(manifest: DatasetManifest) -> SplitDataset:
    """Full ingestion path: read, window, and split per the manifest."""
    return split_windows(
        class_windows(manifest),
        ratios=manifest.split,
        seed=manifest.seed,
        shuffle=manifest.shuffle,
    )
