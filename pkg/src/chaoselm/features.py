"""Time-domain feature extraction from vibration signal windows.

Fourteen features are supported, identified by a stable integer id. The
enumeration order never changes between versions because selected subsets
are persisted by id.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, DuplicateFeature, FeatureUndefined

FEATURE_NAMES = {
    1: "mean",
    2: "standard_deviation",
    3: "variance",
    4: "peak_to_peak",
    5: "square_root_amplitude",
    6: "average_amplitude",
    7: "mean_square_amplitude",
    8: "peak_value",
    9: "waveform_index",
    10: "peak_index",
    11: "impulsion_index",
    12: "clearance_factor",
    13: "skewness",
    14: "kurtosis",
}
FEATURE_IDS = tuple(FEATURE_NAMES)
NAME_TO_ID = {name: fid for fid, name in FEATURE_NAMES.items()}


@dataclass
class SignalWindow:
    """Fixed-length stretch of raw vibration samples, optionally labeled."""

    samples: np.ndarray
    label: int | None = None

    def __post_init__(self):
        self.samples = np.asarray(self.samples, dtype=np.float64)
        if self.samples.ndim != 1 or self.samples.size < 2:
            raise ValueError("a window needs at least 2 samples in one dimension")
        if not np.all(np.isfinite(self.samples)):
            raise ValueError("window samples must all be finite")

    def __len__(self):
        return self.samples.size


@dataclass
class FeatureMatrix:
    """N x K matrix of feature values; column j holds feature_ids[j]."""

    values: np.ndarray
    feature_ids: list[int]

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.float64)
        self.feature_ids = [int(f) for f in self.feature_ids]
        if self.values.ndim != 2 or self.values.shape[1] != len(self.feature_ids):
            raise DimensionMismatch(
                f"matrix has {self.values.shape} values for "
                f"{len(self.feature_ids)} feature ids"
            )

    @property
    def n_windows(self):
        return self.values.shape[0]

    def columns(self, ids) -> "FeatureMatrix":
        """Sub-matrix with the given feature ids, in the given order."""
        idx = [self.feature_ids.index(int(f)) for f in ids]
        return FeatureMatrix(self.values[:, idx], [int(f) for f in ids])


@dataclass
class NormalizationStats:
    """Per-column z-score parameters fitted on training data."""

    means: np.ndarray
    stds: np.ndarray

    def __post_init__(self):
        self.means = np.asarray(self.means, dtype=np.float64)
        self.stds = np.asarray(self.stds, dtype=np.float64)


def _feature_value(x: np.ndarray, feature_id: int, signed_denominators: bool) -> float:
    """One feature of one window; x is a 1-D float64 array."""
    fid = int(feature_id)
    if fid == 1:
        return float(np.mean(x))
    if fid == 2:
        return float(np.std(x))
    if fid == 3:
        return float(np.var(x))
    if fid == 4:
        return float(np.max(x) - np.min(x))
    if fid == 5:
        return float(np.mean(np.sqrt(np.abs(x))) ** 2)
    if fid == 6:
        return float(np.mean(np.abs(x)))
    if fid == 7:
        return float(np.sqrt(np.mean(np.square(x))))
    if fid == 8:
        return float(np.max(np.abs(x)))
    if fid == 9:
        rms = np.sqrt(np.mean(np.square(x)))
        avg_amp = np.mean(np.abs(x))
        if avg_amp == 0.0:
            raise FeatureUndefined(
                "waveform_index undefined: average amplitude is zero", feature_id=fid
            )
        return float(rms / avg_amp)
    if fid == 10:
        peak = np.max(np.abs(x))
        rms = np.sqrt(np.mean(np.square(x)))
        if rms == 0.0:
            raise FeatureUndefined("peak_index undefined: RMS is zero", feature_id=fid)
        return float(peak / rms)
    if fid in (11, 12):
        # Rectified-mean denominator by default; the signed mean of the raw
        # formula blows up on zero-mean vibration data.
        denom = np.mean(x) if signed_denominators else np.mean(np.abs(x))
        if denom == 0.0:
            raise FeatureUndefined(
                f"{FEATURE_NAMES[fid]} undefined: mean denominator is zero",
                feature_id=fid,
            )
        num = np.max(np.abs(x)) if fid == 11 else np.sqrt(np.mean(np.square(x)))
        return float(num / denom)
    if fid in (13, 14):
        # Centered moments of the rectified signal about the signed mean,
        # normalized by the signed-signal standard deviation.
        sigma = np.std(x)
        if sigma == 0.0:
            raise FeatureUndefined(
                f"{FEATURE_NAMES[fid]} undefined: standard deviation is zero",
                feature_id=fid,
            )
        power = 3 if fid == 13 else 4
        moment = np.mean((np.abs(x) - np.mean(x)) ** power)
        return float(moment / sigma**power)
    raise ValueError(f"unknown feature id {feature_id}; valid ids are 1..14")


def extract_feature(
    window: SignalWindow, feature_id: int, signed_denominators: bool = False
) -> float:
    """Value of a single feature on a single window."""
    return _feature_value(window.samples, feature_id, signed_denominators)


def extract_matrix(
    windows,
    feature_ids=FEATURE_IDS,
    signed_denominators: bool = False,
) -> FeatureMatrix:
    """Feature matrix over a list of windows; row order follows input order.

    Every entry equals the corresponding extract_feature() call exactly.
    Raises FeatureUndefined carrying the offending window index and feature
    id, DuplicateFeature on repeated ids, DimensionMismatch on mixed window
    lengths.
    """
    windows = list(windows)
    ids = [int(f) for f in feature_ids]
    if not ids:
        raise ValueError("feature_ids must be non-empty")
    if len(set(ids)) != len(ids):
        raise DuplicateFeature(f"duplicate feature ids in {ids}")
    for fid in ids:
        if fid not in FEATURE_NAMES:
            raise ValueError(f"unknown feature id {fid}; valid ids are 1..14")
    if not windows:
        return FeatureMatrix(np.empty((0, len(ids))), ids)
    n = len(windows[0])
    values = np.empty((len(windows), len(ids)), dtype=np.float64)
    for i, window in enumerate(windows):
        if len(window) != n:
            raise DimensionMismatch(
                f"window {i} has {len(window)} samples, expected {n}"
            )
        for j, fid in enumerate(ids):
            try:
                values[i, j] = _feature_value(
                    window.samples, fid, signed_denominators
                )
            except FeatureUndefined as exc:
                raise FeatureUndefined(
                    f"{exc} (window {i}, feature {fid})",
                    feature_id=fid,
                    window_index=i,
                ) from exc
    return FeatureMatrix(values, ids)


def normalize_fit(matrix: FeatureMatrix) -> NormalizationStats:
    """Per-column mean and population standard deviation of a feature matrix."""
    if matrix.n_windows == 0:
        raise ValueError("cannot fit normalization on an empty matrix")
    return NormalizationStats(
        means=np.mean(matrix.values, axis=0),
        stds=np.std(matrix.values, axis=0),
    )


def normalize_apply(matrix: FeatureMatrix, stats: NormalizationStats) -> FeatureMatrix:
    """z-score columns by fitted stats; zero-variance columns are only mean-shifted."""
    if stats.means.shape[0] != matrix.values.shape[1]:
        raise DimensionMismatch(
            f"stats cover {stats.means.shape[0]} columns, matrix has "
            f"{matrix.values.shape[1]}"
        )
    scale = np.where(stats.stds > 0.0, stats.stds, 1.0)
    return FeatureMatrix((matrix.values - stats.means) / scale, matrix.feature_ids)


def parse_feature_ids(spec: str) -> list[int]:
    """Parse a feature list like "all", "7,4,9,6" or "mean,kurtosis"."""
    spec = spec.strip()
    if spec.lower() == "all":
        return list(FEATURE_IDS)
    ids = []
    for token in spec.split(","):
        token = token.strip()
        if not token:
            continue
        if token.lstrip("-").isdigit():
            ids.append(int(token))
        elif token.lower() in NAME_TO_ID:
            ids.append(NAME_TO_ID[token.lower()])
        else:
            raise ValueError(f"unknown feature {token!r}")
    if not ids:
        raise ValueError("empty feature list")
    return ids
