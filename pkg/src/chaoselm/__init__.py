"""Fault diagnosis for rolling bearings with a chaos-seeded extreme learning machine.

The pipeline: cut vibration signals into fixed-length windows, extract
time-domain features, select a subset by sequential forward selection, and
classify with a bias-free single-hidden-layer network whose input weights
come deterministically from the logistic map.
"""

from .chaos import ChaosConfig, build_weight_matrix, logistic_sequence
from .dataio import (
    DatasetManifest,
    ManifestEntry,
    SplitDataset,
    class_windows,
    labels_of,
    load_manifest,
    load_signal,
    load_split,
    save_manifest,
    split_windows,
    window_signal,
)
from .elm import (
    ACTIVATIONS,
    ModelConfig,
    TrainedModel,
    accuracy,
    activate,
    hidden_matrix,
    load_model,
    one_hot,
    predict,
    save_model,
    train,
    train_random_baseline,
)
from .errors import (
    ChaosElmError,
    ConstantInput,
    DimensionMismatch,
    DuplicateFeature,
    FeatureSetMismatch,
    FeatureUndefined,
    InvalidChaosParam,
    LabelOutOfRange,
    LengthMismatch,
    ParseError,
    SignalTooShort,
    SvdFailure,
    TooFewWindows,
)
from .experiments import (
    FeatureBundle,
    LatencyReport,
    StabilityResult,
    SweepResult,
    bench_inference,
    multi_condition_eval,
    pearson,
    prepare_bundle,
    stability_study,
    sweep_chaos,
    sweep_neurons,
)
from .features import (
    FEATURE_IDS,
    FEATURE_NAMES,
    FeatureMatrix,
    NormalizationStats,
    SignalWindow,
    extract_feature,
    extract_matrix,
    normalize_apply,
    normalize_fit,
    parse_feature_ids,
)
from .linalg import lstsq_min_norm, pinv
from .sfs import SfsTrace, sfs_select
from .synthetic import generate_dataset, generate_signals

__version__ = "0.1.0"
