"""Bias-free single-hidden-layer classifier with chaos-seeded input weights.

Training is a closed-form least-squares solve: the input weights come from
the logistic map (never adjusted), the hidden bias is identically zero, and
the output weights are the minimum-norm solution of H beta = T.
"""

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy.special import expit

from .chaos import ChaosConfig, build_weight_matrix
from .errors import (
    DimensionMismatch,
    FeatureSetMismatch,
    LabelOutOfRange,
    LengthMismatch,
)
from .features import (
    FeatureMatrix,
    NormalizationStats,
    normalize_apply,
    normalize_fit,
)
from .linalg import lstsq_min_norm

ACTIVATIONS = {
    "sigmoid": expit,
    "sine": np.sin,
    "hardlim": lambda x: np.where(x >= 0.0, 1.0, 0.0),
    "triangular": lambda x: np.maximum(1.0 - np.abs(x), 0.0),
    "radial": lambda x: np.exp(-np.square(x)),
}

MODEL_FORMAT_VERSION = 1


def activate(kind: str, x):
    """Apply a named activation elementwise; scalars map to scalars."""
    try:
        fn = ACTIVATIONS[kind]
    except KeyError:
        raise ValueError(
            f"unknown activation {kind!r}; choose from {sorted(ACTIVATIONS)}"
        ) from None
    result = fn(np.asarray(x, dtype=np.float64))
    if np.isscalar(x) or np.ndim(x) == 0:
        return float(result)
    return result


@dataclass
class ModelConfig:
    """Everything train() needs besides the data itself."""

    hidden_neurons: int = 20
    activation: str = "sigmoid"
    chaos: ChaosConfig = field(default_factory=ChaosConfig)
    normalize: bool = True
    class_count: int | None = None


@dataclass
class TrainedModel:
    """Frozen classifier state; immutable after training and fully serializable."""

    input_weights: np.ndarray  # (K, L)
    output_weights: np.ndarray  # (L, m)
    activation: str
    feature_ids: list[int]
    class_count: int
    chaos: ChaosConfig | None
    normalization: NormalizationStats | None = None
    bias: np.ndarray | None = None  # only the random baseline carries one


def hidden_matrix(features: FeatureMatrix, weights: np.ndarray, activation: str,
                  bias: np.ndarray | None = None) -> np.ndarray:
    """Hidden-layer output H with H[i, j] = g(w_j . f_i); no bias term.

    `bias` exists solely for the conventional random-weight baseline and is
    None on the standard path.
    """
    values = features.values if isinstance(features, FeatureMatrix) else np.asarray(features)
    if values.shape[1] != weights.shape[0]:
        raise DimensionMismatch(
            f"features have {values.shape[1]} columns but weights expect "
            f"{weights.shape[0]}"
        )
    pre = values @ weights
    if bias is not None:
        pre = pre + bias
    return activate(activation, pre)


def one_hot(labels, class_count: int) -> np.ndarray:
    """N x m indicator matrix for labels in 1..class_count."""
    labels = np.asarray(labels, dtype=np.int64)
    if labels.size and (labels.min() < 1 or labels.max() > class_count):
        bad = labels[(labels < 1) | (labels > class_count)][0]
        raise LabelOutOfRange(f"label {bad} outside 1..{class_count}")
    out = np.zeros((labels.size, class_count), dtype=np.float64)
    out[np.arange(labels.size), labels - 1] = 1.0
    return out


def _resolve_class_count(labels: np.ndarray, config: ModelConfig) -> int:
    if config.class_count is not None:
        return int(config.class_count)
    return int(labels.max())


def train(features: FeatureMatrix, labels, config: ModelConfig) -> TrainedModel:
    """Fit output weights by least squares with chaos-generated input weights.

    Deterministic: identical inputs always produce an identical model.
    """
    labels = np.asarray(labels, dtype=np.int64)
    if features.n_windows != labels.size or labels.size < 1:
        raise DimensionMismatch(
            f"{features.n_windows} feature rows vs {labels.size} labels"
        )
    stats = normalize_fit(features) if config.normalize else None
    used = normalize_apply(features, stats) if stats is not None else features
    n_features = used.values.shape[1]
    weights = build_weight_matrix(config.chaos, n_features, config.hidden_neurons)
    class_count = _resolve_class_count(labels, config)
    h = hidden_matrix(used, weights, config.activation)
    targets = one_hot(labels, class_count)
    beta = lstsq_min_norm(h, targets)
    return TrainedModel(
        input_weights=weights,
        output_weights=beta,
        activation=config.activation,
        feature_ids=list(features.feature_ids),
        class_count=class_count,
        chaos=config.chaos,
        normalization=stats,
    )


def train_random_baseline(features: FeatureMatrix, labels, config: ModelConfig,
                          seed: int) -> TrainedModel:
    """Conventional baseline: input weights and bias drawn uniformly from (-1, 1).

    Reproducible per seed; the weight matrix is drawn before the bias vector.
    """
    labels = np.asarray(labels, dtype=np.int64)
    if features.n_windows != labels.size or labels.size < 1:
        raise DimensionMismatch(
            f"{features.n_windows} feature rows vs {labels.size} labels"
        )
    stats = normalize_fit(features) if config.normalize else None
    used = normalize_apply(features, stats) if stats is not None else features
    rng = np.random.default_rng(seed)
    n_features = used.values.shape[1]
    weights = rng.uniform(-1.0, 1.0, size=(n_features, config.hidden_neurons))
    bias = rng.uniform(-1.0, 1.0, size=config.hidden_neurons)
    class_count = _resolve_class_count(labels, config)
    h = hidden_matrix(used, weights, config.activation, bias=bias)
    beta = lstsq_min_norm(h, one_hot(labels, class_count))
    return TrainedModel(
        input_weights=weights,
        output_weights=beta,
        activation=config.activation,
        feature_ids=list(features.feature_ids),
        class_count=class_count,
        chaos=None,
        normalization=stats,
        bias=bias,
    )


def predict(model: TrainedModel, features: FeatureMatrix) -> np.ndarray:
    """Class index per row in 1..m; ties resolve to the lowest class index."""
    if list(features.feature_ids) != list(model.feature_ids):
        raise FeatureSetMismatch(
            f"matrix features {features.feature_ids} != model features "
            f"{model.feature_ids}"
        )
    used = (
        normalize_apply(features, model.normalization)
        if model.normalization is not None
        else features
    )
    h = hidden_matrix(used, model.input_weights, model.activation, bias=model.bias)
    scores = h @ model.output_weights
    # np.argmax keeps the first maximum, i.e. the lowest class index on ties.
    return np.argmax(scores, axis=1) + 1


def accuracy(predicted, truth) -> float:
    """Fraction of exact matches between two label sequences."""
    predicted = np.asarray(predicted)
    truth = np.asarray(truth)
    if predicted.size != truth.size or predicted.size < 1:
        raise LengthMismatch(
            f"{predicted.size} predictions vs {truth.size} labels"
        )
    return float(np.mean(predicted == truth))


def model_to_dict(model: TrainedModel) -> dict:
    return {
        "version": MODEL_FORMAT_VERSION,
        "activation": model.activation,
        "chaos": (
            {"z1": model.chaos.z1, "mu": model.chaos.mu}
            if model.chaos is not None
            else None
        ),
        "feature_ids": list(model.feature_ids),
        "class_count": model.class_count,
        "normalization": (
            {
                "means": model.normalization.means.tolist(),
                "stds": model.normalization.stds.tolist(),
            }
            if model.normalization is not None
            else None
        ),
        "W": model.input_weights.tolist(),
        "beta": model.output_weights.tolist(),
        "bias": model.bias.tolist() if model.bias is not None else None,
    }


def model_from_dict(data: dict) -> TrainedModel:
    chaos = data.get("chaos")
    norm = data.get("normalization")
    bias = data.get("bias")
    return TrainedModel(
        input_weights=np.asarray(data["W"], dtype=np.float64),
        output_weights=np.asarray(data["beta"], dtype=np.float64),
        activation=data["activation"],
        feature_ids=[int(f) for f in data["feature_ids"]],
        class_count=int(data["class_count"]),
        chaos=ChaosConfig(z1=chaos["z1"], mu=chaos["mu"]) if chaos else None,
        normalization=(
            NormalizationStats(means=norm["means"], stds=norm["stds"])
            if norm
            else None
        ),
        bias=np.asarray(bias, dtype=np.float64) if bias is not None else None,
    )


def save_model(model: TrainedModel, path) -> None:
    """Write the model as JSON; float repr round-trips bit-exactly."""
    Path(path).write_text(json.dumps(model_to_dict(model), indent=2) + "\n")


def load_model(path) -> TrainedModel:
    return model_from_dict(json.loads(Path(path).read_text()))
