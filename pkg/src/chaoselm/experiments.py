"""Experiment harness: accuracy sweeps, stability and latency studies."""

import time
from dataclasses import dataclass, field

import numpy as np
from threadpoolctl import threadpool_limits

from . import elm
from .chaos import ChaosConfig
from .dataio import DatasetManifest, SplitDataset, labels_of, load_split
from .errors import ConstantInput, LengthMismatch
from .features import FeatureMatrix, extract_matrix, normalize_apply
from .sfs import sfs_select

# Histogram bins for the stability study, highest first: exact 1.0, then
# hundredth-wide intervals down to 0.90, then everything below.
STABILITY_BIN_LABELS = (
    "1",
    "[0.99,1)",
    "[0.98,0.99)",
    "[0.97,0.98)",
    "[0.96,0.97)",
    "[0.95,0.96)",
    "[0.94,0.95)",
    "[0.93,0.94)",
    "[0.92,0.93)",
    "[0.91,0.92)",
    "[0.90,0.91)",
    "[0,0.90)",
)


@dataclass
class FeatureBundle:
    """Feature matrices and labels for the three splits, extracted once."""

    train: FeatureMatrix
    y_train: np.ndarray
    verify: FeatureMatrix
    y_verify: np.ndarray
    test: FeatureMatrix
    y_test: np.ndarray

    def part(self, name: str):
        if name == "train":
            return self.train, self.y_train
        if name == "verify":
            return self.verify, self.y_verify
        if name == "test":
            return self.test, self.y_test
        raise ValueError(f"no split part named {name!r}")


def prepare_bundle(split: SplitDataset, feature_ids,
                   signed_denominators: bool = False) -> FeatureBundle:
    """Extract the given features for every split of a dataset."""
    return FeatureBundle(
        train=extract_matrix(split.train, feature_ids, signed_denominators),
        y_train=labels_of(split.train),
        verify=extract_matrix(split.verify, feature_ids, signed_denominators),
        y_verify=labels_of(split.verify),
        test=extract_matrix(split.test, feature_ids, signed_denominators),
        y_test=labels_of(split.test),
    )


@dataclass
class SweepResult:
    """Accuracy grid over two axes (rows x columns)."""

    row_name: str
    row_values: list
    col_name: str
    col_values: list
    accuracy: np.ndarray
    repetitions: int = 1

    def __post_init__(self):
        self.accuracy = np.asarray(self.accuracy, dtype=np.float64)
        if self.accuracy.shape != (len(self.row_values), len(self.col_values)):
            raise LengthMismatch(
                f"grid shape {self.accuracy.shape} does not match axes "
                f"{len(self.row_values)} x {len(self.col_values)}"
            )

    def best_cells(self) -> list[tuple]:
        """(row_value, col_value, accuracy) of every cell at the grid maximum."""
        top = self.accuracy.max()
        out = []
        for i, rv in enumerate(self.row_values):
            for j, cv in enumerate(self.col_values):
                if self.accuracy[i, j] == top:
                    out.append((rv, cv, float(top)))
        return out

    def to_dict(self) -> dict:
        return {
            "row_name": self.row_name,
            "row_values": list(self.row_values),
            "col_name": self.col_name,
            "col_values": list(self.col_values),
            "accuracy": self.accuracy.tolist(),
            "repetitions": self.repetitions,
        }


def _verify_accuracy(bundle: FeatureBundle, config: elm.ModelConfig,
                     split: str = "verify") -> float:
    model = elm.train(bundle.train, bundle.y_train, config)
    features, labels = bundle.part(split)
    return elm.accuracy(elm.predict(model, features), labels)


def sweep_neurons(bundle: FeatureBundle, activations, neuron_counts,
                  chaos: ChaosConfig = ChaosConfig(),
                  normalize: bool = True) -> SweepResult:
    """Verify accuracy for each (activation, hidden-neuron count) cell."""
    activations = list(activations)
    neuron_counts = [int(n) for n in neuron_counts]
    grid = np.empty((len(activations), len(neuron_counts)))
    class_count = int(max(bundle.y_train.max(), bundle.y_verify.max()))
    for i, act in enumerate(activations):
        for j, neurons in enumerate(neuron_counts):
            config = elm.ModelConfig(
                hidden_neurons=neurons, activation=act, chaos=chaos,
                normalize=normalize, class_count=class_count,
            )
            grid[i, j] = _verify_accuracy(bundle, config)
    return SweepResult("activation", activations, "neurons", neuron_counts, grid)


def sweep_chaos(bundle: FeatureBundle, z1_values, mu_values,
                config: elm.ModelConfig) -> SweepResult:
    """Verify accuracy for each (z1, mu) seed of the weight generator."""
    z1_values = [float(z) for z in z1_values]
    mu_values = [float(m) for m in mu_values]
    grid = np.empty((len(z1_values), len(mu_values)))
    class_count = config.class_count or int(
        max(bundle.y_train.max(), bundle.y_verify.max())
    )
    for i, z1 in enumerate(z1_values):
        for j, mu in enumerate(mu_values):
            cell = elm.ModelConfig(
                hidden_neurons=config.hidden_neurons,
                activation=config.activation,
                chaos=ChaosConfig(z1=z1, mu=mu),
                normalize=config.normalize,
                class_count=class_count,
            )
            grid[i, j] = _verify_accuracy(bundle, cell)
    return SweepResult("z1", z1_values, "mu", mu_values, grid)


def pearson(xs, ys) -> float:
    """Population Pearson correlation between two equally long vectors."""
    xs = np.asarray(xs, dtype=np.float64)
    ys = np.asarray(ys, dtype=np.float64)
    if xs.size != ys.size or xs.size < 2:
        raise LengthMismatch(f"{xs.size} vs {ys.size} values (need >= 2)")
    sx = np.std(xs)
    sy = np.std(ys)
    if sx == 0.0 or sy == 0.0:
        raise ConstantInput("correlation undefined for a constant vector")
    cov = np.mean((xs - np.mean(xs)) * (ys - np.mean(ys)))
    return float(cov / (sx * sy))


@dataclass
class StabilityResult:
    """Accuracy distributions of the chaos-seeded model vs the random baseline."""

    logistic: np.ndarray
    random_baseline: np.ndarray
    trials: int
    split: str

    def __post_init__(self):
        self.logistic = np.asarray(self.logistic, dtype=np.float64)
        self.random_baseline = np.asarray(self.random_baseline, dtype=np.float64)

    @staticmethod
    def _bin_index(acc: float) -> int:
        if acc == 1.0:
            return 0
        if acc < 0.90:
            return len(STABILITY_BIN_LABELS) - 1
        # Hundredth-wide bins from [0.99,1) down to [0.90,0.91); the 1e-9
        # slack keeps exact edges like 0.99 in their half-open bin despite
        # float round-off in (1 - acc).
        k = int(np.ceil((1.0 - acc) / 0.01 - 1e-9))
        return min(max(k, 1), len(STABILITY_BIN_LABELS) - 2)

    @classmethod
    def histogram(cls, accuracies) -> list[float]:
        counts = [0] * len(STABILITY_BIN_LABELS)
        accuracies = np.asarray(accuracies, dtype=np.float64)
        for acc in accuracies:
            counts[cls._bin_index(float(acc))] += 1
        return [c / accuracies.size for c in counts]

    def to_dict(self) -> dict:
        return {
            "trials": self.trials,
            "split": self.split,
            "logistic": {
                "accuracies": self.logistic.tolist(),
                "mean": float(np.mean(self.logistic)),
                "variance": float(np.var(self.logistic)),
                "max": float(np.max(self.logistic)),
            },
            "random_baseline": {
                "accuracies": self.random_baseline.tolist(),
                "mean": float(np.mean(self.random_baseline)),
                "variance": float(np.var(self.random_baseline)),
                "max": float(np.max(self.random_baseline)),
            },
            "bins": list(STABILITY_BIN_LABELS),
            "histogram": {
                "logistic": self.histogram(self.logistic),
                "random_baseline": self.histogram(self.random_baseline),
            },
        }


def stability_study(bundle: FeatureBundle, config: elm.ModelConfig,
                    trials: int = 50, seed: int = 0,
                    split: str = "test") -> StabilityResult:
    """Repeat training `trials` times for both weight schemes and compare.

    The chaos-seeded model is retrained from scratch every trial and must
    land on the same accuracy each time; the baseline redraws its weights
    and bias per trial from seeds seed, seed+1, ...
    """
    if trials < 2:
        raise ValueError(f"need at least 2 trials, got {trials}")
    logistic = np.empty(trials)
    random_baseline = np.empty(trials)
    features, labels = bundle.part(split)
    for t in range(trials):
        model = elm.train(bundle.train, bundle.y_train, config)
        logistic[t] = elm.accuracy(elm.predict(model, features), labels)
        baseline = elm.train_random_baseline(
            bundle.train, bundle.y_train, config, seed=seed + t
        )
        random_baseline[t] = elm.accuracy(
            elm.predict(baseline, features), labels
        )
    return StabilityResult(logistic, random_baseline, trials=trials, split=split)


STAGE_NAMES = ("feature_extraction", "hidden_matrix", "output_product", "argmax")


@dataclass
class LatencyReport:
    """Wall-clock cost of the prediction path, broken down by stage."""

    sample_count: int
    repetitions: int
    stage_times: dict[str, np.ndarray]  # seconds, one entry per repetition

    def __post_init__(self):
        self.stage_times = {
            name: np.asarray(v, dtype=np.float64)
            for name, v in self.stage_times.items()
        }

    @property
    def totals(self) -> np.ndarray:
        return np.sum([self.stage_times[s] for s in STAGE_NAMES], axis=0)

    def to_dict(self) -> dict:
        return {
            "sample_count": self.sample_count,
            "repetitions": self.repetitions,
            "stages": {
                name: {
                    "mean": float(np.mean(times)),
                    "min": float(np.min(times)),
                }
                for name, times in self.stage_times.items()
            },
            "total": {
                "mean": float(np.mean(self.totals)),
                "min": float(np.min(self.totals)),
            },
        }


def bench_inference(model: elm.TrainedModel, windows, repetitions: int = 5,
                    threads: int = 1,
                    signed_denominators: bool = False) -> LatencyReport:
    """Time the end-to-end prediction path over the given windows.

    Covers feature extraction through argmax; file I/O and model loading are
    excluded. One warm-up pass runs before measurement; BLAS pools are
    pinned to `threads` so results are comparable across machines.
    """
    if repetitions < 5:
        raise ValueError(f"need at least 5 repetitions, got {repetitions}")
    windows = list(windows)
    if not windows:
        raise ValueError("no windows to benchmark")
    stage_times = {name: np.empty(repetitions) for name in STAGE_NAMES}
    with threadpool_limits(limits=threads):
        for rep in range(-1, repetitions):  # rep -1 is the warm-up
            t0 = time.perf_counter()
            features = extract_matrix(
                windows, model.feature_ids, signed_denominators
            )
            if model.normalization is not None:
                features = normalize_apply(features, model.normalization)
            t1 = time.perf_counter()
            hidden = elm.hidden_matrix(
                features, model.input_weights, model.activation, bias=model.bias
            )
            t2 = time.perf_counter()
            scores = hidden @ model.output_weights
            t3 = time.perf_counter()
            np.argmax(scores, axis=1)
            t4 = time.perf_counter()
            if rep >= 0:
                stage_times["feature_extraction"][rep] = t1 - t0
                stage_times["hidden_matrix"][rep] = t2 - t1
                stage_times["output_product"][rep] = t3 - t2
                stage_times["argmax"][rep] = t4 - t3
    return LatencyReport(
        sample_count=len(windows), repetitions=repetitions,
        stage_times=stage_times,
    )


@dataclass
class ConditionResult:
    name: str
    accuracy: float
    feature_ids: list[int]
    test_count: int


@dataclass
class MultiConditionResult:
    conditions: list[ConditionResult] = field(default_factory=list)

    @property
    def average(self) -> float:
        return float(np.mean([c.accuracy for c in self.conditions]))

    def to_dict(self) -> dict:
        return {
            "conditions": [
                {
                    "name": c.name,
                    "accuracy": c.accuracy,
                    "feature_ids": c.feature_ids,
                    "test_count": c.test_count,
                }
                for c in self.conditions
            ],
            "average": self.average,
        }


def multi_condition_eval(manifests, config: elm.ModelConfig,
                         use_sfs: bool = True,
                         feature_ids=None,
                         signed_denominators: bool = False) -> MultiConditionResult:
    """Run the full pipeline independently per condition and tabulate accuracy.

    `manifests` is a list of (name, DatasetManifest). Each condition selects
    its own feature subset (unless `feature_ids` pins one), trains on its
    train split and reports test accuracy.
    """
    result = MultiConditionResult()
    for name, manifest in manifests:
        if not isinstance(manifest, DatasetManifest):
            raise TypeError(f"condition {name!r}: expected DatasetManifest")
        split = load_split(manifest)
        if feature_ids is not None:
            ids = list(feature_ids)
        elif use_sfs:
            ids = sfs_select(
                split.train, split.verify, config,
                signed_denominators=signed_denominators,
            ).final_subset
        else:
            ids = list(range(1, 15))
        bundle = prepare_bundle(split, ids, signed_denominators)
        model = elm.train(bundle.train, bundle.y_train, config)
        acc = elm.accuracy(elm.predict(model, bundle.test), bundle.y_test)
        result.conditions.append(
            ConditionResult(
                name=name, accuracy=acc, feature_ids=ids,
                test_count=int(bundle.y_test.size),
            )
        )
    return result
