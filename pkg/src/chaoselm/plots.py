"""Figure rendering for the report paths; every figure goes straight to a file."""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .experiments import STABILITY_BIN_LABELS, STAGE_NAMES

# Dropping the Software tag keeps PNG bytes identical across reruns.
_SAVE_KWARGS = dict(dpi=150, metadata={"Software": None})


def _finish(fig, path):
    fig.tight_layout()
    fig.savefig(path, **_SAVE_KWARGS)
    plt.close(fig)
    return path


def save_neuron_sweep(result, path):
    """Accuracy vs hidden-neuron count, one line per activation."""
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for i, activation in enumerate(result.row_values):
        ax.plot(result.col_values, result.accuracy[i], marker="o", ms=3,
                label=str(activation))
    ax.set_xlabel("hidden neurons")
    ax.set_ylabel("verify accuracy")
    ax.set_ylim(-0.02, 1.02)
    ax.grid(alpha=0.3)
    ax.legend(fontsize=8)
    return _finish(fig, path)


def save_chaos_heatmap(result, path):
    """Accuracy over the (z1, mu) seed grid."""
    fig, ax = plt.subplots(figsize=(6, 5))
    im = ax.imshow(result.accuracy, origin="lower", aspect="auto",
                   cmap="viridis", vmin=min(0.9, result.accuracy.min()), vmax=1.0)
    ax.set_xticks(range(len(result.col_values)),
                  [f"{v:g}" for v in result.col_values])
    ax.set_yticks(range(len(result.row_values)),
                  [f"{v:g}" for v in result.row_values])
    ax.set_xlabel(result.col_name)
    ax.set_ylabel(result.row_name)
    fig.colorbar(im, ax=ax, label="verify accuracy")
    return _finish(fig, path)


def save_stability_hist(result, path):
    """Fraction of trials per accuracy bin for both weight schemes."""
    x = np.arange(len(STABILITY_BIN_LABELS))
    width = 0.4
    fig, ax = plt.subplots(figsize=(8, 4.5))
    ax.bar(x - width / 2, result.histogram(result.logistic), width,
           label="chaos-seeded", color="tab:red")
    ax.bar(x + width / 2, result.histogram(result.random_baseline), width,
           label="random baseline", color="tab:blue")
    ax.set_xticks(x, STABILITY_BIN_LABELS, rotation=45, ha="right", fontsize=8)
    ax.set_xlabel("accuracy bin")
    ax.set_ylabel("fraction of trials")
    ax.legend()
    return _finish(fig, path)


def save_sfs_trace(trace, path):
    """Candidate scores per round with the selected feature highlighted."""
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for idx, rnd in enumerate(trace.rounds, start=1):
        fids = sorted(rnd.candidate_scores)
        scores = [rnd.candidate_scores[f] for f in fids]
        ax.scatter([idx] * len(fids), scores, s=14, color="tab:gray", alpha=0.6)
        if rnd.selected is not None:
            ax.scatter([idx], [rnd.candidate_scores[rnd.selected]], s=48,
                       color="tab:red", zorder=3,
                       label="selected" if idx == 1 else None)
            ax.annotate(f"F{rnd.selected}",
                        (idx, rnd.candidate_scores[rnd.selected]),
                        textcoords="offset points", xytext=(6, 4), fontsize=8)
    ax.set_xlabel("selection round")
    ax.set_ylabel("verify accuracy")
    ax.set_xticks(range(1, len(trace.rounds) + 1))
    ax.grid(alpha=0.3)
    if trace.rounds:
        ax.legend(loc="lower right")
    return _finish(fig, path)


def save_latency_bars(report, path):
    """Mean per-stage wall-clock time of the prediction path."""
    means = [float(np.mean(report.stage_times[s])) for s in STAGE_NAMES]
    fig, ax = plt.subplots(figsize=(6.5, 4))
    ax.bar(range(len(STAGE_NAMES)), [m * 1e3 for m in means], color="tab:blue")
    ax.set_xticks(range(len(STAGE_NAMES)),
                  [s.replace("_", "\n") for s in STAGE_NAMES], fontsize=8)
    ax.set_ylabel("mean time (ms)")
    ax.set_title(
        f"{report.sample_count} windows, {report.repetitions} repetitions"
    )
    return _finish(fig, path)


def save_class_accuracy(class_labels, accuracies, path):
    """Per-class accuracy bars for an evaluation report."""
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.bar([str(c) for c in class_labels], accuracies, color="tab:green")
    ax.set_xlabel("class")
    ax.set_ylabel("accuracy")
    ax.set_ylim(0, 1.05)
    return _finish(fig, path)
