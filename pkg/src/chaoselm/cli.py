"""Command-line entry point for the fault-diagnosis workflow."""

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import elm, experiments, plots, reports
from .chaos import ChaosConfig
from .dataio import (
    class_windows,
    labels_of,
    load_manifest,
    load_signal,
    load_split,
    window_signal,
)
from .errors import ChaosElmError
from .features import (
    FEATURE_NAMES,
    SignalWindow,
    extract_matrix,
    parse_feature_ids,
)
from .sfs import sfs_select
from .synthetic import DEFAULT_SEED, generate_dataset

THREADS_ENV_VAR = "CHAOSELM_THREADS"


def parse_value_list(spec: str, kind=float) -> list:
    """Parse "1,5,20" or an inclusive range "lo:hi[:step]"."""
    spec = spec.strip()
    if ":" in spec:
        parts = [float(p) for p in spec.split(":")]
        if len(parts) == 2:
            start, stop = parts
            step = 1.0
        elif len(parts) == 3:
            start, stop, step = parts
        else:
            raise ValueError(f"bad range {spec!r}; use lo:hi or lo:hi:step")
        if step <= 0 or stop < start:
            raise ValueError(f"bad range {spec!r}")
        count = int(round((stop - start) / step)) + 1
        values = [round(start + k * step, 12) for k in range(count)]
    else:
        values = [float(p) for p in spec.split(",") if p.strip()]
    if not values:
        raise ValueError(f"empty value list {spec!r}")
    if kind is int:
        return [int(round(v)) for v in values]
    return values


def _chaos_from_args(args) -> ChaosConfig:
    return ChaosConfig(z1=args.z1, mu=args.mu)


def _model_config(args, class_count=None) -> elm.ModelConfig:
    return elm.ModelConfig(
        hidden_neurons=args.neurons,
        activation=args.activation,
        chaos=_chaos_from_args(args),
        normalize=args.normalize,
        class_count=class_count,
    )


def _feature_ids(args) -> list[int]:
    return parse_feature_ids(args.features)


def _out_dir(args) -> Path | None:
    if getattr(args, "out_dir", None) is None:
        return None
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    return out


def cmd_gen_synthetic(args) -> int:
    manifest_path = generate_dataset(
        args.out,
        classes=args.classes,
        windows_per_class=args.windows_per_class,
        window_len=args.window_len,
        seed=args.seed,
        noise_scale=args.noise_scale,
    )
    print(
        f"wrote {args.classes} classes x {args.windows_per_class} windows "
        f"x {args.window_len} points; manifest: {manifest_path}"
    )
    return 0


def cmd_extract(args) -> int:
    manifest = load_manifest(args.manifest)
    split = load_split(manifest)
    ids = _feature_ids(args)
    header = ["split", "label"] + [FEATURE_NAMES[f] for f in ids]
    rows = []
    for part in ("train", "verify", "test"):
        windows = split.part(part)
        if not windows:
            continue
        matrix = extract_matrix(windows, ids, args.signed_denominators)
        for window, values in zip(windows, matrix.values):
            rows.append([part, window.label] + [repr(float(v)) for v in values])
    reports.write_csv(args.out, header, rows)
    print(f"wrote {len(rows)} rows x {len(ids)} features to {args.out}")
    return 0


def cmd_train(args) -> int:
    manifest = load_manifest(args.manifest)
    split = load_split(manifest)
    ids = _feature_ids(args)
    bundle = experiments.prepare_bundle(split, ids, args.signed_denominators)
    config = _model_config(args)
    model = elm.train(bundle.train, bundle.y_train, config)
    train_acc = elm.accuracy(elm.predict(model, bundle.train), bundle.y_train)
    verify_acc = elm.accuracy(elm.predict(model, bundle.verify), bundle.y_verify)
    elm.save_model(model, args.out)
    print(f"train accuracy  {train_acc:.4f}")
    print(f"verify accuracy {verify_acc:.4f}")
    print(f"model written to {args.out}")
    return 0


def cmd_predict(args) -> int:
    model = elm.load_model(args.model)
    signal = load_signal(args.signal)
    windows = [
        SignalWindow(w)
        for w in window_signal(signal, args.window_len, args.stride)
    ]
    matrix = extract_matrix(
        windows, model.feature_ids, args.signed_denominators
    )
    predicted = elm.predict(model, matrix)
    lines = "\n".join(str(int(c)) for c in predicted)
    if args.out:
        reports.write_text(lines, args.out)
    else:
        print(lines)
    return 0


def cmd_evaluate(args) -> int:
    model = elm.load_model(args.model)
    manifest = load_manifest(args.manifest)
    split = load_split(manifest)
    windows = split.part(args.split)
    matrix = extract_matrix(windows, model.feature_ids, args.signed_denominators)
    truth = labels_of(windows)
    predicted = elm.predict(model, matrix)
    acc = elm.accuracy(predicted, truth)
    class_labels = sorted(set(int(t) for t in truth))
    per_class = [
        float(np.mean(predicted[truth == c] == c)) for c in class_labels
    ]
    doc = {
        "split": args.split,
        "window_count": int(truth.size),
        "accuracy": acc,
        "per_class": {str(c): a for c, a in zip(class_labels, per_class)},
    }
    table = reports.format_table(
        ["class", "windows", "accuracy"],
        [
            [c, int(np.sum(truth == c)), a]
            for c, a in zip(class_labels, per_class)
        ]
        + [["overall", int(truth.size), acc]],
    )
    out = _out_dir(args)
    if out is not None:
        reports.write_json(doc, out / "evaluation.json")
        reports.write_text(table, out / "evaluation.txt")
        plots.save_class_accuracy(class_labels, per_class,
                                  out / "class_accuracy.png")
    print(table)
    print(f"accuracy on {args.split}: {acc:.4f}")
    return 0


def _sfs_table(trace) -> str:
    n_rounds = len(trace.rounds)
    header = ["feature"] + [f"round {i}" for i in range(1, n_rounds + 1)]
    all_fids = sorted(
        {fid for rnd in trace.rounds for fid in rnd.candidate_scores}
    )
    rows = []
    for fid in all_fids:
        row = [f"{fid} ({FEATURE_NAMES[fid]})"]
        for rnd in trace.rounds:
            if fid in rnd.candidate_scores:
                mark = "*" if rnd.selected == fid else ""
                row.append(f"{rnd.candidate_scores[fid]:.4f}{mark}")
            else:
                row.append("-")
        rows.append(row)
    rows.append(
        ["selected"]
        + [str(r.selected) if r.selected is not None else "none" for r in trace.rounds]
    )
    rows.append(["best"] + [f"{r.best_so_far:.4f}" for r in trace.rounds])
    return reports.format_table(header, rows)


def cmd_sfs(args) -> int:
    manifest = load_manifest(args.manifest)
    split = load_split(manifest)
    config = _model_config(args)
    trace = sfs_select(
        split.train,
        split.verify,
        config,
        candidate_ids=_feature_ids(args),
        signed_denominators=args.signed_denominators,
    )
    table = _sfs_table(trace)
    print(table)
    subset_names = ", ".join(
        f"{fid} ({FEATURE_NAMES[fid]})" for fid in trace.final_subset
    )
    print(f"final subset: {subset_names}")
    out = _out_dir(args)
    if out is not None:
        reports.write_json(trace.to_dict(), out / "sfs_trace.json")
        reports.write_text(table, out / "sfs_trace.txt")
        plots.save_sfs_trace(trace, out / "sfs_trace.png")
    if args.out_model:
        bundle = experiments.prepare_bundle(
            split, trace.final_subset, args.signed_denominators
        )
        model = elm.train(bundle.train, bundle.y_train, config)
        elm.save_model(model, args.out_model)
        print(f"model on selected subset written to {args.out_model}")
    return 0


def cmd_sweep_neurons(args) -> int:
    manifest = load_manifest(args.manifest)
    split = load_split(manifest)
    bundle = experiments.prepare_bundle(
        split, _feature_ids(args), args.signed_denominators
    )
    activations = [a.strip() for a in args.activations.split(",") if a.strip()]
    neuron_counts = parse_value_list(args.neurons, kind=int)
    result = experiments.sweep_neurons(
        bundle, activations, neuron_counts,
        chaos=_chaos_from_args(args), normalize=args.normalize,
    )
    doc = result.to_dict()
    correlations = {}
    for i, act in enumerate(activations):
        try:
            correlations[act] = experiments.pearson(
                result.accuracy[i], neuron_counts
            )
        except ChaosElmError:
            correlations[act] = None
    doc["pearson_accuracy_vs_neurons"] = correlations
    table = reports.format_table(
        ["activation"] + [str(n) for n in neuron_counts],
        [[act] + list(result.accuracy[i]) for i, act in enumerate(activations)],
    )
    print(table)
    for act, rho in correlations.items():
        shown = "n/a (constant accuracy)" if rho is None else f"{rho:.4f}"
        print(f"pearson(accuracy, neurons) for {act}: {shown}")
    out = _out_dir(args)
    if out is not None:
        reports.write_json(doc, out / "neuron_sweep.json")
        reports.write_text(table, out / "neuron_sweep.txt")
        header, rows = reports.sweep_csv_rows(result)
        reports.write_csv(out / "neuron_sweep.csv", header, rows)
        plots.save_neuron_sweep(result, out / "neuron_sweep.png")
    return 0


def cmd_sweep_chaos(args) -> int:
    manifest = load_manifest(args.manifest)
    split = load_split(manifest)
    bundle = experiments.prepare_bundle(
        split, _feature_ids(args), args.signed_denominators
    )
    z1_values = parse_value_list(args.z1_values, kind=float)
    mu_values = parse_value_list(args.mu_values, kind=float)
    config = _model_config(args)
    result = experiments.sweep_chaos(bundle, z1_values, mu_values, config)
    table = reports.format_table(
        ["z1"] + [f"{m:g}" for m in mu_values],
        [[f"{z:g}"] + list(result.accuracy[i]) for i, z in enumerate(z1_values)],
    )
    print(table)
    best = result.best_cells()
    for z1, mu, acc in best:
        print(f"best cell: z1={z1:g} mu={mu:g} accuracy={acc:.4f}")
    out = _out_dir(args)
    if out is not None:
        doc = result.to_dict()
        doc["best_cells"] = [
            {"z1": z, "mu": m, "accuracy": a} for z, m, a in best
        ]
        reports.write_json(doc, out / "chaos_sweep.json")
        reports.write_text(table, out / "chaos_sweep.txt")
        header, rows = reports.sweep_csv_rows(result)
        reports.write_csv(out / "chaos_sweep.csv", header, rows)
        plots.save_chaos_heatmap(result, out / "chaos_sweep.png")
    return 0


def cmd_stability(args) -> int:
    manifest = load_manifest(args.manifest)
    split = load_split(manifest)
    config = _model_config(args)
    if args.use_sfs:
        trace = sfs_select(
            split.train, split.verify, config,
            signed_denominators=args.signed_denominators,
        )
        ids = trace.final_subset
        print(f"using SFS-selected features: {ids}")
    else:
        ids = _feature_ids(args)
    bundle = experiments.prepare_bundle(split, ids, args.signed_denominators)
    result = experiments.stability_study(
        bundle, config, trials=args.trials, seed=args.seed, split=args.split
    )
    doc = result.to_dict()
    table = reports.format_table(
        ["bin", "chaos-seeded", "random baseline"],
        [
            [label, lg, rd]
            for label, lg, rd in zip(
                experiments.STABILITY_BIN_LABELS,
                doc["histogram"]["logistic"],
                doc["histogram"]["random_baseline"],
            )
        ]
        + [
            ["mean", doc["logistic"]["mean"], doc["random_baseline"]["mean"]],
            ["variance", doc["logistic"]["variance"],
             doc["random_baseline"]["variance"]],
        ],
    )
    print(table)
    out = _out_dir(args)
    if out is not None:
        reports.write_json(doc, out / "stability.json")
        reports.write_text(table, out / "stability.txt")
        plots.save_stability_hist(result, out / "stability.png")
    return 0


def cmd_bench(args) -> int:
    model = elm.load_model(args.model)
    manifest = load_manifest(args.manifest)
    per_class = class_windows(manifest)
    windows = [w for label in sorted(per_class) for w in per_class[label]]
    if args.count is not None:
        windows = windows[: args.count]
    report = experiments.bench_inference(
        model, windows,
        repetitions=args.repetitions, threads=args.threads,
        signed_denominators=args.signed_denominators,
    )
    doc = report.to_dict()
    rows = [
        [name, doc["stages"][name]["mean"], doc["stages"][name]["min"]]
        for name in experiments.STAGE_NAMES
    ]
    rows.append(["total", doc["total"]["mean"], doc["total"]["min"]])
    table = reports.format_table(["stage", "mean (s)", "min (s)"], rows, digits=6)
    print(table)
    print(
        f"{report.sample_count} windows, {report.repetitions} repetitions, "
        f"{args.threads} thread(s): mean total "
        f"{doc['total']['mean']:.6f} s"
    )
    out = _out_dir(args)
    if out is not None:
        reports.write_json(doc, out / "latency.json")
        reports.write_text(table, out / "latency.txt")
        plots.save_latency_bars(report, out / "latency.png")
    return 0


def _add_model_options(parser):
    parser.add_argument("--neurons", type=int, default=20,
                        help="hidden neuron count (default 20)")
    parser.add_argument("--activation", default="sigmoid",
                        choices=sorted(elm.ACTIVATIONS),
                        help="hidden activation (default sigmoid)")
    parser.add_argument("--z1", type=float, default=0.6,
                        help="logistic map seed in (0,1) (default 0.6)")
    parser.add_argument("--mu", type=float, default=3.9,
                        help="logistic map coefficient in (3.56995,4] (default 3.9)")
    parser.add_argument("--no-normalize", dest="normalize", action="store_false",
                        help="feed raw feature values instead of z-scores")


def _add_feature_options(parser, default="all", help_text=None):
    parser.add_argument(
        "--features", default=default,
        help=help_text or "feature ids or names, e.g. '7,4,9,6' (default all 14)",
    )
    parser.add_argument(
        "--signed-denominators", action="store_true",
        help="use the signed mean in impulsion/clearance denominators",
    )


def build_parser():
    parser = argparse.ArgumentParser(
        prog="chaoselm",
        description=(
            "Rolling-bearing fault diagnosis with a chaos-seeded, bias-free "
            "extreme learning machine."
        ),
    )
    parser.add_argument(
        "--config", default=None,
        help="JSON file whose keys override subcommand flag defaults",
    )
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True
    registry = {}

    def command(name, fn, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=fn)
        registry[name] = p
        return p

    p = command("gen-synthetic", cmd_gen_synthetic,
                "write a seeded synthetic bearing-like dataset")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--classes", type=int, default=11)
    p.add_argument("--windows-per-class", type=int, default=60)
    p.add_argument("--window-len", type=int, default=2048)
    p.add_argument("--noise-scale", type=float, default=1.0,
                   help="multiplier on every class's noise floor")

    p = command("extract", cmd_extract, "extract features to a CSV file")
    p.add_argument("--manifest", required=True)
    _add_feature_options(p)
    p.add_argument("--out", required=True, help="output CSV path")

    p = command("train", cmd_train, "train a model and report verify accuracy")
    p.add_argument("--manifest", required=True)
    _add_model_options(p)
    _add_feature_options(p)
    p.add_argument("--out", required=True, help="output model JSON path")

    p = command("predict", cmd_predict, "classify each window of a raw signal")
    p.add_argument("--model", required=True)
    p.add_argument("--signal", required=True)
    p.add_argument("--window-len", type=int, default=2048)
    p.add_argument("--stride", type=int, default=None)
    p.add_argument("--signed-denominators", action="store_true")
    p.add_argument("--out", default=None, help="write labels here instead of stdout")

    p = command("evaluate", cmd_evaluate, "score a model on one split")
    p.add_argument("--model", required=True)
    p.add_argument("--manifest", required=True)
    p.add_argument("--split", default="test", choices=["train", "verify", "test"])
    p.add_argument("--signed-denominators", action="store_true")
    p.add_argument("--out-dir", default=None)

    p = command("sfs", cmd_sfs, "sequential forward feature selection")
    p.add_argument("--manifest", required=True)
    _add_model_options(p)
    _add_feature_options(p, help_text="candidate pool (default all 14)")
    p.add_argument("--out-dir", default=None)
    p.add_argument("--out-model", default=None,
                   help="also train and save a model on the final subset")

    p = command("sweep-neurons", cmd_sweep_neurons,
                "accuracy grid over activations and neuron counts")
    p.add_argument("--manifest", required=True)
    p.add_argument("--activations",
                   default="sigmoid,sine,hardlim,triangular,radial")
    p.add_argument("--neurons", default="1:30",
                   help="counts as list or range, e.g. 1:30 or 5,10,20")
    p.add_argument("--z1", type=float, default=0.6)
    p.add_argument("--mu", type=float, default=3.9)
    p.add_argument("--no-normalize", dest="normalize", action="store_false")
    _add_feature_options(p)
    p.add_argument("--out-dir", default=None)

    p = command("sweep-chaos", cmd_sweep_chaos,
                "accuracy grid over logistic-map seeds")
    p.add_argument("--manifest", required=True)
    p.add_argument("--z1-values", default="0.1:0.9:0.1",
                   help="z1 grid, e.g. 0.1:0.9:0.1")
    p.add_argument("--mu-values", default="3.95:3.99:0.01",
                   help="mu grid, e.g. 3.95:3.99:0.01")
    _add_model_options(p)
    _add_feature_options(p)
    p.add_argument("--out-dir", default=None)

    p = command("stability", cmd_stability,
                "chaos-seeded vs random-weight accuracy distributions")
    p.add_argument("--manifest", required=True)
    _add_model_options(p)
    _add_feature_options(p)
    p.add_argument("--use-sfs", action="store_true",
                   help="select features by SFS before the study")
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--split", default="test", choices=["train", "verify", "test"])
    p.add_argument("--out-dir", default=None)

    p = command("bench", cmd_bench, "latency of the prediction path")
    p.add_argument("--model", required=True)
    p.add_argument("--manifest", required=True)
    p.add_argument("--count", type=int, default=None,
                   help="benchmark only the first N windows")
    p.add_argument("--repetitions", type=int, default=5)
    p.add_argument("--threads", type=int,
                   default=int(os.environ.get(THREADS_ENV_VAR, "1")))
    p.add_argument("--signed-denominators", action="store_true")
    p.add_argument("--out-dir", default=None)

    return parser, registry


def _load_overlay(argv) -> dict:
    for i, token in enumerate(argv):
        if token == "--config" and i + 1 < len(argv):
            path = argv[i + 1]
        elif token.startswith("--config="):
            path = token.split("=", 1)[1]
        else:
            continue
        data = json.loads(Path(path).read_text())
        if not isinstance(data, dict):
            raise ValueError("config overlay must be a JSON object")
        return {key.replace("-", "_"): value for key, value in data.items()}
    return {}


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser, registry = build_parser()
    try:
        overlay = _load_overlay(argv)
        if overlay:
            command = next((a for a in argv if not a.startswith("-")), None)
            target = registry.get(command, parser)
            known = {a.dest for a in target._actions}
            unknown = set(overlay) - known
            if unknown:
                raise ValueError(
                    f"config keys {sorted(unknown)} are not flags of "
                    f"{command or 'chaoselm'}"
                )
            target.set_defaults(**overlay)
        args = parser.parse_args(argv)
        return args.func(args)
    except ChaosElmError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
