"""Greedy forward selection of the feature subset maximizing verify accuracy."""

from dataclasses import dataclass, field

import numpy as np

from . import elm
from .dataio import labels_of
from .errors import FeatureUndefined
from .features import FEATURE_IDS, FeatureMatrix, extract_matrix


@dataclass
class SfsRound:
    """Scores of one selection round; `selected` is None on the stopping round."""

    candidate_scores: dict[int, float]
    undefined: list[int]
    selected: int | None
    best_so_far: float


@dataclass
class SfsTrace:
    rounds: list[SfsRound] = field(default_factory=list)
    final_subset: list[int] = field(default_factory=list)
    evaluations: int = 0

    def to_dict(self) -> dict:
        return {
            "rounds": [
                {
                    "candidate_scores": {
                        str(fid): score
                        for fid, score in r.candidate_scores.items()
                    },
                    "undefined": r.undefined,
                    "selected": r.selected,
                    "best_so_far": r.best_so_far,
                }
                for r in self.rounds
            ],
            "final_subset": self.final_subset,
            "evaluations": self.evaluations,
        }


def _feature_columns(windows, candidate_ids, signed_denominators):
    """Extract each candidate column once; undefined features map to None."""
    columns = {}
    for fid in candidate_ids:
        try:
            columns[fid] = extract_matrix(
                windows, [fid], signed_denominators
            ).values[:, 0]
        except FeatureUndefined:
            columns[fid] = None
    return columns


def _assemble(columns, ids) -> FeatureMatrix:
    return FeatureMatrix(np.column_stack([columns[f] for f in ids]), list(ids))


def sfs_select(windows_train, windows_verify, config: elm.ModelConfig,
               candidate_ids=FEATURE_IDS,
               signed_denominators: bool = False) -> SfsTrace:
    """Grow a feature subset one feature per round while verify accuracy improves.

    Every round retrains a fresh model for each remaining candidate appended
    to the current subset and scores it on the verify windows. The candidate
    with the highest score is added only if it strictly beats the best
    accuracy so far; equal-scoring candidates resolve to the lowest feature
    id. A candidate undefined on any window scores 0 and is recorded rather
    than aborting the search. Deterministic for identical inputs.
    """
    windows_train = list(windows_train)
    windows_verify = list(windows_verify)
    if not windows_train or not windows_verify:
        raise ValueError("train and verify window sets must be non-empty")
    candidates = sorted(int(f) for f in candidate_ids)

    y_train = labels_of(windows_train)
    y_verify = labels_of(windows_verify)
    if config.class_count is None:
        config = elm.ModelConfig(
            hidden_neurons=config.hidden_neurons,
            activation=config.activation,
            chaos=config.chaos,
            normalize=config.normalize,
            class_count=int(max(y_train.max(), y_verify.max())),
        )

    train_cols = _feature_columns(windows_train, candidates, signed_denominators)
    verify_cols = _feature_columns(windows_verify, candidates, signed_denominators)

    trace = SfsTrace()
    subset: list[int] = []
    pool = list(candidates)
    best = -1.0
    while pool:
        scores: dict[int, float] = {}
        undefined: list[int] = []
        round_best = -np.inf
        round_pick = None
        for fid in pool:
            trace.evaluations += 1
            if train_cols[fid] is None or verify_cols[fid] is None:
                scores[fid] = 0.0
                undefined.append(fid)
                score = 0.0
            else:
                ids = subset + [fid]
                model = elm.train(_assemble(train_cols, ids), y_train, config)
                predicted = elm.predict(model, _assemble(verify_cols, ids))
                score = elm.accuracy(predicted, y_verify)
                scores[fid] = score
            if score > round_best:
                round_best = score
                round_pick = fid
        if round_best > best:
            best = round_best
            subset.append(round_pick)
            pool.remove(round_pick)
            trace.rounds.append(
                SfsRound(scores, undefined, selected=round_pick, best_so_far=best)
            )
        else:
            trace.rounds.append(
                SfsRound(scores, undefined, selected=None, best_so_far=best)
            )
            break
    trace.final_subset = list(subset)
    return trace
