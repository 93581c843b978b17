import numpy as np
import pytest

from chaoselm import ModelConfig, SignalWindow, sfs_select


def mean_only_windows(rng, count, label, offset):
    """Windows whose only class-separating feature is the mean.

    Samples come in exact (v, -v) pairs plus a class offset, so the
    rectified-amplitude features have identical distributions across the
    two classes while the mean is exactly the offset.
    """
    out = []
    for _ in range(count):
        v = rng.uniform(0.5, 1.5, size=32)
        samples = np.empty(64)
        samples[0::2] = v + offset
        samples[1::2] = -v + offset
        out.append(SignalWindow(samples, label=label))
    return out


@pytest.fixture(scope="module")
def mean_only_dataset():
    rng = np.random.default_rng(17)
    train = (
        mean_only_windows(rng, 30, 1, +0.05)
        + mean_only_windows(rng, 30, 2, -0.05)
    )
    verify = (
        mean_only_windows(rng, 10, 1, +0.05)
        + mean_only_windows(rng, 10, 2, -0.05)
    )
    return train, verify


class TestSingleSeparatingFeature:
    def test_mean_selected_first_and_search_stops(self, mean_only_dataset):
        train, verify = mean_only_dataset
        trace = sfs_select(train, verify, ModelConfig())
        assert trace.rounds[0].selected == 1
        assert trace.rounds[0].candidate_scores[1] == 1.0
        # construction sanity: no other single feature is separating
        others = [
            score
            for fid, score in trace.rounds[0].candidate_scores.items()
            if fid != 1
        ]
        assert max(others) < 1.0
        assert len(trace.rounds) == 2
        assert trace.rounds[1].selected is None
        assert trace.final_subset == [1]
        assert trace.evaluations == 14 + 13

    def test_round_one_always_selects(self, mean_only_dataset):
        # any accuracy >= 0 beats the -1 sentinel, so round 1 must pick one
        train, verify = mean_only_dataset
        trace = sfs_select(train, verify, ModelConfig())
        assert trace.rounds[0].selected is not None


class TestReferenceDataset:
    @pytest.fixture(scope="class")
    def trace(self, reference_split):
        split = reference_split
        return sfs_select(split.train, split.verify, ModelConfig())

    def test_monotone_improvement(self, trace):
        bests = [r.best_so_far for r in trace.rounds if r.selected is not None]
        assert all(b2 > b1 for b1, b2 in zip(bests, bests[1:]))

    def test_bounded_evaluations(self, trace):
        assert len(trace.rounds) <= 14
        assert trace.evaluations <= 105

    def test_subset_valid(self, trace):
        assert len(set(trace.final_subset)) == len(trace.final_subset)
        assert all(1 <= f <= 14 for f in trace.final_subset)
        selected_order = [
            r.selected for r in trace.rounds if r.selected is not None
        ]
        assert trace.final_subset == selected_order

    def test_deterministic(self, reference_split, trace):
        split = reference_split
        again = sfs_select(split.train, split.verify, ModelConfig())
        assert again.final_subset == trace.final_subset
        assert len(again.rounds) == len(trace.rounds)
        for a, b in zip(again.rounds, trace.rounds):
            assert a.candidate_scores == b.candidate_scores
            assert a.selected == b.selected

    def test_trace_serialization(self, trace):
        doc = trace.to_dict()
        assert doc["final_subset"] == trace.final_subset
        assert len(doc["rounds"]) == len(trace.rounds)


class TestUndefinedCandidates:
    def test_undefined_feature_scores_zero(self):
        rng = np.random.default_rng(23)
        # one constant window makes skewness/kurtosis undefined on class 1
        train = [SignalWindow(np.full(16, 3.0), label=1)] + [
            SignalWindow(rng.normal(0, 1, 16), label=1) for _ in range(9)
        ] + [SignalWindow(rng.normal(0, 4, 16), label=2) for _ in range(10)]
        verify = [
            SignalWindow(rng.normal(0, 1, 16), label=1) for _ in range(5)
        ] + [SignalWindow(rng.normal(0, 4, 16), label=2) for _ in range(5)]
        trace = sfs_select(train, verify, ModelConfig(hidden_neurons=8))
        first = trace.rounds[0]
        assert 13 in first.undefined and 14 in first.undefined
        assert first.candidate_scores[13] == 0.0
        assert first.candidate_scores[14] == 0.0
        assert trace.final_subset  # the search still selected something

    def test_empty_inputs_rejected(self):
        with pytest.raises(ValueError):
            sfs_select([], [SignalWindow([1, 2], label=1)], ModelConfig())


class TestTieBreak:
    def test_equal_scores_pick_lowest_id(self):
        # Features 9 and 12 are the same formula in rectified mode, so their
        # scores tie; the scan order must keep the lower id.
        rng = np.random.default_rng(31)
        train = [
            SignalWindow(rng.normal(0, 1 + lbl, 32), label=lbl)
            for lbl in (1, 2)
            for _ in range(10)
        ]
        verify = [
            SignalWindow(rng.normal(0, 1 + lbl, 32), label=lbl)
            for lbl in (1, 2)
            for _ in range(4)
        ]
        trace = sfs_select(train, verify, ModelConfig(hidden_neurons=8),
                           candidate_ids=[9, 12])
        first = trace.rounds[0]
        assert first.candidate_scores[9] == first.candidate_scores[12]
        assert first.selected == 9
