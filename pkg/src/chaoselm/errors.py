"""Exception types shared across the toolkit."""


class ChaosElmError(Exception):
    """Base class for every error raised by this package."""


class InvalidChaosParam(ChaosElmError, ValueError):
    """Logistic-map parameter outside the chaotic regime, or a degenerate orbit."""


class FeatureUndefined(ChaosElmError, ArithmeticError):
    """A feature's denominator vanished on the given window."""

    def __init__(self, message, feature_id=None, window_index=None):
        super().__init__(message)
        self.feature_id = feature_id
        self.window_index = window_index


class DuplicateFeature(ChaosElmError, ValueError):
    """The same feature id was requested twice."""


class DimensionMismatch(ChaosElmError, ValueError):
    """Array shapes are inconsistent for the requested operation."""


class SvdFailure(ChaosElmError, ArithmeticError):
    """Singular value decomposition did not converge."""


class LabelOutOfRange(ChaosElmError, ValueError):
    """A class label falls outside 1..class_count."""


class FeatureSetMismatch(ChaosElmError, ValueError):
    """Feature ids of the input matrix differ from those the model was trained on."""


class LengthMismatch(ChaosElmError, ValueError):
    """Two sequences that must be equally long are not."""


class ConstantInput(ChaosElmError, ValueError):
    """A statistic is undefined because an input vector is constant."""


class ParseError(ChaosElmError, ValueError):
    """A signal file could not be parsed."""


class SignalTooShort(ChaosElmError, ValueError):
    """The signal has fewer points than one window."""


class TooFewWindows(ChaosElmError, ValueError):
    """A class does not have enough windows to split."""
