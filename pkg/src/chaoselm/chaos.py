"""Deterministic input-weight generation from the chaotic logistic map."""

from dataclasses import dataclass

import numpy as np

from .errors import InvalidChaosParam

# Onset of the chaotic band of the logistic map; below this the orbit settles
# into a short cycle and is useless as a weight source.
MU_CHAOTIC_MIN = 3.56995

DEFAULT_Z1 = 0.6
DEFAULT_MU = 3.9


@dataclass(frozen=True)
class ChaosConfig:
    """Seed and coefficient of the recurrence z_k = mu * z_{k-1} * (1 - z_{k-1})."""

    z1: float = DEFAULT_Z1
    mu: float = DEFAULT_MU

    def __post_init__(self):
        if not 0.0 < self.z1 < 1.0:
            raise InvalidChaosParam(f"z1 must lie strictly in (0, 1), got {self.z1}")
        if not MU_CHAOTIC_MIN < self.mu <= 4.0:
            raise InvalidChaosParam(
                f"mu must lie in ({MU_CHAOTIC_MIN}, 4], got {self.mu}"
            )


def logistic_sequence(config: ChaosConfig, n: int) -> np.ndarray:
    """First `n` values of the logistic orbit, starting at z1 itself.

    Evaluated sequentially in 64-bit floats, one multiplication at a time;
    the result is reproducible bit-for-bit for a fixed config.
    """
    if n < 1:
        raise ValueError(f"sequence length must be >= 1, got {n}")
    out = np.empty(n, dtype=np.float64)
    z = float(config.z1)
    mu = float(config.mu)
    out[0] = z
    for k in range(1, n):
        z = mu * z * (1.0 - z)
        if not 0.0 < z < 1.0:
            # Reachable only at mu = 4 with measure-zero seeds (e.g. z1 = 0.5,
            # where the orbit hits exactly 1 and collapses). Failing loudly
            # keeps generated weights reproducible instead of silently clamped.
            raise InvalidChaosParam(
                f"orbit left (0, 1) at element {k + 1} (z = {z!r}); "
                "choose a different z1 or mu"
            )
        out[k] = z
    return out


def build_weight_matrix(config: ChaosConfig, n_features: int, n_hidden: int) -> np.ndarray:
    """Input-weight matrix of shape (n_features, n_hidden) from the logistic orbit.

    Consumes exactly n_features * n_hidden orbit values, filled row-major:
    row i, column j (1-based) holds orbit element (i - 1) * n_hidden + j, so
    flattening the matrix reproduces the sequence prefix exactly.
    """
    if n_features < 1 or n_hidden < 1:
        raise ValueError(
            f"weight matrix dimensions must be >= 1, got {n_features} x {n_hidden}"
        )
    seq = logistic_sequence(config, n_features * n_hidden)
    return seq.reshape(n_features, n_hidden)
