"""
Random number generation and the elementary distributions that numpy does not draw directly.

All randomness of a chain comes from one `numpy.random.Generator` on top of the counter-based Philox
bit generator, seeded from the configured 64-bit seed.
"""

from typing import Any, Dict

import numpy as np
from scipy import stats

RNG_ALGORITHM = "numpy.random.Philox (Philox4x64-10)"
SMALL_EPS = np.finfo(np.float64).tiny


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed))


def rng_state(rng: np.random.Generator) -> Dict[str, Any]:
    """
    JSON-compatible snapshot of the bit generator state.
    """

    def _convert(value: Any) -> Any:
        if isinstance(value, dict):
            return {key: _convert(item) for key, item in value.items()}
        if isinstance(value, np.ndarray):
            return [int(item) for item in value.tolist()]
        if isinstance(value, np.integer):
            return int(value)
        return value

    return _convert(rng.bit_generator.state)


def rng_from_state(state: Dict[str, Any]) -> np.random.Generator:
    """
    Restores a generator from a snapshot made with `rng_state`.
    """

    def _convert(value: Any) -> Any:
        if isinstance(value, dict):
            return {key: _convert(item) for key, item in value.items()}
        if isinstance(value, list):
            return np.array(value, dtype=np.uint64)
        return value

    bit_generator = np.random.Philox()
    bit_generator.state = _convert(state)
    return np.random.Generator(bit_generator)


def sample_dirichlet(alpha: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """
    Dirichlet draws over the last axis of `alpha` through normalized gamma variates. Entries that underflow
    are floored at the smallest positive double before normalizing, so every draw has strictly positive
    entries.
    """
    draws = np.maximum(rng.standard_gamma(np.asarray(alpha, dtype=np.float64)), SMALL_EPS)
    return draws / draws.sum(axis=-1, keepdims=True)


def sample_inv_gamma(shape, scale, rng: np.random.Generator):
    """
    Inverse-gamma draws with the given shape and scale.
    """
    return scale / rng.standard_gamma(shape)


def sample_truncated_normal(
    mean: float, var: float, rng: np.random.Generator, lower: float = 0.0, upper: float = 1.0
) -> float:
    """
    Draws from a normal distribution truncated to the open interval `(lower, upper)` by inverting the CDF.
    """
    sd = np.sqrt(var)
    a, b = (lower - mean) / sd, (upper - mean) / sd
    value = float(stats.truncnorm.ppf(rng.random(), a, b, loc=mean, scale=sd))

    return min(max(value, np.nextafter(lower, upper)), np.nextafter(upper, lower))
