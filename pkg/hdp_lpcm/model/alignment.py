"""
Rigid alignment of latent configurations.
"""

from typing import Tuple

import numpy as np
from scipy.linalg import orthogonal_procrustes

from hdp_lpcm.exceptions import DimensionError
from hdp_lpcm.logger import logger

DEGENERATE_TOLERANCE = 1e-12


def align_configuration(X: np.ndarray, reference: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:  # pylint: disable=invalid-name
    """
    Centers `X` and rotates/reflects it onto the centered `reference`, then translates it to the centroid of
    the reference. No scaling is applied.

    Args:
        X (np.ndarray): Configuration of shape `(m, p)`.
        reference (np.ndarray): Target configuration of the same shape.

    Raises:
        DimensionError: If the shapes differ.

    Returns:
        Tuple[np.ndarray, np.ndarray]: The aligned configuration and the `p x p` orthogonal matrix `Q`
            such that `aligned = (X - mean(X)) @ Q + mean(reference)`.
    """
    if X.shape != reference.shape or X.ndim != 2:
        raise DimensionError(f"configuration of shape {X.shape} and reference of shape {reference.shape}")

    X_centered = X - X.mean(axis=0)  # pylint: disable=invalid-name
    reference_mean = reference.mean(axis=0)
    reference_centered = reference - reference_mean

    if np.sum(X_centered**2) < DEGENERATE_TOLERANCE or np.sum(reference_centered**2) < DEGENERATE_TOLERANCE:
        logger.warning("Degenerate configuration in Procrustes alignment, using the identity rotation")
        rotation = np.eye(X.shape[1])
    else:
        rotation, _ = orthogonal_procrustes(X_centered, reference_centered)

    return X_centered @ rotation + reference_mean, rotation
