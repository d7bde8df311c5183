"""Power-law fits of fluctuation amplitudes against the number of realizations."""

from collections.abc import Sequence

import numpy as np
from scipy import stats as scipy_stats

from models.results import PowerLawFit
from utils.errors import StatsError


def fit_power_law(nr_values: Sequence[float], sigma_values: Sequence[float]) -> PowerLawFit:
    """
    Least-squares line through (log N_r, log sigma).

    Returns:
        Fit of sigma ~ B * N_r ** eta with eta, B and the standard error of eta

    Raises:
        StatsError: With fewer than 3 points, unequal lengths or non-positive values
    """
    x = np.asarray(nr_values, dtype=np.float64)
    y = np.asarray(sigma_values, dtype=np.float64)
    if x.shape != y.shape:
        raise StatsError(f"fit inputs differ in length: {x.size} vs {y.size}")
    if x.size < 3:
        raise StatsError(f"power-law fit needs at least 3 points, got {x.size}")
    if np.any(x <= 0) or np.any(y <= 0):
        raise StatsError("power-law fit needs strictly positive values")
    if np.all(x == x[0]):
        raise StatsError("power-law fit needs at least two distinct N_r values")

    fit = scipy_stats.linregress(np.log(x), np.log(y))
    return PowerLawFit(
        exponent=float(fit.slope),
        prefactor=float(np.exp(fit.intercept)),
        exponent_stderr=float(fit.stderr),
        n_points=int(x.size),
    )
