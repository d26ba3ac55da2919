"""Composite-Simpson helpers on uniform grids.

The cumulative variant keeps the partial sums at even nodes identical to
plain composite Simpson, filling odd nodes with the half-panel rule
(integral of the parabola through three consecutive nodes over its first
interval).  This makes the running integral and the total integral agree
to machine precision, which the normalization checks rely on.
"""

import numpy as np


def simpson_weights(n: int, dx: float) -> np.ndarray:
    """Composite Simpson weights for n uniformly spaced samples.

    For even n the final interval is closed with the mirrored half-panel
    rule, keeping the rule O(dx^4) overall.
    """
    if n < 3:
        raise ValueError("need at least 3 samples for Simpson weights")
    w = np.zeros(n)
    m = n if n % 2 == 1 else n - 1
    # 1,4,2,4,...,4,1 pattern over the odd-count prefix
    w[0:m] = 2.0
    w[1:m:2] = 4.0
    w[0] = 1.0
    w[m - 1] = 1.0
    w *= dx / 3.0
    if n % 2 == 0:
        # trailing interval: quadratic through the last three nodes
        w[n - 3] += -dx / 12.0
        w[n - 2] += 8.0 * dx / 12.0
        w[n - 1] += 5.0 * dx / 12.0
    return w


def integrate(y: np.ndarray, dx: float) -> float:
    """Composite Simpson integral of uniformly sampled values."""
    y = np.asarray(y)
    return float(np.dot(simpson_weights(y.shape[0], dx), y))


def cumulative(y: np.ndarray, dx: float) -> np.ndarray:
    """Running integral of uniformly sampled values, node by node.

    Even-node entries reproduce composite Simpson partial sums exactly;
    odd nodes use the half-panel rule h/12 * (5 y0 + 8 y1 - y2).
    The last node of an even-length input is closed with the mirrored
    half-panel rule.
    """
    y = np.asarray(y, dtype=float)
    n = y.shape[0]
    if n < 3:
        raise ValueError("need at least 3 samples for cumulative Simpson")
    out = np.zeros(n)
    m = n if n % 2 == 1 else n - 1
    y0 = y[0:m - 2:2]
    y1 = y[1:m - 1:2]
    y2 = y[2:m:2]
    full = dx / 3.0 * (y0 + 4.0 * y1 + y2)
    half = dx / 12.0 * (5.0 * y0 + 8.0 * y1 - y2)
    heads = np.concatenate(([0.0], np.cumsum(full)))
    out[0:m:2] = heads
    out[1:m - 1:2] = heads[:-1] + half
    if n % 2 == 0:
        out[n - 1] = out[n - 2] + dx / 12.0 * (-y[n - 3] + 8.0 * y[n - 2] + 5.0 * y[n - 1])
    return out
