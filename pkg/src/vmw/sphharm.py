"""Fully normalized associated Legendre / spherical harmonic evaluation by
upward recurrence in the degree, stable to l of a few hundred.

The theta parts are kept separate from the azimuthal phases: packet sums need
P-bar columns per m over many degrees, and the exp(i m phi) factors attach at
the call sites.
"""

from __future__ import annotations

import math

import numpy as np

FOUR_PI = 4.0 * math.pi


def pbar_column(m: int, l_max: int, cos_theta: np.ndarray) -> np.ndarray:
    """P-bar_l^m(cos theta) for l = |m| .. l_max, shape (l_max-|m|+1, n).

    Normalization: Y_l^m = P-bar_l^m(cos theta) * exp(i m phi), orthonormal
    over the sphere; Condon-Shortley sign included for m >= 0. Negative m
    returns the column for |m| (callers attach (-1)^m conjugation rules).
    """
    am = abs(m)
    if l_max < am:
        raise ValueError(f"l_max = {l_max} below |m| = {am}")
    x = np.asarray(cos_theta, dtype=float)
    sin_theta = np.sqrt(np.clip(1.0 - x * x, 0.0, None))
    n_l = l_max - am + 1
    out = np.zeros((n_l,) + x.shape, dtype=float)

    # seed P-bar_m^m in log space: underflow at the poles is genuine
    log_norm = 0.5 * math.log((2 * am + 1) / FOUR_PI)
    for k in range(1, am + 1):
        log_norm += 0.5 * math.log((2 * k - 1) / (2 * k))
    with np.errstate(divide="ignore"):
        log_sin = np.where(sin_theta > 0.0, np.log(sin_theta), -np.inf)
    seed = np.exp(log_norm + am * log_sin)
    if am % 2:
        seed = -seed
    out[0] = seed
    if n_l == 1:
        return out

    out[1] = math.sqrt(2 * am + 3) * x * out[0]
    for l in range(am + 2, l_max + 1):
        a = math.sqrt((4 * l * l - 1) / (l * l - am * am))
        b = math.sqrt(((l - 1) ** 2 - am * am) / (4 * (l - 1) ** 2 - 1))
        out[l - am] = a * (x * out[l - am - 1] - b * out[l - am - 2])
    return out


def sph_harm_single(l: int, m: int, theta: np.ndarray,
                    phi: np.ndarray) -> np.ndarray:
    """Y_l^m on matching theta/phi arrays (any m sign)."""
    col = pbar_column(abs(m), l, np.cos(np.asarray(theta, dtype=float)))[-1]
    phase = np.exp(1j * m * np.asarray(phi, dtype=float))
    if m < 0 and abs(m) % 2:
        col = -col
    return col * phase
