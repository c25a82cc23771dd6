"""Raised-cosine pulse shaping."""

import numpy as np


def _check_rolloff(beta: float) -> None:
    if not 0.0 <= beta <= 1.0:
        raise ValueError(f"Roll-off must lie in [0, 1], got {beta}")


def raised_cosine_pulse(t, tsym: float, beta: float):
    """Return the raised-cosine impulse h(t) with peak h(0) = 1.

    h(t) = sinc(t / Tsym) cos(pi beta t / Tsym) / (1 - (2 beta t / Tsym)^2)

    At t = +-Tsym / (2 beta) the analytic limit (pi / 4) sinc(1 / (2 beta)) is used.
    """
    _check_rolloff(beta)
    x = np.asarray(t, dtype=float) / tsym
    if beta == 0.0:
        return np.sinc(x)
    denom = 1.0 - (2.0 * beta * x) ** 2
    singular = np.isclose(np.abs(x), 1.0 / (2.0 * beta), rtol=0.0, atol=1e-12)
    safe = np.where(singular, 1.0, denom)
    regular = np.sinc(x) * np.cos(np.pi * beta * x) / safe
    limit = (np.pi / 4.0) * np.sinc(1.0 / (2.0 * beta))
    return np.where(singular, limit, regular)


def raised_cosine_spectrum(f, tsym: float, beta: float):
    """Return the raised-cosine frequency response normalized to 1 in the flat band.

    Flat for |f| <= (1 - beta) / (2 Tsym), cosine taper up to (1 + beta) / (2 Tsym), zero beyond.
    """
    _check_rolloff(beta)
    af = np.abs(np.asarray(f, dtype=float)) * tsym
    lo, hi = (1.0 - beta) / 2.0, (1.0 + beta) / 2.0
    out = np.zeros_like(af)
    out[af <= lo] = 1.0
    taper = (af > lo) & (af <= hi)
    if beta > 0.0:
        out[taper] = 0.5 * (1.0 + np.cos(np.pi / beta * (af[taper] - lo)))
    return out
