"""Chebyshev interpolation machinery.

Nodes, DCT-based coefficient fitting, cardinal weights and zero-padding
oversampling for scalar functions sampled on an interval. Every other numeric
module builds on these primitives.

Conventions:
    dct2(v)_k = sum_{p=1..N} v_p cos(pi k (p - 1/2) / N),      k = 0..N-1
    dct3(C)_p = sum_{k=0..N-1} C_k cos(pi k (p - 1/2) / N),    p = 1..N

Both transforms are unnormalized. Their round trip is

    dct3(dct2(v))_p = (N/2) v_p + (1/2) sum(v)

so all scale factors live in ``cheb_fit`` and ``cheb_oversample``.
"""

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import chebyshev as npcheb
from scipy import fft

# |y(x) - y_p| below this switches cheb_weights to the exact cardinal value
NODE_SWITCH_TOL = 1e-9


@dataclass(frozen=True)
class Interval:
    """Closed interval [a, b] with the linear map onto [-1, 1]."""

    a: float
    b: float

    def __post_init__(self) -> None:
        """Validate endpoint ordering."""
        if not self.a < self.b:
            raise ValueError(f"Interval requires a < b, got a={self.a}, b={self.b}")

    @property
    def half_width(self) -> float:
        """Return (b - a) / 2."""
        return (self.b - self.a) / 2.0

    @property
    def center(self) -> float:
        """Return (a + b) / 2."""
        return (self.a + self.b) / 2.0

    def to_unit(self, x):
        """Map x in [a, b] onto y in [-1, 1]."""
        return (np.asarray(x, dtype=float) - self.center) / self.half_width

    def from_unit(self, y):
        """Map y in [-1, 1] back onto [a, b]."""
        return self.half_width * np.asarray(y, dtype=float) + self.center

    def contains(self, x) -> bool:
        """Check whether every x lies inside the closed interval."""
        x = np.asarray(x, dtype=float)
        return bool(np.all((x >= self.a) & (x <= self.b)))


UNIT_INTERVAL = Interval(-1.0, 1.0)


@dataclass(frozen=True, eq=False)
class ChebGrid:
    """Samples g(x_p) of a function at the P mapped Chebyshev nodes of an interval."""

    interval: Interval
    values: np.ndarray

    def __post_init__(self) -> None:
        """Freeze the sample vector."""
        values = np.array(self.values, copy=True)
        if values.ndim != 1 or values.size == 0:
            raise ValueError(f"ChebGrid needs a non-empty 1-D sample vector, got shape {values.shape}")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def order(self) -> int:
        """Return the interpolation order P."""
        return self.values.size

    @property
    def nodes(self) -> np.ndarray:
        """Return the P abscissas x_p, strictly increasing."""
        return cheb_nodes(self.order, self.interval)

    @classmethod
    def from_function(cls, func, order: int, interval: Interval) -> "ChebGrid":
        """Sample a vectorized callable at the order-P nodes of an interval."""
        return cls(interval, np.asarray(func(cheb_nodes(order, interval))))


@dataclass(frozen=True, eq=False)
class ChebSeries:
    """Chebyshev coefficients c_k of sum_k c_k T_k(y(x)) on an interval."""

    interval: Interval
    coeffs: np.ndarray

    def __post_init__(self) -> None:
        """Freeze the coefficient vector."""
        coeffs = np.array(self.coeffs, copy=True)
        if coeffs.ndim != 1 or coeffs.size == 0:
            raise ValueError("ChebSeries needs at least one coefficient")
        coeffs.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)

    def __call__(self, x):
        """Evaluate the series at x (scalar or array)."""
        return cheb_eval(self, x)

    def derivative(self) -> "ChebSeries":
        """Return the series of the derivative."""
        return cheb_derivative(self)


def _unit_nodes(order: int) -> np.ndarray:
    p = np.arange(1, order + 1)
    return -np.cos(np.pi * (p - 0.5) / order)


def cheb_nodes(order: int, interval: Interval = UNIT_INTERVAL) -> np.ndarray:
    """Return the P Chebyshev abscissas x_p of an interval.

    Args:
        order: Number of nodes P (>= 1).
        interval: Target interval [a, b].

    Returns:
        Array x_p = half_width * y_p + center with y_p = -cos(pi (p - 1/2) / P),
        strictly increasing and inside (a, b).

    Raises:
        ValueError: If order < 1.
    """
    if order < 1:
        raise ValueError(f"Chebyshev order must be >= 1, got {order}")
    return interval.from_unit(_unit_nodes(order))


def _check_nonempty(v: np.ndarray, name: str) -> np.ndarray:
    v = np.asarray(v)
    if v.ndim != 1 or v.size == 0:
        raise ValueError(f"{name} needs a non-empty 1-D input, got shape {v.shape}")
    return v


def _real_transform(v: np.ndarray, dct_type: int) -> np.ndarray:
    # scipy's unnormalized DCT-II carries a factor 2 on every term; applied
    # separately to the real and imaginary parts for complex input
    if np.iscomplexobj(v):
        return fft.dct(v.real, type=dct_type) + 1j * fft.dct(v.imag, type=dct_type)
    return fft.dct(v.astype(float), type=dct_type)


def dct2(v) -> np.ndarray:
    """Unnormalized type-2 DCT, C_k = sum_p v_p cos(pi k (p - 1/2) / N).

    Raises:
        ValueError: On empty input.
    """
    v = _check_nonempty(v, "dct2")
    return _real_transform(v, 2) / 2.0


def dct3(coeffs) -> np.ndarray:
    """Unnormalized type-3 DCT, v_p = sum_k C_k cos(pi k (p - 1/2) / N).

    Inverse of ``dct2`` up to dct3(dct2(v)) = (N/2) v + sum(v)/2.

    Raises:
        ValueError: On empty input.
    """
    c = _check_nonempty(coeffs, "dct3")
    # scipy's type 3 is C_0 + 2 sum_{k>=1}; adding C_0 and halving gives the full-weight sum
    return (_real_transform(c, 3) + c[0]) / 2.0


def cheb_fit(grid: ChebGrid) -> ChebSeries:
    """Compute the interpolating series of a node-sample grid.

    c_k = ((2 - delta_k) / P) sum_p g(x_{P-p+1}) cos(pi k (p - 1/2) / P), i.e. one
    type-2 DCT of the index-reversed samples. The reversal maps increasing nodes
    (y_p = -cos) onto the cos(...) ordering of the DCT kernel.
    """
    order = grid.order
    coeffs = dct2(grid.values[::-1]) * (2.0 / order)
    coeffs[0] /= 2.0
    return ChebSeries(grid.interval, coeffs)


def cheb_eval(series: ChebSeries, x):
    """Evaluate sum_k c_k T_k(y(x)) by Clenshaw's backward recurrence.

    Evaluation outside the interval is extrapolation; callers decide whether to allow it.
    """
    y = series.interval.to_unit(x)
    return npcheb.chebval(y, series.coeffs)


def cheb_weight_matrix(order: int, interval: Interval, xs) -> np.ndarray:
    """Return Phi_p(x) for every x in ``xs`` as an (len(xs), P) real matrix.

    Phi_p(x) = T_P(y(x)) / (P U_{P-1}(y_p) (y(x) - y_p)), evaluated in barycentric
    form, (w_p / (y - y_p)) / sum_q w_q / (y - y_q) with w_p = (-1)^p sin(theta_p),
    which keeps full accuracy next to the nodes. The exact cardinal value is
    substituted where |y(x) - y_p| < NODE_SWITCH_TOL.
    """
    if order < 1:
        raise ValueError(f"Chebyshev order must be >= 1, got {order}")
    y = np.atleast_1d(interval.to_unit(xs))
    p = np.arange(1, order + 1)
    theta = np.pi * (p - 0.5) / order
    y_nodes = -np.cos(theta)
    # 1 / U_{P-1}(y_p) up to a common sign
    bary = (-1.0) ** p * np.sin(theta)

    diff = y[:, None] - y_nodes[None, :]
    near = np.abs(diff) < NODE_SWITCH_TOL
    terms = bary[None, :] / np.where(near, 1.0, diff)
    weights = terms / terms.sum(axis=1, keepdims=True)

    rows = near.any(axis=1)
    if rows.any():
        weights[rows] = near[rows].astype(float)
    return weights


def cheb_weights(order: int, interval: Interval, x: float) -> np.ndarray:
    """Return the P cardinal weights Phi_p(x) at a single abscissa."""
    return cheb_weight_matrix(order, interval, [x])[0]


def cheb_oversample(grid: ChebGrid, new_order: int) -> ChebGrid:
    """Resample the order-P interpolant of a grid at the R > P nodes of the same interval.

    Fit -> zero-pad the coefficients to length R -> one type-3 DCT. Since
    T_k(-cos t) = (-1)^k cos(k t), the alternating sign folds the y'_r = -cos(...)
    node ordering into the transform.

    Raises:
        ValueError: If new_order <= grid.order.
    """
    if new_order <= grid.order:
        raise ValueError(f"Oversampled order must exceed {grid.order}, got {new_order}")
    coeffs = cheb_fit(grid).coeffs
    padded = np.zeros(new_order, dtype=coeffs.dtype)
    padded[: coeffs.size] = coeffs
    padded *= (-1.0) ** np.arange(new_order)
    return ChebGrid(grid.interval, dct3(padded))


def cheb_derivative(series: ChebSeries) -> ChebSeries:
    """Differentiate a series, including the 2 / (b - a) chain-rule factor."""
    scale = 1.0 / series.interval.half_width
    return ChebSeries(series.interval, npcheb.chebder(series.coeffs, scl=scale))
