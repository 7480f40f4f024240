"""Empirical CCDF construction and curve fitting.

The survival curve P(X >= x) is built on a uniform threshold grid and fitted
with two parametric families:

  power law      y = a * x**b
  log-Gaussian   y = a1 * exp(-((ln x - b1) / c1)**2)

Fitting minimizes squared residuals on the linear probability axis with a
damped Gauss-Newton iteration; a log-log ordinary least squares (power law)
or a moment match (log-Gaussian) provides the initial guess. All fits are
deterministic: same input, same result.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional, Sequence, Union

import numpy as np

from .errors import DegenerateInputError, FitError


@dataclass(frozen=True)
class EmpiricalCcdf:
    """P(X >= x) sampled on a uniform grid of thresholds."""

    grid: tuple[float, ...]
    probs: tuple[float, ...]
    n_samples: int

    def as_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        return np.asarray(self.grid), np.asarray(self.probs)


@dataclass(frozen=True)
class PowerLawModel:
    a: float
    b: float

    def __call__(self, x: np.ndarray) -> np.ndarray:
        return self.a * np.asarray(x, dtype=float) ** self.b

    def params(self) -> dict:
        return {"a": self.a, "b": self.b}


@dataclass(frozen=True)
class LogGaussianModel:
    a1: float
    b1: float
    c1: float

    def __call__(self, x: np.ndarray) -> np.ndarray:
        z = (np.log(np.asarray(x, dtype=float)) - self.b1) / self.c1
        return self.a1 * np.exp(-(z**2))

    def params(self) -> dict:
        return {"a1": self.a1, "b1": self.b1, "c1": self.c1}


class Goodness(NamedTuple):
    sse: float
    r2: float
    adj_r2: float
    rmse: float
    r2_defined: bool


@dataclass(frozen=True)
class FitResult:
    model: Union[PowerLawModel, LogGaussianModel]
    sse: float
    r2: float
    adj_r2: float
    rmse: float
    n_points: int
    range: tuple[float, float]
    iterations: int
    converged: bool

    def as_dict(self) -> dict:
        return {
            "model": type(self.model).__name__,
            "params": self.model.params(),
            "sse": self.sse,
            "r2": self.r2,
            "adj_r2": self.adj_r2,
            "rmse": self.rmse,
            "n_points": self.n_points,
            "range": list(self.range),
            "converged": self.converged,
        }


def empirical_ccdf(samples: Sequence[float], step: float) -> EmpiricalCcdf:
    """Survival probabilities on the grid {step, 2*step, ...} up to max(samples).

    probs[k] = #{s : s >= grid[k]} / n. Zero-valued entries must be filtered
    out by the caller beforehand (no-war years are a modelling choice, not a
    sample).
    """
    if len(samples) == 0:
        raise DegenerateInputError("empty sample set")
    if step <= 0:
        raise ValueError("step must be positive")
    xs = np.sort(np.asarray(samples, dtype=float))
    n = len(xs)
    n_points = int(math.floor(xs[-1] / step + 1e-9))
    if n_points < 1:
        raise DegenerateInputError("all samples below the first grid point")
    grid = step * np.arange(1, n_points + 1)
    # count of samples >= threshold via binary search on the sorted array
    probs = (n - np.searchsorted(xs, grid, side="left")) / n
    return EmpiricalCcdf(tuple(grid.tolist()), tuple(probs.tolist()), n)


def goodness(observed: Sequence[float], predicted: Sequence[float], n_params: int) -> Goodness:
    """SSE, R^2, adjusted R^2 and RMSE of a fit.

    Constant observed data leaves R^2 undefined; the result is flagged with
    r2_defined=False and NaN in the R^2 slots.
    """
    o = np.asarray(observed, dtype=float)
    p = np.asarray(predicted, dtype=float)
    if o.shape != p.shape:
        raise ValueError("observed and predicted lengths differ")
    n = len(o)
    if n < n_params + 1:
        raise ValueError(f"need at least {n_params + 1} points for {n_params} parameters")
    sse = float(np.sum((o - p) ** 2))
    sst = float(np.sum((o - o.mean()) ** 2))
    rmse = math.sqrt(sse / n)
    if sst == 0.0:
        return Goodness(sse, math.nan, math.nan, rmse, False)
    r2 = 1.0 - sse / sst
    # adjusted R^2 needs n > n_params + 1 for a positive denominator
    if n > n_params + 1:
        adj_r2 = 1.0 - (1.0 - r2) * (n - 1) / (n - n_params - 1)
    else:
        adj_r2 = math.nan
    return Goodness(sse, r2, adj_r2, rmse, True)


ModelFn = Callable[[np.ndarray, np.ndarray], np.ndarray]
JacFn = Callable[[np.ndarray, np.ndarray], np.ndarray]


def nls_solve(
    fn: ModelFn,
    init: Sequence[float],
    points: tuple[np.ndarray, np.ndarray],
    jac: Optional[JacFn] = None,
    rtol: float = 1e-12,
    atol: float = 1e-14,
    max_iter: int = 1000,
) -> tuple[np.ndarray, int, bool]:
    """Damped Gauss-Newton least squares.

    fn(params, x) evaluates the model; jac(params, x) returns the n x p
    Jacobian (forward differences if omitted). Damping starts at zero so the
    linear case converges in one step; it is raised only when a step fails or
    the normal equations are singular. Each accepted step does not increase
    the SSE. Returns (params, iterations, converged) with converged=False and
    best-so-far on hitting the iteration cap.
    """
    p = np.asarray(init, dtype=float)
    if not np.all(np.isfinite(p)):
        raise ValueError("initial parameters must be finite")
    x, y = points
    if len(x) < len(p) + 1:
        raise FitError(f"need at least {len(p) + 1} points for {len(p)} parameters")

    def sse_of(params: np.ndarray) -> float:
        f = fn(params, x)
        if not np.all(np.isfinite(f)):
            return math.inf
        return float(np.sum((y - f) ** 2))

    def jacobian(params: np.ndarray) -> np.ndarray:
        if jac is not None:
            return jac(params, x)
        base = fn(params, x)
        J = np.empty((len(x), len(params)))
        for j in range(len(params)):
            h = 1e-7 * max(abs(params[j]), 1.0)
            bumped = params.copy()
            bumped[j] += h
            J[:, j] = (fn(bumped, x) - base) / h
        return J

    sse = sse_of(p)
    if not math.isfinite(sse):
        raise FitError("non-finite model evaluation at the initial guess")

    lam = 0.0
    iterations = 0
    for iterations in range(1, max_iter + 1):
        r = y - fn(p, x)
        J = jacobian(p)
        if not np.all(np.isfinite(J)):
            raise FitError("non-finite Jacobian")
        JtJ = J.T @ J
        g = J.T @ r
        step = None
        while True:
            A = JtJ + lam * np.diag(np.maximum(np.diag(JtJ), 1e-30))
            try:
                step = np.linalg.solve(A, g)
            except np.linalg.LinAlgError:
                step = None
            if step is not None and np.all(np.isfinite(step)):
                trial = p + step
                trial_sse = sse_of(trial)
                if trial_sse <= sse:
                    break
            lam = 1e-4 if lam == 0.0 else lam * 10.0
            if lam > 1e15:
                raise FitError("damping overflow: no SSE-decreasing step exists")
        p = trial
        improvement = sse - trial_sse
        sse = trial_sse
        lam = 0.0 if lam < 1e-10 else lam / 10.0
        step_norm = float(np.linalg.norm(step))
        if sse == 0.0 or step_norm < atol * (1.0 + float(np.linalg.norm(p))):
            return p, iterations, True
        if improvement < rtol * max(sse, 1e-300):
            return p, iterations, True
    return p, iterations, False


def _select(ccdf: EmpiricalCcdf, fit_range: Optional[tuple[float, float]]) -> tuple[np.ndarray, np.ndarray, tuple[float, float]]:
    x, y = ccdf.as_arrays()
    if fit_range is not None:
        lo, hi = fit_range
        mask = (x >= lo) & (x <= hi)
        x, y = x[mask], y[mask]
    if len(x) < 3:
        raise FitError("fewer than 3 grid points in the fit range")
    return x, y, (float(x[0]), float(x[-1]))


def default_trim_range(ccdf: EmpiricalCcdf, trim: float = 0.10) -> tuple[float, float]:
    """Range dropping the lowest and highest `trim` fraction of grid points."""
    x = np.asarray(ccdf.grid)
    k = len(x)
    lo = int(math.floor(k * trim))
    hi = k - 1 - int(math.floor(k * trim))
    hi = max(hi, lo + 2)
    return float(x[min(lo, k - 1)]), float(x[min(hi, k - 1)])


def fit_power_law(ccdf: EmpiricalCcdf, fit_range: Optional[tuple[float, float]] = None) -> FitResult:
    """Fit y = a*x**b to the CCDF in linear probability space.

    The initial guess comes from ordinary least squares on (ln x, ln y).
    """
    x, y, used = _select(ccdf, fit_range)
    if np.any(y <= 0):
        raise FitError("zero or negative probability inside the fit range")
    lx, ly = np.log(x), np.log(y)
    # probability-weighted log-log OLS: unweighted regression is dominated by
    # the long low-probability staircase of empirical tails and can seed the
    # linear-space iteration into the all-zero local minimum
    b0, log_a0 = np.polyfit(lx, ly, 1, w=y)
    init = [math.exp(log_a0), b0]

    def f(p, xs):
        return p[0] * xs ** p[1]

    def jac_f(p, xs):
        xb = xs ** p[1]
        return np.column_stack([xb, p[0] * xb * np.log(xs)])

    params, iters, conv = nls_solve(f, init, (x, y), jac=jac_f)
    model = PowerLawModel(float(params[0]), float(params[1]))
    g = goodness(y, model(x), n_params=2)
    return FitResult(model, g.sse, g.r2, g.adj_r2, g.rmse, len(x), used, iters, conv)


def fit_log_gaussian(ccdf: EmpiricalCcdf, fit_range: Optional[tuple[float, float]] = None) -> FitResult:
    """Fit y = a1*exp(-((ln x - b1)/c1)**2) to the CCDF.

    Moment-based start: a1 = max prob, b1/c1 = probability-weighted mean and
    std of ln x.
    """
    x, y, used = _select(ccdf, fit_range)
    if np.any(x <= 0):
        raise FitError("non-positive grid point")
    if np.any(y <= 0):
        raise FitError("zero or negative probability inside the fit range")
    lx = np.log(x)
    w = y / y.sum()
    b0 = float(np.sum(w * lx))
    c0 = float(math.sqrt(max(np.sum(w * (lx - b0) ** 2), 1e-12)))
    init = [float(y.max()), b0, c0]

    def f(p, xs):
        z = (np.log(xs) - p[1]) / p[2]
        return p[0] * np.exp(-(z**2))

    def jac_f(p, xs):
        z = (np.log(xs) - p[1]) / p[2]
        e = np.exp(-(z**2))
        return np.column_stack([e, p[0] * e * 2 * z / p[2], p[0] * e * 2 * z**2 / p[2]])

    params, iters, conv = nls_solve(f, init, (x, y), jac=jac_f)
    model = LogGaussianModel(float(params[0]), float(params[1]), float(abs(params[2])))
    g = goodness(y, model(x), n_params=3)
    return FitResult(model, g.sse, g.r2, g.adj_r2, g.rmse, len(x), used, iters, conv)


def fit_tail(ccdf: EmpiricalCcdf, x_min: float) -> FitResult:
    """Power-law fit restricted to grid points with x >= x_min."""
    if x_min <= 0:
        raise ValueError("x_min must be positive")
    return fit_power_law(ccdf, (x_min, float(ccdf.grid[-1])))


def default_tail_threshold(samples: Sequence[float], ccdf: EmpiricalCcdf) -> float:
    """Grid point closest to the 90th percentile of the samples."""
    q = float(np.percentile(np.asarray(samples, dtype=float), 90))
    grid = np.asarray(ccdf.grid)
    return float(grid[int(np.argmin(np.abs(grid - q)))])
