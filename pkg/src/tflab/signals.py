"""Complex-valued functions sampled on a uniform grid.

Quadrature is the rectangle rule: a sample list stands for the step function
taking value f_k on [x_k, x_k + h).  The Fourier convention is
F(xi) = integral e(-x xi) f(x) dx with e(x) = exp(2 pi i x); on the discrete
dual grid the convention is unitary, so Parseval holds to rounding.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np
from scipy.ndimage import maximum_filter1d


@dataclass(frozen=True)
class Sampling:
    """A uniform grid: n samples spaced h starting at x0, covering [x0, x0 + n h)."""

    x0: float
    h: float
    n: int

    def __post_init__(self):
        if self.n < 1 or not self.h > 0:
            raise ValueError(f"bad sampling {self!r}")

    @property
    def span(self) -> float:
        return self.n * self.h

    @property
    def right(self) -> float:
        return self.x0 + self.span

    def grid(self) -> np.ndarray:
        return self.x0 + self.h * np.arange(self.n)

    def dual(self) -> "Sampling":
        """The frequency grid of the discrete transform: spacing 1/(n h)."""
        hf = 1.0 / (self.n * self.h)
        return Sampling(-(self.n // 2) * hf, hf, self.n)

    @classmethod
    def symmetric(cls, halfwidth: float, per_unit: int) -> "Sampling":
        n = int(round(2 * halfwidth * per_unit))
        return cls(-halfwidth, 1.0 / per_unit, n)


class GridMismatchError(ValueError):
    pass


class SampledFunction:
    """Samples of a complex function on a uniform grid."""

    def __init__(self, x0: float, h: float, values):
        self.x0 = float(x0)
        self.h = float(h)
        self.values = np.asarray(values, dtype=np.complex128)
        if self.values.ndim != 1 or self.values.size < 1:
            raise ValueError("values must be a nonempty 1-D sequence")
        if not self.h > 0:
            raise ValueError("sample spacing must be positive")
        if not np.all(np.isfinite(self.values.view(np.float64))):
            raise ValueError("samples must be finite")

    @property
    def n(self) -> int:
        return self.values.size

    @property
    def sampling(self) -> Sampling:
        return Sampling(self.x0, self.h, self.n)

    @property
    def x(self) -> np.ndarray:
        return self.x0 + self.h * np.arange(self.n)

    def same_grid(self, other: "SampledFunction") -> bool:
        return self.x0 == other.x0 and self.h == other.h and self.n == other.n

    def require_same_grid(self, other: "SampledFunction"):
        if not self.same_grid(other):
            raise GridMismatchError(
                f"grids differ: ({self.x0}, {self.h}, {self.n}) vs "
                f"({other.x0}, {other.h}, {other.n})")

    def copy(self) -> "SampledFunction":
        return SampledFunction(self.x0, self.h, self.values.copy())

    def __add__(self, other):
        self.require_same_grid(other)
        return SampledFunction(self.x0, self.h, self.values + other.values)

    def __sub__(self, other):
        self.require_same_grid(other)
        return SampledFunction(self.x0, self.h, self.values - other.values)

    def __mul__(self, c):
        return SampledFunction(self.x0, self.h, self.values * c)

    __rmul__ = __mul__

    def __abs__(self):
        return SampledFunction(self.x0, self.h, np.abs(self.values))

    @classmethod
    def from_callable(cls, sampling: Sampling, func) -> "SampledFunction":
        return cls(sampling.x0, sampling.h, func(sampling.grid()))

    @classmethod
    def zeros(cls, sampling: Sampling) -> "SampledFunction":
        return cls(sampling.x0, sampling.h, np.zeros(sampling.n, dtype=np.complex128))


def lp_norm(f: SampledFunction, t: float) -> float:
    """(h sum |f_k|^t)^(1/t); sup norm at t = inf.  A quasi-norm for t < 1."""
    if t == math.inf:
        return float(np.max(np.abs(f.values)))
    if not t > 0:
        raise ValueError(f"norm exponent must be positive or inf, got {t}")
    a = np.abs(f.values)
    return float((f.h * np.sum(a ** t)) ** (1.0 / t))


def inner_product(f: SampledFunction, g: SampledFunction) -> complex:
    """h sum f_k conj(g_k): conjugate-linear in the second slot."""
    f.require_same_grid(g)
    return complex(f.h * np.dot(f.values, np.conj(g.values)))


def fourier_transform(f: SampledFunction) -> SampledFunction:
    """Discrete realization of F(xi) = integral e(-x xi) f(x) dx on the dual grid."""
    dual = f.sampling.dual()
    xi = dual.grid()
    spec = np.fft.fftshift(np.fft.fft(f.values))
    vals = f.h * np.exp(-2j * np.pi * xi * f.x0) * spec
    return SampledFunction(dual.x0, dual.h, vals)


def inverse_fourier_transform(F: SampledFunction, x0: float | None = None) -> SampledFunction:
    """Inverse of fourier_transform: f(x) = integral e(x xi) F(xi) dxi.

    The spatial anchor x0 is not recoverable from F; by default the symmetric
    grid -(n//2)·h_x is used, matching Sampling.dual() round trips.
    """
    n = F.n
    h_x = 1.0 / (n * F.h)
    if x0 is None:
        x0 = -(n // 2) * h_x
    j = np.arange(n)
    inner = F.values * np.exp(2j * np.pi * x0 * (F.x0 + j * F.h))
    core = n * np.fft.ifft(inner)
    x = x0 + h_x * np.arange(n)
    vals = F.h * np.exp(2j * np.pi * (x - x0) * F.x0) * core
    return SampledFunction(x0, h_x, vals)


def _sliding_max_trailing(a: np.ndarray, w: int) -> np.ndarray:
    """out[k] = max(a[max(0, k-w+1) : k+1]); linear time per call."""
    if w == 1:
        return a.copy()
    origin = (w - 1) - w // 2
    return maximum_filter1d(a, size=w, origin=origin, mode="constant", cval=-np.inf)


def hl_maximal(f: SampledFunction) -> SampledFunction:
    """Uncentered maximal function over sample-aligned windows.

    At x_k: max over i <= k < j of the average of |f| on [x_i, x_j).
    Quadratic total work: one linear-time sliding maximum per window length.
    """
    a = np.abs(f.values)
    n = a.size
    prefix = np.concatenate(([0.0], np.cumsum(a)))
    out = a.copy()
    padded = np.empty(n)
    for w in range(2, n + 1):
        m = n - w + 1
        padded[:m] = (prefix[w:] - prefix[:-w]) / w
        padded[m:] = -np.inf
        np.maximum(out, _sliding_max_trailing(padded, w), out=out)
    return SampledFunction(f.x0, f.h, out)


def write_csv(f: SampledFunction, path):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["x", "re", "im"])
        for xk, v in zip(f.x, f.values):
            writer.writerow([repr(float(xk)), repr(float(v.real)), repr(float(v.imag))])


def read_csv(path) -> SampledFunction:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header != ["x", "re", "im"]:
            raise ValueError(f"unexpected header {header}")
        xs, vals = [], []
        for row in reader:
            xs.append(float(row[0]))
            vals.append(float(row[1]) + 1j * float(row[2]))
    if len(xs) < 1:
        raise ValueError("empty sample file")
    h = xs[1] - xs[0] if len(xs) > 1 else 1.0
    return SampledFunction(xs[0], h, np.asarray(vals))
