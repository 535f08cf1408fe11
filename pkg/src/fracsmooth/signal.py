"""Trigonometric polynomials: representation, L_p norms, test corpus.

A polynomial of degree M is stored as the dense coefficient vector
c[-M..M] (index k + M), so that f(x) = sum_k c_k exp(i k x).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._util import golden_max
from .errors import InvalidArgumentError

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True, eq=False)
class TrigPoly:
    """Dense trigonometric polynomial sum_{|k| <= degree} c_k e^{ikx}."""
    degree: int
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.degree < 0:
            raise InvalidArgumentError("degree must be nonnegative")
        c = np.asarray(self.coeffs, dtype=complex)
        if c.shape != (2 * self.degree + 1,):
            raise InvalidArgumentError(
                f"coefficient vector must have length {2 * self.degree + 1}, "
                f"got shape {c.shape}")
        if not np.isfinite(c).all():
            raise InvalidArgumentError("coefficients must be finite")
        object.__setattr__(self, "coeffs", c)

    @property
    def freqs(self) -> np.ndarray:
        return np.arange(-self.degree, self.degree + 1)

    @property
    def is_real(self) -> bool:
        """Whether the coefficients carry the conjugate symmetry
        c_{-k} = conj(c_k) of a real-valued function (flag, not enforced)."""
        return bool(np.array_equal(np.conj(self.coeffs[::-1]), self.coeffs))

    def coeff(self, k: int) -> complex:
        """Coefficient of e^{ikx} (0 outside the stored band)."""
        if abs(k) > self.degree:
            return 0.0j
        return complex(self.coeffs[k + self.degree])

    def with_coeffs(self, coeffs) -> "TrigPoly":
        return TrigPoly(self.degree, coeffs)

    def __add__(self, other: "TrigPoly") -> "TrigPoly":
        m = max(self.degree, other.degree)
        c = np.zeros(2 * m + 1, dtype=complex)
        c[m - self.degree:m + self.degree + 1] += self.coeffs
        c[m - other.degree:m + other.degree + 1] += other.coeffs
        return TrigPoly(m, c)

    def __sub__(self, other: "TrigPoly") -> "TrigPoly":
        return self + (-1.0) * other

    def __rmul__(self, scalar) -> "TrigPoly":
        return TrigPoly(self.degree, scalar * self.coeffs)


@dataclass(frozen=True)
class NormParams:
    """How to measure: exponent p in (0, inf], grid oversampling factor.

    ``refine`` adds a golden-section polish around the grid argmax for the
    sup norm (off by default; the oversampled grid is already accurate).
    """
    p: float
    oversample: int = 8
    refine: bool = False

    def __post_init__(self):
        if not (self.p > 0.0):
            raise InvalidArgumentError("p must be positive (math.inf allowed)")
        if int(self.oversample) != self.oversample or self.oversample < 1:
            raise InvalidArgumentError("oversample must be a positive integer")

    @property
    def p1(self) -> float:
        """min(1, p) — the exponent for outer step averages."""
        return min(1.0, self.p)


def evaluate(f: TrigPoly, points) -> np.ndarray:
    """Evaluate f at arbitrary points (complex values)."""
    pts = np.atleast_1d(np.asarray(points, dtype=float))
    out = np.zeros(pts.shape, dtype=complex)
    # chunk the (points x modes) work matrix
    step = max(1, int(2e6) // (2 * f.degree + 1))
    for lo in range(0, pts.size, step):
        chunk = pts[lo:lo + step]
        out[lo:lo + step] = np.exp(1j * np.outer(chunk, f.freqs)) @ f.coeffs
    return out


def grid_values(f: TrigPoly, n: int) -> np.ndarray:
    """Values on the uniform grid x_j = 2 pi j / n via FFT synthesis."""
    if n < 2 * f.degree + 1:
        raise InvalidArgumentError("grid too coarse for the degree")
    spec = np.zeros(n, dtype=complex)
    k = f.freqs
    spec[np.mod(k, n)] = f.coeffs
    return n * np.fft.ifft(spec)


def lp_norm(f: TrigPoly, params: NormParams) -> float:
    """L_p norm (quasi-norm for p < 1) on the circle.

    Uses the uniform rectangle rule on max(64, oversample*(2*degree+1))
    points; spectrally accurate away from zeros of f, and the documented
    tolerances of downstream consumers absorb the rest.
    """
    n = max(64, params.oversample * (2 * f.degree + 1))
    if n < 4:
        raise InvalidArgumentError("degenerate quadrature grid")
    vals = np.abs(grid_values(f, n))
    if math.isinf(params.p):
        j = int(np.argmax(vals))
        best = float(vals[j])
        if params.refine:
            x0 = TWO_PI * j / n
            half = TWO_PI / n
            _, ref = golden_max(
                lambda x: float(np.abs(evaluate(f, [x]))[0]),
                x0 - half, x0 + half)
            best = max(best, ref)
        return best
    return float(np.mean(vals ** params.p) ** (1.0 / params.p))


def from_samples(values) -> TrigPoly:
    """Interpolating polynomial of degree floor((N-1)/2) from N uniform samples.

    Samples live on x_j = 2 pi j / N.  For even N the Nyquist bin is
    dropped, so the round trip through ``grid_values`` is exact whenever
    the samples come from a polynomial of degree <= floor((N-1)/2).
    """
    v = np.asarray(values, dtype=complex)
    if v.ndim != 1 or v.size < 1:
        raise InvalidArgumentError("need a 1-D sample vector")
    if not np.isfinite(v).all():
        raise InvalidArgumentError("samples must be finite")
    n = v.size
    m = (n - 1) // 2
    c = np.fft.fft(v) / n
    k = np.arange(-m, m + 1)
    return TrigPoly(m, c[np.mod(k, n)])


# ---------------------------------------------------------------------------
# corpus
# ---------------------------------------------------------------------------

def corpus(kind: str, degree: int, seed: int = 0) -> TrigPoly:
    """Named test functions.

    kind:
      'exponential'        e_n (``degree`` is the mode index, may be negative)
      'random_smooth'      real-valued, |c_k| = (1+|k|)^-2, seeded phases
      'sawtooth_truncated' sum_{k<=M} sin(kx)/k
      'abs_sin_truncated'  Fourier truncation of |sin x|
    """
    if kind == "exponential":
        n = int(degree)
        m = abs(n)
        c = np.zeros(2 * m + 1, dtype=complex)
        c[n + m] = 1.0
        return TrigPoly(m, c)
    if degree < 0:
        raise InvalidArgumentError("degree must be nonnegative")
    m = int(degree)
    if kind == "random_smooth":
        rng = np.random.default_rng(seed)
        c = np.zeros(2 * m + 1, dtype=complex)
        c[m] = 1.0
        for k in range(1, m + 1):
            phase = rng.uniform(0.0, TWO_PI)
            c[m + k] = (1.0 + k) ** -2.0 * np.exp(1j * phase)
            c[m - k] = np.conj(c[m + k])
        return TrigPoly(m, c)
    if kind == "sawtooth_truncated":
        c = np.zeros(2 * m + 1, dtype=complex)
        for k in range(1, m + 1):
            c[m + k] = -0.5j / k
            c[m - k] = 0.5j / k
        return TrigPoly(m, c)
    if kind == "abs_sin_truncated":
        c = np.zeros(2 * m + 1, dtype=complex)
        c[m] = 2.0 / math.pi
        for mm in range(1, m // 2 + 1):
            c[m + 2 * mm] = c[m - 2 * mm] = \
                -2.0 / (math.pi * (4.0 * mm * mm - 1.0))
        return TrigPoly(m, c)
    raise InvalidArgumentError(f"unknown corpus kind: {kind!r}")


def default_corpus() -> list[tuple[str, TrigPoly]]:
    """The standard (fid, function) list used by scans and the CLI."""
    return [
        ("exp:1", corpus("exponential", 1)),
        ("exp:3", corpus("exponential", 3)),
        ("random:8:1", corpus("random_smooth", 8, seed=1)),
        ("random:16:2", corpus("random_smooth", 16, seed=2)),
        ("sawtooth:8", corpus("sawtooth_truncated", 8)),
        ("abssin:8", corpus("abs_sin_truncated", 8)),
    ]
