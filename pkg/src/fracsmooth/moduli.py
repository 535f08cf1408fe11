"""The four moduli of smoothness and the equivalence-ratio experiments.

The classical modulus takes a sup over step sizes and is evaluated by a
grid maximum plus local golden-section polish.  The integral modulus
averages the difference norm over steps (Gauss-Legendre in delta).  The
linearized and double-averaged moduli never integrate differences
numerically: averaging a fractional difference over the step is exactly
a Fourier multiplier, so their values come from kernel symbols.

The scan engine computes all four on a corpus grid, the pairwise ratios
(with a divide-by-zero infinity flag), and the correction term that
repairs the linearized modulus where it degenerates: the near-best
approximation error of degree floor(1/h).
"""
from __future__ import annotations

import csv
import json
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial.legendre import leggauss

from ._util import fmt17, golden_max
from .approx import near_best_error
from .errors import InvalidArgumentError, UnsupportedParameterError
from .fracdiff import apply_diff
from .kernel import psi_many
from .signal import NormParams, TrigPoly, lp_norm

log = logging.getLogger(__name__)

CSV_HEADER = ("fid", "beta", "alpha", "h", "p", "omega", "w",
              "omega_tilde", "omega_star", "r_w", "r_tilde", "r_star")


@dataclass(frozen=True)
class ModulusRequest:
    """Parameters shared by every modulus computation.

    ``alpha`` is only meaningful for the double-averaged modulus and must
    split beta as beta = alpha + (nonnegative integer) with alpha in
    (0, 4] — the regime where the averaging kernel of order alpha has no
    zeros and the construction is invertible.
    """
    beta: float
    h: float
    norm: NormParams
    alpha: float | None = None
    delta_grid: int = 256
    quad_order: int = 64

    def __post_init__(self):
        if not (self.beta > 0.0 and math.isfinite(self.beta)):
            raise InvalidArgumentError("beta must be positive and finite")
        if not (self.h > 0.0 and math.isfinite(self.h)):
            raise InvalidArgumentError("h must be positive and finite")
        if self.delta_grid < 8:
            raise InvalidArgumentError("delta_grid must be at least 8")
        if self.quad_order < 4:
            raise InvalidArgumentError("quad_order must be at least 4")
        if self.alpha is not None:
            a = float(self.alpha)
            if not (0.0 < a <= 4.0):
                raise InvalidArgumentError("alpha must lie in (0, 4]")
            gap = self.beta - a
            if abs(gap - round(gap)) > 1e-9 or round(gap) < 0:
                raise InvalidArgumentError(
                    "beta - alpha must be a nonnegative integer")


def _diff_norm(f: TrigPoly, beta: float, delta: float,
               norm: NormParams) -> float:
    return lp_norm(apply_diff(f, beta, delta), norm)


def classical_modulus(f: TrigPoly, req: ModulusRequest) -> float:
    """sup over steps delta in (0, h] of the difference norm.

    Grid maximum over ``delta_grid`` uniform steps, then golden-section
    refinement in the cell around the discrete argmax.  The polish is
    local — no global unimodality is assumed.
    """
    if req.alpha is not None:
        raise InvalidArgumentError("alpha does not apply to this modulus")
    grid = int(req.delta_grid)
    deltas = np.linspace(req.h / grid, req.h, grid)
    vals = [_diff_norm(f, req.beta, float(d), req.norm) for d in deltas]
    i = int(np.argmax(vals))
    best = vals[i]
    lo = deltas[i - 1] if i > 0 else deltas[0]
    hi = deltas[i + 1] if i + 1 < grid else deltas[-1]
    if hi > lo:
        _, refined = golden_max(
            lambda d: _diff_norm(f, req.beta, d, req.norm), lo, hi,
            iterations=20)
        best = max(best, refined)
    return float(best)


def integral_modulus(f: TrigPoly, req: ModulusRequest) -> float:
    """((1/h) integral of ||diff||_p^p1 over (0, h))^(1/p1), p1 = min(1, p).

    Gauss-Legendre of order ``quad_order`` mapped onto (0, h).
    """
    if req.alpha is not None:
        raise InvalidArgumentError("alpha does not apply to this modulus")
    nodes, weights = leggauss(int(req.quad_order))
    deltas = 0.5 * req.h * (nodes + 1.0)
    scale = 0.5  # (1/h) * (h/2): the affine map's Jacobian over the mean
    p1 = req.norm.p1
    acc = 0.0
    for d, w in zip(deltas, weights):
        acc += w * _diff_norm(f, req.beta, float(d), req.norm) ** p1
    return float((scale * acc) ** (1.0 / p1))


def _psi_coeffs(beta: float, h: float, freqs: np.ndarray) -> np.ndarray:
    return psi_many(beta, freqs * h)


def linearized_modulus(f: TrigPoly, req: ModulusRequest) -> float:
    """Norm of the step-averaged fractional difference.

    Averaging the difference over delta in (0, h) multiplies the k-th
    coefficient by the averaging symbol at k h, so the value is exact up
    to kernel quadrature — no delta integration happens here.  Defined
    for p >= 1 only.
    """
    if req.alpha is not None:
        raise InvalidArgumentError("alpha does not apply to this modulus")
    if req.norm.p < 1.0:
        raise UnsupportedParameterError(
            "the averaged difference needs an integrable function: p >= 1")
    sym = _psi_coeffs(req.beta, req.h, f.freqs)
    return lp_norm(f.with_coeffs(f.coeffs * sym), req.norm)


def star_modulus(f: TrigPoly, req: ModulusRequest) -> float:
    """Norm of the doubly averaged difference (orders beta-alpha and alpha).

    The two averaging symbols multiply; when beta = alpha the first
    factor is identically 1 and the value coincides with the linearized
    modulus.
    """
    if req.alpha is None:
        raise InvalidArgumentError("alpha is required for this modulus")
    if req.norm.p < 1.0:
        raise UnsupportedParameterError(
            "the averaged difference needs an integrable function: p >= 1")
    alpha = float(req.alpha)
    gap = round(req.beta - alpha)
    sym = _psi_coeffs(alpha, req.h, f.freqs)
    if gap > 0:
        sym = sym * _psi_coeffs(float(gap), req.h, f.freqs)
    return lp_norm(f.with_coeffs(f.coeffs * sym), req.norm)


# ---------------------------------------------------------------------------
# equivalence experiments
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EquivReport:
    """One scan row: the four moduli and their quotients.

    ``corrected`` carries the repaired comparison quantity (linearized
    modulus plus the degree-floor(1/h) near-best error); ``error`` records
    a per-row failure message.  Neither is part of the CSV/JSON schema.
    """
    fid: str
    beta: float
    alpha: float
    h: float
    p: float
    omega: float
    w: float
    omega_tilde: float
    omega_star: float
    r_w: float
    r_tilde: float
    r_star: float
    corrected: float = field(default=math.nan, compare=False)
    error: str | None = field(default=None, compare=False)


def _ratio(num: float, den: float) -> float:
    """Quotient with the degenerate cases pinned: 0/0 -> nan, and a
    denominator at (or below) rounding scale of the numerator -> inf."""
    if num == 0.0 and den == 0.0:
        return math.nan
    if den <= 1e-9 * num:
        return math.inf
    return num / den


def default_alpha(beta: float) -> float:
    """Splitting rule for the double average: the fractional part of beta
    when there is one (beta = alpha + floor(beta)), otherwise beta capped
    at 4 (beta = alpha + 0 or alpha + (beta - 4))."""
    frac = beta - math.floor(beta)
    if frac > 1e-9:
        return frac
    return min(beta, 4.0)


def _scan_row(fid: str, f: TrigPoly, beta: float, h: float, p: float,
              alpha: float | None) -> EquivReport:
    a = default_alpha(beta) if alpha is None else alpha
    try:
        norm = NormParams(p=p)
        base = ModulusRequest(beta=beta, h=h, norm=norm)
        omega = classical_modulus(f, base)
        w_val = integral_modulus(f, base)
        tilde = linearized_modulus(f, base)
        star = star_modulus(
            f, ModulusRequest(beta=beta, h=h, norm=norm, alpha=a))
        corrected = tilde + near_best_error(f, int(math.floor(1.0 / h)), p)
        return EquivReport(
            fid=fid, beta=beta, alpha=a, h=h, p=p,
            omega=omega, w=w_val, omega_tilde=tilde, omega_star=star,
            r_w=_ratio(omega, w_val), r_tilde=_ratio(omega, tilde),
            r_star=_ratio(omega, star), corrected=corrected)
    except Exception as exc:  # noqa: BLE001 - rows must not kill the scan
        log.warning("scan row (%s, beta=%s, h=%s, p=%s) failed: %s",
                    fid, beta, h, p, exc)
        nan = math.nan
        return EquivReport(fid=fid, beta=beta, alpha=a, h=h, p=p,
                           omega=nan, w=nan, omega_tilde=nan, omega_star=nan,
                           r_w=nan, r_tilde=nan, r_star=nan,
                           error=str(exc))


def equivalence_scan(corpus, betas, hs, ps, *, alpha: float | None = None,
                     threads: int = 1) -> list[EquivReport]:
    """All four moduli on corpus x betas x hs x ps, with ratio columns.

    ``corpus`` is an iterable of (fid, TrigPoly).  Rows are independent;
    ``threads`` > 1 maps them over a thread pool.  A failing row is
    recorded with nan values and its message rather than aborting the
    scan.  Rows come back sorted by (fid, beta, h, p).
    """
    jobs = [(fid, f, float(b), float(h), float(p))
            for fid, f in corpus for b in betas for h in hs for p in ps]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=int(threads)) as pool:
            rows = list(pool.map(
                lambda j: _scan_row(j[0], j[1], j[2], j[3], j[4], alpha),
                jobs))
    else:
        rows = [_scan_row(fid, f, b, h, p, alpha)
                for fid, f, b, h, p in jobs]
    rows.sort(key=lambda r: (r.fid, r.beta, r.h, r.p))
    return rows


def _cell(value) -> str:
    if isinstance(value, str):
        return value
    v = float(value)
    if math.isnan(v):
        return "nan"
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return fmt17(v)


def write_report_csv(fh, rows: list[EquivReport]) -> None:
    """Fixed-schema CSV; floats at full round-trip precision."""
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in rows:
        writer.writerow([r.fid] + [_cell(getattr(r, name))
                                   for name in CSV_HEADER[1:]])


def write_report_json(fh, rows: list[EquivReport]) -> None:
    """Same fields as the CSV, as a JSON array with sorted keys."""
    payload = [
        {name: (r.fid if name == "fid" else _cell(getattr(r, name)))
         for name in CSV_HEADER}
        for r in rows
    ]
    json.dump(payload, fh, sort_keys=True, indent=2, ensure_ascii=False)
    fh.write("\n")


def read_report_csv(fh) -> list[EquivReport]:
    """Parse a CSV produced by ``write_report_csv`` back into rows."""
    reader = csv.reader(fh)
    header = next(reader)
    if tuple(header) != CSV_HEADER:
        raise InvalidArgumentError(f"unexpected header: {header!r}")
    out = []
    for rec in reader:
        vals = dict(zip(CSV_HEADER, rec))
        out.append(EquivReport(
            fid=vals["fid"],
            **{k: float(vals[k]) for k in CSV_HEADER[1:]}))
    return out
