"""Total variation estimation, exact evaluation, and integral checks.

The plug-in histogram estimator 0.5 * sum_bins |p_a - p_b| carries a
positive noise floor of order sum_i sqrt(p_i / (pi N)): summing absolute
per-bin noise inflates the estimate wherever the true per-bin gap is
below the counting noise.  Every estimate therefore reports, next to
its binomial standard error, the analytic null floor (the estimator's
expected value if the two laws were identical), so that soundness
comparisons "estimate <= bound" can be read against estimate-floor.
The floor is not subtracted from the reported estimate.

TV curves are simulated with independent innovations for the two copies
(marginal laws are all TV needs); the shared-noise coupling lives in the
models module for contraction diagnostics.  Curve simulation is chunked,
and each chunk owns a fixed substream, so results are byte-identical
for any worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional

import numpy as np
from scipy.special import ndtr

from . import models as models_mod
from .bounds import BoundCertificate, bound_eval
from .errors import DomainError, ParameterError, PrecisionError
from .models import ModelSpec, NoiseStream

__all__ = [
    "Histogram",
    "TVEstimate",
    "TVCurveRow",
    "TVCurve",
    "tv_histogram",
    "tv_from_histograms",
    "tv_exact_ar_normal",
    "simulate_tv_curve",
    "shifted_l1",
]

_CHUNK_PATHS = 1 << 17


@dataclass
class Histogram:
    """Fixed-width counting histogram anchored at ``origin`` (default 0).

    Bin i covers [origin + i*w, origin + (i+1)*w); counts live in a
    sparse dict so unbounded supports cost nothing.
    """

    bin_width: float
    origin: float = 0.0
    counts: dict = None
    total: int = 0

    def __post_init__(self):
        if not (self.bin_width > 0):
            raise ParameterError(f"bin width must be > 0, got {self.bin_width}")
        if self.counts is None:
            self.counts = {}

    @classmethod
    def from_samples(cls, samples, bin_width: float, origin: float = 0.0) -> "Histogram":
        h = cls(bin_width, origin)
        h.add(samples)
        return h

    def add(self, samples) -> None:
        x = np.asarray(samples, dtype=float).ravel()
        if x.size == 0:
            return
        if not np.all(np.isfinite(x)):
            raise ParameterError("samples must be finite")
        idx = np.floor((x - self.origin) / self.bin_width).astype(np.int64)
        vals, cnts = np.unique(idx, return_counts=True)
        if not self.counts:
            self.counts = dict(zip(vals.tolist(), cnts.tolist()))
        else:
            for v, c in zip(vals.tolist(), cnts.tolist()):
                self.counts[v] = self.counts.get(v, 0) + c
        self.total += int(x.size)

    def merge(self, other: "Histogram") -> None:
        if other.bin_width != self.bin_width or other.origin != self.origin:
            raise ParameterError("cannot merge histograms with different grids")
        for v, c in other.counts.items():
            self.counts[v] = self.counts.get(v, 0) + c
        self.total += other.total

    def density_sup(self) -> float:
        """Plug-in estimate of the density maximum, max_i p_i / w."""
        if self.total == 0:
            return 0.0
        return max(self.counts.values()) / (self.total * self.bin_width)


class TVEstimate(NamedTuple):
    estimate: float
    mc_se: float
    noise_floor: float


def tv_from_histograms(ha: Histogram, hb: Histogram) -> TVEstimate:
    """Plug-in TV between two histograms on the same grid.

    mc_se propagates per-bin binomial variance (with add-half smoothing
    so that degenerate tiny samples report a large, not zero, error);
    noise_floor is the expected value of the statistic under identical
    laws (normal approximation with pooled per-bin probabilities).
    """
    if ha.bin_width != hb.bin_width or ha.origin != hb.origin:
        raise ParameterError("histograms must share one bin grid")
    if ha.total == 0 or hb.total == 0:
        raise ParameterError("cannot estimate TV from an empty histogram")
    na, nb = ha.total, hb.total
    keys = set(ha.counts) | set(hb.counts)
    ca = np.array([ha.counts.get(k, 0) for k in sorted(keys)], dtype=float)
    cb = np.array([hb.counts.get(k, 0) for k in sorted(keys)], dtype=float)
    pa, pb = ca / na, cb / nb
    est = 0.5 * float(np.abs(pa - pb).sum())
    sa, sb = (ca + 0.5) / (na + 1), (cb + 0.5) / (nb + 1)
    var_diff = sa * (1 - sa) / na + sb * (1 - sb) / nb
    se = 0.5 * math.sqrt(float(var_diff.sum()))
    pooled = (ca + cb) / (na + nb)
    null_var = pooled * (1 - pooled) * (1.0 / na + 1.0 / nb)
    floor = 0.5 * math.sqrt(2 / math.pi) * float(np.sqrt(null_var).sum())
    return TVEstimate(est, se, floor)


def tv_histogram(samples_a, samples_b, bin_width: float, origin: float = 0.0) -> TVEstimate:
    """Histogram TV between two equal-size sample sets."""
    a = np.asarray(samples_a, dtype=float)
    b = np.asarray(samples_b, dtype=float)
    if a.size == 0 or b.size == 0:
        raise ParameterError("sample sets must be non-empty")
    if a.size != b.size:
        raise ParameterError(f"sample sets must have equal size, got {a.size} and {b.size}")
    return tv_from_histograms(
        Histogram.from_samples(a, bin_width, origin),
        Histogram.from_samples(b, bin_width, origin),
    )


def tv_exact_ar_normal(x0: float, x0_prime: float, n: int) -> float:
    """Exact TV at iteration n between two copies of
    X_n = X_{n-1}/2 + sqrt(3/4) Z_n started at known points:

        1 - 2 Phi(-|x0 - x0'| / (2^{n+1} sqrt(1 - 4^{-n})))
    """
    if n < 1:
        raise DomainError(f"exact TV needs n >= 1, got {n}")
    delta = abs(x0 - x0_prime)
    if delta == 0.0:
        return 0.0
    scale = 2.0 ** (n + 1) * math.sqrt(1.0 - 0.25**n)
    return float(1.0 - 2.0 * ndtr(-delta / scale))


@dataclass
class TVCurveRow:
    n: int
    bound: Optional[float]
    bound_clamped: Optional[float]
    tv_sim: Optional[float]
    tv_exact: Optional[float]
    mc_se: Optional[float]
    noise_floor: Optional[float] = None
    density_sup: Optional[float] = None


@dataclass
class TVCurve:
    rows: list

    CSV_HEADER = "n,bound,bound_clamped,tv_sim,tv_exact,mc_se"

    def to_csv(self) -> str:
        """CSV form: absent values empty, floats at 9 significant digits."""

        def fmt(v):
            return "" if v is None else f"{v:.9g}"

        lines = [self.CSV_HEADER]
        for r in self.rows:
            lines.append(
                ",".join(
                    [str(r.n), fmt(r.bound), fmt(r.bound_clamped), fmt(r.tv_sim), fmt(r.tv_exact), fmt(r.mc_se)]
                )
            )
        return "\n".join(lines) + "\n"


def _is_standard_ar1(model: ModelSpec) -> bool:
    return (
        isinstance(model, models_mod.ARNormal1D)
        and abs(model.a - 0.5) < 1e-12
        and abs(model.sigma - math.sqrt(0.75)) < 1e-12
    )


def _simulate_chunk(args):
    """Advance one chunk of coupled paths and histogram every iteration.

    Returns per-iteration (values, counts) pairs for both copies; the
    chunk index pins the substream, making the result independent of
    which worker ran it.
    """
    (model, x0, x0p, s20, s20p, n_max, n_paths, bin_width, stream, chunk_index) = args
    rng_a = stream.substream(2 * chunk_index).generator()
    rng_b = stream.substream(2 * chunk_index + 1).generator()
    ones = np.ones(n_paths)

    def broadcast_state(x, s2):
        return models_mod.make_state(model, float(x) * ones, None if s2 is None else float(s2) * ones)

    state_a = broadcast_state(x0, s20)
    state_b = broadcast_state(x0p, s20p)
    out = []
    for _ in range(n_max):
        state_a = models_mod.step(model, state_a, models_mod.draw_innovations(model, rng_a, size=n_paths))
        state_b = models_mod.step(model, state_b, models_mod.draw_innovations(model, rng_b, size=n_paths))
        xs_a = np.asarray(models_mod.observable(model, state_a), dtype=float)
        xs_b = np.asarray(models_mod.observable(model, state_b), dtype=float)
        pair = []
        for xs in (xs_a, xs_b):
            idx = np.floor(xs / bin_width).astype(np.int64)
            pair.append(np.unique(idx, return_counts=True))
        out.append(pair)
    return out


def simulate_tv_curve(
    model: ModelSpec,
    x0,
    x0_prime,
    n_max: int,
    n_paths: int,
    bin_width: float,
    stream: NoiseStream,
    certificate: Optional[BoundCertificate] = None,
    workers: int = 1,
    s20: Optional[float] = None,
    s20_prime: Optional[float] = None,
) -> TVCurve:
    """Simulated TV trajectory for two copies started at known points.

    Both copies use independent innovations throughout.  When a
    certificate is supplied its bound (raw and clamped) is attached for
    every n > n0.  For the standard AR(1) normal chain (a=1/2,
    sigma=sqrt(3/4)) the exact TV column is filled from the closed form.
    """
    if n_paths < 1:
        raise ParameterError(f"need n_paths >= 1, got {n_paths}")
    if n_max < 1:
        raise ParameterError(f"need n_max >= 1, got {n_max}")
    if not (bin_width > 0):
        raise ParameterError(f"bin width must be > 0, got {bin_width}")
    if isinstance(model, models_mod.GARCH) and (s20 is None or s20_prime is None):
        raise ParameterError("GARCH curves need both initial sigma^2 values")
    if isinstance(model, models_mod.ARNormalD):
        raise ParameterError(
            "TV curves are scalar-only; validate vector chains coordinate-wise "
            "or with the exact one-dimensional formula"
        )
    # reject invalid initial states before any chunk starts
    models_mod.make_state(model, x0, s20)
    models_mod.make_state(model, x0_prime, s20_prime)

    chunk_sizes = []
    remaining = n_paths
    while remaining > 0:
        take = min(_CHUNK_PATHS, remaining)
        chunk_sizes.append(take)
        remaining -= take
    jobs = [
        (model, x0, x0_prime, s20, s20_prime, n_max, size, bin_width, stream, i)
        for i, size in enumerate(chunk_sizes)
    ]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_simulate_chunk, jobs))
    else:
        results = [_simulate_chunk(j) for j in jobs]

    def merged(parts):
        vals = np.concatenate([p[0] for p in parts])
        cnts = np.concatenate([p[1] for p in parts])
        uniq, inv = np.unique(vals, return_inverse=True)
        summed = np.bincount(inv, weights=cnts).astype(np.int64)
        h = Histogram(bin_width)
        h.counts = dict(zip(uniq.tolist(), summed.tolist()))
        h.total = int(summed.sum())
        return h

    hists_a = [merged([chunk[n_i][0] for chunk in results]) for n_i in range(n_max)]
    hists_b = [merged([chunk[n_i][1] for chunk in results]) for n_i in range(n_max)]

    fill_exact = _is_standard_ar1(model) and np.ndim(x0) == 0
    rows = []
    for n_i in range(n_max):
        n = n_i + 1
        est = tv_from_histograms(hists_a[n_i], hists_b[n_i])
        bound = clamped = None
        if certificate is not None and n > certificate.n0:
            bv = bound_eval(certificate, n)
            bound, clamped = bv.raw, bv.clamped
        exact = tv_exact_ar_normal(float(x0), float(x0_prime), n) if fill_exact else None
        rows.append(
            TVCurveRow(
                n=n,
                bound=bound,
                bound_clamped=clamped,
                tv_sim=est.estimate,
                tv_exact=exact,
                mc_se=est.mc_se,
                noise_floor=est.noise_floor,
                density_sup=max(hists_a[n_i].density_sup(), hists_b[n_i].density_sup()),
            )
        )
    return TVCurve(rows)


def shifted_l1(
    density: Callable,
    delta: float,
    quadrature_step: float = 1e-3,
    tol: float = 1e-6,
    initial_half_range: float = 16.0,
) -> float:
    """Integral of |f(x + delta) - f(x)| dx by step-halving trapezoid
    quadrature with window expansion.

    The window grows (doubling) until the shifted difference is
    negligible at the ends and the added tail mass is below tol/10; the
    step then halves until two successive refinements agree within tol.
    Requested accuracy unreachable within the refinement budget raises
    PrecisionError.
    """
    if delta < 0:
        raise ParameterError(f"shift must be >= 0, got {delta}")
    if delta == 0.0:
        return 0.0

    def h(x):
        return np.abs(np.asarray(density(x + delta), dtype=float) - np.asarray(density(x), dtype=float))

    def trapz(lo, hi, step):
        m = max(int(math.ceil((hi - lo) / step)), 8)
        xs = np.linspace(lo, hi, m + 1)
        ys = h(xs)
        if not np.all(np.isfinite(ys)):
            raise PrecisionError("integrand is not finite on the quadrature window")
        return float(np.trapezoid(ys, xs))

    lo, hi = -initial_half_range, initial_half_range + delta
    step = max(quadrature_step, 1e-6)
    total = trapz(lo, hi, step)
    for _ in range(24):
        left = trapz(2 * lo, lo, step)
        right = trapz(hi, 2 * hi, step)
        tail = left + right
        lo, hi = 2 * lo, 2 * hi
        total += tail
        if tail < tol / 10:
            break
    else:
        raise PrecisionError("shifted-density integral did not localize; window kept growing")
    for _ in range(16):
        step /= 2
        refined = trapz(lo, hi, step)
        if abs(refined - total) < tol / 2:
            return refined
        total = refined
    raise PrecisionError("trapezoid refinement did not converge to the requested accuracy")
