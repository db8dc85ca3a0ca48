"""Chain families as iterated random functions X_n = g(theta_n, X_{n-1}).

Every family exposes the same three primitives:

* :func:`draw_innovations` pulls one iteration's worth of noise,
* :func:`step` applies one deterministic transition given that noise,
* :func:`couple_step` advances two copies, either with shared noise
  (the common-random-number coupling that realizes the contraction
  phase) or with independent noise from distinct substreams.

States are numpy-friendly: scalars and arrays flow through the same
code, so a million coupled paths advance in one vectorized call.  The
GARCH state carries the pair (x, sigma^2) because its bound consumes
both initial components.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Union

import numpy as np

from . import stochastics
from .errors import ParameterError, StateError
from .stochastics import Dist, Gamma, InverseGamma, NoiseStream, dist_from_dict, dist_to_dict

__all__ = [
    "NonlinearAR",
    "ARNormal1D",
    "ARNormalD",
    "LocationGibbsTau",
    "RegressionGibbsSigma",
    "LARCH",
    "AsymARCH",
    "GARCH",
    "ModelSpec",
    "GarchState",
    "CoupledState",
    "SHARED",
    "INDEPENDENT",
    "draw_innovations",
    "step",
    "couple_step",
    "deinit_pair_step",
    "location_full_sweep",
    "regression_full_sweep",
    "gibbs_innovations_from_full",
    "make_state",
    "observable",
    "model_to_dict",
    "model_from_dict",
]

SHARED = "shared"
INDEPENDENT = "independent"


@dataclass(frozen=True)
class NonlinearAR:
    """X_n = (X_{n-1} - sin X_{n-1})/2 + Z_n with Z standard normal."""


@dataclass(frozen=True)
class ARNormal1D:
    """X_n = a X_{n-1} + sigma Z_n."""

    a: float
    sigma: float

    def __post_init__(self):
        if not (self.sigma > 0):
            raise ParameterError(f"ARNormal1D sigma must be > 0, got {self.sigma}")


@dataclass(frozen=True, eq=False)
class ARNormalD:
    """X_n = A X_{n-1} + Sigma Z_n with Z a standard normal vector."""

    a_matrix: np.ndarray
    sigma_matrix: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.a_matrix, dtype=float)
        s = np.asarray(self.sigma_matrix, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ParameterError(f"A must be square, got shape {a.shape}")
        if s.shape != a.shape:
            raise ParameterError(f"Sigma shape {s.shape} must match A shape {a.shape}")
        object.__setattr__(self, "a_matrix", a)
        object.__setattr__(self, "sigma_matrix", s)

    @property
    def dim(self) -> int:
        return self.a_matrix.shape[0]


@dataclass(frozen=True)
class LocationGibbsTau:
    """Reduced location-model Gibbs chain on the inverse precision.

    tau^{-1}_n = X_n Y_n tau^{-1}_{n-1} + Y_n with X ~ Gamma(1/2, S/2)
    and Y ~ InverseGamma((J+2)/2, S/2).  ``y_bar`` is only needed to
    reconstruct the full draw (the location coordinate) in
    :func:`deinit_pair_step`; the reduced chain never uses it.
    """

    j: int
    s: float
    y_bar: float = 0.0

    def __post_init__(self):
        if self.j < 3:
            raise ParameterError(f"location model needs J >= 3, got {self.j}")
        if not (self.s >= 0):
            raise ParameterError(f"S must be >= 0, got {self.s}")

    @property
    def x_dist(self) -> Gamma:
        return Gamma(0.5, self.s / 2)

    @property
    def y_dist(self) -> InverseGamma:
        return InverseGamma((self.j + 2) / 2, self.s / 2)


@dataclass(frozen=True)
class RegressionGibbsSigma:
    """Reduced regression Gibbs chain on the noise variance.

    sigma^2_n = X_n Y_n sigma^2_{n-1} + Y_n with X ~ Gamma(p/2, C/2) and
    Y ~ InverseGamma((k+p)/2, C/2).  ``beta_tilde1`` and ``a_inv_11``
    (the first posterior-mean coordinate and the (1,1) entry of the
    inverse Gram matrix) let :func:`deinit_pair_step` reconstruct the
    first regression coordinate of the full draw; they default to the
    standardized values (0, 1) when no dataset is attached.
    """

    k: int
    p: int
    c_stat: float
    beta_tilde1: float = 0.0
    a_inv_11: float = 1.0

    def __post_init__(self):
        if self.k < 1 or self.p < 1:
            raise ParameterError(f"need k, p >= 1, got ({self.k}, {self.p})")
        if not (self.c_stat > 0):
            raise ParameterError(f"C statistic must be > 0, got {self.c_stat}")
        if not (self.a_inv_11 > 0):
            raise ParameterError(f"a_inv_11 must be > 0, got {self.a_inv_11}")

    @property
    def x_dist(self) -> Gamma:
        return Gamma(self.p / 2, self.c_stat / 2)

    @property
    def y_dist(self) -> InverseGamma:
        return InverseGamma((self.k + self.p) / 2, self.c_stat / 2)


@dataclass(frozen=True)
class LARCH:
    """X_n = (beta0 + beta1 X_{n-1}) Z_n with Z > 0 a.s.

    Feeding the squared observations of a linear ARCH process through
    this family (with Z replaced by its square, e.g. chi-square(1))
    simulates the squared chain directly.
    """

    beta0: float
    beta1: float
    z: Dist

    def __post_init__(self):
        if not (self.beta0 > 0 and self.beta1 > 0):
            raise ParameterError(
                f"LARCH requires beta0, beta1 > 0, got ({self.beta0}, {self.beta1})"
            )
        if isinstance(self.z, stochastics.Normal):
            raise ParameterError("LARCH noise must be positive almost surely")


@dataclass(frozen=True)
class AsymARCH:
    """X_n = sqrt((a X_{n-1} + b)^2 + c^2) Z_n."""

    a: float
    b: float
    c: float
    z: Dist

    def __post_init__(self):
        if self.c == 0:
            raise ParameterError("asymmetric ARCH requires c != 0")


@dataclass(frozen=True)
class GARCH:
    """GARCH(1,1): X_n = sigma_n Z_n, sigma^2_n = alpha2 + beta2 X^2_{n-1} + gamma2 sigma^2_{n-1}.

    Fields store the squared coefficients alpha^2, beta^2, gamma^2.
    """

    alpha2: float
    beta2: float
    gamma2: float
    z: Dist

    def __post_init__(self):
        if not (self.alpha2 > 0 and self.beta2 > 0 and self.gamma2 > 0):
            raise ParameterError(
                "GARCH requires alpha2, beta2, gamma2 > 0, got "
                f"({self.alpha2}, {self.beta2}, {self.gamma2})"
            )


ModelSpec = Union[
    NonlinearAR,
    ARNormal1D,
    ARNormalD,
    LocationGibbsTau,
    RegressionGibbsSigma,
    LARCH,
    AsymARCH,
    GARCH,
]

_GIBBS = (LocationGibbsTau, RegressionGibbsSigma)


class GarchState(NamedTuple):
    x: "np.ndarray | float"
    s2: "np.ndarray | float"


@dataclass
class CoupledState:
    """Two chain copies advanced in lockstep."""

    x: object
    x_prime: object
    iteration: int = 0


def make_state(model: ModelSpec, x, s2=None):
    """Build a family-appropriate state from plain numbers/arrays."""
    if isinstance(model, GARCH):
        if s2 is None:
            raise ParameterError("GARCH state needs both x and sigma^2")
        return GarchState(x, s2)
    if isinstance(model, ARNormalD):
        v = np.asarray(x, dtype=float)
        if v.shape[-1] != model.dim:
            raise ParameterError(f"state dimension {v.shape[-1]} != model dimension {model.dim}")
        return v
    if isinstance(model, _GIBBS):
        _check_positive_state(x)
    return x


def observable(model: ModelSpec, state):
    """The scalar the TV curves histogram (X_n itself; GARCH tracks x)."""
    return state.x if isinstance(model, GARCH) else state


def _check_positive_state(x):
    if np.any(np.asarray(x) <= 0):
        raise StateError("Gibbs chain state must be strictly positive")


def draw_innovations(model: ModelSpec, rng: np.random.Generator, size=None):
    """One iteration's innovations for ``model``.

    ``size`` is None for a single path or an int for that many paths.
    For the vector family the draw has shape (d,) or (size, d).
    """
    if isinstance(model, (NonlinearAR, ARNormal1D)):
        return rng.standard_normal(size=size)
    if isinstance(model, ARNormalD):
        shape = (model.dim,) if size is None else (size, model.dim)
        return rng.standard_normal(size=shape)
    if isinstance(model, _GIBBS):
        x = stochastics.sample(model.x_dist, rng, size=size)
        y = stochastics.sample(model.y_dist, rng, size=size)
        return x, y
    if isinstance(model, (LARCH, AsymARCH, GARCH)):
        return stochastics.sample(model.z, rng, size=size)
    raise ParameterError(f"unknown model {model!r}")


def step(model: ModelSpec, state, noise):
    """One transition; deterministic given (state, noise)."""
    if isinstance(model, NonlinearAR):
        return 0.5 * (state - np.sin(state)) + noise
    if isinstance(model, ARNormal1D):
        return model.a * state + model.sigma * noise
    if isinstance(model, ARNormalD):
        x = np.asarray(state, dtype=float)
        a, s = model.a_matrix, model.sigma_matrix
        return x @ a.T + np.asarray(noise) @ s.T
    if isinstance(model, _GIBBS):
        _check_positive_state(state)
        x, y = noise
        return x * y * state + y
    if isinstance(model, LARCH):
        return (model.beta0 + model.beta1 * state) * noise
    if isinstance(model, AsymARCH):
        return np.sqrt((model.a * state + model.b) ** 2 + model.c**2) * noise
    if isinstance(model, GARCH):
        if np.any(np.asarray(state.s2) < 0):
            raise StateError("GARCH sigma^2 state must be >= 0")
        s2 = model.alpha2 + model.beta2 * np.asarray(state.x) ** 2 + model.gamma2 * np.asarray(state.s2)
        return GarchState(np.sqrt(s2) * noise, s2)
    raise ParameterError(f"unknown model {model!r}")


def couple_step(model: ModelSpec, cs: CoupledState, mode: str, stream: NoiseStream) -> CoupledState:
    """Advance both copies one iteration.

    ``shared`` mode reuses one innovation draw for both copies (the
    common-random-number coupling); ``independent`` mode draws each
    copy's innovations from a distinct substream.  The draws are derived
    from (stream, iteration), so trajectories are a pure function of
    (seed, stream_id, initial states).
    """
    it = cs.iteration
    rng = stream.substream(2 * it).generator()
    noise = draw_innovations(model, rng, size=_size_of(model, cs.x))
    if mode == SHARED:
        noise_prime = noise
    elif mode == INDEPENDENT:
        rng_p = stream.substream(2 * it + 1).generator()
        noise_prime = draw_innovations(model, rng_p, size=_size_of(model, cs.x_prime))
    else:
        raise ParameterError(f"coupling mode must be '{SHARED}' or '{INDEPENDENT}', got {mode!r}")
    return CoupledState(
        x=step(model, cs.x, noise),
        x_prime=step(model, cs.x_prime, noise_prime),
        iteration=it + 1,
    )


def _size_of(model: ModelSpec, state):
    if isinstance(model, GARCH):
        state = state.x
    arr = np.asarray(state)
    if isinstance(model, ARNormalD):
        return None if arr.ndim == 1 else arr.shape[0]
    return None if arr.ndim == 0 else arr.shape[0]


def gibbs_innovations_from_full(model, z, g):
    """Map the full Gibbs draws (normal z, gamma-rate-1 g, or a normal
    vector w for the regression family) onto the reduced chain's (X, Y)."""
    if isinstance(model, LocationGibbsTau):
        return z * z / model.s, model.s / (2 * g)
    if isinstance(model, RegressionGibbsSigma):
        q = np.sum(np.asarray(z) ** 2, axis=-1)
        return q / model.c_stat, model.c_stat / (2 * g)
    raise ParameterError("full-draw mapping exists only for the Gibbs families")


def location_full_sweep(model: LocationGibbsTau, state, z, g):
    """One full location-Gibbs sweep from the inverse precision ``state``:

        mu      = y_bar + z / sqrt(J tau),        tau = 1/state
        reduced = (S/2 + (J/2)(y_bar - mu)^2) / g

    with z standard normal and g ~ Gamma((J+2)/2, 1).  Returns
    (reduced, (mu, reduced)); z = 0 collapses mu onto y_bar.
    """
    _check_positive_state(state)
    tau = 1.0 / state
    mu = model.y_bar + z / np.sqrt(model.j * tau)
    reduced = (model.s / 2 + model.j / 2 * (model.y_bar - mu) ** 2) / g
    return reduced, (mu, reduced)


def regression_full_sweep(model: RegressionGibbsSigma, state, w, g):
    """One full regression-Gibbs sweep from the variance ``state``:

        beta_1  = beta_tilde1 + sigma sqrt((A^-1)_11) w_1
        reduced = (sigma^2 ||w||^2 + C) / (2 g)

    with w a standard normal p-vector and g ~ Gamma((k+p)/2, 1).
    Returns (reduced, (beta_1, reduced)).
    """
    _check_positive_state(state)
    w = np.asarray(w, dtype=float)
    sigma = np.sqrt(state)
    beta1 = model.beta_tilde1 + sigma * math.sqrt(model.a_inv_11) * w[..., 0]
    quad = state * np.sum(w**2, axis=-1)
    reduced = (quad + model.c_stat) / (2 * g)
    return reduced, (beta1, reduced)


def deinit_pair_step(model, state, stream):
    """Advance a Gibbs chain through its full two-block sweep.

    Returns ``(reduced, full)``: the reduced chain value (tau^{-1} or
    sigma^2) and the full Gibbs draw it de-initializes — (mu, tau^{-1})
    for the location model, (beta_1, sigma^2) for the regression model
    (the first regression coordinate; the remaining coordinates are
    exchangeable copies of the same construction).

    The reduced value coincides exactly with :func:`step` fed the
    innovations from :func:`gibbs_innovations_from_full`.
    """
    rng = stochastics._as_generator(stream)
    size = None if np.asarray(state).ndim == 0 else np.asarray(state).shape[0]
    if isinstance(model, LocationGibbsTau):
        z = rng.standard_normal(size=size)
        g = stochastics.sample(Gamma((model.j + 2) / 2, 1.0), rng, size=size)
        return location_full_sweep(model, state, z, g)
    if isinstance(model, RegressionGibbsSigma):
        wshape = (model.p,) if size is None else (size, model.p)
        w = rng.standard_normal(size=wshape)
        g = stochastics.sample(Gamma((model.k + model.p) / 2, 1.0), rng, size=size)
        return regression_full_sweep(model, state, w, g)
    raise ParameterError("de-initialized stepping exists only for the Gibbs families")


_FAMILY_TAGS = {
    NonlinearAR: "nonlinear-ar",
    ARNormal1D: "ar1",
    ARNormalD: "ar-d",
    LocationGibbsTau: "location-gibbs",
    RegressionGibbsSigma: "regression-gibbs",
    LARCH: "larch",
    AsymARCH: "asym-arch",
    GARCH: "garch",
}


def model_to_dict(model: ModelSpec) -> dict:
    """JSON-ready {"family": ..., "params": {...}} form."""
    family = _FAMILY_TAGS.get(type(model))
    if family is None:
        raise ParameterError(f"unknown model {model!r}")
    if isinstance(model, NonlinearAR):
        params = {}
    elif isinstance(model, ARNormal1D):
        params = {"a": model.a, "sigma": model.sigma}
    elif isinstance(model, ARNormalD):
        params = {"a": model.a_matrix.tolist(), "sigma": model.sigma_matrix.tolist()}
    elif isinstance(model, LocationGibbsTau):
        params = {"j": model.j, "s": model.s, "y_bar": model.y_bar}
    elif isinstance(model, RegressionGibbsSigma):
        params = {
            "k": model.k,
            "p": model.p,
            "c_stat": model.c_stat,
            "beta_tilde1": model.beta_tilde1,
            "a_inv_11": model.a_inv_11,
        }
    elif isinstance(model, LARCH):
        params = {"beta0": model.beta0, "beta1": model.beta1, "z": dist_to_dict(model.z)}
    elif isinstance(model, AsymARCH):
        params = {"a": model.a, "b": model.b, "c": model.c, "z": dist_to_dict(model.z)}
    else:
        params = {
            "alpha2": model.alpha2,
            "beta2": model.beta2,
            "gamma2": model.gamma2,
            "z": dist_to_dict(model.z),
        }
    return {"family": family, "params": params}


def model_from_dict(d: dict) -> ModelSpec:
    try:
        family = d["family"]
        params = dict(d.get("params", {}))
    except (TypeError, KeyError):
        raise ParameterError(f"model spec must carry 'family' and 'params': {d!r}") from None
    try:
        if family == "nonlinear-ar":
            return NonlinearAR()
        if family == "ar1":
            return ARNormal1D(**params)
        if family == "ar-d":
            return ARNormalD(np.asarray(params["a"], dtype=float), np.asarray(params["sigma"], dtype=float))
        if family == "location-gibbs":
            return LocationGibbsTau(**params)
        if family == "regression-gibbs":
            return RegressionGibbsSigma(**params)
        if family == "larch":
            return LARCH(params["beta0"], params["beta1"], dist_from_dict(params["z"]))
        if family == "asym-arch":
            return AsymARCH(params["a"], params["b"], params["c"], dist_from_dict(params["z"]))
        if family == "garch":
            return GARCH(
                params["alpha2"], params["beta2"], params["gamma2"], dist_from_dict(params["z"])
            )
    except (TypeError, KeyError) as exc:
        raise ParameterError(f"bad parameters for family '{family}': {exc}") from None
    raise ParameterError(f"unknown family '{family}'")
