"""Seeded generators for three nonlinear autoregressive test processes.

Each generator runs the FCAR recursion
``X_t = sum_a m_a(X_{t-d}) X_{t-a} + sigma * eps_t`` from a standard-normal
initial state, discards a burn-in, and returns the series together with
the true coefficient functions (for benchmarking against an estimator
that knows them) and the exact noise used (so paths can be replayed).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import NonFiniteState
from .series import TimeSeries, make_series

__all__ = [
    "DgpSpec",
    "SimulatedSeries",
    "sigma_het",
    "simulate",
    "simulate_sine",
    "simulate_expar",
    "simulate_setar",
    "default_spec",
]

#: Burn-in length discarded before the returned window.
BURN_IN = 200

#: Absolute value beyond which a path is declared divergent.
OVERFLOW_GUARD = 1e6


def sigma_het(lags, p: int | None = None) -> float:
    """Noise scale ``0.1 (sqrt(p)/2) * r`` with a ratio ``r`` that is 1.

    The ratio ``(5 - exp(mean|lags|)) / (5 - exp(mean|lags|))`` has
    identical numerator and denominator, so the value reduces to
    ``0.05 sqrt(p)``; on the singular set where the shared factor is 0
    the limit value 1 is used for the ratio. The function exists as the
    seam where a genuinely state-dependent scale can be plugged in.

    Parameters
    ----------
    lags : array-like of shape (p,)
        Current lag vector ``(X_{t-1}, ..., X_{t-p})``.
    p : int, optional
        Order; defaults to ``len(lags)``.

    Returns
    -------
    float
    """
    lags = np.asarray(lags, dtype=float)
    if p is None:
        p = lags.shape[0]
    shared = 5.0 - math.exp(float(np.sum(np.abs(lags))) / p)
    ratio = 1.0 if shared == 0.0 else shared / shared
    return 0.1 * (math.sqrt(p) / 2.0) * ratio


@dataclass(frozen=True)
class DgpSpec:
    """Parameter set of one generating process.

    Attributes
    ----------
    kind : {"sine", "expar", "setar"}
    p : int
        Autoregressive order.
    d : int
        Delay lag.
    a : tuple of float
        First coefficient vector, length ``p``.
    b : tuple of float or None
        Second coefficient vector (expar and setar).
    omega : float or None
        Frequency of the sine coefficients.
    delta : float or None
        Decay rate of the expar coefficients.
    r : tuple of float or None
        Per-lag thresholds (setar).
    noise : {"het", "unit"} or callable
        Noise scale: the near-constant heteroscedastic seam
        (:func:`sigma_het`), unit scale, or a custom ``sigma(lags)``.

    Notes
    -----
    The stock parameter vectors keep every coefficient function inside
    bounds (``|a_a|``; ``|a_a| + |b_a|`` for expar; ``max(|a_a|, |b_a|)``
    for setar) under which the recursion is geometrically ergodic. This
    is a property of the supplied values, not checked at runtime.
    """

    kind: str
    p: int
    d: int
    a: tuple
    b: tuple | None = None
    omega: float | None = None
    delta: float | None = None
    r: tuple | None = None
    noise: object = "het"

    def __post_init__(self):
        if self.kind not in ("sine", "expar", "setar"):
            raise ValueError(f"unknown dgp kind {self.kind!r}")
        if len(self.a) != self.p:
            raise ValueError(f"a has length {len(self.a)}, expected p={self.p}")
        if self.kind == "sine" and self.omega is None:
            raise ValueError("sine dgp requires omega")
        if self.kind in ("expar", "setar"):
            if self.b is None or len(self.b) != self.p:
                raise ValueError(f"{self.kind} dgp requires b of length p={self.p}")
        if self.kind == "expar" and self.delta is None:
            raise ValueError("expar dgp requires delta")
        if self.kind == "setar" and (self.r is None or len(self.r) != self.p):
            raise ValueError(f"setar dgp requires r of length p={self.p}")

    def true_functions(self) -> tuple[Callable, ...]:
        """Vectorised evaluators ``u -> m_alpha(u)``, one per lag."""
        a = np.asarray(self.a, dtype=float)
        if self.kind == "sine":
            omega = float(self.omega)
            return tuple(
                (lambda u, c=a[i]: c * np.sin(omega * np.pi * np.asarray(u, dtype=float)))
                for i in range(self.p)
            )
        if self.kind == "expar":
            b = np.asarray(self.b, dtype=float)
            delta = float(self.delta)
            return tuple(
                (lambda u, ai=a[i], bi=b[i]:
                 ai + bi * np.exp(-delta * np.square(np.asarray(u, dtype=float))))
                for i in range(self.p)
            )
        b = np.asarray(self.b, dtype=float)
        r = np.asarray(self.r, dtype=float)
        return tuple(
            (lambda u, ai=a[i], bi=b[i], ri=r[i]:
             np.where(np.asarray(u, dtype=float) < ri, ai, bi))
            for i in range(self.p)
        )

    def _coef_at(self, u: float) -> np.ndarray:
        """All p coefficients at a scalar delay value (recursion kernel)."""
        a = np.asarray(self.a, dtype=float)
        if self.kind == "sine":
            return a * math.sin(self.omega * math.pi * u)
        if self.kind == "expar":
            return a + np.asarray(self.b, dtype=float) * math.exp(-self.delta * u * u)
        return np.where(u < np.asarray(self.r, dtype=float), a, np.asarray(self.b, dtype=float))

    def _sigma_at(self, lags: np.ndarray) -> float:
        if callable(self.noise):
            return float(self.noise(lags))
        if self.noise == "unit":
            return 1.0
        return sigma_het(lags, self.p)


@dataclass(frozen=True)
class SimulatedSeries:
    """One generated replication.

    Attributes
    ----------
    series : TimeSeries
        The ``n`` post-burn-in values.
    spec : DgpSpec
    seed : int
    true_fns : tuple of callables
        Evaluators of the true coefficient functions.
    preamble : ndarray of shape (max(p, d),)
        State immediately preceding the returned window; together with
        ``shocks`` it replays the window exactly.
    shocks : ndarray of shape (n,)
        Additive noise ``sigma * eps_t`` per returned step.
    """

    series: TimeSeries
    spec: DgpSpec
    seed: int
    true_fns: tuple
    preamble: np.ndarray
    shocks: np.ndarray


def simulate(spec: DgpSpec, n: int, seed: int, burn_in: int = BURN_IN) -> SimulatedSeries:
    """Run one seeded replication of a generating process.

    Parameters
    ----------
    spec : DgpSpec
    n : int
        Length of the returned series, positive.
    seed : int
        Seed for the generator; fully determines the output.
    burn_in : int
        Initial steps discarded before the returned window.

    Returns
    -------
    SimulatedSeries

    Raises
    ------
    NonFiniteState
        If any state exceeds ``1e6`` in absolute value.
    """
    if int(n) != n or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    n = int(n)
    p, d = spec.p, spec.d
    m = max(p, d)
    total = burn_in + n
    rng = np.random.default_rng(seed)
    x = np.empty(m + total)
    x[:m] = rng.standard_normal(m)
    eps = rng.standard_normal(total)
    shocks = np.empty(total)
    for i in range(total):
        t = m + i
        lags = x[t - p : t][::-1]
        coef = spec._coef_at(x[t - d])
        shock = spec._sigma_at(lags) * eps[i]
        xt = float(coef @ lags) + shock
        if not math.isfinite(xt) or abs(xt) > OVERFLOW_GUARD:
            raise NonFiniteState(seed, i)
        x[t] = xt
        shocks[i] = shock
    values = x[m + burn_in :]
    return SimulatedSeries(
        series=make_series(values),
        spec=spec,
        seed=int(seed),
        true_fns=spec.true_functions(),
        preamble=x[burn_in : m + burn_in].copy(),
        shocks=shocks[burn_in:].copy(),
    )


_SINE_DEFAULTS = {
    4: {"a": (0.5, -0.5, 0.5, -0.5), "omega": 4.5},
    10: {"a": (0.5, -0.5) * 5, "omega": 1.5},
}
_EXPAR_DEFAULTS = {
    4: {"a": (0.3, -0.35, 0.1, -0.2), "b": (0.2, -0.15, 0.4, -0.3), "delta": 25.0},
    10: {
        "a": (0.3, -0.35, 0.1, -0.2, 0.35, -0.1, 0.2, -0.3, 0.25, -0.25),
        "b": (0.2, -0.15, 0.4, -0.3, 0.15, -0.4, 0.3, -0.2, 0.25, -0.25),
        "delta": 5.0,
    },
}
_SETAR_DEFAULTS = {
    4: {
        "a": (0.5, 0.2, 0.1, -0.4),
        "b": (0.4, -0.5, 0.5, -0.5),
        "r": (0.0, -0.1, -0.2, 0.0),
    },
    10: {
        "a": (0.5, 0.2, 0.1, -0.4, 0.4, -0.1, -0.2, -0.5, -0.25, 0.25),
        "b": (0.4, -0.5, 0.5, -0.5, 0.5, -0.5, 0.5, -0.4, 0.5, -0.5),
        "r": (0.0, -0.1, -0.2, 0.1, 0.2, 0.3, -0.3, 0.0, 0.1, 0.2),
    },
}


def _stock(table: dict, p: int, kind: str) -> dict:
    try:
        return table[p]
    except KeyError:
        raise ValueError(
            f"no stock {kind} parameters for p={p}; supply them explicitly"
        ) from None


def default_spec(kind: str, p: int = 4) -> DgpSpec:
    """Stock :class:`DgpSpec` for ``p`` in {4, 10}.

    The sine and expar processes use the heteroscedastic noise seam and
    delay 2; the setar process uses unit noise and delay 1.
    """
    if kind == "sine":
        stock = _stock(_SINE_DEFAULTS, p, kind)
        return DgpSpec(kind="sine", p=p, d=2, a=stock["a"], omega=stock["omega"])
    if kind == "expar":
        stock = _stock(_EXPAR_DEFAULTS, p, kind)
        return DgpSpec(kind="expar", p=p, d=2, a=stock["a"], b=stock["b"],
                       delta=stock["delta"])
    if kind == "setar":
        stock = _stock(_SETAR_DEFAULTS, p, kind)
        return DgpSpec(kind="setar", p=p, d=1, a=stock["a"], b=stock["b"],
                       r=stock["r"], noise="unit")
    raise ValueError(f"unknown dgp kind {kind!r}")


def _resolve(kind, p, d, noise, **params):
    base = default_spec(kind, p) if all(v is None for v in params.values()) else None
    if base is not None:
        spec = base
        if d != spec.d or noise is not None:
            spec = DgpSpec(kind=kind, p=p, d=d, a=spec.a, b=spec.b, omega=spec.omega,
                           delta=spec.delta, r=spec.r,
                           noise=noise if noise is not None else spec.noise)
        return spec
    missing = [k for k, v in params.items() if v is None]
    if missing:
        raise ValueError(f"partial {kind} parameters: also need {missing}")
    default_noise = "unit" if kind == "setar" else "het"
    return DgpSpec(kind=kind, p=p, d=d, noise=noise if noise is not None else default_noise,
                   **params)


def simulate_sine(n: int, p: int = 4, d: int = 2, a: Sequence[float] | None = None,
                  omega: float | None = None, seed: int = 0,
                  noise=None) -> SimulatedSeries:
    """Sine-coefficient process ``m_alpha(u) = a_alpha sin(omega pi u)``.

    Stock parameters: ``p=4``: a alternating +-0.5, omega 4.5;
    ``p=10``: a alternating +-0.5, omega 1.5; delay 2; heteroscedastic
    noise seam.
    """
    spec = _resolve("sine", p, d, noise, a=tuple(a) if a is not None else None,
                    omega=omega)
    return simulate(spec, n, seed)


def simulate_expar(n: int, p: int = 4, d: int = 2, a: Sequence[float] | None = None,
                   b: Sequence[float] | None = None, delta: float | None = None,
                   seed: int = 0, noise=None) -> SimulatedSeries:
    """Exponential-coefficient process ``m_alpha(u) = a_alpha + b_alpha exp(-delta u^2)``.

    The squared argument keeps each coefficient inside
    ``[a_alpha - |b_alpha|, a_alpha + |b_alpha|]`` for every ``u``, which
    is what the stock parameter choices rely on for ergodicity.

    Stock parameters: ``p=4``: delta 25; ``p=10``: delta 5 (vectors as
    documented in :data:`_EXPAR_DEFAULTS`); delay 2; heteroscedastic
    noise seam.
    """
    spec = _resolve("expar", p, d, noise, a=tuple(a) if a is not None else None,
                    b=tuple(b) if b is not None else None, delta=delta)
    return simulate(spec, n, seed)


def simulate_setar(n: int, p: int = 4, d: int = 1, a: Sequence[float] | None = None,
                   b: Sequence[float] | None = None, r: Sequence[float] | None = None,
                   seed: int = 0, noise=None) -> SimulatedSeries:
    """Threshold process ``m_alpha(u) = a_alpha if u < r_alpha else b_alpha``.

    The boundary ``u == r_alpha`` takes the ``b`` branch. Stock
    parameters use delay 1 and unit noise.
    """
    spec = _resolve("setar", p, d, noise, a=tuple(a) if a is not None else None,
                    b=tuple(b) if b is not None else None,
                    r=tuple(r) if r is not None else None)
    return simulate(spec, n, seed)
