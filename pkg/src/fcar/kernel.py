"""Quartic-kernel local-linear smoothing for a single varying coefficient.

Given a pseudo-response that isolates one lag, each coefficient value
``m(u)`` comes from a weighted two-parameter regression: response against
the lag itself and the lag times the centred delay, with quartic kernel
weights around ``u``. A widening-then-ratio fallback keeps evaluation
defined where the local system is ill-posed.
"""

from __future__ import annotations

import numpy as np

from .errors import DegenerateDelay, DegenerateSample, NoSupport

__all__ = [
    "quartic_kernel",
    "kernel_moments",
    "rot_bandwidth",
    "local_linear",
    "LL_OK",
    "LL_WIDENED",
    "LL_RATIO",
    "LL_ZERO",
]

#: Condition-number threshold for the 2x2 local system.
COND_LIMIT = 1e12

#: Per-point status codes returned by :func:`local_linear`.
LL_OK = 0  # plain local-linear solve
LL_WIDENED = 1  # bandwidth doubled until the system became well-posed
LL_RATIO = 2  # local-constant ratio fallback at the widest bandwidth
LL_ZERO = 3  # even the ratio denominator vanished; value pinned to 0


def quartic_kernel(x):
    """Quartic (biweight) kernel ``K(x) = 15/16 (1 - x^2)^2`` on [-1, 1].

    Parameters
    ----------
    x : array-like
        Points, any shape.

    Returns
    -------
    ndarray
        Kernel values, zero outside ``[-1, 1]``.
    """
    x = np.asarray(x, dtype=float)
    inside = np.abs(x) <= 1.0
    t = 1.0 - x * x
    return np.where(inside, 0.9375 * t * t, 0.0)


def kernel_moments(n_nodes: int = 64) -> tuple[float, float]:
    """Second moment and roughness of the quartic kernel by quadrature.

    Parameters
    ----------
    n_nodes : int
        Gauss-Legendre node count on ``[-1, 1]``; the integrands are
        polynomials of degree at most 8, so the default is exact to
        rounding.

    Returns
    -------
    (float, float)
        ``(mu_2, nu_0)`` with ``mu_2 = int x^2 K(x) dx`` and
        ``nu_0 = int K(x)^2 dx``; analytically ``1/7`` and ``5/7``.
    """
    nodes, weights = np.polynomial.legendre.leggauss(n_nodes)
    k = quartic_kernel(nodes)
    mu2 = float(np.sum(weights * nodes * nodes * k))
    nu0 = float(np.sum(weights * k * k))
    return mu2, nu0


def rot_bandwidth(u, n_eff: int | None = None) -> float:
    """Rule-of-thumb bandwidth ``2.5 * sd(u) * n_eff^(-1/5)``.

    Parameters
    ----------
    u : array-like of shape (m,)
        Delay values the smoother will run over.
    n_eff : int, optional
        Effective sample size; defaults to ``len(u)``.

    Returns
    -------
    float

    Raises
    ------
    DegenerateSample
        If fewer than two points are supplied.
    DegenerateDelay
        If the sample standard deviation is zero.
    """
    u = np.asarray(u, dtype=float).reshape(-1)
    if u.shape[0] < 2:
        raise DegenerateSample(f"need at least 2 points, got {u.shape[0]}")
    sd = float(np.std(u, ddof=1))
    if sd == 0.0:
        raise DegenerateDelay("delay values have zero spread")
    n = u.shape[0] if n_eff is None else int(n_eff)
    return 2.5 * sd * n ** (-0.2)


def _eigen_bounds(s0, s1, s2):
    """Eigenvalues of the symmetric 2x2 system [[s0, s1], [s1, s2]]."""
    tr = s0 + s2
    disc = np.sqrt((s0 - s2) ** 2 + 4.0 * s1 * s1)
    return 0.5 * (tr - disc), 0.5 * (tr + disc)


def _well_posed(lmin, lmax, nrows, min_rows):
    return (nrows >= min_rows) & (lmin > 0.0) & (lmax <= COND_LIMIT * lmin)


def local_linear(u_eval, x, delay, y, h: float, min_rows: int) -> tuple[np.ndarray, np.ndarray]:
    """Local-linear coefficient values at each evaluation point.

    At each ``u`` the quartic weights ``K((U_t - u)/h)/h`` feed the 2x2
    weighted normal equations in ``(m(u), m'(u))``; the intercept
    component is returned. Ill-posed points (fewer than ``min_rows``
    weighted rows, or condition above ``1e12``) retry with the bandwidth
    doubled up to eight times the original, then fall back to the
    local-constant ratio ``sum(w x y) / sum(w x^2)``.

    Parameters
    ----------
    u_eval : array-like of shape (m,)
        Points at which to evaluate the coefficient function.
    x : ndarray of shape (n,)
        Regressor column (the lag whose coefficient is being smoothed).
    delay : ndarray of shape (n,)
        Smoothing variable ``U_t``.
    y : ndarray of shape (n,)
        Pseudo-response isolating this lag.
    h : float
        Kernel bandwidth, positive.
    min_rows : int
        Minimum number of positively weighted rows for a trusted solve;
        callers pass ``max(5, p + 2)``.

    Returns
    -------
    values : ndarray of shape (m,)
    status : ndarray of shape (m,)
        Per-point code: ``LL_OK``, ``LL_WIDENED``, ``LL_RATIO`` or
        ``LL_ZERO``.

    Raises
    ------
    NoSupport
        If some point has no observation within eight bandwidths.
    ValueError
        If ``h`` is not positive.
    """
    if not h > 0.0:
        raise ValueError(f"bandwidth must be positive, got {h!r}")
    u_eval = np.atleast_1d(np.asarray(u_eval, dtype=float))
    m = u_eval.shape[0]
    values = np.empty(m)
    status = np.full(m, LL_OK, dtype=np.int8)

    D = delay[None, :] - u_eval[:, None]
    nearest = np.min(np.abs(D), axis=1)
    if np.any(nearest > 8.0 * h):
        raise NoSupport(u_eval[int(np.argmax(nearest > 8.0 * h))])

    W = quartic_kernel(D / h) / h
    wx2 = W * (x * x)[None, :]
    wxy = W * (x * y)[None, :]
    s0 = wx2.sum(axis=1)
    s1 = (wx2 * D).sum(axis=1)
    s2 = (wx2 * D * D).sum(axis=1)
    t0 = wxy.sum(axis=1)
    t1 = (wxy * D).sum(axis=1)
    nrows = np.count_nonzero(W > 0.0, axis=1)
    lmin, lmax = _eigen_bounds(s0, s1, s2)
    good = _well_posed(lmin, lmax, nrows, min_rows)
    det = s0 * s2 - s1 * s1
    np.divide(s2 * t0 - s1 * t1, det, out=values, where=good)

    for i in np.flatnonzero(~good):
        values[i], status[i] = _fallback_point(u_eval[i], x, delay, y, h, min_rows)
    return values, status


def _fallback_point(u, x, delay, y, h, min_rows):
    """Widen the bandwidth for one ill-posed point, then take the ratio."""
    du = delay - u
    hh = h
    for _ in range(3):
        hh *= 2.0
        w = quartic_kernel(du / hh) / hh
        wx2 = w * x * x
        s0 = wx2.sum()
        s1 = (wx2 * du).sum()
        s2 = (wx2 * du * du).sum()
        nrows = np.count_nonzero(w > 0.0)
        lmin, lmax = _eigen_bounds(s0, s1, s2)
        if _well_posed(lmin, lmax, nrows, min_rows):
            wxy = w * x * y
            t0 = wxy.sum()
            t1 = (wxy * du).sum()
            return (s2 * t0 - s1 * t1) / (s0 * s2 - s1 * s1), LL_WIDENED
    # Ratio fallback at the widest bandwidth reached (8h).
    w = quartic_kernel(du / hh) / hh
    den = float((w * x * x).sum())
    if den > 0.0:
        return float((w * x * y).sum()) / den, LL_RATIO
    return 0.0, LL_ZERO
