"""Indicator-spline least squares: the pilot stage of the backfitted fit.

The coefficient functions are first approximated by constant splines on an
equally spaced knot grid over the delay support. Stacking the indicator
basis against each lagged regressor column gives one big least-squares
problem whose solution provides pilot values of every coefficient
function at once.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInterval, OutOfSupport, SeriesTooShort
from .series import RegressionFrame

__all__ = [
    "SplinePrefit",
    "knot_count",
    "build_knots",
    "basis_matrix",
    "design_matrix",
    "solve_lambda",
    "solve_lambda_cells",
    "pre_estimates",
    "pseudo_responses",
]

#: Condition-number threshold beyond which normal equations get a ridge.
COND_LIMIT = 1e12

#: Condition-number threshold above which a single knot cell's regression
#: is treated as under-determined even when it has enough rows.
CELL_COND_LIMIT = 1e8


@dataclass(frozen=True)
class SplinePrefit:
    """Fitted pilot stage.

    Attributes
    ----------
    knots : ndarray of shape (n_knots + 2,)
        Equally spaced knots from ``a`` to ``b`` (endpoints included).
    coef : ndarray of shape (p, n_knots + 1)
        Row ``alpha-1`` holds the constant-spline coefficients of lag
        ``alpha``, one per knot cell.
    ridged : bool
        True when the normal equations needed ridge regularisation.
    """

    knots: np.ndarray
    coef: np.ndarray
    ridged: bool

    @property
    def a(self) -> float:
        """Left end of the support."""
        return float(self.knots[0])

    @property
    def b(self) -> float:
        """Right end of the support."""
        return float(self.knots[-1])

    def __call__(self, u, alpha: int) -> np.ndarray:
        """Evaluate the pilot coefficient function of lag ``alpha`` at ``u``."""
        B = basis_matrix(u, self.knots)
        return B @ self.coef[alpha - 1]


def knot_count(n: int, p: int) -> int:
    """Number of interior knots for a series of length ``n`` and order ``p``.

    Grows like ``n^(1/4) * ln(n)`` but is capped so the stacked design
    keeps at most ``n / 2`` columns.

    Parameters
    ----------
    n : int
        Series length.
    p : int
        Autoregressive order.

    Returns
    -------
    int
        ``min(floor(n^(1/4) ln n), floor(n / (2p)) - 1)``, at least 0.

    Raises
    ------
    SeriesTooShort
        If ``n <= 2p``, where even zero interior knots leave too many
        columns.
    """
    if n <= 2 * p:
        raise SeriesTooShort(2 * p, n)
    rate = math.floor(n ** 0.25 * math.log(n))
    cap = math.floor(n / (2 * p)) - 1
    return max(0, min(rate, cap))


def build_knots(a: float, b: float, n_knots: int) -> np.ndarray:
    """Equally spaced knot vector with ``n_knots`` interior knots.

    Parameters
    ----------
    a, b : float
        Support endpoints, ``a < b``.
    n_knots : int
        Number of interior knots, at least 0.

    Returns
    -------
    ndarray of shape (n_knots + 2,)
        ``a = k_0 < k_1 < ... < k_{n_knots+1} = b``, delimiting
        ``n_knots + 1`` cells.

    Raises
    ------
    DegenerateInterval
        If ``a >= b``.
    ValueError
        If ``n_knots`` is negative.
    """
    if not a < b:
        raise DegenerateInterval(f"need a < b, got [{a!r}, {b!r}]")
    if n_knots < 0:
        raise ValueError(f"n_knots must be >= 0, got {n_knots}")
    return np.linspace(a, b, n_knots + 2)


def basis_matrix(u, knots: np.ndarray) -> np.ndarray:
    """Indicator basis of the knot cells, evaluated at ``u``.

    Cell ``J`` is the half-open interval ``[k_J, k_{J+1})``; the last cell
    is closed at ``b`` so the support endpoints are both covered.

    Parameters
    ----------
    u : array-like of shape (m,)
        Evaluation points, all inside ``[a, b]``.
    knots : ndarray of shape (n_cells + 1,)
        Knot vector from :func:`build_knots`.

    Returns
    -------
    ndarray of shape (m, n_cells)
        One-hot rows: entry ``(i, J)`` is 1.0 when ``u[i]`` falls in cell
        ``J``, else 0.0. Every row sums to exactly 1.

    Raises
    ------
    OutOfSupport
        If any point lies outside ``[a, b]``.
    """
    u = np.atleast_1d(np.asarray(u, dtype=float))
    a, b = knots[0], knots[-1]
    if np.any(u < a) or np.any(u > b):
        offender = u[(u < a) | (u > b)][0]
        raise OutOfSupport(offender)
    n_cells = knots.shape[0] - 1
    # searchsorted with side="right" implements the half-open cells; the
    # clip folds u == b into the final (closed) cell.
    cell = np.searchsorted(knots, u, side="right") - 1
    cell = np.clip(cell, 0, n_cells - 1)
    B = np.zeros((u.shape[0], n_cells))
    B[np.arange(u.shape[0]), cell] = 1.0
    return B


def design_matrix(B: np.ndarray, regressors: np.ndarray) -> np.ndarray:
    """Stacked spline-times-lag design.

    Parameters
    ----------
    B : ndarray of shape (n_eff, n_cells)
        Indicator basis at the delay values.
    regressors : ndarray of shape (n_eff, p)
        Lagged regressor columns.

    Returns
    -------
    ndarray of shape (n_eff, p * n_cells)
        Horizontal blocks ``B * X_{t-alpha}`` for ``alpha = 1..p``, each
        basis column scaled elementwise by the lag column.
    """
    n_eff, n_cells = B.shape
    p = regressors.shape[1]
    Z = np.empty((n_eff, p * n_cells))
    for alpha in range(p):
        Z[:, alpha * n_cells : (alpha + 1) * n_cells] = B * regressors[:, alpha : alpha + 1]
    return Z


def solve_lambda(Z: np.ndarray, y: np.ndarray) -> tuple[np.ndarray, bool]:
    """Least-squares solve of the stacked design.

    Solves the normal equations ``Z'Z c = Z'y``. When the Gram matrix is
    numerically singular (condition estimate above ``COND_LIMIT``) a small
    ridge proportional to its mean diagonal is added instead of failing.

    Parameters
    ----------
    Z : ndarray of shape (n_eff, k)
    y : ndarray of shape (n_eff,)

    Returns
    -------
    coef : ndarray of shape (k,)
    ridged : bool
        True when the ridge fallback was applied.
    """
    G = Z.T @ Z
    rhs = Z.T @ y
    ridged = False
    cond = np.linalg.cond(G)
    if not np.isfinite(cond) or cond > COND_LIMIT:
        ridged = True
        eps = 1e-8 * np.trace(G) / G.shape[0]
        if eps <= 0.0:
            eps = 1e-12
        G = G + eps * np.eye(G.shape[0])
    try:
        coef = np.linalg.solve(G, rhs)
    except np.linalg.LinAlgError:
        # Exactly singular despite the condition estimate: ridge and retry.
        ridged = True
        eps = 1e-8 * np.trace(G) / G.shape[0] or 1e-12
        coef = np.linalg.solve(G + eps * np.eye(G.shape[0]), rhs)
    return coef, ridged


def solve_lambda_cells(
    B: np.ndarray,
    regressors: np.ndarray,
    y: np.ndarray,
    min_rows: int | None = None,
    cond_limit: float = CELL_COND_LIMIT,
    shrink_target: str = "zero",
) -> tuple[np.ndarray, bool]:
    """Cell-structured least-squares solve of the stacked design.

    Because the indicator basis is one-hot, the Gram matrix of the
    stacked design is block-diagonal: each knot cell contributes an
    independent p-variate regression of the response on the lag columns,
    using only the rows whose delay value falls in that cell. Cells with
    enough rows and a well-conditioned local Gram are solved exactly, so
    on well-posed problems the result coincides with the global
    least-squares solution. Under-occupied or ill-conditioned cells - a
    routine occurrence in the sparse tails of the delay distribution -
    are instead solved with a ridge that shrinks them toward zero,
    keeping the pilot fit bounded at the data scale instead of letting
    near-singular local systems amplify noise without limit. Zero is
    the contractive choice: iterated forecasts whose paths wander into
    a shrunken cell decay back toward the bulk of the data rather than
    being amplified by an extrapolated coefficient.

    Parameters
    ----------
    B : ndarray of shape (n_eff, n_cells)
        One-hot indicator basis at the delay values.
    regressors : ndarray of shape (n_eff, p)
        Lagged regressor columns.
    y : ndarray of shape (n_eff,)
        Response vector.
    min_rows : int, optional
        Occupancy below which a cell is considered under-determined.
        Defaults to ``p + 1``, the smallest row count that makes the
        local regression over-determined.
    cond_limit : float
        Condition-number bound for a cell's local Gram matrix.
    shrink_target : {"zero", "neighbor"}
        What deficient cells shrink toward: zero (the default, stable
        under forecast iteration) or the nearest well-determined cell's
        coefficients.

    Returns
    -------
    coef : ndarray of shape (p * n_cells,)
        Stacked coefficients in the same block order as
        :func:`solve_lambda` on :func:`design_matrix` output.
    shrunk : bool
        True when at least one cell needed regularisation.
    """
    n_eff, n_cells = B.shape
    p = regressors.shape[1]
    if y.shape[0] != n_eff:
        raise ValueError(f"y has {y.shape[0]} rows, expected {n_eff}")
    if min_rows is None:
        min_rows = p + 1
    cell = np.argmax(B, axis=1)
    occupancy = np.bincount(cell, minlength=n_cells)
    lam = np.zeros((n_cells, p))
    grams = np.zeros((n_cells, p, p))
    rhs = np.zeros((n_cells, p))
    solvent = np.zeros(n_cells, dtype=bool)
    for j in range(n_cells):
        rows = cell == j
        xj = regressors[rows]
        grams[j] = xj.T @ xj
        rhs[j] = xj.T @ y[rows]
        if occupancy[j] >= min_rows:
            cond = np.linalg.cond(grams[j])
            if np.isfinite(cond) and cond <= cond_limit:
                lam[j] = np.linalg.solve(grams[j], rhs[j])
                solvent[j] = True
    if not solvent.any():
        # No cell is individually well-determined (tiny or degenerate
        # samples): defer to the global solve with its ridge fallback.
        coef, _ = solve_lambda(design_matrix(B, regressors), y)
        return coef, True
    if solvent.all():
        return lam.T.ravel().copy(), False
    # Ridge strength scaled by the average row energy, growing with the
    # occupancy deficit so emptier cells are shrunk harder.
    row_energy = float(np.sum(regressors * regressors) / n_eff)
    well = np.flatnonzero(solvent)
    eye = np.eye(p)
    zero = np.zeros(p)
    for j in np.flatnonzero(~solvent):
        if shrink_target == "neighbor":
            prior = lam[well[np.argmin(np.abs(well - j))]]
        else:
            prior = zero
        kappa = row_energy * max(1, min_rows - occupancy[j])
        lam[j] = np.linalg.solve(grams[j] + kappa * eye, rhs[j] + kappa * prior)
    return lam.T.ravel().copy(), True


def pre_estimates(B: np.ndarray, coef: np.ndarray, p: int) -> np.ndarray:
    """Pilot coefficient functions evaluated at the sample delay values.

    Parameters
    ----------
    B : ndarray of shape (n_eff, n_cells)
        Indicator basis at the delay values.
    coef : ndarray of shape (p * n_cells,)
        Stacked solution from :func:`solve_lambda`.
    p : int
        Autoregressive order.

    Returns
    -------
    ndarray of shape (n_eff, p)
        Column ``alpha-1`` holds the pilot estimate of coefficient
        function ``alpha`` at each row's delay value.
    """
    n_cells = B.shape[1]
    if coef.shape[0] != p * n_cells:
        raise ValueError(
            f"coef has {coef.shape[0]} entries, expected p * n_cells = {p * n_cells}"
        )
    out = np.empty((B.shape[0], p))
    for alpha in range(p):
        out[:, alpha] = B @ coef[alpha * n_cells : (alpha + 1) * n_cells]
    return out


def pseudo_responses(frame: RegressionFrame, pre: np.ndarray) -> np.ndarray:
    """Remove every other lag's pilot contribution from the response.

    For each target lag ``gamma`` the pseudo-response is
    ``X_t - sum_{alpha != gamma} m_alpha(U_t) X_{t-alpha}``: what remains
    of the response once the pilot fits of all other lags are subtracted.

    Parameters
    ----------
    frame : RegressionFrame
    pre : ndarray of shape (n_eff, p)
        Pilot estimates from :func:`pre_estimates`.

    Returns
    -------
    ndarray of shape (n_eff, p)
        Column ``gamma-1`` is the pseudo-response for lag ``gamma``.
    """
    if pre.shape != frame.regressors.shape:
        raise ValueError(
            f"pre-estimate shape {pre.shape} does not match regressors "
            f"{frame.regressors.shape}"
        )
    contrib = pre * frame.regressors
    total = contrib.sum(axis=1)
    return frame.response[:, None] - (total[:, None] - contrib)
