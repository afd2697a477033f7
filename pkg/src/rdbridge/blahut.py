"""Blahut-Arimoto fixed-point solver and parametric curve sweep.

For a trade-off slope beta >= 0 the alternating update is

    pi_x(y)  proportional to  nu_t(y) exp(-beta rho(x, y))
    nu_{t+1}(y) = sum_x mu(x) pi_x(y)

whose fixed point gives one point of the rate-distortion curve with
R = -sum_i mu_i ln(sum_j nu_j exp(-beta rho_ij)) - beta D.  All rates are
in nats; dR/dD = -beta under this sign convention.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

from .distortion import DistortionMatrix
from .errors import ConvergenceError, InvalidInputError
from .measures import ProbabilityVector

logger = logging.getLogger(__name__)

# Switch to logsumexp-based evaluation once beta * max(rho) exceeds this.
LOG_DOMAIN_THRESHOLD = 30.0
# Reconstruction atoms falling below this mass are pinned to exact zero
# and never revived.
SUPPORT_FLOOR = 1e-300
# Uniform mass mixed into the previous optimum when warm-starting a sweep.
WARM_START_MIX = 1e-6


@dataclass
class RDPoint:
    """One converged (or degraded) point of a rate-distortion sweep."""

    beta: float
    distortion: float
    rate: float
    nu_star: ProbabilityVector
    iterations: int
    fixpoint_residual: float
    certificate_slack: float
    converged: bool = True


@dataclass
class RDCurve:
    """A beta-sorted collection of RDPoints with shape diagnostics."""

    points: list[RDPoint]

    def __len__(self) -> int:
        return len(self.points)

    def betas(self) -> np.ndarray:
        return np.array([p.beta for p in self.points])

    def distortions(self) -> np.ndarray:
        return np.array([p.distortion for p in self.points])

    def rates(self) -> np.ndarray:
        return np.array([p.rate for p in self.points])

    def shape_report(self, degenerate_step: float = 1e-9) -> dict:
        """Worst violations of the expected curve shape.

        Returns a dict with ``max_distortion_increase`` (D should not
        increase with beta), ``max_rate_decrease`` (R should not decrease),
        and ``max_chord_violation`` (consecutive chord slopes of R(D)
        should not increase as D falls).  Chords over distortion steps
        smaller than ``degenerate_step`` are skipped: below the noise
        floor of the monotonicity checks a slope ratio carries no signal
        (e.g. between zero-rate points whose distortions differ only by
        residual sub-tolerance mass).
        """
        d = self.distortions()
        r = self.rates()
        report = {
            "max_distortion_increase": float(np.max(np.diff(d), initial=0.0)),
            "max_rate_decrease": float(np.max(-np.diff(r), initial=0.0)),
            "max_chord_violation": 0.0,
        }
        slopes = []
        for k in range(len(d) - 1):
            dd = d[k + 1] - d[k]
            if abs(dd) < degenerate_step:
                continue
            slopes.append((r[k + 1] - r[k]) / dd)
        for s_prev, s_next in zip(slopes[:-1], slopes[1:]):
            report["max_chord_violation"] = max(
                report["max_chord_violation"], float(s_next - s_prev)
            )
        return report


def _log_weights(w: np.ndarray) -> np.ndarray:
    out = np.full(w.shape, -np.inf)
    np.log(w, out=out, where=w > 0)
    return out


def _log_kernel(dist: DistortionMatrix, beta: float) -> np.ndarray:
    """log of exp(-beta rho); at beta = 0 the kernel is identically 1."""
    if beta == 0:
        return np.zeros(dist.shape)
    return -beta * dist.rho


def _check_compat(mu: ProbabilityVector, dist: DistortionMatrix, beta: float):
    if beta < 0 or not np.isfinite(beta):
        raise InvalidInputError(f"beta must be a finite nonnegative real, got {beta}")
    if len(mu) != dist.shape[0]:
        raise InvalidInputError(
            f"mu has {len(mu)} atoms but rho has {dist.shape[0]} rows"
        )


def _tilted_rows(log_phi, log_nu, log_mu):
    """log Z_i and log c_j for the current reconstruction law.

    Z_i normalizes row i of the tilted coupling; c_j is the multiplicative
    Blahut-Arimoto update factor for nu_j (also the dual constraint value).
    """
    log_z = logsumexp(log_phi + log_nu[None, :], axis=1)
    if np.any(np.isneginf(log_z[np.isfinite(log_mu)])):
        bad = int(np.flatnonzero(np.isneginf(log_z) & np.isfinite(log_mu))[0])
        raise InvalidInputError(
            f"source row {bad} has zero partition mass: every reconstruction "
            "with positive nu weight is forbidden for it"
        )
    log_c = logsumexp(log_mu[:, None] + log_phi - log_z[:, None], axis=0)
    return log_z, log_c


def _shifted_kernel(log_phi: np.ndarray, log_domain: bool) -> tuple[np.ndarray, np.ndarray]:
    """Cache exp(log_phi - shift) with a per-row shift.

    In the log-domain regime the shift is the row maximum of log_phi, so a
    row partition sum computed from the cached kernel is exactly a
    logsumexp evaluation whose shift was chosen once instead of per call.
    Below the regime threshold the kernel cannot underflow and the shift
    is zero.
    """
    if log_domain:
        shift = np.max(log_phi, axis=1)
    else:
        shift = np.zeros(log_phi.shape[0])
    with np.errstate(invalid="ignore"):
        ker = np.exp(log_phi - shift[:, None])
    # Rows of all-infinite loss produce nan from (-inf) - (-inf); they
    # carry no kernel mass at all.
    ker[np.isneginf(log_phi)] = 0.0
    return shift, ker


def rd_value_from_nu(
    mu: ProbabilityVector,
    dist: DistortionMatrix,
    beta: float,
    nu: ProbabilityVector,
) -> tuple[float, float]:
    """Distortion and rate of the tilted coupling induced by (beta, nu).

    The coupling is pi_ij = mu_i nu_j exp(-beta rho_ij) / Z_i and the rate
    is the parametric value R = -sum_i mu_i ln Z_i - beta D, which upper
    bounds R(D) for any nu and matches it at the optimum.
    """
    _check_compat(mu, dist, beta)
    if len(nu) != dist.shape[1]:
        raise InvalidInputError(
            f"nu has {len(nu)} atoms but rho has {dist.shape[1]} columns"
        )
    log_phi = _log_kernel(dist, beta)
    log_mu = _log_weights(mu.weights)
    log_nu = _log_weights(nu.weights)
    log_z, _ = _tilted_rows(log_phi, log_nu, log_mu)
    live = mu.weights > 0
    log_pi = log_phi[live] + log_nu[None, :] - log_z[live, None]
    pi = np.exp(log_pi)
    # 0 * inf guard: a positive pi entry can only sit on finite rho.
    contrib = np.where(pi > 0, pi * np.where(np.isfinite(dist.rho[live]), dist.rho[live], 0.0), 0.0)
    distortion = float(mu.weights[live] @ contrib.sum(axis=1))
    if np.any(np.isposinf(dist.rho[live]) & (pi > 0)):
        distortion = float("inf")
    # The + 0.0 turns a -0.0 at the zero-rate endpoint into plain 0.0.
    rate = float(-(mu.weights[live] @ log_z[live]) - beta * distortion) + 0.0
    return distortion, rate


def dual_certificate(
    mu: ProbabilityVector,
    dist: DistortionMatrix,
    beta: float,
    nu: ProbabilityVector,
) -> tuple[np.ndarray, float, float]:
    """Csiszar-style dual pair built from a candidate reconstruction law.

    With alpha_i = 1 / sum_j nu_j exp(-beta rho_ij) the constraint value is
    c_j = sum_i alpha_i exp(-beta rho_ij) mu_i; after scaling alpha down by
    (1 + slack)+ the pair is feasible, so

        dual_value = sum_i mu_i ln alpha_i - ln(1 + max(slack, 0)) - beta D

    lower-bounds the optimal rate at the distortion D induced by nu.

    Returns:
        (alpha, slack, dual_value) with slack = max_j c_j - 1.
    """
    if not dist.normalized:
        raise InvalidInputError(
            "dual certificate requires a normalized loss (zero row minima); "
            "apply normalize_loss first"
        )
    _check_compat(mu, dist, beta)
    log_phi = _log_kernel(dist, beta)
    log_mu = _log_weights(mu.weights)
    log_nu = _log_weights(nu.weights)
    log_z, log_c = _tilted_rows(log_phi, log_nu, log_mu)
    with np.errstate(over="ignore"):
        slack = float(np.exp(log_c).max() - 1.0)
    distortion, _ = rd_value_from_nu(mu, dist, beta, nu)
    live = mu.weights > 0
    dual_value = float(
        -(mu.weights[live] @ log_z[live])
        - np.log1p(max(slack, 0.0))
        - beta * distortion
    )
    return np.exp(-log_z), slack, dual_value


def ba_fixed_point(
    mu: ProbabilityVector,
    dist: DistortionMatrix,
    beta: float,
    nu0: ProbabilityVector | None = None,
    tol: float = 1e-9,
    max_iter: int = 5000,
    min_iter: int = 1,
) -> RDPoint:
    """Run the Blahut-Arimoto iteration at a single trade-off slope.

    Convergence requires both the sup-norm change of nu and the dual
    certificate slack to fall to ``tol``, and is not tested before
    ``min_iter`` iterations: on broad instances the slack can dip below
    tolerance transiently while the bulk of nu is still equilibrating,
    and a floor on the iteration count is the simple guard.  Atoms that
    decay below ``SUPPORT_FLOOR`` are pinned to exact zero and never
    revived.

    Above the log-domain threshold every partition sum is a logsumexp
    evaluation whose per-row shift depends only on (beta, rho); the
    shifted exponentials are therefore cached once and each iteration
    reduces to two matrix products, falling back to per-call logsumexp
    in the rare event a shifted sum underflows.

    Args:
        nu0: initial reconstruction law (defaults to uniform); must be
            strictly positive on its intended support.
        tol: joint threshold for the fixed-point residual and slack.
        max_iter: iteration budget.

    Raises:
        ConvergenceError: budget exhausted before both residuals reached
            ``tol``; the partial RDPoint is attached as ``.partial``.
    """
    _check_compat(mu, dist, beta)
    n = dist.shape[1]
    if nu0 is None:
        nu0 = ProbabilityVector(np.full(n, 1.0 / n))
    if len(nu0) != n:
        raise InvalidInputError(f"nu0 has {len(nu0)} atoms but rho has {n} columns")
    if tol <= 0:
        raise InvalidInputError(f"tol must be positive, got {tol}")
    if min_iter < 1 or min_iter > max_iter:
        raise InvalidInputError(
            f"min_iter must be in [1, max_iter], got {min_iter} with max_iter {max_iter}"
        )

    max_rho = float(np.max(dist.rho)) if np.all(np.isfinite(dist.rho)) else float("inf")
    log_domain = beta > 0 and beta * max_rho > LOG_DOMAIN_THRESHOLD
    log_mu = _log_weights(mu.weights)
    log_phi = _log_kernel(dist, beta)
    _, ker = _shifted_kernel(log_phi, log_domain)
    live = mu.weights > 0

    nu = nu0.weights.copy()
    residual = float("inf")
    slack = float("inf")
    shrunk = 0
    iterations = 0
    for iterations in range(1, max_iter + 1):
        zt = ker @ nu
        if np.any((zt == 0) & live):
            # The cached shift was not enough for some live row; redo this
            # step with a per-call logsumexp (raises if the row partition
            # mass is genuinely zero).
            _, log_c = _tilted_rows(log_phi, _log_weights(nu), log_mu)
            with np.errstate(over="ignore"):
                c = np.exp(log_c)
        else:
            c = ker.T @ np.divide(mu.weights, zt, out=np.zeros_like(zt), where=live)
        # Dead columns can carry an infinite update factor (their dual
        # constraint is violated without bound); they hold zero mass, so
        # 0 * inf must stay 0 rather than poison the iterate.
        nu_next = nu * np.where(nu > 0, c, 0.0)
        nu_next /= nu_next.sum()
        residual = float(np.abs(nu_next - nu).max())
        slack = float(c.max() - 1.0)
        dying = (nu_next < SUPPORT_FLOOR) & (nu_next > 0)
        if np.any(dying):
            shrunk += int(dying.sum())
            logger.debug(
                "iteration %d: pinned %d reconstruction atoms below %.0e",
                iterations,
                int(dying.sum()),
                SUPPORT_FLOOR,
            )
            nu_next = np.where(dying, 0.0, nu_next)
        nu = nu_next
        if iterations >= min_iter and residual <= tol and slack <= tol:
            break

    nu_star = ProbabilityVector(nu / nu.sum(), labels=nu0.labels)
    distortion, rate = rd_value_from_nu(mu, dist, beta, nu_star)
    _, log_c = _tilted_rows(log_phi, _log_weights(nu_star.weights), log_mu)
    with np.errstate(over="ignore"):
        slack_final = float(np.exp(log_c).max() - 1.0)
    if shrunk:
        logger.debug("support shrank by %d atoms in total", shrunk)
    point = RDPoint(
        beta=float(beta),
        distortion=distortion,
        rate=rate,
        nu_star=nu_star,
        iterations=iterations,
        fixpoint_residual=residual,
        certificate_slack=float(slack_final),
        converged=residual <= tol and slack <= tol,
    )
    if not point.converged:
        raise ConvergenceError(
            f"Blahut-Arimoto did not converge at beta={beta:g} within "
            f"{max_iter} iterations (residual {residual:.3e}, slack {slack:.3e})",
            partial=point,
        )
    return point


def rd_curve(
    mu: ProbabilityVector,
    dist: DistortionMatrix,
    betas,
    tol: float = 1e-9,
    max_iter: int = 5000,
    nu0: ProbabilityVector | None = None,
    warm_start: bool = True,
    threads: int = 1,
) -> RDCurve:
    """Sweep a strictly increasing beta schedule into an RDCurve.

    With ``warm_start`` (the default) each solve starts from the previous
    optimum mixed with ``WARM_START_MIX`` uniform mass, and points run
    sequentially.  With warm starting disabled the points are independent
    and may be evaluated on up to ``threads`` workers; results are
    identical either way because every solve is a pure function of its
    inputs.

    Points whose solve exhausts its budget are kept with
    ``converged=False`` rather than aborting the sweep.
    """
    betas = np.asarray(betas, dtype=float)
    if betas.ndim != 1 or betas.size == 0:
        raise InvalidInputError("betas must be a non-empty 1-D array")
    if np.any(betas < 0):
        raise InvalidInputError("betas must be nonnegative")
    if np.any(np.diff(betas) <= 0):
        raise InvalidInputError("betas must be strictly increasing")
    if threads < 1:
        raise InvalidInputError(f"threads must be >= 1, got {threads}")

    def solve(beta: float, start: ProbabilityVector | None) -> RDPoint:
        try:
            return ba_fixed_point(mu, dist, beta, start, tol=tol, max_iter=max_iter)
        except ConvergenceError as err:
            logger.warning("degraded point at beta=%g: %s", beta, err)
            return err.partial

    points: list[RDPoint] = []
    if warm_start:
        start = nu0
        for beta in betas:
            point = solve(float(beta), start)
            points.append(point)
            n = len(point.nu_star)
            mixed = (1.0 - WARM_START_MIX) * point.nu_star.weights + WARM_START_MIX / n
            start = ProbabilityVector(mixed / mixed.sum(), labels=point.nu_star.labels)
    elif threads == 1:
        points = [solve(float(beta), nu0) for beta in betas]
    else:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            points = list(pool.map(lambda b: solve(float(b), nu0), betas))

    points.sort(key=lambda p: p.beta)
    curve = RDCurve(points)
    report = curve.shape_report()
    if report["max_distortion_increase"] > 1e-9 or report["max_rate_decrease"] > 1e-9:
        logger.warning("curve shape violates monotonicity: %s", report)
    return curve
