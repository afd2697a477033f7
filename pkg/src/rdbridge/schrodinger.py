"""Static Schrodinger problem at fixed marginals with a Gibbs reference.

For marginals (mu, nu) and reference gamma_ij = K mu_i nu_j exp(-beta
rho_ij) (K normalizes gamma to a probability measure), the minimizer of
D_KL(pi || gamma) over couplings of (mu, nu) has density f(x) g(y) with
respect to gamma.  The log-potentials solve the Schrodinger system and
are computed by Sinkhorn iteration in the log domain.

The dual quantities J(nu, beta) and L(nu, beta) derived from the
potentials measure how far a candidate reconstruction law nu sits from
rate-distortion optimality at trade-off slope beta: L vanishes exactly
at the optimal nu*, where g is constant on the support.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

from .blahut import _log_kernel, _log_weights
from .distortion import DistortionMatrix
from .errors import ConvergenceError, InvalidInputError, StaleCertificateError
from .measures import Coupling, ProbabilityVector

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-12
DEFAULT_MAX_ITER = 2000


@dataclass
class ScalingPair:
    """Log-potentials of the Schrodinger system for one (mu, nu, beta).

    The induced coupling is

        pi_ij = exp(logK + logF_i + logG_j - beta rho_ij) mu_i nu_j

    and the gauge sum_j nu_j logG_j = 0 pins the multiplicative constant
    shared between f and g.  Potentials are only determined where the
    marginals put mass; entries of logF/logG off-support are left at 0.

    Attributes:
        marginal_residual: sup-norm deviation of the induced coupling's
            marginals from (mu, nu) at the final iterate.
        tol: the residual target this pair was solved to; downstream
            evaluators refuse pairs whose residual exceeds 10x this.
    """

    logF: np.ndarray
    logG: np.ndarray
    logK: float
    beta: float
    marginal_residual: float
    tol: float = DEFAULT_TOL
    iterations: int = 0
    converged: bool = True


def _check_problem(mu: ProbabilityVector, nu: ProbabilityVector, dist: DistortionMatrix, beta: float):
    if beta < 0 or not np.isfinite(beta):
        raise InvalidInputError(f"beta must be a finite nonnegative real, got {beta}")
    if len(mu) != dist.shape[0] or len(nu) != dist.shape[1]:
        raise InvalidInputError(
            f"marginal sizes ({len(mu)}, {len(nu)}) do not match the loss "
            f"matrix shape {dist.shape}"
        )


def _coupling_matrix(
    scal_logF: np.ndarray,
    scal_logG: np.ndarray,
    logK: float,
    log_phi: np.ndarray,
    log_mu: np.ndarray,
    log_nu: np.ndarray,
) -> np.ndarray:
    log_pi = (
        logK
        + (scal_logF + log_mu)[:, None]
        + (scal_logG + log_nu)[None, :]
        + log_phi
    )
    with np.errstate(invalid="ignore"):
        pi = np.exp(log_pi)
    # (-inf) + inf combinations can only arise on zero-mass rows/columns.
    pi[np.isnan(pi)] = 0.0
    return pi


def sinkhorn(
    mu: ProbabilityVector,
    nu: ProbabilityVector,
    dist: DistortionMatrix,
    beta: float,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    logf0: np.ndarray | None = None,
    logg0: np.ndarray | None = None,
) -> tuple[ScalingPair, Coupling]:
    """Solve the two-marginal scaling problem by log-domain Sinkhorn.

    Alternates

        logF_i <- -ln sum_j nu_j exp(logG_j - beta rho_ij) - logK
        logG_j <- -ln sum_i mu_i exp(logF_i - beta rho_ij) - logK

    until the coupling marginals match (mu, nu) to ``tol`` in sup norm.
    Atoms with zero mass take no part in the updates.  The default
    initialization logF = logG = 0 is deterministic; alternative starting
    points converge to the same gauge-fixed potentials and exist mainly
    to make that uniqueness testable.

    Returns:
        (ScalingPair, Coupling), gauge-fixed so sum_j nu_j logG_j = 0.

    Raises:
        InvalidInputError: a positive-mass atom of mu (or nu) is
            unreachable under the reference, making the problem
            infeasible.
        ConvergenceError: iteration budget exhausted; ``.partial`` holds
            the (ScalingPair, Coupling) of the final iterate.
    """
    _check_problem(mu, nu, dist, beta)
    if tol <= 0:
        raise InvalidInputError(f"tol must be positive, got {tol}")
    if max_iter < 1:
        raise InvalidInputError(f"max_iter must be >= 1, got {max_iter}")

    log_phi = _log_kernel(dist, beta)
    log_mu = _log_weights(mu.weights)
    log_nu = _log_weights(nu.weights)
    rows = mu.support
    cols = nu.support

    with np.errstate(divide="ignore"):
        row_reach = logsumexp(log_phi + log_nu[None, :], axis=1)
        col_reach = logsumexp(log_phi + log_mu[:, None], axis=0)
    if np.any(np.isneginf(row_reach[rows])):
        bad = int(rows[np.isneginf(row_reach[rows])][0])
        raise InvalidInputError(
            f"source atom {bad} carries mass but every reconstruction in "
            "supp(nu) has infinite loss for it: reference is infeasible"
        )
    if np.any(np.isneginf(col_reach[cols])):
        bad = int(cols[np.isneginf(col_reach[cols])][0])
        raise InvalidInputError(
            f"reconstruction atom {bad} carries mass but no source in "
            "supp(mu) can reach it: reference is infeasible"
        )
    logK = float(-logsumexp(log_phi + log_mu[:, None] + log_nu[None, :]))

    logF = np.zeros(len(mu))
    logG = np.zeros(len(nu))
    if logf0 is not None:
        logF[rows] = np.asarray(logf0, dtype=float)[rows]
    if logg0 is not None:
        logG[cols] = np.asarray(logg0, dtype=float)[cols]

    residual = float("inf")
    iterations = 0
    for iterations in range(1, max_iter + 1):
        logF[rows] = -logK - logsumexp(
            log_phi[rows] + (log_nu + logG)[None, :], axis=1
        )
        logG[cols] = -logK - logsumexp(
            log_phi[:, cols] + (log_mu + logF)[:, None], axis=0
        )
        pi = _coupling_matrix(logF, logG, logK, log_phi, log_mu, log_nu)
        residual = float(
            max(
                np.abs(pi.sum(axis=1) - mu.weights).max(),
                np.abs(pi.sum(axis=0) - nu.weights).max(),
            )
        )
        if residual <= tol:
            break

    # Gauge fix: shift the shared constant so sum_j nu_j logG_j = 0.
    shift = float(nu.weights[cols] @ logG[cols])
    logG[cols] -= shift
    logF[rows] += shift
    pi = _coupling_matrix(logF, logG, logK, log_phi, log_mu, log_nu)

    pair = ScalingPair(
        logF=logF,
        logG=logG,
        logK=logK,
        beta=float(beta),
        marginal_residual=residual,
        tol=float(tol),
        iterations=iterations,
        converged=residual <= tol,
    )
    coupling = Coupling(pi)
    if not pair.converged:
        raise ConvergenceError(
            f"Sinkhorn did not reach residual {tol:g} within {max_iter} "
            f"iterations (residual {residual:.3e})",
            partial=(pair, coupling),
        )
    return pair, coupling


def _require_fresh(scal: ScalingPair):
    if scal.marginal_residual > 10.0 * scal.tol:
        raise StaleCertificateError(
            "scaling pair is not converged (marginal residual "
            f"{scal.marginal_residual:.3e} > 10 x tol {scal.tol:g}); "
            "re-run sinkhorn before evaluating dual quantities"
        )


def eval_J(
    mu: ProbabilityVector,
    nu: ProbabilityVector,
    dist: DistortionMatrix,
    beta: float,
    D: float,
    scal: ScalingPair,
) -> float:
    """Dual objective J(nu, beta) at a prescribed distortion level D.

    J = -sum_i mu_i ln(sum_j g_j e^{-beta rho_ij} nu_j)
        + sum_j nu_j ln g_j - beta D

    evaluated in the log domain from a converged scaling pair.  At the
    optimal reconstruction law and matched D this equals the curve rate.
    """
    _check_problem(mu, nu, dist, beta)
    _require_fresh(scal)
    log_phi = _log_kernel(dist, beta)
    log_nu = _log_weights(nu.weights)
    rows = mu.support
    cols = nu.support
    with np.errstate(divide="ignore"):
        den = logsumexp(log_phi[rows] + (log_nu + scal.logG)[None, :], axis=1)
    return float(
        -(mu.weights[rows] @ den)
        + nu.weights[cols] @ scal.logG[cols]
        - beta * D
    )


def eval_L(
    mu: ProbabilityVector,
    nu: ProbabilityVector,
    dist: DistortionMatrix,
    beta: float,
    scal: ScalingPair,
) -> float:
    """Optimality defect L(nu, beta) >= 0, zero exactly at nu*.

    L = sum_i mu_i ln( sum_j e^{-beta rho_ij} nu_j
                       / sum_j g_j e^{-beta rho_ij} nu_j )
        + sum_j nu_j ln g_j
    """
    _check_problem(mu, nu, dist, beta)
    _require_fresh(scal)
    log_phi = _log_kernel(dist, beta)
    log_nu = _log_weights(nu.weights)
    rows = mu.support
    cols = nu.support
    with np.errstate(divide="ignore"):
        plain = logsumexp(log_phi[rows] + log_nu[None, :], axis=1)
        den = logsumexp(log_phi[rows] + (log_nu + scal.logG)[None, :], axis=1)
    return float(
        mu.weights[rows] @ (plain - den)
        + nu.weights[cols] @ scal.logG[cols]
    )


def schrodinger_residual(
    mu: ProbabilityVector,
    nu: ProbabilityVector,
    dist: DistortionMatrix,
    scal: ScalingPair,
) -> tuple[float, float, float]:
    """Defects of a scaling pair against the Schrodinger system.

    Returns:
        (row_res, col_res, eq8_res): sup-norm deviations of the induced
        coupling's marginals from mu and nu, and the largest deviation of

            sum_i mu_i g_y e^{-beta rho(i,y)} / sum_j g_j e^{-beta rho(i,j)} nu_j

        from 1 over y in supp(nu).  Works on unconverged pairs too; the
        numbers are then just large.
    """
    _check_problem(mu, nu, dist, scal.beta)
    log_phi = _log_kernel(dist, scal.beta)
    log_mu = _log_weights(mu.weights)
    log_nu = _log_weights(nu.weights)
    rows = mu.support
    cols = nu.support
    pi = _coupling_matrix(scal.logF, scal.logG, scal.logK, log_phi, log_mu, log_nu)
    row_res = float(np.abs(pi.sum(axis=1) - mu.weights).max())
    col_res = float(np.abs(pi.sum(axis=0) - nu.weights).max())
    with np.errstate(divide="ignore"):
        den = logsumexp(log_phi[rows] + (log_nu + scal.logG)[None, :], axis=1)
        log_t = scal.logG[cols] + logsumexp(
            (log_mu[rows] - den)[:, None] + log_phi[np.ix_(rows, cols)], axis=0
        )
    eq8_res = float(np.abs(np.exp(log_t) - 1.0).max())
    return row_res, col_res, eq8_res
