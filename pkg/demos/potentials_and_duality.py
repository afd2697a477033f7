"""What the Schrodinger potentials say about a reconstruction law.

For the optimal law nu* at slope beta, the log-potential g of the scaling
problem is constant on supp(nu*), the transport defect L vanishes, and
the dual objective J reproduces the curve rate.  For any other law all
three break.  This prints the full picture for one optimal and one
deliberately wrong law.
"""
import numpy as np

from rdbridge import (
    ProbabilityVector,
    ba_fixed_point,
    check_optimality,
    eval_J,
    eval_L,
    hamming,
    sinkhorn,
)

BETA = 2.0


def inspect(tag, mu, dist, nu):
    pair, coupling = sinkhorn(mu, nu, dist, BETA, tol=1e-13)
    on = nu.weights > 0
    spread = pair.logG[on].max() - pair.logG[on].min()
    d = float(np.sum(coupling.joint * dist.rho))
    j = eval_J(mu, nu, dist, BETA, d, pair)
    l = eval_L(mu, nu, dist, BETA, pair)
    report = check_optimality(mu, dist, BETA, nu)
    print(f"--- {tag}")
    print(f"    nu            = {np.array2string(nu.weights, precision=6)}")
    print(f"    logG          = {np.array2string(pair.logG, precision=6)}")
    print(f"    logG spread   = {spread:.3e}")
    print(f"    defect L      = {l:.3e}")
    print(f"    dual J at E[rho] = {j:.6f}")
    print(f"    verdict       = {report.verdict}")
    return j


def main():
    mu = ProbabilityVector([0.7, 0.3])
    dist = hamming(2)
    star = ba_fixed_point(mu, dist, BETA, tol=1e-13, max_iter=50000)
    print(f"Bernoulli(0.3), beta = {BETA}")
    print(f"solved point: D = {star.distortion:.6f}, R = {star.rate:.6f}\n")

    j = inspect("optimal law (from the fixed-point solve)", mu, dist, star.nu_star)
    print(f"    |J - R|       = {abs(j - star.rate):.3e}\n")

    inspect("uniform law (not optimal at this slope)", mu, dist,
            ProbabilityVector([0.5, 0.5]))


if __name__ == "__main__":
    main()
