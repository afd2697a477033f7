"""Sweep the rate-distortion curve of a biased coin and check it against
the textbook closed form R(D) = H(p) - H(D).

Run:  python3 demos/bernoulli_curve.py
"""
import math

import numpy as np

from rdbridge import (
    ProbabilityVector,
    hamming,
    oracle_bernoulli_hamming,
    rd_curve,
)

P = 0.3


def main():
    mu = ProbabilityVector([1.0 - P, P], labels=[0.0, 1.0])
    dist = hamming(2)
    betas = np.geomspace(0.1, 20.0, 24)
    curve = rd_curve(mu, dist, betas, tol=1e-11, max_iter=200000)

    print(f"Bernoulli({P}) under Hamming loss, {len(curve)} slopes")
    print(f"{'beta':>10} {'D':>12} {'R (nats)':>12} {'closed form':>12} {'|err|':>10}")
    worst = 0.0
    for point in curve.points:
        oracle = oracle_bernoulli_hamming(P, point.distortion)
        err = abs(point.rate - oracle)
        worst = max(worst, err)
        print(
            f"{point.beta:10.4f} {point.distortion:12.6f} {point.rate:12.6f} "
            f"{oracle:12.6f} {err:10.2e}"
        )

    beta_c = math.log((1.0 - P) / P)
    print()
    print(f"worst |R - closed form| = {worst:.3e}")
    print(
        f"below beta_c = ln((1-p)/p) = {beta_c:.4f} the curve sits at the "
        f"zero-rate corner (D = min(p, 1-p) = {min(P, 1 - P)})"
    )


if __name__ == "__main__":
    main()
