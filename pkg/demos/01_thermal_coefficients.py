"""Thermal coefficients and the temperature-shift identity.

The pair b_plus, b_minus carries all thermal data of a free scalar mode:
b_plus - b_minus = 1 fixes the commutator, b_minus = exp(-beta*eps) b_plus
is detailed balance.  Their beta-derivatives stay inside the polynomial
ring generated by the pair, with integer coefficients that this package
also derives from permutation descents.

The punchline is the shift identity: moving the frequency from eps to
eps_lambda is the same as moving the inverse temperature from beta to
beta' = beta * eps_lambda / eps.  That one line is what collapses the whole
perturbative series in demo 05.
"""

import numpy as np

from thermalquench import (
    ThermalParams,
    bose_coefficient,
    bose_derivative,
    dispersion,
    shifted_beta,
)


def main():
    beta, eps = 1.0, 1.0
    bp = bose_coefficient(+1, beta, eps)
    bm = bose_coefficient(-1, beta, eps)
    print("== coefficients at beta = eps = 1 ==")
    print(f"b_plus  = {bp:.12f}")
    print(f"b_minus = {bm:.12f}")
    print(f"b_plus - b_minus - 1       = {bp - bm - 1.0:.2e}")
    print(f"b_minus - exp(-x) b_plus   = {bm - np.exp(-beta * eps) * bp:.2e}")

    print("\n== derivative tower (all orders share one polynomial pattern) ==")
    for n in range(1, 6):
        print(f"  d^{n}/dbeta^{n} b = {bose_derivative(n, +1, beta, eps):+.10f}")

    print("\n== temperature shift vs frequency shift ==")
    params = ThermalParams(beta=1.0, m_sq=1.0, m0_sq=1.0, lam=0.5)
    for k in (0.0, 1.0, 3.0):
        d = dispersion(k, params)
        beta_shifted = shifted_beta(params, d)
        lhs = bose_coefficient(+1, beta_shifted, d.eps)
        rhs = bose_coefficient(+1, params.beta, d.eps_lambda)
        print(
            f"  k={k}: beta'={beta_shifted:.6f}  "
            f"b_plus(beta', eps)={lhs:.12f}  b_plus(beta, eps_lambda)={rhs:.12f}  "
            f"diff={abs(lhs - rhs):.1e}"
        )


if __name__ == "__main__":
    main()
