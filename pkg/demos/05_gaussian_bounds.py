"""Gaussian quadrant probabilities and the stability lower bound.

gamma(rho, mu, nu) is the mass a rho-correlated normal pair puts on
{X below the mu-quantile} x {Y above the (1-nu)-quantile}.  The closed
forms at the boundary and a Monte Carlo run pin the quadrature down.
The often-quoted lower bound gamma(1-lam, theta, theta) >=
theta^(1/lam) is then checked on a grid -- and it simply does not hold
for small theta, which this toolkit reports instead of assuming.
"""

import math

from smcsp import check_gamma_inequalities, gamma, gamma_mc, gamma_power

print("boundary identities:")
print(f"  gamma(0, 0.3, 0.7)  = {gamma(0.0, 0.3, 0.7):.10f}  (= 0.21)")
print(f"  gamma(0.4, 1, 0.35) = {gamma(0.4, 1.0, 0.35):.10f}  (= 0.35)")
print(f"  gamma(0.5, 0.5, 0.5) = {gamma(0.5, 0.5, 0.5):.10f}  (= 1/6, "
      "since asin(1/2) = pi/6)")

est, se = gamma_mc(0.5, 0.5, 0.5, n=10**6, seed=1)
print(f"\nMonte Carlo at the same point: {est:.6f} +- {se:.6f}")

print(f"\nnested form gamma_power(0.5, 0.4, 3) = "
      f"{gamma_power(0.5, 0.4, 3):.8f}")

theta, lam = 0.1, 0.2
value = gamma(1 - lam, theta, theta)
bound = theta ** (1 / lam)
print(f"\nclaimed bound at theta={theta}, lambda={lam}:")
print(f"  gamma(1-lambda, theta, theta) = {value:.3e}")
print(f"  theta^(1/lambda)              = {bound:.3e}")
print(f"  bound holds: {value >= bound}  "
      f"(off by a factor of {bound / value:.1f})")

report = check_gamma_inequalities(tol=1e-6)
print(f"\nfull grid: {len(report['violations'])} violations out of "
      f"{report['checked']} checks")
worst = max(report["violations"],
            key=lambda v: v["bound"] / max(v["value"], 1e-300))
print(f"worst case: {worst['kind']} theta={worst['theta']} "
      f"lambda={worst['lambda']}, value {worst['value']:.3e} vs "
      f"bound {worst['bound']:.3e}")
assert math.isfinite(worst["value"])
