"""Truncated power series as the numerical oracle.

The derivation becomes d/dt: level-1 generators are exponentials and the
prolonged first-order system x_i' = x_i x_{i+1} reproduces the iterated
logarithmic derivative order by order.
"""

import random

from deltatower import build_spec, derive, eval_series, logd_system, solve_prolonged
from deltatower.operators import prolonged_residual
from deltatower.series import residual
from deltatower.tower import SeriesContext, random_element

spec = build_spec((2, 1))
ctx = SeriesContext.default(spec, order=12)

print("## generators become exponentials (c11 -> 2)")
print("b11(t):", eval_series(spec.generator(1, 1), ctx, spec).coeffs[:5])

print()
print("## the derivation commutes with the series interpretation")
rng = random.Random(5)
x = random_element(rng, spec)
lhs = eval_series(derive(x, spec), ctx, spec)
rhs = eval_series(x, ctx, spec).deriv()
print("element:", x)
print("residual:", residual(lhs, rhs))

print()
print("## the prolonged log-derivative system")
system = logd_system(2, 0)
print(system)
xs = solve_prolonged(system, [1.0, 1.0], 5)
print("x_1:", xs[0].coeffs, " (exp(t))")
print("x_2:", xs[1].coeffs)
print("defining-equation residual:", prolonged_residual(system, xs))

print()
print("## three levels with random starting values")
system3 = logd_system(3, 0)
xs3 = solve_prolonged(system3, [1.5, -0.5, 2.0], 12)
print("residual:", prolonged_residual(system3, xs3))
current = xs3[0]
for _ in range(3):
    current = current.deriv() / current.truncate(current.order - 1)
print("logd^3(x_1) max coefficient:", current.max_abs())
