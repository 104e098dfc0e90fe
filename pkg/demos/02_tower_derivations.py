"""The differential tower: eigen-generators, twisted derivations, logd.

Level i carries generators b[i][j] with

    delta b[i][j] = c[i][j] * b[i][j] * e_1 * ... * e_{i-1},

where e_k is the sum of the level-k generators.  The twisted derivation
D_i divides out the product, which turns the level-i generators into
honest eigenvectors.
"""

from deltatower import DomainViolation, build_spec, d_twist, derive, logd, logd_iter

spec = build_spec((2, 1))
b11, b12 = spec.generator(1, 1), spec.generator(1, 2)
b21 = spec.generator(2, 1)

print("## the derivation on generators")
print("delta b[1][1] =", derive(b11, spec))
print("delta b[2][1] =", derive(b21, spec))

print()
print("## twisted derivations make the higher levels eigen again")
print("D_2 b[2][1] =", d_twist(b21, 2, spec))

print()
print("## logarithmic derivatives turn products into sums")
print("logd(b11 * b12)  =", logd(b11 * b12, 1, spec))
print("logd(b11 / b12)  =", logd(b11 / b12, 1, spec))
print("logd(b11^3)      =", logd(b11**3, 1, spec))

print()
print("## iterated logd walks down to the constants and leaves its domain")
print("logd^1(b11) =", logd_iter(b11, 1, spec))
print("logd^2(b11) =", logd_iter(b11, 2, spec))
try:
    logd_iter(b11, 3, spec)
except DomainViolation as exc:
    print(f"logd^3(b11) -> DomainViolation (iterate {exc.index} is zero)")
