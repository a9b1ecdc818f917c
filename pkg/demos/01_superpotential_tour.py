import numpy as np

from mirrorkit.clifford import CliffordAlgebra
from mirrorkit.superpotential import (
    build_W,
    build_W_cl,
    covering_pullback,
    critical_points,
    disc_counts,
    hessian_at_symmetric_point,
    hessian_determinant,
    verify_count_identity,
)

# The potential of the torus in the branched cover, for the plane (n = 2)
n = 2
W = build_W(n)
print("W =", W.to_text())

# Adding back (n+1)! and pulling back along y_i -> y_i * y1...yn gives a perfect power
print("pullback is W_cl^3:", covering_pullback(n) == build_W_cl(n) ** (n + 1))

# Disc classes of Maslov index 2(n+1) and their counts; the all-ones class counts nothing
for cls, count in sorted(disc_counts(n).rows.items()):
    print(cls.alpha, count)

ok, residual = verify_count_identity(n)
print("count identity holds:", ok, "residual:", residual.to_text())

# Critical values.  The solver reports the unshifted form and the shifted one
for n in range(1, 5):
    rep = critical_points(n)
    vals = np.round(np.real(rep.values), 8)
    print(f"n={n}: W_hat critical values {vals}, W values {np.round(np.real(rep.w_values), 8)}")

# The symmetric point is nondegenerate: its Hessian is an invertible form
for n in range(1, 6):
    print(n, "det Hessian =", hessian_determinant(n))

H = hessian_at_symmetric_point(2)
alg = CliffordAlgebra(H)
print("Clifford algebra of", [[str(x) for x in r] for r in H])
for (a, b), prod in sorted(alg.table.items()):
    if a and b:
        print(f"  {alg.label(a)} * {alg.label(b)} =", {alg.label(m): str(c) for m, c in prod.items()})
print("associative:", not alg.associativity_defects())
