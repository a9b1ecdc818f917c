from fractions import Fraction

from mirrorkit.disc_numerics import BranchData, branch_degree, maslov_in_cover

# Degree of the branch locus of the projection given by |m K^-1|
for n, m, deg_x in [(2, 1, 3), (2, 2, 3), (3, 1, 4), (1, 1, 2), (2, 1, 6)]:
    bd = branch_degree(BranchData(n, m, deg_x))
    print(f"n={n} m={m} deg X={deg_x}: deg B = {bd.value}, integer {bd.is_integer}, divisible {bd.divisible_by_n_plus_1}")

# The cubic surface: anticanonical is already very ample, and B is a sextic
print("cubic surface:", branch_degree(BranchData(2, 1, 3)).value)

# A disc tangent to B to order n+1 in the projective plane lifts with Maslov index 2
for n in range(1, 6):
    print(n, maslov_in_cover(n, 1, n * (n + 1), 2 * (n + 1), n * (n + 1)))

# A disc missing B keeps its index
print(maslov_in_cover(2, 1, Fraction(6), 6, 0))
