from mirrorkit.coord_ring import graded_basis, pushforward_of_monomial, pushforward_of_t, toric_degree
from mirrorkit.fs_combinatorics import GradingGroup, a_side_dim, chord_to_monomial, dims_grid, psi_decompose

# A base thimble with winding j splits into n+1 thimbles upstairs
n = 2
for j in (-1, 0, 4):
    ts = psi_decompose(n, j)
    print(f"j={j}:", " ".join(map(str, ts)), "mirror degrees", [t.mirror_degree for t in ts])

# Wrapped Floer cohomology, counted block by block, against graded pieces of
# k[x0..xn, t] / (t^(n+1) - x0...xn)
r = a_side_dim(2, 0, 1)
print(f"hom(L_0, L_1): blocks {r.blocks} -> {r.a_side}; ring side {r.b_side}")

grid = dims_grid([2], range(-3, 4), range(-3, 4))
print("mismatches in a 7x7 grid:", [(g.i, g.j) for g in grid if not g.match])
print("   " + "".join(f"{j:>5}" for j in range(-3, 4)))
for i in range(-3, 4):
    row = [g.a_side for g in grid if g.i == i]
    print(f"{i:>3}" + "".join(f"{x:>5}" for x in row))

# Each degree-2 monomial has its own toric degree, so a grading class picks it out
G = GradingGroup(2)
for m in graded_basis(2, 2):
    v = toric_degree(m)
    back = chord_to_monomial(2, G.normalize(m.x_exps), 2)
    print(f"{str(m):>12}  toric degree {v}  recovered {back}")

# Multiplication by t on the pushforward O + O(-1) + O(-2)
for l, k, p in pushforward_of_t(2).nonzero_blocks():
    print(f"block ({l},{k}):", p.to_text())

m = graded_basis(2, 1)[-1]
print("pushforward of", m, [(l, k, p.to_text()) for l, k, p in pushforward_of_monomial(m, 0, 1).nonzero_blocks()])
