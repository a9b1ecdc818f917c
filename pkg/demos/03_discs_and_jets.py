import numpy as np

from mirrorkit.disc_numerics import (
    BlaschkeProduct,
    blaschke_jet,
    jet_jacobian_at_zero,
    sample_disc,
    spherical_rigidity_check,
    winding_number,
)

rng = np.random.default_rng(0)

# A disc component is a finite Blaschke product; it maps the circle to the circle
b = BlaschkeProduct(np.exp(0.3j), sample_disc(rng, 3))
theta = np.linspace(0, 2 * np.pi, 7)
print("|b| on the boundary:", np.round(np.abs(b(np.exp(1j * theta))), 12))
print("degree from winding:", winding_number(b))

# Jets at the origin come from power series; z^3 has a zero 2-jet
print("jet of b to order 3:", np.round(blaschke_jet(b, 3), 6))
print("jet of z^3 to order 2:", blaschke_jet(BlaschkeProduct(1, [0, 0, 0]), 2))

# Derivative of the jet map at the product z^d: no dependence on conj(lambda),
# and each lambda_i lands in exactly one slot with sign (-1)^i
for d in range(1, 6):
    rep = jet_jacobian_at_zero(d)
    print(d, rep.pattern, f"anti-holomorphic block max {rep.anti_max:.1e}")

# Forcing n+1 Mobius factors to vanish to order n+1 at 0 pushes every center to 0
for n in (1, 2, 3):
    rep = spherical_rigidity_check(n, trials=50, seed=1)
    print(n, rep.to_json())
