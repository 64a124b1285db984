"""Canonical angles between subspaces, and the best rotation between bases.

Two k-dimensional subspaces of R^n meet in k canonical angles.  The sines of
those angles give a family of distances (spectral, Frobenius, trace) that
depend only on the subspaces, never on which orthonormal bases represent
them.  Bases themselves can be far apart even when the subspaces coincide;
the orthogonal Procrustes rotation closes that gap to within a sqrt(2)
factor of the subspace distance.

Run:  python demos/01_canonical_angles_and_rotations.py
"""

import numpy as np

from subspace_align import (
    NORM_KINDS,
    align_rotation,
    canonical_angles,
    sin_theta_norm,
)
from subspace_align.kernels import haar_orthogonal, random_orthonormal

rng = np.random.Generator(np.random.Philox(key=1))
n, k = 24, 4

# Same subspace, different bases: every angle is zero, yet the matrices
# differ by an arbitrary rotation.
x = random_orthonormal(n, k, rng)
y = x @ haar_orthogonal(k, rng)
angles = canonical_angles(x, y)
print("same subspace, rotated basis")
print("  max sine            :", angles.sines.max())
print("  ||x - y||_F         :", np.linalg.norm(x - y))
print()

# Two genuinely different subspaces.
z = random_orthonormal(n, k, rng)
angles = canonical_angles(x, z)
print("two random subspaces")
print("  sines  :", np.round(angles.sines, 4))
print("  cosines:", np.round(angles.cosines, 4))
for kind in NORM_KINDS:
    print(f"  sin-theta {kind:10s}: {sin_theta_norm(angles, kind):.6f}")
print()

# The best rotation q maps z onto x as closely as any basis of span(z) can;
# the residual is sandwiched between the distance and sqrt(2) times it.
q, residuals = align_rotation(x, z)
print("Procrustes rotation residuals")
for kind in NORM_KINDS:
    s = sin_theta_norm(angles, kind)
    print(
        f"  {kind:10s}: sin-theta {s:.6f} <= residual {residuals[kind]:.6f}"
        f" <= sqrt(2)*sin-theta {np.sqrt(2) * s:.6f}"
    )
