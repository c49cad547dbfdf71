"""Walk through k[x]/x² with |x| = 1 over a few prime fields."""

from koszulkit import (GF, GradedSpace, TwistedModule, bar_points, cohomology, enumerate_mc,
                       ground_algebra, hom_complex, small_example_algebra)

for p in (2, 3, 5):
    F = GF(p)
    A = small_example_algebra(F)
    mcs = enumerate_mc(A)                      # every c·x solves the MC equation
    print(f"F{p}: {len(mcs)} MC elements, {len(bar_points(A, ground_algebra(F)))} bar points")

F = GF(3)
A = small_example_algebra(F)
line = GradedSpace(F, (("v", 0),))
mods = [TwistedModule(A, line, z.coords) for z in enumerate_mc(A)]

# Hom between rank-one twists: nonzero only on the diagonal
for i, M in enumerate(mods):
    print(i, [dict(sorted(cohomology(hom_complex(M, N)).items())) for N in mods])
