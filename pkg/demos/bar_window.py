"""Bar differential of a curved algebra and the cobar of its dual, on a small window."""

from koszulkit import (GF, bar_differential, cobar, involution_algebra, square_zero_certificate,
                       truncated_polynomial)

F = GF(3)
A = involution_algebra(F)
bar = bar_differential(A, 3)
print("curvature:", bar.curvature)
print("ξ² = 0 on the window:", square_zero_certificate(bar.xi).ok)
for k in range(bar.reduced.ngens):
    print(" ", bar.reduced.generators.names[k], "ξ₁² = [H, -]:", bar.curvature_residual(k).is_zero_upto())

C = truncated_polynomial(F, 3, 0, "e")   # k[e]/e³ read as a coalgebra
om = cobar(C, 3)
print("cobar d² = 0:", square_zero_certificate(om.differential).ok)
