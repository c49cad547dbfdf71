"""Compare both sides of the F ⊣ G adjunction at the point x⊗t, then test a weak equivalence."""

from koszulkit import (GF, GradedSpace, RightModule, TwistedModule, TwistedMorphism, adjunction_check,
                       small_example_algebra, tensor_cdga, truncated_polynomial, weak_equiv_oracle)

F = GF(3)
A = small_example_algebra(F)
B = truncated_polynomial(F, 2, 0, "t")
x = tensor_cdga(A, B).vector({"x⊗t": 1})

for M, N in ((RightModule.regular(A), RightModule.regular(B)),
             (RightModule.trivial(A), RightModule.trivial(B))):
    print(adjunction_check(x, M, N))

line = GradedSpace(F, (("v", 0),))
M1 = TwistedModule(A, line, A.vector({"x": 1}))
M2 = TwistedModule(A, line, A.vector({"x": 2}))
print(weak_equiv_oracle(TwistedMorphism.identity(M1), bound=2))
print(weak_equiv_oracle(TwistedMorphism.zero(M1, M2), bound=2))
