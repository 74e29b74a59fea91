"""Matrix models of the finite fibers over central characters."""

from qweyl import (CycField, FiberAlgebra, FiberPoint, PBWAlgebra,
                   TorusEmbedding, endo_splitting_check, full_matrix_rep,
                   rank1_matrix_rep)

F = CycField(3)

print("rank one at (c, w) = (7, 1), gamma = 2:")
rep = rank1_matrix_rep(F, 7, 1, None, 2)
print("  x     =", sorted((rc, str(v)) for rc, v in rep.x.entries.items()))
print("  d     =", sorted((rc, str(v)) for rc, v in rep.d.entries.items()))
print("  alpha =", sorted((rc, str(v)) for rc, v in rep.alpha.entries.items()))
print("  x^3 scalar:", rep.x ** 3)
print()

# a point off the locus: 1 + c*w = 0, no matrix model, alpha not invertible
emb1 = TorusEmbedding(n=1, d=1, matrix=((1,),), form=((2,),))
A1 = PBWAlgebra(F, emb1)
bad = FiberPoint(field=F, lam=((F.scalar(-1), F.one),), gamma=(F.zero,))
fib = FiberAlgebra(A1, bad)
ideal = fib.two_sided_ideal([fib.alpha(1)])
print(f"off the locus, (alpha) has dimension {ideal.rank} inside {fib.dimension()}")
print()

# two coordinates braided through a shared torus direction
emb2 = TorusEmbedding(n=2, d=1, matrix=((1,), (1,)), form=((2,),))
p = FiberPoint(field=F, lam=((F.zero, F.zero), (F.scalar(7), F.one)),
               gamma=(F.one, F.scalar(2)))
big = full_matrix_rep(p, emb2)
print(f"two-factor model on {big.size} dimensions;",
      f"alpha_2 diagonal: {[str(big.alpha[1][(r, r)]) for r in range(big.size)]}")
print()

print("splitting check over locus points:")
for c, w, b, g in [(0, 0, 0, 1), (8, 0, 2, 1), (7, 1, None, 2)]:
    pt = FiberPoint(field=F, lam=((F.scalar(c), F.scalar(w)),),
                    gamma=(F.scalar(g),), b=(None if b is None else F.scalar(b),))
    print(f"  (c, w, gamma) = ({c}, {w}, {g}):", endo_splitting_check(A1, pt))
