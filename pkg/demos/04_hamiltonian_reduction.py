"""Quantum Hamiltonian reduction of a matrix fiber by the torsion torus."""

from qweyl import (CycField, EmptyReductionError, FiberPoint, TorusEmbedding,
                   admissible_etas, gamma_grading, hamiltonian_reduce,
                   invariant_blocks)

F = CycField(3)
emb = TorusEmbedding(n=2, d=1, matrix=((1,), (1,)), form=((2,),))
p = FiberPoint(field=F, lam=((F.zero, F.zero), (F.zero, F.zero)),
               gamma=(F.one, F.one))

blocks = invariant_blocks(gamma_grading(emb, 3))
print("grading blocks:", blocks["block_count"], "of size", blocks["block_size"],
      "-> invariant dimension", blocks["invariant_dim"])

print()
print("admissible parameters:", [" , ".join(str(v) for v in tup)
                                 for tup in admissible_etas(p, emb)])

for eta in admissible_etas(p, emb):
    res = hamiltonian_reduce(p, emb, eta)
    print()
    print(f"eta = ({', '.join(str(v) for v in eta)}):")
    for key, val in res.report().items():
        print(f"  {key}: {val}")
    print(f"  shift: {res.shift}, shifted gamma: "
          f"({', '.join(str(g) for g in res.shifted_gamma)})")

print()
try:
    hamiltonian_reduce(p, emb, (F.scalar(5),))
except EmptyReductionError as err:
    print("eta = 5 ->", err)
