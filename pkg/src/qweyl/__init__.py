"""Exact computer algebra for q-Weyl algebras at odd roots of unity.

Scalars live in the cyclotomic field Q(zeta_ell); everything downstream
(PBW normal forms, central elements, matrix fibers, torsion gradings,
Hamiltonian reduction, the cyclic-quiver examples) is computed with
exact arithmetic and verified by explicit linear algebra.
"""

from .cyclotomic import CycField, CycScalar, cyclotomic_polynomial
from .expr import ParseError, evaluate, evaluate_scalar, parse_expression
from .fiber import (FiberAlgebra, FiberElement, FiberPoint, FullRep,
                    GradedMatrixAlgebra, Matrix, OutsideAzumayaLocus,
                    PPrimeModule, Rank1Rep, UntwistMap, endo_splitting_check,
                    full_matrix_rep, in_azumaya_locus, pprime_module,
                    rank1_matrix_rep, reduce_to_fiber, untwist_iso)
from .lattice import (ModEllKernel, QuiverData, TorusEmbedding,
                      classical_moment, elementary_divisors, enumerate_vectors,
                      is_unimodular, kernel_mod_ell, quiver_to_embedding,
                      smith_normal_form)
from .linalg import SpanBasis, nullspace
from .pbw import (PBWAlgebra, PBWElement, QmmResult, act_rank1, euler,
                  power_alpha_ell, verify_qmm)
from .quiver_examples import (AnQuiverAlgebra, DifferenceOperator,
                              build_an_quiver_algebra, cyclic_quiver,
                              u1_operators, verify_central_z,
                              verify_u1_relations)
from .reduction import (EmptyReductionError, GammaGrading, ReductionResult,
                        admissible_etas, eta_shift, gamma_grading,
                        hamiltonian_reduce, invariant_blocks, moment_diagonals,
                        phi_dagger, verify_qmm_gamma)

__version__ = "0.1.0"

__all__ = [
    "CycField", "CycScalar", "cyclotomic_polynomial",
    "ParseError", "evaluate", "evaluate_scalar", "parse_expression",
    "FiberAlgebra", "FiberElement", "FiberPoint", "FullRep",
    "GradedMatrixAlgebra", "Matrix", "OutsideAzumayaLocus", "PPrimeModule",
    "Rank1Rep", "UntwistMap", "endo_splitting_check", "full_matrix_rep",
    "in_azumaya_locus", "pprime_module", "rank1_matrix_rep",
    "reduce_to_fiber", "untwist_iso",
    "ModEllKernel", "QuiverData", "TorusEmbedding", "classical_moment",
    "elementary_divisors", "enumerate_vectors", "is_unimodular",
    "kernel_mod_ell", "quiver_to_embedding", "smith_normal_form",
    "SpanBasis", "nullspace",
    "PBWAlgebra", "PBWElement", "QmmResult", "act_rank1", "euler",
    "power_alpha_ell", "verify_qmm",
    "AnQuiverAlgebra", "DifferenceOperator", "build_an_quiver_algebra",
    "cyclic_quiver", "u1_operators", "verify_central_z", "verify_u1_relations",
    "EmptyReductionError", "GammaGrading", "ReductionResult",
    "admissible_etas", "eta_shift", "gamma_grading", "hamiltonian_reduce",
    "invariant_blocks", "moment_diagonals", "phi_dagger", "verify_qmm_gamma",
    "__version__",
]
