"""Finite fibers: central characters, matrix models, untwisting."""

import random

import pytest

from qweyl import (CycField, FiberAlgebra, FiberPoint, GradedMatrixAlgebra,
                   Matrix, OutsideAzumayaLocus, PBWAlgebra, TorusEmbedding,
                   endo_splitting_check, full_matrix_rep, in_azumaya_locus,
                   pprime_module, rank1_matrix_rep, reduce_to_fiber,
                   untwist_iso)
from qweyl.fiber import digits


def emb_n1():
    return TorusEmbedding(n=1, d=1, matrix=((1,),), form=((2,),))


def emb_n2():
    return TorusEmbedding(n=2, d=1, matrix=((1,), (1,)), form=((2,),))


def weyl(ell, emb=None):
    F = CycField(ell)
    return PBWAlgebra(F, emb or emb_n1())


def point(F, pairs, gamma, b=None):
    return FiberPoint(field=F, lam=tuple(pairs), gamma=tuple(gamma), b=b)


# -- fiber points ----------------------------------------------------------

def test_point_validation():
    F = CycField(3)
    # gamma^ell must hit 1 + c*w on the nose
    with pytest.raises(ValueError):
        point(F, [(F.scalar(8), F.zero)], [F.scalar(2)])
    with pytest.raises(ValueError):
        point(F, [(F.zero, F.zero)], [F.scalar(2)])  # 2^3 = 8 != 1
    # one gamma per pair
    with pytest.raises(ValueError):
        point(F, [(F.zero, F.zero)], [F.one, F.one])
    # b, when given, must be an actual ell-th root of c
    with pytest.raises(ValueError):
        point(F, [(F.scalar(8), F.zero)], [F.one], b=(F.one,))


def test_point_q_gamma_is_fine():
    # q itself is a cube root of 1 when ell = 3, so gamma = q is legal at c*w = 0
    F = CycField(3)
    p = point(F, [(F.zero, F.zero)], [F.qpow(1)])
    assert p.in_azumaya_locus()


def test_azumaya_locus_membership():
    F = CycField(3)
    good = point(F, [(F.zero, F.zero)], [F.one])
    assert in_azumaya_locus(good)
    bad = point(F, [(F.scalar(-1), F.one)], [F.zero])  # 1 + c*w = 0, gamma = 0
    assert not in_azumaya_locus(bad)


# -- the ell^(2n)-dimensional quotient --------------------------------------

def test_reduce_folds_powers_against_central_values():
    A = weyl(3)
    F = A.field
    p = point(F, [(F.scalar(8), F.zero)], [F.one], b=(F.scalar(2),))
    fib = FiberAlgebra(A, p)
    # x^4 = x^3 * x = 8x in the quotient
    r = fib.reduce(A.x(1, 4))
    assert r.vec() == {((1,), (0,)): F.scalar(8)}
    # d^3 = w = 0 kills the term outright
    assert not fib.reduce(A.d(1, 3))
    assert fib.reduce(A.x(1, 3)).vec() == {((0,), (0,)): F.scalar(8)}


def test_fiber_product_matches_lift_multiply():
    A = weyl(3)
    F = A.field
    p = point(F, [(F.scalar(7), F.one)], [F.scalar(2)])
    fib = FiberAlgebra(A, p)
    rng = random.Random(7103)
    keys = list(fib.basis_keys())
    for _ in range(25):
        a = fib.from_vec({rng.choice(keys): F.scalar(rng.randint(1, 5))})
        b = fib.from_vec({rng.choice(keys): F.scalar(rng.randint(1, 5))})
        lhs = (a * b).vec()
        rhs = fib.reduce(A.multiply(a.lift(), b.lift())).vec()
        assert lhs == rhs


def test_reduce_to_fiber_is_an_algebra_map():
    emb = emb_n2()
    A = weyl(3, emb)
    F = A.field
    p = point(F, [(F.zero, F.zero), (F.scalar(7), F.one)], [F.one, F.scalar(2)])
    rng = random.Random(20240901)
    keys = [((rng.randint(0, 4), rng.randint(0, 4)),
             (rng.randint(0, 4), rng.randint(0, 4))) for _ in range(6)]
    for i in range(12):
        a = A.monomial(keys[i % 6][0], keys[(i + 1) % 6][1])
        b = A.monomial(keys[(i + 2) % 6][0], keys[(i + 3) % 6][1], coeff=F.qpow(i))
        lhs = reduce_to_fiber(A.multiply(a, b), p)
        rhs = reduce_to_fiber(a, p) * reduce_to_fiber(b, p)
        assert lhs.vec() == rhs.vec()


# -- rank one matrix model ---------------------------------------------------

RANK1_POINTS = [
    # (c, w, b, gamma) with gamma^ell = 1 + c*w and b^ell = c where given
    (0, 0, 0, 1),
    (8, 0, 2, 1),
    (7, 1, None, 2),
]


@pytest.mark.parametrize("c,w,b,gamma", RANK1_POINTS)
def test_rank1_relations_and_alpha_diagonal(c, w, b, gamma):
    F = CycField(3)
    ell = 3
    rep = rank1_matrix_rep(F, c, w, b, gamma)
    X, D, Al = rep.x, rep.d, rep.alpha
    q2 = F.qpow(2)
    I = Matrix.identity(F, ell)
    # defining relation and the alpha bookkeeping
    assert D * X == (X * D).scale(q2) + I.scale(q2 - F.one)
    assert Al == I + X * D
    # central values
    assert X ** ell == I.scale(F.scalar(c))
    assert D ** ell == I.scale(F.scalar(w))
    # alpha is diagonal with eigenvalue gamma * q^(-2r) in row r
    g = F.scalar(gamma)
    for r in range(ell):
        assert Al.entries.get((r, r), F.zero) == g * F.qpow(-2 * r)
    assert all(r == s for (r, s) in Al.entries)


@pytest.mark.parametrize("c,w,b,gamma", RANK1_POINTS)
def test_rank1_spans_the_full_matrix_algebra(c, w, b, gamma):
    from qweyl.linalg import SpanBasis
    F = CycField(3)
    rep = rank1_matrix_rep(F, c, w, b, gamma)
    span = SpanBasis(F)
    for a in range(3):
        for e in range(3):
            m = (rep.x ** a) * (rep.d ** e)
            span.add(dict(m.entries))
    assert span.rank == 9


def test_rank1_requires_gamma_and_the_locus():
    F = CycField(3)
    with pytest.raises(ValueError):
        rank1_matrix_rep(F, 0, 0)
    with pytest.raises(OutsideAzumayaLocus):
        rank1_matrix_rep(F, -1, 1, None, 0)
    with pytest.raises(ValueError):
        rank1_matrix_rep(F, 7, 1, None, 1)  # 1^3 != 8


def test_off_locus_alpha_generates_a_proper_ideal():
    # at 1 + c*w = 0 the quotient is not simple: alpha generates a
    # nonzero two-sided ideal that is not everything
    A = weyl(3)
    F = A.field
    p = point(F, [(F.scalar(-1), F.one)], [F.zero])
    fib = FiberAlgebra(A, p)
    ideal = fib.two_sided_ideal([fib.alpha(1)])
    assert ideal.rank == 6
    assert 0 < ideal.rank < fib.dimension()


# -- untwisting the braided tensor square -----------------------------------

def graded_pair(ell, size1, size2, wt1, wt2, form):
    F = CycField(ell)
    left = GradedMatrixAlgebra(F, size1,
                               tuple(tuple(r * w for w in wt1) for r in range(size1)),
                               form)
    right = GradedMatrixAlgebra(F, size2,
                                tuple(tuple(r * w for w in wt2) for r in range(size2)),
                                form)
    return F, left, right


def test_untwist_forward_backward_inverse():
    F, left, right = graded_pair(3, 3, 3, (1,), (1,), ((2,),))
    phi = untwist_iso(left, right)
    rng = random.Random(515)
    size = left.size * right.size
    m = Matrix(F, size, {(rng.randrange(size), rng.randrange(size)): F.qpow(rng.randrange(3))
                         for _ in range(12)})
    assert phi.backward(phi.forward(m)) == m
    assert phi.forward(phi.backward(m)) == m


def test_untwist_is_multiplicative_on_all_elementary_pairs():
    # trivial product in, braided product out, checked pair by pair
    F, left, right = graded_pair(3, 3, 3, (1,), (1,), ((2,),))
    phi = untwist_iso(left, right)
    size = left.size * right.size
    units = [Matrix(F, size, {(r, c): F.one})
             for r in range(size) for c in range(size)]
    for u in units:
        for v in units:
            assert phi.forward(u * v) == phi.braided_product(phi.forward(u), phi.forward(v))


def test_braided_product_is_associative_on_samples():
    F, left, right = graded_pair(5, 5, 5, (2,), (1,), ((2,),))
    phi = untwist_iso(left, right)
    size = left.size * right.size
    rng = random.Random(99)

    def rand():
        return Matrix(F, size, {(rng.randrange(size), rng.randrange(size)):
                                F.qpow(rng.randrange(5)) for _ in range(6)})

    for _ in range(10):
        a, b, c = rand(), rand(), rand()
        lhs = phi.braided_product(phi.braided_product(a, b), c)
        rhs = phi.braided_product(a, phi.braided_product(b, c))
        assert lhs == rhs


# -- the full model on ell^n dimensions --------------------------------------

def two_factor_point(F):
    return point(F, [(F.zero, F.zero), (F.scalar(7), F.one)],
                 [F.one, F.scalar(2)])


def test_full_rep_alpha_diagonals():
    F = CycField(3)
    emb = emb_n2()
    p = two_factor_point(F)
    rep = full_matrix_rep(p, emb)
    assert rep.size == 9
    for i in range(2):
        Al = rep.alpha[i]
        assert all(r == s for (r, s) in Al.entries)
        for t in range(9):
            ds = digits(t, 3, 2)
            expect = p.gamma[i] * F.qpow(-2 * ds[i])
            assert Al.entries.get((t, t), F.zero) == expect


def test_full_rep_is_an_algebra_map():
    F = CycField(3)
    emb = emb_n2()
    A = PBWAlgebra(F, emb)
    p = two_factor_point(F)
    rep = full_matrix_rep(p, emb)
    # generator relations transfer to the matrices
    for i in (1, 2):
        for j in (1, 2):
            a, b = A.d(i), A.x(j)
            assert rep.of_element(A.multiply(a, b)) == rep.of_element(a) * rep.of_element(b)
    rng = random.Random(4242)
    for _ in range(15):
        m = tuple(rng.randint(0, 3) for _ in range(2))
        k = tuple(rng.randint(0, 3) for _ in range(2))
        m2 = tuple(rng.randint(0, 3) for _ in range(2))
        k2 = tuple(rng.randint(0, 3) for _ in range(2))
        a, b = A.monomial(m, k), A.monomial(m2, k2, coeff=F.qpow(1))
        assert rep.of_element(A.multiply(a, b)) == rep.of_element(a) * rep.of_element(b)


def test_full_rep_is_bijective_onto_mat9():
    from qweyl.linalg import SpanBasis
    F = CycField(3)
    emb = emb_n2()
    A = PBWAlgebra(F, emb)
    p = two_factor_point(F)
    rep = full_matrix_rep(p, emb)
    fib = FiberAlgebra(A, p)
    span = SpanBasis(F)
    for key in fib.basis_keys():
        img = rep.of_element(fib.from_vec({key: F.one}))
        span.add(dict(img.entries))
    assert span.rank == 81


def test_full_rep_refuses_points_off_the_locus():
    F = CycField(3)
    p = point(F, [(F.scalar(-1), F.one), (F.zero, F.zero)], [F.zero, F.one])
    with pytest.raises(OutsideAzumayaLocus):
        full_matrix_rep(p, emb_n2())


# -- module bases and the splitting check ------------------------------------

def test_pprime_basis_generic_gamma():
    F = CycField(3)
    p = point(F, [(F.scalar(7), F.one)], [F.scalar(2)])  # 2^3 = 8 != 1
    mod = pprime_module(p)
    assert mod.dimension == 3
    assert set(mod.basis_keys()) == {((j,), (0,)) for j in range(3)}


def test_pprime_basis_splits_at_unit_gamma():
    F = CycField(3)
    # gamma = q^2 (k = 1): basis 1, x, d
    p = point(F, [(F.zero, F.zero)], [F.qpow(2)])
    mod = pprime_module(p)
    assert set(mod.basis_keys()) == {((0,), (0,)), ((1,), (0,)), ((0,), (1,))}
    # gamma = 1 (k = 0): all powers of x
    p0 = point(F, [(F.zero, F.zero)], [F.one])
    assert set(pprime_module(p0).basis_keys()) == {((j,), (0,)) for j in range(3)}


def test_pprime_dimension_multiplies_over_factors():
    F = CycField(3)
    p = point(F, [(F.zero, F.zero), (F.scalar(7), F.one)], [F.qpow(2), F.scalar(2)])
    assert pprime_module(p).dimension == 9


SPLITTING_POINTS = [
    ([(0, 0)], [1]),
    ([(8, 0)], [1]),
    ([(7, 1)], [2]),
    ([(0, 0)], ["q2"]),  # unit gamma, split basis
]


@pytest.mark.parametrize("pairs,gammas", SPLITTING_POINTS)
def test_endomorphism_splitting_on_the_locus(pairs, gammas):
    F = CycField(3)
    A = weyl(3)
    gs = [F.qpow(2) if g == "q2" else F.scalar(g) for g in gammas]
    p = point(F, [(F.scalar(c), F.scalar(w)) for c, w in pairs], gs)
    assert endo_splitting_check(A, p)


def test_endomorphism_splitting_needs_the_locus():
    F = CycField(3)
    A = weyl(3)
    p = point(F, [(F.scalar(-1), F.one)], [F.zero])
    with pytest.raises(OutsideAzumayaLocus):
        endo_splitting_check(A, p)
