"""Central reductions of the operator algebra and their matrix models.

At a central character the algebra collapses to dimension ell^(2n);
on the locus where every 1 + lambda_i lambda_iv is nonzero it is a
full matrix algebra.  This module builds the finite fiber, the
rank-one ell x ell model, the braided-tensor untwisting that assembles
the n-factor model, explicit module bases, and the endomorphism
splitting check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct
from typing import Optional, Sequence

from .cyclotomic import CycField, CycScalar
from .lattice import TorusEmbedding
from .linalg import SpanBasis
from .pbw import PBWAlgebra, PBWElement


class OutsideAzumayaLocus(ValueError):
    """Raised when a construction needs 1 + c_i w_i != 0 and it vanishes."""


# ---------------------------------------------------------------------------
# sparse matrices over the cyclotomic field


class Matrix:
    """Sparse square matrix over Q(q); zero entries are absent."""

    __slots__ = ("field", "size", "entries")

    def __init__(self, field: CycField, size: int, entries: Optional[dict] = None):
        self.field = field
        self.size = size
        self.entries = {k: v for k, v in (entries or {}).items() if v}

    @classmethod
    def zeros(cls, field: CycField, size: int) -> "Matrix":
        return cls(field, size)

    @classmethod
    def identity(cls, field: CycField, size: int) -> "Matrix":
        return cls(field, size, {(r, r): field.one for r in range(size)})

    @classmethod
    def from_diag(cls, field: CycField, diag: Sequence) -> "Matrix":
        ent = {}
        for r, v in enumerate(diag):
            v = field.scalar(v)
            if v:
                ent[(r, r)] = v
        return cls(field, len(diag), ent)

    def __bool__(self):
        return bool(self.entries)

    def __getitem__(self, rc):
        return self.entries.get(rc, self.field.zero)

    def __add__(self, other):
        out = dict(self.entries)
        for k, v in other.entries.items():
            s = out.get(k)
            s = v if s is None else s + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return Matrix(self.field, self.size, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "Matrix":
        c = self.field.scalar(c)
        if not c:
            return Matrix(self.field, self.size)
        return Matrix(self.field, self.size, {k: c * v for k, v in self.entries.items()})

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if other.size != self.size:
                raise ValueError("size mismatch")
            rows: dict[int, list] = {}
            for (r, c), v in other.entries.items():
                rows.setdefault(r, []).append((c, v))
            out: dict[tuple[int, int], CycScalar] = {}
            for (r, c), v in self.entries.items():
                for c2, v2 in rows.get(c, ()):
                    key = (r, c2)
                    s = out.get(key)
                    p = v * v2
                    s = p if s is None else s + p
                    if s:
                        out[key] = s
                    else:
                        out.pop(key, None)
            return Matrix(self.field, self.size, out)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative matrix powers are not supported")
        out = Matrix.identity(self.field, self.size)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base if e > 1 else base
            e >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.size == other.size and self.entries == other.entries

    def vec(self) -> dict:
        """Entries as a sparse vector keyed by (row, col), for span math."""
        return dict(self.entries)

    def __repr__(self):
        return f"<Matrix {self.size}x{self.size}, {len(self.entries)} nonzero>"


def digits(idx: int, ell: int, n: int) -> tuple[int, ...]:
    """Mixed-radix digits of idx, first factor fastest."""
    out = []
    for _ in range(n):
        out.append(idx % ell)
        idx //= ell
    return tuple(out)


def undigits(ds: Sequence[int], ell: int) -> int:
    idx = 0
    for v in reversed(tuple(ds)):
        idx = idx * ell + (v % ell)
    return idx


# ---------------------------------------------------------------------------
# fiber points and the finite-dimensional quotient


@dataclass(frozen=True)
class FiberPoint:
    """A central character: values (c_i, w_i) of x_i^ell, d_i^ell, plus roots.

    gamma_i must satisfy gamma_i^ell = 1 + c_i w_i exactly.  b_i is an
    optional ell-th root of c_i; the matrix model never consumes it on
    the c != 0 branch, so points where c has no root in Q(q) stay usable.
    """

    field: CycField
    lam: tuple[tuple[CycScalar, CycScalar], ...]
    gamma: tuple[CycScalar, ...]
    b: tuple[Optional[CycScalar], ...] = None  # type: ignore[assignment]

    def __post_init__(self):
        F = self.field
        lam = tuple((F.scalar(c), F.scalar(w)) for c, w in self.lam)
        object.__setattr__(self, "lam", lam)
        gamma = tuple(F.scalar(g) for g in self.gamma)
        object.__setattr__(self, "gamma", gamma)
        if len(gamma) != len(lam):
            raise ValueError("one gamma per coordinate pair")
        b = self.b
        if b is None:
            b = (None,) * len(lam)
        b = tuple(None if v is None else F.scalar(v) for v in b)
        object.__setattr__(self, "b", b)
        if len(b) != len(lam):
            raise ValueError("one b (or None) per coordinate pair")
        ell = F.ell
        for i, ((c, w), g) in enumerate(zip(lam, gamma)):
            if g ** ell != F.one + c * w:
                raise ValueError(f"gamma_{i+1}^{ell} != 1 + c*w")
            if b[i] is not None and b[i] ** ell != c:
                raise ValueError(f"b_{i+1}^{ell} != c")

    @property
    def n(self) -> int:
        return len(self.lam)

    def in_azumaya_locus(self) -> bool:
        F = self.field
        return all(bool(F.one + c * w) for c, w in self.lam)


def in_azumaya_locus(p: FiberPoint) -> bool:
    return p.in_azumaya_locus()


class FiberElement:
    """Element of the ell^(2n)-dimensional quotient, exponents < ell."""

    __slots__ = ("parent", "terms")

    def __init__(self, parent: "FiberAlgebra", terms: dict):
        self.parent = parent
        self.terms = {k: v for k, v in terms.items() if v}

    def __bool__(self):
        return bool(self.terms)

    def _coerce(self, other):
        if isinstance(other, FiberElement):
            return other if self.parent.compatible(other.parent) else None
        if isinstance(other, (int, Fraction, CycScalar)):
            return self.parent.scalar_element(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for k, v in o.terms.items():
            s = out.get(k)
            s = v if s is None else s + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return FiberElement(self.parent, out)

    __radd__ = __add__

    def __neg__(self):
        return FiberElement(self.parent, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else o + (-self)

    def __mul__(self, other):
        if isinstance(other, FiberElement):
            if not self.parent.compatible(other.parent):
                raise ValueError("elements of different fibers")
            return self.parent.multiply(self, other)
        if isinstance(other, (int, Fraction, CycScalar)):
            c = self.parent.algebra.field.scalar(other)
            return FiberElement(self.parent, {k: c * v for k, v in self.terms.items()})
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, CycScalar)):
            return self * other
        return NotImplemented

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not supported")
        out = self.parent.one()
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def vec(self) -> dict:
        return dict(self.terms)

    def __str__(self):
        return str(self.lift())

    def lift(self) -> PBWElement:
        return PBWElement(self.parent.algebra, dict(self.terms))

    def __repr__(self):
        return f"<Fiber {self}>"


class FiberAlgebra:
    """The quotient of the operator algebra at a central character."""

    def __init__(self, algebra: PBWAlgebra, point: FiberPoint):
        if point.n != algebra.n:
            raise ValueError("fiber point rank differs from algebra rank")
        if point.field.ell != algebra.field.ell:
            raise ValueError("fiber point lives over a different field")
        self.algebra = algebra
        self.point = point
        self.ell = algebra.field.ell
        self.n = algebra.n

    def compatible(self, other: "FiberAlgebra") -> bool:
        return self is other or (self.algebra is other.algebra and self.point == other.point)

    def dimension(self) -> int:
        return self.ell ** (2 * self.n)

    def basis_keys(self):
        rng = range(self.ell)
        for m in iproduct(rng, repeat=self.n):
            for k in iproduct(rng, repeat=self.n):
                yield (m, k)

    def reduce(self, a: PBWElement) -> FiberElement:
        """Fold exponents with x_i^ell = c_i and d_i^ell = w_i."""
        if a.algebra is not self.algebra:
            raise ValueError("element of a different algebra")
        F = self.algebra.field
        ell = self.ell
        out: dict = {}
        for (m, k), c in a.terms.items():
            coeff = c
            rm, rk = [], []
            for i in range(self.n):
                ci, wi = self.point.lam[i]
                qm, re = divmod(m[i], ell)
                if qm:
                    coeff = coeff * ci ** qm
                rm.append(re)
                qk, rke = divmod(k[i], ell)
                if qk:
                    coeff = coeff * wi ** qk
                rk.append(rke)
                if not coeff:
                    break
            if not coeff:
                continue
            key = (tuple(rm), tuple(rk))
            prev = out.get(key)
            s = coeff if prev is None else prev + coeff
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return FiberElement(self, out)

    def lift(self, e: FiberElement) -> PBWElement:
        return e.lift()

    def multiply(self, a: FiberElement, b: FiberElement) -> FiberElement:
        return self.reduce(self.algebra.multiply(a.lift(), b.lift()))

    def zero(self) -> FiberElement:
        return FiberElement(self, {})

    def one(self) -> FiberElement:
        return self.scalar_element(1)

    def scalar_element(self, c) -> FiberElement:
        return self.reduce(self.algebra.scalar_element(c))

    def monomial(self, m, k, coeff=1) -> FiberElement:
        return self.reduce(self.algebra.monomial(m, k, coeff))

    def x(self, i: int, e: int = 1) -> FiberElement:
        return self.reduce(self.algebra.x(i, e))

    def d(self, i: int, e: int = 1) -> FiberElement:
        return self.reduce(self.algebra.d(i, e))

    def alpha(self, i: int) -> FiberElement:
        return self.reduce(self.algebra.alpha(i))

    def from_vec(self, vec: dict) -> FiberElement:
        return FiberElement(self, dict(vec))

    def basis_elements(self):
        for key in self.basis_keys():
            yield FiberElement(self, {key: self.algebra.field.one})

    def left_ideal(self, gens: Sequence[FiberElement]) -> SpanBasis:
        """Row space of b*g over all basis monomials b and generators g."""
        span = SpanBasis(self.algebra.field)
        for g in gens:
            for b in self.basis_elements():
                v = (b * g).vec()
                if v:
                    span.add(v)
        return span

    def two_sided_ideal(self, gens: Sequence[FiberElement]) -> SpanBasis:
        """Saturate span <- span + G*span + span*G until stable."""
        span = SpanBasis(self.algebra.field)
        queue = [g for g in gens if g]
        mult = [self.x(i) for i in range(1, self.n + 1)] + \
               [self.d(i) for i in range(1, self.n + 1)]
        while queue:
            e = queue.pop()
            if not span.add(e.vec()):
                continue
            for g in mult:
                queue.append(g * e)
                queue.append(e * g)
        return span


def reduce_to_fiber(a: PBWElement, p: FiberPoint) -> FiberElement:
    return FiberAlgebra(a.algebra, p).reduce(a)


# ---------------------------------------------------------------------------
# rank one matrix model


@dataclass
class Rank1Rep:
    field: CycField
    x: Matrix
    d: Matrix
    alpha: Matrix

    def as_dict(self) -> dict[str, Matrix]:
        return {"x": self.x, "d": self.d, "alpha": self.alpha}


def rank1_matrix_rep(field: CycField, c, w, b=None, gamma=None) -> Rank1Rep:
    """The ell x ell representation at a rank-one fiber point.

    Row r carries the alpha eigenvalue gamma*q^(-2r); x lowers the row
    index (cyclically) and d raises it.  The entries are pinned by
    d_r * xi_{r+1} = gamma q^{-2r} - 1 together with the central values
    prod xi = c and prod delta = w.
    """
    F = field
    ell = F.ell
    c, w = F.scalar(c), F.scalar(w)
    if gamma is None:
        raise ValueError("gamma (an ell-th root of 1 + c*w) is required")
    gamma = F.scalar(gamma)
    if not (F.one + c * w):
        raise OutsideAzumayaLocus("1 + c*w = 0: no matrix model at this point")
    if gamma ** ell != F.one + c * w:
        raise ValueError("gamma^ell != 1 + c*w")
    if b is not None and F.scalar(b) ** ell != c:
        raise ValueError("b^ell != c")

    alpha = Matrix.from_diag(F, [gamma * F.qpow(-2 * r) for r in range(ell)])
    xi = [F.one] * ell      # x e_s = xi_s e_{s-1 mod ell}
    delta = [F.zero] * ell  # d e_r = delta_r e_{r+1 mod ell}
    if c:
        xi[0] = c
        for r in range(ell - 1):
            delta[r] = gamma * F.qpow(-2 * r) - 1
        delta[ell - 1] = (gamma * F.qpow(2) - 1) / c
    else:
        # gamma is a root of unity: gamma = q^{-2 k0}
        k0 = next(k for k in range(ell) if gamma == F.qpow(-2 * k))
        r0 = (1 - k0) % ell
        xi[r0] = F.zero
        for r in range(ell):
            if r != (r0 - 1) % ell:
                delta[r] = gamma * F.qpow(-2 * r) - 1
        delta[(r0 - 1) % ell] = w / ell

    xmat = Matrix(F, ell, {((s - 1) % ell, s): xi[s] for s in range(ell)})
    dmat = Matrix(F, ell, {((r + 1) % ell, r): delta[r] for r in range(ell)})
    return Rank1Rep(field=F, x=xmat, d=dmat, alpha=alpha)


# ---------------------------------------------------------------------------
# graded matrix algebras and untwisting


@dataclass(frozen=True)
class GradedMatrixAlgebra:
    """Mat(size) with basis rows graded by vectors mod ell.

    grades[r] is the degree vector of the r-th basis row, so the
    elementary matrix E_{r,s} is homogeneous of degree
    grades[r] - grades[s], additive under products.
    """

    field: CycField
    size: int
    grades: tuple[tuple[int, ...], ...]
    form: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.grades) != self.size:
            raise ValueError("one grade vector per basis row")

    def deg(self, r: int, s: int) -> tuple[int, ...]:
        ell = self.field.ell
        return tuple((a - b) % ell for a, b in zip(self.grades[r], self.grades[s]))

    def pairing(self, u: Sequence[int], v: Sequence[int]) -> int:
        return sum(u[a] * self.form[a][b] * v[b]
                   for a in range(len(u)) for b in range(len(v)))


@dataclass
class UntwistMap:
    """phi(E (x) Y) = E (x) Delta(E) Y between tensor-product algebras.

    Source: the trivial (componentwise) product on Mat(s1*s2); target:
    the braided product twisted by q^(pairing of degrees).  forward and
    backward are mutually inverse linear maps; forward is multiplicative
    from the trivial product to the braided one.
    """

    left: GradedMatrixAlgebra
    right: GradedMatrixAlgebra

    def _scale(self, mat: Matrix, sign: int) -> Matrix:
        F = self.left.field
        s1 = self.left.size
        out = {}
        for (r, c), v in mat.entries.items():
            r1, r2 = r % s1, r // s1
            c1, c2 = c % s1, c // s1
            g = self.left.deg(r1, c1)
            e = self.right.pairing(self.right.grades[r2], g)
            out[(r, c)] = v * F.qpow(sign * e)
        return Matrix(F, mat.size, out)

    def forward(self, mat: Matrix) -> Matrix:
        return self._scale(mat, +1)

    def backward(self, mat: Matrix) -> Matrix:
        return self._scale(mat, -1)

    def braided_product(self, a: Matrix, b: Matrix) -> Matrix:
        """(E (x) Y)(E' (x) Y') = q^{<deg Y, deg E'>} EE' (x) YY'."""
        F = self.left.field
        s1 = self.left.size
        out: dict = {}
        for (r, c), v in a.entries.items():
            r1, r2 = r % s1, r // s1
            c1, c2 = c % s1, c // s1
            degY = self.right.deg(r2, c2)
            for (r_, c_), v_ in b.entries.items():
                p1, p2 = r_ % s1, r_ // s1
                if p1 != c1 or p2 != c2:
                    continue
                q1, q2 = c_ % s1, c_ // s1
                degEp = self.left.deg(p1, q1)
                e = sum(degY[i] * self.left.form[i][j] * degEp[j]
                        for i in range(len(degY)) for j in range(len(degEp)))
                key = (r1 + s1 * r2, q1 + s1 * q2)
                term = v * v_ * F.qpow(e)
                prev = out.get(key)
                s = term if prev is None else prev + term
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return Matrix(F, a.size, out)


def untwist_iso(left: GradedMatrixAlgebra, right: GradedMatrixAlgebra) -> UntwistMap:
    if left.field.ell != right.field.ell:
        raise ValueError("factors over different fields")
    return UntwistMap(left=left, right=right)


# ---------------------------------------------------------------------------
# the full matrix model on ell^n dimensions


@dataclass
class FullRep:
    field: CycField
    emb: TorusEmbedding
    size: int
    x: tuple[Matrix, ...]
    d: tuple[Matrix, ...]
    alpha: tuple[Matrix, ...]

    def of_element(self, a) -> Matrix:
        """Image of a PBW or fiber element under the representation."""
        if isinstance(a, FiberElement):
            terms = a.terms
        elif isinstance(a, PBWElement):
            terms = a.terms
        else:
            raise TypeError("expected a PBW or fiber element")
        F = self.field
        out = Matrix.zeros(F, self.size)
        for (m, k), c in terms.items():
            acc = Matrix.identity(F, self.size).scale(c)
            for i, e in enumerate(m):
                if e:
                    acc = acc * (self.x[i] ** e)
            for i, e in enumerate(k):
                if e:
                    acc = acc * (self.d[i] ** e)
            out = out + acc
        return out


def full_matrix_rep(point: FiberPoint, emb: TorusEmbedding) -> FullRep:
    """Assemble the n-factor model by untwisting the braided tensor.

    Each factor contributes its rank-one matrices; placing the factor-i
    matrix G against diagonal context t scales the (a, b) entry by
    q^{-(a-b) * sum_{j>i} t_j P_ji}, the scalar that converts braided
    tensor monomials into plain Kronecker products.
    """
    F = point.field
    if emb.n != point.n:
        raise ValueError("embedding rank differs from point rank")
    if not point.in_azumaya_locus():
        raise OutsideAzumayaLocus("point has 1 + c_i w_i = 0")
    ell = F.ell
    n = point.n
    size = ell ** n
    P = emb.pairing_matrix()
    local = [rank1_matrix_rep(F, c, w, point.b[i], point.gamma[i])
             for i, (c, w) in enumerate(point.lam)]

    def place(i: int, G: Matrix) -> Matrix:
        out: dict = {}
        for t in iproduct(range(ell), repeat=n - 1):
            ctx = list(t[:i]) + [0] + list(t[i:])
            twist = sum(ctx[j] * P[j][i] for j in range(i + 1, n))
            for (a, b), v in G.entries.items():
                ctx[i] = a
                row = undigits(ctx, ell)
                ctx[i] = b
                col = undigits(ctx, ell)
                out[(row, col)] = v * F.qpow(-(a - b) * twist)
        return Matrix(F, size, out)

    xs = tuple(place(i, local[i].x) for i in range(n))
    ds = tuple(place(i, local[i].d) for i in range(n))
    als = tuple(place(i, local[i].alpha) for i in range(n))
    return FullRep(field=F, emb=emb, size=size, x=xs, d=ds, alpha=als)


# ---------------------------------------------------------------------------
# module bases and the splitting check


@dataclass
class PPrimeModule:
    """Monomial basis of the cyclic module D_lambda / sum D_lambda (alpha_i - gamma_i)."""

    point: FiberPoint
    factor_bases: tuple[tuple[tuple[int, int], ...], ...]

    @property
    def dimension(self) -> int:
        out = 1
        for fb in self.factor_bases:
            out *= len(fb)
        return out

    def basis_keys(self):
        """Exponent pairs (m, k) of the product basis."""
        n = len(self.factor_bases)
        for combo in iproduct(*self.factor_bases):
            m = tuple(c[0] for c in combo)
            k = tuple(c[1] for c in combo)
            yield (m, k)


def pprime_module(point: FiberPoint) -> PPrimeModule:
    """Per-factor bases: all powers of x when gamma^ell != 1, else the
    split family {1, x, ..., x^(ell-k-1), d, ..., d^k} for gamma = q^(2k)."""
    F = point.field
    ell = F.ell
    bases = []
    for (c, w), g in zip(point.lam, point.gamma):
        if g ** ell != F.one:
            fb = tuple((j, 0) for j in range(ell))
        else:
            k = next(k for k in range(ell) if g == F.qpow(2 * k))
            fb = tuple((j, 0) for j in range(ell - k)) + tuple((0, j) for j in range(1, k + 1))
        bases.append(fb)
    return PPrimeModule(point=point, factor_bases=tuple(bases))


def endo_splitting_check(algebra: PBWAlgebra, point: FiberPoint) -> bool:
    """Bijectivity of the action map D_lambda -> End(D_P').

    Builds the quotient module abstractly (left ideal by the shifted
    Euler operators, reduced basis), then spans the ell^(2n) action
    matrices of the fiber basis; true iff their span has full dimension
    ell^(2n), i.e. the map is injective hence bijective.
    """
    if not point.in_azumaya_locus():
        raise OutsideAzumayaLocus("splitting is only defined over the locus")
    fib = FiberAlgebra(algebra, point)
    F = algebra.field
    ell, n = fib.ell, fib.n
    gens = [fib.alpha(i + 1) - point.gamma[i] for i in range(n)]
    ideal = fib.left_ideal(gens)
    dim_module = ell ** (2 * n) - ideal.rank
    if dim_module != ell ** n:
        return False
    pivots = set(ideal.pivots())
    module_basis = [key for key in fib.basis_keys() if key not in pivots]
    coord = {key: idx for idx, key in enumerate(module_basis)}

    def project(e: FiberElement) -> dict[int, CycScalar]:
        res = ideal.reduce(e.vec())
        return {coord[k]: v for k, v in res.items()}

    span = SpanBasis(F, key_order=lambda rc: rc)
    full = 0
    for key in fib.basis_keys():
        u = FiberElement(fib, {key: F.one})
        vec: dict = {}
        for j, bkey in enumerate(module_basis):
            img = project(u * FiberElement(fib, {bkey: F.one}))
            for i, v in img.items():
                vec[(i, j)] = v
        if span.add(vec):
            full += 1
    return full == ell ** (2 * n)
