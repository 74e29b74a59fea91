"""PBW normal forms for the q-difference operator algebra on C^n.

Elements are stored in the ordered basis x^m d^k (all x's left of all
d's, indices ascending).  Multiplication reorders through exact closed
forms: the same-index crossing d^a x^b expands with Gaussian-binomial
coefficients in one step per exponent pair, and cross-index crossings
are pure scalars q^(pairing).  Everything happens over Q(q) with q a
primitive odd-order root of unity, so central and root-of-unity
phenomena are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct
from typing import Iterable, Optional, Sequence, Union

from .cyclotomic import CycField, CycScalar
from .lattice import TorusEmbedding

MonoKey = tuple[tuple[int, ...], tuple[int, ...]]


class PBWAlgebra:
    """D_q(C^n) for a fixed field Q(q) and torus weight data."""

    def __init__(self, field: CycField, emb: TorusEmbedding):
        if emb.n < 1:
            raise ValueError("at least one coordinate pair is required")
        self.field = field
        self.emb = emb
        self.n = emb.n
        self.pairings = emb.pairing_matrix()

    # -- construction ------------------------------------------------------

    def zero(self) -> "PBWElement":
        return PBWElement(self, {})

    def one(self) -> "PBWElement":
        return self.scalar_element(1)

    def scalar_element(self, c) -> "PBWElement":
        c = self.field.scalar(c)
        z = (0,) * self.n
        return PBWElement(self, {(z, z): c} if c else {})

    def monomial(self, m: Sequence[int], k: Sequence[int], coeff=1) -> "PBWElement":
        m, k = tuple(map(int, m)), tuple(map(int, k))
        if len(m) != self.n or len(k) != self.n:
            raise ValueError("exponent vectors must have length n")
        if any(e < 0 for e in m + k):
            raise ValueError("exponents must be nonnegative")
        c = self.field.scalar(coeff)
        return PBWElement(self, {(m, k): c} if c else {})

    def _check_index(self, i: int):
        if not (1 <= i <= self.n):
            raise IndexError(f"generator index {i} out of range 1..{self.n}")

    def x(self, i: int, e: int = 1) -> "PBWElement":
        self._check_index(i)
        m = [0] * self.n
        m[i - 1] = e
        return self.monomial(m, [0] * self.n)

    def d(self, i: int, e: int = 1) -> "PBWElement":
        self._check_index(i)
        k = [0] * self.n
        k[i - 1] = e
        return self.monomial([0] * self.n, k)

    def alpha(self, i: int) -> "PBWElement":
        return euler(self, i)

    # -- the relation table ------------------------------------------------

    def relations(self) -> dict[tuple[int, int], CycScalar]:
        """Scalars q_ij with gen_j gen_i = q_ij gen_i gen_j, 1-based, i < j."""
        out = {}
        for i in range(self.n):
            for j in range(i + 1, self.n):
                out[(i + 1, j + 1)] = self.field.qpow(self.pairings[j][i])
        return out

    # -- scalar caches -----------------------------------------------------

    def _gauss(self, nn: int, kk: int) -> CycScalar:
        """Gaussian binomial [nn choose kk] evaluated at q^2, division-free."""
        if kk < 0 or kk > nn:
            return self.field.zero
        cache = self.field.gauss_cache
        key = ("gb", nn, kk)
        hit = cache.get(key)
        if hit is not None:
            return hit
        if kk == 0 or kk == nn:
            val = self.field.one
        else:
            val = self._gauss(nn - 1, kk - 1) + self.field.qpow(2 * kk) * self._gauss(nn - 1, kk)
        cache[key] = val
        return val

    def _qfact_shifted(self, j: int) -> CycScalar:
        """Product of (q^{2i} - 1) for i = 1..j."""
        cache = self.field.gauss_cache
        key = ("fact", j)
        hit = cache.get(key)
        if hit is not None:
            return hit
        val = self.field.one if j == 0 else \
            self._qfact_shifted(j - 1) * (self.field.qpow(2 * j) - 1)
        cache[key] = val
        return val

    def _crossing(self, a: int, b: int) -> list[tuple[int, CycScalar]]:
        """Expansion d^a x^b = sum_j coeff_j x^(b-j) d^(a-j), same index.

        coeff_j = q^{2(a-j)(b-j)} [a j] [b j] prod_{i<=j}(q^{2i}-1),
        the Gaussian binomials taken at q^2.
        """
        cache = self.field.gauss_cache
        key = ("cross", a, b)
        hit = cache.get(key)
        if hit is not None:
            return hit
        out = []
        for j in range(min(a, b) + 1):
            c = (self.field.qpow(2 * (a - j) * (b - j))
                 * self._gauss(a, j) * self._gauss(b, j) * self._qfact_shifted(j))
            if c:
                out.append((j, c))
        cache[key] = out
        return out

    # -- multiplication core -------------------------------------------------

    def _tensor_twist(self, m: tuple[int, ...], k: tuple[int, ...]) -> int:
        # exponent t with x^m d^k = q^t * (interleaved tensor monomial)
        P = self.pairings
        tot = 0
        for i in range(self.n):
            ki = k[i]
            if not ki:
                continue
            for j in range(i + 1, self.n):
                if m[j]:
                    tot -= P[j][i] * ki * m[j]
        return tot

    def _mul_mono(self, m1, k1, m2, k2, c: CycScalar) -> dict[MonoKey, CycScalar]:
        P = self.pairings
        braid = 0
        for i in range(self.n):
            ti = m2[i] - k2[i]
            if not ti:
                continue
            for j in range(i + 1, self.n):
                braid += P[j][i] * (m1[j] - k1[j]) * ti
        e0 = self._tensor_twist(m1, k1) + self._tensor_twist(m2, k2) + braid
        per_index = [self._crossing(k1[i], m2[i]) for i in range(self.n)]
        out: dict[MonoKey, CycScalar] = {}
        for choice in iproduct(*per_index):
            rm = tuple(m1[i] + m2[i] - choice[i][0] for i in range(self.n))
            rk = tuple(k1[i] + k2[i] - choice[i][0] for i in range(self.n))
            coeff = c * self.field.qpow(e0 - self._tensor_twist(rm, rk))
            for _, cf in choice:
                coeff = coeff * cf
            key = (rm, rk)
            prev = out.get(key)
            s = coeff if prev is None else prev + coeff
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return out

    def multiply(self, a: "PBWElement", b: "PBWElement") -> "PBWElement":
        if a.algebra is not self or b.algebra is not self:
            raise ValueError("operands belong to a different algebra")
        acc: dict[MonoKey, CycScalar] = {}
        for (m1, k1), c1 in a.terms.items():
            for (m2, k2), c2 in b.terms.items():
                for key, cf in self._mul_mono(m1, k1, m2, k2, c1 * c2).items():
                    prev = acc.get(key)
                    s = cf if prev is None else prev + cf
                    if s:
                        acc[key] = s
                    else:
                        acc.pop(key, None)
        return PBWElement(self, acc)

    def normal_form(self, word: Iterable[tuple]) -> "PBWElement":
        """Product of generator letters ('x'|'d'|'a', index, exponent?).

        Letters multiply left to right; exponents default to 1 and must
        be nonnegative.
        """
        out = self.one()
        for letter in word:
            if len(letter) == 2:
                sym, idx = letter
                e = 1
            else:
                sym, idx, e = letter
            self._check_index(idx)
            if e < 0:
                raise ValueError("letter exponents must be nonnegative")
            if sym == "x":
                out = out * self.x(idx, e)
            elif sym == "d":
                out = out * self.d(idx, e)
            elif sym == "a":
                out = out * (self.alpha(idx) ** e)
            else:
                raise ValueError(f"unknown generator symbol {sym!r}")
        return out


class PBWElement:
    """Linear combination of ordered monomials x^m d^k over Q(q)."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: PBWAlgebra, terms: dict[MonoKey, CycScalar]):
        self.algebra = algebra
        self.terms = terms

    def __bool__(self):
        return bool(self.terms)

    def _coerce(self, other) -> Optional["PBWElement"]:
        if isinstance(other, PBWElement):
            return other if other.algebra is self.algebra else None
        if isinstance(other, (int, Fraction, CycScalar)):
            return self.algebra.scalar_element(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for key, c in o.terms.items():
            prev = out.get(key)
            s = c if prev is None else prev + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return PBWElement(self.algebra, out)

    __radd__ = __add__

    def __neg__(self):
        return PBWElement(self.algebra, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, PBWElement):
            return self.algebra.multiply(self, other)
        if isinstance(other, (int, Fraction, CycScalar)):
            c = self.algebra.field.scalar(other)
            if not c:
                return self.algebra.zero()
            return PBWElement(self.algebra, {k: c * v for k, v in self.terms.items()})
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, CycScalar)):
            return self * other
        return NotImplemented

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("only nonnegative integer powers are defined")
        out = self.algebra.one()
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base if e > 1 else base
            e >>= 1
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash((id(self.algebra), frozenset(self.terms.items())))

    # -- grading -----------------------------------------------------------

    def t_degree(self) -> Optional[tuple[int, ...]]:
        """Common T-weight m - k of all monomials, None if mixed."""
        n = self.algebra.n
        if not self.terms:
            return (0,) * n
        deg = None
        for (m, k) in self.terms:
            cur = tuple(m[i] - k[i] for i in range(n))
            if deg is None:
                deg = cur
            elif cur != deg:
                return None
        return deg

    def k_degree(self) -> Optional[tuple[int, ...]]:
        """Weight-lattice image of the T-weight, None if inhomogeneous."""
        s = self.t_degree()
        return None if s is None else self.algebra.emb.mdag_vec(s)

    def is_central(self) -> bool:
        A = self.algebra
        for i in range(1, A.n + 1):
            for g in (A.x(i), A.d(i)):
                if self * g != g * self:
                    return False
        return True

    # -- display -----------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (m, k) in sorted(self.terms, reverse=True):
            c = self.terms[(m, k)]
            factors = []
            for i, e in enumerate(m):
                if e == 1:
                    factors.append(f"x{i+1}")
                elif e:
                    factors.append(f"x{i+1}^{e}")
            for i, e in enumerate(k):
                if e == 1:
                    factors.append(f"d{i+1}")
                elif e:
                    factors.append(f"d{i+1}^{e}")
            cs = str(c)
            multi = (" + " in cs) or (" - " in cs)
            if not factors:
                parts.append(f"({cs})" if multi else cs)
            elif cs == "1":
                parts.append("*".join(factors))
            else:
                head = f"({cs})" if (multi or cs.startswith("-") or cs.startswith("(")) else cs
                parts.append(head + "*" + "*".join(factors))
        return " + ".join(parts)

    def __repr__(self):
        return f"<PBW {self}>"


def euler(algebra: PBWAlgebra, i: int) -> PBWElement:
    """The Euler operator 1 + x_i d_i."""
    algebra._check_index(i)
    m = [0] * algebra.n
    k = [0] * algebra.n
    m[i - 1] = 1
    k[i - 1] = 1
    return algebra.one() + algebra.monomial(m, k)


def power_alpha_ell(algebra: PBWAlgebra, i: int) -> PBWElement:
    """alpha_i^ell computed by multiplication; must equal 1 + x_i^ell d_i^ell."""
    ell = algebra.field.ell
    got = euler(algebra, i) ** ell
    m = [0] * algebra.n
    k = [0] * algebra.n
    m[i - 1] = ell
    k[i - 1] = ell
    expected = algebra.one() + algebra.monomial(m, k)
    if got != expected:
        raise ArithmeticError(f"alpha_{i}^{ell} deviates from 1 + x^{ell} d^{ell}")
    return got


def act_rank1(a: PBWElement, f: Union[dict, Sequence]) -> dict[int, CycScalar]:
    """Action of a (n = 1) on a polynomial in t.

    x acts by multiplication by t, d by the q^2-difference quotient
    (f(q^2 t) - f(t))/t, so x^m d^k sends t^j to
    prod_{s=j-k+1..j} (q^{2s} - 1) t^{j-k+m}.
    """
    A = a.algebra
    if A.n != 1:
        raise ValueError("the polynomial representation exists for n = 1 only")
    F = A.field
    if not isinstance(f, dict):
        f = {i: c for i, c in enumerate(f)}
    poly = {}
    for j, c in f.items():
        c = F.scalar(c)
        if c:
            poly[int(j)] = poly.get(int(j), F.zero) + c
    out: dict[int, CycScalar] = {}
    for ((m,), (k,)), cf in a.terms.items():
        for j, c in poly.items():
            if k > j:
                continue
            scal = cf * c
            for s in range(j - k + 1, j + 1):
                scal = scal * (F.qpow(2 * s) - 1)
            if not scal:
                continue
            key = j - k + m
            prev = out.get(key)
            tot = scal if prev is None else prev + scal
            if tot:
                out[key] = tot
            else:
                out.pop(key, None)
    return out


@dataclass
class QmmResult:
    ok: bool
    scalar: CycScalar
    exponent: int

    def __bool__(self):
        return self.ok


def verify_qmm(a: PBWElement, kind: str, r: Sequence[int]) -> QmmResult:
    """Check the quantum-moment-map identity for h = y^r or z^r against a.

    a must be T-homogeneous of weight s.  The action convention is
    y^r acting by q^{2 r.s} and z^r by pullback, so the claim is
    mu(h) a = q^{2e} a mu(h) with e the appropriate dot product.
    Negative entries of the alpha exponent are handled by clearing
    denominators: with u = u+ - u-, the identity becomes
    A+ a A- = q^{2e} A- a A+, checked exactly in the PBW engine.
    """
    A = a.algebra
    s = a.t_degree()
    if s is None:
        raise ValueError("verify_qmm needs a T-homogeneous element")
    r = tuple(int(v) for v in r)
    if kind == "y":
        if len(r) != A.n:
            raise ValueError("y exponents live in Z^n")
        u = r
        e = sum(r[i] * s[i] for i in range(A.n))
    elif kind == "z":
        if len(r) != A.emb.d:
            raise ValueError("z exponents live in Z^d")
        u = tuple(sum(A.emb.matrix[i][j] * r[j] for j in range(A.emb.d)) for i in range(A.n))
        ks = A.emb.mdag_vec(s)
        e = sum(r[j] * ks[j] for j in range(A.emb.d))
    else:
        raise ValueError("kind must be 'y' or 'z'")
    plus = A.one()
    minus = A.one()
    for i, ui in enumerate(u, start=1):
        if ui > 0:
            plus = plus * (A.alpha(i) ** ui)
        elif ui < 0:
            minus = minus * (A.alpha(i) ** (-ui))
    scalar = A.field.qpow(2 * e)
    lhs = plus * a * minus
    rhs = scalar * (minus * a * plus)
    return QmmResult(ok=(lhs == rhs), scalar=scalar, exponent=2 * e)
