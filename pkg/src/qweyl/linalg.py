"""Sparse exact linear algebra over Q(q).

Vectors are dicts mapping arbitrary hashable keys to nonzero field
elements.  The workhorse is an incremental row-echelon span, used for
ideal saturation, invariant subspaces, and rank counts.  Everything
works over the exact cyclotomic scalars, so membership and rank are
decided, not estimated.
"""

from __future__ import annotations

from typing import Callable, Hashable, Iterable, Optional

from .cyclotomic import CycField, CycScalar

Vec = dict


def vec_add(a: Vec, b: Vec) -> Vec:
    out = dict(a)
    for k, v in b.items():
        s = out.get(k)
        s = v if s is None else s + v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def vec_scale(a: Vec, c: CycScalar) -> Vec:
    if not c:
        return {}
    return {k: c * v for k, v in a.items()}


def vec_sub_scaled(a: Vec, c: CycScalar, b: Vec) -> Vec:
    """a - c*b, dropping cancellations."""
    out = dict(a)
    for k, v in b.items():
        s = out.get(k)
        s = -(c * v) if s is None else s - c * v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


class SpanBasis:
    """A subspace of a based vector space, kept in reduced row echelon form.

    key_order fixes which coordinate of a vector counts as its pivot
    (the minimal key under the ordering).  Leaving it None uses the
    default ordering of the keys, which must then be mutually comparable.
    """

    def __init__(self, field: CycField, key_order: Optional[Callable[[Hashable], object]] = None):
        self.field = field
        self._key = key_order if key_order is not None else (lambda k: k)
        self._rows: dict = {}  # pivot key -> vector with that pivot scaled to 1

    def __len__(self) -> int:
        return len(self._rows)

    @property
    def rank(self) -> int:
        return len(self._rows)

    def rows(self) -> list:
        return [dict(v) for _, v in sorted(self._rows.items(), key=lambda kv: self._key(kv[0]))]

    def pivots(self) -> list:
        return sorted(self._rows, key=self._key)

    def reduce(self, vec: Vec) -> Vec:
        """Residue of vec modulo the span."""
        out = dict(vec)
        while out:
            p = min(out, key=self._key)
            row = self._rows.get(p)
            if row is None:
                # leading coordinate not a pivot: eliminate any interior hits
                return self._sweep_tail(out)
            out = vec_sub_scaled(out, out[p], row)
        return out

    def _sweep_tail(self, vec: Vec) -> Vec:
        out = dict(vec)
        hit = True
        while hit:
            hit = False
            for k in list(out):
                row = self._rows.get(k)
                if row is not None:
                    out = vec_sub_scaled(out, out[k], row)
                    hit = True
                    break
        return out

    def contains(self, vec: Vec) -> bool:
        return not self.reduce(vec)

    def add(self, vec: Vec) -> bool:
        """Adjoin vec to the span; True if the rank grew."""
        res = self.reduce(vec)
        if not res:
            return False
        p = min(res, key=self._key)
        inv = res[p].inverse()
        new_row = vec_scale(res, inv)
        # back-substitute into existing rows to keep full reduction
        for piv, row in list(self._rows.items()):
            c = row.get(p)
            if c is not None:
                self._rows[piv] = vec_sub_scaled(row, c, new_row)
        self._rows[p] = new_row
        return True

    def extend(self, vecs: Iterable[Vec]) -> int:
        n = 0
        for v in vecs:
            if self.add(v):
                n += 1
        return n

    def coordinates(self, vec: Vec) -> Optional[dict]:
        """Express vec over the pivot rows: {pivot_key: coefficient}, or None."""
        out = dict(vec)
        coords: dict = {}
        while out:
            p = min(out, key=self._key)
            row = self._rows.get(p)
            if row is None:
                rem = self._sweep_tail(out)
                if rem:
                    return None
                # _sweep_tail loses the coefficients; redo carefully
                return self._coords_slow(vec)
            coords[p] = out[p]
            out = vec_sub_scaled(out, out[p], row)
        return coords

    def _coords_slow(self, vec: Vec) -> Optional[dict]:
        out = dict(vec)
        coords: dict = {}
        hit = True
        while out and hit:
            hit = False
            for k in sorted(out, key=self._key):
                row = self._rows.get(k)
                if row is not None:
                    coords[k] = coords.get(k, self.field.zero) + out[k]
                    out = vec_sub_scaled(out, out[k], row)
                    hit = True
                    break
        return None if out else coords


def nullspace(rows: Iterable[Vec], unknowns: list, field: Optional[CycField] = None) -> list[Vec]:
    """Solution basis of the homogeneous system rows . x = 0.

    Each row maps unknown -> coefficient; unknowns fixes the elimination
    order.  Returns one solution vector per free unknown.
    """
    rows = list(rows)
    if field is None:
        field = _field_of(rows)
    order = {u: i for i, u in enumerate(unknowns)}
    span = SpanBasis(field, key_order=lambda k: order[k])
    for r in rows:
        if r:
            span.add(r)
    pivots = set(span.pivots())
    basis: list[Vec] = []
    piv_rows = {p: row for p, row in zip(span.pivots(), span.rows())}
    for u in unknowns:
        if u in pivots:
            continue
        sol: Vec = {u: field.one}
        for p, row in piv_rows.items():
            c = row.get(u)
            if c is not None:
                sol[p] = -c
        basis.append(sol)
    return basis


def _field_of(rows) -> CycField:
    for r in rows:
        for v in r.values():
            return v.field
    raise ValueError("cannot infer the field from an all-empty system")
