"""Dimension-vector arithmetic attached to a quiver.

Everything here is exact integer work on the Euler form: the bilinear form
itself, the Coxeter transform that tracks the translate on dimension vectors,
positive root enumeration in finite type, and the radical/defect data of tame
type.  No representations are built in this module.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cache
from itertools import product
from math import gcd

import numpy as np

from .quiver import (
    QuiverError,
    ValuedQuiver,
    classify_type,
    projective_dimvec,
    radical_vector,
)

DimVector = tuple[int, ...]

ROOT_COORD_BOUND = 6   # no positive root of rank <= 8 exceeds this coordinate


@cache
def euler_matrix(q: ValuedQuiver) -> np.ndarray:
    """E with E[i][i] = 1 and E[i][j] = -sum of first valuation components."""
    e = np.eye(q.n, dtype=np.int64)
    for ar in q.arrows:
        e[ar.source, ar.target] -= ar.a
    e.setflags(write=False)
    return e


def euler_form(q: ValuedQuiver, x, y) -> int:
    x = np.asarray(x, dtype=np.int64)
    y = np.asarray(y, dtype=np.int64)
    if x.shape != (q.n,) or y.shape != (q.n,):
        raise ValueError("dimension vector length does not match the quiver")
    return int(x @ euler_matrix(q) @ y)


def quadratic_form(q: ValuedQuiver, x) -> int:
    return euler_form(q, x, x)


def _int_inverse(m: np.ndarray) -> np.ndarray:
    """Exact inverse of an integer matrix that is unimodular over Z."""
    n = m.shape[0]
    work = [[Fraction(int(m[i, j])) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
            for i in range(n)]
    for col in range(n):
        pr = next(r for r in range(col, n) if work[r][col] != 0)
        work[col], work[pr] = work[pr], work[col]
        piv = work[col][col]
        work[col] = [x / piv for x in work[col]]
        for r in range(n):
            if r != col and work[r][col] != 0:
                f = work[r][col]
                work[r] = [x - f * y for x, y in zip(work[r], work[col])]
    inv = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            val = work[i][n + j]
            if val.denominator != 1:
                raise ValueError("matrix is not unimodular over the integers")
            inv[i, j] = int(val)
    return inv


@cache
def coxeter_matrix(q: ValuedQuiver) -> np.ndarray:
    """Phi with <y, Phi x> = -<x, y>; dim tau M = Phi (dim M) off projectives."""
    e = euler_matrix(q)
    phi = (-_int_inverse(np.array(e)) @ e.T).astype(np.int64)
    phi.setflags(write=False)
    return phi


@cache
def coxeter_inverse(q: ValuedQuiver) -> np.ndarray:
    inv = _int_inverse(np.array(coxeter_matrix(q)))
    inv.setflags(write=False)
    return inv


def coxeter_transform(q: ValuedQuiver, x, inverse: bool = False) -> DimVector:
    x = np.asarray(x, dtype=np.int64)
    if x.shape != (q.n,):
        raise ValueError("dimension vector length does not match the quiver")
    m = coxeter_inverse(q) if inverse else coxeter_matrix(q)
    return tuple(int(v) for v in m @ x)


def reflection_transform(q: ValuedQuiver, x, v: int) -> DimVector:
    """Simple reflection s_v of a dimension vector in the symmetrized form."""
    c = np.zeros((q.n,), dtype=np.int64)
    for ar in q.arrows:
        if ar.source == v:
            c[ar.target] += ar.a
        if ar.target == v:
            c[ar.source] += ar.a
    x = np.asarray(x, dtype=np.int64).copy()
    x[v] = -x[v] + int(c @ x)
    return tuple(int(t) for t in x)


def positive_roots(q: ValuedQuiver) -> list[DimVector]:
    """All positive roots of a representation-finite quiver.

    Bounded exhaustive scan: coordinates are searched one past the bound and
    the bound itself must never be exceeded, which certifies that the scan
    window was large enough.
    """
    t = classify_type(q)
    if not t.representation_finite:
        raise QuiverError("positive roots are enumerated for Dynkin quivers only")
    if not q.is_path_algebra():
        raise QuiverError("root enumeration supports path algebras only")
    if q.n > 8:
        raise QuiverError("root scan supports rank at most 8")
    e = np.array(euler_matrix(q))
    limit = ROOT_COORD_BOUND + 1
    coords = np.arange(limit + 1, dtype=np.int64)
    # chunk over leading coordinates so the rank-8 scan stays inside memory
    head = max(0, q.n - 6)
    tail = q.n - head
    grids = np.meshgrid(*([coords] * tail), indexing="ij")
    base = np.stack([g.ravel() for g in grids], axis=1)
    roots = []
    for prefix in product(range(limit + 1), repeat=head):
        if head:
            lead = np.tile(np.asarray(prefix, dtype=np.int64), (base.shape[0], 1))
            pts = np.hstack([lead, base])
        else:
            pts = base
        vals = np.einsum("ij,jk,ik->i", pts, e, pts)
        mask = (vals == 1) & (pts.sum(axis=1) > 0)
        roots.extend(tuple(int(c) for c in row) for row in pts[mask])
    if any(max(r) > ROOT_COORD_BOUND for r in roots):
        raise AssertionError("root scan boundary attained; bound too small")
    return sorted(roots, key=lambda r: (sum(r), r))


@cache
def defect_linear_form(q: ValuedQuiver) -> tuple[int, ...]:
    """Normalized defect functional <delta, -> of a tame quiver.

    Scaled to a primitive integer form; the sign convention makes the defect
    of every projective non-positive (and negative somewhere), which is
    checked against path-count dimension vectors.
    """
    delta = np.asarray(radical_vector(q), dtype=np.int64)
    form = delta @ euler_matrix(q)
    g = 0
    for x in form:
        g = gcd(g, abs(int(x)))
    if g == 0:
        raise QuiverError("degenerate defect form")
    form = form // g
    proj = [int(form @ np.asarray(projective_dimvec(q, i), dtype=np.int64)) for i in range(q.n)]
    if q.is_path_algebra():
        if any(d > 0 for d in proj) or all(d == 0 for d in proj):
            raise AssertionError("defect sign convention violated on projectives")
    return tuple(int(x) for x in form)


def defect(q: ValuedQuiver, x) -> int:
    form = np.asarray(defect_linear_form(q), dtype=np.int64)
    x = np.asarray(x, dtype=np.int64)
    if x.shape != (q.n,):
        raise ValueError("dimension vector length does not match the quiver")
    return int(form @ x)
