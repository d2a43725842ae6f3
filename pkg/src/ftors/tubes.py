"""Non-homogeneous tubes of tame path algebras.

The regular simples sitting in tubes of rank at least two are located by an
exact root-theoretic scan: their dimension vectors are the positive real
roots of defect zero lying strictly inside the radical vector.  Modules are
realized by generic sampling certified by the brick test (a brick whose
dimension vector is a real root is the unique indecomposable for that root),
with a thin zero/one fallback.  Translate orbits of the found simples are the
tubes; rank, dimension sums and the cyclic extension pattern are asserted.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .modules import (
    Representation,
    ext_dim,
    hom_dim,
    make_rep,
    middle_terms,
    random_rep,
)
from .quiver import ValuedQuiver, classify_type
from .roots import (
    coxeter_transform,
    defect,
    quadratic_form,
    radical_vector,
)
from . import linalg as la

GENERIC_TRIES = 20


@dataclass(frozen=True, eq=False)
class Tube:
    """A translate orbit of regular simples; entry i+1 is the translate of
    entry i, cyclically."""

    quiver: ValuedQuiver
    p: int
    rank: int
    simples: tuple[Representation, ...]

    @property
    def dims(self) -> tuple[tuple[int, ...], ...]:
        return tuple(s.dims for s in self.simples)


def _real_regular_roots_inside_delta(q: ValuedQuiver) -> list[tuple[int, ...]]:
    """Positive real roots of defect zero strictly below the radical vector."""
    delta = radical_vector(q)
    ranges = [range(d + 1) for d in delta]
    out = []

    def scan(prefix: list[int]) -> None:
        if len(prefix) == q.n:
            x = tuple(prefix)
            if not any(x) or x == delta:
                return
            if quadratic_form(q, x) == 1 and defect(q, x) == 0:
                out.append(x)
            return
        for c in ranges[len(prefix)]:
            scan(prefix + [c])

    scan([])
    return sorted(out, key=lambda x: (sum(x), x))


def _thin_module(q: ValuedQuiver, p: int, x) -> Representation | None:
    if any(c > 1 for c in x):
        return None
    mats = []
    for ar in q.arrows:
        if x[ar.source] and x[ar.target]:
            mats.append([[1]])
        else:
            mats.append(la.zeros(x[ar.target], x[ar.source]))
    return make_rep(q, p, x, mats)


def module_for_real_root(q: ValuedQuiver, p: int, x,
                         rng: np.random.Generator) -> Representation:
    """The unique indecomposable with real-root dimension vector x.

    A brick with these dimensions is that indecomposable, so sampling needs
    no genericity argument, only a certified hit.
    """
    assert quadratic_form(q, x) == 1, f"{x} is not a real root"
    for _ in range(GENERIC_TRIES):
        cand = random_rep(q, p, x, rng)
        if hom_dim(cand, cand) == 1:
            return cand
    thin = _thin_module(q, p, x)
    if thin is not None and hom_dim(thin, thin) == 1:
        return thin
    raise RuntimeError(f"failed to realize the indecomposable for root {x}")


def find_regular_simples(q: ValuedQuiver, p: int,
                         rng: np.random.Generator) -> list[Tube]:
    """All tubes of rank at least two, each as a translate-ordered orbit."""
    qt = classify_type(q)
    if qt.family != "euclidean":
        raise ValueError("tubes are computed for tame quivers only")
    delta = radical_vector(q)

    candidates = _real_regular_roots_inside_delta(q)
    # keep only roots with no smaller candidate mapping nonzero into them:
    # a regular module with no maps from smaller regulars is regular simple
    modules = {x: module_for_real_root(q, p, x, rng) for x in candidates}
    simple_roots = []
    for x in candidates:
        receives = False
        for y in candidates:
            if y == x or sum(y) >= sum(x):
                continue
            if hom_dim(modules[y], modules[x]) > 0:
                receives = True
                break
        if not receives:
            simple_roots.append(x)

    tubes: list[Tube] = []
    used: set[tuple[int, ...]] = set()
    for x in simple_roots:
        if x in used:
            continue
        orbit = [x]
        y = tuple(int(c) for c in coxeter_transform(q, x))
        while y != x:
            assert y in modules and y in set(simple_roots), (
                f"translate orbit of {x} leaves the regular simples at {y}")
            orbit.append(y)
            y = tuple(int(c) for c in coxeter_transform(q, y))
        used.update(orbit)
        rank = len(orbit)
        assert rank >= 2, f"orbit of {x} is a fixed point below the radical vector"
        total = tuple(int(s) for s in np.sum([np.array(d) for d in orbit], axis=0))
        assert total == delta, f"tube through {x} sums to {total}, not {delta}"
        tube = Tube(q, p, rank, tuple(modules[d] for d in orbit))
        _check_tube(tube)
        tubes.append(tube)

    excess = sum(t.rank - 1 for t in tubes)
    assert excess <= q.n - 2, "too many exceptional tubes for a tame algebra"
    return sorted(tubes, key=lambda t: (t.rank, t.dims))


def _check_tube(tube: Tube) -> None:
    r = tube.rank
    for i in range(r):
        nxt = tube.simples[(i + 1) % r]
        cur = tube.simples[i]
        assert hom_dim(cur, cur) == 1
        assert ext_dim(cur, nxt) >= 1, (
            f"entry {i} has no extension by its translate")
        if r >= 2:
            assert hom_dim(cur, nxt) == 0


def tube_serial_module(tube: Tube, top_index: int, length: int,
                       rng: np.random.Generator) -> Representation:
    """The serial regular with the given top and number of simple layers.

    Layers from the top are successive translates of the top entry.  Built
    from the socle upward; every step is a one-dimensional extension space,
    which is asserted, so the middle term is forced.
    """
    r = tube.rank
    if not 1 <= length <= r:
        raise ValueError("serial length must be between 1 and the tube rank")
    layers = [tube.simples[(top_index + k) % r] for k in range(length)]
    current = layers[-1]
    for k in range(length - 2, -1, -1):
        top = layers[k]
        assert ext_dim(top, current) == 1, "serial step is not unique"
        middles = middle_terms(top, current, rng)
        assert len(middles) == 2, "expected exactly the split and one nonsplit middle"
        current = middles[1]
    return current


def tube_mouth_pair(tube: Tube, rng: np.random.Generator):
    """The Hom-orthogonal double-extension pair supported on one tube.

    One side is the first regular simple, the other the serial module on the
    remaining rank - 1 simples (top at the translate of the omitted one).
    """
    y = tube.simples[0]
    x = tube_serial_module(tube, 1, tube.rank - 1, rng)
    return x, y
