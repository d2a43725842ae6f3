"""Auslander-Reiten quivers of representation-finite path algebras.

The AR quiver is knitted from the indecomposable projectives by repeatedly
applying the inverse translate, in topological order, until the injectives
are reached.  Every indecomposable appears exactly once and its dimension
vector is a positive root; both facts are asserted, not assumed.

Irreducible-map multiplicities are computed honestly as dim rad / rad^2 of
the Hom spaces, not read off mesh shapes, and the mesh dimension identity is
checked at every non-projective vertex.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import rank
from .modules import (
    HomSpace,
    Representation,
    ar_translate_inverse,
    compose,
    hom_basis,
    injective,
    morphism_flat,
    projective,
)
from .quiver import ValuedQuiver, classify_type, topological_order
from .roots import positive_roots


@dataclass(frozen=True, eq=False)
class ARNode:
    index: int
    module: Representation
    orbit: int          # which projective the translate orbit starts at
    power: int          # how many inverse translates from that projective

    @property
    def dims(self):
        return self.module.dims


@dataclass(eq=False)
class ARQuiver:
    quiver: ValuedQuiver
    p: int
    nodes: list[ARNode]
    arrows: dict[tuple[int, int], int]          # (src node, dst node) -> multiplicity
    translate: dict[int, int]                   # node -> node of its translate
    projectives: list[int]
    injectives: list[int]

    def node_for_dims(self, dims) -> ARNode:
        dims = tuple(dims)
        for node in self.nodes:
            if node.dims == dims:
                return node
        raise KeyError(f"no indecomposable with dimension vector {dims}")


def knit_ar_quiver(q: ValuedQuiver, p: int, rng: np.random.Generator) -> ARQuiver:
    """Knit the AR quiver of a representation-finite path algebra."""
    qt = classify_type(q)
    if not qt.representation_finite:
        raise ValueError("knitting requires a representation-finite quiver")

    roots = positive_roots(q)
    root_set = set(roots)
    order = topological_order(q)

    nodes: list[ARNode] = []
    translate: dict[int, int] = {}
    by_dims: dict[tuple[int, ...], int] = {}

    def add(module: Representation, orbit: int, power: int) -> int:
        dims = module.dims
        assert dims in root_set, f"knitted dims {dims} is not a positive root"
        assert dims not in by_dims, f"duplicate indecomposable at {dims}"
        idx = len(nodes)
        nodes.append(ARNode(idx, module, orbit, power))
        by_dims[dims] = idx
        return idx

    projectives: list[int] = []
    frontier: list[int] = []
    for orbit, v in enumerate(order):
        idx = add(projective(q, p, v), orbit, 0)
        projectives.append(idx)
        frontier.append(idx)

    injective_dims = {injective(q, p, v).dims: v for v in range(q.n)}
    injectives_found: dict[int, int] = {}

    while frontier:
        nxt: list[int] = []
        for idx in frontier:
            node = nodes[idx]
            if node.dims in injective_dims:
                injectives_found[injective_dims[node.dims]] = idx
                continue
            moved = ar_translate_inverse(node.module)
            assert moved.total > 0
            new = add(moved, node.orbit, node.power + 1)
            translate[new] = idx
            nxt.append(new)
        frontier = nxt

    assert len(nodes) == len(roots), (
        f"knitted {len(nodes)} indecomposables but found {len(roots)} positive roots")
    assert len(injectives_found) == q.n
    injectives = [injectives_found[v] for v in range(q.n)]

    hom_cache: dict[tuple[int, int], HomSpace] = {}

    def homs(i: int, j: int) -> HomSpace:
        if (i, j) not in hom_cache:
            hom_cache[(i, j)] = hom_basis(nodes[i].module, nodes[j].module)
        return hom_cache[(i, j)]

    for i in range(len(nodes)):
        assert homs(i, i).dim == 1, "indecomposables must be bricks here"

    # irreducible maps: multiplicity = dim rad(X, Y) - dim rad^2(X, Y);
    # between nonisomorphic indecomposables rad is all of Hom, and rad(X, X)
    # vanishes because End(X) is one dimensional
    arrows: dict[tuple[int, int], int] = {}
    for i in range(len(nodes)):
        for j in range(len(nodes)):
            if i == j:
                continue
            h = homs(i, j)
            if h.dim == 0:
                continue
            comps: list[np.ndarray] = []
            for k in range(len(nodes)):
                if k == i or k == j:
                    continue
                hik, hkj = homs(i, k), homs(k, j)
                if hik.dim == 0 or hkj.dim == 0:
                    continue
                for g in hkj.basis:
                    for f in hik.basis:
                        comps.append(morphism_flat(compose(g, f, p)))
            r2 = rank(np.stack(comps, axis=1), p) if comps else 0
            mult = h.dim - r2
            assert mult >= 0
            if mult > 0:
                arrows[(i, j)] = mult

    ar = ARQuiver(q, p, nodes, arrows, translate, projectives, injectives)
    _check_meshes(ar)
    return ar


def _check_meshes(ar: ARQuiver) -> None:
    """Mesh identity: dims of tau Y plus Y equal the weighted middle dims."""
    for y, ty in ar.translate.items():
        lhs = np.array(ar.nodes[y].dims) + np.array(ar.nodes[ty].dims)
        mid = np.zeros(ar.quiver.n, dtype=np.int64)
        for (i, j), mult in ar.arrows.items():
            if j == y:
                mid += mult * np.array(ar.nodes[i].dims)
        assert np.array_equal(lhs, mid), (
            f"mesh at node {y}: {tuple(lhs)} != {tuple(mid)}")


def indecomposable_for_root(ar: ARQuiver, root) -> Representation:
    """The unique indecomposable with the given dimension vector."""
    return ar.node_for_dims(root).module


def all_indecomposables(q: ValuedQuiver, p: int, rng: np.random.Generator) -> list[Representation]:
    """Every indecomposable module, sorted by (total dimension, dims)."""
    ar = knit_ar_quiver(q, p, rng)
    mods = [node.module for node in ar.nodes]
    return sorted(mods, key=lambda m: (m.total, m.dims))


def ar_quiver_dot(ar: ARQuiver) -> str:
    """Graphviz DOT rendering: solid irreducible maps, dashed translates."""
    lines = ["digraph ar_quiver {", '  rankdir="LR";', "  node [shape=box];"]
    for node in ar.nodes:
        label = ",".join(str(d) for d in node.dims)
        tags = []
        if node.index in ar.projectives:
            tags.append("P")
        if node.index in ar.injectives:
            tags.append("I")
        tag = (" " + "/".join(tags)) if tags else ""
        lines.append(f'  n{node.index} [label="({label}){tag}"];')
    for (i, j), mult in sorted(ar.arrows.items()):
        attr = f' [label="{mult}"]' if mult > 1 else ""
        lines.append(f"  n{i} -> n{j}{attr};")
    for y, ty in sorted(ar.translate.items()):
        lines.append(f"  n{y} -> n{ty} [style=dashed, constraint=false];")
    lines.append("}")
    return "\n".join(lines) + "\n"
