"""Explicit quiver representations over F_p and the module-level toolbox.

A representation stores one matrix per arrow, shaped (dim at target, dim at
source), over an explicitly carried prime modulus.  On top of that sit the
exact workhorses: Hom spaces by intertwiner systems, Ext dimensions through
the hereditary identity, trace submodules and generation tests, randomized
Fitting decomposition with an honest inconclusive outcome, normalization,
reflection functors, the translate DTr computed from a minimal projective
presentation, universal extensions by simples, and enumeration of extension
middle terms.

Only valuation-(1, 1) quivers (path algebras, parallel arrows allowed) are
accepted here; valued arrows live purely at the numerical level.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cache

import numpy as np

from . import linalg as la
from .quiver import (
    ValuedQuiver,
    arrows_in,
    arrows_out,
    sorted_with_perm,
    topological_order,
    Subquiver,
)
from .roots import euler_form


class DecompositionInconclusive(RuntimeError):
    """The splitting budget ran out without a local-ring certificate."""


class ExtensionCapError(RuntimeError):
    """An extension-class enumeration would exceed the configured cap."""


DECOMPOSE_BUDGET = 40
ISO_TRIES = 40
MIDDLE_CAP = 3125


# ---------------------------------------------------------------------------
# representation type and constructors

@dataclass(frozen=True, eq=False)
class Representation:
    quiver: ValuedQuiver
    p: int
    dims: tuple[int, ...]
    mats: tuple[np.ndarray, ...]

    @property
    def total(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.total == 0

    def __repr__(self):
        return f"Representation(dims={self.dims}, p={self.p})"


def make_rep(q: ValuedQuiver, p: int, dims, mats) -> Representation:
    la.check_prime(p)
    if not q.is_path_algebra():
        raise ValueError("explicit representations need all valuations equal to (1, 1)")
    dims = tuple(int(d) for d in dims)
    if len(dims) != q.n or any(d < 0 for d in dims):
        raise ValueError("bad dimension vector")
    if len(mats) != q.m:
        raise ValueError("need one matrix per arrow")
    fixed = []
    for ar, m in zip(q.arrows, mats):
        m = la.fparray(m, p)
        if m.shape != (dims[ar.target], dims[ar.source]):
            raise ValueError(
                f"arrow {ar.source + 1}->{ar.target + 1}: matrix shape {m.shape} "
                f"does not match ({dims[ar.target]}, {dims[ar.source]})")
        m.setflags(write=False)
        fixed.append(m)
    return Representation(q, p, dims, tuple(fixed))


def zero_rep(q: ValuedQuiver, p: int) -> Representation:
    return make_rep(q, p, (0,) * q.n, [la.zeros(0, 0)] * q.m)


@cache
def paths_from(q: ValuedQuiver, i: int) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """All paths starting at i, listed per end vertex as arrow-index tuples."""
    out: list[list[tuple[int, ...]]] = [[] for _ in range(q.n)]
    out[i].append(())
    for v in topological_order(q):
        for path in out[v]:
            for k, ar in arrows_out(q, v):
                out[ar.target].append(path + (k,))
    return tuple(tuple(ps) for ps in out)


def path_matrix(M: Representation, start: int, path: tuple[int, ...]) -> np.ndarray:
    m = la.identity(M.dims[start])
    for k in path:
        m = la.matmul(M.mats[k], m, M.p)
    return m


def standard_module(q: ValuedQuiver, p: int, kind: str, i: int) -> Representation:
    """The simple, indecomposable projective or indecomposable injective at i.

    Projectives and injectives use path bases: P(i) at v is spanned by the
    paths i -> v, I(i) at v by the paths v -> i, with arrows acting by path
    concatenation (transposed for the injective, which is the dual of the
    projective over the opposite quiver).
    """
    if not 0 <= i < q.n:
        raise ValueError(f"vertex {i + 1} out of range")
    if kind == "simple":
        dims = tuple(int(v == i) for v in range(q.n))
        mats = [la.zeros(dims[ar.target], dims[ar.source]) for ar in q.arrows]
        return make_rep(q, p, dims, mats)
    if kind == "projective":
        basis = paths_from(q, i)
        dims = tuple(len(ps) for ps in basis)
        mats = []
        for k, ar in enumerate(q.arrows):
            m = la.zeros(dims[ar.target], dims[ar.source])
            pos = {path: r for r, path in enumerate(basis[ar.target])}
            for c, path in enumerate(basis[ar.source]):
                m[pos[path + (k,)], c] = 1
            mats.append(m)
        return make_rep(q, p, dims, mats)
    if kind == "injective":
        dims = tuple(len(paths_from(q, v)[i]) for v in range(q.n))
        mats = []
        for k, ar in enumerate(q.arrows):
            u, w = ar.source, ar.target
            m = la.zeros(dims[w], dims[u])
            pos = {path: c for c, path in enumerate(paths_from(q, u)[i])}
            for r, path in enumerate(paths_from(q, w)[i]):
                full = (k,) + path
                if full in pos:
                    m[r, pos[full]] = 1
            mats.append(m)
        return make_rep(q, p, dims, mats)
    raise ValueError(f"unknown standard module kind {kind!r}")


def simple(q, p, i):
    return standard_module(q, p, "simple", i)


def projective(q, p, i):
    return standard_module(q, p, "projective", i)


def injective(q, p, i):
    return standard_module(q, p, "injective", i)


def direct_sum(parts: list[Representation]) -> Representation:
    if not parts:
        raise ValueError("direct_sum of nothing; use zero_rep")
    q, p = parts[0].quiver, parts[0].p
    if any(part.quiver != q or part.p != p for part in parts):
        raise ValueError("summands live over different quivers or moduli")
    dims = tuple(sum(part.dims[v] for part in parts) for v in range(q.n))
    mats = []
    for k, ar in enumerate(q.arrows):
        m = la.zeros(dims[ar.target], dims[ar.source])
        ro = co = 0
        for part in parts:
            dr, dc = part.dims[ar.target], part.dims[ar.source]
            m[ro:ro + dr, co:co + dc] = part.mats[k]
            ro += dr
            co += dc
        mats.append(m)
    return make_rep(q, p, dims, mats)


def block_offsets(parts: list[Representation], v: int) -> list[int]:
    offs = [0]
    for part in parts:
        offs.append(offs[-1] + part.dims[v])
    return offs


def dual(M: Representation) -> Representation:
    """The dual representation over the reversed quiver."""
    raw = [ar.reversed() for ar in M.quiver.arrows]
    arrows, perm = sorted_with_perm(raw)
    rq = ValuedQuiver(M.quiver.n, arrows, M.quiver.labels)
    mats: list = [None] * len(raw)
    for k, m in enumerate(M.mats):
        mats[perm[k]] = m.T
    return make_rep(rq, M.p, M.dims, mats)


def random_rep(q: ValuedQuiver, p: int, dims, rng: np.random.Generator) -> Representation:
    dims = tuple(int(d) for d in dims)
    mats = [la.random_matrix(dims[ar.target], dims[ar.source], p, rng) for ar in q.arrows]
    return make_rep(q, p, dims, mats)


def rep_to_json(M: Representation) -> dict:
    return {
        "dim": list(M.dims),
        "arrows": [
            {"from": ar.source + 1, "to": ar.target + 1,
             "matrix": [[int(x) for x in row] for row in M.mats[k]]}
            for k, ar in enumerate(M.quiver.arrows)
        ],
    }


def rep_from_json(q: ValuedQuiver, p: int, data: dict) -> Representation:
    dims = data["dim"]
    mats = []
    for k, ar in enumerate(q.arrows):
        entry = data["arrows"][k]
        if entry["from"] != ar.source + 1 or entry["to"] != ar.target + 1:
            raise ValueError("arrow order in JSON does not match the quiver")
        m = np.array(entry["matrix"], dtype=np.int64)
        m = m.reshape(dims[ar.target], dims[ar.source])
        mats.append(m)
    return make_rep(q, p, dims, mats)


def extend_by_zero(M: Representation, sub: Subquiver) -> Representation:
    """Regard a module over an induced subquiver as one over the ambient.

    Induced means every ambient arrow between kept vertices is kept, so Hom
    and Ext between extended modules agree with their values downstairs.
    """
    q = sub.ambient
    dims = [0] * q.n
    for new in range(sub.quiver.n):
        dims[sub.old_vertex(new)] = M.dims[new]
    mats: list = [None] * q.m
    for new_k in range(sub.quiver.m):
        mats[sub.old_arrow(new_k)] = M.mats[new_k]
    for k, ar in enumerate(q.arrows):
        if mats[k] is None:
            mats[k] = la.zeros(dims[ar.target], dims[ar.source])
    return make_rep(q, M.p, dims, mats)


def restrict_module(M: Representation, sub: Subquiver) -> Representation:
    """Inverse of extend_by_zero; the support must lie in the subquiver."""
    kept = {sub.old_vertex(new) for new in range(sub.quiver.n)}
    for v in range(M.quiver.n):
        if v not in kept and M.dims[v]:
            raise ValueError(f"module is supported outside the subquiver at {v + 1}")
    dims = [M.dims[sub.old_vertex(new)] for new in range(sub.quiver.n)]
    mats = [M.mats[sub.old_arrow(new_k)] for new_k in range(sub.quiver.m)]
    return make_rep(sub.quiver, M.p, dims, mats)


# ---------------------------------------------------------------------------
# Hom and Ext

@dataclass(frozen=True, eq=False)
class HomSpace:
    source: Representation
    target: Representation
    basis: tuple[tuple[np.ndarray, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def element(self, coeffs) -> tuple[np.ndarray, ...]:
        X, Y, p = self.source, self.target, self.source.p
        out = [la.zeros(Y.dims[v], X.dims[v]) for v in range(X.quiver.n)]
        for c, f in zip(coeffs, self.basis):
            if int(c) % p == 0:
                continue
            for v in range(X.quiver.n):
                out[v] = (out[v] + int(c) * f[v]) % p
        return tuple(out)

    def random_element(self, rng) -> tuple[np.ndarray, ...]:
        return self.element(rng.integers(0, self.source.p, size=self.dim))


def hom_basis(X: Representation, Y: Representation) -> HomSpace:
    """Canonical echelonized basis of the intertwiner space Hom(X, Y)."""
    if X.quiver != Y.quiver or X.p != Y.p:
        raise ValueError("modules live over different quivers or moduli")
    q, p = X.quiver, X.p
    sizes = [Y.dims[v] * X.dims[v] for v in range(q.n)]
    offs = np.concatenate([[0], np.cumsum(sizes)])
    cols = int(offs[-1])
    rows = sum(Y.dims[ar.target] * X.dims[ar.source] for ar in q.arrows)
    a = la.zeros(rows, cols)
    r0 = 0
    for k, ar in enumerate(q.arrows):
        s, t = ar.source, ar.target
        nr = Y.dims[t] * X.dims[s]
        if nr:
            a[r0:r0 + nr, offs[t]:offs[t + 1]] = np.kron(la.identity(Y.dims[t]), X.mats[k].T)
            a[r0:r0 + nr, offs[s]:offs[s + 1]] -= np.kron(Y.mats[k], la.identity(X.dims[s]))
        r0 += nr
    a %= p
    ker = la.kernel_basis(a, p)
    basis = []
    for j in range(ker.shape[1]):
        f = tuple(
            ker[offs[v]:offs[v + 1], j].reshape(Y.dims[v], X.dims[v])
            for v in range(q.n)
        )
        basis.append(f)
    return HomSpace(X, Y, tuple(basis))


def hom_dim(X, Y) -> int:
    return hom_basis(X, Y).dim


def ext_dim(X: Representation, Y: Representation) -> int:
    """dim Ext^1 via the hereditary identity hom - ext = <dim X, dim Y>."""
    e = hom_dim(X, Y) - euler_form(X.quiver, X.dims, Y.dims)
    assert e >= 0, "hereditary identity violated"
    return e


def morphism_flat(f: tuple[np.ndarray, ...]) -> np.ndarray:
    return np.concatenate([m.ravel() for m in f]) if f else np.zeros(0, dtype=np.int64)


def compose(g: tuple[np.ndarray, ...], f: tuple[np.ndarray, ...], p: int) -> tuple[np.ndarray, ...]:
    """Composite g after f, per vertex."""
    return tuple(la.matmul(g[v], f[v], p) for v in range(len(f)))


def identity_morphism(M: Representation) -> tuple[np.ndarray, ...]:
    return tuple(la.identity(d) for d in M.dims)


def is_invertible_morphism(f, p: int) -> bool:
    return all(la.is_invertible(m, p) for m in f)


# ---------------------------------------------------------------------------
# subobjects, quotients, traces

@dataclass(frozen=True, eq=False)
class Subquotient:
    """A short exact sequence sub -> ambient -> quot with explicit witnesses."""

    ambient: Representation
    sub: Representation
    incl: tuple[np.ndarray, ...]
    quot: Representation
    proj: tuple[np.ndarray, ...]

    def validate(self) -> None:
        p = self.ambient.p
        q = self.ambient.quiver
        for k, ar in enumerate(q.arrows):
            s, t = ar.source, ar.target
            assert np.array_equal(
                la.matmul(self.incl[t], self.sub.mats[k], p),
                la.matmul(self.ambient.mats[k], self.incl[s], p))
            assert np.array_equal(
                la.matmul(self.proj[t], self.ambient.mats[k], p),
                la.matmul(self.quot.mats[k], self.proj[s], p))
        for v in range(q.n):
            assert la.rank(self.incl[v], p) == self.sub.dims[v]
            assert la.rank(self.proj[v], p) == self.quot.dims[v]
            assert not np.any(la.matmul(self.proj[v], self.incl[v], p))
            assert self.sub.dims[v] + self.quot.dims[v] == self.ambient.dims[v]


def carve(M: Representation, spaces) -> Subquotient:
    """Carve the subrepresentation spanned by per-vertex column spaces.

    The spaces must be arrow-invariant; the quotient is built on the
    complementary standard coordinates, so everything stays canonical.
    """
    q, p = M.quiver, M.p
    bases = [la.column_space_basis(spaces[v], p) for v in range(q.n)]
    sub_dims = [b.shape[1] for b in bases]
    sub_mats = []
    for k, ar in enumerate(q.arrows):
        s, t = ar.source, ar.target
        pushed = la.matmul(M.mats[k], bases[s], p)
        x, _ = la.solve(bases[t], pushed, p)
        if x is None:
            raise ValueError("vertex spaces are not arrow-invariant")
        sub_mats.append(x)
    sub = make_rep(q, p, sub_dims, sub_mats)
    incl = tuple(bases)
    projs = []
    sections = []
    for v in range(q.n):
        d, k = M.dims[v], sub_dims[v]
        comp = la.complement_indices(bases[v], p)
        c = la.zeros(d, d - k)
        for j, idx in enumerate(comp):
            c[idx, j] = 1
        full = np.hstack([bases[v], c])
        inv, _ = la.solve(full, la.identity(d), p)
        projs.append(inv[k:, :])
        sections.append(c)
    quot_mats = []
    for k, ar in enumerate(q.arrows):
        s, t = ar.source, ar.target
        quot_mats.append(la.matmul(projs[t], la.matmul(M.mats[k], sections[s], p), p))
    quot = make_rep(q, p, [M.dims[v] - sub_dims[v] for v in range(q.n)], quot_mats)
    return Subquotient(M, sub, incl, quot, tuple(projs))


def image_subquotient(f, X: Representation, Y: Representation) -> Subquotient:
    """Carve the image of a morphism f: X -> Y inside Y."""
    spaces = [f[v] for v in range(Y.quiver.n)]
    return carve(Y, spaces)


def kernel_subquotient(f, X: Representation) -> Subquotient:
    """Carve the kernel of a morphism f: X -> ? inside X."""
    spaces = [la.kernel_basis(f[v], X.p) for v in range(X.quiver.n)]
    return carve(X, spaces)


@dataclass(frozen=True, eq=False)
class TraceResult:
    carved: Subquotient
    full: bool

    @property
    def sub(self):
        return self.carved.sub

    @property
    def quot(self):
        return self.carved.quot


def trace_submodule(gens, M: Representation) -> TraceResult:
    """Sum of all images of maps from the generators into M."""
    if isinstance(gens, Representation):
        gens = [gens]
    q, p = M.quiver, M.p
    blocks: list[list[np.ndarray]] = [[] for _ in range(q.n)]
    for G in gens:
        for f in hom_basis(G, M).basis:
            for v in range(q.n):
                blocks[v].append(f[v])
    spaces = []
    for v in range(q.n):
        if blocks[v]:
            spaces.append(np.hstack(blocks[v]))
        else:
            spaces.append(la.zeros(M.dims[v], 0))
    carved = carve(M, spaces)
    return TraceResult(carved, carved.sub.dims == M.dims)


def generates(gens, M: Representation) -> bool:
    return trace_submodule(gens, M).full


def isotypic_socle(M: Representation, i: int) -> Subquotient:
    """Largest submodule that is a sum of copies of S(i), with its quotient."""
    q, p = M.quiver, M.p
    outs = [M.mats[k] for k, _ in arrows_out(q, i)]
    if outs:
        space_i = la.kernel_basis(np.vstack(outs), p)
    else:
        space_i = la.identity(M.dims[i])
    spaces = [space_i if v == i else la.zeros(M.dims[v], 0) for v in range(q.n)]
    return carve(M, spaces)


# ---------------------------------------------------------------------------
# decomposition, isomorphism, normalization

def _endo_power(f, n: int, p: int):
    out = tuple(la.identity(m.shape[0]) for m in f)
    base = f
    while n:
        if n & 1:
            out = compose(out, base, p)
        base = compose(base, base, p)
        n >>= 1
    return out


def _fitting_split(M: Representation, g) -> tuple[Representation, Representation] | None:
    """Split M along ker g^N + im g^N; None when g is nilpotent or invertible."""
    p = M.p
    n = M.total
    gn = _endo_power(g, max(n, 1), p)
    ker_spaces = [la.kernel_basis(gn[v], p) for v in range(M.quiver.n)]
    kdim = sum(b.shape[1] for b in ker_spaces)
    if kdim == 0 or kdim == M.total:
        return None
    part1 = carve(M, ker_spaces).sub
    part2 = carve(M, [la.column_space_basis(gn[v], p) for v in range(M.quiver.n)]).sub
    assert part1.total + part2.total == M.total
    return part1, part2


def decompose(M: Representation, rng: np.random.Generator,
              budget: int = DECOMPOSE_BUDGET) -> list[Representation]:
    """Full direct-sum decomposition into indecomposables.

    Randomized Fitting: each sampled endomorphism phi is shifted by every
    scalar; a shift with a nontrivial stable kernel splits the module.  A
    module is declared indecomposable only when every sample within the
    budget was invertible-or-nilpotent after some scalar shift (the local
    certificate: everything sampled is scalar plus nilpotent).  A sample with
    no eigenvalue in F_p and no split leaves the call inconclusive, which is
    reported rather than guessed.
    """
    if M.total == 0:
        return []
    if M.total == 1:
        return [M]
    end = hom_basis(M, M)
    if end.dim == 1:
        return [M]
    p = M.p
    samples = [end.basis[k] for k in range(min(end.dim, budget))]
    while len(samples) < budget:
        samples.append(end.random_element(rng))
    certificate_ok = True
    for phi in samples:
        eig_seen = False
        for lam in range(p):
            shifted = tuple((phi[v] - lam * la.identity(M.dims[v])) % p for v in range(M.quiver.n))
            if all(la.is_invertible(m, p) for m in shifted):
                continue
            eig_seen = True
            split = _fitting_split(M, shifted)
            if split is not None:
                return decompose(split[0], rng, budget) + decompose(split[1], rng, budget)
            break   # nilpotent shift: phi is scalar plus nilpotent
        if not eig_seen:
            certificate_ok = False
    if certificate_ok:
        return [M]
    raise DecompositionInconclusive(
        f"budget {budget} exhausted on dims {M.dims}: sampled endomorphisms "
        "without F_p eigenvalues and found no splitting")


def is_isomorphic(X: Representation, Y: Representation, rng: np.random.Generator,
                  tries: int = ISO_TRIES) -> bool:
    """Exact-negative randomized isomorphism test.

    A found invertible intertwiner is a proof; a miss after the retry budget
    falls back to decomposing both sides and matching summands, and only for
    a pair of indecomposables does the randomized miss decide (the failure
    probability decays like p^-tries).
    """
    if X.quiver != Y.quiver or X.p != Y.p:
        return False
    if X.dims != Y.dims:
        return False
    if X.total == 0:
        return True
    h = hom_basis(X, Y)
    if h.dim == 0:
        return False
    for _ in range(tries):
        f = h.random_element(rng)
        if is_invertible_morphism(f, X.p):
            return True
    px = decompose(X, rng)
    py = decompose(Y, rng)
    if len(px) == 1 and len(py) == 1:
        return False
    if len(px) != len(py):
        return False
    remaining = list(py)
    for part in px:
        for idx, cand in enumerate(remaining):
            if part.dims == cand.dims and is_isomorphic(part, cand, rng, tries):
                remaining.pop(idx)
                break
        else:
            return False
    return True


def group_summands(pieces: list[Representation], rng) -> list[tuple[Representation, int]]:
    """Collect indecomposable pieces into isomorphism classes with counts."""
    pieces = sorted(pieces, key=lambda r: (r.total, r.dims))
    groups: list[tuple[Representation, int]] = []
    for piece in pieces:
        for idx, (rep, count) in enumerate(groups):
            if rep.dims == piece.dims and is_isomorphic(rep, piece, rng):
                groups[idx] = (rep, count + 1)
                break
        else:
            groups.append((piece, 1))
    return groups


def normalize_summands(M: Representation, rng) -> list[Representation]:
    """Multiplicity-one summand list of the normalization.

    Greedy removal of any summand generated by the rest; the result generates
    the original module and no remaining summand is redundant.
    """
    kept = [rep for rep, _ in group_summands(decompose(M, rng), rng)]
    changed = True
    while changed and len(kept) > 1:
        changed = False
        for idx in range(len(kept)):
            others = kept[:idx] + kept[idx + 1:]
            if generates(others, kept[idx]):
                kept.pop(idx)
                changed = True
                break
    return kept


def normalize(M: Representation, rng) -> Representation:
    kept = normalize_summands(M, rng)
    if not kept:
        return zero_rep(M.quiver, M.p)
    return direct_sum(kept)


def module_predicates(X: Representation, Y: Representation | None, rng) -> dict:
    """Brick/exceptional predicates for X and Hom-orthogonality with Y."""
    end = hom_dim(X, X)
    brick = end == 1 and X.total > 0
    if brick:
        indec = True
    else:
        indec = X.total > 0 and len(decompose(X, rng)) == 1
    out = {
        "is_brick": brick,
        "is_exceptional": indec and ext_dim(X, X) == 0,
    }
    if Y is not None:
        out["orthogonal"] = hom_dim(X, Y) == 0 and hom_dim(Y, X) == 0
    return out


# ---------------------------------------------------------------------------
# reflection functors

def reflection_functor_apply(M: Representation, v: int) -> Representation:
    """BGP reflection at a sink (kernel of the assembled map into v) or a
    source (cokernel of the diagonal map out of v).  Copies of S(v) are
    annihilated; everything else transports equivalently."""
    from .quiver import is_sink, is_source, reflect_with_perm

    q, p = M.quiver, M.p
    rq, perm = reflect_with_perm(q, v)
    new_dims = list(M.dims)
    new_mats: list = [None] * q.m
    if is_sink(q, v):
        ins = arrows_in(q, v)
        blocks = [M.mats[k] for k, _ in ins]
        assembled = np.hstack(blocks) if blocks else la.zeros(M.dims[v], 0)
        ker = la.kernel_basis(assembled, p)
        new_dims[v] = ker.shape[1]
        off = 0
        for k, ar in ins:
            d = M.dims[ar.source]
            new_mats[perm[k]] = ker[off:off + d, :] % p
            off += d
    elif is_source(q, v):
        outs = arrows_out(q, v)
        blocks = [M.mats[k] for k, _ in outs]
        assembled = np.vstack(blocks) if blocks else la.zeros(0, M.dims[v])
        img = la.column_space_basis(assembled, p)
        total = assembled.shape[0]
        comp = la.complement_indices(img, p)
        c = la.zeros(total, total - img.shape[1])
        for j, idx in enumerate(comp):
            c[idx, j] = 1
        full = np.hstack([img, c])
        inv, _ = la.solve(full, la.identity(total), p)
        proj = inv[img.shape[1]:, :]
        new_dims[v] = total - img.shape[1]
        off = 0
        for k, ar in outs:
            d = M.dims[ar.target]
            new_mats[perm[k]] = proj[:, off:off + d] % p
            off += d
    else:
        raise ValueError(f"vertex {v + 1} is neither a sink nor a source")
    for k in range(q.m):
        if new_mats[perm[k]] is None:
            new_mats[perm[k]] = M.mats[k]
    return make_rep(rq, p, new_dims, new_mats)


# ---------------------------------------------------------------------------
# minimal projective presentations and the translate DTr

def projective_cover(M: Representation):
    """Minimal epi from a projective: (P0, component vertices, g: P0 -> M)."""
    q, p = M.quiver, M.p
    comps: list[int] = []
    tops: list[np.ndarray] = []
    for v in range(q.n):
        blocks = [M.mats[k] for k, _ in arrows_in(q, v)]
        if blocks and M.dims[v]:
            rad = la.column_space_basis(np.hstack(blocks), p)
        else:
            rad = la.zeros(M.dims[v], 0)
        for idx in la.complement_indices(rad, p):
            vec = np.zeros(M.dims[v], dtype=np.int64)
            vec[idx] = 1
            comps.append(v)
            tops.append(vec)
    if not comps:
        assert M.total == 0
        return zero_rep(q, p), [], identity_morphism(M)
    parts = [projective(q, p, v) for v in comps]
    p0 = direct_sum(parts)
    g = []
    for w in range(q.n):
        m = la.zeros(M.dims[w], p0.dims[w])
        col = 0
        for c, v in enumerate(comps):
            for path in paths_from(q, v)[w]:
                m[:, col] = (path_matrix(M, v, path) @ tops[c]) % p
                col += 1
        g.append(m)
    for w in range(q.n):
        assert la.rank(g[w], p) == M.dims[w], "projective cover fails to surject"
    return p0, comps, tuple(g)


def is_projective_rep(M: Representation) -> bool:
    p0, _, g = projective_cover(M)
    return p0.total == M.total


def _nu_path_block(q: ValuedQuiver, x: tuple[int, ...], j: int, i: int, w: int) -> np.ndarray:
    """Matrix of the Nakayama image of the path-hom for x: j -> i, at vertex w.

    The path hom P(i) -> P(j) appends x; its Nakayama image I(i) -> I(j) is
    the transpose of prepending x on path bases into j and into i.
    """
    rows = paths_from(q, w)[j]
    cols = paths_from(q, w)[i]
    pos = {path: r for r, path in enumerate(cols)}
    m = np.zeros((len(rows), len(cols)), dtype=np.int64)
    for r, wpath in enumerate(rows):
        full = wpath + x
        if full in pos:
            m[r, pos[full]] = 1
    return m


def ar_translate(M: Representation) -> Representation:
    """The translate DTr M from a minimal projective presentation.

    Both steps of the presentation are minimal (tops and projective covers),
    otherwise the kernel below would pick up spurious injective summands.
    The presentation map is rewritten in the path-hom basis, pushed through
    the Nakayama correspondence P(i) -> I(i), and the translate is the kernel
    of the resulting map between injectives.  Projective summands of the
    input are annihilated; projective input is rejected.
    """
    q, p = M.quiver, M.p
    p0, comps0, g = projective_cover(M)
    ker = carve(p0, [la.kernel_basis(g[v], p) for v in range(q.n)])
    if ker.sub.total == 0:
        raise ValueError("the translate DTr is undefined on projective modules")
    p1, comps1, h = projective_cover(ker.sub)
    f = compose(ker.incl, h, p)    # P1 -> P0, injective by minimality

    nu_p1 = direct_sum([injective(q, p, v) for v in comps1])
    nu_p0 = direct_sum([injective(q, p, v) for v in comps0])
    parts1 = [injective(q, p, v) for v in comps1]
    parts0 = [injective(q, p, v) for v in comps0]
    proj_parts0 = [projective(q, p, v) for v in comps0]
    proj_parts1 = [projective(q, p, v) for v in comps1]

    nu_f = [la.zeros(nu_p0.dims[w], nu_p1.dims[w]) for w in range(q.n)]
    for c1, i in enumerate(comps1):
        # column of the generator of this P(i) summand inside P1 at vertex i
        col = block_offsets(proj_parts1, i)[c1] + paths_from(q, i)[i].index(())
        column = f[i][:, col]
        for c0, j in enumerate(comps0):
            roff = block_offsets(proj_parts0, i)[c0]
            for xi, x in enumerate(paths_from(q, j)[i]):
                coeff = int(column[roff + xi])
                if coeff == 0:
                    continue
                for w in range(q.n):
                    blk = _nu_path_block(q, x, j, i, w)
                    if not blk.size:
                        continue
                    r0 = block_offsets(parts0, w)[c0]
                    c0off = block_offsets(parts1, w)[c1]
                    nu_f[w][r0:r0 + blk.shape[0], c0off:c0off + blk.shape[1]] += coeff * blk
    nu_f = [m % p for m in nu_f]
    tau = carve(nu_p1, [la.kernel_basis(nu_f[v], p) for v in range(q.n)]).sub
    return tau


def ar_translate_inverse(M: Representation) -> Representation:
    """TrD via duality: reverse, translate, reverse back."""
    d = dual(M)
    try:
        t = ar_translate(d)
    except ValueError:
        raise ValueError("the translate TrD is undefined on injective modules") from None
    return dual(t)


# ---------------------------------------------------------------------------
# universal extensions and middle terms

def _universal_extension_above(M: Representation, i: int) -> Representation:
    """0 -> M -> E -> S(i)^e -> 0 killing Ext(S(i), -); e = ext_dim(S(i), M)."""
    q, p = M.quiver, M.p
    outs = arrows_out(q, i)
    blocks = [M.mats[k] for k, _ in outs]
    assembled = np.vstack(blocks) if blocks else la.zeros(0, M.dims[i])
    img = la.column_space_basis(assembled, p)
    comp = la.complement_indices(img, p)
    e = len(comp)
    if e == 0:
        return M
    dims = list(M.dims)
    dims[i] += e
    new_mats = []
    for k, ar in enumerate(q.arrows):
        m = M.mats[k]
        if ar.source == i:
            off = 0
            for kk, aa in outs:
                if kk == k:
                    break
                off += M.dims[aa.target]
            extra = la.zeros(M.dims[ar.target], e)
            for j, idx in enumerate(comp):
                if off <= idx < off + M.dims[ar.target]:
                    extra[idx - off, j] = 1
            m = np.hstack([m, extra])
        if ar.target == i:
            m = np.vstack([m, la.zeros(e, M.dims[ar.source])])
        new_mats.append(m)
    E = make_rep(q, p, dims, new_mats)
    assert ext_dim(simple(q, p, i), E) == 0
    return E


def universal_extension(M: Representation, i: int, where: str) -> Representation:
    """Universal extension of M by copies of S(i), from above or below.

    Above stacks S(i)-copies on top (use at a source of the support); below
    puts them underneath (use at a sink).  The returned module has no
    remaining extensions in the killed direction.
    """
    if where == "above":
        return _universal_extension_above(M, i)
    if where == "below":
        E = _universal_extension_above(dual(M), i)
        out = dual(E)
        assert ext_dim(out, simple(M.quiver, M.p, i)) == 0
        return out
    raise ValueError("where must be 'above' or 'below'")


def _projective_class_lines(p: int, e: int):
    """Representatives of nonzero classes up to scalar: leading entry one."""
    from itertools import product as iproduct

    for lead in range(e):
        for rest in iproduct(range(p), repeat=e - lead - 1):
            vec = [0] * lead + [1] + list(rest)
            yield vec


def middle_terms(B: Representation, A: Representation, rng,
                 cap: int = MIDDLE_CAP) -> list[Representation]:
    """All middle terms of extensions of B by A (0 -> A -> E -> B -> 0).

    Classes are enumerated up to scalar; each middle term arises as the
    pushout of the projective presentation of B along a representative.  The
    list starts with the split extension, followed by the iso-deduplicated
    nonsplit middles.
    """
    q, p = B.quiver, B.p
    e = ext_dim(B, A)
    split = direct_sum([A, B]) if A.total and B.total else (A if B.total == 0 else B)
    if e == 0:
        return [split]
    if p ** e > cap:
        raise ExtensionCapError(f"p^e = {p}^{e} exceeds the cap {cap}")
    p0, comps0, g = projective_cover(B)
    ker = carve(p0, [la.kernel_basis(g[v], p) for v in range(q.n)])
    p1, comps1, h = projective_cover(ker.sub)
    f = compose(ker.incl, h, p)
    for v in range(q.n):
        assert la.rank(f[v], p) == p1.dims[v], "presentation map must be injective"

    h1 = hom_basis(p1, A)
    h0 = hom_basis(p0, A)
    assert h1.dim >= e
    flat1 = np.stack([morphism_flat(fb) for fb in h1.basis], axis=1) if h1.dim else la.zeros(0, 0)
    pulled = []
    for eta in h0.basis:
        pulled.append(morphism_flat(compose(eta, f, p)))
    if pulled:
        coords = la.coords_in_basis(flat1, np.stack(pulled, axis=1), p)
    else:
        coords = la.zeros(h1.dim, 0)
    img = la.column_space_basis(coords, p)
    reps_idx = la.complement_indices(img, p)
    assert len(reps_idx) == e

    out = [split]
    kept: list[Representation] = []
    for line in _projective_class_lines(p, e):
        coeffs = np.zeros(h1.dim, dtype=np.int64)
        for c, idx in zip(line, reps_idx):
            coeffs[idx] = c
        xi = h1.element(coeffs)
        target = direct_sum([A, p0])
        jmap = tuple(
            np.vstack([xi[v], (-f[v]) % p]) % p
            for v in range(q.n)
        )
        img_sq = image_subquotient(jmap, p1, target)
        E = img_sq.quot
        assert E.total == A.total + B.total
        if not any(E.dims == k.dims and is_isomorphic(E, k, rng) for k in kept):
            kept.append(E)
    return out + kept
